"""Command-line interface.

Exit codes: 0 all checks pass, 1 a verification check fails, 2 the input
cannot be interpreted (unknown space, malformed certificate, bad flags).
"""

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, certs, flats, orbits, search, triple


def _fail_input(msg):
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _parse_params(pairs):
    out = {}
    for item in pairs or ():
        key, _, value = item.partition("=")
        if not key or not value:
            raise ValueError(f"--param needs key=value, got {item!r}")
        out[key] = int(value)
    return out


def _fmt_vec(vec):
    return "[" + ", ".join(str(x) for x in vec) + "]"


def cmd_catalog(args):
    if args.action != "list":
        return _fail_input("supported: catalog list")
    for spec in catalog.CATALOG_SPECS:
        model = catalog.build_space_spec(spec)
        r, _ = triple.rank(model)
        print(f"{spec:10s} dim={model.dim:3d} dim_p={model.dim_p:3d} rank={r}")
    return 0


def cmd_rank(args):
    model = catalog.build_space_spec(args.space)
    r, witness = triple.rank(model)
    print(f"rank({args.space}) = {r}")
    print("witness maximal abelian subspace (p-coordinates):")
    for v in witness.basis:
        print("  " + _fmt_vec(v))
    return 0


def cmd_verify(args):
    cert = certs.load_certificate(args.certificate)
    report = certs.verify_certificate(cert, with_transversal=args.with_transversal,
                                      seed=args.seed, budget=args.budget)
    for item in report.checks:
        print(f"{item.status:4s} {item.name:22s} {item.detail}")
    print("overall:", "PASS" if report.overall else "FAIL")
    return 0 if report.overall else 1


def cmd_generate(args):
    params = _parse_params(args.param)
    cert = certs.generate_certificate(args.pair_id, **params)
    payload = json.dumps(cert.to_dict(), indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload + "\n")
        print(f"wrote {args.output} ({cert.space}, codim {cert.claims['codim']})")
    else:
        print(payload)
    return 0


def cmd_flats(args):
    model = catalog.build_space_spec(args.space)
    cert = certs.load_certificate(args.transversal)
    if cert.space != args.space:
        return _fail_input(f"certificate is for {cert.space}, not {args.space}")
    w = model.p_subspace([model.g_to_p(list(row)) for row in cert.basis])
    try:
        flat, trials = flats.transversal_flat(model, w, budget=args.budget, seed=args.seed)
    except flats.BudgetExhaustedError as exc:
        print(f"FAIL {exc} (max intersection dim seen: {exc.max_intersection})")
        return 1
    print(f"transversal maximal flat found after {trials} trial(s)")
    print("flat basis (p-coordinates):")
    for v in flat.subspace.basis:
        print("  " + _fmt_vec(v))
    print("regular witness:", _fmt_vec(flat.regular_witness))
    return 0


def cmd_orbit(args):
    model = catalog.build_space_spec(args.space)
    try:
        vec = [Fraction(tok) for tok in args.vector.replace(" ", "").split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        return _fail_input(f"bad --vector: {exc}")
    if len(vec) != model.dim_p:
        return _fail_input(f"--vector needs {model.dim_p} p-coordinates for {args.space}")
    om = orbits.orbit_spaces(model, vec)
    print(f"orbit through {_fmt_vec(vec)}:")
    print(f"  tangent dim = {om.dim}, normal dim = {om.normal.dim}")
    _, is_lts_t = triple.lts_residual(model, om.tangent) if om.dim else (0.0, True)
    _, is_lts_n = triple.lts_residual(model, om.normal)
    print(f"  tangent is LTS: {is_lts_t}; normal is LTS: {is_lts_n}")
    if args.symmetric_test:
        print("  symmetric submanifold test:", orbits.symmetric_submanifold_test(model, vec))
    if args.curvature_normals:
        data = orbits.curvature_normals(model, vec)
        print(f"  curvature normals: g = {data.g}, m = {data.m}, multiplicities {data.multiplicities}")
        for eta, mult in zip(data.normals, data.multiplicities):
            print(f"    mult {mult}: " + "[" + ", ".join(f"{x:.6f}" for x in eta) + "]")
    return 0


def cmd_search(args):
    model = catalog.build_space_spec(args.space)
    cfg = search.SearchConfig(codim=args.codim or 1, restarts=args.restarts, seed=args.seed)
    if args.probe_max:
        probe = search.index_probe(model, args.probe_max, cfg)
        print(f"rank lower bound: {probe.rank_floor}")
        for codim, res in sorted(probe.results.items()):
            print(f"codim {codim}: best residual {res.best_residual:.3e} "
                  f"accepted={res.accepted} refined={'yes' if res.refined_exact else 'no'}")
        val = probe.value if probe.value is not None else f"none <= {args.probe_max}"
        print(f"index probe result: {val}")
        return 0
    if not args.codim:
        return _fail_input("search needs --codim C or --probe-max C")
    res = search.lts_search(model, cfg)
    print(f"codim {args.codim} on {args.space}: best residual {res.best_residual:.6e}, "
          f"accepted={res.accepted}")
    print("residual histogram:")
    for i, r in enumerate(res.residual_histogram):
        print(f"  restart {i}: {r:.6e}")
    if res.refined_exact is not None:
        cert = certs.candidate_certificate(
            model, res.refined_exact,
            provenance=f"numerical search, codim {args.codim}, seed {args.seed}, exact refinement")
        print("candidate certificate:")
        print(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
    elif res.accepted:
        print("accepted numerically; exact refinement failed (numerical-only)")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="symspace",
                                 description="symmetric-space toolkit: exact Lie triple "
                                             "system checks, flats, orbits, certificates")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list supported space specifiers")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("rank", help="rank with a witness maximal flat")
    p.add_argument("space")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify", help="verify a certificate file")
    p.add_argument("certificate")
    p.add_argument("--with-transversal", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="emit a bundled certificate")
    p.add_argument("pair_id")
    p.add_argument("--param", action="append", metavar="k=N")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("flats", help="transversal maximal flat search")
    p.add_argument("space")
    p.add_argument("--transversal", required=True, metavar="CERT.json")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("orbit", help="isotropy orbit analysis at a vector")
    p.add_argument("space")
    p.add_argument("--vector", required=True, help="comma-separated rationals, p-coordinates")
    p.add_argument("--symmetric-test", action="store_true")
    p.add_argument("--curvature-normals", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("search", help="Grassmannian search for Lie triple systems")
    p.add_argument("space")
    p.add_argument("--codim", type=int, default=None)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--probe-max", type=int, default=None)
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (catalog.UnsupportedSpaceError, certs.CertificateFormatError, ValueError) as exc:
        return _fail_input(str(exc))


if __name__ == "__main__":
    sys.exit(main())
