"""Machine-checkable subspace certificates and the bundled corpus.

A certificate asserts that an explicit rational subspace of p is a Lie
triple system of stated codimension and invariants in a named catalog
space.  Verification is bit-exact; randomized subchecks derive their seeds
from the certificate body so identical bytes give identical reports.
"""

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import catalog, flats, linalg, triple

SCHEMA = "symspace-certificate/1"


class CertificateFormatError(ValueError):
    """Malformed certificate payload."""


@dataclass(frozen=True)
class Certificate:
    space: str
    basis: tuple           # tuple of g-coordinate tuples of Fractions
    claims: dict           # codim, is_lts, abelian_dim, sigma_rank, index_upper_bound
    provenance: str = ""

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "space": self.space,
            "basis": [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.basis],
            "claims": dict(self.claims),
            "provenance": self.provenance,
        }

    def to_bytes(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")).encode()

    def seed(self):
        return int.from_bytes(hashlib.sha256(self.to_bytes()).digest()[:8], "big")


def certificate_from_dict(data):
    if not isinstance(data, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    if data.get("schema") != SCHEMA:
        raise CertificateFormatError(f"unknown schema {data.get('schema')!r}")
    try:
        space = data["space"]
        basis = tuple(tuple(Fraction(x) for x in row) for row in data["basis"])
        claims = dict(data["claims"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(f"malformed certificate: {exc}") from exc
    required = {"codim", "is_lts", "abelian_dim", "sigma_rank", "index_upper_bound"}
    if not required <= set(claims):
        raise CertificateFormatError(f"claims must contain {sorted(required)}")
    return Certificate(space, basis, claims, data.get("provenance", ""))


def load_certificate(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateFormatError(f"cannot read certificate: {exc}") from exc
    return certificate_from_dict(data)


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class CheckItem:
    name: str
    status: str  # PASS | FAIL | SKIP
    detail: str = ""


@dataclass(frozen=True)
class Report:
    checks: tuple

    @property
    def overall(self):
        return all(c.status != "FAIL" for c in self.checks)


def verify_certificate(cert, with_transversal=False, seed=None, budget=1000):
    """Run the exact check chain against a certificate; never raises on FAIL.

    Raises UnsupportedSpaceError / CertificateFormatError only for inputs
    that cannot be interpreted at all.
    """
    model = catalog.build_space_spec(cert.space)
    checks = []
    claims = cert.claims
    base_seed = cert.seed() if seed is None else seed

    def skip_rest(reason):
        for name in remaining:
            checks.append(CheckItem(name, "SKIP", reason))

    remaining = ["basis-in-p", "lts-residual-zero", "codim", "abelian-dim",
                 "sigma-rank", "rank-vs-index-bound"]
    if with_transversal:
        remaining.append("transversal-flat")

    m = len(cert.basis)
    ok_dims = all(len(row) == model.dim for row in cert.basis)
    indep = ok_dims and linalg.rank([list(r) for r in cert.basis]) == m
    checks.append(CheckItem("basis-independence",
                            "PASS" if indep else "FAIL",
                            f"{m} vectors of length {model.dim}" if ok_dims
                            else "vector length does not match dim g"))
    if not indep:
        skip_rest("basis is dependent or malformed")
        return Report(tuple(checks))

    remaining.remove("basis-in-p")
    in_p = all(all(row[i] == 0 for i in model.k_indices) for row in cert.basis)
    checks.append(CheckItem("basis-in-p", "PASS" if in_p else "FAIL",
                            "theta-eigenvalue -1 on every basis vector" if in_p
                            else "some basis vector has a k-component"))
    if not in_p:
        skip_rest("basis not inside p")
        return Report(tuple(checks))

    w = model.p_subspace([model.g_to_p(row) for row in cert.basis])

    remaining.remove("lts-residual-zero")
    _, is_lts = triple.lts_residual(model, w)
    ok = is_lts and claims["is_lts"] is True
    checks.append(CheckItem("lts-residual-zero", "PASS" if ok else "FAIL",
                            "exact [[W,W],W] < W" if is_lts else "closure residual is nonzero"))
    if not is_lts:
        skip_rest("not a Lie triple system")
        return Report(tuple(checks))

    remaining.remove("codim")
    codim = model.dim_p - w.dim
    ok = codim == claims["codim"]
    checks.append(CheckItem("codim", "PASS" if ok else "FAIL",
                            f"dim p - dim W = {codim}, claimed {claims['codim']}"))

    remaining.remove("abelian-dim")
    ab = triple.abelian_part(model, w)
    ok = ab.dim == claims["abelian_dim"]
    checks.append(CheckItem("abelian-dim", "PASS" if ok else "FAIL",
                            f"computed {ab.dim}, claimed {claims['abelian_dim']}"))

    remaining.remove("sigma-rank")
    sr, _ = triple.lts_rank(model, w, seed=base_seed % (2**31))
    ok = sr == claims["sigma_rank"]
    checks.append(CheckItem("sigma-rank", "PASS" if ok else "FAIL",
                            f"greedy maximal abelian dim {sr}, claimed {claims['sigma_rank']}"))

    remaining.remove("rank-vs-index-bound")
    r, _ = triple.rank(model)
    ok = r <= claims["index_upper_bound"]
    checks.append(CheckItem("rank-vs-index-bound", "PASS" if ok else "FAIL",
                            f"rank {r} <= claimed index bound {claims['index_upper_bound']}"))

    if with_transversal:
        remaining.remove("transversal-flat")
        try:
            _, trials = flats.transversal_flat(model, w, budget=budget,
                                               seed=base_seed % (2**31))
            checks.append(CheckItem("transversal-flat", "PASS",
                                    f"exact transversal flat after {trials} trial(s)"))
        except flats.BudgetExhaustedError as exc:
            checks.append(CheckItem("transversal-flat", "FAIL", str(exc)))
    return Report(tuple(checks))


# ---------------------------------------------------------------------------
# generation

def _measure_claims(model, w, index_upper_bound):
    _, is_lts = triple.lts_residual(model, w)
    if not is_lts:
        raise AssertionError("generated subspace is not a Lie triple system")
    ab = triple.abelian_part(model, w)
    sr, _ = triple.lts_rank(model, w, seed=7)
    return {
        "codim": model.dim_p - w.dim,
        "is_lts": True,
        "abelian_dim": ab.dim,
        "sigma_rank": sr,
        "index_upper_bound": index_upper_bound,
    }


def _certificate(model, w, index_upper_bound, provenance):
    claims = _measure_claims(model, w, index_upper_bound)
    if claims["codim"] != index_upper_bound:
        raise AssertionError(f"index witness codim {claims['codim']} != bound {index_upper_bound}")
    basis = tuple(tuple(model.p_to_g(v)) for v in w.basis)
    return Certificate(model.spec, basis, claims, provenance)


def candidate_certificate(model, w, provenance=""):
    """Certificate for a verified exact subspace, bounding the index by its codimension."""
    return _certificate(model, w, model.dim_p - w.dim, provenance)


def _unit_subspace(model, indices):
    vecs = []
    for i in indices:
        v = [Fraction(0)] * model.dim_p
        v[i] = Fraction(1)
        vecs.append(v)
    return model.p_subspace(vecs)


def _so_block_subspace(model, p_, q_):
    # keep the first q_-1 columns of each boost row: drop the last column
    idx = [a * q_ + t for a in range(p_) for t in range(q_ - 1)]
    return _unit_subspace(model, idx)


def _diag_centralizer_subspace(model, n):
    # centralizer of diag(1, 1, ..., 1, -(n-1)); v = sum i*H_{i-1}
    v = [Fraction(0)] * model.dim_p
    for i in range(n - 1):
        v[model.dim_p - (n - 1) + i] = Fraction(i + 1)
    return triple.centralizer(model, v)


def _g2_sl3_subspace(model):
    vecs = []
    sym_basis = []
    for i, j in combinations(range(3), 2):
        a = np.zeros((3, 3), dtype=np.int64)
        a[i, j] = a[j, i] = 1
        sym_basis.append(a)
    for i in range(2):
        a = np.zeros((3, 3), dtype=np.int64)
        a[i, i] = 1
        a[i + 1, i + 1] = -1
        sym_basis.append(a)
    for a in sym_basis:
        d = catalog.g2_block_derivation(a)
        coords = model.rep_coordinates(d)
        if coords is None:
            raise AssertionError("block derivation not in the g2 span")
        vecs.append(model.g_to_p(coords))
    return model.p_subspace(vecs)


def _sl_c_real_form_subspace(model, n):
    # real symmetric p-basis entries: the re-parts among the interleaved pairs,
    # then the real diagonal block
    npairs = n * (n - 1) // 2
    idx = [2 * t for t in range(npairs)] + list(range(2 * npairs, 2 * npairs + n - 1))
    return _unit_subspace(model, idx)


def generate_certificate(pair_id, **params):
    """Emit one of the bundled exact certificates; see BUNDLED_PAIRS."""
    if pair_id == "so1k_hyperplane":
        k = int(params.get("k", 4))
        model = catalog.build_space("so", (1, k))
        w = _unit_subspace(model, range(k - 1))
        return _certificate(model, w, 1, f"totally geodesic hyperplane in the rank-one space so(1,{k})")
    if pair_id == "su1k_hyperplane":
        k = int(params.get("k", 3))
        model = catalog.build_space("su", (1, k))
        w = _unit_subspace(model, range(2 * (k - 1)))
        return _certificate(model, w, 2, f"complex hyperplane in su(1,{k})")
    if pair_id == "so2k_block":
        k = int(params.get("k", 3))
        model = catalog.build_space("so", (2, k))
        w = _so_block_subspace(model, 2, k)
        return _certificate(model, w, 2, f"block so(2,{k-1}) inside so(2,{k})")
    if pair_id == "so3k_block":
        k = int(params.get("k", 4))
        model = catalog.build_space("so", (3, k))
        w = _so_block_subspace(model, 3, k)
        return _certificate(model, w, 3, f"block so(3,{k-1}) inside so(3,{k})")
    if pair_id == "sokn_block":
        k = int(params.get("k", 3))
        n = int(params.get("n", 4))
        model = catalog.build_space("so", (k, n))
        w = _so_block_subspace(model, k, n)
        return _certificate(model, w, k, f"block so({k},{n-1}) inside so({k},{n}); codim-{k} family")
    if pair_id == "sl3R_centralizer":
        model = catalog.build_space("sl_R", (3,))
        w = _diag_centralizer_subspace(model, 3)
        return _certificate(model, w, 2,
                            "centralizer of a most-singular diagonal direction in sl(3,R)")
    if pair_id == "sl4R_centralizer":
        model = catalog.build_space("sl_R", (4,))
        w = _diag_centralizer_subspace(model, 4)
        return _certificate(model, w, 3,
                            "centralizer of a most-singular diagonal direction in sl(4,R)")
    if pair_id == "slkR_veronese_normal":
        k = int(params.get("k", 3))
        model = catalog.build_space("sl_R", (k + 1,))
        w = _diag_centralizer_subspace(model, k + 1)
        return _certificate(model, w, k,
                            f"normal space of the minimal isotropy orbit of sl({k+1},R); codim-{k} family")
    if pair_id == "g2_sl3":
        model = catalog.build_space("g2_split")
        w = _g2_sl3_subspace(model)
        return _certificate(model, w, 3,
                            "long-root sl(3,R) block inside split g2 (octonion vector-matrix model)")
    if pair_id == "sl3C_real_form":
        model = catalog.build_space("sl_C", (3,))
        w = _sl_c_real_form_subspace(model, 3)
        return _certificate(model, w, 3, "real form sl(3,R) inside sl(3,C)")
    raise CertificateFormatError(f"unknown certificate pair id {pair_id!r}")


# the shipped corpus: codimensions 1, 2, 3 and the two codim-k families
BUNDLED_PAIRS = (
    ("so1k_hyperplane", {"k": 4}),
    ("su1k_hyperplane", {"k": 3}),
    ("so2k_block", {"k": 3}),
    ("sl3R_centralizer", {}),
    ("so3k_block", {"k": 4}),
    ("g2_sl3", {}),
    ("sl3C_real_form", {}),
    ("sl4R_centralizer", {}),
    ("sokn_block", {"k": 2, "n": 4}),
    ("sokn_block", {"k": 3, "n": 4}),
    ("sokn_block", {"k": 4, "n": 5}),
    ("slkR_veronese_normal", {"k": 2}),
    ("slkR_veronese_normal", {"k": 3}),
    ("slkR_veronese_normal", {"k": 4}),
)


def bundled_corpus():
    return [(pid, dict(params), generate_certificate(pid, **params))
            for pid, params in BUNDLED_PAIRS]
