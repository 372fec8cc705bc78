"""Lie triple system predicates and derived structure inside p.

The closure condition [[W,W],W] < W is decided exactly; reported residual
magnitudes are floats on top of the exact boolean.  Vectors live in
p-coordinates of a catalog model throughout.
"""

import random as _random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .core import Subspace
from .linalg import EPS


@dataclass(frozen=True)
class LtsReport:
    subspace: Subspace
    residual: float
    is_lts: bool
    abelian_dim: Optional[int] = None
    semisimple: Optional[bool] = None
    tangent_algebra_dim: Optional[int] = None


@dataclass(frozen=True)
class ComplementaryPairReport:
    subspace: Subspace
    perp: Subspace
    perp_is_lts: bool
    perp_abelian_dim: Optional[int] = None
    perp_semisimple: Optional[bool] = None
    abelian_generator: Optional[tuple] = None
    tangent_matches: Optional[bool] = None
    normal_matches: Optional[bool] = None


def _check_p_subspace(model, w):
    if not isinstance(w, Subspace):
        raise TypeError("expected a Subspace of p")
    if w.ambient != model.p_ambient():
        raise ValueError(f"subspace is not inside p of {model.spec}")


def _int_rows(basis):
    return np.array([linalg._row_to_int(v) for v in basis], dtype=object)


def _triple_brackets(model, rows):
    """T[a,b,c,:] = [[w_a, w_b], w_c] in p-coordinates (integer rows in)."""
    c_ppk = model.c_ppk.astype(object)
    c_kpp = model.c_kpp.astype(object)
    t1 = np.tensordot(rows, c_ppk, axes=(1, 0))       # (a, j, k)
    t1 = np.tensordot(t1, rows, axes=(1, 1))          # (a, k, b)
    t1 = t1.transpose(0, 2, 1)                        # (a, b, k)
    t2 = np.tensordot(t1, c_kpp, axes=(2, 0))         # (a, b, j, l)
    t2 = np.tensordot(t2, rows, axes=(2, 1))          # (a, b, l, c)
    return t2.transpose(0, 1, 3, 2)                   # (a, b, c, l)


def _pair_brackets(model, rows):
    """P[a,b,:] = [w_a, w_b] in k-coordinates (integer rows in)."""
    c_ppk = model.c_ppk.astype(object)
    t = np.tensordot(rows, c_ppk, axes=(1, 0))        # (a, j, k)
    t = np.tensordot(t, rows, axes=(1, 1))            # (a, k, b)
    return t.transpose(0, 2, 1)                       # (a, b, k)


def _offspan_mask(basis, vectors_2d):
    """Which rows of vectors_2d fall outside span(basis); exact."""
    if not basis:
        return np.array([any(x != 0 for x in v) for v in vectors_2d])
    red, pivots = linalg.rref(basis)
    r_int, r_den = linalg.scaled_int_matrix(red)
    arr = np.array(vectors_2d, dtype=object)
    resid = arr * r_den - np.tensordot(arr[:, pivots], np.array(r_int, dtype=object), axes=(1, 0))
    return np.array([any(x != 0 for x in row) for row in resid])


def lts_residual(model, w):
    """(residual, is_lts): max off-W component norm of [[x,y],z] over basis triples.

    The boolean is decided exactly; the scalar is a float for reporting.
    """
    _check_p_subspace(model, w)
    if w.dim < 1:
        raise ValueError("lts_residual needs dim W >= 1")
    if w.mode == "float":
        return _lts_residual_float(model, w.basis)

    rows = _int_rows(w.basis)
    trip = _triple_brackets(model, rows)
    flat = trip.reshape(-1, model.dim_p)
    off = _offspan_mask(w.basis, flat)
    if not off.any():
        return 0.0, True

    # residual magnitude in float, from the canonical basis
    wf = linalg.float_matrix(w.basis)
    res = _float_offspan_norm(model, wf, _float_triples(model, wf))
    return max(res, np.finfo(float).tiny), False


def _float_triples(model, wf):
    cf_ppk = model.c_ppk.astype(float) / model.algebra.c_den
    cf_kpp = model.c_kpp.astype(float) / model.algebra.c_den
    t1 = np.einsum("ai,bj,ijk->abk", wf, wf, cf_ppk)
    return np.einsum("abk,cj,kjl->abcl", t1, wf, cf_kpp)


def _float_offspan_norm(model, wf, trip):
    g = linalg.float_matrix(model.gram_p)
    gw = wf @ g
    gram_w = gw @ wf.T
    flat = trip.reshape(-1, model.dim_p)
    coef = np.linalg.solve(gram_w, gw @ flat.T)
    resid = flat - coef.T @ wf
    norms2 = np.einsum("ri,ij,rj->r", resid, g, resid)
    return float(np.sqrt(max(norms2.max(initial=0.0), 0.0)))


def _lts_residual_float(model, wf):
    wf = np.asarray(wf, dtype=float)
    res = _float_offspan_norm(model, wf, _float_triples(model, wf))
    return res, res <= EPS


def centralizer(model, v):
    """{w in p : [v, w] = 0}; contains v, equals the orbit normal space at v."""
    v = linalg.to_fraction_vector(v)
    if len(v) != model.dim_p:
        raise ValueError("expected a p-coordinate vector")
    if all(x == 0 for x in v):
        return model.full_p()
    vi = linalg._row_to_int(v)
    mat = model.ad_p_matrix_int(vi)
    kern = linalg.kernel([list(map(int, r)) for r in mat], ncols=model.dim_p)
    return model.p_subspace(kern, canonical=True)


def tangent_subalgebra(model, w, validate=True):
    """[W,W] + W as a subspace of g; defined for Lie triple systems."""
    _check_p_subspace(model, w)
    _, is_lts = lts_residual(model, w)
    if not is_lts:
        raise ValueError("subspace is not a Lie triple system")
    rows = _int_rows(w.basis)
    pairs = _pair_brackets(model, rows).reshape(-1, model.dim_k)
    vecs = []
    for v in w.basis:
        vecs.append(model.p_to_g(v))
    for row in pairs:
        gv = [Fraction(0)] * model.dim
        for pos, x in zip(model.k_indices, row):
            gv[pos] = Fraction(int(x))
        vecs.append(gv)
    span = linalg.span_basis(vecs)
    sub = Subspace(span, (model.label, "g", model.dim), _canonical=True)
    if validate:
        ints = np.array([linalg._row_to_int(v) for v in span], dtype=object)
        c = model.algebra.c_num.astype(object)
        br = np.tensordot(np.tensordot(ints, c, axes=(1, 0)), ints, axes=(1, 1))
        br = br.transpose(0, 2, 1).reshape(-1, model.dim)
        stacked = [list(v) for v in span] + [list(r) for r in br]
        if len(linalg.span_basis(stacked)) != sub.dim:
            raise AssertionError("tangent algebra failed bracket closure")
    return sub


def abelian_part(model, w):
    """{v in W : [v, W] = 0}: the flat de Rham directions of the system."""
    _check_p_subspace(model, w)
    rows = _int_rows(w.basis)
    pairs = _pair_brackets(model, rows)  # (a, b, k)
    m = w.dim
    mat = pairs.transpose(1, 2, 0).reshape(-1, m)  # rows (b,k), cols a
    kern = linalg.kernel([[int(x) for x in row] for row in mat], ncols=m)
    # kernel coefficients refer to the integer-rescaled rows
    vecs = []
    for coef in kern:
        vec = [Fraction(0)] * model.dim_p
        for a, t in enumerate(coef):
            if t != 0:
                vec = [x + t * int(y) for x, y in zip(vec, rows[a])]
        vecs.append(vec)
    return Subspace.spanned(vecs, model.p_ambient())


def lts_report(model, w):
    residual, is_lts = lts_residual(model, w)
    if not is_lts:
        return LtsReport(w, residual, False)
    ab = abelian_part(model, w)
    tang = tangent_subalgebra(model, w, validate=False)
    return LtsReport(w, residual, True, abelian_dim=ab.dim,
                     semisimple=(ab.dim == 0), tangent_algebra_dim=tang.dim)


# ---------------------------------------------------------------------------
# rank

def _joint_centralizer_rows(model, basis_rows):
    rows = []
    for v in basis_rows:
        mat = model.ad_p_matrix_int(v)
        rows.extend([list(map(int, r)) for r in mat])
    return rows


def _random_int_vector(rng, n, lo=-10, hi=10):
    while True:
        v = [rng.randint(lo, hi) for _ in range(n)]
        if any(v):
            return v


def greedy_maximal_abelian(model, seed=0, start=None):
    """Extend a random vector to a maximal abelian subspace of p.

    Draws integer vectors in the running joint centralizer until it is
    self-centralizing; every step keeps the span abelian.
    """
    rng = _random.Random(seed)
    basis = [list(start)] if start is not None else [_random_int_vector(rng, model.dim_p)]
    basis[0] = linalg._row_to_int(basis[0])
    while True:
        kern = linalg.kernel(_joint_centralizer_rows(model, basis), ncols=model.dim_p)
        if len(kern) == len(basis):
            break
        kern_int = [linalg._row_to_int(v) for v in kern]
        current = [[Fraction(x) for x in b] for b in basis]
        for _ in range(64):
            coeffs = [rng.randint(-5, 5) for _ in kern_int]
            cand = [sum(c * row[j] for c, row in zip(coeffs, kern_int)) for j in range(model.dim_p)]
            if any(cand) and _offspan_mask(linalg.span_basis(current), [cand])[0]:
                basis.append(linalg._row_to_int(cand))
                break
        else:
            # joint centralizer is bigger than the span yet no sample left it:
            # take kernel vectors directly
            for v in kern_int:
                if _offspan_mask(linalg.span_basis(current), [list(v)])[0]:
                    basis.append(list(v))
                    break
    return model.p_subspace([[Fraction(x) for x in b] for b in basis])


def rank(model, seed=0, repeats=5):
    """(rank, witness maximal abelian subspace); greedy over `repeats` seeds.

    Runs must agree on the dimension for catalog spaces; the witness of the
    first run is returned.
    """
    cache = getattr(model, "_rank_cache", None)
    if cache is not None and (seed, repeats) in cache:
        return cache[(seed, repeats)]
    flats = [greedy_maximal_abelian(model, seed=seed + i) for i in range(repeats)]
    dims = [f.dim for f in flats]
    r = max(dims)
    if len(set(dims)) != 1:
        raise AssertionError(f"greedy rank runs disagree on {model.spec}: {dims}")
    result = (r, flats[0])
    if cache is None:
        cache = {}
        object.__setattr__(model, "_rank_cache", cache)
    cache[(seed, repeats)] = result
    return result


def lts_rank(model, w, seed=0):
    """(rank, witness): greedy maximal abelian subspace inside the system W."""
    _check_p_subspace(model, w)
    rng = _random.Random(seed)
    m = w.dim
    rows = _int_rows(w.basis)
    pairs = _pair_brackets(model, rows)  # (a, b, k)

    def joint_rows(coeff_basis):
        out = []
        for c in coeff_basis:
            mat = np.tensordot(np.array(c, dtype=object), pairs, axes=(0, 0))  # (b, k)
            out.extend([[int(x) for x in row] for row in mat.T])
        return out

    basis = [[rng.randint(-5, 5) for _ in range(m)]]
    while not any(basis[0]):
        basis = [[rng.randint(-5, 5) for _ in range(m)]]
    while True:
        kern = linalg.kernel(joint_rows(basis), ncols=m)
        if len(kern) == len(basis):
            break
        kern_int = [linalg._row_to_int(v) for v in kern]
        grew = False
        for v in kern_int:
            if _offspan_mask(linalg.span_basis([[Fraction(x) for x in b] for b in basis]),
                             [list(v)])[0]:
                basis.append(list(v))
                grew = True
                break
        if not grew:
            raise AssertionError("maximal abelian search inside W stalled")
    # coefficient vectors refer to the integer-rescaled rows
    vectors = []
    for c in basis:
        vec = [Fraction(0)] * model.dim_p
        for a, t in enumerate(c):
            if t != 0:
                vec = [x + t * int(y) for x, y in zip(vec, rows[a])]
        vectors.append(vec)
    return len(basis), Subspace.spanned(vectors, model.p_ambient())


# ---------------------------------------------------------------------------
# complementary pairs

def complementary_pair_analysis(model, w):
    """Both-sides analysis of W and its orthocomplement inside p.

    When W-perp is a non-semisimple system, recovers the generator v of its
    abelian part and matches the isotropy orbit spaces at v against the pair.
    """
    _check_p_subspace(model, w)
    if w.dim == 0 or w.dim >= model.dim_p:
        raise ValueError("degenerate subspace: need 1 <= dim W < dim p")
    _, is_lts = lts_residual(model, w)
    if not is_lts:
        raise ValueError("subspace is not a Lie triple system")

    perp_vecs = linalg.orthocomplement_basis(w.basis, model.gram_p)
    perp = model.p_subspace(perp_vecs, canonical=True)
    _, perp_is_lts = lts_residual(model, perp)
    if not perp_is_lts:
        return ComplementaryPairReport(w, perp, False)

    ab = abelian_part(model, perp)
    if ab.dim == 0:
        return ComplementaryPairReport(w, perp, True, perp_abelian_dim=0, perp_semisimple=True)
    if ab.dim != 1:
        # a non-semisimple complement in an irreducible rank >= 2 space must
        # have a one-dimensional abelian part; reducible models may not
        if model.irreducible and rank(model)[0] >= 2:
            raise AssertionError(f"non-semisimple complement has abelian part of dim {ab.dim}")
        return ComplementaryPairReport(w, perp, True, perp_abelian_dim=ab.dim,
                                       perp_semisimple=False)
    v = ab.basis[0]
    from . import orbits

    om = orbits.orbit_spaces(model, v)
    return ComplementaryPairReport(
        w, perp, True, perp_abelian_dim=1, perp_semisimple=False,
        abelian_generator=tuple(v),
        tangent_matches=(om.tangent == w),
        normal_matches=(om.normal == perp),
    )
