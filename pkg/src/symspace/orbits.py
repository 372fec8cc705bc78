"""Geometry of isotropy orbits K.v inside the Euclidean space p.

Tangent/normal splittings, second fundamental form and shape operators,
slice representations, the extrinsic-reflection (symmetric submanifold)
test, curvature normals of principal orbits, and the strict suborbit
dimension comparison.
"""

import random as _random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iproduct

import numpy as np

from . import linalg, triple
from .core import Subspace

EIG_CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class OrbitModel:
    v: tuple
    tangent: Subspace
    normal: Subspace
    dim: int


@dataclass(frozen=True)
class SliceData:
    acting_algebra: Subspace
    image_dim: int
    trivial: bool
    transitive_on_sphere: bool
    normal_dim: int


@dataclass(frozen=True)
class CurvatureData:
    normals: tuple          # float vectors in p-coordinates
    multiplicities: tuple
    g: int
    m: int


def _as_p_vector(model, v):
    v = linalg.to_fraction_vector(v)
    if len(v) != model.dim_p:
        raise ValueError("expected a p-coordinate vector")
    return v


def _tangent_rows(model, v_int):
    """Row a = [X_a, v] in p-coordinates, X_a running over the k-basis."""
    z = np.array(v_int, dtype=object)
    return np.tensordot(z, model.c_kpp.astype(object), axes=(0, 1))  # (dim_k, dim_p)


def orbit_spaces(model, v):
    """Tangent [k,v] and normal space of K.v at v; normal equals the centralizer."""
    v = _as_p_vector(model, v)
    vi = linalg._row_to_int(v) if any(x != 0 for x in v) else [0] * model.dim_p
    rows = _tangent_rows(model, vi)
    tangent_vecs = linalg.span_basis([[Fraction(int(x)) for x in r] for r in rows])
    tangent = model.p_subspace(tangent_vecs, canonical=True)
    normal_vecs = linalg.orthocomplement_basis(tangent_vecs, model.gram_p)
    normal = model.p_subspace(normal_vecs, canonical=True)
    if normal != triple.centralizer(model, v):
        raise AssertionError("orbit normal space differs from the centralizer")
    return OrbitModel(tuple(v), tangent, normal, tangent.dim)


# ---------------------------------------------------------------------------
# second fundamental form and shape operators

class _OrbitFrame:
    """Tangent frame t_a = [X_a, v] for a pivot subset of the k-basis.

    Built from the exact v: rescaling v would rescale the orbit and with it
    every shape operator.
    """

    def __init__(self, model, v):
        v = _as_p_vector(model, v)
        if all(x == 0 for x in v):
            raise ValueError("orbit frame needs v != 0")
        self.model = model
        self.v = v
        den = Fraction(model.algebra.c_den)
        raw = np.tensordot(np.array(v, dtype=object),
                           model.c_kpp.astype(object), axes=(0, 1))  # (dim_k, dim_p)
        frac_rows = [[Fraction(x) / den for x in r] for r in raw]
        target = linalg.rank(frac_rows)
        sel = []
        picked = []
        for a, row in enumerate(frac_rows):
            if len(sel) == target:
                break
            if any(x != 0 for x in row) and linalg.rank(picked + [row]) > len(picked):
                sel.append(a)
                picked.append(row)
        self.k_sel = sel
        self.tangent_rows = picked
        self.m = len(sel)
        self.gram_t = linalg.gram_matrix(self.tangent_rows, model.gram_p)

    def _double_brackets(self):
        """[X_a, [X_b, v]] for the selected frame, p-coordinates."""
        model = self.model
        out = {}
        for b, w in zip(self.k_sel, self.tangent_rows):
            for a in self.k_sel:
                xa = [Fraction(int(a == i)) for i in range(model.dim_k)]
                out[(a, b)] = model.bracket_kp(xa, w)
        return out

    def alpha(self):
        """alpha[a][b] = normal component of [X_a, [X_b, v]], p-coordinates."""
        model = self.model
        normal = triple.centralizer(model, self.v)
        proj = _orthogonal_projector(normal.basis, model.gram_p)
        dbl = self._double_brackets()
        return [[_apply(proj, dbl[(a, b)]) for b in self.k_sel] for a in self.k_sel]


def _orthogonal_projector(basis, gram):
    """P with P x = the <.,.>-orthogonal projection of x onto span(basis)."""
    n = len(gram)
    if not basis:
        return [[Fraction(0)] * n for _ in range(n)]
    gram_b = linalg.gram_matrix(basis, gram)
    inv = linalg.invert(gram_b)
    bg = [[sum(b[i] * gram[i][j] for i in range(n) if b[i] != 0) for j in range(n)] for b in basis]
    # P = B^T inv B G  (vectors as columns)
    m = len(basis)
    left = [[sum(basis[a][i] * inv[a][b] for a in range(m)) for b in range(m)] for i in range(n)]
    return [[sum(left[i][b] * bg[b][j] for b in range(m)) for j in range(n)] for i in range(n)]


def _apply(mat, vec):
    n = len(mat)
    return [sum(mat[i][j] * vec[j] for j in range(n) if vec[j] != 0) for i in range(n)]


def shape_operator(model, v, xi):
    """Matrix of A_xi on the orbit tangent frame; <A_xi x, y> = <alpha(x,y), xi>.

    Exact; raises when xi is not normal to the orbit at v.
    """
    v = _as_p_vector(model, v)
    xi = _as_p_vector(model, xi)
    if all(x == 0 for x in v):
        raise ValueError("shape operator needs v != 0")
    if any(x != 0 for x in model.bracket_pp(xi, v)):
        raise ValueError("xi is not normal to the orbit (does not centralize v)")
    frame = _OrbitFrame(model, v)
    s = _shape_bilinear(frame, xi)
    inv = linalg.invert(frame.gram_t)
    m = frame.m
    return [[sum(inv[a][c] * s[c][b] for c in range(m)) for b in range(m)] for a in range(m)], frame


def _shape_bilinear(frame, xi):
    """S[a][b] = <[X_a, [X_b, v]], xi>; equals <alpha(t_a, t_b), xi> for normal xi."""
    gxi = _apply([list(r) for r in frame.model.gram_p], xi)
    dbl = frame._double_brackets()
    return [[sum(x * y for x, y in zip(dbl[(a, b)], gxi) if x != 0)
             for b in frame.k_sel] for a in frame.k_sel]


# ---------------------------------------------------------------------------
# slice representations

def _k_v_basis(model, v):
    """Basis of the isotropy algebra k_v = {X in k : [X, v] = 0} (k-coordinates)."""
    vi = linalg._row_to_int(v)
    rows_t = _tangent_rows(model, vi)  # (dim_k, dim_p); row a = [X_a, v]
    mat = [[int(rows_t[a][j]) for a in range(model.dim_k)] for j in range(model.dim_p)]
    return linalg.kernel(mat, ncols=model.dim_k)


def _bracket_span_k(model, w):
    """[W, W] as k-coordinate vectors."""
    rows = triple._int_rows(w.basis)
    pairs = triple._pair_brackets(model, rows).reshape(-1, model.dim_k)
    return linalg.span_basis([[Fraction(int(x)) for x in r] for r in pairs])


def _restrict_to_subspace(model, k_vec, sub_basis, pivots):
    """Matrix of ad(k_vec) restricted to span(sub_basis), exact.

    sub_basis must be in reduced echelon form with the given pivot columns,
    so in-span coordinates can be read off the pivot entries.
    """
    cols = []
    for b in sub_basis:
        img = model.bracket_kp(k_vec, b)
        coords = [img[p] for p in pivots]
        # verify img really lies in the subspace
        recon = [Fraction(0)] * model.dim_p
        for c, row in zip(coords, sub_basis):
            if c != 0:
                recon = [x + c * y for x, y in zip(recon, row)]
        if recon != img:
            raise AssertionError("slice action does not preserve the normal space")
        cols.append(coords)
    m = len(sub_basis)
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def slice_representation(model, w_or_v, seed=0):
    """Action of the isotropy algebra on the normal space.

    For a Lie triple system W, the acting algebra is [W, W] on the
    orthocomplement of W; for a vector v, it is k_v on the centralizer of v.
    Transitivity on the unit sphere is decided by the orbit dimension at two
    generic integer normal vectors.
    """
    if isinstance(w_or_v, Subspace):
        w = w_or_v
        triple._check_p_subspace(model, w)
        _, is_lts = triple.lts_residual(model, w)
        if not is_lts:
            raise ValueError("slice representation of a non-LTS subspace")
        acting = _bracket_span_k(model, w)
        normal_vecs = linalg.orthocomplement_basis(w.basis, model.gram_p)
    else:
        v = _as_p_vector(model, w_or_v)
        if all(x == 0 for x in v):
            raise ValueError("slice representation needs v != 0")
        acting = _k_v_basis(model, v)
        normal_vecs = triple.centralizer(model, v).basis

    acting_sub = Subspace(acting, (model.label, "k", model.dim_k), _canonical=True)
    red, pivots = linalg.rref(normal_vecs) if normal_vecs else ([], [])
    nd = len(normal_vecs)
    mats = [_restrict_to_subspace(model, y, red, pivots) for y in acting]
    flat = [sum([list(map(Fraction, row)) for row in m], []) for m in mats]
    image_dim = linalg.rank(flat) if flat else 0
    trivial = image_dim == 0

    transitive = False
    if not trivial and nd >= 2:
        rng = _random.Random(seed)
        hits = 0
        for _ in range(2):
            xi = [rng.randint(-7, 7) for _ in range(nd)]
            orbit_rows = [_apply(m, [Fraction(x) for x in xi]) for m in mats]
            if linalg.rank(orbit_rows) == nd - 1:
                hits += 1
        transitive = hits == 2
    return SliceData(acting_sub, image_dim, trivial, transitive, nd)


# ---------------------------------------------------------------------------
# symmetric submanifold (extrinsic reflection) test

def symmetric_submanifold_test(model, v):
    """True when the reflection in the orbit normal space normalizes ad(k)|p.

    The reflection tau fixes the normal space of K.v and negates the tangent
    space; the orbit is an (extrinsically) symmetric submanifold of p exactly
    when conjugation by tau maps ad(k)|p into itself.
    """
    v = _as_p_vector(model, v)
    if all(x == 0 for x in v):
        raise ValueError("symmetric submanifold test needs v != 0")
    normal = triple.centralizer(model, v)
    proj = _orthogonal_projector(normal.basis, model.gram_p)
    n = model.dim_p
    tau = [[2 * proj[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]

    den = Fraction(model.algebra.c_den)
    ads = []
    for a in range(model.dim_k):
        mat = [[Fraction(int(model.c_kpp[a, i, j])) / den for i in range(n)] for j in range(n)]
        ads.append(mat)
    span_rows = [sum(m, []) for m in ads]
    for a in range(model.dim_k):
        conj = _mat_mul(_mat_mul(tau, ads[a]), tau)
        if not linalg.in_span(span_rows, sum(conj, [])):
            return False
    return True


def _mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


# ---------------------------------------------------------------------------
# curvature normals of a principal orbit

def curvature_normals(model, v, seed=0):
    """Distinct curvature normals with multiplicities for a principal orbit.

    Joint eigenstructure of the commuting shape operators over the normal
    flat; float eigenvalues with exact confirmation of the multiplicity
    pattern through the characteristic polynomial over Q.
    """
    v = _as_p_vector(model, v)
    r, _ = triple.rank(model)
    flat = triple.centralizer(model, v)
    if flat.dim != r:
        raise ValueError("curvature normals need a regular vector")
    frame = _OrbitFrame(model, v)
    m = frame.m

    a_each = [shape_operator(model, v, list(b))[0] for b in flat.basis]
    af_each = [np.array([[float(x) for x in row] for row in a]) for a in a_each]
    gf = np.array([[float(x) for x in row] for row in frame.gram_t])
    gram_flat = linalg.gram_matrix(flat.basis, model.gram_p)
    gram_flat_f = np.array([[float(x) for x in row] for row in gram_flat])

    from .flats import joint_eigenvalue_blocks
    blocks = joint_eigenvalue_blocks(af_each, gf, EIG_CLUSTER_TOL)

    # exact confirmation per operator: the eigenvalue multiplicity pattern of
    # the refined blocks must match the squarefree factorization over Q
    for i, a in enumerate(a_each):
        pairs = sorted((float(vals[i]), mult) for vals, mult in blocks)
        merged = []
        for val, mlt in pairs:
            if merged and val - merged[-1][0] <= EIG_CLUSTER_TOL * max(1.0, abs(val)):
                merged[-1] = (val, merged[-1][1] + mlt)
            else:
                merged.append((val, mlt))
        exact_pattern = []
        for mlt, deg in linalg.squarefree_multiplicities(linalg.charpoly(a)):
            exact_pattern.extend([mlt] * deg)
        if sorted(m2 for _, m2 in merged) != sorted(exact_pattern):
            raise AssertionError("float eigenvalue clustering disagrees with the "
                                 "exact characteristic polynomial")

    normals = []
    mults = []
    for vals, mult in blocks:
        eta_coords = np.linalg.solve(gram_flat_f, vals)
        eta = np.array([[float(x) for x in b] for b in flat.basis]).T @ eta_coords
        normals.append(tuple(eta))
        mults.append(mult)
    if sum(mults) != m:
        raise AssertionError("curvature normal multiplicities do not add up")
    if linalg.float_rank(np.array(normals)) != r:
        raise AssertionError("curvature normals do not span the flat")
    if 2 * r + 1 > model.dim_p and model.irreducible and model.dim_p >= 3:
        raise AssertionError("2 rank + 1 <= dim p violated")
    return CurvatureData(tuple(normals), tuple(mults), len(normals), m)


def _selfadjoint_eig(a, gram):
    """Eigendata of an operator self-adjoint w.r.t. a positive Gram matrix."""
    l = np.linalg.cholesky(gram)
    b = l.T @ a @ np.linalg.inv(l.T)
    b = (b + b.T) / 2
    lam, u = np.linalg.eigh(b)
    vecs = np.linalg.solve(l.T, u)
    return lam, vecs


def _cluster(values, tol):
    order = np.argsort(values)
    clusters = [[int(order[0])]]
    for idx in order[1:]:
        if abs(values[idx] - values[clusters[-1][-1]]) <= tol:
            clusters[-1].append(int(idx))
        else:
            clusters.append([int(idx)])
    return clusters


# ---------------------------------------------------------------------------
# suborbit dimensions and focal extensions

def suborbit_dimension_check(model, w, v):
    """(d', d, strict): orbit dimension of the subalgebra [W,W] versus k at v."""
    triple._check_p_subspace(model, w)
    v = _as_p_vector(model, v)
    if all(x == 0 for x in v):
        raise ValueError("suborbit dimension check needs v != 0")
    if not w.contains(v):
        raise ValueError("v must lie in W")
    kp = _bracket_span_k(model, w)
    rows = [model.bracket_kp(y, v) for y in kp]
    d_sub = linalg.rank(rows) if rows else 0
    vi = linalg._row_to_int(v)
    full_rows = _tangent_rows(model, vi)
    d_full = linalg.rank([[int(x) for x in r] for r in full_rows])
    return d_sub, d_full, d_sub < d_full


def focal_extension_search(model, v, coeff_bound=2, max_candidates=20000):
    """A normal direction xi with centralizer(v) properly inside centralizer(v+xi).

    Scans integer combinations of the abelian part of the centralizer of v;
    returns None when the abelian part is a line or no rational candidate is
    found in range.
    """
    v = _as_p_vector(model, v)
    cz = triple.centralizer(model, v)
    ab = triple.abelian_part(model, cz)
    if ab.dim < 2:
        return None
    base_dim = cz.dim
    basis = [linalg._row_to_int(b) for b in ab.basis]
    count = 0
    for coeffs in _iproduct(range(-coeff_bound, coeff_bound + 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        count += 1
        if count > max_candidates:
            break
        eta = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(model.dim_p)]
        if all(x == 0 for x in eta):
            continue
        if triple.centralizer(model, eta).dim > base_dim:
            return [Fraction(e) - x for e, x in zip(eta, v)]
    return None
