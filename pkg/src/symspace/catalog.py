"""Bundled symmetric space models: validated algebra + Cartan involution.

Every model is built from an explicit integer matrix representation (the
defining representation, kept on the algebra for oracle cross-checks), with
the basis ordered k-part first, p-part second, so the Cartan involution is
the diagonal sign matrix.  Supported specifiers:

    sl_R:n   sl_C:n   so:p,q   su:p,q   sp_R:n   sp:p,q   g2_split
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

import numpy as np

from . import linalg
from .core import (CartanDecomposition, LieAlgebra, Subspace, cartan_decompose,
                   killing_form)


class UnsupportedSpaceError(ValueError):
    """Specifier outside the supported families or parameter range."""


# parameter caps keep exact arithmetic fast; config, not architecture
MAX_SL = 8
MAX_SO = 12
MAX_SU = 6
MAX_SP_R = 4
MAX_SP = 4


@dataclass(frozen=True)
class SymmetricSpaceModel:
    """A noncompact symmetric space G/K at the Lie algebra level."""

    family: str
    params: tuple
    spec: str
    algebra: LieAlgebra
    cartan: CartanDecomposition
    expected_dim_p: int
    expected_rank: int
    label: str
    irreducible: bool
    standard_flat: tuple  # rows of p-coordinates; validated maximal abelian

    # -- basic shape ---------------------------------------------------------

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def dim_k(self):
        return self.cartan.dim_k

    @property
    def dim_p(self):
        return self.cartan.dim_p

    @property
    def k_indices(self):
        return self.cartan.k_indices

    @property
    def p_indices(self):
        return self.cartan.p_indices

    # -- coordinates ---------------------------------------------------------

    def p_to_g(self, vec):
        out = [Fraction(0)] * self.dim
        for pos, x in zip(self.p_indices, vec):
            out[pos] = Fraction(x) if not isinstance(x, Fraction) else x
        return out

    def g_to_p(self, vec):
        vec = linalg.to_fraction_vector(vec)
        for i in self.k_indices:
            if vec[i] != 0:
                raise ValueError("vector has a component outside p")
        return [vec[i] for i in self.p_indices]

    def p_ambient(self):
        return (self.label, "p", self.dim_p)

    def rep_coordinates(self, mat):
        """g-coordinates of a defining-representation matrix, or None."""
        rep = self.algebra.rep
        nm = rep[0].shape[0]
        mat = np.asarray(mat)
        rows = [[Fraction(int(r[a, b])) for r in rep] for a in range(nm) for b in range(nm)]
        rhs = [Fraction(int(mat[a, b])) for a in range(nm) for b in range(nm)]
        return linalg.solve(rows, rhs)

    def p_subspace(self, vectors, canonical=False):
        return Subspace(vectors, self.p_ambient(), _canonical=canonical)

    def full_p(self):
        n = self.dim_p
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return self.p_subspace(ident, canonical=True)

    # -- restricted structure tensors (integer fast paths) --------------------

    def _sub_tensor(self, a_idx, b_idx, c_idx):
        return self.algebra.c_num[np.ix_(a_idx, b_idx, c_idx)]

    @property
    def c_ppk(self):
        if not hasattr(self, "_c_ppk"):
            object.__setattr__(self, "_c_ppk", self._sub_tensor(self.p_indices, self.p_indices, self.k_indices))
        return self._c_ppk

    @property
    def c_kpp(self):
        if not hasattr(self, "_c_kpp"):
            object.__setattr__(self, "_c_kpp", self._sub_tensor(self.k_indices, self.p_indices, self.p_indices))
        return self._c_kpp

    @property
    def c_kkk(self):
        if not hasattr(self, "_c_kkk"):
            object.__setattr__(self, "_c_kkk", self._sub_tensor(self.k_indices, self.k_indices, self.k_indices))
        return self._c_kkk

    @property
    def gram_p(self):
        """Positive definite Gram matrix of <.,.> = -B(X, theta Y) on p."""
        if not hasattr(self, "_gram_p"):
            G = self.cartan.inner_product.matrix
            rows = [[G[i][j] for j in self.p_indices] for i in self.p_indices]
            object.__setattr__(self, "_gram_p", rows)
        return self._gram_p

    @property
    def gram_k(self):
        if not hasattr(self, "_gram_k"):
            G = self.cartan.inner_product.matrix
            rows = [[G[i][j] for j in self.k_indices] for i in self.k_indices]
            object.__setattr__(self, "_gram_k", rows)
        return self._gram_k

    def bracket_pp(self, x, y):
        """[x, y] in k-coordinates for p-vectors x, y (exact)."""
        gx = self.p_to_g(x)
        gy = self.p_to_g(y)
        out = self.algebra.bracket(gx, gy)
        return [out[i] for i in self.k_indices]

    def bracket_kp(self, x, y):
        """[x, y] in p-coordinates for x in k-, y in p-coordinates (exact)."""
        gx = [Fraction(0)] * self.dim
        for pos, v in zip(self.k_indices, x):
            gx[pos] = Fraction(v)
        out = self.algebra.bracket(gx, self.p_to_g(y))
        return [out[i] for i in self.p_indices]

    def ad_p_matrix_int(self, z_int):
        """Rows of the map p -> k, w -> [z, w], for integer p-vector z."""
        zmax = max((abs(int(x)) for x in z_int), default=0)
        cmax = int(np.abs(self.c_ppk).max(initial=0))
        if zmax * cmax * self.dim_p < 2**62 and self.c_ppk.dtype == np.int64:
            z = np.asarray([int(x) for x in z_int], dtype=np.int64)
            m = np.tensordot(z, self.c_ppk, axes=(0, 0))
        else:
            z = np.asarray([int(x) for x in z_int], dtype=object)
            m = np.tensordot(z, self.c_ppk.astype(object), axes=(0, 0))
        return m.T  # (dim_k, dim_p)

    def __repr__(self):
        return f"SymmetricSpaceModel({self.spec})"


# ---------------------------------------------------------------------------
# structure constants from matrix representations

def algebra_from_matrices(mats, label):
    """Abstract algebra of a list of independent integer matrices.

    Expands all commutators exactly in the given basis; raises if the span is
    not closed under commutators.  The matrices are attached as the defining
    representation.
    """
    dim = len(mats)
    n2 = mats[0].shape[0] * mats[0].shape[1]
    flat = np.array([m.reshape(-1) for m in mats], dtype=np.int64)
    ech, pivots = linalg.row_echelon_int([list(map(int, r)) for r in flat])
    if len(pivots) != dim:
        raise ValueError(f"{label}: basis matrices are dependent")
    a_rows = [[Fraction(int(flat[i, s])) for i in range(dim)] for s in pivots]
    a_inv = linalg.invert(a_rows)
    a_int, den = linalg.scaled_int_matrix(a_inv)

    stack = np.array(mats, dtype=np.int64)
    prod = np.einsum("iab,jbc->ijac", stack, stack)
    comm = prod - prod.transpose(1, 0, 2, 3)
    comm_flat = comm.reshape(dim, dim, n2)
    sel = comm_flat[:, :, pivots]  # (dim, dim, dim)

    big = int(np.abs(a_int).max(initial=0)) * int(np.abs(sel).max(initial=0)) * dim
    if big > 2**62 or a_int.dtype == object:
        a_use = a_int.astype(object)
        sel_use = sel.astype(object)
    else:
        a_use = a_int
        sel_use = sel
    c_scaled = np.tensordot(sel_use, a_use, axes=(2, 1))  # c[i,j,k] * den

    # closure check: the reconstruction must match every commutator exactly
    recon = np.tensordot(c_scaled, flat.astype(c_scaled.dtype), axes=(2, 0))
    if not np.array_equal(recon, comm_flat.astype(c_scaled.dtype) * den):
        raise ValueError(f"{label}: span is not closed under commutators")

    g = 0
    for v in c_scaled.reshape(-1).tolist():
        g = gcd(g, int(v))
        if g == 1:
            break
    g = gcd(g, den) if g else den
    if g > 1:
        c_scaled = c_scaled // g
        den //= g
    try:
        c_num = c_scaled.astype(np.int64)
    except OverflowError:
        c_num = c_scaled
    return LieAlgebra(c_num, c_den=den, label=label, rep=[m.copy() for m in mats])


def _theta_adapted(dim_k, dim_p):
    n = dim_k + dim_p
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1 if i < dim_k else -1
    return rows


# ---------------------------------------------------------------------------
# matrix bases per family

def _e(n, i, j):
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


def _sl_r_basis(n):
    k = [_e(n, i, j) - _e(n, j, i) for i, j in combinations(range(n), 2)]
    p = [_e(n, i, j) + _e(n, j, i) for i, j in combinations(range(n), 2)]
    p += [_e(n, i, i) - _e(n, i + 1, i + 1) for i in range(n - 1)]
    return k, p


def _so_basis(p, q):
    n = p + q
    k = [_e(n, a, b) - _e(n, b, a) for a, b in combinations(range(p), 2)]
    k += [_e(n, a, b) - _e(n, b, a) for a, b in combinations(range(p, n), 2)]
    pp = [_e(n, a, b) + _e(n, b, a) for a in range(p) for b in range(p, n)]
    return k, pp


def _sp_r_basis(n):
    # X = [[A, B], [C, -A^T]] with B, C symmetric
    def blocks(a, b, c):
        top = np.hstack([a, b])
        bot = np.hstack([c, -a.T])
        return np.vstack([top, bot]).astype(np.int64)

    sym = [_e(n, i, j) + _e(n, j, i) for i, j in combinations(range(n), 2)]
    sym += [2 * _e(n, i, i) for i in range(n)]
    asym = [_e(n, i, j) - _e(n, j, i) for i, j in combinations(range(n), 2)]
    z = np.zeros((n, n), dtype=np.int64)
    k = [blocks(a, z, z) for a in asym] + [blocks(z, b, -b) for b in sym]
    p = [blocks(a, z, z) for a in sym] + [blocks(z, b, b) for b in sym]
    return k, p


def _realify_complex(re, im):
    """Real 2N x 2N image of the complex matrix re + i*im."""
    top = np.hstack([re, -im])
    bot = np.hstack([im, re])
    return np.vstack([top, bot]).astype(np.int64)


def _su_basis(p, q):
    n = p + q
    z = np.zeros((n, n), dtype=np.int64)

    def cplx(re=None, im=None):
        return _realify_complex(re if re is not None else z, im if im is not None else z)

    k = []
    for lo, hi in ((0, p), (p, n)):
        for a, b in combinations(range(lo, hi), 2):
            k.append(cplx(re=_e(n, a, b) - _e(n, b, a)))
            k.append(cplx(im=_e(n, a, b) + _e(n, b, a)))
    for j in range(n - 1):
        k.append(cplx(im=_e(n, j, j) - _e(n, j + 1, j + 1)))
    pp = []
    for a in range(p):
        for b in range(p, n):
            pp.append(cplx(re=_e(n, a, b) + _e(n, b, a)))
            pp.append(cplx(im=_e(n, a, b) - _e(n, b, a)))
    return k, pp


def _sl_c_basis(n):
    z = np.zeros((n, n), dtype=np.int64)

    def cplx(re=None, im=None):
        return _realify_complex(re if re is not None else z, im if im is not None else z)

    k = []
    for a, b in combinations(range(n), 2):
        k.append(cplx(re=_e(n, a, b) - _e(n, b, a)))
        k.append(cplx(im=_e(n, a, b) + _e(n, b, a)))
    for j in range(n - 1):
        k.append(cplx(im=_e(n, j, j) - _e(n, j + 1, j + 1)))
    p = []
    for a, b in combinations(range(n), 2):
        p.append(cplx(re=_e(n, a, b) + _e(n, b, a)))
        p.append(cplx(im=_e(n, a, b) - _e(n, b, a)))
    for j in range(n - 1):
        p.append(cplx(re=_e(n, j, j) - _e(n, j + 1, j + 1)))
    return k, p


# quaternion units as 4x4 left-multiplication matrices in the basis (1, i, j, k)
_Q1 = np.eye(4, dtype=np.int64)
_QI = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=np.int64)
_QJ = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)
_QK = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=np.int64)
_QUNITS = (_Q1, _QI, _QJ, _QK)


def _quat_embed(n, a, b, unit):
    m = np.zeros((4 * n, 4 * n), dtype=np.int64)
    m[4 * a:4 * a + 4, 4 * b:4 * b + 4] = unit
    return m


def _sp_pq_basis(p, q):
    n = p + q
    k = []
    for d in range(n):
        for u in (_QI, _QJ, _QK):
            k.append(_quat_embed(n, d, d, u))
    for lo, hi in ((0, p), (p, n)):
        for a, b in combinations(range(lo, hi), 2):
            for u in _QUNITS:
                k.append(_quat_embed(n, a, b, u) - _quat_embed(n, b, a, u.T))
    pp = []
    for a in range(p):
        for b in range(p, n):
            for u in _QUNITS:
                pp.append(_quat_embed(n, a, b, u) + _quat_embed(n, b, a, u.T))
    return k, pp


# ---------------------------------------------------------------------------
# split G2 as the derivation algebra of the split octonions (vector matrices)

def _zorn_product_tensor():
    """m[i, j, z]: coordinates of e_i * e_j for the split octonions.

    Elements are (a, v, w, b) with v, w in R^3; the product couples the two
    scalar slots to dot products and the vector slots to cross products.
    """
    def cross(u, v):
        return np.array([u[1] * v[2] - u[2] * v[1],
                         u[2] * v[0] - u[0] * v[2],
                         u[0] * v[1] - u[1] * v[0]], dtype=np.int64)

    m = np.zeros((8, 8, 8), dtype=np.int64)
    basis = np.eye(8, dtype=np.int64)
    for i in range(8):
        for j in range(8):
            a1, v1, w1, b1 = basis[i][0], basis[i][1:4], basis[i][4:7], basis[i][7]
            a2, v2, w2, b2 = basis[j][0], basis[j][1:4], basis[j][4:7], basis[j][7]
            a = a1 * a2 + v1 @ w2
            v = a1 * v2 + b2 * v1 - cross(w1, w2)
            w = a2 * w1 + b1 * w2 + cross(v1, v2)
            b = b1 * b2 + w1 @ v2
            m[i, j, 0] = a
            m[i, j, 1:4] = v
            m[i, j, 4:7] = w
            m[i, j, 7] = b
    return m


def _zorn_derivations():
    """Integer basis of Der(split octonions): a 14-dimensional algebra."""
    m = _zorn_product_tensor()
    rows = []
    # unknowns D[w, u] in row-major order; D(e_i e_j) = D(e_i) e_j + e_i D(e_j)
    for i in range(8):
        for j in range(8):
            for w in range(8):
                coef = [0] * 64
                for z in range(8):
                    coef[w * 8 + z] += int(m[i, j, z])
                for u in range(8):
                    coef[u * 8 + i] -= int(m[u, j, w])
                    coef[u * 8 + j] -= int(m[i, u, w])
                rows.append(coef)
    kern = linalg.kernel(rows, ncols=64)
    mats = []
    for vec in kern:
        ints = linalg._row_to_int(vec)
        mats.append(np.array(ints, dtype=np.int64).reshape(8, 8))
    return mats


def _g2_split_basis():
    ders = _zorn_derivations()
    if len(ders) != 14:
        raise ValueError(f"split octonion derivation algebra has dim {len(ders)}, expected 14")
    flat = [list(map(int, d.reshape(-1))) for d in ders]
    # closure of the span under transpose lets -transpose act as the involution
    for d in ders:
        if not linalg.in_span(flat, list(map(int, d.T.reshape(-1)))):
            raise ValueError("derivation span is not transpose-closed")
    sym = linalg.span_basis([[Fraction(a + b) for a, b in zip(list(map(int, d.reshape(-1))),
                                                              list(map(int, d.T.reshape(-1))))]
                             for d in ders])
    asym = linalg.span_basis([[Fraction(a - b) for a, b in zip(list(map(int, d.reshape(-1))),
                                                               list(map(int, d.T.reshape(-1))))]
                              for d in ders])
    k = [np.array(linalg._row_to_int(v), dtype=np.int64).reshape(8, 8) for v in asym]
    p = [np.array(linalg._row_to_int(v), dtype=np.int64).reshape(8, 8) for v in sym]
    if len(k) + len(p) != 14:
        raise ValueError("transpose eigenspaces of Der do not span")
    return k, p


def g2_block_derivation(a):
    """Derivation (a, v, w, b) -> (0, Av, -A^T w, 0) of the split octonions.

    For traceless A these span the long-root sl_3 subalgebra of split g2.
    """
    d = np.zeros((8, 8), dtype=np.int64)
    d[1:4, 1:4] = a
    d[4:7, 4:7] = -a.T
    return d


# ---------------------------------------------------------------------------
# family metadata and standard flats

def _family_data(family, params):
    if family == "sl_R":
        (n,) = params
        if not 2 <= n <= MAX_SL:
            raise UnsupportedSpaceError(f"sl_R needs 2 <= n <= {MAX_SL}")
        k, p = _sl_r_basis(n)
        return k, p, n * (n + 1) // 2 - 1, n - 1, True, f"SL{n}(R)/SO{n}"
    if family == "sl_C":
        (n,) = params
        if not 2 <= n <= MAX_SU:
            raise UnsupportedSpaceError(f"sl_C needs 2 <= n <= {MAX_SU}")
        k, p = _sl_c_basis(n)
        return k, p, n * n - 1, n - 1, True, f"SL{n}(C)/SU{n}"
    if family == "so":
        p_, q_ = params
        if not (1 <= p_ <= q_ and p_ + q_ <= MAX_SO and q_ >= 2):
            raise UnsupportedSpaceError(f"so needs 1 <= p <= q, q >= 2, p+q <= {MAX_SO}")
        k, p = _so_basis(p_, q_)
        irr = not (p_ == q_ == 2)  # so(2,2) is semisimple but not simple
        return k, p, p_ * q_, min(p_, q_), irr, f"SO({p_},{q_})/SO{p_}xSO{q_}"
    if family == "su":
        p_, q_ = params
        if not (1 <= p_ <= q_ and p_ + q_ <= MAX_SU):
            raise UnsupportedSpaceError(f"su needs 1 <= p <= q, p+q <= {MAX_SU}")
        k, p = _su_basis(p_, q_)
        return k, p, 2 * p_ * q_, min(p_, q_), True, f"SU({p_},{q_})/S(U{p_}xU{q_})"
    if family == "sp_R":
        (n,) = params
        if not 1 <= n <= MAX_SP_R:
            raise UnsupportedSpaceError(f"sp_R needs 1 <= n <= {MAX_SP_R}")
        k, p = _sp_r_basis(n)
        return k, p, n * (n + 1), n, True, f"Sp{2 * n}(R)/U{n}"
    if family == "sp":
        p_, q_ = params
        if not (1 <= p_ <= q_ and p_ + q_ <= MAX_SP):
            raise UnsupportedSpaceError(f"sp needs 1 <= p <= q, p+q <= {MAX_SP}")
        k, p = _sp_pq_basis(p_, q_)
        return k, p, 4 * p_ * q_, min(p_, q_), True, f"Sp({p_},{q_})/Sp{p_}xSp{q_}"
    if family == "g2_split":
        if params:
            raise UnsupportedSpaceError("g2_split takes no parameters")
        k, p = _g2_split_basis()
        return k, p, 8, 2, True, "G2^2/SO4"
    raise UnsupportedSpaceError(f"unknown family {family!r}")


def _standard_flat_vectors(family, params, model_dim_p, p_mats):
    """Integer p-coordinate vectors spanning the standard maximal flat."""

    def unit(idx):
        v = [0] * model_dim_p
        v[idx] = 1
        return v

    if family in ("sl_R", "sl_C"):
        (n,) = params
        # the H_i block sits at the end of the p basis
        return [unit(model_dim_p - (n - 1) + i) for i in range(n - 1)]
    if family == "so":
        p_, q_ = params
        # cross generators pair row i with column p+i: index i*q + i in the p list
        return [unit(i * q_ + i) for i in range(p_)]
    if family == "su":
        p_, q_ = params
        # real part of the (a, p+a) crossing: index 2*(a*q + a)
        return [unit(2 * (a * q_ + a)) for a in range(p_)]
    if family == "sp_R":
        (n,) = params
        # p basis lists sym A blocks first: diagonal 2E_ii entries close that block
        n_offdiag = n * (n - 1) // 2
        return [unit(n_offdiag + i) for i in range(n)]
    if family == "sp":
        p_, q_ = params
        # real-unit crossing of (a, p+a): index 4*(a*q + a)
        return [unit(4 * (a * q_ + a)) for a in range(p_)]
    if family == "g2_split":
        return None  # resolved against the block sl_3 after construction
    raise UnsupportedSpaceError(family)


def _validate_flat(model_like, vectors, c_ppk):
    """Exact check: abelian and self-centralizing inside p."""
    arr = np.array(vectors, dtype=np.int64)
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            br = np.einsum("i,j,ijk->k", arr[i], arr[j], c_ppk)
            if np.any(br != 0):
                return False
    rows = []
    for v in arr:
        m = np.tensordot(v, c_ppk, axes=(0, 0)).T  # (dim_k, dim_p)
        rows.extend([list(map(int, r)) for r in m])
    kern = linalg.kernel(rows, ncols=arr.shape[1])
    return len(kern) == len(vectors)


# ---------------------------------------------------------------------------
# public constructors

def parse_spec(spec):
    """Parse a space specifier like "so:3,4" into (family, params)."""
    spec = spec.strip()
    if spec == "g2_split":
        return "g2_split", ()
    if ":" not in spec:
        raise UnsupportedSpaceError(f"malformed specifier {spec!r}")
    fam, _, rest = spec.partition(":")
    if fam not in ("sl_R", "sl_C", "so", "su", "sp_R", "sp"):
        raise UnsupportedSpaceError(f"unknown family {fam!r}")
    try:
        params = tuple(int(tok) for tok in rest.split(","))
    except ValueError as exc:
        raise UnsupportedSpaceError(f"malformed parameters in {spec!r}") from exc
    return fam, params


def format_spec(family, params):
    if family == "g2_split":
        return "g2_split"
    return f"{family}:{','.join(str(x) for x in params)}"


@lru_cache(maxsize=None)
def build_space_spec(spec):
    family, params = parse_spec(spec)
    return _build(family, params)


def build_space(family, params=()):
    """Construct and validate a catalog model; raises UnsupportedSpaceError."""
    params = tuple(params) if not isinstance(params, int) else (params,)
    return build_space_spec(format_spec(family, params))


def _build(family, params):
    k_mats, p_mats, exp_dim_p, exp_rank, irreducible, label = _family_data(family, params)
    spec = format_spec(family, params)
    alg = algebra_from_matrices(k_mats + p_mats, label=spec)
    theta = _theta_adapted(len(k_mats), len(p_mats))
    cart = cartan_decompose(alg, theta)
    if cart.dim_p != exp_dim_p:
        raise ValueError(f"{spec}: dim p = {cart.dim_p}, expected {exp_dim_p}")

    model = SymmetricSpaceModel(family=family, params=params, spec=spec, algebra=alg,
                                cartan=cart, expected_dim_p=exp_dim_p,
                                expected_rank=exp_rank, label=spec,
                                irreducible=irreducible, standard_flat=())
    if family == "g2_split":
        flat_vecs = _g2_standard_flat(model, k_mats, p_mats)
    else:
        flat_vecs = _standard_flat_vectors(family, params, cart.dim_p, p_mats)
    if len(flat_vecs) != exp_rank or not _validate_flat(model, flat_vecs, model.c_ppk):
        raise ValueError(f"{spec}: standard flat failed validation")
    object.__setattr__(model, "standard_flat", tuple(tuple(v) for v in flat_vecs))
    return model


def _g2_standard_flat(model, k_mats, p_mats):
    """Diagonal traceless block derivations, expressed in p-coordinates."""
    flat = []
    rep_rows = [list(map(int, m.reshape(-1))) for m in k_mats + p_mats]
    for i in range(2):
        a = np.zeros((3, 3), dtype=np.int64)
        a[i, i] = 1
        a[i + 1, i + 1] = -1
        d = g2_block_derivation(a)
        coords = linalg.solve([[rep_rows[m][s] for m in range(len(rep_rows))]
                               for s in range(64)], [Fraction(int(x)) for x in d.reshape(-1)])
        if coords is None:
            raise ValueError("block derivation is not in the constructed algebra")
        gvec = coords
        pvec = [gvec[j] for j in model.p_indices]
        for j in model.k_indices:
            if gvec[j] != 0:
                raise ValueError("diagonal block derivation has a k-component")
        flat.append(linalg._row_to_int(pvec))
    return flat


# curated catalog: the spaces exercised by the shipped checks
CATALOG_SPECS = tuple(
    [f"sl_R:{n}" for n in range(2, 7)]
    + ["sl_C:3"]
    + [f"so:{p},{q}" for p in range(1, 5) for q in range(max(p, 2), 9) if p + q <= 9]
    + [f"su:1,{k}" for k in range(1, 5)]
    + ["su:2,3", "sp_R:2", "sp:1,2", "g2_split"]
)


def catalog_list():
    return [build_space_spec(s) for s in CATALOG_SPECS]


def catalog_invariants(model):
    """Headline integers of a model: n = dim p, r = rank, dim k, Killing signature."""
    from . import triple

    r, _ = triple.rank(model)
    return {
        "n": model.dim_p,
        "r": r,
        "dim_k": model.dim_k,
        "killing_signature": killing_form(model.algebra).signature,
    }


def find_proper_ideal(model, extra_seeds=3, seed=0):
    """Ideal-closure probe: a proper ideal if one is found from the scanned seeds.

    Scans ideals generated by each basis vector and a few random vectors; for
    a simple algebra every scan closes up to the full algebra.
    """
    import random as _random

    g = model.algebra
    d = g.dim
    rng = _random.Random(seed)
    seeds = [[int(i == j) for j in range(d)] for i in range(d)]
    seeds += [[rng.randint(-5, 5) for _ in range(d)] for _ in range(extra_seeds)]
    c = g.c_num
    for s in seeds:
        if not any(s):
            continue
        basis = np.array([linalg._row_to_int(s)], dtype=np.int64)
        while True:
            prods = np.einsum("ijk,mj->imk", c, basis).reshape(-1, d)
            stacked = [list(map(int, r)) for r in basis] + [list(map(int, r)) for r in prods]
            span = linalg.span_basis(stacked)
            if len(span) == len(basis):
                break
            basis = np.array([linalg._row_to_int(v) for v in span], dtype=np.int64)
        if len(basis) < d:
            return Subspace([[Fraction(int(x)) for x in row] for row in basis],
                            (g.label, "g", d), _canonical=True)
    return None
