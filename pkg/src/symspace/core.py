"""Lie algebras over Q as structure constants, Cartan decompositions, subspaces.

Everything on the verification side is exact: structure constants are stored
as an integer numpy tensor over a common denominator, vectors are Fraction
lists, subspaces are kept in canonical reduced-echelon form so equality of
subspaces is equality of bases.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg


class NotAnAutomorphismError(ValueError):
    """The candidate involution does not preserve the bracket."""


class IndefiniteFormError(ValueError):
    """-B(X, theta Y) is not positive definite; theta is not Cartan here."""


class AmbientMismatchError(ValueError):
    """Subspace operation across different ambient spaces."""


def _obj_matmul(a, b):
    return np.dot(a, b)


class LieAlgebra:
    """Finite-dimensional real Lie algebra given by structure constants.

    c[i][j][k] means [e_i, e_j] = sum_k c[i][j][k] e_k.  Constants are stored
    as `c_num / c_den` with an integer numpy tensor `c_num`; antisymmetry and
    the Jacobi identity are validated exactly at construction.
    """

    def __init__(self, c_num, c_den=1, label="g", rep=None, validate=True):
        c_num = np.asarray(c_num)
        if c_num.dtype == float:
            raise TypeError("exact structure constants required; got floats")
        self.dim = c_num.shape[0]
        if c_num.shape != (self.dim, self.dim, self.dim):
            raise ValueError("structure constants must be a cubic tensor")
        self.c_num = c_num
        self.c_den = int(c_den)
        self.label = label
        self.rep = rep  # optional defining-representation matrices, for oracles
        if validate:
            if not self.antisymmetry_holds():
                raise ValueError(f"{label}: structure constants are not antisymmetric")
            if not self.jacobi_holds():
                raise ValueError(f"{label}: Jacobi identity fails")

    def antisymmetry_holds(self):
        return bool(np.array_equal(self.c_num, -self.c_num.transpose(1, 0, 2)))

    def jacobi_residual_int(self):
        """Max |residual| numerator of [[x,y],z]+[[y,z],x]+[[z,x],y] on basis triples."""
        d = self.dim
        c = self.c_num
        if c.dtype == np.int64:
            bound = int(np.abs(c).max(initial=0)) ** 2 * d
            if bound > 2**61:
                c = c.astype(object)
        t = np.dot(c.reshape(d * d, d), c.reshape(d, d * d)).reshape(d, d, d, d)
        res = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return int(np.abs(res).max(initial=0))

    def jacobi_holds(self):
        return self.jacobi_residual_int() == 0

    @cached_property
    def _sparse(self):
        """Per-(i,j) sparse view: list of (k, numerator) pairs."""
        d = self.dim
        table = {}
        nz = np.argwhere(self.c_num != 0)
        for i, j, k in nz:
            table.setdefault((int(i), int(j)), []).append((int(k), int(self.c_num[i, j, k])))
        return table

    def bracket(self, x, y):
        """[x, y] for coefficient vectors; exact, bilinear."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError(f"expected coefficient vectors of length {self.dim}")
        out = [Fraction(0)] * self.dim
        table = self._sparse
        xs = [(i, xi) for i, xi in enumerate(x) if xi != 0]
        ys = [(j, yj) for j, yj in enumerate(y) if yj != 0]
        for i, xi in xs:
            for j, yj in ys:
                ent = table.get((i, j))
                if ent is None:
                    continue
                f = xi * yj
                for k, num in ent:
                    out[k] += f * num
        if self.c_den != 1:
            out = [v / self.c_den for v in out]
        return [Fraction(v) for v in out]

    def ad(self, x):
        """Matrix of ad(x): column j is [x, e_j]."""
        x = linalg.to_fraction_vector(x)
        d = self.dim
        out = [[Fraction(0)] * d for _ in range(d)]
        for (i, j), ent in self._sparse.items():
            xi = x[i]
            if xi == 0:
                continue
            for k, num in ent:
                out[k][j] += xi * num
        if self.c_den != 1:
            out = [[v / self.c_den for v in row] for row in out]
        return out

    def ad_int(self, x_int):
        """ad(x) as (int matrix, denominator) for an integer vector; fast path."""
        xa = np.asarray(x_int)
        mx = int(np.abs(xa).max(initial=0)) * int(np.abs(self.c_num).max(initial=0)) * self.dim
        c = self.c_num if mx < 2**62 and self.c_num.dtype == np.int64 else self.c_num.astype(object)
        xa = xa.astype(c.dtype)
        mat = np.tensordot(xa, c, axes=(0, 0)).T  # [k][j] = sum_i x_i c[i,j,k]
        return mat, self.c_den

    @cached_property
    def c_float(self):
        return self.c_num.astype(float) / self.c_den


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form with its exact signature."""

    matrix: tuple  # tuple of tuples of Fraction
    signature: tuple  # (n_plus, n_minus, n_zero)

    @classmethod
    def from_rows(cls, rows):
        rows = [linalg.to_fraction_vector(r) for r in rows]
        for i in range(len(rows)):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("form matrix is not symmetric")
        sig = linalg.signature(rows)
        return cls(tuple(tuple(r) for r in rows), sig)

    def __call__(self, x, y):
        n = len(self.matrix)
        return sum(x[i] * self.matrix[i][j] * y[j]
                   for i in range(n) if x[i] != 0 for j in range(n) if y[j] != 0)

    @property
    def is_positive_definite(self):
        return self.signature[1] == 0 and self.signature[2] == 0

    @property
    def is_degenerate(self):
        return self.signature[2] > 0


class Subspace:
    """Subspace of the algebra (or of its p-part) in canonical echelon form.

    `vectors` are the basis as coefficient rows; the stored basis is the
    reduced row echelon basis of the span, so two equal subspaces compare
    equal componentwise.  Exact mode only accepts full-rank input.
    """

    __slots__ = ("ambient", "basis", "mode")

    def __init__(self, vectors, ambient, mode="exact", _canonical=False):
        self.ambient = ambient  # (label, 'g' | 'p', ambient_dim)
        self.mode = mode
        if mode == "float":
            arr = np.asarray(vectors, dtype=float)
            self.basis = arr.reshape(-1, ambient[2]) if arr.size else arr.reshape(0, ambient[2])
            return
        vecs = [linalg.to_fraction_vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient[2]:
                raise ValueError("basis vector length does not match ambient dimension")
        if _canonical:
            self.basis = [list(v) for v in vecs]
            return
        canon = linalg.span_basis(vecs)
        if len(canon) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")
        self.basis = canon

    @classmethod
    def spanned(cls, vectors, ambient):
        """Span of possibly-dependent vectors (exact)."""
        return cls(linalg.span_basis([linalg.to_fraction_vector(v) for v in vectors]),
                   ambient, _canonical=True)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def ambient_dim(self):
        return self.ambient[2]

    def contains(self, vector):
        return linalg.in_span(self.basis, linalg.to_fraction_vector(vector))

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(v) for v in self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient[0]}:{self.ambient[1]})"


@dataclass(frozen=True)
class CartanDecomposition:
    """Validated splitting g = k + p with positive definite -B(X, theta Y)."""

    theta: tuple
    k_space: Subspace
    p_space: Subspace
    inner_product: BilinearForm
    k_indices: tuple = None  # set when the basis is adapted to the splitting
    p_indices: tuple = None

    @property
    def dim_k(self):
        return self.k_space.dim

    @property
    def dim_p(self):
        return self.p_space.dim


# ---------------------------------------------------------------------------
# operations

def bracket(g, x, y):
    """[x, y] in the algebra; antisymmetric and bilinear."""
    return g.bracket(x, y)


def killing_form(g):
    """B(X, Y) = trace(ad X . ad Y) on the basis, with exact signature."""
    d = g.dim
    c = g.c_num
    if c.dtype == np.int64 and int(np.abs(c).max(initial=0)) ** 2 * d * d > 2**61:
        c = c.astype(object)
    # B_ij = sum_{m,l} c[i,m,l] c[j,l,m]
    mat = np.dot(c.reshape(d, d * d), c.transpose(0, 2, 1).reshape(d, d * d).T)
    den = Fraction(g.c_den) ** 2
    rows = [[Fraction(int(mat[i, j])) / den for j in range(d)] for i in range(d)]
    return BilinearForm.from_rows(rows)


def _theta_diag_signs(theta_rows):
    """Signs if theta is a +-1 diagonal matrix, else None."""
    n = len(theta_rows)
    signs = []
    for i, row in enumerate(theta_rows):
        for j, x in enumerate(row):
            if i == j:
                if x not in (1, -1):
                    return None
                signs.append(int(x))
            elif x != 0:
                return None
    return signs


def _check_automorphism(g, theta_rows):
    signs = _theta_diag_signs(theta_rows)
    if signs is not None:
        s = np.array(signs)
        bad = (s[:, None, None] * s[None, :, None] * s[None, None, :]) != 1
        return not np.any(g.c_num[bad] != 0)
    # general path: compare theta[e_i, e_j] with [theta e_i, theta e_j]
    th = [linalg.to_fraction_vector(r) for r in theta_rows]
    cols = [[th[i][j] for i in range(g.dim)] for j in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs_vec = g.bracket([Fraction(int(a == i)) for a in range(g.dim)],
                                [Fraction(int(a == j)) for a in range(g.dim)])
            lhs = [sum(th[r][m] * lhs_vec[m] for m in range(g.dim) if lhs_vec[m] != 0)
                   for r in range(g.dim)]
            rhs = g.bracket(cols[i], cols[j])
            if lhs != rhs:
                return False
    return True


def cartan_decompose(g, theta_rows):
    """Split g into the +-1 eigenspaces of an involution and validate.

    Raises NotAnAutomorphismError / IndefiniteFormError when theta is not a
    Cartan involution for this algebra.
    """
    d = g.dim
    th = [linalg.to_fraction_vector(r) for r in theta_rows]
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    sq = [[sum(th[i][m] * th[m][j] for m in range(d)) for j in range(d)] for i in range(d)]
    if sq != ident:
        raise NotAnAutomorphismError("theta is not an involution")
    if not _check_automorphism(g, th):
        raise NotAnAutomorphismError("theta does not preserve the bracket")

    minus = [[th[i][j] - ident[i][j] for j in range(d)] for i in range(d)]
    plus = [[th[i][j] + ident[i][j] for j in range(d)] for i in range(d)]
    k_vecs = linalg.kernel(minus, ncols=d)
    p_vecs = linalg.kernel(plus, ncols=d)
    label = g.label
    k_space = Subspace(k_vecs, (label, "g", d), _canonical=True)
    p_space = Subspace(p_vecs, (label, "g", d), _canonical=True)
    if k_space.dim + p_space.dim != d:
        raise NotAnAutomorphismError("eigenspaces do not span")

    B = killing_form(g)
    # G_ij = -B(e_i, theta e_j)
    g_rows = [[-sum(B.matrix[i][m] * th[m][j] for m in range(d) if th[m][j] != 0)
               for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(i):
            if g_rows[i][j] != g_rows[j][i]:
                raise NotAnAutomorphismError("-B(X, theta Y) is not symmetric")
    inner = BilinearForm.from_rows(g_rows)
    if not inner.is_positive_definite:
        raise IndefiniteFormError("-B(X, theta Y) is not positive definite")

    signs = _theta_diag_signs(th)
    k_idx = p_idx = None
    if signs is not None:
        k_idx = tuple(i for i, s in enumerate(signs) if s == 1)
        p_idx = tuple(i for i, s in enumerate(signs) if s == -1)
        _check_bracket_inclusions_adapted(g, k_idx, p_idx)
    else:
        _check_bracket_inclusions_general(g, k_space, p_space)
    return CartanDecomposition(tuple(tuple(r) for r in th), k_space, p_space, inner,
                               k_indices=k_idx, p_indices=p_idx)


def _check_bracket_inclusions_adapted(g, k_idx, p_idx):
    c = g.c_num
    kk = c[np.ix_(k_idx, k_idx, p_idx)]
    kp = c[np.ix_(k_idx, p_idx, k_idx)]
    pp = c[np.ix_(p_idx, p_idx, p_idx)]
    if np.any(kk != 0) or np.any(kp != 0) or np.any(pp != 0):
        raise NotAnAutomorphismError("bracket inclusions [k,k]<k, [k,p]<p, [p,p]<k fail")


def _check_bracket_inclusions_general(g, k_space, p_space):
    def closed(u_basis, v_basis, target):
        for u in u_basis:
            for v in v_basis:
                if not linalg.in_span(target, g.bracket(u, v)):
                    return False
        return True

    ok = (closed(k_space.basis, k_space.basis, k_space.basis)
          and closed(k_space.basis, p_space.basis, p_space.basis)
          and closed(p_space.basis, p_space.basis, k_space.basis))
    if not ok:
        raise NotAnAutomorphismError("bracket inclusions [k,k]<k, [k,p]<p, [p,p]<k fail")


def subspace_intersection(u, v):
    """Exact intersection; dim(U^V) + dim(U+V) = dim U + dim V."""
    if u.ambient != v.ambient:
        raise AmbientMismatchError(f"ambients differ: {u.ambient} vs {v.ambient}")
    if u.mode != "exact" or v.mode != "exact":
        raise ValueError("exact subspaces required")
    vecs = linalg.intersect(u.basis, v.basis, u.ambient_dim)
    return Subspace(vecs, u.ambient, _canonical=True)


def orthocomplement(u, form):
    """Orthogonal complement w.r.t. a positive definite form on the ambient."""
    if form.is_degenerate:
        raise IndefiniteFormError("orthocomplement needs a nondegenerate form")
    rows = [list(r) for r in form.matrix]
    if len(rows) != u.ambient_dim:
        raise ValueError("form dimension does not match ambient")
    vecs = linalg.orthocomplement_basis(u.basis, rows)
    return Subspace(vecs, u.ambient, _canonical=True)
