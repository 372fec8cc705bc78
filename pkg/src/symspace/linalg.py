"""Exact rational and float linear algebra primitives.

Exact routines take matrices as lists of rows (entries int or Fraction) and
return Fractions.  Elimination is fraction-free (Bareiss) on integer-scaled
rows, so the hot paths run on Python ints; division by pivots happens only
once, at the end.  Float routines use numpy with an explicit tolerance.
"""

from fractions import Fraction
from math import gcd

import numpy as np

# Default comparison tolerance for float-mode rank / membership decisions.
EPS = 1e-9


# ---------------------------------------------------------------------------
# row scaling helpers

def _row_to_int(row):
    """Scale a row of Fractions/ints to coprime ints; preserves the span."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) if isinstance(x, Fraction) else int(x) * den for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _as_int_rows(rows):
    return [_row_to_int(list(r)) for r in rows]


# ---------------------------------------------------------------------------
# fraction-free elimination

def row_echelon_int(rows):
    """Bareiss forward elimination.

    Returns (echelon_rows, pivot_cols); rows are integer, echelon (not
    reduced), zero rows dropped.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            fi = m[i][c]
            mi = m[i]
            mr = m[r]
            # Bareiss one-step: every row is rescaled, even when fi == 0,
            # or later exact divisions break
            if fi == 0:
                if pv != prev:
                    m[i] = [(pv * x) // prev for x in mi]
            else:
                m[i] = [(pv * mi[j] - fi * mr[j]) // prev for j in range(ncols)]
        pivots.append(c)
        prev = pv
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def rref(rows):
    """Reduced row echelon form over Q.

    Returns (rref_rows, pivot_cols) with Fraction entries and unit pivots.
    """
    ech, pivots = row_echelon_int(_as_int_rows(rows))
    if not ech:
        return [], []
    ncols = len(ech[0])
    out = [[Fraction(x) for x in row] for row in ech]
    for r in range(len(out) - 1, -1, -1):
        c = pivots[r]
        pv = out[r][c]
        out[r] = [x / pv for x in out[r]]
        for i in range(r):
            f = out[i][c]
            if f != 0:
                out[i] = [a - f * b for a, b in zip(out[i], out[r])]
    return out, pivots


def rank(rows):
    return len(row_echelon_int(_as_int_rows(rows))[0])


def kernel(rows, ncols=None):
    """Basis of {x : A x = 0}, returned in canonical echelon form."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return span_basis(basis)


def solve(rows, rhs):
    """One exact solution of A x = b, or None if inconsistent.

    `rows` is A (m x n), `rhs` a length-m vector.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    n = len(rows[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = red[r][n]
    return x


def invert(rows):
    """Exact inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# subspace utilities (vectors are coefficient lists; a basis is a list of them)

def span_basis(vectors):
    """Canonical basis of the span: RREF rows, so equal spans give equal bases."""
    vecs = [v for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return []
    red, _ = rref(vecs)
    return red

def in_span(basis, vector):
    """Exact membership test of a vector in span(basis)."""
    if not basis:
        return all(x == 0 for x in vector)
    return rank(list(basis) + [list(vector)]) == len(span_basis(basis))


def intersect(basis_u, basis_v, ncols):
    """Canonical basis of span(U) ∩ span(V).

    Kernel of [U; V]^T: coefficients (a, b) with sum a_i u_i = sum b_j v_j.
    """
    if not basis_u or not basis_v:
        return []
    stacked = [list(u) for u in basis_u] + [[-x for x in v] for v in basis_v]
    cols = [[stacked[i][j] for i in range(len(stacked))] for j in range(ncols)]
    combos = kernel(cols, ncols=len(stacked))
    out = []
    for c in combos:
        vec = [Fraction(0)] * ncols
        for i, u in enumerate(basis_u):
            if c[i] != 0:
                vec = [a + c[i] * b for a, b in zip(vec, u)]
        out.append(vec)
    return span_basis(out)


def orthocomplement_basis(basis_u, gram):
    """Basis of {x : <u, x> = 0 for all u in U} w.r.t. the Gram matrix."""
    n = len(gram)
    if not basis_u:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows = []
    for u in basis_u:
        rows.append([sum(u[i] * gram[i][j] for i in range(n) if u[i] != 0) for j in range(n)])
    return kernel(rows, ncols=n)


def gram_matrix(basis, gram):
    m = len(basis)
    n = len(gram)
    out = [[Fraction(0)] * m for _ in range(m)]
    for a in range(m):
        ga = [sum(basis[a][i] * gram[i][j] for i in range(n) if basis[a][i] != 0) for j in range(n)]
        for b in range(m):
            out[a][b] = sum(ga[j] * basis[b][j] for j in range(n) if basis[b][j] != 0)
    return out


# ---------------------------------------------------------------------------
# symmetric forms

def signature(sym_rows):
    """Exact signature (n_plus, n_minus, n_zero) by congruence diagonalization."""
    n = len(sym_rows)
    a = [[Fraction(x) for x in row] for row in sym_rows]
    npos = nneg = 0
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    continue
                # a_ii = a_jj = 0, a_ij != 0: row/col addition makes a_ii nonzero
                a[i] = [x + y for x, y in zip(a[i], a[j])]
                for row in a:
                    row[i] = row[i] + row[j]
        pv = a[i][i]
        if pv > 0:
            npos += 1
        else:
            nneg += 1
        for j in range(i + 1, n):
            f = a[j][i] / pv
            if f != 0:
                a[j] = [x - f * y for x, y in zip(a[j], a[i])]
                for row in a:
                    row[j] = row[j] - f * row[i]
    return npos, nneg, n - npos - nneg


def is_positive_definite(sym_rows):
    npos, nneg, nzero = signature(sym_rows)
    return nneg == 0 and nzero == 0


# ---------------------------------------------------------------------------
# characteristic polynomials (for eigenspace-dimension cross-checks)

def charpoly(rows):
    """Monic characteristic polynomial, highest degree first (Faddeev-LeVerrier)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def poly_divmod(p, q):
    p = [Fraction(x) for x in p]
    dq = len(q) - 1
    out = []
    while len(p) - 1 >= dq:
        if p[0] == 0:
            p.pop(0)
            out.append(Fraction(0))
            continue
        f = p[0] / q[0]
        out.append(f)
        for i in range(len(q)):
            p[i] -= f * q[i]
        p.pop(0)
    rem = p
    while rem and rem[0] == 0:
        rem.pop(0)
    return out, rem


def poly_gcd(p, q):
    p = [Fraction(x) for x in p if True]
    q = [Fraction(x) for x in q if True]
    while q and any(x != 0 for x in q):
        _, r = poly_divmod(p, q)
        p, q = q, r
    if not p:
        return [Fraction(1)]
    return [x / p[0] for x in p]


def poly_derivative(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def squarefree_multiplicities(p):
    """Degrees of the squarefree parts: [(multiplicity, degree)] with degree > 0.

    If p = prod a_i^i with a_i squarefree and coprime, returns the
    (i, deg a_i) pairs; the root multiplicity pattern of p.
    """
    out = []
    mult = 1
    g = poly_gcd(p, poly_derivative(p))
    c, _ = poly_divmod(p, g)
    while len(c) > 1:
        d = poly_gcd(c, g)
        adeg = (len(c) - 1) - (len(d) - 1)
        if adeg > 0:
            out.append((mult, adeg))
        g_next, _ = poly_divmod(g, d)
        c, g = d, g_next
        mult += 1
    return out


# ---------------------------------------------------------------------------
# rationalization and int/float conversion

def rationalize(x, max_den=10**4):
    return Fraction(x).limit_denominator(max_den)


def to_fraction_vector(seq):
    return [x if isinstance(x, Fraction) else Fraction(x) for x in seq]


def scaled_int_matrix(rows):
    """(numpy int array or object array, denominator) with rows == array / den."""
    den = 1
    for row in rows:
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
    ints = [[int(x * den) for x in row] for row in rows]
    mx = max((abs(v) for row in ints for v in row), default=0)
    dtype = object if mx > 2**62 else np.int64
    return np.array(ints, dtype=dtype), den


def float_matrix(rows):
    return np.array([[float(x) for x in row] for row in rows], dtype=float)


def float_rank(arr, eps=EPS):
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    return int(np.sum(s > eps * max(1.0, s[0])))


def float_kernel(arr, eps=EPS):
    """Orthonormal kernel basis (columns) of a float matrix."""
    if arr.size == 0:
        return np.eye(arr.shape[1] if arr.ndim == 2 else 0)
    _, s, vh = np.linalg.svd(arr)
    r = int(np.sum(s > eps * max(1.0, s[0] if len(s) else 1.0)))
    return vh[r:].T
