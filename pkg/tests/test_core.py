import random
from fractions import Fraction as F

import numpy as np
import pytest

from symspace import (BilinearForm, LieAlgebra, Subspace, bracket,
                      cartan_decompose, killing_form, orthocomplement,
                      subspace_intersection)
from symspace.core import AmbientMismatchError, IndefiniteFormError
from symspace import build_space, linalg
from symspace import triple

import oracles


def _unit(n, i):
    return [F(int(j == i)) for j in range(n)]


def test_bracket_antisymmetry_and_self(sl3):
    g = sl3.algebra
    rng = random.Random(0)
    for _ in range(20):
        x = [rng.randint(-9, 9) for _ in range(g.dim)]
        y = [rng.randint(-9, 9) for _ in range(g.dim)]
        assert g.bracket(x, x) == [0] * g.dim
        xy = g.bracket(x, y)
        yx = g.bracket(y, x)
        assert xy == [-v for v in yx]


def test_bracket_matches_defining_representation(sl3):
    # [H, E12] = 2 E12 with H = diag(1,-1,0), checked through the rep commutator
    g = sl3.algebra
    h = np.diag([1, -1, 0]).astype(np.int64)
    e12 = np.zeros((3, 3), dtype=np.int64)
    e12[0, 1] = 1
    ch = sl3.rep_coordinates(h)
    ce = sl3.rep_coordinates(e12)
    got = g.bracket(ch, ce)
    want_mat = oracles.commutator(h, e12)
    assert np.array_equal(want_mat, 2 * e12)
    assert got == [2 * x for x in ce]


def test_bracket_random_pairs_against_rep(sl3):
    g = sl3.algebra
    rng = random.Random(1)
    rep = g.rep
    for _ in range(10):
        x = [rng.randint(-5, 5) for _ in range(g.dim)]
        y = [rng.randint(-5, 5) for _ in range(g.dim)]
        got = g.bracket(x, y)
        xm = sum(c * m for c, m in zip(x, rep))
        ym = sum(c * m for c, m in zip(y, rep))
        want = sl3.rep_coordinates(oracles.commutator(xm, ym))
        assert got == want


def test_bracket_dimension_mismatch(sl3):
    with pytest.raises(ValueError):
        sl3.algebra.bracket([1, 2], [0] * sl3.dim)


def test_killing_abelian_is_zero():
    c = np.zeros((2, 2, 2), dtype=np.int64)
    g = LieAlgebra(c, label="ab2")
    b = killing_form(g)
    assert all(x == 0 for row in b.matrix for x in row)


def test_killing_sl2_h_h_is_8():
    m = build_space("sl_R", (2,))
    g = m.algebra
    b = killing_form(g)
    h = np.diag([1, -1]).astype(np.int64)
    ch = m.rep_coordinates(h)
    assert b(ch, ch) == 8
    # independent oracle: trace of ad(H) ad(H) with ad built from rep commutators
    ad_h = oracles.ad_matrix_from_rep(g.rep, m.rep_coordinates, h)
    tr = sum(sum(ad_h[i][k] * ad_h[k][i] for k in range(g.dim)) for i in range(g.dim))
    assert tr == 8


def test_killing_sl3_is_6_trace(sl3):
    g = sl3.algebra
    b = killing_form(g)
    rng = random.Random(2)
    for _ in range(20):
        x = [rng.randint(-4, 4) for _ in range(g.dim)]
        y = [rng.randint(-4, 4) for _ in range(g.dim)]
        xm = sum(c * m for c, m in zip(x, g.rep))
        ym = sum(c * m for c, m in zip(y, g.rep))
        assert b(x, y) == 6 * int(np.trace(xm @ ym))


def test_killing_ad_invariance(sl3):
    g = sl3.algebra
    b = killing_form(g)
    d = g.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                x, y, z = _unit(d, i), _unit(d, j), _unit(d, k)
                assert b(g.bracket(x, y), z) + b(y, g.bracket(x, z)) == 0


def test_cartan_decompose_sl3(sl3):
    assert sl3.dim_k == 3
    assert sl3.dim_p == 5


def test_cartan_decompose_so23(so23):
    assert so23.dim_p == 6


def test_cartan_identity_involution_rejected():
    m = build_space("sl_R", (2,))
    ident = [[F(int(i == j)) for j in range(3)] for i in range(3)]
    with pytest.raises(IndefiniteFormError):
        cartan_decompose(m.algebra, ident)


def test_cartan_non_automorphism_rejected(sl3):
    d = sl3.dim
    # a random +-1 diagonal that is not compatible with the bracket
    bad = [[F(0)] * d for _ in range(d)]
    signs = [1, -1, 1, -1, 1, -1, 1, -1]
    for i in range(d):
        bad[i][i] = F(signs[i])
    from symspace.core import NotAnAutomorphismError
    with pytest.raises(NotAnAutomorphismError):
        cartan_decompose(sl3.algebra, bad)


def test_inner_product_positive_definite(sl3):
    assert sl3.cartan.inner_product.is_positive_definite


def test_subspace_intersection_basics(sl3):
    amb = ("x", "g", 4)
    u = Subspace([[1, 0, 0, 0], [0, 1, 0, 0]], amb)
    v = Subspace([[0, 0, 1, 0], [0, 0, 0, 1]], amb)
    assert subspace_intersection(u, u) == u
    assert subspace_intersection(u, v).dim == 0


def test_subspace_intersection_diagonal_line(sl3):
    # inside p of sl3: diagonal plane meets span{diag(1,1,-2)} in that line
    diag_plane = sl3.p_subspace([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    line = sl3.p_subspace([[0, 0, 0, 1, 2]])
    inter = subspace_intersection(diag_plane, line)
    assert inter.dim == 1
    # row-reduction oracle on the concatenated system
    rows = [list(map(F, b)) for b in diag_plane.basis] + [list(map(F, line.basis[0]))]
    assert oracles.rank(rows) == 2
    assert inter == line


def test_subspace_ambient_mismatch(sl3, so23):
    u = sl3.p_subspace([[1, 0, 0, 0, 0]])
    v = Subspace([[1, 0, 0, 0, 0]], ("other", "p", 5))
    with pytest.raises(AmbientMismatchError):
        subspace_intersection(u, v)


def test_subspace_rejects_dependent_basis():
    with pytest.raises(ValueError):
        Subspace([[1, 2], [2, 4]], ("x", "g", 2))


def test_orthocomplement_trivial_cases(sl3):
    form = BilinearForm.from_rows(sl3.gram_p)
    full = sl3.full_p()
    zero = orthocomplement(full, form)
    assert zero.dim == 0
    assert orthocomplement(zero, form) == full


def test_orthocomplement_veronese_tangent(sl3):
    # tangent plane of the minimal orbit; complement = centralizer of diag(1,1,-2)
    from symspace import orbits
    om = orbits.orbit_spaces(sl3, [0, 0, 0, 1, 2])
    form = BilinearForm.from_rows(sl3.gram_p)
    comp = orthocomplement(om.tangent, form)
    assert comp.dim == 3
    assert comp == triple.centralizer(sl3, [0, 0, 0, 1, 2])
    # Gram-Schmidt oracle agreement
    oracle = oracles.gram_schmidt_complement(om.tangent.basis, sl3.gram_p, 5)
    assert linalg.span_basis(oracle) == list(map(list, comp.basis))


def test_orthocomplement_rejects_degenerate(sl3):
    degenerate = BilinearForm.from_rows([[1, 0], [0, 0]])
    u = Subspace([[1, 0]], ("x", "g", 2))
    with pytest.raises(IndefiniteFormError):
        orthocomplement(u, degenerate)


def test_structure_constant_validation():
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 1, 0] = 1  # not antisymmetric
    with pytest.raises(ValueError):
        LieAlgebra(c, label="bad")
    # [[e2,e0],e1] = e2 is not cancelled by the other cyclic terms
    c = np.zeros((3, 3, 3), dtype=np.int64)
    for (i, j, k, val) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 0, 1)]:
        c[i, j, k] = val
        c[j, i, k] = -val
    with pytest.raises(ValueError):
        LieAlgebra(c, label="nonjacobi")
