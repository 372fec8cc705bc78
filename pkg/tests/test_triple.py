import random
from fractions import Fraction as F

import numpy as np
import pytest

from symspace import build_space, build_space_spec, linalg
from symspace import flats, orbits, triple

import oracles
from conftest import VERONESE_SL3


def test_one_dimensional_subspaces_are_lts(sl3):
    rng = random.Random(0)
    for _ in range(10):
        v = [rng.randint(-9, 9) for _ in range(sl3.dim_p)]
        if not any(v):
            continue
        w = sl3.p_subspace([v])
        res, ok = triple.lts_residual(sl3, w)
        assert ok and res == 0.0


def test_hyperbolic_hyperplane_is_lts(so14):
    w = so14.p_subspace([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    res, ok = triple.lts_residual(so14, w)
    assert ok and res == 0.0


def test_random_planes_are_not_lts(sl3):
    rng = random.Random(100)
    positives = 0
    for _ in range(100):
        vecs = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(2)]
        if linalg.rank(vecs) < 2:
            continue
        w = sl3.p_subspace(vecs)
        res, ok = triple.lts_residual(sl3, w)
        assert not ok
        assert res > 0
        positives += 1
    assert positives >= 95


def test_lts_residual_requires_p_subspace(sl3, so23):
    with pytest.raises(ValueError):
        triple.lts_residual(sl3, so23.p_subspace([[1, 0, 0, 0, 0, 0]]))


def test_tangent_subalgebra_of_flat_is_flat(sl3):
    _, flat = triple.rank(sl3)
    sub = triple.tangent_subalgebra(sl3, flat)
    assert sub.dim == 2
    # abelian: the k-part [W,W] is zero, so g' = W
    for v in sub.basis:
        assert all(v[i] == 0 for i in range(sl3.dim_k))


def test_tangent_subalgebra_of_plane_is_sl2(sl3):
    w = sl3.p_subspace([[1, 0, 0, 0, 0], [0, 0, 0, 1, 0]])  # span{S01, H0}
    sub = triple.tangent_subalgebra(sl3, w)
    assert sub.dim == 3
    # bracket-closure oracle in the defining representation
    rep = sl3.algebra.rep
    mats = [sum(c * m for c, m in zip(v, rep)) for v in sub.basis]
    flat = [list(m.reshape(-1)) for m in mats]
    for a in mats:
        for b in mats:
            assert oracles.in_span(flat, list(oracles.commutator(a, b).reshape(-1)))


@pytest.mark.parametrize("spec", ["sl_R:3", "so:2,3", "su:1,2", "g2_split"])
def test_full_p_generates_whole_algebra(spec):
    m = build_space_spec(spec)
    sub = triple.tangent_subalgebra(m, m.full_p(), validate=False)
    assert sub.dim == m.dim


def test_abelian_part_cases(sl3):
    _, flat = triple.rank(sl3)
    assert triple.abelian_part(sl3, flat) == flat
    cz = triple.centralizer(sl3, VERONESE_SL3)
    ab = triple.abelian_part(sl3, cz)
    assert ab.dim == 1
    assert ab == sl3.p_subspace([VERONESE_SL3])
    plane = sl3.p_subspace([[1, 0, 0, 0, 0], [0, 0, 0, 1, 0]])
    assert triple.abelian_part(sl3, plane).dim == 0


def test_centralizer_cases(sl3):
    assert triple.centralizer(sl3, [0] * 5) == sl3.full_p()
    # diag(1,0,-1) = H0 + H1: centralizer is the diagonal plane
    cz = triple.centralizer(sl3, [0, 0, 0, 1, 1])
    assert cz == sl3.p_subspace([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    assert triple.centralizer(sl3, VERONESE_SL3).dim == 3


def test_centralizer_contains_v_and_is_lts(sl3):
    rng = random.Random(5)
    for _ in range(25):
        v = [rng.randint(-9, 9) for _ in range(5)]
        if not any(v):
            continue
        cz = triple.centralizer(sl3, v)
        assert cz.contains(v)
        _, ok = triple.lts_residual(sl3, cz)
        assert ok
        assert triple.abelian_part(sl3, cz).contains(v)


def test_rank_values():
    assert triple.rank(build_space("sl_R", (3,)))[0] == 2
    for k in (3, 4, 5):
        assert triple.rank(build_space("so", (3, k)))[0] == 3
    assert triple.rank(build_space("g2_split"))[0] == 2


def test_rank_witness_is_maximal_abelian(so23):
    r, flat = triple.rank(so23)
    assert flat.dim == r == 2
    rows = triple._int_rows(flat.basis)
    pairs = triple._pair_brackets(so23, rows)
    assert not np.any(pairs != 0)


def test_rank_equals_codim_of_principal_orbit(sl3, so23):
    for m in (sl3, so23):
        r, _ = triple.rank(m)
        fl = flats.standard_flat(m)
        om = orbits.orbit_spaces(m, list(fl.regular_witness))
        assert m.dim_p - r == om.dim


def test_lts_equivariance_under_isotropy_flow(sl3):
    # exp(t ad X) for X in k maps Lie triple systems to Lie triple systems
    cz = triple.centralizer(sl3, VERONESE_SL3)
    rng = random.Random(9)
    den = float(sl3.algebra.c_den)
    ad_p = [np.array([[float(sl3.c_kpp[a, i, j]) / den for i in range(5)]
                      for j in range(5)]) for a in range(sl3.dim_k)]
    from symspace.core import Subspace

    wf = np.array([[float(x) for x in row] for row in cz.basis])
    for _ in range(20):
        coeffs = [rng.uniform(-1, 1) for _ in range(sl3.dim_k)]
        flow = oracles.expm(sum(c * a for c, a in zip(coeffs, ad_p)))
        moved = Subspace((flow @ wf.T).T, sl3.p_ambient(), mode="float")
        res, _ = triple.lts_residual(sl3, moved)
        assert res <= 1e-8


def test_complementary_pair_veronese(sl3):
    om = orbits.orbit_spaces(sl3, VERONESE_SL3)
    rep = triple.complementary_pair_analysis(sl3, om.tangent)
    assert rep.perp_is_lts and not rep.perp_semisimple
    assert rep.perp_abelian_dim == 1
    assert rep.tangent_matches and rep.normal_matches
    gen = list(rep.abelian_generator)
    v = [F(x) for x in VERONESE_SL3]
    scale = next(g / x for g, x in zip(gen, v) if x != 0)
    assert gen == [scale * x for x in v]


def test_complementary_pair_flat_perp_not_lts(sl3):
    _, flat = triple.rank(sl3)
    rep = triple.complementary_pair_analysis(sl3, flat)
    assert not rep.perp_is_lts


def test_complementary_pair_degenerate_inputs(sl3):
    with pytest.raises(ValueError):
        triple.complementary_pair_analysis(sl3, sl3.full_p())
    with pytest.raises(ValueError):
        triple.complementary_pair_analysis(sl3, sl3.p_subspace([], canonical=True))


def test_lts_rank_inside_centralizer(sl3):
    cz = triple.centralizer(sl3, VERONESE_SL3)
    r, witness = triple.lts_rank(sl3, cz)
    assert r == 2
    assert witness.dim == 2
    assert cz.contains_subspace(witness)


def test_abelian_part_is_abelian_lts(sl3, so23):
    rng = random.Random(12)
    for m in (sl3, so23):
        for _ in range(20):
            v = [rng.randint(-9, 9) for _ in range(m.dim_p)]
            if not any(v):
                continue
            ab = triple.abelian_part(m, triple.centralizer(m, v))
            rows = triple._int_rows(ab.basis)
            assert not np.any(triple._pair_brackets(m, rows) != 0)
            _, ok = triple.lts_residual(m, ab)
            assert ok


def test_complementary_pair_reducible_space():
    # in so(2,2) the orthocomplement of a maximal flat is another flat: both
    # are Lie triple systems and the complement's abelian part is 2-dim,
    # which only irreducible rank >= 2 spaces rule out
    m = build_space("so", (2, 2))
    _, flat = triple.rank(m)
    rep = triple.complementary_pair_analysis(m, flat)
    assert rep.perp_is_lts
    assert rep.perp_abelian_dim == 2
    assert rep.perp_semisimple is False


def test_lts_report_fields(sl3):
    cz = triple.centralizer(sl3, VERONESE_SL3)
    rep = triple.lts_report(sl3, cz)
    assert rep.is_lts and rep.residual == 0.0
    assert rep.abelian_dim == 1 and rep.semisimple is False
    assert rep.tangent_algebra_dim == 4  # R + sl(2,R)
    rng = random.Random(2)
    vecs = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(2)]
    bad = triple.lts_report(sl3, sl3.p_subspace(vecs))
    assert not bad.is_lts and bad.residual > 0
    assert bad.abelian_dim is None and bad.semisimple is None
