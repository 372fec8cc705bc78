import random

import numpy as np
import pytest

from symspace import build_space, build_space_spec, linalg
from symspace import flats, triple
from symspace.core import subspace_intersection

from conftest import VERONESE_SL3


def test_is_regular_cases(sl3):
    assert not flats.is_regular(sl3, [0] * 5)
    assert flats.is_regular(sl3, [0, 0, 0, 1, 1])   # diag(1,0,-1)
    assert not flats.is_regular(sl3, VERONESE_SL3)  # diag(1,1,-2)


def test_random_maximal_flat_sl3(sl3):
    fl = flats.random_maximal_flat(sl3, seed=3)
    assert fl.subspace.dim == 2
    assert triple.centralizer(sl3, fl.regular_witness) == fl.subspace


def test_random_maximal_flat_so14(so14):
    fl = flats.random_maximal_flat(so14, seed=1)
    assert fl.subspace.dim == 1


def test_random_flats_so33_fifty_seeds():
    m = build_space("so", (3, 3))
    for seed in range(50):
        fl = flats.random_maximal_flat(m, seed=seed)
        assert fl.subspace.dim == 3
        rows = triple._int_rows(fl.subspace.basis)
        assert not np.any(triple._pair_brackets(m, rows) != 0)


def test_restricted_roots_a2(sl3):
    rr = flats.restricted_roots(sl3, flats.standard_flat(sl3))
    assert len(rr.roots) == 6
    assert all(m == 1 for _, m in rr.roots)
    assert len(rr.hyperplanes) == 3
    assert rr.weyl_order == 6
    assert rr.positive_multiplicity_sum == sl3.dim_p - 2


def test_restricted_roots_b2(so23):
    rr = flats.restricted_roots(so23, flats.standard_flat(so23))
    assert len(rr.roots) == 8
    assert len(rr.hyperplanes) == 4
    assert rr.weyl_order == 8
    assert rr.positive_multiplicity_sum == so23.dim_p - 2


def test_restricted_roots_rank_one(so14):
    rr = flats.restricted_roots(so14, flats.standard_flat(so14))
    assert len(rr.roots) == 2
    assert all(m == 3 for _, m in rr.roots)
    assert len(rr.hyperplanes) == 1
    assert rr.hyperplanes[0].basis.shape[0] == 0  # the kernel is {0}
    assert rr.weyl_order == 2


def test_restricted_roots_bc1():
    su12 = build_space_spec("su:1,2")
    rr = flats.restricted_roots(su12, flats.standard_flat(su12))
    # lambda with multiplicity 2 and 2*lambda with multiplicity 1, both signs
    assert sorted(m for _, m in rr.roots) == [1, 1, 2, 2]
    assert len(rr.hyperplanes) == 1
    assert rr.positive_multiplicity_sum == su12.dim_p - 1
    assert rr.weyl_order == 2


def test_restricted_roots_g2(g2):
    rr = flats.restricted_roots(g2, flats.standard_flat(g2))
    assert len(rr.roots) == 12
    assert len(rr.hyperplanes) == 6
    assert rr.weyl_order == 12


def test_roots_on_random_flat(sl3):
    # same combinatorics on a randomly generated flat
    rr = flats.restricted_roots(sl3, flats.random_maximal_flat(sl3, seed=17))
    assert len(rr.roots) == 6
    assert len(rr.hyperplanes) == 3
    assert rr.weyl_order == 6


def test_roots_come_in_pairs(so23):
    rr = flats.restricted_roots(so23, flats.standard_flat(so23))
    vals = [np.array(v) for v, _ in rr.roots]
    for v, mult in rr.roots:
        candidates = [w for w, m2 in rr.roots
                      if m2 == mult and np.linalg.norm(np.array(w) + np.array(v)) < 1e-6]
        assert len(candidates) == 1


def test_centralizer_profile_regular(sl3):
    fl = flats.standard_flat(sl3)
    prof = flats.centralizer_profile(sl3, list(fl.regular_witness), flat=fl)
    assert prof.is_lts and prof.z_in_abelian_part and prof.rank_matches
    assert prof.euclidean_dim == 2
    assert prof.j_signature == frozenset()
    assert prof.hyperplane_consistent


def test_centralizer_profile_veronese(sl3):
    prof = flats.centralizer_profile(sl3, VERONESE_SL3)
    assert prof.is_lts
    assert prof.rank_nz == 2
    assert prof.euclidean_dim == 1
    assert len(prof.j_signature) == 1
    assert prof.hyperplane_consistent


def test_profile_rejects_zero(sl3):
    with pytest.raises(ValueError):
        flats.centralizer_profile(sl3, [0] * 5)


def test_j_signature_determines_centralizer(sl3):
    # inside the standard flat, equal signatures imply equal centralizers
    fl = flats.standard_flat(sl3)
    rr = flats.restricted_roots(sl3, fl)
    rng = random.Random(2)
    basis = [linalg._row_to_int(b) for b in fl.subspace.basis]
    samples = []
    for _ in range(40):
        c = [rng.randint(-4, 4) for _ in basis]
        z = [sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(sl3.dim_p)]
        if any(z):
            samples.append(z)
    # add singular directions: diag(1,1,-2) patterns land on hyperplanes
    samples += [VERONESE_SL3, [0, 0, 0, 2, 4], [0, 0, 0, 1, -1], [0, 0, 0, 0, 1]]
    pairs = 0
    for i in range(len(samples)):
        for j in range(i + 1, len(samples)):
            pi = flats.centralizer_profile(sl3, samples[i], flat=fl, roots=rr)
            pj = flats.centralizer_profile(sl3, samples[j], flat=fl, roots=rr)
            if pi.j_signature == pj.j_signature:
                pairs += 1
                assert (triple.centralizer(sl3, samples[i])
                        == triple.centralizer(sl3, samples[j]))
            if pairs >= 100:
                return
    assert pairs >= 30


def test_transversal_flat_veronese(sl3):
    w = triple.centralizer(sl3, VERONESE_SL3)
    fl, trials = flats.transversal_flat(sl3, w, budget=1000, seed=0)
    assert trials <= 10
    inter = subspace_intersection(fl.subspace, w)
    assert inter.dim == 0


def test_transversal_flat_hyperplane():
    so13 = build_space("so", (1, 3))
    w = so13.p_subspace([[1, 0, 0], [0, 1, 0]])
    fl, trials = flats.transversal_flat(so13, w, budget=1000, seed=4)
    assert subspace_intersection(fl.subspace, w).dim == 0


def test_transversal_flat_rejects_full_p(sl3):
    with pytest.raises(ValueError):
        flats.transversal_flat(sl3, sl3.full_p())


def test_root_multiplicities_sum_across_catalog():
    # positive-root multiplicities add up to dim p - rank on every model
    from symspace.catalog import CATALOG_SPECS

    for spec in CATALOG_SPECS:
        m = build_space_spec(spec)
        rr = flats.restricted_roots(m, flats.standard_flat(m))
        r, _ = triple.rank(m)
        assert rr.positive_multiplicity_sum == m.dim_p - r, spec
        assert len(rr.roots) % 2 == 0, spec


def test_random_flat_budget_exhausted(sl3):
    with pytest.raises(flats.BudgetExhaustedError):
        flats.random_maximal_flat(sl3, seed=0, budget=0)


def test_transversal_budget_reports_max_intersection(sl3):
    w = triple.centralizer(sl3, VERONESE_SL3)
    with pytest.raises(flats.BudgetExhaustedError) as exc:
        flats.transversal_flat(sl3, w, budget=0, seed=0)
    assert exc.value.trials == 0
    assert exc.value.max_intersection == 0


@pytest.mark.parametrize("spec,roots,hyps,weyl", [
    ("so:4,5", 32, 16, 384),   # B4
    ("so:3,3", 12, 6, 24),     # A3, matching sl(4,R) below
    ("sl_R:4", 12, 6, 24),     # A3
    ("su:2,3", 12, 4, 8),      # BC2
    ("sp:1,2", 4, 1, 2),       # BC1
    ("sp_R:2", 8, 4, 8),       # C2
    ("sl_R:6", 30, 15, 720),   # A5
])
def test_root_system_tables(spec, roots, hyps, weyl):
    m = build_space_spec(spec)
    rr = flats.restricted_roots(m, flats.standard_flat(m))
    assert (len(rr.roots), len(rr.hyperplanes), rr.weyl_order) == (roots, hyps, weyl)


def test_su23_multiplicities():
    # BC2: long roots multiplicity 1, middle and short multiplicity 2
    m = build_space_spec("su:2,3")
    rr = flats.restricted_roots(m, flats.standard_flat(m))
    assert sorted(mult for _, mult in rr.roots) == [1, 1, 1, 1] + [2] * 8


def test_sp12_multiplicities():
    # BC1 for the quaternionic hyperbolic plane: lambda mult 4, 2*lambda mult 3
    m = build_space_spec("sp:1,2")
    rr = flats.restricted_roots(m, flats.standard_flat(m))
    assert sorted(mult for _, mult in rr.roots) == [3, 3, 4, 4]
