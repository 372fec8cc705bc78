import numpy as np
import pytest

from symspace import build_space, build_space_spec
from symspace import triple
from symspace.search import (IndexProbeResult, SearchConfig, gradient_fd_error,
                             index_probe, lts_search, rotation_invariance_drift)


def test_config_validation(sl3):
    with pytest.raises(ValueError):
        SearchConfig(codim=5).validated(sl3)   # codim = dim p
    with pytest.raises(ValueError):
        SearchConfig(codim=0).validated(sl3)
    with pytest.raises(ValueError):
        SearchConfig(codim=1, tol_accept=1.0, tol_reject=0.1).validated(sl3)


def test_objective_rotation_invariance(sl3):
    assert rotation_invariance_drift(sl3, codim=2, seed=0) <= 1e-12


def test_gradient_matches_finite_differences(sl3, so23):
    assert gradient_fd_error(sl3, codim=2, seed=1, points=20) <= 1e-5
    assert gradient_fd_error(so23, codim=2, seed=2, points=20) <= 1e-5


def test_codim2_search_accepts_and_refines(sl3):
    res = lts_search(sl3, SearchConfig(codim=2, restarts=50, seed=11))
    assert res.accepted
    assert res.best_residual <= 1e-8
    assert res.refined_exact is not None
    _, ok = triple.lts_residual(sl3, res.refined_exact)
    assert ok
    assert triple.abelian_part(sl3, res.refined_exact).dim == 1


def test_codim1_search_rejects(sl3):
    res = lts_search(sl3, SearchConfig(codim=1, restarts=50, seed=3))
    assert not res.accepted
    assert res.best_residual > 1e-2
    assert len(res.residual_histogram) == 50


def test_search_deterministic(sl3):
    a = lts_search(sl3, SearchConfig(codim=2, restarts=5, seed=21))
    b = lts_search(sl3, SearchConfig(codim=2, restarts=5, seed=21))
    assert a.best_residual == b.best_residual
    assert a.residual_histogram == b.residual_histogram


def test_constant_curvature_every_hyperplane_accepted(so14):
    res = lts_search(so14, SearchConfig(codim=1, restarts=3, seed=0))
    assert res.accepted
    assert res.refined_exact is not None
    assert res.refined_exact.dim == 3


def test_index_probe_so14(so14):
    probe = index_probe(so14, 2)
    assert probe.value == 1
    assert probe.rank_floor == 1
    assert probe.anomalies == ()


def test_index_probe_su12():
    su12 = build_space_spec("su:1,2")
    probe = index_probe(su12, 3)
    assert probe.value == 2
    assert probe.rank_floor == 1


def test_index_probe_never_below_rank(sl3):
    probe = index_probe(sl3, 3, SearchConfig(codim=1, restarts=20, seed=5))
    assert probe.value == 2
    assert probe.rank_floor == 2
    assert probe.value >= probe.rank_floor


def test_index_probe_cmax_validation(sl3):
    with pytest.raises(ValueError):
        index_probe(sl3, 0)
    with pytest.raises(ValueError):
        index_probe(sl3, sl3.dim_p)


@pytest.mark.slow
def test_index_probe_sp12_quaternionic():
    sp12 = build_space("sp", (1, 2))
    probe = index_probe(sp12, 4, SearchConfig(codim=1, restarts=40, max_iters=3000, seed=2))
    assert probe.value == 4
