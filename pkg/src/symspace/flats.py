"""Maximal flats, restricted roots, and the randomized transversal search.

Regularity, centralizers and intersections are decided exactly; restricted
root data (eigenvalues of the commuting family ad(a)) is computed in float
with joint-eigenvector residual checks, since root values on a randomly
generated flat are algebraic, not rational.
"""

import random as _random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg, triple
from .core import Subspace, subspace_intersection

ROOT_TOL = 1e-7
WEYL_CAP = 10**4


class BudgetExhaustedError(RuntimeError):
    """Sampling budget ran out; carries diagnostic counters."""

    def __init__(self, message, trials, max_intersection=None):
        super().__init__(message)
        self.trials = trials
        self.max_intersection = max_intersection


@dataclass(frozen=True)
class Flat:
    """A maximal abelian subspace of p with a regular vector generating it."""

    subspace: Subspace
    regular_witness: tuple


@dataclass(frozen=True)
class RestrictedRootSystem:
    flat: Flat
    roots: tuple          # ((value on flat basis, ...), multiplicity) for all nonzero roots
    hyperplanes: tuple    # float Subspaces in flat coordinates
    weyl_order: int

    @property
    def positive_multiplicity_sum(self):
        return sum(m for _, m in self.roots) // 2


def is_regular(model, v):
    """True when the centralizer of v is a maximal abelian subspace."""
    r, _ = triple.rank(model)
    return triple.centralizer(model, v).dim == r


def _flat_from_witness(model, v):
    return Flat(triple.centralizer(model, v), tuple(linalg.to_fraction_vector(v)))


def random_maximal_flat(model, seed=0, budget=1000):
    """Sample integer vectors until one is regular; return its centralizer.

    Irregular vectors fill a finite union of proper algebraic subsets, so the
    expected number of trials is O(1).
    """
    rng = _random.Random(seed)
    r, _ = triple.rank(model)
    for _ in range(budget):
        v = triple._random_int_vector(rng, model.dim_p)
        if triple.centralizer(model, v).dim == r:
            return _flat_from_witness(model, v)
    raise BudgetExhaustedError(f"no regular vector in {budget} samples on {model.spec}",
                               trials=budget)


def _witness_inside(model, sub, seed=20240001):
    """A regular vector inside a maximal abelian subspace, by integer sampling."""
    rng = _random.Random(seed)
    basis = [linalg._row_to_int(v) for v in sub.basis]
    for _ in range(400):
        coeffs = [rng.randint(-9, 9) for _ in basis]
        v = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(model.dim_p)]
        if any(v) and triple.centralizer(model, v).dim == len(basis):
            return v
    raise AssertionError(f"no regular vector found inside the flat of {model.spec}")


def standard_flat(model):
    """The model's validated built-in maximal flat, with a regular witness."""
    sub = model.p_subspace([[Fraction(x) for x in v] for v in model.standard_flat])
    return _flat_from_witness(model, _witness_inside(model, sub))


def flat_through(model, z):
    """A maximal flat containing z, with a regular witness."""
    sub = triple.greedy_maximal_abelian(model, seed=11, start=linalg._row_to_int(z))
    return _flat_from_witness(model, _witness_inside(model, sub))


# ---------------------------------------------------------------------------
# restricted roots

def _ad_g_float(model, v_p_float):
    """ad(v) on g for v in float p-coordinates."""
    d = model.dim
    vec = np.zeros(d)
    for pos, x in zip(model.p_indices, v_p_float):
        vec[pos] = x
    return np.tensordot(vec, model.algebra.c_float, axes=(0, 0)).T


def _gram_g_float(model):
    return linalg.float_matrix([list(r) for r in model.cartan.inner_product.matrix])


def restricted_roots(model, flat):
    """Simultaneous eigendata of {ad(a) : a in the flat} acting on g.

    Returns all nonzero roots as value tuples on the flat basis, with
    multiplicities, the distinct reflection hyperplanes, and the order of the
    group generated by the hyperplane reflections.
    """
    if not isinstance(flat, Flat):
        flat = _flat_from_witness(model, _witness_inside(model, flat))
    sub = flat.subspace
    basis_f = linalg.float_matrix(sub.basis)
    r = len(sub.basis)
    gram_g = _gram_g_float(model)
    ad_each = [_ad_g_float(model, b) for b in basis_f]
    roots = joint_eigenvalue_blocks(ad_each, gram_g, ROOT_TOL)

    nonzero = [(tuple(val), mult) for val, mult in roots if np.linalg.norm(val) > ROOT_TOL]
    zero_mult = sum(mult for val, mult in roots if np.linalg.norm(val) <= ROOT_TOL)
    if zero_mult + sum(m for _, m in nonzero) != model.dim:
        raise AssertionError("root multiplicities do not add up to dim g")

    gram_flat = np.array([[float(x) for x in row]
                          for row in linalg.gram_matrix(sub.basis, model.gram_p)])
    hyperplanes = _hyperplanes(nonzero, r, sub)
    weyl = _weyl_order(nonzero, gram_flat)
    return RestrictedRootSystem(flat, tuple(nonzero), tuple(hyperplanes), weyl)


def joint_eigenvalue_blocks(operators, gram, tol):
    """Common eigenvalue tuples with multiplicities of commuting operators.

    The operators must be self-adjoint w.r.t. the positive Gram matrix.
    Works by refining eigenblocks one operator at a time, so no genericity
    assumption (and no random combination) is needed.
    """
    l = np.linalg.cholesky(gram)
    linv_t = np.linalg.inv(l.T)
    n = gram.shape[0]
    # blocks carry (orthonormal column basis in transformed coords, values so far)
    blocks = [(np.eye(n), [])]
    for op in operators:
        sym = l.T @ op @ linv_t
        sym = (sym + sym.T) / 2
        refined = []
        for basis, vals in blocks:
            small = basis.T @ sym @ basis
            small = (small + small.T) / 2
            lam, u = np.linalg.eigh(small)
            start = 0
            for end in range(1, len(lam) + 1):
                if end == len(lam) or lam[end] - lam[end - 1] > tol:
                    piece = basis @ u[:, start:end]
                    refined.append((piece, vals + [float(np.mean(lam[start:end]))]))
                    start = end
        blocks = refined
    return [(np.array(vals), basis.shape[1]) for basis, vals in blocks]


def _hyperplanes(nonzero_roots, r, sub):
    reps = []
    for val, _ in nonzero_roots:
        v = np.array(val)
        v = v / np.linalg.norm(v)
        if not any(np.linalg.norm(v - w) < 1e-6 or np.linalg.norm(v + w) < 1e-6 for w in reps):
            reps.append(v)
    ambient = (sub.ambient[0] + "/flat", "flat", r)
    out = []
    for v in reps:
        kern = linalg.float_kernel(v.reshape(1, -1))
        out.append(Subspace(kern.T, ambient, mode="float"))
    return out


def _weyl_order(nonzero_roots, gram_flat):
    reps = []
    for val, _ in nonzero_roots:
        v = np.array(val)
        v = v / np.linalg.norm(v)
        if not any(np.linalg.norm(v - w) < 1e-6 or np.linalg.norm(v + w) < 1e-6 for w in reps):
            reps.append(np.array(val))
    ginv = np.linalg.inv(gram_flat)
    mats = []
    for ell in reps:
        eta = ginv @ ell
        s = np.eye(len(ell)) - 2.0 * np.outer(eta, ell) / float(ell @ eta)
        mats.append(s)

    def key(m):
        return tuple(np.round(m, 6).reshape(-1))

    seen = {key(np.eye(len(gram_flat))): np.eye(len(gram_flat))}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for g in frontier:
            for s in mats:
                h = s @ g
                k = key(h)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
                    if len(seen) > WEYL_CAP:
                        raise AssertionError("Weyl closure exceeded the cap")
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# centralizer profiles (the Lemma-3.1-style battery record)

@dataclass(frozen=True)
class CentralizerProfile:
    is_lts: bool
    z_in_abelian_part: bool
    rank_nz: int
    rank_matches: bool
    euclidean_dim: int
    j_signature: frozenset
    hyperplane_consistent: bool


def _flat_coordinates(sub, z):
    red, pivots = linalg.rref(sub.basis)
    coords = [linalg.to_fraction_vector(z)[p] for p in pivots]
    recon = [Fraction(0)] * len(z)
    for c, row in zip(coords, red):
        if c != 0:
            recon = [x + c * y for x, y in zip(recon, row)]
    if recon != linalg.to_fraction_vector(z):
        raise ValueError("vector does not lie in the flat")
    return coords


def centralizer_profile(model, z, flat=None, roots=None):
    """Structure record of the centralizer of z: totally geodesic data plus
    the root-hyperplane signature of z inside a containing maximal flat."""
    z = linalg.to_fraction_vector(z)
    if all(x == 0 for x in z):
        raise ValueError("centralizer profile needs z != 0")
    cz = triple.centralizer(model, z)
    _, is_lts = triple.lts_residual(model, cz)
    ab = triple.abelian_part(model, cz)
    z_in_ab = ab.contains(z)
    r, _ = triple.rank(model)
    rank_nz, _ = triple.lts_rank(model, cz)

    if flat is None:
        flat = flat_through(model, z)
    sub = flat.subspace
    if roots is None:
        roots = restricted_roots(model, flat)
    coords = np.array([float(x) for x in _flat_coordinates(sub, z)])
    j_sig = set()
    rows = []
    for i, (val, _) in enumerate(_distinct_hyperplane_roots(roots)):
        if abs(np.array(val) @ coords) <= ROOT_TOL * max(1.0, np.linalg.norm(val) * np.linalg.norm(coords)):
            j_sig.add(i)
            rows.append(val)
    if rows:
        inter_dim = len(sub.basis) - linalg.float_rank(np.array(rows))
    else:
        inter_dim = len(sub.basis)
    return CentralizerProfile(
        is_lts=is_lts,
        z_in_abelian_part=z_in_ab,
        rank_nz=rank_nz,
        rank_matches=(rank_nz == r),
        euclidean_dim=ab.dim,
        j_signature=frozenset(j_sig),
        hyperplane_consistent=(inter_dim == ab.dim),
    )


def _distinct_hyperplane_roots(root_system):
    reps = []
    for val, mult in root_system.roots:
        v = np.array(val)
        vn = v / np.linalg.norm(v)
        if not any(np.linalg.norm(vn - w) < 1e-6 or np.linalg.norm(vn + w) < 1e-6
                   for w, _ in reps):
            reps.append((vn, mult))
    return [(tuple(v), m) for v, m in reps]


# ---------------------------------------------------------------------------
# transversal flats (the constructive rank <= index witness)

def transversal_flat(model, w, budget=1000, seed=0):
    """A maximal flat meeting the subspace W only at 0, by rejection sampling.

    Generic regular vectors give transversal flats for any proper Lie triple
    system tangent; failure within the budget signals a bug, not geometry.
    Returns (Flat, trials).
    """
    triple._check_p_subspace(model, w)
    if w.dim >= model.dim_p:
        raise ValueError("transversal search needs a proper subspace of p")
    r, _ = triple.rank(model)
    rng = _random.Random(seed)
    max_seen = 0
    regular_trials = 0
    for trial in range(1, budget + 1):
        v = triple._random_int_vector(rng, model.dim_p)
        cz = triple.centralizer(model, v)
        if cz.dim != r:
            continue
        regular_trials += 1
        inter = subspace_intersection(cz, w)
        if inter.dim == 0:
            return _flat_from_witness(model, v), trial
        max_seen = max(max_seen, inter.dim)
    raise BudgetExhaustedError(
        f"no transversal flat within {budget} trials on {model.spec} "
        f"({regular_trials} regular draws)", trials=budget, max_intersection=max_seen)
