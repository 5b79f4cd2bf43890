import math
from fractions import Fraction

import numpy as np
import pytest
from support import crandn, random_skew_matrix, random_symmetric_matrix

from skewctl.errors import SingularAtSample
from skewctl.feedback import FeedbackProblem, GenericParams, SkewFeedback, generic_system, place_poles
from skewctl.schubert import (
    FormKind,
    PlaneBasis,
    annihilator,
    dm,
    geometry_identity_check,
    intersection_test,
    isotropic_check,
    subspace_distance,
)
from skewctl.sysreal import Realization, SymmetryType, transfer_eval


def graph_plane(F):
    return PlaneBasis.graph(F)


# ---------------------------------------------------------------------------
# annihilator


def test_annihilator_graph_skew_form():
    rng = np.random.default_rng(1)
    F = crandn(rng, 3, 3)
    out = annihilator(graph_plane(F), FormKind.SKEW_J)
    want = PlaneBasis.graph(F.T)
    assert subspace_distance(out, want) <= 1e-8


def test_annihilator_graph_symmetric_form():
    rng = np.random.default_rng(2)
    F = crandn(rng, 3, 3)
    out = annihilator(graph_plane(F), FormKind.SYMMETRIC_O)
    want = PlaneBasis.graph(-F.T)
    assert subspace_distance(out, want) <= 1e-8


def test_annihilator_fixed_point_for_isotropic_plane():
    rng = np.random.default_rng(3)
    F = random_skew_matrix(rng, 4)
    H = graph_plane(F)
    assert isotropic_check(H, FormKind.SYMMETRIC_O)
    out = annihilator(H, FormKind.SYMMETRIC_O)
    assert subspace_distance(out, H) <= 1e-8


def test_annihilator_involution_and_dimension():
    rng = np.random.default_rng(4)
    for _ in range(10):
        k = int(rng.integers(1, 4))
        H = PlaneBasis(crandn(rng, k, 8))
        for form in FormKind:
            ann = annihilator(H, form)
            assert ann.dim == 8 - k
            back = annihilator(ann, form)
            assert subspace_distance(back, H) <= 1e-8


# ---------------------------------------------------------------------------
# isotropy characterizations


def test_isotropy_four_characterizations():
    rng = np.random.default_rng(5)
    for _ in range(10):
        skew = random_skew_matrix(rng, 3)
        sym = random_symmetric_matrix(rng, 3)
        assert isotropic_check(graph_plane(skew), FormKind.SYMMETRIC_O)
        assert isotropic_check(graph_plane(sym), FormKind.SKEW_J)
        assert not isotropic_check(graph_plane(sym), FormKind.SYMMETRIC_O)
        assert not isotropic_check(graph_plane(skew), FormKind.SKEW_J)


# ---------------------------------------------------------------------------
# intersection test


def test_intersection_at_placed_poles():
    r = generic_system(3, 6, SymmetryType.SKEW_SYMMETRIC,
                       GenericParams((1, 2, 3), (2, 3, 5)))
    poles = (-1.0, -2.0, -3.0)
    sols = place_poles(FeedbackProblem(r, SymmetryType.SKEW_SYMMETRIC, poles),
                       seed=2, max_starts=16)
    F = sols.solutions[0]
    for s in poles:
        G = transfer_eval(r, s)
        K = PlaneBasis(np.hstack([np.eye(3), G]))
        assert intersection_test(K, F)


def test_intersection_generic_false():
    rng = np.random.default_rng(6)
    for _ in range(10):
        K = PlaneBasis(crandn(rng, 3, 6))
        F = crandn(rng, 3, 3)
        assert not intersection_test(K, F)


def test_intersection_unit_determinant_case():
    # [[I, G], [0, I]] has determinant one, so no intersection at F = 0
    rng = np.random.default_rng(7)
    G = crandn(rng, 3, 3)
    K = PlaneBasis(np.hstack([np.eye(3), G]))
    assert not intersection_test(K, np.zeros((3, 3)))


# ---------------------------------------------------------------------------
# geometry identity


def test_geometry_identity_zero_feedback():
    rng = np.random.default_rng(8)
    r = Realization(crandn(rng, 4, 4), crandn(rng, 4, 2), crandn(rng, 2, 4),
                    np.zeros((2, 2)))
    rep = geometry_identity_check(r, np.zeros((2, 2)), [0.5 + 1j, -2.0, 3.0])
    assert rep.max_deviation <= 1e-10


def test_geometry_identity_random_samples():
    rng = np.random.default_rng(9)
    for _ in range(5):
        r = Realization(crandn(rng, 6, 6), crandn(rng, 6, 3),
                        crandn(rng, 3, 6), np.zeros((3, 3)))
        F = SkewFeedback(3, tuple(crandn(rng, 3)))
        pts = [complex(z) for z in crandn(rng, 10) * 2]
        rep = geometry_identity_check(r, F, pts)
        assert rep.max_deviation <= 1e-8


def test_geometry_identity_pole_sample_raises():
    r = Realization([[1.0]], [[1.0]], [[1.0]], [[0.0]])
    with pytest.raises(SingularAtSample):
        geometry_identity_check(r, np.zeros((1, 1)), [1.0])


# ---------------------------------------------------------------------------
# the count d_m


def test_dm_small_values():
    assert [dm(m) for m in (2, 3, 4, 5)] == [1, 1, 2, 12]


def test_dm_m4_by_hand():
    # 6! * 1! * 2! / (1! 3! 5!) = 1440 / 720
    assert dm(4) == math.factorial(6) * 2 // (6 * 120)


def test_dm_exact_rational_cross_check():
    for m in range(2, 21):
        frac = Fraction(math.factorial(math.comb(m, 2)))
        for k in range(1, m - 1):
            frac *= math.factorial(k)
        for k in range(1, m):
            frac /= math.factorial(2 * k - 1)
        assert frac.denominator == 1
        assert dm(m) == frac.numerator
        assert dm(m) > 0


def test_dm_rejects_tiny_m():
    with pytest.raises(ValueError):
        dm(1)
