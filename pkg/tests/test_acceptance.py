"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria complete.  Every tolerance is fixed here, not calibrated at run
time.
"""

import math
import time
from fractions import Fraction

import numpy as np
from support import crandn, random_skew_matrix, scramble, structured_realization

from skewctl.feedback import (
    FeedbackProblem,
    GenericParams,
    SkewFeedback,
    closed_loop_charpoly,
    dpsi0,
    generic_system,
    pair_basis,
    place_poles,
    psi_map,
    verify_structure,
)
from skewctl.matcore import Poly, numerical_rank
from skewctl.purbhoo import k_matrix, purbhoo_transfer, reality_experiment
from skewctl.schubert import (
    FormKind,
    PlaneBasis,
    annihilator,
    dm,
    geometry_identity_check,
    isotropic_check,
    subspace_distance,
)
from skewctl.sysreal import (
    Realization,
    SymmetryType,
    TransferProbe,
    is_minimal,
    mcmillan_degree,
    symmetrize,
    transfer_eval,
    transform_group_check,
)

SQRT2 = math.sqrt(2.0)
SS = SymmetryType.SKEW_SYMMETRIC
SH = SymmetryType.SKEW_HAMILTONIAN
ALL_TYPES = (SymmetryType.SYMMETRIC, SymmetryType.HAMILTONIAN, SH, SS)


def _report(num: int, text: str) -> None:
    print(f"ACCEPTANCE {num:2d} [PASS] {text}")


def test_criterion_01_dm_table():
    start = time.time()
    assert [dm(m) for m in (2, 3, 4, 5)] == [1, 1, 2, 12]
    for m in range(2, 21):
        frac = Fraction(math.factorial(math.comb(m, 2)))
        for k in range(1, m - 1):
            frac *= math.factorial(k)
        for k in range(1, m):
            frac /= math.factorial(2 * k - 1)
        assert frac.denominator == 1 and dm(m) == frac.numerator > 0
    elapsed = time.time() - start
    assert elapsed < 1.0
    _report(1, f"d_m = 1,1,2,12 for m=2..5, rational cross-check to m=20 "
               f"({elapsed:.2f}s)")


def _identity_defects(r: Realization, target: SymmetryType) -> float:
    from skewctl.matcore import standard_form

    def gap(P, Q):
        return float(np.linalg.norm(P - Q)) / max(
            1.0, float(np.linalg.norm(P)), float(np.linalg.norm(Q))
        )

    if target is SH:
        return max(gap(r.A, -r.A.T), gap(r.B, r.C.T), gap(r.D, -r.D.T))
    J = standard_form("symplectic", r.n // 2)
    AJ = r.A @ J
    return max(gap(AJ, -AJ.T), gap(J @ r.B, r.C.T), gap(r.D, -r.D.T))


def test_criterion_02_symmetrization_round_trip():
    start = time.time()
    rng = np.random.default_rng(20250202)
    cases = []
    for i in range(20):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(2, 5))
        cases.append((SH, n, m))
    for i in range(20):
        n = 2 * int(rng.integers(1, 5))
        m = int(rng.integers(2, 5))
        cases.append((SS, n, m))
    probe = TransferProbe.default(seed=99, count=10)
    for target, n, m in cases:
        base = structured_realization(target, n, m, rng, strictly_proper=False)
        scrambled, _ = scramble(base, rng)
        out = symmetrize(scrambled, target)
        assert _identity_defects(out, target) <= 1e-8
        for s in probe.sample_points:
            g0 = transfer_eval(scrambled, s)
            g1 = transfer_eval(out, s)
            assert np.linalg.norm(g0 - g1) <= 1e-8 * max(1.0, np.linalg.norm(g0))
    elapsed = time.time() - start
    assert elapsed < 10.0
    _report(2, f"40 scrambled systems re-symmetrized, identities and transfer "
               f"within 1e-8 ({elapsed:.2f}s)")


def test_criterion_03_uniqueness_group_law():
    start = time.time()
    rng = np.random.default_rng(20250303)
    expected = {
        SymmetryType.SYMMETRIC: "orthogonal",
        SH: "orthogonal",
        SymmetryType.HAMILTONIAN: "symplectic",
        SS: "symplectic",
    }
    for target, verdict in expected.items():
        for _ in range(10):
            n = 2 * int(rng.integers(1, 4))
            m = int(rng.integers(2, 4))
            base = structured_realization(target, n, m, rng,
                                          strictly_proper=False)
            s1, _ = scramble(base, rng)
            s2, _ = scramble(base, rng)
            out1 = symmetrize(s1, target)
            out2 = symmetrize(s2, target)
            check = transform_group_check(out1, out2, target, defect_tol=1e-7)
            assert check.verdict == verdict
            defect = (check.orthogonal_defect if verdict == "orthogonal"
                      else check.symplectic_defect)
            assert defect <= 1e-7
    elapsed = time.time() - start
    assert elapsed < 5.0
    _report(3, f"group law orthogonal/symplectic for 10 pairs per type, "
               f"defects <= 1e-7 ({elapsed:.2f}s)")


def _unit_modulus_params(m: int, ell: int) -> GenericParams:
    # nodes on the unit circle keep every Vandermonde factor of the
    # linearized pole map well conditioned; angles 2^j give distinct
    # pairwise products and the (2l+1)-st roots keep distinct squares
    betas = tuple(np.exp(2j * np.pi * (2**j) / 64.0) for j in range(1, m + 1))
    alphas = tuple(np.exp(2j * np.pi * p / (2 * ell + 1))
                   for p in range(1, ell + 1))
    return GenericParams(alphas, betas)


def test_criterion_04_rank_law():
    start = time.time()
    for m in (3, 4):
        pairs = math.comb(m, 2)
        for ell in (pairs - 1, pairs, pairs + 1):
            params = _unit_modulus_params(m, ell)
            for variant in (SS, SH):
                r = generic_system(m, 2 * ell, variant, params)
                mat = dpsi0(r.A, r.B, ell, variant)
                assert numerical_rank(mat) == min(ell, pairs), (
                    f"rank law failed for m={m} ell={ell} {variant}"
                )
        # finite-difference agreement in the square case
        ell = pairs
        params = _unit_modulus_params(m, ell)
        for variant in (SS, SH):
            r = generic_system(m, 2 * ell, variant, params)
            mat = dpsi0(r.A, r.B, ell, variant)
            h = 1e-6
            for col, _ in enumerate(pair_basis(m)):
                coords = [0.0] * pairs
                coords[col] = h
                plus = psi_map(r.A, r.B, SkewFeedback(m, tuple(coords)), ell,
                               variant)
                coords[col] = -h
                minus = psi_map(r.A, r.B, SkewFeedback(m, tuple(coords)), ell,
                                variant)
                fd = (plus - minus) / (2 * h)
                denom = max(1.0, float(np.linalg.norm(mat[:, col])))
                assert np.linalg.norm(fd - mat[:, col]) / denom <= 1e-4
    elapsed = time.time() - start
    assert elapsed < 5.0
    _report(4, f"rank(dPsi0) = min(l, C(m,2)) for m=3,4 and l in "
               f"{{C-1,C,C+1}}, finite differences within 1e-4 ({elapsed:.2f}s)")


def _random_pole_tuple(rng, count: int, complex_poles: bool):
    while True:
        if complex_poles:
            vals = tuple(
                complex(-0.5 - 2.0 * rng.random(), 2.0 * rng.standard_normal())
                for _ in range(count)
            )
        else:
            vals = tuple(-0.5 - 5.5 * rng.random() for _ in range(count))
        ok = all(
            abs(vals[i] - vals[j]) > 0.15
            for i in range(count) for j in range(i + 1, count)
        )
        if ok:
            return vals


def test_criterion_05_pole_placement():
    start = time.time()
    params = GenericParams((1, 2, 3), (2, 3, 5))
    r_ss = generic_system(3, 6, SS, params)
    rng = np.random.default_rng(20250505)
    for trial in range(5):
        poles = _random_pole_tuple(rng, 3, complex_poles=True)
        problem = FeedbackProblem(r_ss, SS, poles)
        sols = place_poles(problem, seed=100 + trial, max_starts=16)
        doubled = place_poles(problem, seed=100 + trial, max_starts=32)
        assert len(sols) == 1, f"trial {trial}: found {len(sols)} solutions"
        assert len(doubled) == 1
        target = Poly.from_roots(list(poles) + list(poles))
        phi = closed_loop_charpoly(r_ss, sols.solutions[0])
        gap = max(abs(c) for c in (phi - target).coeffs)
        assert gap <= 1e-8 * max(1.0, max(abs(c) for c in target.coeffs))
    r_sh = generic_system(3, 6, SH, params)
    poles = _random_pole_tuple(rng, 3, complex_poles=True)
    sols = place_poles(FeedbackProblem(r_sh, SH, poles), seed=7, max_starts=24)
    assert len(sols) >= 1
    target = Poly.from_roots([p for p in poles] + [-p for p in poles])
    phi = closed_loop_charpoly(r_sh, sols.solutions[0])
    gap = max(abs(c) for c in (phi - target).coeffs)
    assert gap <= 1e-8 * max(1.0, max(abs(c) for c in target.coeffs))
    elapsed = time.time() - start
    assert elapsed < 60.0
    _report(5, f"5 seeded complex pole triples placed with exactly 1 solution "
               f"(stable under doubling), plus skew-Hamiltonian pairs "
               f"({elapsed:.2f}s)")


def test_criterion_06_square_and_parity_laws():
    start = time.time()
    rng = np.random.default_rng(20250606)
    for _ in range(50):
        n = 2 * int(rng.integers(1, 5))
        m = int(rng.integers(2, 5))
        r = structured_realization(SS, n, m, rng)
        F = SkewFeedback(m, tuple(crandn(rng, math.comb(m, 2))))
        rep = verify_structure(r, F, SS)
        assert rep.sqrt_residual <= 1e-8
    for k in range(50):
        n = int(rng.integers(2, 9))  # both parities appear
        m = int(rng.integers(2, 5))
        r = structured_realization(SH, n, m, rng)
        F = SkewFeedback(m, tuple(crandn(rng, math.comb(m, 2))))
        rep = verify_structure(r, F, SH)
        assert rep.parity_defect <= 1e-8
    elapsed = time.time() - start
    assert elapsed < 10.0
    _report(6, f"50 square-law and 50 parity-law random closed loops within "
               f"1e-8 ({elapsed:.2f}s)")


def test_criterion_07_geometry_identity():
    start = time.time()
    rng = np.random.default_rng(20250707)
    done = 0
    while done < 20:
        n = int(rng.integers(2, 7))
        m = int(rng.integers(2, 4))
        r = Realization(crandn(rng, n, n), crandn(rng, n, m),
                        crandn(rng, m, n), np.zeros((m, m)))
        if not is_minimal(r):
            continue
        F = SkewFeedback(m, tuple(crandn(rng, math.comb(m, 2))))
        s = complex(2.5 * rng.standard_normal(), 2.5 * rng.standard_normal())
        if np.min(np.abs(np.linalg.eigvals(r.A) - s)) < 1e-2:
            continue
        rep = geometry_identity_check(r, F, [s])
        assert rep.max_deviation <= 1e-8
        done += 1
    elapsed = time.time() - start
    assert elapsed < 5.0
    _report(7, f"phi(s) = det(sI-A) det[[I,G],[F,I]] on 20 random triples "
               f"within 1e-8 ({elapsed:.2f}s)")


def test_criterion_08_golden_vectors():
    start = time.time()
    K = k_matrix(5)
    golden_row = {
        4: Poly.monomial(SQRT2, 4),
        5: Poly((1 / math.factorial(4),)),
        6: Poly((0, -1 / math.factorial(3))),
        7: Poly((0, 0, 1 / math.factorial(2))),
        8: Poly((0, 0, 0, -1.0)),
    }
    for j in range(10):
        entry = K.entry(4, j)
        want = golden_row.get(j, Poly())
        if want.degree < 0:
            assert entry.degree < 0
        else:
            gap = max(abs(a - b) for a, b in zip(
                entry.coeffs + (0j,) * 5, want.coeffs + (0j,) * 5))
            assert gap <= 1e-10 * want.norm()
    sys5 = purbhoo_transfer(5)
    g12 = [blk[0, 1] for blk in sys5.markov]
    want12 = 2.5 / math.factorial(7)
    assert abs(g12[6] - want12) <= 1e-10 * want12
    assert all(abs(v) <= 1e-10 * want12 for k, v in enumerate(g12) if k != 6)
    g45 = [blk[3, 4] for blk in sys5.markov]
    assert abs(g45[0] - 1 / SQRT2) <= 1e-10
    assert all(abs(v) <= 1e-10 for v in g45[1:])
    for m in (3, 4, 5):
        sysm = purbhoo_transfer(m)
        pad = [np.zeros((m, m))] * 3
        assert mcmillan_degree(list(sysm.markov) + pad) == 2 * math.comb(m, 2)
    elapsed = time.time() - start
    assert elapsed < 10.0
    _report(8, f"golden K-matrix row, transfer entries, and McMillan degrees "
               f"m=3,4,5 within 1e-10 ({elapsed:.2f}s)")


def test_criterion_09_reality_theorem():
    start = time.time()
    rng = np.random.default_rng(20250909)
    base_starts = {2: 8, 3: 16, 4: 24}
    for m in (2, 3, 4):
        expected = dm(m)
        count = math.comb(m, 2)
        for trial in range(3):
            poles = _random_pole_tuple(rng, count, complex_poles=False)
            seed = 1000 * m + trial
            sols = reality_experiment(m, poles, seed=seed,
                                      max_starts=base_starts[m])
            doubled = reality_experiment(m, poles, seed=seed,
                                         max_starts=2 * base_starts[m])
            assert len(sols) == expected, (
                f"m={m} trial={trial}: {len(sols)} != {expected}"
            )
            assert len(doubled) == expected
            assert all(sols.is_real), f"m={m} trial={trial}: non-real flags"
    elapsed = time.time() - start
    assert elapsed < 300.0
    _report(9, f"reality experiment: d_m real solutions for m=2,3,4 over 3 "
               f"pole sets each, stable under doubling ({elapsed:.2f}s)")


def test_criterion_10_involution_isotropy_suite():
    start = time.time()
    rng = np.random.default_rng(20251010)
    for _ in range(100):
        m = int(rng.integers(2, 5))
        k = int(rng.integers(1, m + 1))
        H = PlaneBasis(crandn(rng, k, 2 * m))
        form = FormKind.SYMMETRIC_O if rng.random() < 0.5 else FormKind.SKEW_J
        ann = annihilator(H, form)
        assert ann.dim == 2 * m - k
        assert subspace_distance(annihilator(ann, form), H) <= 1e-8
    for _ in range(100):
        m = int(rng.integers(2, 5))
        skew = random_skew_matrix(rng, m)
        a = crandn(rng, m, m)
        sym = a + a.T
        assert isotropic_check(PlaneBasis.graph(skew), FormKind.SYMMETRIC_O, 1e-8)
        assert isotropic_check(PlaneBasis.graph(sym), FormKind.SKEW_J, 1e-8)
        assert not isotropic_check(PlaneBasis.graph(sym), FormKind.SYMMETRIC_O, 1e-8)
        assert not isotropic_check(PlaneBasis.graph(skew), FormKind.SKEW_J, 1e-8)
    elapsed = time.time() - start
    assert elapsed < 5.0
    _report(10, f"annihilator involution/dimension and the four isotropy "
                f"characterizations on 100 random instances ({elapsed:.2f}s)")
