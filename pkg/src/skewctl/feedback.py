"""Static skew-symmetric pole placement.

A skew-symmetric feedback u = Fy preserves the symmetry of a strictly
proper skew-symmetric or skew-Hamiltonian system.  For the skew-symmetric
case the closed-loop characteristic polynomial is a perfect square, so
only n/2 poles can be prescribed and each pole gives one Pfaffian
condition; for the skew-Hamiltonian case the roots pair up as ±λ and each
pair gives one determinant condition.  ``place_poles`` solves those
conditions by damped Newton iteration from many seeded random starts,
deduplicates the converged feedback laws, and verifies every survivor
against the target characteristic polynomial.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidParams,
    NoConvergence,
    NotASquare,
    ParityError,
    StructureViolated,
    SymmetryMismatch,
    VerificationFailed,
)
from .matcore import (
    DEFAULT_TOL,
    Poly,
    ToleranceConfig,
    _pfaffian_core,
    as_cmatrix,
    char_poly,
    poly_sqrt,
    standard_form,
)
from .schubert import dm
from .sysreal import Realization, SymmetryType, classify_realization, symmetrize

__all__ = [
    "SkewFeedback",
    "FeedbackProblem",
    "GenericParams",
    "SolutionSet",
    "StructureReport",
    "pair_basis",
    "closed_loop_charpoly",
    "psi_map",
    "dpsi0",
    "generic_system",
    "place_poles",
    "verify_structure",
]

REALITY_TOL = 1e-7
_NEWTON_MAX_ITER = 200
_NEWTON_RESIDUAL = 1e-12
_JACOBIAN_STEP = 1e-7


def pair_basis(m: int) -> list[tuple[int, int]]:
    """Index pairs (i,j), i<j, ordering the coordinates of a skew matrix."""
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


@dataclass(frozen=True)
class SkewFeedback:
    """Skew-symmetric m x m feedback as a vector of C(m,2) coordinates.

    Coordinate (i,j) multiplies the elementary skew matrix with +1 in
    position (i,j) and -1 in position (j,i).
    """

    m: int
    coords: tuple[complex, ...]

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if len(coords) != math.comb(self.m, 2):
            raise DimensionMismatch(
                f"expected {math.comb(self.m, 2)} coordinates for m={self.m}"
            )
        object.__setattr__(self, "coords", coords)

    @property
    def matrix(self) -> np.ndarray:
        F = np.zeros((self.m, self.m), dtype=np.complex128)
        for c, (i, j) in zip(self.coords, pair_basis(self.m)):
            F[i, j] = c
            F[j, i] = -c
        return F

    @classmethod
    def from_matrix(cls, F, tol: float = 1e-10) -> "SkewFeedback":
        F = as_cmatrix(F)
        m = F.shape[0]
        if F.shape != (m, m):
            raise DimensionMismatch("feedback matrix must be square")
        if np.linalg.norm(F + F.T) > tol * max(1.0, np.linalg.norm(F)):
            raise InvalidParams("feedback matrix is not skew-symmetric")
        K = (F - F.T) / 2
        return cls(m, tuple(K[i, j] for (i, j) in pair_basis(m)))

    @property
    def max_imag(self) -> float:
        return max((abs(c.imag) for c in self.coords), default=0.0)

    def is_real(self, tol: float = REALITY_TOL) -> bool:
        """True when every coordinate's imaginary part is negligible
        relative to the coordinate scale (solutions can be legitimately
        huge, so the threshold cannot be absolute)."""
        scale = max((abs(c) for c in self.coords), default=0.0)
        return self.max_imag <= tol * max(1.0, scale)


_FEEDBACK_VARIANTS = (SymmetryType.SKEW_SYMMETRIC, SymmetryType.SKEW_HAMILTONIAN)


@dataclass(frozen=True)
class FeedbackProblem:
    """A strictly proper structured system plus the poles to place.

    For the skew-symmetric variant the n/2 distinct target values are the
    double roots of the closed loop; for the skew-Hamiltonian variant each
    target value s stands for the root pair ±s (odd n keeps a root at 0).
    """

    system: Realization
    variant: SymmetryType
    target_poles: tuple[complex, ...]

    def __post_init__(self):
        if self.variant not in _FEEDBACK_VARIANTS:
            raise InvalidParams("variant must be skew-symmetric or skew-hamiltonian")
        if not self.system.strictly_proper:
            raise InvalidParams("pole placement requires D = 0")
        if self.variant is SymmetryType.SKEW_SYMMETRIC and self.system.n % 2:
            raise ParityError("skew-symmetric systems have even state dimension")
        poles = tuple(complex(p) for p in self.target_poles)
        if len(poles) != self.num_placeable:
            raise InvalidParams(
                f"expected {self.num_placeable} target poles, got {len(poles)}"
            )
        for i in range(len(poles)):
            for j in range(i + 1, len(poles)):
                if abs(poles[i] - poles[j]) <= 1e-12 * (1 + abs(poles[i])):
                    raise InvalidParams("target poles must be distinct")
        object.__setattr__(self, "target_poles", poles)

    @property
    def num_placeable(self) -> int:
        return self.system.n // 2

    def target_charpoly(self) -> Poly:
        """Monic closed-loop polynomial implied by the target poles."""
        roots = list(self.target_poles)
        if self.variant is SymmetryType.SKEW_SYMMETRIC:
            return Poly.from_roots(roots + roots)
        mirrored = roots + [-p for p in roots]
        mirrored += [0.0] * (self.system.n - len(mirrored))
        return Poly.from_roots(mirrored)


def _all_distinct(values, what: str) -> None:
    vals = [complex(v) for v in values]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if abs(vals[i] - vals[j]) <= 1e-12 * (1 + abs(vals[i]) + abs(vals[j])):
                raise InvalidParams(f"{what} must be distinct")


@dataclass(frozen=True)
class GenericParams:
    """Diagonal values and Vandermonde nodes of the generic witness system.

    Validity (checked with l = len(alphas)): the alphas are distinct, the
    pairwise products beta_i*beta_j (i<j) are distinct, and the l-th powers
    of the betas are distinct.  These are exactly the conditions making the
    linearized pole map at F = 0 have full rank.
    """

    alphas: tuple[complex, ...]
    betas: tuple[complex, ...]

    def __post_init__(self):
        alphas = tuple(complex(a) for a in self.alphas)
        betas = tuple(complex(b) for b in self.betas)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)
        _all_distinct(alphas, "alphas")
        ell = len(alphas)
        products = [betas[i] * betas[j]
                    for (i, j) in pair_basis(len(betas))]
        _all_distinct(products, "beta products")
        _all_distinct([b**ell for b in betas], "beta l-th powers")


@dataclass(frozen=True)
class SolutionSet:
    """Deduplicated, verified feedback laws with solver provenance."""

    solutions: tuple[SkewFeedback, ...]
    residuals: tuple[float, ...]
    is_real: tuple[bool, ...]
    starts_used: int
    converged_starts: int
    underdetermined: bool = False

    def __len__(self) -> int:
        return len(self.solutions)


# ---------------------------------------------------------------------------
# closed-loop quantities


def closed_loop_charpoly(r: Realization, F: SkewFeedback) -> Poly:
    """Characteristic polynomial det(sI - (A + BFC)) of the fed-back system."""
    if F.m != r.m:
        raise DimensionMismatch("feedback size does not match the system")
    if not r.strictly_proper:
        raise ValueError("closed-loop charpoly assumes D = 0")
    return char_poly(r.A + r.B @ F.matrix @ r.C)


def _closed_loop_matrix(A: np.ndarray, B: np.ndarray, F: SkewFeedback,
                        variant: SymmetryType) -> np.ndarray:
    if variant is SymmetryType.SKEW_SYMMETRIC:
        if A.shape[0] % 2:
            raise ParityError("skew-symmetric variant needs even dimension")
        J = standard_form("symplectic", A.shape[0] // 2)
        return A + B @ F.matrix @ B.T @ J
    return A + B @ F.matrix @ B.T


def psi_map(A, B, F: SkewFeedback, ell: int, variant: SymmetryType) -> np.ndarray:
    """Power sums of the closed-loop spectrum as a function of F.

    Skew-symmetric variant: traces of (A + BFB^T J)^k for k = 1..l.
    Skew-Hamiltonian variant: traces of (A + BFB^T)^(2k); the odd powers
    of a skew-symmetric matrix are traceless, so only these carry data.
    """
    A = as_cmatrix(A)
    B = as_cmatrix(B)
    if B.shape[0] != A.shape[0] or F.m != B.shape[1]:
        raise DimensionMismatch("incompatible A, B, F dimensions")
    M = _closed_loop_matrix(A, B, F, variant)
    out = np.empty(ell, dtype=np.complex128)
    if variant is SymmetryType.SKEW_SYMMETRIC:
        cur = M
        for k in range(ell):
            out[k] = np.trace(cur)
            cur = cur @ M
    else:
        M2 = M @ M
        cur = M2
        for k in range(ell):
            out[k] = np.trace(cur)
            cur = cur @ M2
    return out


def dpsi0(A, B, ell: int, variant: SymmetryType) -> np.ndarray:
    """Differential of :func:`psi_map` at F = 0, an l x C(m,2) matrix.

    Column (i,j) is k tr(A^(k-1) (b_i ^ b_j) J) for the skew-symmetric
    variant and 2k tr(A^(2k-1) (b_i ^ b_j)) for the skew-Hamiltonian one,
    where b_i ^ b_j = b_i b_j^T - b_j b_i^T over the columns of B.
    """
    A = as_cmatrix(A)
    B = as_cmatrix(B)
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatch("A and B row counts differ")
    n, m = B.shape
    pairs = pair_basis(m)
    out = np.empty((ell, len(pairs)), dtype=np.complex128)
    if variant is SymmetryType.SKEW_SYMMETRIC:
        if n % 2:
            raise ParityError("skew-symmetric variant needs even dimension")
        J = standard_form("symplectic", n // 2)
        powers = [np.eye(n, dtype=np.complex128)]
        for _ in range(ell - 1):
            powers.append(powers[-1] @ A)
        for col, (i, j) in enumerate(pairs):
            W = (np.outer(B[:, i], B[:, j]) - np.outer(B[:, j], B[:, i])) @ J
            for k in range(1, ell + 1):
                out[k - 1, col] = k * np.trace(powers[k - 1] @ W)
    else:
        powers = [A]
        for _ in range(ell - 1):
            powers.append(powers[-1] @ A @ A)
        for col, (i, j) in enumerate(pairs):
            W = np.outer(B[:, i], B[:, j]) - np.outer(B[:, j], B[:, i])
            for k in range(1, ell + 1):
                out[k - 1, col] = 2 * k * np.trace(powers[k - 1] @ W)
    return out


# ---------------------------------------------------------------------------
# generic witness systems


def generic_system(m: int, n: int, variant: SymmetryType,
                   params: GenericParams) -> Realization:
    """The explicit structured system with surjective pole map at F = 0.

    Skew-symmetric variant (n = 2l): A is diag(alphas) repeated twice on
    the block diagonal and B is the Vandermonde matrix with rows
    beta_j^(i-1); C follows from the realization structure.  The
    skew-Hamiltonian variant uses A = [[0, D], [-D, 0]]; an odd n adds a
    zero first row and column to A and the row beta_i^(2l) on top of B.
    """
    if variant not in _FEEDBACK_VARIANTS:
        raise InvalidParams("variant must be skew-symmetric or skew-hamiltonian")
    ell = n // 2
    if len(params.alphas) != ell:
        raise InvalidParams(f"need exactly {ell} alphas for n={n}")
    if len(params.betas) != m:
        raise InvalidParams(f"need exactly {m} betas")
    D = np.diag(np.asarray(params.alphas, dtype=np.complex128))
    zero = np.zeros((ell, ell), dtype=np.complex128)
    vander = np.vander(np.asarray(params.betas, dtype=np.complex128),
                       N=2 * ell, increasing=True).T
    if variant is SymmetryType.SKEW_SYMMETRIC:
        if n % 2:
            raise ParityError("skew-symmetric variant needs even n")
        A = np.block([[D, zero], [zero, D]])
        B = vander
        J = standard_form("symplectic", ell)
        C = (J @ B).T
    else:
        A = np.block([[zero, D], [-D, zero]])
        B = vander
        if n % 2:
            A = np.block([
                [np.zeros((1, 1)), np.zeros((1, 2 * ell))],
                [np.zeros((2 * ell, 1)), A],
            ])
            top = np.asarray(params.betas, dtype=np.complex128) ** (2 * ell)
            B = np.vstack([top[np.newaxis, :], vander])
        C = B.T
    out = Realization(A, B, C, np.zeros((m, m)), symmetry=variant)
    if variant not in classify_realization(out):
        raise VerificationFailed("generic system failed its structure check")
    return out


# ---------------------------------------------------------------------------
# solver


def _skew_part(M: np.ndarray) -> np.ndarray:
    return (M - M.T) / 2


_STEP_TOL = 1e-13


def _newton(residual, weights: np.ndarray, x0: np.ndarray, conv: float):
    """Damped Newton with forward-difference Jacobian; returns (x, ok).

    ``residual`` is the raw holomorphic condition vector and ``weights`` a
    fixed per-equation scale used for the damping merit and the residual
    convergence test.  A start counts as converged when the weighted
    residual reaches ``conv`` or when the Newton step contracts below the
    relative quadratic-tail threshold, which is scale-free and therefore
    also certifies roots whose residual floor sits above ``conv``.
    """
    x = x0.copy()
    r = residual(x)

    def merit(raw):
        return float(np.max(np.abs(raw) / weights)) if raw.size else 0.0

    rn = merit(r)
    dim = x.size
    recent = [rn]
    stalled = 0
    for _ in range(_NEWTON_MAX_ITER):
        if rn <= conv:
            return x, True
        if not np.isfinite(rn) or rn > 1e18:
            return x, False
        # abort asymptoting runs: only vanishing progress against the
        # recent-merit window signals a dead end
        if rn > (1.0 - 1e-3) * max(recent):
            stalled += 1
            if stalled >= 10:
                return x, False
        else:
            stalled = 0
        recent.append(rn)
        if len(recent) > 6:
            recent.pop(0)
        jac = np.empty((r.size, dim), dtype=np.complex128)
        for j in range(dim):
            # step size relative to the coordinate, or differencing turns
            # into roundoff noise once solutions live at large magnitudes
            hj = _JACOBIAN_STEP * (1.0 + abs(x[j]))
            xp = x.copy()
            xp[j] += hj
            jac[:, j] = (residual(xp) - r) / hj
        try:
            if r.size == dim:
                step = np.linalg.solve(jac, -r)
            else:
                w = weights[:, np.newaxis]
                step, *_ = np.linalg.lstsq(jac / w, -r / w[:, 0], rcond=None)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        if float(np.linalg.norm(step)) <= _STEP_TOL * (1 + float(np.linalg.norm(x))):
            return x + step, True
        # non-monotone step halving: accepting anything below the recent
        # merit ceiling lets the iteration cross ridges between the start
        # scale and remote solution scales
        ceiling = max(recent)
        scale = 1.0
        improved = False
        for _ in range(30):
            xn = x + scale * step
            rn_new = residual(xn)
            norm_new = merit(rn_new)
            if norm_new < ceiling or norm_new <= conv:
                x, r, rn = xn, rn_new, norm_new
                improved = True
                break
            scale /= 2
        if not improved:
            return x, rn <= conv
    return x, rn <= conv


def _structured_system(problem: FeedbackProblem, tol: ToleranceConfig,
                       seed: int) -> Realization:
    r = problem.system
    if problem.variant in classify_realization(r, tol):
        return r
    return symmetrize(r, problem.variant, tol, seed=seed)


def _linearized_center(problem: FeedbackProblem, rs: Realization) -> np.ndarray:
    """First-order solve of the power-sum pole map, used to seed starts.

    The target power sums are known from the requested poles, and the map
    linearizes at F = 0 through trace formulas; the least-squares solve
    lands at the right coordinate magnitude even when solutions are huge.
    """
    A, B, C = rs.A, rs.B, rs.C
    ell = problem.num_placeable
    poles = np.asarray(problem.target_poles)
    pairs = pair_basis(rs.m)
    lin = np.empty((ell, len(pairs)), dtype=np.complex128)
    target = np.empty(ell, dtype=np.complex128)
    psi0 = np.empty(ell, dtype=np.complex128)
    if problem.variant is SymmetryType.SKEW_SYMMETRIC:
        powers = [np.eye(rs.n, dtype=np.complex128)]
        for _ in range(ell - 1):
            powers.append(powers[-1] @ A)
        for k in range(1, ell + 1):
            target[k - 1] = 2 * np.sum(poles**k)
            psi0[k - 1] = np.trace(powers[k - 1] @ A)
        for col, (i, j) in enumerate(pairs):
            W = np.outer(B[:, i], C[j, :]) - np.outer(B[:, j], C[i, :])
            for k in range(1, ell + 1):
                lin[k - 1, col] = k * np.trace(powers[k - 1] @ W)
    else:
        powers = [A]
        for _ in range(ell - 1):
            powers.append(powers[-1] @ A @ A)
        for k in range(1, ell + 1):
            target[k - 1] = 2 * np.sum(poles ** (2 * k))
            psi0[k - 1] = np.trace(powers[k - 1] @ A)
        for col, (i, j) in enumerate(pairs):
            W = np.outer(B[:, i], C[j, :]) - np.outer(B[:, j], C[i, :])
            for k in range(1, ell + 1):
                lin[k - 1, col] = 2 * k * np.trace(powers[k - 1] @ W)
    center, *_ = np.linalg.lstsq(lin, target - psi0, rcond=None)
    if not np.all(np.isfinite(center)):
        return np.zeros(len(pairs), dtype=np.complex128)
    return center


def _condition_evaluator(problem: FeedbackProblem, rs: Realization):
    """Per-pole analytic conditions on the feedback coordinates.

    Skew-symmetric variant: pf((s_i I - M)J) = 0 makes s_i a double root
    of det(sI - M); skew-Hamiltonian: det(s_i I - M) = 0 places the pair
    ±s_i.  Returns the raw holomorphic condition vector plus fixed
    per-equation weights (the open-loop Hadamard-style magnitudes), which
    calibrate residual thresholds without letting runaway feedback values
    masquerade as roots.
    """
    A, B, C = rs.A, rs.B, rs.C
    n, m = rs.n, rs.m
    poles = np.asarray(problem.target_poles)

    def hadamard(mat: np.ndarray) -> float:
        norms = np.maximum(np.linalg.norm(mat, axis=1), 1.0)
        return float(np.exp(np.sum(np.log(norms))))

    if problem.variant is SymmetryType.SKEW_SYMMETRIC:
        ell = n // 2
        J = standard_form("symplectic", ell)
        AJ = _skew_part(A @ J)
        CJ = C @ J

        def conditions(coords: np.ndarray) -> np.ndarray:
            F = SkewFeedback(m, tuple(coords))
            W = AJ + _skew_part(B @ F.matrix @ CJ)
            out = np.empty(len(poles), dtype=np.complex128)
            for i, s in enumerate(poles):
                out[i] = _pfaffian_core(s * J - W)
            return out

        # |pf|^2 = |det| is bounded by the product of row norms
        weights = np.array(
            [math.sqrt(hadamard(s * J - AJ)) for s in poles]
        )

    else:
        eye = np.eye(n, dtype=np.complex128)

        def conditions(coords: np.ndarray) -> np.ndarray:
            F = SkewFeedback(m, tuple(coords))
            M = A + B @ F.matrix @ C
            out = np.empty(len(poles), dtype=np.complex128)
            for i, s in enumerate(poles):
                out[i] = np.linalg.det(s * eye - M)
            return out

        weights = np.array([hadamard(s * eye - A) for s in poles])

    return conditions, weights


def _dedupe(candidates: list[np.ndarray], radius: float) -> list[np.ndarray]:
    """Merge coordinate vectors within a relative radius of a kept one."""
    kept: list[np.ndarray] = []
    for c in candidates:
        scale = max(1.0, float(np.linalg.norm(c)))
        if all(
            np.linalg.norm(c - k) > radius * max(scale, float(np.linalg.norm(k)))
            for k in kept
        ):
            kept.append(c)
    return kept


def place_poles(problem: FeedbackProblem, seed: int = 0,
                max_starts: int | None = None,
                tol: ToleranceConfig = DEFAULT_TOL,
                threads: int = 1) -> SolutionSet:
    """Find all skew-symmetric feedback laws placing the target poles.

    Damped Newton iteration runs from ``max_starts`` seeded complex
    Gaussian starts (start k derives its stream from (seed, k), so any
    execution order gives identical output).  Converged iterates are
    deduplicated within ``dedupe_radius`` and each survivor is verified by
    reconstructing the closed-loop characteristic polynomial and comparing
    it against the target coefficient-wise; reality is flagged when every
    coordinate has negligible imaginary part.

    With fewer conditions than coordinates the solution set is positive
    dimensional; the returned set is then just a sample of points and is
    marked ``underdetermined``.  Raises ``NoConvergence`` when no verified
    solution is found.
    """
    ell = problem.num_placeable
    npairs = math.comb(problem.system.m, 2)
    rs = _structured_system(problem, tol, seed)
    conditions, weights = _condition_evaluator(problem, rs)
    if max_starts is None:
        count = dm(problem.system.m) if problem.system.m >= 2 else 1
        max_starts = 64 * count
    bnorm = float(np.linalg.norm(rs.B, 2))
    anorm = float(np.linalg.norm(rs.A, 2))
    base_scale = max(1.0, anorm / max(bnorm**2, 1e-12))
    center = _linearized_center(problem, rs)
    center_scale = max(1.0, float(np.linalg.norm(center)))
    # three interleaved start families: perturbations of the linearized
    # center, base-scale Gaussians, and Gaussians cycling over decades,
    # since solution magnitudes are strongly problem dependent
    ladder = (10.0, 100.0, 1e3, 1e4, 1e5)
    spreads = (0.0, 0.05, 0.2, 0.5, 1.0)

    def run_start(index: int) -> tuple[np.ndarray, bool]:
        rng = np.random.default_rng((seed, index))
        noise = rng.standard_normal(npairs) + 1j * rng.standard_normal(npairs)
        family, cycle = index % 3, index // 3
        if family == 0:
            x0 = center + spreads[cycle % len(spreads)] * center_scale * noise
        elif family == 1:
            x0 = base_scale * noise
        else:
            x0 = base_scale * ladder[cycle % len(ladder)] * noise
        return _newton(conditions, weights, x0, _NEWTON_RESIDUAL)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_start, range(max_starts)))
    else:
        results = [run_start(i) for i in range(max_starts)]

    converged = [x for x, ok in results if ok]
    candidates = _dedupe(sorted(converged, key=_coord_key), tol.dedupe_radius)
    # polish each representative further so near-real solutions surface as
    # exactly real up to conditioning, then re-merge
    polished = [_newton(conditions, weights, c, 1e-15)[0] for c in candidates]
    candidates = _dedupe(sorted(polished, key=_coord_key), tol.dedupe_radius)

    target = problem.target_charpoly()
    coeff_scale = max(1.0, max((abs(c) for c in target.coeffs), default=1.0))
    solutions, residuals, reality = [], [], []
    for coords in candidates:
        F = SkewFeedback(problem.system.m, tuple(coords))
        phi = closed_loop_charpoly(problem.system, F)
        diff = phi - target
        defect = max((abs(c) for c in diff.coeffs), default=0.0) / coeff_scale
        if defect <= tol.residual_tol:
            solutions.append(F)
            residuals.append(float(defect))
            reality.append(F.is_real())
    if not solutions:
        raise NoConvergence(
            f"no verified solution from {max_starts} starts "
            f"({len(converged)} converged)"
        )
    order = sorted(range(len(solutions)), key=lambda i: _coord_key(
        np.asarray(solutions[i].coords)))
    return SolutionSet(
        solutions=tuple(solutions[i] for i in order),
        residuals=tuple(residuals[i] for i in order),
        is_real=tuple(reality[i] for i in order),
        starts_used=max_starts,
        converged_starts=len(converged),
        underdetermined=ell < npairs,
    )


def _coord_key(coords: np.ndarray):
    return tuple(v for c in coords for v in (c.real, c.imag))


# ---------------------------------------------------------------------------
# structure verification


@dataclass(frozen=True)
class StructureReport:
    variant: SymmetryType
    closed_loop_defect: float
    charpoly: Poly
    sqrt_residual: float | None = None
    parity_defect: float | None = None
    half_charpoly: Poly | None = None


def verify_structure(r: Realization, F: SkewFeedback, variant: SymmetryType,
                     tol: ToleranceConfig = DEFAULT_TOL) -> StructureReport:
    """Assert that feedback preserved the closed-loop structure.

    Skew-symmetric systems keep (A+BFC)J skew-symmetric and a square
    characteristic polynomial; skew-Hamiltonian systems keep A+BFC
    skew-symmetric and a characteristic polynomial with the parity
    phi(s) = (-1)^n phi(-s).  Violations raise ``StructureViolated``.
    """
    if variant not in _FEEDBACK_VARIANTS:
        raise InvalidParams("variant must be skew-symmetric or skew-hamiltonian")
    if variant not in classify_realization(r, tol):
        raise SymmetryMismatch("open-loop system lacks the claimed structure")
    if not r.strictly_proper:
        raise ValueError("structure verification assumes D = 0")
    M = r.A + r.B @ F.matrix @ r.C
    phi = closed_loop_charpoly(r, F)
    scale = max(1.0, float(np.linalg.norm(M)))
    if variant is SymmetryType.SKEW_SYMMETRIC:
        J = standard_form("symplectic", r.n // 2)
        MJ = M @ J
        defect = float(np.linalg.norm(MJ + MJ.T)) / scale
        if defect > tol.residual_tol:
            raise StructureViolated(
                f"(A+BFC)J is not skew-symmetric (defect {defect:.3e})"
            )
        try:
            half = poly_sqrt(phi, tol)
        except NotASquare as exc:
            raise StructureViolated(
                f"closed-loop charpoly is not a square: {exc}"
            ) from exc
        sqrt_res = _poly_gap(half * half, phi)
        return StructureReport(variant, defect, phi,
                               sqrt_residual=sqrt_res, half_charpoly=half)
    defect = float(np.linalg.norm(M + M.T)) / scale
    if defect > tol.residual_tol:
        raise StructureViolated(
            f"A+BFC is not skew-symmetric (defect {defect:.3e})"
        )
    sign = (-1) ** r.n
    parity = _poly_gap(phi, sign * phi.reflect())
    if parity > tol.residual_tol:
        raise StructureViolated(
            f"charpoly parity phi(s) = (-1)^n phi(-s) fails (defect {parity:.3e})"
        )
    return StructureReport(variant, defect, phi, parity_defect=parity)


def _poly_gap(p: Poly, q: Poly) -> float:
    diff = p - q
    scale = max(1.0, p.norm(), q.norm())
    return max((abs(c) for c in diff.coeffs), default=0.0) / scale
