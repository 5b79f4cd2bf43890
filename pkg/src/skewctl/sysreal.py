"""State-space realizations with symmetry.

Minimality and McMillan degree, classification of realizations and transfer
functions into the four symmetry types (symmetric, Hamiltonian,
skew-Hamiltonian, skew-symmetric), the unique state-space transform between
minimal realizations, and synthesis of a symmetry-respecting realization
from any minimal one carrying the symmetry in its transfer function.

A realization is the quadruple (A, B, C, D) of ``ẋ = Ax + Bu``,
``y = Cx + Du`` with transfer function G(s) = C(sI-A)^{-1}B + D.  The
symmetry types are defined by identities on G:

    symmetric          G(s)^T =  G(s)
    Hamiltonian        G(s)^T =  G(-s)      (n even)
    skew-Hamiltonian   G(s)^T = -G(-s)
    skew-symmetric     G(s)^T = -G(s)       (n even)

and on realizations by the corresponding matrix identities (see
:func:`classify_realization`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InsufficientData,
    NotEquivalent,
    NotMinimal,
    ParityError,
    SingularAtSample,
    SymmetryMismatch,
    VerificationFailed,
)
from .matcore import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_cmatrix,
    numerical_rank,
    standard_form,
    takagi_skew,
    takagi_symmetric,
)

__all__ = [
    "SymmetryType",
    "Realization",
    "TransferProbe",
    "GroupCheck",
    "transform",
    "is_minimal",
    "transfer_eval",
    "markov_parameters",
    "classify_realization",
    "classify_transfer",
    "kalman_transform",
    "symmetrize",
    "transform_group_check",
    "mcmillan_degree",
    "moduli_dimension",
]


class SymmetryType(enum.Enum):
    SYMMETRIC = "symmetric"
    HAMILTONIAN = "hamiltonian"
    SKEW_HAMILTONIAN = "skew-hamiltonian"
    SKEW_SYMMETRIC = "skew-symmetric"

    @classmethod
    def parse(cls, label: str) -> "SymmetryType":
        for t in cls:
            if t.value == label:
                return t
        raise ValueError(f"unknown symmetry type: {label!r}")

    @property
    def needs_even_state_dim(self) -> bool:
        return self in (SymmetryType.HAMILTONIAN, SymmetryType.SKEW_SYMMETRIC)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Realization:
    """State-space quadruple with n states and m inputs = m outputs."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    symmetry: SymmetryType | None = None

    def __post_init__(self):
        A = _frozen(as_cmatrix(self.A))
        B = _frozen(as_cmatrix(self.B))
        C = _frozen(as_cmatrix(self.C))
        D = _frozen(as_cmatrix(self.D))
        n = A.shape[0]
        m = D.shape[0]
        if A.shape != (n, n) or B.shape != (n, m) or C.shape != (m, n) or D.shape != (m, m):
            raise DimensionMismatch(
                f"inconsistent realization shapes: A{A.shape} B{B.shape} "
                f"C{C.shape} D{D.shape}"
            )
        if m < 1:
            raise DimensionMismatch("need at least one input/output channel")
        for name, value in (("A", A), ("B", B), ("C", C), ("D", D)):
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.D.shape[0]

    @property
    def strictly_proper(self) -> bool:
        return not self.D.any()


def transform(r: Realization, x: np.ndarray) -> Realization:
    """Apply the state-space change of basis (X^{-1}AX, X^{-1}B, CX, D)."""
    x = as_cmatrix(x)
    if x.shape != (r.n, r.n):
        raise DimensionMismatch("transform matrix must be n x n")
    xinv = np.linalg.inv(x)
    return Realization(xinv @ r.A @ x, xinv @ r.B, r.C @ x, r.D)


@dataclass(frozen=True)
class TransferProbe:
    """Sample points standing in for the 'for all s' of the identities."""

    sample_points: tuple[complex, ...]
    tol: float = 1e-8

    @classmethod
    def default(cls, seed: int = 0, count: int = 10, tol: float = 1e-8,
                scale: float = 2.0) -> "TransferProbe":
        rng = np.random.default_rng((0x5CE4, seed))
        pts = scale * (rng.standard_normal(count) + 1j * rng.standard_normal(count))
        return cls(tuple(complex(p) for p in pts), tol)


# ---------------------------------------------------------------------------
# minimality / evaluation


def controllability_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    blocks = []
    cur = B
    for _ in range(max(n, 1)):
        blocks.append(cur)
        cur = A @ cur
    return np.hstack(blocks) if blocks else B


def is_minimal(r: Realization, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff (A,B) is controllable and (A,C) observable at rank_tol."""
    if r.n == 0:
        return True
    ctrb = controllability_matrix(r.A, r.B)
    obsv = controllability_matrix(r.A.T, r.C.T)
    return (numerical_rank(ctrb, tol.rank_tol) == r.n
            and numerical_rank(obsv, tol.rank_tol) == r.n)


def transfer_eval(r: Realization, s: complex,
                  tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Evaluate G(s) = C(sI-A)^{-1}B + D; raises near eigenvalues of A."""
    if r.n == 0:
        return r.D.copy()
    M = s * np.eye(r.n, dtype=np.complex128) - r.A
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= tol.rank_tol * max(sv[0], 1e-300):
        raise SingularAtSample(f"s = {s} is numerically an eigenvalue of A")
    return r.C @ np.linalg.solve(M, r.B) + r.D


def markov_parameters(r: Realization, count: int) -> list[np.ndarray]:
    """First ``count`` Markov parameters CB, CAB, CA^2B, ... (D excluded)."""
    out = []
    cur = r.B
    for _ in range(count):
        out.append(r.C @ cur)
        cur = r.A @ cur
    return out


# ---------------------------------------------------------------------------
# classification


def _defect(P: np.ndarray, Q: np.ndarray) -> float:
    scale = max(float(np.linalg.norm(P)), float(np.linalg.norm(Q)), 1.0)
    return float(np.linalg.norm(P - Q)) / scale


def classify_realization(r: Realization,
                         tol: ToleranceConfig = DEFAULT_TOL) -> set[SymmetryType]:
    """Symmetry types whose realization identities hold within tolerance.

    symmetric:        A = A^T,        B = C^T,   D = D^T
    Hamiltonian:      (AJ)^T = AJ,    JB = C^T,  D = D^T   (n even)
    skew-Hamiltonian: A = -A^T,       B = C^T,   D = -D^T
    skew-symmetric:   (AJ)^T = -AJ,   JB = C^T,  D = -D^T  (n even)
    """
    eps = tol.residual_tol
    out: set[SymmetryType] = set()
    A, B, C, D = r.A, r.B, r.C, r.D
    d_sym = _defect(D, D.T) <= eps
    d_skew = _defect(D, -D.T) <= eps
    if _defect(A, A.T) <= eps and _defect(B, C.T) <= eps and d_sym:
        out.add(SymmetryType.SYMMETRIC)
    if _defect(A, -A.T) <= eps and _defect(B, C.T) <= eps and d_skew:
        out.add(SymmetryType.SKEW_HAMILTONIAN)
    if r.n % 2 == 0:
        J = standard_form("symplectic", r.n // 2)
        AJ = A @ J
        if _defect(AJ, AJ.T) <= eps and _defect(J @ B, C.T) <= eps and d_sym:
            out.add(SymmetryType.HAMILTONIAN)
        if _defect(AJ, -AJ.T) <= eps and _defect(J @ B, C.T) <= eps and d_skew:
            out.add(SymmetryType.SKEW_SYMMETRIC)
    return out


_MAX_RESAMPLE = 50


def _safe_probe_points(r: Realization, probe: TransferProbe,
                       rng: np.random.Generator,
                       tol: ToleranceConfig) -> list[complex]:
    """Probe points kept away from the spectrum of A (and of -A)."""
    if r.n == 0:
        return list(probe.sample_points)
    eigs = np.linalg.eigvals(r.A)
    margin = 1e-6 * (1.0 + float(np.max(np.abs(eigs))))
    scale = 1.0 + float(np.max(np.abs(eigs)))

    def ok(s: complex) -> bool:
        return bool(
            np.min(np.abs(eigs - s)) > margin and np.min(np.abs(eigs + s)) > margin
        )

    points = []
    attempts = 0
    for s in probe.sample_points:
        while not ok(s):
            attempts += 1
            if attempts > _MAX_RESAMPLE:
                raise SingularAtSample("could not sample away from the poles")
            s = complex(scale * (rng.standard_normal() + 1j * rng.standard_normal()))
        points.append(s)
    return points


def classify_transfer(r: Realization, probe: TransferProbe | None = None,
                      seed: int = 0,
                      tol: ToleranceConfig = DEFAULT_TOL) -> set[SymmetryType]:
    """Symmetry types whose transfer identity holds at every probe point.

    The identity G(s)^T = ±G(±s) is rational of bounded degree, so holding
    at more sample points than the degree bound is conclusive; defects are
    measured relative to the size of G at the sample.
    """
    if probe is None:
        probe = TransferProbe.default(seed=seed)
    rng = np.random.default_rng((0x9E37, seed))
    points = _safe_probe_points(r, probe, rng, tol)
    alive = set(SymmetryType)
    for s in points:
        Gs = transfer_eval(r, s, tol)
        Gm = transfer_eval(r, -s, tol)
        scale = max(float(np.linalg.norm(Gs)), float(np.linalg.norm(Gm)), 1e-300)
        checks = {
            SymmetryType.SYMMETRIC: Gs,
            SymmetryType.HAMILTONIAN: Gm,
            SymmetryType.SKEW_HAMILTONIAN: -Gm,
            SymmetryType.SKEW_SYMMETRIC: -Gs,
        }
        for t in list(alive):
            if float(np.linalg.norm(Gs.T - checks[t])) > probe.tol * scale:
                alive.discard(t)
        if not alive:
            break
    return alive


# ---------------------------------------------------------------------------
# Kalman transform and symmetrization


def kalman_transform(r1: Realization, r2: Realization,
                     tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Unique X with (X^{-1}A1X, X^{-1}B1, C1X, D1) = (A2, B2, C2, D2).

    Solved in least squares from X Ctrb(A2,B2) = Ctrb(A1,B1) and verified
    on all four identities; both inputs must be minimal realizations of the
    same transfer function.
    """
    if (r1.n, r1.m) != (r2.n, r2.m):
        raise NotEquivalent("realizations have different dimensions")
    for r in (r1, r2):
        if not is_minimal(r, tol):
            raise NotMinimal("kalman_transform requires minimal realizations")
    c1 = controllability_matrix(r1.A, r1.B)
    c2 = controllability_matrix(r2.A, r2.B)
    X, *_ = np.linalg.lstsq(c2.T, c1.T, rcond=None)
    X = X.T
    eps = tol.residual_tol
    checks = (
        _defect(r1.A @ X, X @ r2.A),
        _defect(X @ r2.B, r1.B),
        _defect(r1.C @ X, r2.C),
        _defect(r1.D, r2.D),
    )
    if max(checks) > eps:
        raise NotEquivalent(
            f"realizations are not state-space equivalent (defects {checks})"
        )
    return X


def _companion(r: Realization, target: SymmetryType) -> Realization:
    """The transpose-flavored realization of the same transfer function."""
    A, B, C, D = r.A, r.B, r.C, r.D
    if target is SymmetryType.SYMMETRIC:
        return Realization(A.T, C.T, B.T, D.T)
    if target is SymmetryType.SKEW_HAMILTONIAN:
        return Realization(-A.T, C.T, B.T, -D.T)
    if target is SymmetryType.HAMILTONIAN:
        return Realization(-A.T, -C.T, B.T, D.T)
    J = standard_form("symplectic", r.n // 2)
    return Realization(-(J @ A @ J).T, (C @ J).T, (J @ B).T, -D.T)


def symmetrize(r: Realization, target: SymmetryType,
               tol: ToleranceConfig = DEFAULT_TOL, seed: int = 0) -> Realization:
    """Minimal realization of the same transfer function in structured form.

    Follows the uniqueness argument: the transpose-flavored companion
    realization of G equals X.(A,B,C,D) for a unique X which is symmetric
    (symmetric / skew-Hamiltonian targets) or for which a skew-symmetric
    matrix appears (X itself for Hamiltonian, JX for skew-symmetric); a
    congruence factor Y of that matrix turns (YAY^{-1}, YB, CY^{-1}, D)
    into a realization with the target's structure.  The structural
    identities and transfer equality are verified before returning;
    failures raise ``VerificationFailed`` rather than passing silently.
    """
    if target.needs_even_state_dim and r.n % 2:
        raise ParityError(f"{target.value} requires an even state dimension")
    if r.n == 0:
        if target in classify_realization(r, tol):
            return r
        raise SymmetryMismatch("static system does not carry the target symmetry")
    if not is_minimal(r, tol):
        raise NotMinimal("symmetrize requires a minimal realization")
    if target not in classify_transfer(r, seed=seed, tol=tol):
        raise SymmetryMismatch(
            f"transfer function does not have {target.value} symmetry"
        )
    X = kalman_transform(_companion(r, target), r, tol)
    nrm = float(np.linalg.norm(X))
    if target in (SymmetryType.SYMMETRIC, SymmetryType.SKEW_HAMILTONIAN):
        if np.linalg.norm(X - X.T) > 1e-6 * nrm:
            raise VerificationFailed("transform lost its expected symmetry")
        Y = takagi_symmetric((X + X.T) / 2, tol)
    elif target is SymmetryType.HAMILTONIAN:
        if np.linalg.norm(X + X.T) > 1e-6 * nrm:
            raise VerificationFailed("transform lost its expected skew-symmetry")
        Y = takagi_skew(-(X - X.T) / 2, tol)
    else:  # skew-symmetric
        J = standard_form("symplectic", r.n // 2)
        JX = J @ X
        if np.linalg.norm(JX + JX.T) > 1e-6 * max(nrm, 1.0):
            raise VerificationFailed("transform lost its expected skew-symmetry")
        Y = takagi_skew((JX - JX.T) / 2, tol)
    yinv = np.linalg.inv(Y)
    out = Realization(Y @ r.A @ yinv, Y @ r.B, r.C @ yinv, r.D, symmetry=target)
    if target not in classify_realization(out, tol):
        raise VerificationFailed(
            f"synthesized realization misses the {target.value} identities"
        )
    probe = TransferProbe.default(seed=seed, tol=tol.residual_tol)
    rng = np.random.default_rng((0x51AB, seed))
    for s in _safe_probe_points(r, probe, rng, tol):
        g0 = transfer_eval(r, s, tol)
        g1 = transfer_eval(out, s, tol)
        if _defect(g0, g1) > tol.residual_tol:
            raise VerificationFailed("synthesized realization changed the transfer")
    return out


@dataclass(frozen=True)
class GroupCheck:
    verdict: str  # "orthogonal" | "symplectic" | "neither"
    orthogonal_defect: float
    symplectic_defect: float | None


def transform_group_check(r1: Realization, r2: Realization, target: SymmetryType,
                          tol: ToleranceConfig = DEFAULT_TOL,
                          defect_tol: float = 1e-7) -> GroupCheck:
    """Classify the Kalman transform between structured realizations.

    For symmetric and skew-Hamiltonian transfer functions the transform
    between two structured minimal realizations is orthogonal (X^T X = I);
    for Hamiltonian and skew-symmetric ones it is symplectic (X^T J X = J).
    """
    X = kalman_transform(r1, r2, tol)
    n = r1.n
    o_defect = float(np.linalg.norm(X.T @ X - np.eye(n)))
    s_defect = None
    if n % 2 == 0:
        J = standard_form("symplectic", n // 2)
        s_defect = float(np.linalg.norm(X.T @ J @ X - J))
    expect_orth = target in (SymmetryType.SYMMETRIC, SymmetryType.SKEW_HAMILTONIAN)
    order = ("orthogonal", "symplectic") if expect_orth else ("symplectic", "orthogonal")
    for verdict in order:
        defect = o_defect if verdict == "orthogonal" else s_defect
        if defect is not None and defect <= defect_tol:
            return GroupCheck(verdict, o_defect, s_defect)
    return GroupCheck("neither", o_defect, s_defect)


# ---------------------------------------------------------------------------
# McMillan degree and moduli dimensions


def mcmillan_degree(markov, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Rank of the block Hankel matrix of Markov parameters.

    ``markov`` lists CB, CAB, CA^2B, ... of a strictly proper transfer
    function and must be long enough that the Hankel rank saturates; a
    full-rank Hankel means the data window cannot certify the degree and
    raises ``InsufficientData``.
    """
    mats = [as_cmatrix(g) for g in markov]
    if len(mats) < 3:
        raise InsufficientData("need at least three Markov parameters")
    rows = (len(mats) + 1) // 2
    cols = len(mats) + 1 - rows
    H = np.block([[mats[i + j] for j in range(cols)] for i in range(rows)])
    rank = numerical_rank(H, tol.rank_tol)
    if rank == min(H.shape):
        raise InsufficientData("block Hankel matrix is full rank; add parameters")
    return rank


def moduli_dimension(sym_type: SymmetryType, m: int, n: int) -> int:
    """Dimension of the space of m x m transfer functions of one symmetry
    type and McMillan degree n (complex parameters)."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if sym_type.needs_even_state_dim and n % 2:
        raise ParityError(f"{sym_type.value} requires even McMillan degree")
    if sym_type is SymmetryType.SYMMETRIC:
        return (m + 1) * n + math.comb(m + 1, 2)
    if sym_type is SymmetryType.HAMILTONIAN:
        return m * n + math.comb(m + 1, 2)
    if sym_type is SymmetryType.SKEW_HAMILTONIAN:
        return m * n + math.comb(m, 2)
    return (m - 1) * n + math.comb(m, 2)
