"""Isotropic-plane geometry behind skew-symmetric feedback.

Standard bilinear forms on C^{2m}, annihilators and the induced involution
on m-planes, isotropy tests characterizing the Lagrangian and orthogonal
Grassmannians, the stacked-determinant intersection condition linking a
feedback matrix to the poles it places, and the exact count of
skew-symmetric feedback laws in the square case.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InternalNonIntegral, SingularAtSample
from .matcore import DEFAULT_TOL, ToleranceConfig, as_cmatrix, numerical_rank, standard_form
from .sysreal import Realization, transfer_eval

__all__ = [
    "FormKind",
    "PlaneBasis",
    "GeometryReport",
    "annihilator",
    "isotropic_check",
    "intersection_margin",
    "intersection_test",
    "geometry_identity_check",
    "subspace_distance",
    "dm",
]


class FormKind(enum.Enum):
    """Nondegenerate bilinear form <x,y> = x^T A y with A = O or A = J."""

    SYMMETRIC_O = "symmetric-O"
    SKEW_J = "skew-J"

    def matrix(self, half_dim: int) -> np.ndarray:
        kind = "split-orthogonal" if self is FormKind.SYMMETRIC_O else "symplectic"
        return standard_form(kind, half_dim)


@dataclass(frozen=True)
class PlaneBasis:
    """k-plane in C^{2m} given as the row space of a full-rank k x 2m basis."""

    basis: np.ndarray

    def __post_init__(self):
        b = as_cmatrix(self.basis)
        if b.shape[1] % 2:
            raise DimensionMismatch("ambient dimension must be even")
        if numerical_rank(b, DEFAULT_TOL.rank_tol) != b.shape[0]:
            raise ValueError("basis rows are not numerically independent")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def graph(cls, F, side: str = "right") -> "PlaneBasis":
        """Row space of [I : F] (side="right") or [F : I] (side="left")."""
        F = as_cmatrix(F)
        eye = np.eye(F.shape[0], dtype=np.complex128)
        stack = (eye, F) if side == "right" else (F, eye)
        return cls(np.hstack(stack))


def annihilator(H: PlaneBasis, form: FormKind,
                tol: ToleranceConfig = DEFAULT_TOL) -> PlaneBasis:
    """All v with v^T A h^T = 0 for every row h of H; a (2m-k)-plane."""
    A = form.matrix(H.ambient // 2)
    M = H.basis @ A.T
    _, sv, vh = np.linalg.svd(M)
    rank = int(np.sum(sv > tol.rank_tol * sv[0])) if sv.size and sv[0] > 0 else 0
    null_basis = vh[rank:].conj()
    return PlaneBasis(null_basis)


def isotropic_check(H: PlaneBasis, form: FormKind, tol: float = 1e-8) -> bool:
    """True iff the form vanishes on H: ||H A H^T|| <= tol ||H||^2."""
    A = form.matrix(H.ambient // 2)
    gram = H.basis @ A @ H.basis.T
    scale = float(np.linalg.norm(H.basis)) ** 2
    return float(np.linalg.norm(gram)) <= tol * max(scale, 1e-300)


def _feedback_matrix(F) -> np.ndarray:
    return as_cmatrix(F.matrix if hasattr(F, "matrix") else F)


def intersection_margin(K: PlaneBasis, F) -> float:
    """Relative smallest singular value of [K ; F I]; ~0 means intersection."""
    Fm = _feedback_matrix(F)
    m = Fm.shape[0]
    if K.ambient != 2 * m or K.dim != m:
        raise DimensionMismatch("K must be an m-plane in C^(2m)")
    stacked = np.vstack([K.basis, np.hstack([Fm, np.eye(m, dtype=np.complex128)])])
    sv = np.linalg.svd(stacked, compute_uv=False)
    return float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0


def intersection_test(K: PlaneBasis, F, tol: float = 1e-8) -> bool:
    """True iff K meets the row space of [F : I] nontrivially.

    The m-planes intersect exactly when stacking their bases drops rank;
    the test thresholds the relative smallest singular value.
    """
    return intersection_margin(K, F) <= tol


@dataclass(frozen=True)
class GeometryReport:
    samples: tuple[complex, ...]
    deviations: tuple[float, ...]
    max_deviation: float


def geometry_identity_check(r: Realization, F, samples,
                            tol: ToleranceConfig = DEFAULT_TOL) -> GeometryReport:
    """Check phi(s) = det(sI-A) det[[I, G(s)], [F, I]] at each sample.

    Both sides are evaluated independently: the left through the
    closed-loop matrix A + BFC, the right through the transfer function.
    Returns the relative deviations; samples at eigenvalues of A raise.
    """
    if not r.strictly_proper:
        raise ValueError("geometry identity applies to strictly proper systems")
    Fm = _feedback_matrix(F)
    m = r.m
    eye_n = np.eye(r.n, dtype=np.complex128)
    eye_m = np.eye(m, dtype=np.complex128)
    closed = r.A + r.B @ Fm @ r.C
    devs = []
    pts = [complex(s) for s in samples]
    for s in pts:
        G = transfer_eval(r, s, tol)  # raises SingularAtSample near poles
        lhs = complex(np.linalg.det(s * eye_n - closed))
        block = np.block([[eye_m, G], [Fm, eye_m]])
        rhs = complex(np.linalg.det(s * eye_n - r.A)) * complex(np.linalg.det(block))
        devs.append(abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return GeometryReport(tuple(pts), tuple(devs), max(devs) if devs else 0.0)


def subspace_distance(H1: PlaneBasis, H2: PlaneBasis) -> float:
    """Sine of the largest principal angle between two subspaces.

    Computed from the projection residual Q1 - (Q1 Q2*) Q2 over
    orthonormalized bases, which stays accurate for tiny angles where the
    cosine route loses half the digits.
    """
    if H1.ambient != H2.ambient or H1.dim != H2.dim:
        raise DimensionMismatch("subspaces live in different Grassmannians")
    q1 = np.linalg.svd(H1.basis, full_matrices=False)[2]
    q2 = np.linalg.svd(H2.basis, full_matrices=False)[2]
    resid = q1 - (q1 @ q2.conj().T) @ q2
    return min(1.0, float(np.linalg.norm(resid, 2)))


def dm(m: int) -> int:
    """Number of skew-symmetric feedback laws placing C(m,2) poles.

    Exact integer evaluation of C(m,2)! * (1! 2! ... (m-2)!) divided by
    (1! 3! ... (2m-3)!); the quotient is provably integral, so a nonzero
    remainder signals an implementation bug.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    num = math.factorial(math.comb(m, 2))
    for k in range(1, m - 1):
        num *= math.factorial(k)
    den = 1
    for k in range(1, m):
        den *= math.factorial(2 * k - 1)
    q, rem = divmod(num, den)
    if rem:
        raise InternalNonIntegral(f"d_{m} evaluation left remainder {rem}")
    return q
