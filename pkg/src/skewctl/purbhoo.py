"""An explicit real skew-symmetric system whose feedback laws are all real.

The construction starts from a rational normal curve written so that the
standard split symmetric form pairs its derivatives: the m-plane spanned by
the first m-1 derivatives plus a corrected top derivative is isotropic for
every parameter value.  Clearing denominators of the frame at 1/s gives a
polynomial m x 2m matrix [D(s) : N(s)] whose row space is still isotropic
and which is a left coprime factorization of a strictly proper real
skew-symmetric transfer function G(s) = D(s)^{-1} N(s) of McMillan degree
m(m-1).  Placing any C(m,2) distinct real poles on this system yields only
real skew-symmetric feedback laws, and exactly as many of them as the
general complex count.

The transfer function is materialized through its Markov coefficients
(finite here: all poles sit at the origin) and a Ho-Kalman factorization of
the block Hankel matrix, which directly produces a minimal real
realization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, VerificationFailed
from .matcore import DEFAULT_TOL, Poly, PolyMatrix, ToleranceConfig
from .sysreal import (
    Realization,
    SymmetryType,
    classify_transfer,
    is_minimal,
    markov_parameters,
    mcmillan_degree,
)
from .feedback import FeedbackProblem, SolutionSet, place_poles

__all__ = [
    "OsculatingSystem",
    "gamma_curve",
    "gamma_monomials",
    "osculating_frame",
    "k_matrix",
    "purbhoo_transfer",
    "reality_experiment",
]

_SQRT2 = math.sqrt(2.0)


def gamma_monomials(m: int) -> list[tuple[float, int]]:
    """The 2m curve components as (coefficient, power) monomials.

    Components 1..m-1 are s^(i-1)/(i-1)!, component m carries an extra
    1/sqrt(2); components m+1..2m-1 are (-s)^d/d! for d = 2m-2 down to m,
    and component 2m is (-s)^(m-1)/(m-1)! / sqrt(2).
    """
    if m < 2:
        raise InvalidParams("need m >= 2")
    comps: list[tuple[float, int]] = []
    for i in range(1, m):
        d = i - 1
        comps.append((1.0 / math.factorial(d), d))
    comps.append((1.0 / (math.factorial(m - 1) * _SQRT2), m - 1))
    for i in range(1, m):
        d = 2 * m - 1 - i
        comps.append(((-1.0) ** d / math.factorial(d), d))
    d = m - 1
    comps.append(((-1.0) ** d / (math.factorial(d) * _SQRT2), d))
    return comps


def gamma_curve(m: int, s: complex) -> np.ndarray:
    """Evaluate the rational normal curve at s."""
    return np.array([c * complex(s) ** d for c, d in gamma_monomials(m)],
                    dtype=np.complex128)


def _derived_monomials(m: int, order: int) -> list[tuple[float, int]]:
    """Order-th derivative of the curve, still componentwise monomial."""
    out = []
    for c, d in gamma_monomials(m):
        if d < order:
            out.append((0.0, 0))
        else:
            fall = math.factorial(d) // math.factorial(d - order)
            out.append((c * fall, d - order))
    return out


def _frame_monomials(m: int) -> list[list[tuple[float, int]]]:
    """Monomial components of the m frame vectors.

    The first m-1 vectors are derivatives of the curve; the last one adds
    (e_m + (-1)^m e_2m)/sqrt(2) to the (m-1)-st derivative, the sign being
    the one that keeps the span isotropic (the pairing of component m with
    component 2m must cancel).
    """
    rows = [_derived_monomials(m, k) for k in range(m)]
    last = rows[m - 1]
    corr = 1.0 / _SQRT2
    sign = (-1.0) ** m

    def add_const(mono, value):
        c, d = mono
        if d == 0:
            return (c + value, 0)
        if c == 0.0:
            return (value, 0)
        raise AssertionError("correction collides with a non-constant term")

    last[m - 1] = add_const(last[m - 1], corr)
    last[2 * m - 1] = add_const(last[2 * m - 1], sign * corr)
    return rows


def osculating_frame(m: int, s: complex) -> np.ndarray:
    """The m x 2m frame spanning the isotropic plane attached to s."""
    rows = _frame_monomials(m)
    out = np.zeros((m, 2 * m), dtype=np.complex128)
    for i, row in enumerate(rows):
        for j, (c, d) in enumerate(row):
            out[i, j] = c * complex(s) ** d
    return out


def k_matrix(m: int) -> PolyMatrix:
    """Polynomial m x 2m matrix with rows s^(2m-1-i) * v_i(1/s).

    Row i substitutes 1/s into the i-th frame vector and clears
    denominators; every entry is a polynomial because the frame components
    have degree at most 2m-1-i.
    """
    rows = _frame_monomials(m)
    entries = []
    for i, row in enumerate(rows, start=1):
        shift = 2 * m - 1 - i
        for c, d in row:
            power = shift - d
            if c == 0.0:
                entries.append(Poly())
            else:
                if power < 0:
                    raise AssertionError("denominator clearing failed")
                entries.append(Poly.monomial(c, power))
    return PolyMatrix(m, 2 * m, tuple(entries))


@dataclass(frozen=True)
class OsculatingSystem:
    """The curve system: polynomial factorization plus a minimal realization.

    ``k_poly`` is [d_part : n_part]; ``markov`` lists the finitely many
    nonzero coefficients of G(s) = d_part(s)^{-1} n_part(s) at infinity,
    and ``realization`` is the minimal real state-space model built from
    them (all poles at the origin, state dimension m(m-1)).
    """

    m: int
    k_poly: PolyMatrix
    d_part: PolyMatrix
    n_part: PolyMatrix
    markov: tuple[np.ndarray, ...]
    realization: Realization


def _laurent_table(m: int, d_part: PolyMatrix, n_part: PolyMatrix,
                   tol: ToleranceConfig) -> list[np.ndarray]:
    """Markov coefficients of D^{-1} N via the column-degree structure.

    D(s) factors exactly as V diag(s^(2m-2), ..., s^m, s^(m-1)) with a
    constant invertible V, so D^{-1} N is a finite Laurent series; entry
    (i,j) of G is s^(-(2m-1-i)) times a polynomial.  Positive or constant
    powers of s must cancel for strict properness, which is verified.
    """
    col_deg = [2 * m - 1 - (j + 1) for j in range(m)]
    V = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            poly = d_part.entry(i, j)
            for k, c in enumerate(poly.coeffs):
                if c == 0:
                    continue
                if k != col_deg[j]:
                    raise VerificationFailed("unexpected degree pattern in D(s)")
                V[i, j] = c.real
    P = [[Poly() for _ in range(m)] for _ in range(m)]
    Vinv = np.linalg.inv(V)
    for i in range(m):
        for j in range(m):
            acc = Poly()
            for k in range(m):
                acc = acc + Vinv[i, k] * n_part.entry(k, j)
            P[i][j] = acc
    markov = [np.zeros((m, m)) for _ in range(2 * m - 2)]
    for i in range(m):
        shift = 2 * m - 1 - (i + 1)  # G[i,j] = s^-shift * P[i][j]
        for j in range(m):
            for k, c in enumerate(P[i][j].coeffs):
                power = k - shift
                if power >= 0:
                    if abs(c) > tol.residual_tol:
                        raise VerificationFailed("G(s) is not strictly proper")
                    continue
                markov[-power - 1][i, j] = c.real
                if abs(c.imag) > tol.residual_tol:
                    raise VerificationFailed("G(s) is not real")
    return markov


def _ho_kalman(markov: list[np.ndarray], order: int,
               tol: ToleranceConfig) -> Realization:
    """Minimal real realization from a finite Markov sequence."""
    m = markov[0].shape[0]
    blocks = len(markov)

    def block_entry(k: int) -> np.ndarray:
        return markov[k] if k < blocks else np.zeros((m, m))

    H = np.block([[block_entry(i + j) for j in range(blocks)]
                  for i in range(blocks)])
    Hup = np.block([[block_entry(i + j + 1) for j in range(blocks)]
                    for i in range(blocks)])
    U, sv, Vt = np.linalg.svd(H)
    rank = int(np.sum(sv > tol.rank_tol * sv[0]))
    if rank != order:
        raise VerificationFailed(
            f"Hankel rank {rank} does not match the expected degree {order}"
        )
    root = np.sqrt(sv[:rank])
    obs = U[:, :rank] * root[np.newaxis, :]
    ctr = root[:, np.newaxis] * Vt[:rank]
    A = (U[:, :rank] / root[np.newaxis, :]).T @ Hup @ (Vt[:rank] / root[:, np.newaxis]).T
    B = ctr[:, :m]
    C = obs[:m, :]
    return Realization(A, B, C, np.zeros((m, m)))


def purbhoo_transfer(m: int, tol: ToleranceConfig = DEFAULT_TOL) -> OsculatingSystem:
    """Build and verify the explicit all-real-feedback system.

    Verifies, and raises ``VerificationFailed`` otherwise: the transfer
    function is real and strictly proper, the realization is minimal and
    reproduces the Markov coefficients, the transfer function is
    skew-symmetric, and the McMillan degree equals m(m-1).
    """
    K = k_matrix(m)
    d_part = K.block(range(m), range(m))
    n_part = K.block(range(m), range(m, 2 * m))
    markov = _laurent_table(m, d_part, n_part, tol)
    order = m * (m - 1)
    real = _ho_kalman(markov, order, tol)
    for got, want in zip(markov_parameters(real, len(markov)), markov):
        if np.linalg.norm(got - want) > tol.residual_tol * max(
            1.0, float(np.linalg.norm(want))
        ):
            raise VerificationFailed("realization does not match the Markov data")
    if not is_minimal(real, tol):
        raise VerificationFailed("realization is not minimal")
    if np.max(np.abs(real.A.imag)) > 1e-10 or np.max(np.abs(real.B.imag)) > 1e-10:
        raise VerificationFailed("realization entries are not real")
    if mcmillan_degree(markov + [np.zeros((m, m))] * 3, tol) != order:
        raise VerificationFailed("McMillan degree mismatch")
    if SymmetryType.SKEW_SYMMETRIC not in classify_transfer(real, tol=tol):
        raise VerificationFailed("transfer function is not skew-symmetric")
    tagged = Realization(real.A, real.B, real.C, real.D,
                         symmetry=SymmetryType.SKEW_SYMMETRIC)
    return OsculatingSystem(m, K, d_part, n_part, tuple(markov), tagged)


def reality_experiment(m: int, poles, seed: int = 0,
                       max_starts: int | None = None,
                       tol: ToleranceConfig = DEFAULT_TOL,
                       threads: int = 1) -> SolutionSet:
    """Place distinct real poles on the curve system and report solutions.

    The expected outcome is the full complex count of feedback laws with
    every one real.  Poles at the origin are rejected since D(s) is
    singular there (the excluded plane sits at infinity).
    """
    values = [complex(p) for p in poles]
    if len(values) != math.comb(m, 2):
        raise InvalidParams(f"need exactly {math.comb(m, 2)} poles")
    for p in values:
        if abs(p.imag) > 0:
            raise InvalidParams("reality experiment expects real poles")
        if abs(p) < 1e-9:
            raise InvalidParams("poles at the origin are not placeable")
    system = purbhoo_transfer(m, tol)
    problem = FeedbackProblem(system.realization, SymmetryType.SKEW_SYMMETRIC,
                              tuple(values))
    return place_poles(problem, seed=seed, max_starts=max_starts, tol=tol,
                       threads=threads)
