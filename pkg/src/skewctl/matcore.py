"""Dense complex linear algebra shared by every other module.

Provides the standard symplectic and split-orthogonal forms, a pivoted
Pfaffian, Faddeev-LeVerrier characteristic polynomials, congruence
factorizations of symmetric and skew-symmetric matrices, polynomial square
roots, and Newton-identity conversions between coefficients and power sums.

All matrices are plain ``numpy`` arrays with dtype ``complex128``; univariate
polynomials are immutable :class:`Poly` values with ascending coefficients.
Every public function is a pure function of its inputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    NotASquare,
    NotSkewSymmetric,
    NotSymmetric,
    OddDimension,
    Singular,
)

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "Poly",
    "PolyMatrix",
    "as_cmatrix",
    "standard_form",
    "pfaffian",
    "char_poly",
    "takagi_symmetric",
    "takagi_skew",
    "poly_sqrt",
    "coeffs_to_power_sums",
    "power_sums_to_coeffs",
]

_ENV_PREFIX = "SKEWCTL_"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used throughout the library.

    ``rank_tol`` is a relative singular-value cutoff, ``residual_tol`` a
    relative residual bound for verified identities, and ``dedupe_radius``
    the coordinate distance below which two feedback solutions are merged.
    """

    rank_tol: float = 1e-10
    residual_tol: float = 1e-8
    dedupe_radius: float = 1e-6

    def __post_init__(self):
        for name in ("rank_tol", "residual_tol", "dedupe_radius"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def from_env(cls) -> "ToleranceConfig":
        """Build a config honoring SKEWCTL_RANK_TOL etc. when set."""
        kwargs = {}
        for name in ("rank_tol", "residual_tol", "dedupe_radius"):
            raw = os.environ.get(_ENV_PREFIX + name.upper())
            if raw is not None:
                kwargs[name] = float(raw)
        return cls(**kwargs)


DEFAULT_TOL = ToleranceConfig()


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries."""
    arr = np.array(a, dtype=np.complex128, order="C")
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={arr.ndim}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def _frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a)) if a.size else 0.0


def numerical_rank(M, rank_tol: float = DEFAULT_TOL.rank_tol) -> int:
    """Rank by relative singular-value cutoff."""
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rank_tol * sv[0]))


# ---------------------------------------------------------------------------
# polynomials


def _trim(coeffs) -> tuple[complex, ...]:
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Univariate complex polynomial, coefficients in ascending degree.

    The zero polynomial is represented by an empty coefficient tuple; the
    leading coefficient of a nonzero polynomial is always nonzero (exact
    trailing zeros are trimmed at construction).
    """

    coeffs: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, coeff: complex, power: int) -> "Poly":
        if power < 0:
            raise ValueError("power must be nonnegative")
        return cls((0,) * power + (coeff,))

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-complex(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, s: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(tuple(out))
        return Poly(tuple(complex(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def reflect(self) -> "Poly":
        """Return p(-s)."""
        return Poly(tuple((-1) ** k * c for k, c in enumerate(self.coeffs)))

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs))

    def allclose(self, other: "Poly", tol: float) -> bool:
        """Coefficient-wise comparison at absolute tolerance ``tol``."""
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0j,) * (n - len(a))
        b = b + (0j,) * (n - len(b))
        return all(abs(x - y) <= tol for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix with :class:`Poly` entries, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match rows*cols")

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]

    def __call__(self, s: complex) -> np.ndarray:
        out = np.empty((self.rows, self.cols), dtype=np.complex128)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self.entry(i, j)(s)
        return out

    def block(self, row_range, col_range) -> "PolyMatrix":
        rows = list(row_range)
        cols = list(col_range)
        ent = tuple(self.entry(i, j) for i in rows for j in cols)
        return PolyMatrix(len(rows), len(cols), ent)


# ---------------------------------------------------------------------------
# standard forms


def standard_form(kind: str, half_dim: int) -> np.ndarray:
    """Return J_{2m} = [[0,I],[-I,0]] or O_{2m} = [[0,I],[I,0]].

    ``kind`` is ``"symplectic"`` for J or ``"split-orthogonal"`` for O,
    ``half_dim`` is m.  J satisfies J^T = -J = J^{-1}; O satisfies
    O^T = O = O^{-1}.
    """
    if half_dim < 0:
        raise ValueError("half_dim must be nonnegative")
    m = half_dim
    eye = np.eye(m, dtype=np.complex128)
    zero = np.zeros((m, m), dtype=np.complex128)
    if kind == "symplectic":
        return np.block([[zero, eye], [-eye, zero]])
    if kind == "split-orthogonal":
        return np.block([[zero, eye], [eye, zero]])
    raise ValueError(f"unknown form kind: {kind!r}")


def _check_skew(M: np.ndarray, rank_tol: float, ctx: str) -> np.ndarray:
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{ctx}: matrix must be square")
    if _frob(M + M.T) > rank_tol * max(_frob(M), 1e-300):
        raise NotSkewSymmetric(f"{ctx}: matrix is not skew-symmetric")
    return (M - M.T) / 2


# ---------------------------------------------------------------------------
# Pfaffian


def pfaffian(M, tol: ToleranceConfig = DEFAULT_TOL) -> complex:
    """Pfaffian of an even-dimensional skew-symmetric matrix.

    Computed by skew-symmetric Gaussian elimination with partial pivoting
    on the working column; row/column transpositions flip the sign.  The
    result satisfies pf(M)^2 = det(M).
    """
    A = as_cmatrix(M)
    n = A.shape[0]
    if n % 2:
        raise OddDimension("Pfaffian requires even dimension")
    return _pfaffian_core(_check_skew(A, tol.rank_tol, "pfaffian"))


def _pfaffian_core(A: np.ndarray) -> complex:
    """Elimination loop on a writable, exactly skew-symmetric array."""
    n = A.shape[0]
    pf = 1.0 + 0j
    for k in range(0, n - 1, 2):
        # pivot: largest-magnitude entry in column k below the diagonal
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if A[kp, k] == 0:
            return 0j
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, A[k + 2:, k + 1])
            A[k + 2:, k + 2:] -= np.outer(A[k + 2:, k + 1], tau)
    return complex(pf)


# ---------------------------------------------------------------------------
# characteristic polynomial

_FADDEEV_MAX = 30


def char_poly(A) -> Poly:
    """Monic characteristic polynomial det(sI - A), ascending coefficients.

    Uses the Faddeev-LeVerrier trace recursion, which is exact on clean
    desk-scale matrices, and validates the result against LU determinant
    evaluations at two spectral-scale sample points; when the recursion
    loses accuracy (wide eigenvalue spread) or n exceeds 30, the product
    over QR-computed eigenvalues is used instead.
    """
    A = as_cmatrix(A)
    n = A.shape[0]
    if n != A.shape[1]:
        raise DimensionMismatch("char_poly requires a square matrix")
    if n == 0:
        return Poly((1,))
    if n > _FADDEEV_MAX:
        return Poly.from_roots(np.linalg.eigvals(A))
    desc = [1.0 + 0j]  # descending coefficients, leading first
    M = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        AM = A @ M
        ck = -np.trace(AM) / k
        desc.append(complex(ck))
        M = AM + ck * np.eye(n, dtype=np.complex128)
    p = Poly(tuple(reversed(desc)))
    radius = max(float(np.linalg.norm(A, 2)), 1.0)
    eye = np.eye(n, dtype=np.complex128)
    # determinant spot checks spread over magnitude decades, so an error in
    # any coefficient band is visible no matter how wide the spectrum is
    samples = [0.0] + [
        radius * mag * (0.53 - 0.61j) for mag in (1.0, 0.1, 0.01, 1e-3, 1e-4)
    ]

    def check_error(poly: Poly) -> float:
        err = 0.0
        for s in samples:
            ref = complex(np.linalg.det(s * eye - A))
            err = max(err, abs(poly(s) - ref) / max(1.0, abs(ref), abs(poly(s))))
        return err

    fl_err = check_error(p)
    if fl_err <= 1e-11:
        return p
    alt = Poly.from_roots(np.linalg.eigvals(A))
    return alt if check_error(alt) < fl_err else p


# ---------------------------------------------------------------------------
# congruence factorizations


def _check_square_invertible(X: np.ndarray, rank_tol: float, ctx: str) -> None:
    if X.shape[0] != X.shape[1]:
        raise DimensionMismatch(f"{ctx}: matrix must be square")
    if X.shape[0] == 0:
        return
    sv = np.linalg.svd(X, compute_uv=False)
    if sv[-1] <= rank_tol * sv[0] or sv[0] == 0:
        raise Singular(f"{ctx}: matrix is numerically singular")


def takagi_symmetric(X, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Factor an invertible complex symmetric X as Y^T Y with Y invertible.

    The factor is found by pivoted symmetric Gaussian elimination under
    congruence: diagonal pivots are scaled away by principal-branch square
    roots, and when the remaining diagonal is negligible a row/column
    addition manufactures a pivot from the largest off-diagonal entry.
    The output is one of many valid factors; only the residual
    ||Y^T Y - X|| matters.
    """
    X = as_cmatrix(X)
    n = X.shape[0]
    if n != X.shape[1]:
        raise DimensionMismatch("takagi_symmetric requires a square matrix")
    if _frob(X - X.T) > tol.rank_tol * max(_frob(X), 1e-300):
        raise NotSymmetric("takagi_symmetric: matrix is not symmetric")
    _check_square_invertible(X, tol.rank_tol, "takagi_symmetric")
    A = ((X + X.T) / 2).copy()
    S = np.eye(n, dtype=np.complex128)  # accumulated column ops: S^T X S -> I
    for k in range(n):
        sub = A[k:, k:]
        d = k + int(np.argmax(np.abs(np.diagonal(sub))))
        off = np.abs(np.triu(sub, 1))
        max_off = off.max() if off.size else 0.0
        if abs(A[d, d]) < 0.5 * max_off:
            # no usable diagonal pivot: add row/col j into i, making the
            # (i,i) entry 2*A[i,j] + A[i,i] + A[j,j]
            i, j = np.unravel_index(int(np.argmax(off)), off.shape)
            i, j = k + int(i), k + int(j)
            A[:, i] += A[:, j]
            A[i, :] += A[j, :]
            S[:, i] += S[:, j]
            d = i
        if d != k:
            A[[k, d], :] = A[[d, k], :]
            A[:, [k, d]] = A[:, [d, k]]
            S[:, [k, d]] = S[:, [d, k]]
        p = A[k, k]
        if p == 0:
            raise Singular("takagi_symmetric: zero pivot")
        r = 1 / np.sqrt(p)  # principal branch
        A[:, k] *= r
        A[k, :] *= r
        S[:, k] *= r
        if k + 1 < n:
            v = A[k, k + 1:].copy()
            S[:, k + 1:] -= np.outer(S[:, k], v)
            A[k + 1:, k + 1:] -= np.outer(v, v)
            A[k, k + 1:] = 0
            A[k + 1:, k] = 0
    return np.linalg.inv(S)


def takagi_skew(Z, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Factor an invertible skew-symmetric Z (size 2l) as Y^T J Y.

    J is the standard symplectic form of the same size.  The factor comes
    from skew elimination under congruence into 2x2 blocks [[0,a],[-a,0]],
    followed by block scaling with 1/sqrt(a) and the pair-to-split
    permutation that turns the block pattern into J.
    """
    Z = as_cmatrix(Z)
    n = Z.shape[0]
    if n % 2:
        raise OddDimension("takagi_skew requires even dimension")
    A = _check_skew(Z, tol.rank_tol, "takagi_skew").copy()
    _check_square_invertible(Z, tol.rank_tol, "takagi_skew")
    S = np.eye(n, dtype=np.complex128)
    pivots = []
    for k in range(0, n - 1, 2):
        sub = np.abs(A[k:, k:])
        i, j = np.unravel_index(int(np.argmax(np.triu(sub, 1))), sub.shape)
        i, j = k + int(i), k + int(j)
        # i < j and i >= k, so the first swap never displaces index j
        for src, dst in ((i, k), (j, k + 1)):
            if src != dst:
                A[[dst, src], :] = A[[src, dst], :]
                A[:, [dst, src]] = A[:, [src, dst]]
                S[:, [dst, src]] = S[:, [src, dst]]
        a = A[k, k + 1]
        if a == 0:
            raise Singular("takagi_skew: matrix is numerically singular")
        if k + 2 < n:
            u = A[k, k + 2:].copy()
            w = A[k + 1, k + 2:].copy()
            alpha = -u / a
            beta = w / a
            S[:, k + 2:] += np.outer(S[:, k + 1], alpha) + np.outer(S[:, k], beta)
            A[k + 2:, k + 2:] -= (np.outer(u, w) - np.outer(w, u)) / a
            A[k, k + 2:] = 0
            A[k + 2:, k] = 0
            A[k + 1, k + 2:] = 0
            A[k + 2:, k + 1] = 0
        pivots.append(a)
    # scale each 2x2 block to [[0,1],[-1,0]], then permute pairs to split form
    scale = np.empty(n, dtype=np.complex128)
    for b, a in enumerate(pivots):
        scale[2 * b] = scale[2 * b + 1] = 1 / np.sqrt(a)
    S = S * scale[np.newaxis, :]
    half = n // 2
    P = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        sigma = 2 * i if i < half else 2 * (i - half) + 1
        P[sigma, i] = 1
    return np.linalg.inv(S @ P)


# ---------------------------------------------------------------------------
# polynomial square root


def poly_sqrt(p: Poly, tol: ToleranceConfig = DEFAULT_TOL) -> Poly:
    """Monic square root q of a monic even-degree polynomial p = q^2.

    The leading-coefficient recursion determines each coefficient of q from
    one coefficient of p and the previously found ones; the variable is
    rescaled to a Cauchy-style root bound first so the recursion stays
    conditioned.  A Gauss-Newton polish on the coefficient equations
    (solve 2 q delta = p - q^2 in least squares) follows, restoring the
    digits the recursion loses when root magnitudes are badly mixed.
    Raises ``NotASquare`` when the final residual exceeds
    ``residual_tol * ||p||`` (odd degree fails immediately).
    """
    d = p.degree
    if d < 0 or abs(p.coeffs[-1] - 1) > 1e-9:
        raise NotASquare("poly_sqrt requires a monic polynomial")
    if d % 2:
        raise NotASquare("odd-degree polynomial cannot be a square")
    half = d // 2
    sigma = max(
        [abs(p.coeffs[k]) ** (1.0 / (d - k)) for k in range(d)], default=1.0
    )
    sigma = max(sigma, 1e-300)
    cs = [p.coeffs[k] * sigma ** (k - d) for k in range(d + 1)]
    q = [0j] * (half + 1)
    q[half] = 1.0 + 0j
    for k in range(1, half + 1):
        acc = cs[d - k]
        for a in range(half - k + 1, half):
            b = d - k - a
            if half - k < b < half:
                acc -= q[a] * q[b]
        q[half - k] = acc / 2
    qp = Poly(tuple(q[j] * sigma ** (half - j) for j in range(half + 1)))
    best = (qp * qp - p).norm()
    for _ in range(4):
        if best <= 1e-15 * max(p.norm(), 1.0) or half == 0:
            break
        resid = p - qp * qp
        rhs = np.array(resid.coeffs + (0j,) * (d + 1 - len(resid.coeffs)))
        conv = np.zeros((d + 1, half), dtype=np.complex128)
        for j in range(half):
            for i, c in enumerate(qp.coeffs):
                conv[i + j, j] = 2 * c
        delta, *_ = np.linalg.lstsq(conv, rhs, rcond=None)
        candidate = qp + Poly(tuple(delta))
        res = (candidate * candidate - p).norm()
        if res >= best:
            break
        qp, best = candidate, res
    if not (qp * qp).allclose(p, tol.residual_tol * max(p.norm(), 1.0)):
        raise NotASquare("residual too large: polynomial is not a square")
    return qp


# ---------------------------------------------------------------------------
# Newton identities


def coeffs_to_power_sums(coeffs, degree: int) -> np.ndarray:
    """First ``degree`` power sums of the roots of a monic polynomial.

    ``coeffs`` is the ascending coefficient sequence (length degree+1, monic)
    or a :class:`Poly`.  Returns p_k = sum(root^k) for k = 1..degree via the
    Newton recurrences.
    """
    cs = coeffs.coeffs if isinstance(coeffs, Poly) else _trim(coeffs)
    if len(cs) != degree + 1:
        raise DegreeMismatch(
            f"expected {degree + 1} ascending coefficients, got {len(cs)}"
        )
    if abs(cs[-1] - 1) > 1e-9:
        raise DegreeMismatch("polynomial must be monic")
    # e_i = (-1)^i * coefficient of s^(degree-i)
    e = [(-1) ** i * cs[degree - i] for i in range(degree + 1)]
    p = np.zeros(degree, dtype=np.complex128)
    for k in range(1, degree + 1):
        acc = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            acc += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        p[k - 1] = acc
    return p


def power_sums_to_coeffs(sums, degree: int) -> np.ndarray:
    """Invert the Newton recurrences.

    Given the first k power sums of a degree-``degree`` monic polynomial,
    returns the monic ascending coefficient sequence when k = degree.  When
    k < degree only the k highest non-leading coefficients are determined;
    they are returned leading-first (coefficient of s^(degree-1) down to
    s^(degree-k)), and completing the polynomial is the caller's job.
    """
    p = [complex(v) for v in sums]
    k = len(p)
    if k > degree:
        raise DegreeMismatch("more power sums than the stated degree")
    e = [1.0 + 0j]
    for j in range(1, k + 1):
        acc = 0j
        for i in range(1, j + 1):
            acc += (-1) ** (i - 1) * e[j - i] * p[i - 1]
        e.append(acc / j)
    top = [(-1) ** i * e[i] for i in range(1, k + 1)]  # s^(d-1) .. s^(d-k)
    if k < degree:
        return np.array(top, dtype=np.complex128)
    asc = list(reversed(top)) + [1.0 + 0j]
    return np.array(asc, dtype=np.complex128)
