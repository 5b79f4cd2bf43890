"""Shared fixtures: random structured systems and scrambling helpers."""

import numpy as np

from skewctl.matcore import standard_form
from skewctl.sysreal import Realization, SymmetryType, is_minimal, transform


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_symmetric_matrix(rng, n):
    a = crandn(rng, n, n)
    return a + a.T


def random_skew_matrix(rng, n):
    a = crandn(rng, n, n)
    return a - a.T


def structured_realization(sym_type, n, m, rng, strictly_proper=True):
    """Random minimal realization carrying the requested structure.

    The A/B/C/D pattern follows the defining identities of each type;
    minimality holds almost surely and is rechecked (resampling would be
    overkill at these sizes).
    """
    if sym_type.needs_even_state_dim and n % 2:
        raise ValueError("even n required for this symmetry type")
    B = crandn(rng, n, m)
    if sym_type is SymmetryType.SYMMETRIC:
        A = random_symmetric_matrix(rng, n)
        C = B.T
        D = np.zeros((m, m)) if strictly_proper else random_symmetric_matrix(rng, m)
    elif sym_type is SymmetryType.SKEW_HAMILTONIAN:
        A = random_skew_matrix(rng, n)
        C = B.T
        D = np.zeros((m, m)) if strictly_proper else random_skew_matrix(rng, m)
    elif sym_type is SymmetryType.HAMILTONIAN:
        J = standard_form("symplectic", n // 2)
        A = -random_symmetric_matrix(rng, n) @ J
        C = (J @ B).T
        D = np.zeros((m, m)) if strictly_proper else random_symmetric_matrix(rng, m)
    else:  # skew-symmetric
        J = standard_form("symplectic", n // 2)
        A = -random_skew_matrix(rng, n) @ J
        C = (J @ B).T
        D = np.zeros((m, m)) if strictly_proper else random_skew_matrix(rng, m)
    r = Realization(A, B, C, D, symmetry=sym_type)
    assert is_minimal(r), "random structured system unexpectedly non-minimal"
    return r


def scramble(r, rng, scale=1.0):
    """Hide the structure behind a random change of basis."""
    n = r.n
    while True:
        X = scale * crandn(rng, n, n)
        if np.linalg.cond(X) < 100.0 * n:
            break
    out = transform(r, X)
    return Realization(out.A, out.B, out.C, out.D), X


def random_minimal(rng, n, m):
    """Unstructured random minimal realization (strictly proper)."""
    r = Realization(crandn(rng, n, n), crandn(rng, n, m),
                    crandn(rng, m, n), np.zeros((m, m)))
    assert is_minimal(r)
    return r


def random_symplectic(rng, half):
    """Product of shear and block-diagonal symplectic generators."""
    eye = np.eye(half)
    s = random_symmetric_matrix(rng, half) * 0.3
    t = random_symmetric_matrix(rng, half) * 0.3
    p = crandn(rng, half, half) * 0.5 + eye
    upper = np.block([[eye, s], [np.zeros((half, half)), eye]])
    lower = np.block([[eye, np.zeros((half, half))], [t, eye]])
    diag = np.block([
        [p, np.zeros((half, half))],
        [np.zeros((half, half)), np.linalg.inv(p).T],
    ])
    return upper @ diag @ lower
