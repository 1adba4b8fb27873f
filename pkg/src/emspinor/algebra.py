"""Dirac matrices in the standard (Dirac) representation and helpers.

All matrices are 4x4 ``complex128`` arrays with entries in {0, +-1, +-i}, so
products of them are exact in double precision. Returned arrays are
read-only; copy before mutating.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

__all__ = [
    "dirac_alpha",
    "anticommutator",
    "alpha_dot",
    "bilinear",
    "fierz_candidates",
    "ALPHA5_PRODUCT",
]

_ALPHA = {
    0: np.eye(4, dtype=complex),
    1: np.array(
        [[0, 0, 0, 1],
         [0, 0, 1, 0],
         [0, 1, 0, 0],
         [1, 0, 0, 0]], dtype=complex),
    2: np.array(
        [[0, 0, 0, -1j],
         [0, 0, 1j, 0],
         [0, -1j, 0, 0],
         [1j, 0, 0, 0]], dtype=complex),
    3: np.array(
        [[0, 0, 1, 0],
         [0, 0, 0, -1],
         [1, 0, 0, 0],
         [0, -1, 0, 0]], dtype=complex),
    4: np.diag([1, 1, -1, -1]).astype(complex),
}
for _m in _ALPHA.values():
    _m.setflags(write=False)

# Filled in lazily by _alpha5(); (factors, phase) of the selected product.
ALPHA5_PRODUCT: dict = {}


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=complex)
    m.setflags(write=False)
    return m


def fierz_candidates(n_samples: int = 1000, seed: int = 12345, tol: float = 1e-12):
    """Enumerate signed products of alpha_1..alpha_4 that satisfy the Fierz identity.

    Every product of a subset of {alpha_1, alpha_2, alpha_3, beta} is multiplied
    by each phase in {1, -1, i, -i}. Candidates must be Hermitian, square to
    the identity, and make

        (psi^+ psi)^2 - sum_k (psi^+ alpha_k psi)^2
            = (psi^+ beta psi)^2 + (psi^+ M psi)^2

    hold on ``n_samples`` random spinors to relative tolerance ``tol``.

    Returns a list of ``(factors, phase, matrix)`` sorted lexicographically by
    the flattened (real, imag) entries of the matrix.
    """
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=(n_samples, 4)) + 1j * rng.normal(size=(n_samples, 4))
    norm2 = bilinear(_ALPHA[0], psi)
    lhs = norm2**2 - sum(bilinear(_ALPHA[k], psi) ** 2 for k in (1, 2, 3))
    beta_term = bilinear(_ALPHA[4], psi) ** 2
    eye = np.eye(4)

    found = {}
    for r in range(5):
        for factors in itertools.combinations((1, 2, 3, 4), r):
            prod = np.eye(4, dtype=complex)
            for k in factors:
                prod = prod @ _ALPHA[k]
            for phase in (1, -1, 1j, -1j):
                m = phase * prod
                m = m + (0.0 + 0.0j)  # normalise signed zeros
                if not np.array_equal(m, m.conj().T):
                    continue
                if not np.array_equal(m @ m, eye):
                    continue
                rhs = beta_term + bilinear(m, psi) ** 2
                if np.max(np.abs(lhs - rhs) / norm2**2) >= tol:
                    continue
                key = tuple(np.column_stack([m.real.ravel(), m.imag.ravel()]).ravel())
                found.setdefault(key, (factors, phase, m))
    return [found[k] for k in sorted(found)]


@lru_cache(maxsize=1)
def _alpha5() -> np.ndarray:
    candidates = fierz_candidates()
    if not candidates:
        raise RuntimeError("no signed alpha product satisfies the Fierz identity")
    factors, phase, m = candidates[0]
    ALPHA5_PRODUCT.update(factors=factors, phase=phase)
    return _frozen(m)


def dirac_alpha(index: int) -> np.ndarray:
    """Return alpha_index.

    0 is the identity, 1-3 the spatial alphas, 4 is beta. Index 5 is the
    matrix fixed constructively by :func:`fierz_candidates` (the
    lexicographically first solution, which is alpha_1 alpha_2 alpha_3 beta).
    """
    if index == 5:
        return _alpha5()
    try:
        return _ALPHA[index]
    except (KeyError, TypeError):
        raise ValueError(f"alpha index must be in 0..5, got {index!r}") from None


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def alpha_dot(v) -> np.ndarray:
    """v_1 alpha_1 + v_2 alpha_2 + v_3 alpha_3 for a real 3-vector ``v``."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v[0] * _ALPHA[1] + v[1] * _ALPHA[2] + v[2] * _ALPHA[3]


def bilinear(m: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Real part of psi^+ M psi; ``psi`` may be a single spinor or stacked along axis 0."""
    psi = np.asarray(psi, dtype=complex)
    return np.sum(psi.conj() * (psi @ np.asarray(m).T), axis=-1).real
