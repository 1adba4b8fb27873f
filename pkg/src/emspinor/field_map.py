"""Bispinor <-> electromagnetic field dictionary for waves moving along y.

A wave travelling along y carries only E_x, E_z, H_x, H_z. These are packed as

    psi = (E_x, E_z, i H_x, i H_z)

and the same fields in Cramers (Riemann-Silberstein) form are F = E + iH.
Only y-propagation is supported; other directions are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EMField",
    "fields_to_bispinor",
    "bispinor_to_fields",
    "cramers",
    "cramers_from_bispinor",
    "spin1_matrices",
    "maxwell_spin1_residual",
    "spatial_derivative",
]


@dataclass(frozen=True)
class EMField:
    """E and H at a point (Gaussian units). Components may be complex."""

    E: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        E = np.asarray(self.E)
        H = np.asarray(self.H)
        if E.shape != (3,) or H.shape != (3,):
            raise ValueError("E and H must be 3-vectors")
        dtype = np.result_type(E, H, float)
        object.__setattr__(self, "E", E.astype(dtype))
        object.__setattr__(self, "H", H.astype(dtype))

    @property
    def is_y_propagating(self) -> bool:
        return self.E[1] == 0 and self.H[1] == 0


def fields_to_bispinor(f: EMField, strict: bool = False) -> np.ndarray:
    """(E_x, E_z, iH_x, iH_z). ``E_y`` and ``H_y`` are dropped, or rejected if ``strict``."""
    if strict and not f.is_y_propagating:
        raise ValueError("E_y and H_y must vanish for a wave moving along y")
    E, H = f.E, f.H
    return np.array([E[0], E[2], 1j * H[0], 1j * H[2]], dtype=complex)


def bispinor_to_fields(psi) -> EMField:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise ValueError(f"expected a bispinor of shape (4,), got {psi.shape}")
    E = np.array([psi[0], 0, psi[1]])
    H = np.array([-1j * psi[2], 0, -1j * psi[3]])
    if not (E.imag.any() or H.imag.any()):
        return EMField(E.real, H.real)
    return EMField(E, H)


def cramers(f: EMField) -> tuple[np.ndarray, np.ndarray]:
    """Return (F, F*) with F = E + iH and F* = E - iH.

    For complex fields the second vector is still E - iH (no conjugation),
    which coincides with the conjugate of F only when E and H are real.
    """
    return f.E + 1j * f.H, f.E - 1j * f.H


def cramers_from_bispinor(psi: np.ndarray) -> np.ndarray:
    """F = E + iH for bispinors stacked along axis 0, shape (..., 4) -> (..., 3)."""
    psi = np.asarray(psi, dtype=complex)
    F = np.zeros(psi.shape[:-1] + (3,), dtype=complex)
    # E_x + i H_x = psi_1 + psi_3, E_z + i H_z = psi_2 + psi_4
    F[..., 0] = psi[..., 0] + psi[..., 2]
    F[..., 2] = psi[..., 1] + psi[..., 3]
    return F


def spin1_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """S_1, S_2, S_3 with (S_k)_ij = -i eps_kij."""
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    return tuple(-1j * eps[k] for k in range(3))


def spatial_derivative(u: np.ndarray, dy: float, stencil: str = "centered") -> np.ndarray:
    """Periodic d/dy along axis 0.

    ``stencil="forward"`` is first order and only exists to exercise the
    convergence harness.
    """
    if stencil == "centered":
        return (np.roll(u, -1, axis=0) - np.roll(u, 1, axis=0)) / (2 * dy)
    if stencil == "forward":
        return (np.roll(u, -1, axis=0) - u) / dy
    raise ValueError(f"unknown stencil {stencil!r}")


def maxwell_spin1_residual(F0, F1, dt: float, dy: float, c: float = 1.0,
                           stencil: str = "centered") -> float:
    """Max-norm of (i/c) dF/dt - (S.p)F on a periodic y-grid.

    ``F0`` and ``F1`` are F sampled at t and t + dt, shape (N, 3). The
    residual is evaluated at t + dt/2: the time derivative is the two-level
    difference and the spatial term is the average of both levels. Here
    p = -i d/dy along y, so (S.p)F is the curl of F.
    """
    F0 = np.asarray(F0, dtype=complex)
    F1 = np.asarray(F1, dtype=complex)
    if F0.shape != F1.shape or F0.ndim != 2 or F0.shape[1] != 3:
        raise ValueError("F levels must both have shape (N, 3)")
    if F0.shape[0] < 3:
        raise ValueError("need at least 3 grid points")
    S2 = spin1_matrices()[1]
    dF = 0.5 * (spatial_derivative(F0, dy, stencil) + spatial_derivative(F1, dy, stencil))
    lhs = (1j / c) * (F1 - F0) / dt
    rhs = (-1j * dF) @ S2.T
    return float(np.max(np.abs(lhs - rhs)))
