"""The mass term seen from the Maxwell side.

The bispinor image of a massive wave obeys Maxwell's equations with the
imaginary sources j_e = (i w / 4 pi) E and j_m = (i w / 4 pi) H, where
w = m c^2 / hbar. Two sign variants exist:

* ``sign="plus"``:  (1/c) dE_x/dt - dH_z/dy + i (w/c) E_x = 0, ...
* ``sign="minus"``: the same with the i w terms reversed.

The plus-form Dirac wave (see :mod:`emspinor.plane_waves`) satisfies the
``minus`` system directly. The ``plus`` system is satisfied by the complex
conjugate field configuration (E*, H*), or equivalently by waves of
(eps + c alpha.p - beta m c^2) psi = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import alpha_dot, dirac_alpha
from .field_map import EMField, spatial_derivative

__all__ = [
    "MassCurrents",
    "RingCurrent",
    "mass_currents",
    "maxwell_mass_residual",
    "connection_mass_check",
    "ring_displacement_current",
    "ring_geometry",
]

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class MassCurrents:
    j_e: np.ndarray
    j_m: np.ndarray


@dataclass(frozen=True)
class RingCurrent:
    """Displacement current of a field carried round a ring of radius ``r_p``."""

    j_n: np.ndarray
    j_tau: np.ndarray
    omega_p: float
    r_p: float
    normal: np.ndarray
    tangent: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.j_n + self.j_tau

    @property
    def complex_form(self) -> complex:
        """Scalar bookkeeping j_n + i j_tau from the signed components along n and tau."""
        return complex(self.j_n @ self.normal, self.j_tau @ self.tangent)


def mass_currents(f: EMField, omega: float) -> MassCurrents:
    if omega < 0:
        raise ValueError("omega must be non-negative")
    k = 1j * omega / FOUR_PI
    return MassCurrents(k * f.E, k * f.H)


def _fields_on_grid(psi: np.ndarray):
    # columns: E_x, E_z, H_x, H_z
    psi = np.asarray(psi, dtype=complex)
    return psi[:, 0], psi[:, 1], -1j * psi[:, 2], -1j * psi[:, 3]


def maxwell_mass_residual(psi0, psi1, dt: float, dy: float, omega: float,
                          sign: str = "plus", c: float = 1.0,
                          stencil: str = "centered") -> np.ndarray:
    """Residuals of the four Maxwell-with-mass-current equations.

    ``psi0``/``psi1`` are bispinor grids (N, 4) at t and t + dt, mapped to
    fields by the y-wave dictionary. Equations are evaluated at t + dt/2 as
    in :func:`emspinor.field_map.maxwell_spin1_residual`. Returns 8 reals:
    max |Re r_k| and max |Im r_k| for k = 1..4, interleaved.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    psi1 = np.asarray(psi1, dtype=complex)
    if psi0.shape != psi1.shape or psi0.ndim != 2 or psi0.shape[1] != 4:
        raise ValueError("levels must both have shape (N, 4)")
    if psi0.shape[0] < 3:
        raise ValueError("need at least 3 grid points")
    s = {"plus": 1.0, "minus": -1.0}[sign]

    f0 = _fields_on_grid(psi0)
    f1 = _fields_on_grid(psi1)
    ddt = [(b - a) / (c * dt) for a, b in zip(f0, f1)]
    ddy = [0.5 * (spatial_derivative(a, dy, stencil) + spatial_derivative(b, dy, stencil))
           for a, b in zip(f0, f1)]
    mid = [0.5 * (a + b) for a, b in zip(f0, f1)]
    w = s * 1j * omega / c
    Ex, Ez, Hx, Hz = range(4)
    res = [
        ddt[Ex] - ddy[Hz] + w * mid[Ex],
        ddt[Ez] + ddy[Hx] + w * mid[Ez],
        ddt[Hx] + ddy[Ez] - w * mid[Hx],
        ddt[Hz] - ddy[Ex] - w * mid[Hz],
    ]
    out = []
    for r in res:
        out += [np.max(np.abs(r.real)), np.max(np.abs(r.imag))]
    return np.array(out)


def connection_mass_check(psi, eps_p: float, p_p, mass: float, sign: str = "plus",
                          c: float = 1.0) -> float:
    """|(eps_p +- c alpha.p_p) psi +- m c^2 beta psi| / |psi|."""
    psi = np.asarray(psi, dtype=complex)
    n = np.linalg.norm(psi)
    if n == 0:
        raise ValueError("zero spinor")
    s = {"plus": 1.0, "minus": -1.0}[sign]
    op = (eps_p * dirac_alpha(0) + s * c * alpha_dot(p_p)
          + s * mass * c**2 * dirac_alpha(4))
    return float(np.linalg.norm(op @ psi) / n)


def ring_geometry(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Inward normal and tangent at angle ``theta`` on a ring in the x-y plane."""
    n = -np.array([np.cos(theta), np.sin(theta), 0.0])
    tau = np.array([-np.sin(theta), np.cos(theta), 0.0])
    return n, tau


def ring_displacement_current(E_mag: float, dE_dt: float, v_p: float, r_p: float,
                              theta: float = 0.0) -> RingCurrent:
    """Split (1/4pi) dE/dt for E = -E n into normal and tangential parts.

    The field rotates with angular velocity v_p / r_p, so the unit normal
    turns as dn/dt = -(v_p/r_p) tau.
    """
    if r_p <= 0:
        raise ValueError(f"ring radius must be positive, got {r_p}")
    n, tau = ring_geometry(theta)
    omega_p = v_p / r_p
    j_n = -(dE_dt / FOUR_PI) * n
    j_tau = (omega_p * E_mag / FOUR_PI) * tau
    return RingCurrent(j_n, j_tau, omega_p, r_p, n, tau)
