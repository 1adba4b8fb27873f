"""Self-action of a localised wave and the resulting nonlinear Dirac theory.

The field energy and momentum of the wave, localised in a finite volume
dtau = zeta * r_p**3, are

    eps_p = dtau/(8 pi) psi^+ psi,    p_p = -dtau/(8 pi c) psi^+ alpha psi,

and replacing the mass term by them gives the nonlinear equation

    [(eps - eps_p) + c alpha.(p - p_p)] psi = 0.

This module evaluates those quantities, the Lagrangian densities built
from them, and the two quadratic identities behind the quartic terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .algebra import alpha_dot, bilinear, dirac_alpha
from .field_map import EMField
from .plane_waves import PlaneWaveSpec, amplitude_set

__all__ = [
    "SelfActionParams",
    "EnergyMomentum",
    "energy_density",
    "energy_density_em",
    "momentum_density",
    "poynting",
    "photon_energy_momentum",
    "nonlinear_operator",
    "nonlinear_residual",
    "self_consistent_delta_tau",
    "lagrangian_linear",
    "lagrangian_linear_em",
    "lagrangian_nonlinear_general",
    "lagrangian_nonlinear_em",
    "invariant_identity_check",
    "fierz_check",
    "lagrangian_nonlinear_quantum",
]

EIGHT_PI = 8.0 * np.pi
SPHERE = 4.0 * np.pi / 3.0


@dataclass(frozen=True)
class SelfActionParams:
    """Localisation volume dtau = zeta * r_p**3.

    ``residual`` is set by :func:`self_consistent_delta_tau`.
    """

    delta_tau: float
    zeta: float = SPHERE
    residual: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.delta_tau < 0:
            raise ValueError("delta_tau must be non-negative")
        if self.zeta <= 0:
            raise ValueError("zeta must be positive")

    @property
    def r_p(self) -> float:
        return float(np.cbrt(self.delta_tau / self.zeta))

    @classmethod
    def from_radius(cls, r_p: float, zeta: float = SPHERE) -> "SelfActionParams":
        if r_p <= 0:
            raise ValueError("r_p must be positive")
        return cls(zeta * r_p**3, zeta)


@dataclass(frozen=True)
class EnergyMomentum:
    eps_p: float
    p_p: np.ndarray


def _vec_bilinears(psi) -> np.ndarray:
    return np.array([bilinear(dirac_alpha(k), psi) for k in (1, 2, 3)])


def _sum_abs2(v) -> float:
    # correctly rounded, so the result does not depend on component order
    v = np.asarray(v, dtype=complex)
    return math.fsum(np.concatenate([v.real**2, v.imag**2]))


def energy_density(psi) -> float:
    """U = psi^+ alpha_0 psi / 8 pi (alpha_0 is the identity)."""
    return _sum_abs2(psi) / EIGHT_PI


def energy_density_em(f: EMField) -> float:
    """U = (E^2 + H^2) / 8 pi."""
    return _sum_abs2(np.concatenate([f.E, f.H])) / EIGHT_PI


def momentum_density(psi, c: float = 1.0) -> np.ndarray:
    """S = -(c / 8 pi) psi^+ alpha psi (energy flux)."""
    return -(c / EIGHT_PI) * _vec_bilinears(psi)


def poynting(f: EMField, c: float = 1.0) -> np.ndarray:
    """S = (c / 4 pi) E x H for real fields."""
    return (c / (4 * np.pi)) * np.cross(np.real(f.E), np.real(f.H))


def photon_energy_momentum(psi, sa: SelfActionParams, c: float = 1.0) -> EnergyMomentum:
    dtau = sa.delta_tau
    eps_p = dtau / EIGHT_PI * float(bilinear(dirac_alpha(0), psi))
    p_p = -dtau / (EIGHT_PI * c) * _vec_bilinears(psi)
    return EnergyMomentum(eps_p, p_p)


def nonlinear_operator(energy: float, momentum, em: EnergyMomentum, c: float = 1.0) -> np.ndarray:
    """(eps - eps_p) + c alpha.(p - p_p) as a 4x4 matrix."""
    p = np.asarray(momentum, dtype=float)
    return (energy - em.eps_p) * dirac_alpha(0) + c * alpha_dot(p - em.p_p)


def nonlinear_residual(spec: PlaneWaveSpec, sa: SelfActionParams) -> float:
    """|[(eps - eps_p) + c alpha.(p - p_p)] psi| / |psi| with eps_p, p_p from psi itself.

    The bilinears do not depend on the plane-wave phase, so the residual is
    evaluated on the amplitude set.
    """
    psi = amplitude_set(spec)
    n = np.linalg.norm(psi)
    if n == 0:
        raise ValueError("zero spinor")
    em = photon_energy_momentum(psi, sa, spec.c)
    op = nonlinear_operator(spec.energy, spec.momentum, em, spec.c)
    return float(np.linalg.norm(op @ psi) / n)


def self_consistent_delta_tau(spec: PlaneWaveSpec, zeta: float = SPHERE,
                              upper: float | None = None) -> SelfActionParams:
    """Volume dtau at which the self-action replaces the mass term best.

    The residual vector is a - dtau * b with a = (eps + c alpha.p) psi and
    b = (U' + c alpha.p_p') psi (primes: per unit volume), so its squared
    norm is a quadratic in dtau. The stationary point is bracketed on
    [0, upper] and located with Brent's method; ``upper`` defaults to
    1e3 (hbar / m c)**3.
    """
    if spec.mass <= 0:
        raise ValueError("self-consistent volume needs m > 0")
    if upper is None:
        upper = 1e3 * (spec.hbar / (spec.mass * spec.c)) ** 3
    psi = amplitude_set(spec)
    unit = photon_energy_momentum(psi, SelfActionParams(1.0, zeta), spec.c)
    a = (spec.energy * dirac_alpha(0) + spec.c * alpha_dot(spec.p)) @ psi
    b = (unit.eps_p * dirac_alpha(0) + spec.c * alpha_dot(unit.p_p)) @ psi

    def slope(dtau):
        # half the derivative of |a - dtau b|^2
        return float(np.real(np.vdot(b, dtau * b - a)))

    lo, hi = slope(0.0), slope(upper)
    if not (lo < 0 < hi):
        raise ValueError(f"no bracket for the self-consistent volume in [0, {upper:g}]")
    dtau = brentq(slope, 0.0, upper, xtol=1e-14 * upper, rtol=4 * np.finfo(float).eps)
    sa = SelfActionParams(dtau, zeta)
    return SelfActionParams(dtau, zeta, residual=nonlinear_residual(spec, sa))


def lagrangian_linear(psi, energy: float, momentum, mass: float, c: float = 1.0) -> complex:
    """psi^+ (eps + c alpha.p + beta m c^2) psi with operators at their plane-wave eigenvalues."""
    psi = np.asarray(psi, dtype=complex)
    op = (energy * dirac_alpha(0) + c * alpha_dot(momentum)
          + mass * c**2 * dirac_alpha(4))
    return complex(np.vdot(psi, op @ psi))


def lagrangian_linear_em(f: EMField, dU_dt: float, div_S: float, omega: float) -> complex:
    """dU/dt + div S - i (omega / 8 pi) (E^2 - H^2)."""
    inv1 = np.dot(f.E, f.E) - np.dot(f.H, f.H)
    return complex(dU_dt + div_S - 1j * omega / EIGHT_PI * inv1)


def lagrangian_nonlinear_general(psi, energy: float, momentum, sa: SelfActionParams,
                                 c: float = 1.0) -> complex:
    """psi^+ (eps - c alpha.p) psi + psi^+ (eps_p - c alpha.p_p) psi.

    Note the momentum sign is opposite to :func:`lagrangian_linear`; both
    forms are kept as written.
    """
    psi = np.asarray(psi, dtype=complex)
    em = photon_energy_momentum(psi, sa, c)
    op = ((energy + em.eps_p) * dirac_alpha(0)
          - c * alpha_dot(np.asarray(momentum, dtype=float) + em.p_p))
    return complex(np.vdot(psi, op @ psi))


def _invariants(f: EMField) -> tuple[float, float]:
    E, H = np.real(f.E), np.real(f.H)
    return float(E @ E - H @ H), float(E @ H)


def lagrangian_nonlinear_em(f: EMField, sa: SelfActionParams, mass: float,
                            c: float = 1.0) -> float:
    """(E^2 - H^2)/8pi + dtau/((8pi)^2 m c^2) [(E^2 - H^2)^2 + 4 (E.H)^2]."""
    if mass <= 0:
        raise ValueError("mass must be positive")
    inv1, inv2 = _invariants(f)
    quartic = inv1**2 + 4 * inv2**2
    return inv1 / EIGHT_PI + sa.delta_tau / (EIGHT_PI**2 * mass * c**2) * quartic


def invariant_identity_check(f: EMField) -> tuple[float, float]:
    """Both sides of (E^2 + H^2)^2 - 4 (E x H)^2 = (E^2 - H^2)^2 + 4 (E.H)^2."""
    E, H = np.real(f.E), np.real(f.H)
    s = np.cross(E, H)
    lhs = (E @ E + H @ H) ** 2 - 4 * (s @ s)
    inv1, inv2 = _invariants(f)
    return float(lhs), float(inv1**2 + 4 * inv2**2)


def fierz_check(psi, variant: str = "alpha5") -> tuple[float, float]:
    """(psi^+ psi)^2 - sum_k (psi^+ alpha_k psi)^2 against its Fierz partner.

    ``variant="alpha5"`` pairs it with (psi^+ beta psi)^2 + (psi^+ alpha_5 psi)^2.
    ``variant="printed"`` uses (psi^+ beta psi)^2 - (psi^+ alpha_3 psi)^2, the
    form that appears in the four-fermion Lagrangian as typeset; it does not
    hold in general.
    """
    lhs = bilinear(dirac_alpha(0), psi) ** 2 - np.sum(_vec_bilinears(psi) ** 2, axis=0)
    if np.ndim(lhs) == 0:
        lhs = float(lhs)
    b4 = bilinear(dirac_alpha(4), psi) ** 2
    if variant == "alpha5":
        rhs = b4 + bilinear(dirac_alpha(5), psi) ** 2
    elif variant == "printed":
        rhs = b4 - bilinear(dirac_alpha(3), psi) ** 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs, (float(rhs) if np.ndim(rhs) == 0 else rhs)


def lagrangian_nonlinear_quantum(psi, sa: SelfActionParams, basis: str = "alpha"):
    """Quartic self-interaction dtau/8pi [...] in the alpha or Fierz basis."""
    if basis == "alpha":
        q, _ = fierz_check(psi)
    elif basis == "fierz":
        _, q = fierz_check(psi)
    else:
        raise ValueError(f"basis must be 'alpha' or 'fierz', got {basis!r}")
    return sa.delta_tau / EIGHT_PI * q
