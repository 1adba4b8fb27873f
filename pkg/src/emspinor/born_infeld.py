"""Born-Infeld and Heisenberg-Euler vacuum Lagrangians, Born-Infeld point charge.

Gaussian units; B and H are the same field in vacuum.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from .field_map import EMField

__all__ = [
    "BIParams",
    "BornInfeldDomainError",
    "bi_lagrangian",
    "bi_weak_field",
    "heisenberg_euler",
    "bi_radial_fields",
    "radial_profile",
    "write_profile_csv",
    "FINE_STRUCTURE",
]

FINE_STRUCTURE = 1 / 137.035999084


class BornInfeldDomainError(ValueError):
    """Field strength beyond the Born-Infeld limit (negative radicand)."""


@dataclass(frozen=True)
class BIParams:
    """Charge ``e`` and limiting field ``E0``; r0 = sqrt(e / E0), a defaults to 1 / E0."""

    e: float
    E0: float
    a: float | None = None

    def __post_init__(self):
        if self.e <= 0 or self.E0 <= 0:
            raise ValueError("e and E0 must be positive")
        if self.a is None:
            object.__setattr__(self, "a", 1.0 / self.E0)
        elif self.a <= 0:
            raise ValueError("a must be positive")

    @property
    def r0(self) -> float:
        return float(np.sqrt(self.e / self.E0))


def _invariants(f: EMField):
    E, B = np.real(f.E), np.real(f.H)
    return float(E @ E - B @ B), float(E @ B)


def bi_lagrangian(f: EMField, a: float) -> float:
    """(1 / 4 pi a^2) (1 - sqrt(1 + a^2 (E^2 - B^2) - a^4 (E.B)^2))."""
    if a <= 0:
        raise ValueError("a must be positive")
    F, G = _invariants(f)
    x = a**2 * F - a**4 * G**2
    if 1 + x < 0:
        raise BornInfeldDomainError(f"radicand 1 + {x!r} is negative")
    # 1 - sqrt(1 + x) without cancellation for small x
    return -x / (1 + np.sqrt(1 + x)) / (4 * np.pi * a**2)


def bi_weak_field(f: EMField, a: float) -> float:
    """-(E^2 - B^2)/8pi + (a^2 / 32 pi) [(E^2 - B^2)^2 + 4 (E.B)^2]."""
    F, G = _invariants(f)
    E2 = float(np.real(f.E) @ np.real(f.E))
    B2 = float(np.real(f.H) @ np.real(f.H))
    if a**2 * max(E2, B2) > 0.3:
        warnings.warn("weak-field expansion used outside a^2 E^2, a^2 B^2 << 1",
                      RuntimeWarning, stacklevel=2)
    return -F / (8 * np.pi) + a**2 / (32 * np.pi) * (F**2 + 4 * G**2)


def heisenberg_euler(f: EMField, alpha_q: float = FINE_STRUCTURE) -> float:
    """-(E^2 - H^2)/8pi + (alpha_q^2 / 360 pi^2) [(E^2 - H^2)^2 + 7 (E.H)^2].

    The typeset form writes B^2 - H^2 in both places; with B = H in vacuum
    that would vanish identically, so the E, H pair is used instead, matching
    the Born-Infeld weak-field structure.
    """
    F, G = _invariants(f)
    return -F / (8 * np.pi) + alpha_q**2 / (360 * np.pi**2) * (F**2 + 7 * G**2)


def bi_radial_fields(r: float, p: BIParams) -> tuple[float, float, float]:
    """Induction D, field E and effective permittivity D/E of the point charge."""
    if r <= 0:
        raise ValueError(f"r must be positive, got {r}")
    D = p.e / r**2
    E = p.e / np.sqrt(r**4 + p.r0**4)
    eps = np.sqrt(1 + (p.r0 / r) ** 4)
    return float(D), float(E), float(eps)


def radial_profile(p: BIParams, r_over_r0) -> np.ndarray:
    """Rows (r/r0, D, E, eps_eff)."""
    rows = [(x,) + bi_radial_fields(x * p.r0, p) for x in np.asarray(r_over_r0, dtype=float)]
    return np.array(rows)


def write_profile_csv(path, p: BIParams, r_over_r0) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["r_over_r0", "D", "E", "eps_eff"])
        for row in radial_profile(p, r_over_r0):
            w.writerow([repr(float(v)) for v in row])
