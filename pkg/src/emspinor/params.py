"""Physical constants shared by the solvers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysParams:
    """Mass, light speed and reduced Planck constant.

    Natural units (``c = hbar = 1``) are the default. ``gaussian_electron``
    gives the CGS electron values.
    """

    mass: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError(f"mass must be non-negative, got {self.mass}")
        if self.c <= 0 or self.hbar <= 0:
            raise ValueError("c and hbar must be positive")

    @property
    def omega(self) -> float:
        """Mass frequency m c^2 / hbar."""
        return self.mass * self.c**2 / self.hbar

    @property
    def rest_energy(self) -> float:
        return self.mass * self.c**2

    @property
    def compton_length(self) -> float:
        if self.mass == 0:
            raise ValueError("Compton length undefined for m = 0")
        return self.hbar / (self.mass * self.c)

    def with_mass(self, mass: float) -> "PhysParams":
        return PhysParams(mass=mass, c=self.c, hbar=self.hbar)

    @classmethod
    def natural(cls, mass: float = 1.0) -> "PhysParams":
        return cls(mass=mass)

    @classmethod
    def gaussian_electron(cls) -> "PhysParams":
        # CODATA 2018 values in CGS
        return cls(mass=9.1093837015e-28, c=2.99792458e10, hbar=1.054571817e-27)


NATURAL = PhysParams()
