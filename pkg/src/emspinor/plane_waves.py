"""Free-particle plane-wave solutions and their amplitude sets.

Conventions: psi_j(r, t) = B_j exp(-(i/hbar)(eps t - p.r)), the "plus" Dirac
form is (eps + c alpha.p + beta m c^2) B = 0 and the "minus" form is
(eps - c alpha.p - beta m c^2) B = 0. The four branch formulas all solve the
plus form; the minus-form amplitude for energy eps is the plus-form
amplitude for -eps.

Two modes exist. ``consistent`` enforces eps^2 = c^2 p^2 + m^2 c^4.
``paper_literal`` accepts any (eps, p); it is how the printed standing-wave
tables (eps = +-mc^2 together with p_y = mc) are reproduced, even though
that pair violates the dispersion relation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .algebra import alpha_dot, dirac_alpha

__all__ = [
    "PlaneWaveSpec",
    "DegenerateSpecError",
    "amplitude_set",
    "plane_wave",
    "dirac_plane_residual",
    "dirac_operator",
]

_FORMS = ("plus", "minus")


class DegenerateSpecError(ValueError):
    """Branch formula has a vanishing denominator or the wrong energy sign."""


@dataclass(frozen=True)
class PlaneWaveSpec:
    branch: int
    energy: float
    momentum: tuple = (0.0, 0.0, 0.0)
    mass: float = 1.0
    phase: float = 0.0
    c: float = 1.0
    hbar: float = 1.0
    amplitude: float = 1.0
    mode: str = "consistent"

    def __post_init__(self):
        if self.branch not in (1, 2, 3, 4):
            raise ValueError(f"branch must be 1..4, got {self.branch}")
        p = tuple(float(x) for x in self.momentum)
        if len(p) != 3:
            raise ValueError("momentum must be a 3-vector")
        object.__setattr__(self, "momentum", p)
        if self.mode not in ("consistent", "paper_literal"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "consistent":
            target = self.c**2 * sum(x * x for x in p) + self.mass**2 * self.c**4
            if abs(self.energy**2 - target) > 1e-12 * max(target, 1e-300):
                raise ValueError(
                    f"eps^2 = {self.energy**2!r} violates the dispersion relation "
                    f"(expected {target!r}); use mode='paper_literal' to bypass")

    @classmethod
    def consistent(cls, branch: int, momentum=(0.0, 0.0, 0.0), mass: float = 1.0,
                   phase: float = 0.0, c: float = 1.0, hbar: float = 1.0,
                   amplitude: float = 1.0) -> "PlaneWaveSpec":
        """Spec with the energy fixed by the dispersion relation; branches 1, 2 get eps > 0."""
        p = np.asarray(momentum, dtype=float)
        e = float(np.sqrt(c**2 * (p @ p) + mass**2 * c**4))
        if branch in (3, 4):
            e = -e
        return cls(branch, e, tuple(p), mass, phase, c, hbar, amplitude)

    @classmethod
    def paper_literal(cls, branch: int, mass: float = 1.0, c: float = 1.0,
                      hbar: float = 1.0, phase: float = np.pi / 2) -> "PlaneWaveSpec":
        """eps = +-mc^2 with p = (0, mc, 0), the standing-wave table setting."""
        e = mass * c**2 if branch in (1, 2) else -mass * c**2
        return cls(branch, e, (0.0, mass * c, 0.0), mass, phase, c, hbar,
                   mode="paper_literal")

    @property
    def p(self) -> np.ndarray:
        return np.array(self.momentum)

    def with_amplitude(self, amplitude: float) -> "PlaneWaveSpec":
        return replace(self, amplitude=amplitude)


def _branch_amplitude(branch: int, eps: float, p, m: float, c: float) -> np.ndarray:
    px, py, pz = p
    mc2 = m * c**2
    if branch in (1, 2):
        if eps <= 0:
            raise DegenerateSpecError(f"branch {branch} needs eps > 0, got {eps}")
        den = eps + mc2
    else:
        if eps >= 0:
            raise DegenerateSpecError(f"branch {branch} needs eps < 0, got {eps}")
        den = -eps + mc2
    if den == 0:
        raise DegenerateSpecError("zero denominator in amplitude formula")
    if branch == 1:
        return np.array([-c * pz / den, -c * (px + 1j * py) / den, 1, 0], dtype=complex)
    if branch == 2:
        return np.array([-c * (px - 1j * py) / den, c * pz / den, 0, 1], dtype=complex)
    if branch == 3:
        return np.array([1, 0, c * pz / den, c * (px + 1j * py) / den], dtype=complex)
    return np.array([0, 1, c * (px - 1j * py) / den, -c * pz / den], dtype=complex)


def amplitude_set(spec: PlaneWaveSpec, form: str = "plus", normalize: bool = False) -> np.ndarray:
    """Amplitudes B_1..B_4 of the given branch, times amplitude * exp(i phase).

    Left unnormalised by default, as in the printed tables.
    """
    if form not in _FORMS:
        raise ValueError(f"form must be 'plus' or 'minus', got {form!r}")
    eps = spec.energy if form == "plus" else -spec.energy
    b = _branch_amplitude(spec.branch, eps, spec.momentum, spec.mass, spec.c)
    if normalize:
        b = b / np.linalg.norm(b)
    # exact for the quarter-turn phases used by the tables
    q = spec.phase / (np.pi / 2)
    if q == round(q):
        rot = (1, 1j, -1, -1j)[int(round(q)) % 4]
    else:
        rot = np.exp(1j * spec.phase)
    return spec.amplitude * rot * b


def plane_wave(spec: PlaneWaveSpec, y, t, form: str = "plus") -> np.ndarray:
    """psi(y, t) for a wave with position (0, y, 0); broadcasts over ``y``/``t``.

    Returns shape ``broadcast(y, t).shape + (4,)``.
    """
    b = amplitude_set(spec, form)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    phase = (spec.energy * t - spec.momentum[1] * y) / spec.hbar
    if np.ndim(phase) == 0 and phase == 0:
        return b.copy()
    return np.exp(-1j * phase)[..., None] * b


def dirac_operator(energy: float, momentum, mass: float, c: float = 1.0,
                   form: str = "plus") -> np.ndarray:
    """(eps +- c alpha.p +- beta m c^2) with operators replaced by eigenvalues."""
    sign = {"plus": 1.0, "minus": -1.0}[form]
    p = np.asarray(momentum, dtype=float)
    return (energy * dirac_alpha(0) + sign * c * alpha_dot(p)
            + sign * mass * c**2 * dirac_alpha(4))


def dirac_plane_residual(spec: PlaneWaveSpec, form: str = "plus", amplitude=None) -> float:
    """|D B| / |B| with D the plane-wave Dirac operator of ``form``.

    ``amplitude`` overrides the branch formula, e.g. for mapped vacuum fields
    with m = 0.
    """
    b = amplitude_set(spec, form) if amplitude is None else np.asarray(amplitude, dtype=complex)
    nb = np.linalg.norm(b)
    if nb == 0:
        raise ValueError("zero amplitude")
    d = dirac_operator(spec.energy, spec.momentum, spec.mass, spec.c, form)
    return float(np.linalg.norm(d @ b) / nb)
