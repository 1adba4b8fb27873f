"""Electromagnetic fields as Dirac bispinors: algebra, plane waves, grid solvers."""

__version__ = "0.1.0"

from .algebra import alpha_dot, anticommutator, bilinear, dirac_alpha  # noqa: E402
from .field_map import EMField, bispinor_to_fields, fields_to_bispinor  # noqa: E402
from .params import NATURAL, PhysParams  # noqa: E402
from .plane_waves import PlaneWaveSpec, amplitude_set, plane_wave  # noqa: E402

__all__ = [
    "__version__",
    "EMField",
    "NATURAL",
    "PhysParams",
    "PlaneWaveSpec",
    "alpha_dot",
    "amplitude_set",
    "anticommutator",
    "bilinear",
    "bispinor_to_fields",
    "dirac_alpha",
    "fields_to_bispinor",
    "plane_wave",
]
