"""Verification suites, convergence studies and report serialisation."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from . import __version__
from . import algebra, born_infeld, evolution, field_map, massive_em, nonlinear, plane_waves
from .params import PhysParams

SUITES = ("algebra", "field-map", "plane-waves", "massive-em", "evolution",
          "nonlinear", "born-infeld")

# Every physics operation that a report row can point at.
OPERATIONS = (
    "algebra.dirac_alpha",
    "algebra.anticommutator",
    "algebra.alpha_dot",
    "field_map.fields_to_bispinor",
    "field_map.bispinor_to_fields",
    "field_map.spin1_matrices",
    "field_map.maxwell_spin1_residual",
    "plane_waves.amplitude_set",
    "plane_waves.plane_wave",
    "plane_waves.dirac_plane_residual",
    "massive_em.mass_currents",
    "massive_em.maxwell_mass_residual",
    "massive_em.connection_mass_check",
    "massive_em.ring_displacement_current",
    "evolution.evolve",
    "evolution.evolve_spin1",
    "evolution.dirac_residual",
    "evolution.measure_dispersion",
    "evolution.factorization_residual",
    "nonlinear.energy_density",
    "nonlinear.momentum_density",
    "nonlinear.photon_energy_momentum",
    "nonlinear.nonlinear_residual",
    "nonlinear.self_consistent_delta_tau",
    "nonlinear.lagrangian_linear",
    "nonlinear.lagrangian_nonlinear_general",
    "nonlinear.lagrangian_nonlinear_em",
    "nonlinear.invariant_identity_check",
    "nonlinear.fierz_check",
    "nonlinear.lagrangian_nonlinear_quantum",
    "born_infeld.bi_lagrangian",
    "born_infeld.bi_weak_field",
    "born_infeld.heisenberg_euler",
    "born_infeld.bi_radial_fields",
)

FIXED_TIMESTAMP = "1970-01-01T00:00:00+00:00"


class UsageError(ValueError):
    """Bad suite name, check name or configuration."""


@dataclass
class RunConfig:
    suite: str = "all"
    sizes: tuple = (128, 256, 512)
    tolerances: dict = field(default_factory=dict)
    units: str = "natural"
    out: str | None = None
    fmt: str = "json"
    seed: int = 0
    paper_literal: bool = False
    fixed_clock: bool = False
    first_order: bool = False

    def validate(self) -> "RunConfig":
        sizes = tuple(int(n) for n in self.sizes)
        if not sizes:
            raise UsageError("at least one grid size is required")
        if any(n < 8 or n % 2 for n in sizes):
            raise UsageError(f"grid sizes must be even and >= 8: {sizes}")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise UsageError(f"grid sizes must be strictly increasing: {sizes}")
        self.sizes = sizes
        if self.units not in ("natural", "gaussian"):
            raise UsageError(f"units must be natural or gaussian, got {self.units!r}")
        if self.fmt not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, got {self.fmt!r}")
        unknown = set(self.tolerances) - set(CHECKS)
        if unknown:
            raise UsageError(f"tolerance overrides for unknown checks: {sorted(unknown)}")
        return self

    @property
    def params(self) -> PhysParams:
        return PhysParams.gaussian_electron() if self.units == "gaussian" else PhysParams()


@dataclass
class CheckReport:
    check_id: str
    suite: str
    operation: str
    tag: str
    status: str  # pass | fail | informational
    measured: dict
    tolerance: float | None
    provenance: str  # printed | derived | trivial | plumbing


@dataclass(frozen=True)
class _Check:
    check_id: str
    suite: str
    operation: str
    tag: str
    tolerance: float | None
    provenance: str
    fn: Callable
    informational: bool = False
    literal_only: bool = False


CHECKS: dict[str, _Check] = {}


def _check(check_id, suite, operation, tag, tolerance=None, provenance="derived",
           informational=False, literal_only=False):
    def deco(fn):
        if check_id in CHECKS:
            raise RuntimeError(f"duplicate check id {check_id}")
        if operation not in OPERATIONS:
            raise RuntimeError(f"{check_id} points at unknown operation {operation}")
        CHECKS[check_id] = _Check(check_id, suite, operation, tag, tolerance, provenance,
                                  fn, informational, literal_only)
        return fn
    return deco


# ---------------------------------------------------------------- scenarios

def _orders(sizes, errors):
    out = [None]
    for (n0, e0), (n1, e1) in zip(zip(sizes, errors), zip(sizes[1:], errors[1:])):
        if e0 == 0 and e1 == 0:
            out.append("exact")
        elif e0 == 0 or e1 == 0:
            out.append(None)
        else:
            out.append(math.log(e0 / e1) / math.log(n1 / n0))
    return out


def _vacuum_wave(n, t, k=2 * np.pi, length=1.0, sign=-1.0):
    """E_x = cos(k(y - t)), H_z = sign * cos(...) packed as a bispinor grid (c = 1)."""
    y = np.arange(n) * (length / n)
    f = np.cos(k * (y - t))
    z = np.zeros_like(f)
    return np.stack([f, z, z, sign * 1j * f], axis=1).astype(complex)


def _massive_wave(n, t, mass=1.0, k=2 * np.pi, length=1.0, conj_fields=False):
    """Branch-1 + branch-2 superposition so all four field components are nonzero."""
    y = np.arange(n) * (length / n)
    s1 = plane_waves.PlaneWaveSpec.consistent(1, (0, k, 0), mass)
    s2 = plane_waves.PlaneWaveSpec.consistent(2, (0, k, 0), mass)
    psi = plane_waves.plane_wave(s1, y, t) + plane_waves.plane_wave(s2, y, t)
    if conj_fields:
        # (E, H) -> (E*, H*) in the bispinor packing
        psi = np.stack([psi[:, 0].conj(), psi[:, 1].conj(),
                        -psi[:, 2].conj(), -psi[:, 3].conj()], axis=1)
    return psi


def _err_massless_advection(n, stencil):
    dy = 1.0 / n
    dt = dy / 2
    g = evolution.FieldGrid1D(_vacuum_wave(n, 0.0), dy)
    g1 = evolution.evolve(g, 0.0, dt, int(round(1.0 / dt)))
    return float(np.max(np.abs(g1.values - g.values)))


def _err_massive_advection(n, stencil):
    dy = 1.0 / n
    s1 = plane_waves.PlaneWaveSpec.consistent(1, (0, 2 * np.pi, 0), 1.0)
    period = 2 * np.pi / s1.energy
    steps = int(math.ceil(period / (dy / 2)))
    dt = period / steps
    g = evolution.FieldGrid1D(_massive_wave(n, 0.0), dy)
    g1 = evolution.evolve(g, 1.0, dt, steps)
    return float(np.max(np.abs(g1.values - _massive_wave(n, period))))


def _err_spin1_residual(n, stencil):
    dy = 1.0 / n
    dt = dy / 2
    F0 = field_map.cramers_from_bispinor(_vacuum_wave(n, 0.0))
    F1 = field_map.cramers_from_bispinor(_vacuum_wave(n, dt))
    return field_map.maxwell_spin1_residual(F0, F1, dt, dy, stencil=stencil)


def _err_dirac_residual(n, stencil):
    dy = 1.0 / n
    dt = dy / 2
    return evolution.dirac_residual(_vacuum_wave(n, 0.0), _vacuum_wave(n, dt), dt, dy,
                                    stencil=stencil)


def _err_massive_dirac_residual(n, stencil):
    dy = 1.0 / n
    dt = dy / 2
    return evolution.dirac_residual(_massive_wave(n, 0.0), _massive_wave(n, dt), dt, dy,
                                    mass=1.0, stencil=stencil)


def _mass_residuals(n, stencil, sign):
    dy = 1.0 / n
    dt = dy / 2
    conj = sign == "plus"
    return massive_em.maxwell_mass_residual(
        _massive_wave(n, 0.0, conj_fields=conj), _massive_wave(n, dt, conj_fields=conj),
        dt, dy, 1.0, sign, stencil=stencil)


def _err_mass_residual(n, stencil):
    return float(np.max(_mass_residuals(n, stencil, "minus")))


def _kg_levels(n):
    dy = 1.0 / n
    dt = dy / 2
    return np.stack([_vacuum_wave(n, j * dt) for j in range(3)]), dt, dy


def _err_kg_residual(n, stencil):
    levels, dt, dy = _kg_levels(n)
    return evolution.factorization_residual(levels, dt, dy)[0]


def _err_factor_split(n, stencil):
    levels, dt, dy = _kg_levels(n)
    return evolution.factorization_residual(levels, dt, dy)[1]


def _err_spin1_equivalence(n, stencil):
    dy = 1.0 / n
    dt = dy / 2
    steps = int(round(1.0 / dt))
    psi0 = _vacuum_wave(n, 0.0)
    g1 = evolution.evolve(evolution.FieldGrid1D(psi0, dy), 0.0, dt, steps)
    F1 = evolution.evolve_spin1(field_map.cramers_from_bispinor(psi0), dt, dy, steps)
    return float(np.max(np.abs(F1 - field_map.cramers_from_bispinor(g1.values))))


def _err_static_zero(n, stencil):
    dy = 1.0 / n
    z = np.zeros((n, 4), dtype=complex)
    return evolution.dirac_residual(z, z, dy / 2, dy, stencil=stencil)


CONVERGENCE_CHECKS = {
    "massless-advection": (_err_massless_advection, False),
    "massive-advection": (_err_massive_advection, False),
    "spin1-residual": (_err_spin1_residual, True),
    "dirac-residual": (_err_dirac_residual, True),
    "massive-dirac-residual": (_err_massive_dirac_residual, True),
    "mass-residual": (_err_mass_residual, True),
    "kg-residual": (_err_kg_residual, False),
    "factor-split": (_err_factor_split, False),
    "spin1-equivalence": (_err_spin1_equivalence, False),
    "static-zero": (_err_static_zero, True),
}


def convergence_study(cfg: RunConfig, check: str) -> list[dict]:
    """Run ``check`` at every grid size in ``cfg.sizes``.

    Returns rows {"N", "error", "order"}; order is log(e_i / e_i+1) over
    log(N_i+1 / N_i), "exact" when both errors vanish, None on the first row.
    ``cfg.first_order`` swaps in one-sided differences (harness self-test).
    """
    if check not in CONVERGENCE_CHECKS:
        raise UsageError(f"unknown convergence check {check!r}; "
                         f"choose from {sorted(CONVERGENCE_CHECKS)}")
    if len(cfg.sizes) < 3:
        raise UsageError("a convergence study needs at least 3 grid sizes")
    fn, has_stencil = CONVERGENCE_CHECKS[check]
    if cfg.first_order and not has_stencil:
        raise UsageError(f"{check} has no first-order variant")
    stencil = "forward" if cfg.first_order else "centered"
    errors = [fn(n, stencil) for n in cfg.sizes]
    return [{"N": n, "error": e, "order": o}
            for n, e, o in zip(cfg.sizes, errors, _orders(cfg.sizes, errors))]


def _order_ok(rows, target=2.0, tol=0.1):
    orders = [r["order"] for r in rows[1:]]
    return all(isinstance(o, float) and abs(o - target) <= tol for o in orders)


def _at(rows, n):
    for r in rows:
        if r["N"] == n:
            return r["error"]
    return None


# ------------------------------------------------------------------ algebra

@_check("algebra.dirac_alpha", "algebra", "algebra.dirac_alpha", "dirac-matrices", 0.0, "printed")
def _c_dirac_alpha(cfg, rng, tol):
    a = [algebra.dirac_alpha(k) for k in range(6)]
    eye = np.eye(4)
    herm = max(float(np.max(np.abs(m - m.conj().T))) for m in a[1:])
    unit = max(float(np.max(np.abs(m @ m.conj().T - eye))) for m in a[1:])
    anti = np.array_equal(a[1], np.fliplr(eye))
    ok = herm == 0 and unit == 0 and anti and np.array_equal(a[0], eye)
    return ok, {"hermitian_dev": herm, "unitary_dev": unit, "alpha1_antidiagonal": anti,
                "alpha5": _matrix_repr(a[5]),
                "alpha5_product": _alpha5_desc()}


def _alpha5_desc():
    algebra.dirac_alpha(5)
    f = algebra.ALPHA5_PRODUCT
    names = {1: "alpha1", 2: "alpha2", 3: "alpha3", 4: "beta"}
    return {"factors": [names[k] for k in f["factors"]], "phase": _json_num(f["phase"])}


def _matrix_repr(m):
    return [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in m]


@_check("algebra.anticommutator", "algebra", "algebra.anticommutator", "clifford", 0.0)
def _c_anticommutator(cfg, rng, tol):
    worst = 0.0
    for i in range(1, 5):
        for j in range(i, 5):
            ac = algebra.anticommutator(algebra.dirac_alpha(i), algebra.dirac_alpha(j))
            target = 2 * np.eye(4) * (i == j)
            worst = max(worst, float(np.max(np.abs(ac - target))))
    return worst <= tol, {"max_dev": worst, "pairs": 10}


@_check("algebra.alpha_dot", "algebra", "algebra.alpha_dot", "alpha-dot-square", 1e-13)
def _c_alpha_dot(cfg, rng, tol):
    worst = 0.0
    for v in rng.normal(size=(1000, 3)) * rng.uniform(0.1, 10, size=(1000, 1)):
        m = algebra.alpha_dot(v)
        dev = np.max(np.abs(m @ m - (v @ v) * np.eye(4))) / (v @ v)
        worst = max(worst, float(dev))
    return worst < tol, {"max_rel_dev": worst, "samples": 1000}


# ---------------------------------------------------------------- field-map

@_check("field_map.fields_to_bispinor", "field-map", "field_map.fields_to_bispinor",
        "field-bispinor-map", 0.0, "printed")
def _c_f2b(cfg, rng, tol):
    ex = field_map.fields_to_bispinor(field_map.EMField([0, 0, 2], [3, 0, 0]))
    example = np.array_equal(ex, [0, 2, 3j, 0])
    mismatches = 0
    for e, h in zip(rng.normal(size=(100, 3)), rng.normal(size=(100, 3))):
        e[1] = h[1] = 0.0
        f = field_map.EMField(e, h)
        g = field_map.bispinor_to_fields(field_map.fields_to_bispinor(f))
        mismatches += not (np.array_equal(g.E, f.E) and np.array_equal(g.H, f.H))
    return example and mismatches == 0, {"example_ok": example, "roundtrip_mismatches": mismatches}


@_check("field_map.bispinor_to_fields", "field-map", "field_map.bispinor_to_fields",
        "field-bispinor-map", 0.0, "trivial")
def _c_b2f(cfg, rng, tol):
    f = field_map.bispinor_to_fields([0, 0, 1j, 0])
    example = np.array_equal(f.E, [0, 0, 0]) and np.array_equal(f.H, [1, 0, 0])
    mismatches = 0
    for psi in rng.normal(size=(100, 4)) + 1j * rng.normal(size=(100, 4)):
        back = field_map.fields_to_bispinor(field_map.bispinor_to_fields(psi))
        mismatches += not np.array_equal(back, psi)
    return example and mismatches == 0, {"example_ok": example, "roundtrip_mismatches": mismatches}


@_check("field_map.spin1_matrices", "field-map", "field_map.spin1_matrices", "spin1-algebra", 1e-15)
def _c_spin1(cfg, rng, tol):
    S = field_map.spin1_matrices()
    comm = max(float(np.max(np.abs(S[a] @ S[b] - S[b] @ S[a] - 1j * S[c])))
               for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)))
    casimir = float(np.max(np.abs(sum(s @ s for s in S) - 2 * np.eye(3))))
    v = np.array([1, 1j, 0]) / np.sqrt(2)
    eig = float(np.max(np.abs(S[2] @ v - v)))
    return max(comm, casimir, eig) <= tol, {"commutator_dev": comm, "casimir_dev": casimir,
                                             "helicity_dev": eig}


@_check("field_map.maxwell_spin1_residual", "field-map", "field_map.maxwell_spin1_residual",
        "spin1-maxwell", 1e-3)
def _c_spin1_res(cfg, rng, tol):
    rows = convergence_study(cfg, "spin1-residual")
    n = 256
    dy = 1.0 / n
    bad = field_map.maxwell_spin1_residual(
        field_map.cramers_from_bispinor(_vacuum_wave(n, 0.0, sign=1.0)),
        field_map.cramers_from_bispinor(_vacuum_wave(n, dy / 2, sign=1.0)), dy / 2, dy)
    e256 = _at(rows, 256)
    ok = _order_ok(rows) and (e256 is None or e256 < tol) and bad > 1.0
    return ok, {"study": rows, "wrong_sign_residual": bad}


@_check("field_map.massless_equivalence", "field-map", "evolution.dirac_residual",
        "massless-dirac-maxwell", 0.1)
def _c_massless_equiv(cfg, rng, tol):
    s1 = convergence_study(cfg, "spin1-residual")
    d = convergence_study(cfg, "dirac-residual")
    ok = _order_ok(s1, tol=tol) and _order_ok(d, tol=tol)
    return ok, {"spin1": s1, "dirac_m0": d}


# -------------------------------------------------------------- plane-waves

LITERAL_TABLE = {
    1: [0, 0.5, 1j, 0],
    2: [-0.5, 0, 0, 1j],
    3: [1j, 0, 0, -0.5],
    4: [0, 1j, 0.5, 0],
}


@_check("plane_waves.amplitude_set", "plane-waves", "plane_waves.amplitude_set",
        "amplitude-structure", 1e-12)
def _c_amp_structure(cfg, rng, tol):
    prm = cfg.params
    support = {1: (1, 2), 4: (1, 2), 2: (0, 3), 3: (0, 3)}
    bad_support = 0
    worst_orth = 0.0
    for py in rng.uniform(-3, 3, size=20) * prm.mass * prm.c:
        specs = [plane_waves.PlaneWaveSpec.consistent(b, (0, py, 0), prm.mass, c=prm.c,
                                                      hbar=prm.hbar) for b in (1, 2, 3, 4)]
        amps = [plane_waves.amplitude_set(s, normalize=True) for s in specs]
        for b, a in zip((1, 2, 3, 4), amps):
            off = [k for k in range(4) if k not in support[b]]
            bad_support += bool(np.any(a[off] != 0))
        for i in range(4):
            for j in range(i + 1, 4):
                worst_orth = max(worst_orth, abs(np.vdot(amps[i], amps[j])))
    ok = bad_support == 0 and worst_orth < tol
    return ok, {"support_violations": bad_support, "max_overlap": float(worst_orth)}


@_check("plane_waves.amplitude_set:paper_literal", "plane-waves", "plane_waves.amplitude_set",
        "standing-wave-table", 0.0, "printed", literal_only=True)
def _c_amp_literal(cfg, rng, tol):
    rows = {}
    ok = True
    for b, want in LITERAL_TABLE.items():
        got = plane_waves.amplitude_set(plane_waves.PlaneWaveSpec.paper_literal(b))
        match = np.array_equal(got, np.array(want, dtype=complex))
        ok &= match
        rows[str(b)] = {"value": [_json_num(z) for z in got], "match": bool(match)}
    ratio = abs(LITERAL_TABLE[1][1]) / abs(LITERAL_TABLE[1][2])
    return ok, {"vectors": rows, "E_over_H": ratio}


@_check("plane_waves.dirac_plane_residual:paper_literal", "plane-waves",
        "plane_waves.dirac_plane_residual", "standing-wave-dispersion", None, "derived",
        informational=True, literal_only=True)
def _c_literal_mismatch(cfg, rng, tol):
    out = {}
    for b in (1, 2, 3, 4):
        s = plane_waves.PlaneWaveSpec.paper_literal(b)
        out[str(b)] = plane_waves.dirac_plane_residual(s)
    consistent = math.sqrt(2.0)
    return None, {"residual_by_branch": out, "printed_energy_over_mc2": 1.0,
                  "consistent_energy_over_mc2": consistent}


@_check("plane_waves.plane_wave", "plane-waves", "plane_waves.plane_wave", "plane-wave", 1e-14)
def _c_plane_wave(cfg, rng, tol):
    prm = cfg.params
    worst = 0.0
    origin_ok = True
    for b in (1, 2, 3, 4):
        s = plane_waves.PlaneWaveSpec.consistent(b, (0, rng.uniform(-2, 2) * prm.mass * prm.c, 0),
                                                 prm.mass, c=prm.c, hbar=prm.hbar,
                                                 phase=rng.uniform(0, 2 * np.pi))
        amp = plane_waves.amplitude_set(s)
        origin_ok &= np.array_equal(plane_waves.plane_wave(s, 0.0, 0.0), amp)
        L = prm.hbar / (prm.mass * prm.c)
        T = L / prm.c
        psi = plane_waves.plane_wave(s, rng.uniform(-10, 10, 50) * L, rng.uniform(-10, 10, 50) * T)
        worst = max(worst, float(np.max(np.abs(np.abs(psi) - np.abs(amp)) / np.linalg.norm(amp))))
    return origin_ok and worst < tol, {"origin_exact": bool(origin_ok), "max_modulus_dev": worst}


@_check("plane_waves.dirac_plane_residual", "plane-waves", "plane_waves.dirac_plane_residual",
        "dirac-plane-wave", 1e-12)
def _c_plane_residual(cfg, rng, tol):
    prm = cfg.params
    worst = 0.0
    worst_orth = 0.0
    for _ in range(100):
        m = rng.uniform(0.1, 5.0) * prm.mass
        py = rng.uniform(-5, 5) * m * prm.c
        amps = []
        for b in (1, 2, 3, 4):
            s = plane_waves.PlaneWaveSpec.consistent(b, (0, py, 0), m, c=prm.c, hbar=prm.hbar)
            worst = max(worst, plane_waves.dirac_plane_residual(s) / abs(s.energy))
            amps.append(plane_waves.amplitude_set(s))
        for i in range(4):
            for j in range(i + 1, 4):
                worst_orth = max(worst_orth, abs(np.vdot(amps[i], amps[j])))
    # massless vacuum wave through the field map
    k = 2 * np.pi
    s0 = plane_waves.PlaneWaveSpec(1, prm.c * k, (0, k, 0), 0.0, c=prm.c, hbar=prm.hbar)
    vac = field_map.fields_to_bispinor(field_map.EMField([1, 0, 0], [0, 0, -1]))
    r0 = plane_waves.dirac_plane_residual(s0, amplitude=vac) / abs(s0.energy)
    ok = worst < tol and worst_orth < tol and r0 < tol
    return ok, {"max_rel_residual": worst, "max_overlap": float(worst_orth),
                "massless_field_residual": r0, "samples": 100}


# ---------------------------------------------------------------- massive-em

@_check("massive_em.mass_currents", "massive-em", "massive_em.mass_currents", "mass-currents",
        0.0, "trivial")
def _c_currents(cfg, rng, tol):
    a = massive_em.mass_currents(field_map.EMField([1, 0, 0], [0, 0, 0]), 4 * np.pi)
    b = massive_em.mass_currents(field_map.EMField([0, 0, 2], [3, 0, 0]), 2 * np.pi)
    z = massive_em.mass_currents(field_map.EMField([1, 2, 3], [4, 5, 6]), 0.0)
    devs = [np.max(np.abs(a.j_e - [1j, 0, 0])), np.max(np.abs(a.j_m)),
            np.max(np.abs(b.j_e - [0, 0, 1j])), np.max(np.abs(b.j_m - [1.5j, 0, 0])),
            np.max(np.abs(z.j_e)), np.max(np.abs(z.j_m))]
    worst = float(max(devs))
    return worst <= 1e-15, {"max_dev": worst}


@_check("massive_em.maxwell_mass_residual", "massive-em", "massive_em.maxwell_mass_residual",
        "maxwell-mass-currents", 0.1)
def _c_mass_residual(cfg, rng, tol):
    out = {}
    ok = True
    for sign in ("minus", "plus"):
        res = np.array([_mass_residuals(n, "centered", sign) for n in cfg.sizes])
        orders = []
        for j in range(8):
            col = [{"order": o} for o in _orders(cfg.sizes, list(res[:, j]))]
            orders.append([r["order"] for r in col[1:]])
            ok &= _order_ok(col, tol=tol)
        out[sign] = {"residuals": res.tolist(), "orders": orders}
    # a vacuum wave with w > 0 must not satisfy the system
    n = cfg.sizes[-1]
    dy = 1.0 / n
    ctrl = massive_em.maxwell_mass_residual(_vacuum_wave(n, 0.0), _vacuum_wave(n, dy / 2),
                                            dy / 2, dy, 1.0, "minus")
    out["vacuum_control_max"] = float(np.max(ctrl))
    ok &= out["vacuum_control_max"] > 0.5
    return ok, out


@_check("massive_em.connection_mass_check", "massive-em", "massive_em.connection_mass_check",
        "connection-mass", 1e-12)
def _c_connection(cfg, rng, tol):
    prm = cfg.params
    worst = 0.0
    for _ in range(20):
        s = plane_waves.PlaneWaveSpec.consistent(
            1, (0, rng.uniform(-3, 3) * prm.mass * prm.c, 0), prm.mass, c=prm.c, hbar=prm.hbar)
        psi = plane_waves.plane_wave(s, 0.3 * prm.compton_length, 0.0)
        r = massive_em.connection_mass_check(psi, s.energy, s.p, s.mass, "plus", prm.c)
        worst = max(worst, r / abs(s.energy))
    rest = massive_em.connection_mass_check(psi, 0.0, (0, 0, 0), prm.mass, "plus", prm.c)
    rest_rel = abs(rest / prm.rest_energy - 1)
    return worst < tol and rest_rel < 1e-15, {"max_rel_residual": worst,
                                               "zero_momentum_rel_dev": rest_rel}


@_check("massive_em.ring_displacement_current", "massive-em",
        "massive_em.ring_displacement_current", "ring-current", 1e-12)
def _c_ring(cfg, rng, tol):
    prm = cfg.params
    E = 1.0
    rc = massive_em.ring_displacement_current(E, 0.0, prm.c, prm.compton_length)
    mc = massive_em.mass_currents(field_map.EMField([E, 0, 0], [0, 0, 0]), prm.omega)
    link = abs(np.linalg.norm(rc.j_tau) / np.linalg.norm(mc.j_e) - 1)
    ortho = abs(rc.j_n @ rc.j_tau)
    # finite-difference oracle for d/dt of E_vec = -E(t) n(theta(t))
    E0, dE, v, r, th = 2.0, 0.7, 1.3, 0.4, 0.9
    rc2 = massive_em.ring_displacement_current(E0, dE, v, r, th)
    h = 1e-5

    def e_vec(t):
        n, _ = massive_em.ring_geometry(th + v / r * t)
        return -(E0 + dE * t) * n

    fd = (e_vec(h) - e_vec(-h)) / (2 * h) / (4 * np.pi)
    fd_dev = float(np.max(np.abs(fd - rc2.total)))
    ok = link < tol and ortho < tol and fd_dev < 1e-9
    return ok, {"current_link_rel_dev": float(link), "normal_tangent_dot": float(ortho),
                "finite_difference_dev": fd_dev}


# ---------------------------------------------------------------- evolution

@_check("evolution.evolve", "evolution", "evolution.evolve", "free-evolution", 0.1)
def _c_evolve(cfg, rng, tol):
    rows = convergence_study(cfg, "massless-advection")
    rows_m = convergence_study(cfg, "massive-advection")
    n = 256
    dy = 1.0 / n
    drift = {}
    for m in (0.0, 1.0):
        g = evolution.FieldGrid1D(_massive_wave(n, 0.0, mass=1.0) if m else _vacuum_wave(n, 0.0), dy)
        g1 = evolution.evolve(g, m, dy / 2, 2 * n)
        drift[str(m)] = abs(g1.norm() / g.norm() - 1)
    # k = 0 zero mode: lower components rotate as exp(-i w t)
    w = 1.0
    T = 2 * np.pi / w
    g = evolution.FieldGrid1D(np.tile([0, 0, 1, 0.5], (16, 1)), 1.0)
    g1 = evolution.evolve(g, 1.0, T / 256, 256)
    zero_dev = float(np.max(np.abs(g1.values - g.values * np.exp(-1j * w * T))))
    ok = (_order_ok(rows, tol=tol) and _order_ok(rows_m, tol=tol)
          and max(drift.values()) < 1e-6 and zero_dev < 1e-3)
    return ok, {"massless": rows, "massive": rows_m, "norm_drift": drift,
                "zero_mode_dev": zero_dev}


@_check("evolution.massless_equivalence", "evolution", "evolution.evolve_spin1",
        "massless-dirac-maxwell", 5e-3)
def _c_spin1_equiv(cfg, rng, tol):
    rows = convergence_study(cfg, "spin1-equivalence")
    e = _at(rows, 256)
    ok = _order_ok(rows) and (e is None or e < tol)
    return ok, {"study": rows}


@_check("evolution.dirac_residual", "evolution", "evolution.dirac_residual", "dirac-grid", 0.1)
def _c_dirac_grid(cfg, rng, tol):
    rows = convergence_study(cfg, "massive-dirac-residual")
    return _order_ok(rows, tol=tol), {"study": rows}


@_check("evolution.measure_dispersion", "evolution", "evolution.measure_dispersion",
        "dispersion", 2e-3)
def _c_dispersion(cfg, rng, tol):
    out = {}
    ok = True
    for w0, ck in ((1.0, 0.0), (1.0, 1.0), (0.0, 2 * np.pi)):
        w = evolution.measure_dispersion(w0, ck, 512)
        want = math.sqrt(ck**2 + w0**2)
        rel = abs(w / want - 1)
        ok &= rel < tol
        out[f"m={w0:g},k={ck:.6g}"] = {"omega": w, "expected": want, "rel_err": rel}
    return ok, out


@_check("evolution.factorization_residual", "evolution", "evolution.factorization_residual",
        "klein-gordon-factorization", 1e-2)
def _c_factor(cfg, rng, tol):
    kg = convergence_study(cfg, "kg-residual")
    split = convergence_study(cfg, "factor-split")
    # operator identity on random smooth data that solves nothing
    n = 256
    dy = 1.0 / n
    dt = dy / 2
    y = np.arange(n) * dy
    coef = (rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))) / 4
    freqs = rng.uniform(-2 * np.pi, 2 * np.pi, size=3)
    levels = np.stack([
        sum(np.exp(1j * (2 * np.pi * m * y - freqs[i] * t))[:, None] * coef[i]
            for i, m in enumerate((-1, 0, 1)))
        for t in (0.0, dt, 2 * dt)])
    rand_split = evolution.factorization_residual(levels, dt, dy)[1]
    ok = (_order_ok(kg) and _order_ok(split) and _at(kg, 256) < tol
          and _at(split, 256) < tol and rand_split < tol)
    return ok, {"kg": kg, "split": split, "random_split_N256": rand_split}


# ---------------------------------------------------------------- nonlinear

def _random_y_fields(rng, count):
    v = rng.normal(size=(count, 4)) * 10.0 ** rng.uniform(-3, 3, size=(count, 1))
    return [field_map.EMField([a, 0, b], [c, 0, d]) for a, b, c, d in v]


@_check("nonlinear.energy_density", "nonlinear", "nonlinear.energy_density", "energy-density", 0.0)
def _c_energy(cfg, rng, tol):
    mism = 0
    worst = 0.0
    for f in _random_y_fields(rng, 1000):
        a = nonlinear.energy_density(field_map.fields_to_bispinor(f))
        b = nonlinear.energy_density_em(f)
        mism += a != b
        worst = max(worst, abs(a - b) / b if b else 0.0)
    return worst <= tol, {"mismatches": mism, "max_rel_dev": worst}


@_check("nonlinear.momentum_density", "nonlinear", "nonlinear.momentum_density",
        "momentum-density", 0.0)
def _c_momentum(cfg, rng, tol):
    mism = 0
    worst = 0.0
    c = cfg.params.c
    for f in _random_y_fields(rng, 1000):
        a = nonlinear.momentum_density(field_map.fields_to_bispinor(f), c)
        b = nonlinear.poynting(f, c)
        mism += not np.array_equal(a, b)
        scale = c / (4 * np.pi) * np.linalg.norm(f.E) * np.linalg.norm(f.H)
        worst = max(worst, float(np.max(np.abs(a - b))) / scale)
    return worst <= tol, {"mismatches": mism, "max_rel_dev": worst}


@_check("nonlinear.photon_energy_momentum", "nonlinear", "nonlinear.photon_energy_momentum",
        "localised-energy-momentum", 1e-15)
def _c_photon_em(cfg, rng, tol):
    em = nonlinear.photon_energy_momentum([1, 0, 0, 1j], nonlinear.SelfActionParams(8 * np.pi))
    em2 = nonlinear.photon_energy_momentum([1, 0, 0, 1j], nonlinear.SelfActionParams(16 * np.pi))
    dev = max(abs(em.eps_p - 2), float(np.max(np.abs(em.p_p - [0, -2, 0]))),
              abs(em2.eps_p - 2 * em.eps_p))
    return dev <= tol, {"eps_p": em.eps_p, "p_p": em.p_p.tolist(), "max_dev": dev}


@_check("nonlinear.nonlinear_residual", "nonlinear", "nonlinear.nonlinear_residual",
        "nonlinear-equation", 1e-12)
def _c_nl_res(cfg, rng, tol):
    s = plane_waves.PlaneWaveSpec.consistent(1, (0, 1.0, 0), 1.0)
    r0 = nonlinear.nonlinear_residual(s, nonlinear.SelfActionParams(0.0))
    return abs(r0 - 1.0) < tol, {"free_residual_over_mc2": r0}


@_check("nonlinear.self_consistent_delta_tau", "nonlinear", "nonlinear.self_consistent_delta_tau",
        "self-consistent-volume", 1e-10)
def _c_self_consistent(cfg, rng, tol):
    s = plane_waves.PlaneWaveSpec.consistent(1, (0, 1.0, 0), 1.0)
    amps = np.geomspace(1.0, 4.0, 5)
    res = [nonlinear.self_consistent_delta_tau(s.with_amplitude(a)) for a in amps]
    slope = float(np.polyfit(np.log(amps), np.log([r.delta_tau for r in res]), 1)[0])
    worst = max(r.residual for r in res)
    ok = all(r.delta_tau > 0 for r in res) and worst < tol and abs(slope + 2) <= 0.02
    return ok, {"delta_tau": [r.delta_tau for r in res], "r_p": res[0].r_p,
                "max_residual": worst, "loglog_slope": slope}


@_check("nonlinear.lagrangian_linear", "nonlinear", "nonlinear.lagrangian_linear",
        "linear-lagrangian", 1e-12)
def _c_lag_lin(cfg, rng, tol):
    s = plane_waves.PlaneWaveSpec.consistent(1, (0, 0.7, 0), 1.0)
    psi = plane_waves.plane_wave(s, 0.2, 0.1)
    val = nonlinear.lagrangian_linear(psi, s.energy, s.p, s.mass)
    rnd = rng.normal(size=4) + 1j * rng.normal(size=4)
    ctrl = nonlinear.lagrangian_linear(rnd, s.energy, s.p, s.mass)
    scale = abs(s.energy) * np.vdot(psi, psi).real
    ok = abs(val) < tol * scale and abs(ctrl) > 1e-3
    return ok, {"on_solution": _json_num(val), "random_control": _json_num(ctrl)}


@_check("nonlinear.lagrangian_nonlinear_general", "nonlinear",
        "nonlinear.lagrangian_nonlinear_general", "nonlinear-lagrangian-sign", None,
        informational=True)
def _c_lag_general(cfg, rng, tol):
    s = plane_waves.PlaneWaveSpec.consistent(1, (0, 0.7, 0), 1.0)
    sa = nonlinear.self_consistent_delta_tau(s)
    psi = plane_waves.amplitude_set(s)
    return None, {
        "general_form": _json_num(nonlinear.lagrangian_nonlinear_general(psi, s.energy, s.p, sa)),
        "linear_form": _json_num(nonlinear.lagrangian_linear(psi, s.energy, s.p, s.mass)),
        "delta_tau": sa.delta_tau,
    }


@_check("nonlinear.lagrangian_nonlinear_em", "nonlinear", "nonlinear.lagrangian_nonlinear_em",
        "nonlinear-lagrangian-em", 1e-12)
def _c_lag_em(cfg, rng, tol):
    m = 1.0
    ex = nonlinear.lagrangian_nonlinear_em(field_map.EMField([1, 0, 0], [0, 0, 0]),
                                           nonlinear.SelfActionParams((8 * np.pi) ** 2 * m), m)
    ex_dev = abs(ex - (1 / (8 * np.pi) + 1))
    sa = nonlinear.SelfActionParams(3.0)
    worst = 0.0
    for a, b, c_, d in rng.normal(size=(200, 4)):
        f = field_map.EMField([a, 0, b], [c_, 0, d])
        em = nonlinear.lagrangian_nonlinear_em(f, sa, m) - nonlinear.lagrangian_nonlinear_em(
            f, nonlinear.SelfActionParams(0.0), m)
        q = nonlinear.lagrangian_nonlinear_quantum(field_map.fields_to_bispinor(f), sa, "alpha")
        worst = max(worst, abs(q / (8 * np.pi * m) - em) / abs(em))
    return ex_dev < tol and worst < tol, {"example_dev": ex_dev, "quantum_chain_rel_dev": worst}


@_check("nonlinear.invariant_identity_check", "nonlinear", "nonlinear.invariant_identity_check",
        "field-invariants", 1e-12)
def _c_invariants(cfg, rng, tol):
    worst = 0.0
    for e, h in zip(rng.normal(size=(1000, 3)), rng.normal(size=(1000, 3))):
        lhs, rhs = nonlinear.invariant_identity_check(field_map.EMField(e, h))
        worst = max(worst, abs(lhs - rhs) / (e @ e + h @ h) ** 2)
    return worst < tol, {"max_rel_dev": worst, "samples": 1000}


@_check("nonlinear.fierz_check", "nonlinear", "nonlinear.fierz_check", "fierz", 1e-12)
def _c_fierz(cfg, rng, tol):
    psi = rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))
    lhs, rhs = nonlinear.fierz_check(psi)
    n2 = np.sum(np.abs(psi) ** 2, axis=1)
    worst = float(np.max(np.abs(lhs - rhs) / n2**2))
    return worst < tol, {"max_rel_dev": worst, "samples": 1000,
                         "alpha5_product": _alpha5_desc()}


@_check("nonlinear.fierz_check:printed_alpha3", "nonlinear", "nonlinear.fierz_check",
        "fierz-printed-variant", 1e-12, informational=True)
def _c_fierz_printed(cfg, rng, tol):
    psi = rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))
    lhs, rhs = nonlinear.fierz_check(psi, "printed")
    n2 = np.sum(np.abs(psi) ** 2, axis=1)
    worst = float(np.max(np.abs(lhs - rhs) / n2**2))
    return None, {"max_rel_dev": worst, "holds": bool(worst < tol)}


@_check("nonlinear.lagrangian_nonlinear_quantum", "nonlinear",
        "nonlinear.lagrangian_nonlinear_quantum", "four-fermion", 1e-12)
def _c_lag_q(cfg, rng, tol):
    sa = nonlinear.SelfActionParams(2.5)
    psi = rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))
    a = nonlinear.lagrangian_nonlinear_quantum(psi, sa, "alpha")
    b = nonlinear.lagrangian_nonlinear_quantum(psi, sa, "fierz")
    scale = sa.delta_tau / (8 * np.pi) * np.sum(np.abs(psi) ** 2, axis=1) ** 2
    worst = float(np.max(np.abs(a - b) / scale))
    return worst < tol, {"max_rel_dev": worst}


# -------------------------------------------------------------- born-infeld

@_check("born_infeld.bi_lagrangian", "born-infeld", "born_infeld.bi_lagrangian",
        "born-infeld", 0.05)
def _c_bi(cfg, rng, tol):
    f = field_map.EMField([1.0, 0.2, 0], [0.3, 0, 0.5])
    E2, B2 = f.E @ f.E, f.H @ f.H
    maxwell = -(E2 - B2) / (8 * np.pi)
    a = np.geomspace(1e-3, 1e-2, 8)
    dev = [abs(born_infeld.bi_lagrangian(f, x) - maxwell) for x in a]
    slope = float(np.polyfit(np.log(a), np.log(dev), 1)[0])
    zero = born_infeld.bi_lagrangian(field_map.EMField([0, 0, 0], [0, 0, 0]), 1.0)
    null = born_infeld.bi_lagrangian(field_map.EMField([1, 0, 0], [0, 1, 0]), 1.0)
    ok = abs(slope - 2) <= tol and zero == 0 and null == 0
    return ok, {"deviation_slope_in_a": slope, "zero_field": zero, "null_field": null}


@_check("born_infeld.bi_weak_field", "born-infeld", "born_infeld.bi_weak_field",
        "born-infeld-weak", 1e-4)
def _c_bi_weak(cfg, rng, tol):
    a = 1.0
    f = field_map.EMField([0.05, 0, 0], [0, 0, 0])
    full = born_infeld.bi_lagrangian(f, a)
    weak = born_infeld.bi_weak_field(f, a)
    rel = abs(full - weak) / abs(full)
    # leading-order relation between the two printed forms
    g = field_map.EMField([1e-4, 0, 0], [0, 0, 0])
    lead = born_infeld.bi_lagrangian(g, a) / born_infeld.bi_weak_field(g, a)
    return rel < tol, {"rel_dev_aE_0.05": rel, "leading_ratio": lead}


@_check("born_infeld.heisenberg_euler", "born-infeld", "born_infeld.heisenberg_euler",
        "heisenberg-euler", 1e-15)
def _c_he(cfg, rng, tol):
    aq = born_infeld.FINE_STRUCTURE
    val = born_infeld.heisenberg_euler(field_map.EMField([1, 0, 0], [1, 0, 0]), aq)
    want = 7 * aq**2 / (360 * np.pi**2)
    zero = born_infeld.heisenberg_euler(field_map.EMField([0, 0, 0], [0, 0, 0]), aq)
    rel = abs(val / want - 1)
    return rel < tol and zero == 0, {"quartic_rel_dev": rel, "EH_coefficient": 7,
                                     "born_infeld_EH_coefficient": 4}


@_check("born_infeld.bi_radial_fields", "born-infeld", "born_infeld.bi_radial_fields",
        "born-infeld-profile", 1e-14, "printed")
def _c_bi_radial(cfg, rng, tol):
    p = born_infeld.BIParams(e=1.0, E0=1.0)
    _, _, eps0 = born_infeld.bi_radial_fields(p.r0, p)
    _, e_small, _ = born_infeld.bi_radial_fields(p.r0 / 100, p)
    D10, E10, eps10 = born_infeld.bi_radial_fields(10 * p.r0, p)
    prof = born_infeld.radial_profile(p, np.geomspace(1e-2, 1e2, 200))
    mono = bool(np.all(np.diff(prof[:, 3]) < 0) and np.all(np.diff(prof[:, 2]) < 0))
    bound = bool(np.all(prof[:, 2] <= np.minimum(p.E0, prof[:, 1]) * (1 + 1e-15)))
    d_eps0 = abs(eps0 - math.sqrt(2))
    d_small = abs(e_small - p.E0) / p.E0
    d10 = abs(D10 / E10 - eps10)
    ok = d_eps0 < tol and d_small < 1e-7 and d10 < tol and mono and bound
    return ok, {"eps_at_r0_dev": d_eps0, "E_near_origin_rel_dev": d_small,
                "D_over_E_dev_10r0": d10, "monotone": mono, "E_bounded": bound}


# ------------------------------------------------------------------ running

def _json_num(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [_json_num(float(x.real)), _json_num(float(x.imag))]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return x + 0.0
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return _json_num(obj)


def _run_check(chk: _Check, cfg: RunConfig) -> CheckReport:
    tol = cfg.tolerances.get(chk.check_id, chk.tolerance)
    rng = np.random.default_rng([cfg.seed, sum(map(ord, chk.check_id))])
    passed, measured = chk.fn(cfg, rng, tol)
    if chk.informational:
        status = "informational"
    else:
        status = "pass" if passed else "fail"
    return CheckReport(chk.check_id, chk.suite, chk.operation, chk.tag, status,
                       _clean(measured), tol, chk.provenance)


def run_suite(cfg: RunConfig) -> list[CheckReport]:
    """Run every check of ``cfg.suite`` (or all suites) in registration order."""
    cfg.validate()
    if cfg.suite != "all" and cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {('all',) + SUITES}")
    out = []
    for chk in CHECKS.values():
        if cfg.suite != "all" and chk.suite != cfg.suite:
            continue
        if chk.literal_only and not cfg.paper_literal:
            continue
        out.append(_run_check(chk, cfg))
    return out


def exit_status(reports: list[CheckReport]) -> int:
    return int(any(r.status == "fail" for r in reports))


def manifest(cfg: RunConfig) -> dict:
    ts = FIXED_TIMESTAMP if cfg.fixed_clock else datetime.now(timezone.utc).isoformat()
    return {
        "spec_version": __version__,
        "seed": cfg.seed,
        "units": cfg.units,
        "suite": cfg.suite,
        "sizes": list(cfg.sizes),
        "paper_literal": cfg.paper_literal,
        "timestamp": ts,
    }


def to_json(cfg: RunConfig, reports: list[CheckReport]) -> str:
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "informational")}
    doc = {
        "manifest": manifest(cfg),
        "checks": [asdict(r) for r in reports],
        "summary": counts,
    }
    return json.dumps(_clean(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_csv(cfg: RunConfig, reports: list[CheckReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["check_id", "suite", "operation", "tag", "status", "tolerance",
                "provenance", "measured"])
    for r in reports:
        w.writerow([r.check_id, r.suite, r.operation, r.tag, r.status,
                    "" if r.tolerance is None else repr(float(r.tolerance)), r.provenance,
                    json.dumps(r.measured, sort_keys=True)])
    return buf.getvalue()


def render(cfg: RunConfig, reports: list[CheckReport]) -> str:
    return to_json(cfg, reports) if cfg.fmt == "json" else to_csv(cfg, reports)

