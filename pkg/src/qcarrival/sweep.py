"""Batch evaluation over a one-dimensional parameter axis.

A sweep varies one named axis (mass_amu, X, C, or t) over an explicit value
list and evaluates the requested quantities at each value:

  rho_q, rho_c, wigner -- profiles over an x grid at the evaluation time
                          (wigner is the phase-space slice at p = p_bar)
  j_q, j_c             -- time profiles at the detector location over a t grid
  tau_q, tau_c         -- scalar mean arrival times from the respective currents

Per-point numerical failures (cutoff non-convergence, vanishing denominator,
quadrature failure) become error rows carrying the message, so a sweep over a
partly pathological regime still completes and accounts for every requested
cell.  Results are order-normalized, making reruns byte-identical.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .arrival import arrival_time_classical, arrival_time_quantum
from .classical import j_c, rho_c
from .errors import NumericalError, ValidationError
from .params import AMU_GRAMS, DetectorConfig, PacketParams
from .quantum import j_q, rho_q
from .wigner import wigner_closed

AXES = ("mass_amu", "X", "C", "t")
GRID_X_QUANTITIES = ("rho_q", "rho_c", "wigner")
GRID_T_QUANTITIES = ("j_q", "j_c")
SCALAR_QUANTITIES = ("tau_q", "tau_c")
QUANTITIES = GRID_X_QUANTITIES + GRID_T_QUANTITIES + SCALAR_QUANTITIES


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValidationError(f"grid needs finite lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.count < 2:
            raise ValidationError(f"grid count must be >= 2, got {self.count}")

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepSpec:
    base: PacketParams
    det: DetectorConfig
    axis: str
    values: tuple
    outputs: tuple
    grid: GridSpec | None = None
    t_eval: float | None = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValidationError(f"axis must be one of {AXES}, got {self.axis!r}")
        if len(self.values) == 0:
            raise ValidationError("values must be non-empty")
        diffs = np.diff(np.asarray(self.values, dtype=float))
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValidationError(f"values must be strictly monotone, got {self.values!r}")
        if self.axis == "mass_amu" and any(float(v) <= 0 for v in self.values):
            raise ValidationError(f"mass_amu values must be > 0, got {self.values!r}")
        if len(self.outputs) == 0:
            raise ValidationError("outputs must be non-empty")
        for q in self.outputs:
            if q not in QUANTITIES:
                raise ValidationError(f"unknown output {q!r}; known: {QUANTITIES}")
        needs_grid = any(q not in SCALAR_QUANTITIES for q in self.outputs)
        if needs_grid and self.grid is None:
            raise ValidationError("grid required for profile outputs (rho_*, j_*, wigner)")
        if self.axis == "t":
            bad = [q for q in self.outputs if q not in GRID_X_QUANTITIES]
            if bad:
                raise ValidationError(f"axis 't' supports only x-profile outputs, not {bad}")
        elif any(q in GRID_X_QUANTITIES for q in self.outputs) and self.t_eval is None:
            raise ValidationError("t_eval required for x-profile outputs (rho_*, wigner)")


@dataclass(frozen=True)
class SweepRow:
    axis: str
    axis_value: float
    grid: str  # "x", "t", or "" for scalars
    grid_value: float | None
    quantity: str
    value: float
    error: str = ""  # failure message for error rows; empty otherwise


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    metadata: dict

    @property
    def error_rows(self):
        return tuple(r for r in self.rows if r.error)


def _resolve(spec: SweepSpec, v: float):
    params, det, t_eval = spec.base, spec.det, spec.t_eval
    if spec.axis == "mass_amu":
        params = dataclasses.replace(params, mass=v * AMU_GRAMS)
    elif spec.axis == "C":
        params = dataclasses.replace(params, C=v)
    elif spec.axis == "X":
        det = dataclasses.replace(det, X=v)
    else:  # "t"
        t_eval = v
    return params, det, t_eval


def run_sweep(spec: SweepSpec) -> SweepResult:
    rows = []
    for v in spec.values:
        v = float(v)
        params, det, t_eval = _resolve(spec, v)
        for q in spec.outputs:
            if q in GRID_X_QUANTITIES:
                xs = spec.grid.points()
                if q == "rho_q":
                    vals = rho_q(params, xs, t_eval)
                elif q == "rho_c":
                    vals = rho_c(params, xs, t_eval)
                else:
                    vals = wigner_closed(params, xs, params.p_bar, t_eval)
                rows.extend(
                    SweepRow(spec.axis, v, "x", float(x), q, float(val)) for x, val in zip(xs, vals)
                )
            elif q in GRID_T_QUANTITIES:
                ts = spec.grid.points()
                fn = j_q if q == "j_q" else j_c
                vals = fn(params, det.X, ts)
                rows.extend(
                    SweepRow(spec.axis, v, "t", float(t), q, float(val)) for t, val in zip(ts, vals)
                )
            else:
                try:
                    res = arrival_time_quantum(params, det) if q == "tau_q" else arrival_time_classical(params, det)
                    rows.append(SweepRow(spec.axis, v, "", None, q, res.tau_bar))
                except NumericalError as exc:
                    rows.append(
                        SweepRow(spec.axis, v, "", None, q, float("nan"), f"{type(exc).__name__}: {exc}")
                    )
    rows.sort(key=lambda r: (r.axis_value, r.quantity, r.grid_value if r.grid_value is not None else -math.inf))
    metadata = {
        "version": __version__,
        "axis": spec.axis,
        "values": [float(v) for v in spec.values],
        "outputs": list(spec.outputs),
        "sigma0": spec.base.sigma0,
        "u": spec.base.u,
        "C": spec.base.C,
        "mass_g": spec.base.mass,
        "hbar": spec.base.hbar,
        "X": spec.det.X,
        "cutoff": spec.det.cutoff,
        "t_eval": spec.t_eval,
        "grid": None if spec.grid is None else [spec.grid.lo, spec.grid.hi, spec.grid.count],
    }
    return SweepResult(rows=tuple(rows), metadata=metadata)
