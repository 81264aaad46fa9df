"""Mean arrival time at a detector from a probability current.

The arrival-time distribution at x = X is |J(X,t)| normalized over t, and the
mean arrival time is

    tau_bar = Int_0^T |J(X,t)| t dt / Int_0^T |J(X,t)| dt.

The upper limit T replaces the (logarithmically divergent) infinite one; under
the "three-sigma" policy it is the self-consistent solution of

    T = (X + 3*sigma(T)) / u,

with sigma(T) the quantum packet width at time T, solved by fixed-point
iteration from T0 = X/u.  The same T is used whether the quantum or the
classical current is integrated, so the two means are integrals over the same
interval.  A "fixed" policy bypasses the iteration for regimes where packet
spreading outruns transport and the fixed point does not exist.

Signed-flux diagnostics (the fraction of integrated |J| coming from J < 0)
are recorded, never silently corrected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import j_c
from .errors import CutoffConvergenceError, DenominatorVanishesError, ValidationError
from .params import CUTOFF_FIXED, DetectorConfig, PacketParams
from .quadrature import integrate_adaptive
from .quantum import j_q, width


@dataclass(frozen=True)
class ArrivalResult:
    tau_bar: float  # mean arrival time (s)
    t_cutoff: float  # upper integration limit actually used (s)
    numerator: float  # Int |J| t dt
    denominator: float  # Int |J| dt (arrival probability up to T)
    negative_flux_fraction: float  # Int max(-J,0) dt / Int |J| dt


def cutoff_time(params: PacketParams, det: DetectorConfig) -> float:
    """Upper integration limit per the detector's cutoff policy."""
    if det.cutoff == CUTOFF_FIXED:
        return float(det.fixed_cutoff)
    if not params.u > 0:
        raise ValidationError(f"three-sigma cutoff needs u > 0 (packet must approach the detector), got u={params.u!r}")
    T = det.X / params.u
    for _ in range(det.max_cutoff_iters):
        with np.errstate(over="ignore"):  # divergent iterates overflow before the finiteness check
            T_next = (det.X + 3.0 * float(width(params, T))) / params.u
        if not math.isfinite(T_next):
            raise CutoffConvergenceError(
                f"cutoff iteration diverged (T -> {T_next!r}); spreading outruns transport, supply a fixed cutoff"
            )
        if abs(T_next - T) < 1e-12 * abs(T_next):
            return T_next
        T = T_next
    raise CutoffConvergenceError(
        f"cutoff fixed point not converged after {det.max_cutoff_iters} iterations (last T={T:g}); "
        "spreading outruns transport, supply a fixed cutoff"
    )


def _pulse_breakpoints(params: PacketParams, X: float, T: float):
    """Initial quadrature nodes bracketing the packet's transit of X, so the
    first coarse pass cannot step over a narrow arrival pulse."""
    if not params.u > 0:
        return ()
    t_star = X / params.u
    if not 0.0 < t_star < T:
        return ()
    w = float(width(params, t_star)) / params.u
    offsets = (-10.0, -5.0, -2.0, -1.0, 0.0, 1.0, 2.0, 5.0, 10.0)
    return tuple(tb for tb in (t_star + k * w for k in offsets) if 0.0 < tb < T)


def mean_arrival_time(current_fn, params: PacketParams, det: DetectorConfig) -> ArrivalResult:
    """Mean arrival time of |current_fn(X, .)| over [0, T].

    current_fn(x, t) -> current; feed `j_q` or `j_c` partials (or any other
    current defined on the interval).
    """
    T = cutoff_time(params, det)
    if not T > 0:
        raise ValidationError(f"cutoff time must be positive, got {T!r}")
    X = det.X
    bps = _pulse_breakpoints(params, X, T)
    abs_floor = max(det.quad_abs_tol, 1e-300)

    def abs_j(t):
        return abs(float(current_fn(X, t)))

    den = integrate_adaptive(
        abs_j, 0.0, T, rel_tol=det.quad_rel_tol, abs_tol=abs_floor, breakpoints=bps, initial_segments=8
    )
    if not den > det.quad_abs_tol:
        raise DenominatorVanishesError(
            f"integrated |J(X={X:g}, t)| over [0, {T:g}] is {den:g} <= {det.quad_abs_tol:g}: "
            "the packet never meaningfully reaches the detector"
        )
    num = integrate_adaptive(
        lambda t: abs_j(t) * t, 0.0, T, rel_tol=det.quad_rel_tol, abs_tol=abs_floor, breakpoints=bps, initial_segments=8
    )
    neg = integrate_adaptive(
        lambda t: max(-float(current_fn(X, t)), 0.0),
        0.0,
        T,
        rel_tol=1e-6,
        abs_tol=abs_floor,
        breakpoints=bps,
        initial_segments=8,
    )
    return ArrivalResult(
        tau_bar=num / den,
        t_cutoff=T,
        numerator=num,
        denominator=den,
        negative_flux_fraction=min(max(neg / den, 0.0), 1.0),
    )


def mean_arrival_time_fixed_grid(current_fn, params: PacketParams, det: DetectorConfig, num_intervals: int) -> float:
    """Composite-Simpson fallback for tau_bar on a uniform grid over [0, T].

    Independent of the adaptive path; used to cross-check it.  current_fn must
    accept an array of times.  num_intervals must be even.
    """
    if num_intervals % 2 or num_intervals < 2:
        raise ValidationError(f"num_intervals must be even and >= 2, got {num_intervals}")
    T = cutoff_time(params, det)
    t = np.linspace(0.0, T, num_intervals + 1)
    absj = np.abs(np.asarray(current_fn(det.X, t), dtype=float))
    w = np.ones(num_intervals + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    h = T / num_intervals
    den = h / 3.0 * np.sum(w * absj)
    num = h / 3.0 * np.sum(w * absj * t)
    if not den > det.quad_abs_tol:
        raise DenominatorVanishesError(f"fixed-grid denominator {den:g} <= {det.quad_abs_tol:g}")
    return num / den


def arrival_time_quantum(params: PacketParams, det: DetectorConfig) -> ArrivalResult:
    return mean_arrival_time(lambda x, t: j_q(params, x, t), params, det)


def arrival_time_classical(params: PacketParams, det: DetectorConfig) -> ArrivalResult:
    return mean_arrival_time(lambda x, t: j_c(params, x, t), params, det)
