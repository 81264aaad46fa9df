"""Classical statistical ensemble of free particles.

The initial phase-space density is the product of the packet's position and
momentum distributions (no position-momentum correlation):

    d0(x0,p0) = 1/(pi*hbar*sqrt(1+C^2))
                * exp{-x0^2/(2*sigma0^2*(1+C^2)) - 2*sigma0^2*(p0-p_bar)^2/hbar^2}

Free flow transports it along straight characteristics, d_t(x,p,t) =
d0(x - p*t/m, p), which solves the collisionless transport equation
dD/dt + (p/m) dD/dx = 0.  Integrating out p gives a Gaussian position
density of variance sigma0^2*(1 + C^2 + (hbar*t/(2*m*sigma0^2))^2) and the
current

    j_c(x,t) = rho_c(x,t) * { u + (x-u*t)*hbar^2*t
                              / [hbar^2*t^2 + 4*m^2*sigma0^4*(1+C^2)] }.

`rho_c_from_phase_space` and `j_c_from_phase_space` evaluate the defining
p-integrals numerically; they exist as independent cross-checks of the closed
forms above.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .params import PacketParams
from .quadrature import integrate_adaptive


class PhasePoint(NamedTuple):
    """A classical phase-space point: position (cm) and momentum (g*cm/s)."""

    x: float
    p: float


def d0(params: PacketParams, x0, p0):
    """Initial phase-space density (1/(cm*g*cm/s)); nonnegative, normalized."""
    x0 = np.asarray(x0, dtype=float)
    q = np.asarray(p0, dtype=float) - params.p_bar
    c2 = 1.0 + params.C * params.C
    out = np.exp(
        -(x0 * x0) / (2.0 * params.sigma0**2 * c2) - 2.0 * params.sigma0**2 * q * q / params.hbar**2
    ) / (np.pi * params.hbar * np.sqrt(c2))
    return float(out) if np.ndim(out) == 0 else out


def d_t(params: PacketParams, x, p, t):
    """Phase-space density at time t: d0 transported along x = x0 + p*t/m."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    return d0(params, x - p * np.asarray(t, dtype=float) / params.mass, p)


def classical_width(params: PacketParams, t):
    """Standard deviation of the classical position density (cm)."""
    c2 = 1.0 + params.C * params.C
    beta = params.hbar * np.asarray(t, dtype=float) / (2.0 * params.mass * params.sigma0**2)
    return params.sigma0 * np.sqrt(c2 + beta * beta)


def rho_c(params: PacketParams, x, t):
    """Classical position density (1/cm): Gaussian centered on u*t."""
    x = np.asarray(x, dtype=float)
    var = classical_width(params, t) ** 2
    xi = x - params.u * np.asarray(t, dtype=float)
    out = np.exp(-(xi * xi) / (2.0 * var)) / np.sqrt(2.0 * np.pi * var)
    return float(out) if np.ndim(out) == 0 else out


def j_c(params: PacketParams, x, t):
    """Classical probability current (1/s)."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    xi = x - params.u * t
    ht = params.hbar * t
    denom = ht * ht + 4.0 * params.mass**2 * params.sigma0**4 * (1.0 + params.C * params.C)
    out = rho_c(params, x, t) * (params.u + xi * params.hbar * ht / denom)
    return float(out) if np.ndim(out) == 0 else out


def mean_velocity(params: PacketParams, x, t):
    """Ensemble-average velocity j_c/rho_c = u + (x-u*t)*hbar^2*t/(...); affine in x.

    Raises DomainError where rho_c underflows to zero, since the conditional
    mean is undefined there.
    """
    rho = np.asarray(rho_c(params, x, t))
    if np.any(rho == 0.0):
        bad = np.argwhere(rho == 0.0)
        idx = tuple(bad[0]) if bad.size else ()
        x_bad = np.asarray(x, dtype=float)[idx] if np.ndim(x) else x
        t_bad = np.asarray(t, dtype=float)[idx] if np.ndim(t) else t
        raise DomainError(f"mean velocity undefined at (x={x_bad!r}, t={t_bad!r}): density underflows to 0")
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    xi = x - params.u * t
    ht = params.hbar * t
    denom = ht * ht + 4.0 * params.mass**2 * params.sigma0**4 * (1.0 + params.C * params.C)
    out = params.u + xi * params.hbar * ht / denom
    return float(out) if np.ndim(out) == 0 else out


# momentum window for the defining p-integrals: 10 standard deviations of the
# momentum marginal bounds the truncation error below ~1e-20 of the mass
_P_WINDOW_SIGMAS = 10.0


def rho_c_from_phase_space(params: PacketParams, x, t, rel_tol=1e-10):
    """Position density via numerical p-integration of d_t (cross-check)."""
    sp = params.momentum_spread
    lo = params.p_bar - _P_WINDOW_SIGMAS * sp
    hi = params.p_bar + _P_WINDOW_SIGMAS * sp
    return integrate_adaptive(lambda p: d_t(params, x, p, t), lo, hi, rel_tol=rel_tol, initial_segments=8)


def j_c_from_phase_space(params: PacketParams, x, t, rel_tol=1e-10):
    """Current via the first momentum moment of d_t over m (cross-check)."""
    sp = params.momentum_spread
    lo = params.p_bar - _P_WINDOW_SIGMAS * sp
    hi = params.p_bar + _P_WINDOW_SIGMAS * sp
    return integrate_adaptive(
        lambda p: p * d_t(params, x, p, t) / params.mass, lo, hi, rel_tol=rel_tol, initial_segments=8
    )
