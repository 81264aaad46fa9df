"""Wigner quasi-distribution of the evolved packet.

Closed form (q = p - p_bar, s = C + hbar*t/(2*m*sigma0^2)):

    W(x,p,t) = 1/(pi*hbar) * exp{-2*q^2*sigma0^2/hbar^2}
               * exp{-[x - p*t/m - 2*C*q*sigma0^2/hbar]^2 / (2*sigma0^2)}

For this Gaussian family W is nonnegative everywhere, its x-marginal is the
position density and its p-marginal the (time-invariant) momentum density.
With C = 0 it coincides pointwise with the classical phase-space density; for
C != 0 the two differ, because the classical ensemble carries no
position-momentum correlation.

`wigner_quad` evaluates the defining transform

    W(x,p,t) = 1/(pi*hbar) * Int dy  psi*(x+y,t) psi(x-y,t) exp{2*i*p*y/hbar}

by adaptive quadrature over y in +/- 8 packet widths.  It exists purely as an
independent oracle for the closed form; production paths use `wigner_closed`.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .params import PacketParams
from .quadrature import integrate_adaptive
from .quantum import psi, spread_s, width


def wigner_closed(params: PacketParams, x, p, t):
    """Closed-form Wigner value (1/(cm*g*cm/s)); peak 1/(pi*hbar) at (u*t, p_bar)."""
    x = np.asarray(x, dtype=float)
    q = np.asarray(p, dtype=float) - params.p_bar
    t = np.asarray(t, dtype=float)
    shift = x - (params.p_bar + q) * t / params.mass - 2.0 * params.C * q * params.sigma0**2 / params.hbar
    out = (
        np.exp(-2.0 * q * q * params.sigma0**2 / params.hbar**2)
        * np.exp(-shift * shift / (2.0 * params.sigma0**2))
        / (np.pi * params.hbar)
    )
    return float(out) if np.ndim(out) == 0 else out


def wigner_quad_complex(params: PacketParams, x, p, t, rel_tol=1e-9, y_sigmas=8.0):
    """Direct transform of psi, kept complex (imaginary part is a diagnostic:
    the exact transform of any state is real)."""
    half = y_sigmas * float(width(params, t))

    def integrand(y):
        return np.conj(psi(params, x + y, t)) * psi(params, x - y, t) * np.exp(2j * p * y / params.hbar)

    # 64 initial panels keep a coarse Simpson pass from aliasing the
    # exp{2ipy/hbar} oscillation into spurious early convergence
    val = integrate_adaptive(
        integrand, -half, half, rel_tol=rel_tol, abs_tol=1e-300, initial_segments=64, max_depth=20
    )
    return complex(val) / (np.pi * params.hbar)


def wigner_quad(params: PacketParams, x, p, t, rel_tol=1e-9, y_sigmas=8.0) -> float:
    """Real part of the direct transform; oracle for `wigner_closed`."""
    return wigner_quad_complex(params, x, p, t, rel_tol=rel_tol, y_sigmas=y_sigmas).real


class MarginalProfiles(NamedTuple):
    x: np.ndarray
    x_marginal: np.ndarray  # Int W dp, should reproduce rho_q(x,t)
    p: np.ndarray
    p_marginal: np.ndarray  # Int W dx, should reproduce |Phi(p,0)|^2


def default_phase_grid(params: PacketParams, t, nx=41, np_count=41, x_sigmas=8.0, p_sigmas=8.0):
    """Grids covering +/- x_sigmas packet widths and +/- p_sigmas momentum spreads."""
    w = float(width(params, t))
    xc = params.u * t
    sp = params.momentum_spread
    x = np.linspace(xc - x_sigmas * w, xc + x_sigmas * w, nx)
    p = np.linspace(params.p_bar - p_sigmas * sp, params.p_bar + p_sigmas * sp, np_count)
    return x, p


def wigner_marginals(params: PacketParams, t, x, p, rel_tol=1e-10) -> MarginalProfiles:
    """Numerical marginals of the closed form on the given grids.

    Integration windows follow the Gaussian structure of W: at fixed x the
    p-mass sits on the conditional center q* = s*hbar*(x-u*t)/(2*width^2),
    at fixed p the x-mass sits on u*t + q*(t/m + 2*C*sigma0^2/hbar); windows
    of +/- 12 marginal widths leave truncation far below the tolerances used
    in tests.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    s = float(spread_s(params, t))
    w = float(width(params, t))
    sp = params.momentum_spread
    xc = params.u * t

    x_marg = np.empty_like(x)
    for i, xi in enumerate(x):
        q_star = s * params.hbar * (xi - xc) / (2.0 * w * w)
        lo = params.p_bar + q_star - 12.0 * sp
        hi = params.p_bar + q_star + 12.0 * sp
        x_marg[i] = integrate_adaptive(
            lambda pp: wigner_closed(params, xi, pp, t), lo, hi, rel_tol=rel_tol, abs_tol=1e-300, initial_segments=8
        )

    slope = t / params.mass + 2.0 * params.C * params.sigma0**2 / params.hbar
    p_marg = np.empty_like(p)
    for i, pi in enumerate(p):
        x_star = xc + (pi - params.p_bar) * slope
        p_marg[i] = integrate_adaptive(
            lambda xx: wigner_closed(params, xx, pi, t),
            x_star - 12.0 * params.sigma0,
            x_star + 12.0 * params.sigma0,
            rel_tol=rel_tol,
            abs_tol=1e-300,
            initial_segments=8,
        )

    return MarginalProfiles(x=x, x_marginal=x_marg, p=p, p_marginal=p_marg)
