"""Closed-form quantum observables for a freely evolving Gaussian packet.

With s(t) = C + hbar*t/(2*m*sigma0^2) and xi = x - u*t:

    psi(x,t)   = (2*pi*sigma0^2)^(-1/4) / sqrt(1+i*s)
                 * exp{i*k*(x - u*t/2)} * exp{-xi^2 / (4*sigma0^2*(1+i*s))}
    rho_q(x,t) = |psi|^2
               = exp{-xi^2 / (2*sigma0^2*(1+s^2))} / sqrt(2*pi*sigma0^2*(1+s^2))
    j_q(x,t)   = rho_q * { u + hbar*s*xi / (2*m*sigma0^2*(1+s^2)) }

The density is a Gaussian of standard deviation width(t) = sigma0*sqrt(1+s^2)
centered on u*t; j_q/rho_q is affine in x at fixed t.  Far in the tails the
exponential underflows to an exact 0.0, which downstream quadrature treats as
a legitimate value.

All functions broadcast over numpy arrays in x, p and t.
"""

from __future__ import annotations

import numpy as np

from .params import PacketParams


def spread_s(params: PacketParams, t):
    """Dimensionless spreading parameter s(t) = C + hbar*t/(2*m*sigma0^2)."""
    return params.C + params.hbar * np.asarray(t, dtype=float) / (2.0 * params.mass * params.sigma0**2)


def width(params: PacketParams, t):
    """Packet standard deviation sigma0*sqrt(1+s(t)^2) (cm)."""
    s = spread_s(params, t)
    return params.sigma0 * np.sqrt(1.0 + s * s)


def psi(params: PacketParams, x, t):
    """Time-evolved wave function (units cm^-1/2); complex."""
    x = np.asarray(x, dtype=float)
    s = spread_s(params, t)
    denom = 1.0 + 1j * s
    xi = x - params.u * np.asarray(t, dtype=float)
    pref = (2.0 * np.pi * params.sigma0**2) ** (-0.25) / np.sqrt(denom)
    phase = np.exp(1j * params.k * (x - 0.5 * params.u * np.asarray(t, dtype=float)))
    gauss = np.exp(-(xi * xi) / (4.0 * params.sigma0**2 * denom))
    out = pref * phase * gauss
    return complex(out) if np.ndim(out) == 0 else out


def rho_q(params: PacketParams, x, t):
    """Position probability density |psi|^2 (1/cm)."""
    x = np.asarray(x, dtype=float)
    s = spread_s(params, t)
    s2 = 1.0 + s * s
    xi = x - params.u * np.asarray(t, dtype=float)
    out = np.exp(-(xi * xi) / (2.0 * params.sigma0**2 * s2)) / np.sqrt(2.0 * np.pi * params.sigma0**2 * s2)
    return float(out) if np.ndim(out) == 0 else out


def j_q(params: PacketParams, x, t):
    """Probability current density (1/s); can be negative (backflow)."""
    x = np.asarray(x, dtype=float)
    s = spread_s(params, t)
    s2 = 1.0 + s * s
    xi = x - params.u * np.asarray(t, dtype=float)
    drift = params.u + params.hbar * s * xi / (2.0 * params.mass * params.sigma0**2 * s2)
    out = rho_q(params, x, t) * drift
    return float(out) if np.ndim(out) == 0 else out


def momentum_density(params: PacketParams, p):
    """Momentum probability density (1/(g*cm/s)); time-invariant under free evolution."""
    q = np.asarray(p, dtype=float) - params.p_bar
    out = np.sqrt(2.0 * params.sigma0**2 / (np.pi * params.hbar**2)) * np.exp(
        -2.0 * params.sigma0**2 * q * q / params.hbar**2
    )
    return float(out) if np.ndim(out) == 0 else out
