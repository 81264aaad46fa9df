"""Finite-difference residuals of the transport identities.

All three identities hold exactly for the closed forms, so their central-
difference residuals are pure truncation error and must shrink as O(h^2)
under step halving; `measured_order` quantifies that.  Step sizes are the
caller's business but should scale with the local width (in x, p) and with t
(in time) so the checks stay meaningful across the many orders of magnitude
the parameter ranges span.
"""

from __future__ import annotations

import math

import numpy as np

from .classical import d_t, j_c, rho_c
from .params import PacketParams
from .quantum import j_q, psi, rho_q


def continuity_residual_quantum(params: PacketParams, x, t, hx, ht):
    """Central-difference residual of d(rho_q)/dt + d(j_q)/dx."""
    drho_dt = (rho_q(params, x, t + ht) - rho_q(params, x, t - ht)) / (2.0 * ht)
    dj_dx = (j_q(params, x + hx, t) - j_q(params, x - hx, t)) / (2.0 * hx)
    return drho_dt + dj_dx


def continuity_residual_classical(params: PacketParams, x, t, hx, ht):
    """Central-difference residual of d(rho_c)/dt + d(j_c)/dx."""
    drho_dt = (rho_c(params, x, t + ht) - rho_c(params, x, t - ht)) / (2.0 * ht)
    dj_dx = (j_c(params, x + hx, t) - j_c(params, x - hx, t)) / (2.0 * hx)
    return drho_dt + dj_dx


def liouville_residual(params: PacketParams, x, p, t, hx, ht):
    """Central-difference residual of dD/dt + (p/m) dD/dx for the free flow."""
    dD_dt = (d_t(params, x, p, t + ht) - d_t(params, x, p, t - ht)) / (2.0 * ht)
    dD_dx = (d_t(params, x + hx, p, t) - d_t(params, x - hx, p, t)) / (2.0 * hx)
    return dD_dt + (p / params.mass) * dD_dx


def measured_order(residual_at_scale, halvings=2):
    """Observed convergence orders log2(r(h)/r(h/2)) for successive halvings.

    residual_at_scale(scale) must evaluate the residual with every step
    multiplied by `scale`; called with 1, 1/2, ..., 1/2^halvings.
    """
    rs = [abs(residual_at_scale(0.5**k)) for k in range(halvings + 1)]
    return [math.log2(rs[k] / rs[k + 1]) for k in range(halvings)]


def j_q_from_psi(params: PacketParams, x, t, hx):
    """Current from the wave function, (hbar/m)*Im(psi* dpsi/dx) with a
    central-difference derivative; agrees with j_q to O(hx^2)."""
    dpsi_dx = (psi(params, x + hx, t) - psi(params, x - hx, t)) / (2.0 * hx)
    val = params.hbar / params.mass * np.imag(np.conj(psi(params, x, t)) * dpsi_dx)
    return float(val) if np.ndim(val) == 0 else val
