"""Trajectory Monte Carlo oracle for the classical ensemble.

Draw (x0, p0) from the initial phase-space density — a product of independent
Gaussians, x0 ~ N(0, sigma0^2*(1+C^2)) and p0 ~ N(p_bar, (hbar/2*sigma0)^2) —
evolve each particle ballistically, and estimate the position density, the
detector-crossing flux, and the mean arrival time from the sample.  Every
estimator is a deterministic function of (seed, params), so runs are
bit-reproducible.

Free motion makes crossings exact: a particle with p0 != 0 crosses x = X at
most once, at t* = (X - x0)*m/p0, and the crossing is counted with the sign
of p0 (the sign of the current's integrand p*D).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .classical import classical_width
from .errors import DomainError, ValidationError
from .params import PacketParams


@dataclass(frozen=True)
class EnsembleSample:
    x0: np.ndarray  # initial positions (cm)
    p0: np.ndarray  # initial momenta (g*cm/s)
    seed: int

    @property
    def count(self) -> int:
        return self.x0.size


def sample_d0(params: PacketParams, count: int, seed: int) -> EnsembleSample:
    """Draw `count` independent phase-space points from the initial density."""
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    x0 = rng.normal(0.0, params.position_spread, count)
    p0 = rng.normal(params.p_bar, params.momentum_spread, count)
    return EnsembleSample(x0=x0, p0=p0, seed=seed)


class DensityHistogram(NamedTuple):
    edges: np.ndarray
    density: np.ndarray  # counts / (N * bin width), estimates rho_c at bin centers
    counts: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def position_bins(params: PacketParams, t, nbins=121, half_width_sigmas=6.0) -> np.ndarray:
    """Bin edges covering u*t +/- half_width_sigmas classical widths."""
    half = half_width_sigmas * float(classical_width(params, t))
    center = params.u * t
    return np.linspace(center - half, center + half, nbins + 1)


def mc_rho_c(sample: EnsembleSample, params: PacketParams, x_bins: np.ndarray, t) -> DensityHistogram:
    """Normalized histogram of the evolved positions x0 + p0*t/m."""
    x_t = sample.x0 + sample.p0 * t / params.mass
    counts, edges = np.histogram(x_t, bins=x_bins)
    widths = np.diff(edges)
    return DensityHistogram(edges=edges, density=counts / (sample.count * widths), counts=counts)


class FluxHistogram(NamedTuple):
    edges: np.ndarray
    value: np.ndarray  # signed crossings / (N * bin width), estimates j_c(X, t)
    std_error: np.ndarray
    n_crossings: np.ndarray  # total (unsigned) crossings per bin

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def crossing_times(sample: EnsembleSample, params: PacketParams, X: float):
    """(t*, sign) for every particle that crosses X at some t* > 0.

    Particles moving away from X (or with p0 = 0) never cross; this is exact
    for free motion, not an approximation.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        t_star = (X - sample.x0) * params.mass / sample.p0
    hits = np.isfinite(t_star) & (t_star > 0.0)
    return t_star[hits], np.sign(sample.p0[hits])


def mc_flux(sample: EnsembleSample, params: PacketParams, X: float, t_bins: np.ndarray) -> FluxHistogram:
    """Net signed crossings of x = X per unit time per particle, binned in t."""
    t_star, signs = crossing_times(sample, params, X)
    signed, edges = np.histogram(t_star, bins=t_bins, weights=signs)
    total, _ = np.histogram(t_star, bins=t_bins)
    widths = np.diff(edges)
    n = sample.count
    # binomial per-bin count fluctuation; empty bins get the one-crossing bound
    sigma_counts = np.sqrt(np.maximum(total, 1) * (1.0 - total / n))
    return FluxHistogram(
        edges=edges,
        value=signed / (n * widths),
        std_error=sigma_counts / (n * widths),
        n_crossings=total,
    )


class MeanArrival(NamedTuple):
    tau: float
    std_error: float
    n_crossings: int


def mc_mean_arrival(sample: EnsembleSample, params: PacketParams, X: float, t_max: float) -> MeanArrival:
    """Mean crossing time over crossings in (0, t_max]; every crossing carries
    unit weight, matching |J| integration when backflow is absent."""
    t_star, _ = crossing_times(sample, params, X)
    t_star = t_star[t_star <= t_max]
    if t_star.size < 2:
        raise DomainError(f"only {t_star.size} crossings of X={X:g} before t={t_max:g}; cannot estimate a mean")
    return MeanArrival(
        tau=float(np.mean(t_star)),
        std_error=float(np.std(t_star, ddof=1) / np.sqrt(t_star.size)),
        n_crossings=int(t_star.size),
    )
