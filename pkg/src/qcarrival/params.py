"""Physical constants and the validated parameter set shared by all modules.

Internal unit system is CGS: lengths in cm, masses in g, times in s, actions
in erg*s.  The only unit conversion in the package is amu -> gram inside
`make_params`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

# CODATA 2018
HBAR_CGS = 1.054571817e-27  # erg*s
AMU_GRAMS = 1.66053906660e-24  # g per atomic mass unit


@dataclass(frozen=True)
class PacketParams:
    """Defining parameters of the initial Gaussian ensemble.

    sigma0 : initial packet width (cm)
    u      : group velocity (cm/s), u = hbar*k/m = p_bar/m
    C      : dimensionless squeezing parameter (0 gives the minimum-uncertainty
             state; negative values are allowed)
    mass   : particle mass (g)
    hbar   : reduced Planck constant (erg*s); a field rather than a global so
             analytic spot checks can run with hbar = 1
    """

    sigma0: float
    u: float
    C: float
    mass: float
    hbar: float = HBAR_CGS

    def __post_init__(self):
        for name in ("sigma0", "mass", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be finite and > 0, got {v!r}")
        for name in ("u", "C"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite, got {getattr(self, name)!r}")

    @property
    def p_bar(self) -> float:
        """Mean momentum m*u (g*cm/s)."""
        return self.mass * self.u

    @property
    def k(self) -> float:
        """Mean wave number p_bar/hbar (1/cm)."""
        return self.p_bar / self.hbar

    @property
    def position_spread(self) -> float:
        """Initial position standard deviation sigma0*sqrt(1+C^2) (cm)."""
        return self.sigma0 * math.sqrt(1.0 + self.C * self.C)

    @property
    def momentum_spread(self) -> float:
        """Momentum standard deviation hbar/(2*sigma0), time-invariant (g*cm/s)."""
        return self.hbar / (2.0 * self.sigma0)


def make_params(sigma0_cm, u_cm_per_s, C, mass_amu, hbar=HBAR_CGS) -> PacketParams:
    """Build PacketParams from boundary units (mass in amu, the rest CGS)."""
    if not (isinstance(mass_amu, (int, float)) and math.isfinite(mass_amu) and mass_amu > 0):
        raise ValidationError(f"mass_amu must be finite and > 0, got {mass_amu!r}")
    return PacketParams(
        sigma0=float(sigma0_cm),
        u=float(u_cm_per_s),
        C=float(C),
        mass=float(mass_amu) * AMU_GRAMS,
        hbar=float(hbar),
    )


def uncertainty_product(params: PacketParams) -> float:
    """Initial uncertainty product dx*dp = (hbar/2)*sqrt(1+C^2)."""
    return 0.5 * params.hbar * math.sqrt(1.0 + params.C * params.C)


CUTOFF_THREE_SIGMA = "three-sigma"
CUTOFF_FIXED = "fixed"


@dataclass(frozen=True)
class DetectorConfig:
    """Detector location plus the time-integration controls for arrival times.

    cutoff selects how the upper integration limit T is chosen:
      "three-sigma" -- self-consistent T = (X + 3*sigma(T))/u (requires u > 0)
      "fixed"       -- T = fixed_cutoff, unconditionally
    """

    X: float
    cutoff: str = CUTOFF_THREE_SIGMA
    fixed_cutoff: float | None = None
    quad_rel_tol: float = 1e-9
    quad_abs_tol: float = 1e-30
    max_cutoff_iters: int = 5000

    def __post_init__(self):
        if not math.isfinite(self.X):
            raise ValidationError(f"X must be finite, got {self.X!r}")
        if self.cutoff not in (CUTOFF_THREE_SIGMA, CUTOFF_FIXED):
            raise ValidationError(f"cutoff must be '{CUTOFF_THREE_SIGMA}' or '{CUTOFF_FIXED}', got {self.cutoff!r}")
        if self.cutoff == CUTOFF_FIXED:
            if self.fixed_cutoff is None or not (math.isfinite(self.fixed_cutoff) and self.fixed_cutoff > 0):
                raise ValidationError(f"fixed cutoff policy needs fixed_cutoff > 0, got {self.fixed_cutoff!r}")
        if not (self.quad_rel_tol > 0):
            raise ValidationError(f"quad_rel_tol must be > 0, got {self.quad_rel_tol!r}")
        if not (self.quad_abs_tol >= 0):
            raise ValidationError(f"quad_abs_tol must be >= 0, got {self.quad_abs_tol!r}")
        if self.max_cutoff_iters < 1:
            raise ValidationError(f"max_cutoff_iters must be >= 1, got {self.max_cutoff_iters!r}")
