"""Free Gaussian ensembles in 1-D: quantum and classical densities, probability
currents, Wigner functions, and mean arrival times at a detector, with a
trajectory Monte Carlo cross-check.

Everything works in CGS units (cm, g, s, erg); masses enter in atomic mass
units only at the `make_params` boundary.
"""

__version__ = "0.1.0"

from .params import AMU_GRAMS, HBAR_CGS, DetectorConfig, PacketParams, make_params, uncertainty_product
from .quantum import j_q, momentum_density, psi, rho_q, spread_s, width
from .classical import (
    PhasePoint,
    classical_width,
    d0,
    d_t,
    j_c,
    j_c_from_phase_space,
    mean_velocity,
    rho_c,
    rho_c_from_phase_space,
)
from .wigner import wigner_closed, wigner_marginals, wigner_quad
from .arrival import ArrivalResult, arrival_time_classical, arrival_time_quantum, cutoff_time, mean_arrival_time
from .montecarlo import EnsembleSample, mc_flux, mc_mean_arrival, mc_rho_c, sample_d0
from .sweep import GridSpec, SweepResult, SweepRow, SweepSpec, run_sweep
from .errors import (
    CutoffConvergenceError,
    DenominatorVanishesError,
    DomainError,
    NumericalError,
    QuadratureError,
    ValidationError,
)
