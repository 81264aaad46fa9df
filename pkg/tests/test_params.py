import dataclasses
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcarrival import AMU_GRAMS, HBAR_CGS, DetectorConfig, PacketParams, ValidationError, make_params, uncertainty_product

finite_C = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def test_fig1_mass_conversion():
    p = make_params(1e-5, 1e3, 10, 1)
    assert p.mass == pytest.approx(1.6605e-24, rel=1e-4)
    assert p.hbar == HBAR_CGS
    assert p.p_bar == p.mass * 1e3
    assert p.k == pytest.approx(p.p_bar / p.hbar, rel=1e-15)


def test_fig2_params_valid():
    p = make_params(1e-4, 1e3, 100, 1)
    assert p.sigma0 == 1e-4 and p.C == 100


def test_zero_velocity_minimum_uncertainty():
    p = make_params(1.0, 0.0, 0.0, 1.0)
    assert p.p_bar == 0.0
    assert uncertainty_product(p) == p.hbar / 2


def test_uncertainty_product_examples():
    p = make_params(1e-5, 1e3, 10, 1)
    assert uncertainty_product(p) == pytest.approx(0.5 * HBAR_CGS * math.sqrt(101), rel=1e-15)
    p3 = make_params(1e-5, 1e3, -3, 1)
    assert uncertainty_product(p3) == uncertainty_product(make_params(1e-5, 1e3, 3, 1))
    assert uncertainty_product(p3) == pytest.approx(0.5 * HBAR_CGS * math.sqrt(10), rel=1e-15)


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(sigma0_cm=0.0, u_cm_per_s=1, C=0, mass_amu=1), "sigma0"),
        (dict(sigma0_cm=-1e-5, u_cm_per_s=1, C=0, mass_amu=1), "sigma0"),
        (dict(sigma0_cm=1e-5, u_cm_per_s=1, C=0, mass_amu=0), "mass_amu"),
        (dict(sigma0_cm=1e-5, u_cm_per_s=1, C=0, mass_amu=-2), "mass_amu"),
        (dict(sigma0_cm=1e-5, u_cm_per_s=float("nan"), C=0, mass_amu=1), "u"),
        (dict(sigma0_cm=1e-5, u_cm_per_s=1, C=float("inf"), mass_amu=1), "C"),
    ],
)
def test_make_params_rejects_and_names_field(kwargs, field):
    with pytest.raises(ValidationError, match=field):
        make_params(**kwargs)


def test_params_immutable():
    p = make_params(1e-5, 1e3, 10, 1)
    with pytest.raises(dataclasses.FrozenInstanceError):
        p.sigma0 = 2e-5


@given(C=finite_C)
def test_uncertainty_at_least_hbar_over_two(C):
    p = PacketParams(sigma0=1e-5, u=1e3, C=C, mass=1e-24, hbar=1.0)
    assert uncertainty_product(p) >= 0.5
    if C == 0:
        assert uncertainty_product(p) == 0.5
    elif abs(C) > 1e-7:  # below that, sqrt(1+C^2) rounds to 1 in doubles
        assert uncertainty_product(p) > 0.5


@given(C=finite_C)
def test_uncertainty_even_in_C(C):
    base = dict(sigma0=1e-5, u=1e3, mass=1e-24, hbar=1.0)
    assert uncertainty_product(PacketParams(C=C, **base)) == uncertainty_product(PacketParams(C=-C, **base))


@given(mass_amu=st.floats(min_value=1e-3, max_value=1e9, allow_nan=False))
def test_amu_round_trip(mass_amu):
    p = make_params(1e-5, 1e3, 0, mass_amu)
    assert p.mass / AMU_GRAMS == pytest.approx(mass_amu, rel=1e-12)


def test_detector_config_validation():
    DetectorConfig(X=5.1)  # defaults fine
    with pytest.raises(ValidationError, match="quad_rel_tol"):
        DetectorConfig(X=5.1, quad_rel_tol=0.0)
    with pytest.raises(ValidationError, match="quad_abs_tol"):
        DetectorConfig(X=5.1, quad_abs_tol=-1e-30)
    with pytest.raises(ValidationError, match="max_cutoff_iters"):
        DetectorConfig(X=5.1, max_cutoff_iters=0)
    with pytest.raises(ValidationError, match="cutoff"):
        DetectorConfig(X=5.1, cutoff="whenever")
    with pytest.raises(ValidationError, match="fixed_cutoff"):
        DetectorConfig(X=5.1, cutoff="fixed")
    assert DetectorConfig(X=5.1, cutoff="fixed", fixed_cutoff=0.7).fixed_cutoff == 0.7
