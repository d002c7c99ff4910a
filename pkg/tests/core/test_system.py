"""
tests/core/test_system.py – Unit tests for SystemConfig validation and unit conversion.
"""
import math

import pytest

from core.system import (
    AnPowerPolicy,
    ConfigurationError,
    SystemConfig,
    dbm_to_watts,
    validate,
    watts_to_dbm,
)


# ---------------------------------------------------------------------------
# Unit conversions
# ---------------------------------------------------------------------------

def test_dbm_to_watts_reference_points() -> None:
    assert dbm_to_watts(30.0) == pytest.approx(1.0, rel=1e-15)
    assert dbm_to_watts(25.0) == pytest.approx(0.316227766, rel=1e-9)
    assert dbm_to_watts(-75.0) == pytest.approx(3.16227766e-11, rel=1e-9)


def test_dbm_round_trip() -> None:
    for p in (-90.0, -75.0, 0.0, 10.0, 25.0, 42.5):
        assert watts_to_dbm(dbm_to_watts(p)) == pytest.approx(p, abs=1e-12)


def test_dbm_to_watts_rejects_non_finite() -> None:
    with pytest.raises(ConfigurationError, match="finite"):
        dbm_to_watts(math.inf)
    with pytest.raises(ConfigurationError):
        dbm_to_watts(math.nan)


def test_watts_to_dbm_rejects_nonpositive() -> None:
    with pytest.raises(ConfigurationError, match="positive"):
        watts_to_dbm(0.0)


def test_dbm_to_watts_rejects_overflow() -> None:
    with pytest.raises(ConfigurationError, match="out of range"):
        dbm_to_watts(4000.0)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def test_defaults_validate_with_derived_quantities() -> None:
    validated = validate(SystemConfig())
    assert validated.wavelength == pytest.approx(0.00999308, rel=1e-5)
    assert validated.element_spacing == pytest.approx(validated.wavelength / 3.0)
    assert validated.grid_side == 5
    assert validated.transmit_power == pytest.approx(dbm_to_watts(25.0))
    assert validated.an_budget == 0.0


def test_validate_rejects_non_square_element_count() -> None:
    with pytest.raises(ConfigurationError, match="perfect square"):
        SystemConfig(num_elements=5).validate()


def test_validate_rejects_zero_rf_chains() -> None:
    with pytest.raises(ConfigurationError, match="num_rf_chains"):
        SystemConfig(num_rf_chains=0).validate()


@pytest.mark.parametrize(
    "field, value",
    [
        ("learning_rate", 0.0),
        ("inner_tolerance", -1e-5),
        ("outer_tolerance", 0.0),
        ("carrier_frequency", -1.0),
    ],
)
def test_validate_rejects_nonpositive_fields(field: str, value: float) -> None:
    with pytest.raises(ConfigurationError, match=field):
        SystemConfig().with_value(field, value).validate()


def test_validate_rejects_powers_outside_float_range() -> None:
    with pytest.raises(ConfigurationError, match="noise_power_bob in watts"):
        SystemConfig(noise_power_bob_dbm=-4000.0).validate()
    with pytest.raises(ConfigurationError, match="noise_power_eve in watts"):
        SystemConfig(noise_power_eve_dbm=-4000.0).validate()
    with pytest.raises(ConfigurationError, match="out of range"):
        SystemConfig(transmit_power_dbm=4000.0).validate()


@pytest.mark.parametrize("bob_range", [0.5, 0.0, math.inf])
def test_validate_requires_bob_at_least_one_metre(bob_range: float) -> None:
    with pytest.raises(ConfigurationError, match="bob_range"):
        SystemConfig(bob_range=bob_range).validate()
    assert SystemConfig(bob_range=1.0).validate().config.bob_range == 1.0


def test_validate_rejects_zero_starts() -> None:
    with pytest.raises(ConfigurationError, match="num_starts"):
        SystemConfig(num_starts=0).validate()


def test_validate_rejects_low_permittivity_and_negative_k() -> None:
    with pytest.raises(ConfigurationError, match="relative_permittivity"):
        SystemConfig(relative_permittivity=0.5).validate()
    with pytest.raises(ConfigurationError, match="rician_factor"):
        SystemConfig(rician_factor=-1.0).validate()


def test_fixed_fraction_policy_checks_rho() -> None:
    with pytest.raises(ConfigurationError, match="an_fraction"):
        SystemConfig(an_power_policy=AnPowerPolicy.FIXED_FRACTION, an_fraction=1.5).validate()


def test_fixed_fraction_budget() -> None:
    validated = SystemConfig(
        transmit_power_dbm=30.0, an_power_policy=AnPowerPolicy.FIXED_FRACTION, an_fraction=0.25
    ).validate()
    assert validated.an_budget == pytest.approx(0.25)


def test_policy_string_is_coerced() -> None:
    validated = SystemConfig(an_power_policy="fixed_fraction", an_fraction=0.1).validate()
    assert validated.config.an_power_policy is AnPowerPolicy.FIXED_FRACTION


def test_with_value_replaces_one_field() -> None:
    base = SystemConfig()
    changed = base.with_value("num_elements", 49)
    assert changed.num_elements == 49
    assert base.num_elements == 25
    assert changed.num_rf_chains == base.num_rf_chains
