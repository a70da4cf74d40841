"""Shared fixtures: couplings for the three reference setups."""

import pytest
from hypothesis import HealthCheck, settings

from indiboson.cli import build_run_config
from indiboson.model import derive_couplings
from indiboson.presets import preset_config

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def params_for(name):
    return build_run_config(preset_config(name)).params


@pytest.fixture(scope="session")
def displaced():
    # omega_e = omega_g = 1, lambda_g = 1: pure displacement
    return derive_couplings(params_for("fig2-linear"))


@pytest.fixture(scope="session")
def squeezed():
    # omega_e = 2*omega_g, lambda_g = 0: pure frequency change
    return derive_couplings(params_for("fig2-quadratic"))


@pytest.fixture(scope="session")
def mixed():
    # omega_e = 2*omega_g and lambda_g = 1
    return derive_couplings(params_for("fig2-both"))
