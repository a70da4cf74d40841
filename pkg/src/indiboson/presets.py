"""Built-in run configurations for the three reference setups:
displacement only, frequency change only, and both at once.

Values are flat config mappings, identical in shape to a parsed config
file, so presets and files flow through the same builder. Every preset
uses beta*omega_e = 1 for its finite-temperature panel; pass
``--beta inf`` for the zero-temperature spectra.
"""

from __future__ import annotations

import math

from .errors import ConfigError

__all__ = ["PRESETS", "preset_names", "preset_config"]

PRESETS: dict[str, dict[str, object]] = {
    # pure displacement: omega_e = omega_g, lambda_g = 1
    "fig2-linear": {
        "epsilon_g": 0.0,
        "epsilon_e": 0.0,
        "omega_g": 1.0,
        "omega_e": 1.0,
        "lambda_g": 1.0,
        "beta": 1.0,
        "initial_p": 0,
        "t_min": 0.0,
        "t_max": 4.0 * math.pi,
        "t_points": 400,
        "w_min": -2.0,
        "w_max": 8.0,
        "w_points": 1201,
        "eta": 0.02,
    },
    # pure frequency change: omega_e = 2*omega_g, no displacement
    "fig2-quadratic": {
        "epsilon_g": 0.0,
        "epsilon_e": 0.0,
        "omega_g": 1.0,
        "omega_e": 2.0,
        "lambda_g": 0.0,
        "beta": 0.5,
        "initial_p": 0,
        "t_min": 0.0,
        "t_max": 2.0 * math.pi,
        "t_points": 400,
        "w_min": -3.0,
        "w_max": 13.0,
        "w_points": 1601,
        "eta": 0.04,
    },
    # both couplings: omega_e = 2*omega_g and lambda_g = 1
    "fig2-both": {
        "epsilon_g": 0.0,
        "epsilon_e": 0.0,
        "omega_g": 1.0,
        "omega_e": 2.0,
        "lambda_g": 1.0,
        "beta": 0.5,
        "initial_p": 0,
        "t_min": 0.0,
        "t_max": 2.0 * math.pi,
        "t_points": 400,
        "w_min": -3.0,
        "w_max": 13.0,
        "w_points": 1601,
        "eta": 0.04,
    },
}


def preset_names() -> tuple[str, ...]:
    return tuple(PRESETS)


def preset_config(name: str) -> dict[str, object]:
    try:
        return dict(PRESETS[name])
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(PRESETS)}"
        ) from None
