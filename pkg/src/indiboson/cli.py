"""Command-line interface.

Subcommands
-----------
couplings    derived coupling table for a parameter set
evolve       overlap and phonon numbers on a time grid
correlation  thermal dipole correlation samples
spectrum     zero-temperature line list or damped-transform spectrum
validate     closed forms against the truncated-basis reference

Configuration is a flat ``key = value`` text file; ``--preset`` loads a
built-in setup and explicit flags override both. Output is deterministic
(no timestamps, fixed key order, floats at full precision) so reruns are
byte-identical.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 numerical domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import (
    _correlation_linear_values,
    _correlation_quadratic_values,
    broadened_lines,
    overlap_linear,
    overlap_quadratic,
    phonon_number_linear,
    phonon_number_quadratic,
    spectrum_finite_T,
    spectrum_zero_T,
    vacuum_ground_phonon_number,
)
from .errors import ConfigError, ConvergenceError, PoleError, TruncationError
from .model import ModelParams, ThermalParams, derive_couplings
from .oracle import (
    OracleState,
    Propagator,
    TruncatedBasis,
    build_excited_hamiltonian,
    franck_condon_weights,
    observable,
    thermal_correlation,
    thermal_line_list,
)
from .presets import preset_config, preset_names
from .validation import run_validation

__all__ = ["main", "build_parser", "parse_config_text", "build_run_config", "RunConfig"]

_FLOAT_KEYS = {
    "epsilon_g", "epsilon_e", "omega_g", "omega_e", "shift_l", "lambda_g",
    "beta", "t_min", "t_max", "w_min", "w_max", "eta",
}
_INT_KEYS = {"initial_p", "t_points", "w_points", "oracle_dim"}
_STR_KEYS = {"format", "out"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS


def parse_config_text(text: str, origin: str = "<config>") -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"{origin}:{lineno}: empty key or value")
        if key not in _ALL_KEYS:
            raise ConfigError(f"{origin}:{lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"{origin}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


def _as_float(raw: dict, key: str, default: float | None = None) -> float | None:
    if key not in raw:
        return default
    try:
        return float(raw[key])
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {raw[key]!r}") from None


def _as_int(raw: dict, key: str, default: int | None = None) -> int | None:
    if key not in raw:
        return default
    value = raw[key]
    try:
        as_float = float(value)
        as_int = int(as_float)
        if as_int != as_float:
            raise ValueError
        return as_int
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration shared by all subcommands."""

    params: ModelParams
    thermal: ThermalParams
    initial_p: int
    t_grid: tuple[float, float, int]
    w_grid: tuple[float, float, int]
    eta: float
    oracle_dim: int
    dim_overridden: bool
    fmt: str
    out: str | None

    def times(self) -> np.ndarray:
        return np.linspace(*self.t_grid)

    def freqs(self) -> np.ndarray:
        return np.linspace(*self.w_grid)

    def echo(self) -> dict:
        p = self.params
        return {
            "epsilon_g": p.epsilon_g,
            "epsilon_e": p.epsilon_e,
            "omega_g": p.omega_g,
            "omega_e": p.omega_e,
            "shift_l": p.shift_l,
            "lambda_g": p.shift_l * math.sqrt(p.omega_g / 2.0),
            "beta": self.thermal.beta if math.isfinite(self.thermal.beta) else "inf",
            "initial_p": self.initial_p,
            "t_min": self.t_grid[0],
            "t_max": self.t_grid[1],
            "t_points": self.t_grid[2],
            "w_min": self.w_grid[0],
            "w_max": self.w_grid[1],
            "w_points": self.w_grid[2],
            "eta": self.eta,
            "oracle_dim": self.oracle_dim,
            "format": self.fmt,
        }


def build_run_config(raw: dict, dim_overridden: bool = False) -> RunConfig:
    """Resolve a flat mapping (strings or numbers) into a RunConfig."""
    for key in raw:
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}")
    omega_g = _as_float(raw, "omega_g")
    omega_e = _as_float(raw, "omega_e")
    for name, value in (("omega_g", omega_g), ("omega_e", omega_e)):
        if value is None:
            raise ConfigError(f"{name} is required")
    has_shift = "shift_l" in raw
    has_lambda = "lambda_g" in raw
    if has_shift == has_lambda:
        raise ConfigError("exactly one of shift_l or lambda_g must be given")
    epsilon_g = _as_float(raw, "epsilon_g", 0.0)
    epsilon_e = _as_float(raw, "epsilon_e", 0.0)
    try:
        if has_shift:
            params = ModelParams(epsilon_g, epsilon_e, omega_g, omega_e,
                                 _as_float(raw, "shift_l"))
        else:
            params = ModelParams.from_lambda_g(epsilon_g, epsilon_e, omega_g,
                                               omega_e, _as_float(raw, "lambda_g"))
        thermal = ThermalParams(_as_float(raw, "beta", math.inf))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    initial_p = _as_int(raw, "initial_p", 0)
    if initial_p < 0:
        raise ConfigError(f"initial_p must be >= 0, got {initial_p}")
    t_min = _as_float(raw, "t_min", 0.0)
    t_max = _as_float(raw, "t_max", 4.0 * math.pi / params.omega_e)
    t_points = _as_int(raw, "t_points", 400)
    if t_max <= t_min:
        raise ConfigError(f"t_max must exceed t_min, got [{t_min}, {t_max}]")
    if t_points < 2:
        raise ConfigError(f"t_points must be >= 2, got {t_points}")
    omega_eg = params.epsilon_e - params.epsilon_g
    w_min = _as_float(raw, "w_min", omega_eg - 2.0 * params.omega_e)
    w_max = _as_float(raw, "w_max", omega_eg + 8.0 * params.omega_e)
    w_points = _as_int(raw, "w_points", 1201)
    if w_max <= w_min:
        raise ConfigError(f"w_max must exceed w_min, got [{w_min}, {w_max}]")
    if w_points < 2:
        raise ConfigError(f"w_points must be >= 2, got {w_points}")
    eta = _as_float(raw, "eta", 0.02 * params.omega_e)
    if eta <= 0.0:
        raise ConfigError(f"eta must be > 0, got {eta}")
    oracle_dim = _as_int(raw, "oracle_dim", 128)
    if oracle_dim < 2:
        raise ConfigError(f"oracle_dim must be >= 2, got {oracle_dim}")
    fmt = str(raw.get("format", "csv"))
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {fmt!r}")
    out = raw.get("out")
    return RunConfig(
        params=params,
        thermal=thermal,
        initial_p=initial_p,
        t_grid=(t_min, t_max, t_points),
        w_grid=(w_min, w_max, w_points),
        eta=eta,
        oracle_dim=oracle_dim,
        dim_overridden=dim_overridden,
        fmt=fmt,
        out=str(out) if out is not None else None,
    )


# ---------------------------------------------------------------------------
# output rendering


def _fmt_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    text = str(value)
    if any(ch in text for ch in (",", '"', "\n")):
        text = '"' + text.replace('"', '""') + '"'
    return text


def render_csv(meta: dict, columns: dict) -> str:
    lines = [f"# {key} = {_fmt_cell(meta[key])}" for key in sorted(meta)]
    names = list(columns)
    lines.append(",".join(names))
    for row in zip(*(columns[name] for name in names)):
        lines.append(",".join(_fmt_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def render_json(meta: dict, columns: dict) -> str:
    def clean(value):
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            return float(value)
        return str(value)

    payload = {
        "meta": {k: clean(v) for k, v in meta.items()},
        "data": {k: [clean(v) for v in vs] for k, vs in columns.items()},
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(fmt: str, out: str | None, meta: dict, columns: dict):
    text = render_csv(meta, columns) if fmt == "csv" else render_json(meta, columns)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _meta(command: str, cfg: RunConfig) -> dict:
    meta = {"tool": "indiboson", "version": __version__, "command": command,
            "units": "hbar = 1; energies in the input units, times in their inverse"}
    meta.update(cfg.echo())
    return meta


def _load_config(args, required: bool = True) -> RunConfig:
    raw: dict = {}
    if args.preset:
        raw.update(preset_config(args.preset))
    if args.config:
        text = Path(args.config).read_text()
        raw.update(parse_config_text(text, origin=args.config))
    if not raw:
        if required:
            raise ConfigError("a --preset or --config is required")
        raw = {"omega_g": 1.0, "omega_e": 1.0, "lambda_g": 0.0}
    if args.beta is not None:
        raw["beta"] = args.beta
    if args.eta is not None:
        raw["eta"] = args.eta
    if args.format is not None:
        raw["format"] = args.format
    if args.out is not None:
        raw["out"] = args.out
    dim_overridden = args.oracle_dim is not None
    if dim_overridden:
        raw["oracle_dim"] = args.oracle_dim
    return build_run_config(raw, dim_overridden=dim_overridden)


# ---------------------------------------------------------------------------
# subcommands


def cmd_couplings(args) -> int:
    cfg = _load_config(args)
    c = derive_couplings(cfg.params)
    quantities = {
        "omega_g": c.omega_g,
        "omega_e": c.omega_e,
        "gamma_plus": c.gamma_plus,
        "gamma_minus": c.gamma_minus,
        "lambda_g": c.lambda_g,
        "lambda_e": c.lambda_e,
        "lambda1": c.lambda1,
        "lambda2": c.lambda2,
        "omega_eg": c.omega_eg,
        "epsilon_e_prime": c.epsilon_e_prime,
        "huang_rhys": c.huang_rhys,
        "vacuum_phonons": vacuum_ground_phonon_number(c),
    }
    columns = {"quantity": list(quantities), "value": list(quantities.values())}
    _emit(cfg.fmt, cfg.out, _meta("couplings", cfg), columns)
    return 0


def cmd_evolve(args) -> int:
    cfg = _load_config(args)
    c = derive_couplings(cfg.params)
    ts = cfg.times()
    p0 = cfg.initial_p
    linear = c.equal_frequencies
    if linear:
        amp = np.array([overlap_linear(p0, c, t).value for t in ts])
        phon = np.array([phonon_number_linear(p0, c, t) for t in ts])
    else:
        amp = np.array([overlap_quadratic(p0, c, t).value for t in ts])
        phon = np.array([phonon_number_quadratic(p0, c, t) for t in ts])
    columns = {
        "t": list(ts),
        "overlap_sq": list(np.abs(amp) ** 2),
        "ground_phonons": list(phon),
    }
    if linear:
        columns["excited_phonons"] = [p0 + c.huang_rhys] * ts.size
    if args.oracle:
        basis = TruncatedBasis(cfg.oracle_dim)
        prop = Propagator(build_excited_hamiltonian(c, basis), basis)
        ref = prop.return_amplitude(p0, ts, energy_offset=c.epsilon_e)
        state = OracleState.number_state(basis, p0)
        num_op = np.diag(np.arange(basis.dim, dtype=float))
        columns["oracle_overlap_sq"] = list(np.abs(ref) ** 2)
        columns["oracle_ground_phonons"] = [
            observable(prop.evolve(state, t), num_op) for t in ts
        ]
    _emit(cfg.fmt, cfg.out, _meta("evolve", cfg), columns)
    return 0


def cmd_correlation(args) -> int:
    cfg = _load_config(args)
    c = derive_couplings(cfg.params)
    ts = cfg.times()
    values = (_correlation_linear_values if c.equal_frequencies
              else _correlation_quadratic_values)
    g = values(cfg.thermal, c, ts)
    columns = {
        "t": list(ts),
        "g_real": list(g.real),
        "g_imag": list(g.imag),
        "g_abs_sq": list(np.abs(g) ** 2),
    }
    if args.oracle:
        ref = thermal_correlation(cfg.thermal, c, TruncatedBasis(cfg.oracle_dim), ts)
        columns["oracle_g_real"] = list(ref.real)
        columns["oracle_g_imag"] = list(ref.imag)
    _emit(cfg.fmt, cfg.out, _meta("correlation", cfg), columns)
    return 0


def cmd_spectrum(args) -> int:
    cfg = _load_config(args)
    c = derive_couplings(cfg.params)
    if cfg.thermal.is_zero_temperature:
        lines = spectrum_zero_T(c)
        columns = {
            "n": list(range(len(lines))),
            "offset": [ln.offset for ln in lines],
            "w": [c.omega_eg + ln.offset for ln in lines],
            "weight": [ln.weight for ln in lines],
            "weight_over_2pi": [ln.weight / (2.0 * math.pi) for ln in lines],
        }
        if args.oracle:
            ref = franck_condon_weights(c, TruncatedBasis(cfg.oracle_dim), len(lines))
            columns["oracle_weight"] = list(ref)
        _emit(cfg.fmt, cfg.out, _meta("spectrum", cfg), columns)
        return 0
    w = cfg.freqs()
    absorption = spectrum_finite_T(cfg.thermal, c, w, eta=cfg.eta)
    columns = {
        "w": list(w),
        "offset": list(w - c.omega_eg),
        "absorption": list(absorption),
    }
    if args.oracle:
        lines = thermal_line_list(cfg.thermal, c, TruncatedBasis(cfg.oracle_dim))
        columns["oracle_absorption"] = list(
            broadened_lines(w - c.omega_eg, lines, cfg.eta)
        )
    _emit(cfg.fmt, cfg.out, _meta("spectrum", cfg), columns)
    return 0


def cmd_validate(args) -> int:
    specs = []
    if args.preset or args.config:
        cfg = _load_config(args)
        label = args.preset if (args.preset and not args.config) else "config"
        specs.append((label, cfg.params, cfg.thermal.beta, cfg.initial_p))
        oracle_dim, dim_overridden = cfg.oracle_dim, cfg.dim_overridden
        fmt, out = cfg.fmt, cfg.out
    else:
        oracle_dim = args.oracle_dim if args.oracle_dim is not None else 128
        if oracle_dim < 2:
            raise ConfigError(f"oracle_dim must be >= 2, got {oracle_dim}")
        dim_overridden = args.oracle_dim is not None
        fmt = args.format if args.format is not None else "csv"
        out = args.out
    for name in preset_names():
        if any(label == name for label, *_ in specs):
            continue
        pc = build_run_config(preset_config(name))
        specs.append((name, pc.params, pc.thermal.beta, pc.initial_p))
    report = run_validation(specs, oracle_dim=oracle_dim,
                            dim_overridden=dim_overridden)
    print(report.to_text())
    if out is not None:
        meta = {"tool": "indiboson", "version": __version__, "command": "validate",
                "oracle_dim": report.oracle_dim, "thermal_dim": report.thermal_dim,
                "overall": "pass" if report.all_passed else "fail"}
        _emit(fmt, out, meta, report.columns())
    return 0 if report.all_passed else 1


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indiboson",
        description="Exact dynamics and line shapes for a two-level emitter "
                    "coupled to one vibrational mode.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser):
        sp.add_argument("--config", help="flat 'key = value' config file")
        sp.add_argument("--preset", help="built-in setup: " + ", ".join(preset_names()))
        sp.add_argument("--beta", help="inverse temperature override ('inf' for T = 0)")
        sp.add_argument("--eta", type=float, help="spectral half-width override")
        sp.add_argument("--oracle-dim", dest="oracle_dim", type=int,
                        help="truncated-basis size (default 128)")
        sp.add_argument("--format", choices=("csv", "json"), help="output format")
        sp.add_argument("--out", help="output file (default stdout)")

    sp = sub.add_parser("couplings", help="derived coupling table")
    common(sp)
    sp.set_defaults(func=cmd_couplings)

    sp = sub.add_parser("evolve", help="overlap and phonon numbers on the time grid")
    common(sp)
    sp.add_argument("--oracle", action="store_true",
                    help="add truncated-basis reference columns")
    sp.set_defaults(func=cmd_evolve)

    sp = sub.add_parser("correlation", help="thermal dipole correlation samples")
    common(sp)
    sp.add_argument("--oracle", action="store_true",
                    help="add truncated-basis reference columns")
    sp.set_defaults(func=cmd_correlation)

    sp = sub.add_parser("spectrum", help="line list (T = 0) or sampled spectrum")
    common(sp)
    sp.add_argument("--oracle", action="store_true",
                    help="add truncated-basis reference columns")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("validate", help="closed forms vs the truncated basis")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PoleError as exc:
        print(f"numerical domain error: {exc}", file=sys.stderr)
        return 3
    except (TruncationError, ConvergenceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
