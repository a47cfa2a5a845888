"""Command-line entry point and experiment configuration.

Grammar::

    turing-lab <mode> --config <path> [--set key=value]... [--out <dir>]

with modes: equilibria, dispersion, band, ode, simulate, sweep,
lyapunov-check, table.  Configuration files are flat INI documents with
sections [params], [grid], [init], [run], [ode], [dispersion], [sweep],
[lyapunov], [output]; every key has a documented default except the
sixteen entries of [params].  ``--set section.key=value`` (or a bare key
when unambiguous) overrides single entries.  Exit codes: 0 success,
2 configuration error, 3 model-validation failure, 4 simulation abort.

A normalized copy of the effective configuration is written into the
output directory of every run, so any result can be reproduced from its
artifacts alone.  ``TURING_LAB_THREADS`` optionally caps the worker
count used to fan out sweep rows (output order is by row index, never by
completion time).
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import lyapunov as lyap
from . import presets
from .model import (
    EquilibriumKind,
    ModelParams,
    PARAM_FIELDS,
    classify_regime,
    coexistence_equilibrium,
    equilibria,
    reaction_residual,
    validate_params,
)
from .ode import NegativeStateError, integrate, nullclines
from .output import write_csv, write_fieldset, write_key_values
from .pde import (
    GridSpec,
    InitSpec,
    SimulationBlowup,
    mass_bound_check,
    radial_spectrum,
    run,
)
from .stability import dispersion_scan, unstable_band

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "parse_config",
    "emit_config",
    "run_table_reproduction",
    "run_sweep",
    "main",
]

MODES = (
    "equilibria",
    "dispersion",
    "band",
    "ode",
    "simulate",
    "sweep",
    "lyapunov-check",
    "table",
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_SIMULATION = 4


class ConfigError(ValueError):
    pass


class ValidationFailure(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    params: ModelParams
    grid: GridSpec
    # [init]
    amplitude: float = 2e-4
    noise_scale: float = 200.0
    seed: int = 1
    init_base: str = "coexistence"
    signs: tuple[float, float, float, float] = (-1.0, 1.0, 1.0, -1.0)
    # [run]
    dt: float = 0.01
    t_end: float = 500.0
    sample_every: int = 100
    snapshot_times: tuple[float, ...] = ()
    strips: int = 1
    unsafe: bool = False
    positivity_floor: bool = False
    # [ode]
    ode_init: tuple[float, float, float, float] = (1.0, 2.0, 0.0, 0.0)
    ode_dt: float = 0.001
    ode_t_end: float = 1000.0
    ode_thin: int = 100
    # [dispersion]
    k2_max: float = 5.0
    k2_samples: int = 501
    # [sweep]
    sweep_axis: str | None = None
    sweep_values: tuple[float, ...] = ()
    sweep_simulate: bool = False
    # [lyapunov]
    lyap_track: bool = False
    lyap_kind: str = "auto"
    lyap_burn_in: float = 0.0
    lyap_sup_u1: float | None = None
    lyap_sup_u2: float | None = None
    # [output]
    out_dir: str = "out"
    out_graymaps: bool = True
    out_csv: bool = True


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_float_list(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(tok) for tok in text.split(","))


# section -> key -> (converter, default); _REQUIRED marks keys with no default.
_REQUIRED = object()
_SCHEMA: dict[str, dict[str, tuple]] = {
    "params": {name: (float, _REQUIRED) for name in PARAM_FIELDS},
    "grid": {"nx": (int, 64), "ny": (int, 64), "dx": (float, 1.0), "dy": (float, 1.0)},
    "init": {
        "amplitude": (float, 2e-4),
        "noise_scale": (float, 200.0),
        "seed": (int, 1),
        "base": (str, "coexistence"),
        "signs": (_parse_float_list, (-1.0, 1.0, 1.0, -1.0)),
    },
    "run": {
        "mode": (str, None),
        "dt": (float, 0.01),
        "t_end": (float, 500.0),
        "sample_every": (int, 100),
        "snapshot_times": (_parse_float_list, ()),
        "strips": (int, 1),
        "unsafe": (_parse_bool, False),
        "positivity_floor": (_parse_bool, False),
    },
    "ode": {
        "init": (_parse_float_list, (1.0, 2.0, 0.0, 0.0)),
        "dt": (float, 0.001),
        "t_end": (float, 1000.0),
        "thin": (int, 100),
    },
    "dispersion": {"k2_max": (float, 5.0), "samples": (int, 501)},
    "sweep": {
        "axis": (str, None),
        "values": (_parse_float_list, ()),
        "simulate": (_parse_bool, False),
    },
    "lyapunov": {
        "track": (_parse_bool, False),
        "kind": (str, "auto"),
        "burn_in": (float, 0.0),
        "sup_u1": (float, None),
        "sup_u2": (float, None),
    },
    "output": {"dir": (str, "out"), "graymaps": (_parse_bool, True), "csv": (_parse_bool, True)},
}


def _key_line(text: str, key: str) -> str:
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith(key) and set(stripped[len(key):].lstrip()[:1]) <= {"=", ":"}:
            return f" (line {i})"
    return ""


def _read_document(text: str) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(
        interpolation=None, delimiters=("=",), strict=True
    )
    parser.optionxform = str  # keys are case-sensitive
    try:
        parser.read_string(text)
    except configparser.DuplicateOptionError as err:
        raise ConfigError(
            f"duplicate key '{err.option}' in section [{err.section}]"
            + (f" (line {err.lineno})" if err.lineno else "")
        ) from err
    except configparser.DuplicateSectionError as err:
        raise ConfigError(f"duplicate section [{err.section}]") from err
    except configparser.Error as err:
        raise ConfigError(f"malformed configuration: {err}") from err

    doc: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        doc[section] = dict(parser.items(section))
        for key in doc[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"unknown key '{key}' in section [{section}]" + _key_line(text, key)
                )
    return doc


def _apply_overrides(doc: dict[str, dict[str, str]], overrides) -> None:
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        if "." in key:
            section, name = key.split(".", 1)
            if section not in _SCHEMA or name not in _SCHEMA[section]:
                raise ConfigError(f"unknown override target '{key}'")
        else:
            hits = [s for s, keys in _SCHEMA.items() if key in keys]
            if not hits:
                raise ConfigError(f"unknown override key '{key}'")
            if len(hits) > 1:
                raise ConfigError(
                    f"ambiguous override key '{key}' (sections: {', '.join(hits)}); "
                    "qualify it as section.key"
                )
            section, name = hits[0], key
        doc.setdefault(section, {})[name] = value.strip()


def _typed(doc: dict[str, dict[str, str]]) -> dict[str, dict]:
    values: dict[str, dict] = {}
    for section, keys in _SCHEMA.items():
        values[section] = {}
        for key, (convert, default) in keys.items():
            raw = doc.get(section, {}).get(key)
            if raw is None:
                if default is _REQUIRED:
                    raise ConfigError(f"missing required key '{key}' in section [{section}]")
                values[section][key] = default
            else:
                try:
                    values[section][key] = convert(raw)
                except (TypeError, ValueError) as err:
                    raise ConfigError(
                        f"type mismatch for [{section}] {key} = {raw!r}: {err}"
                    ) from err
    return values


def parse_config(
    text: str, mode: str | None = None, overrides=None
) -> ExperimentConfig:
    """Parse a configuration document into a fully populated config.

    ``mode`` (from the CLI) takes precedence over a ``mode`` key in
    [run]; ``overrides`` is an iterable of ``key=value`` strings applied
    before type checking.
    """
    doc = _read_document(text)
    _apply_overrides(doc, overrides)
    v = _typed(doc)

    effective_mode = mode or v["run"]["mode"]
    if effective_mode is None:
        raise ConfigError("no mode given (CLI argument or [run] mode)")
    if effective_mode not in MODES:
        raise ConfigError(f"unknown mode {effective_mode!r}; choose from {', '.join(MODES)}")

    if len(v["init"]["signs"]) != 4:
        raise ConfigError("[init] signs needs exactly 4 comma-separated values")
    if len(v["ode"]["init"]) != 4:
        raise ConfigError("[ode] init needs exactly 4 comma-separated values")

    try:
        grid = GridSpec(v["grid"]["nx"], v["grid"]["ny"], v["grid"]["dx"], v["grid"]["dy"])
    except ValueError as err:
        raise ConfigError(f"invalid [grid]: {err}") from err

    return ExperimentConfig(
        mode=effective_mode,
        params=ModelParams(**v["params"]),
        grid=grid,
        amplitude=v["init"]["amplitude"],
        noise_scale=v["init"]["noise_scale"],
        seed=v["init"]["seed"],
        init_base=v["init"]["base"],
        signs=tuple(v["init"]["signs"]),
        dt=v["run"]["dt"],
        t_end=v["run"]["t_end"],
        sample_every=v["run"]["sample_every"],
        snapshot_times=tuple(v["run"]["snapshot_times"]),
        strips=v["run"]["strips"],
        unsafe=v["run"]["unsafe"],
        positivity_floor=v["run"]["positivity_floor"],
        ode_init=tuple(v["ode"]["init"]),
        ode_dt=v["ode"]["dt"],
        ode_t_end=v["ode"]["t_end"],
        ode_thin=v["ode"]["thin"],
        k2_max=v["dispersion"]["k2_max"],
        k2_samples=v["dispersion"]["samples"],
        sweep_axis=v["sweep"]["axis"],
        sweep_values=tuple(v["sweep"]["values"]),
        sweep_simulate=v["sweep"]["simulate"],
        lyap_track=v["lyapunov"]["track"],
        lyap_kind=v["lyapunov"]["kind"],
        lyap_burn_in=v["lyapunov"]["burn_in"],
        lyap_sup_u1=v["lyapunov"]["sup_u1"],
        lyap_sup_u2=v["lyapunov"]["sup_u2"],
        out_dir=v["output"]["dir"],
        out_graymaps=v["output"]["graymaps"],
        out_csv=v["output"]["csv"],
    )


def _format_setting(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(_format_setting(x) for x in value)
    return str(value)


def emit_config(cfg: ExperimentConfig) -> str:
    """Normalized text form; ``parse_config(emit_config(c)) == c``."""
    out = io.StringIO()
    sections: dict[str, dict[str, object]] = {
        "params": {k: getattr(cfg.params, k) for k in PARAM_FIELDS},
        "grid": {"nx": cfg.grid.nx, "ny": cfg.grid.ny, "dx": cfg.grid.dx, "dy": cfg.grid.dy},
        "init": {
            "amplitude": cfg.amplitude,
            "noise_scale": cfg.noise_scale,
            "seed": cfg.seed,
            "base": cfg.init_base,
            "signs": cfg.signs,
        },
        "run": {
            "mode": cfg.mode,
            "dt": cfg.dt,
            "t_end": cfg.t_end,
            "sample_every": cfg.sample_every,
            "snapshot_times": cfg.snapshot_times,
            "strips": cfg.strips,
            "unsafe": cfg.unsafe,
            "positivity_floor": cfg.positivity_floor,
        },
        "ode": {"init": cfg.ode_init, "dt": cfg.ode_dt, "t_end": cfg.ode_t_end, "thin": cfg.ode_thin},
        "dispersion": {"k2_max": cfg.k2_max, "samples": cfg.k2_samples},
        "sweep": {"axis": cfg.sweep_axis, "values": cfg.sweep_values, "simulate": cfg.sweep_simulate},
        "lyapunov": {
            "track": cfg.lyap_track,
            "kind": cfg.lyap_kind,
            "burn_in": cfg.lyap_burn_in,
            "sup_u1": cfg.lyap_sup_u1,
            "sup_u2": cfg.lyap_sup_u2,
        },
        "output": {"dir": cfg.out_dir, "graymaps": cfg.out_graymaps, "csv": cfg.out_csv},
    }
    for section, keys in sections.items():
        out.write(f"[{section}]\n")
        for key, value in keys.items():
            if value is None:
                continue
            if key == "snapshot_times" and value == ():
                continue
            if key == "values" and value == ():
                continue
            out.write(f"{key} = {_format_setting(value)}\n")
        out.write("\n")
    return out.getvalue()


# ----------------------------------------------------------------- modes


def _require_valid_params(p: ModelParams) -> None:
    result = validate_params(p)
    if not result.ok:
        raise ValidationFailure(
            "invalid parameters: " + "; ".join(str(v) for v in result.violations)
        )


def _resolve_base(cfg: ExperimentConfig):
    wanted = {
        "coexistence": EquilibriumKind.COEXISTENCE,
        "prey_only": EquilibriumKind.PREY_ONLY,
        "predator_only": EquilibriumKind.PREDATOR_ONLY,
        "trivial": EquilibriumKind.TRIVIAL,
    }.get(cfg.init_base)
    if wanted is None:
        raise ConfigError(f"unknown [init] base {cfg.init_base!r}")
    for e in equilibria(cfg.params):
        if e.kind is wanted:
            return e
    raise ValidationFailure(
        f"equilibrium '{cfg.init_base}' does not exist for these parameters "
        "(coexistence requires lambda1*sigma2 > eta2*sigma1)"
    )


def _coexistence_or_fail(p: ModelParams):
    e = coexistence_equilibrium(p)
    if e is None:
        raise ValidationFailure(
            "no coexistence state: lambda1*sigma2 <= eta2*sigma1 for these parameters"
        )
    return e


def _regime_items(report) -> dict:
    items = {"regime": report.regime.value, "threshold_lambda1_sigma2_over_sigma1": report.threshold}
    for check in report.smallness_checks:
        items[f"check[{check.name}]"] = f"{'ok' if check.satisfied else 'FAIL'} left={check.left!r} right={check.right!r}"
    return items


def cmd_equilibria(cfg: ExperimentConfig, out_dir: str) -> None:
    _require_valid_params(cfg.params)
    rows = []
    for e in equilibria(cfg.params):
        rows.append(
            (e.kind.value, e.u1e, e.u2e, e.v1e, e.v2e, reaction_residual(cfg.params, e.state))
        )
    write_csv(os.path.join(out_dir, "equilibria.csv"), ["kind", "u1", "u2", "v1", "v2", "residual"], rows)
    report = classify_regime(cfg.params)
    write_key_values(os.path.join(out_dir, "regime.txt"), _regime_items(report))
    print(f"wrote {len(rows)} equilibria; regime: {report.regime.value}")


def cmd_dispersion(cfg: ExperimentConfig, out_dir: str) -> None:
    _require_valid_params(cfg.params)
    e = _coexistence_or_fail(cfg.params)
    k2 = np.linspace(0.0, cfg.k2_max, cfg.k2_samples)
    scan = dispersion_scan(cfg.params, e, k2)
    header = ["k2"] + [f"re_lambda_{i}" for i in range(1, 5)] + [f"im_lambda_{i}" for i in range(1, 5)] + ["h"]
    rows = [
        [scan.k2[i], *scan.eigenvalues[i].real, *scan.eigenvalues[i].imag, scan.h[i]]
        for i in range(scan.k2.size)
    ]
    write_csv(os.path.join(out_dir, "dispersion.csv"), header, rows)
    payload = {
        "k2": scan.k2.tolist(),
        "re_lambda": scan.eigenvalues.real.tolist(),
        "im_lambda": scan.eigenvalues.imag.tolist(),
        "max_real_part": scan.max_real_part.tolist(),
        "h": scan.h.tolist(),
        "band": [list(b) for b in scan.band] if scan.band else None,
    }
    with open(os.path.join(out_dir, "dispersion.json"), "w") as fh:
        json.dump(payload, fh, indent=1)
    print(f"dispersion scan over {scan.k2.size} wavenumbers; band: {scan.band}")


def cmd_band(cfg: ExperimentConfig, out_dir: str) -> None:
    _require_valid_params(cfg.params)
    e = _coexistence_or_fail(cfg.params)
    bands = unstable_band(cfg.params, e)
    write_csv(os.path.join(out_dir, "band.csv"), ["k2_lo", "k2_hi"], bands)
    print(f"unstable band(s): {bands if bands else 'none'}")


def cmd_ode(cfg: ExperimentConfig, out_dir: str) -> None:
    _require_valid_params(cfg.params)
    traj = integrate(cfg.params, cfg.ode_init, cfg.ode_t_end, cfg.ode_dt, thin=cfg.ode_thin)
    rows = [(t, *state) for t, state in zip(traj.times, traj.states)]
    write_csv(os.path.join(out_dir, "trajectory.csv"), ["t", "u1", "u2", "v1", "v2"], rows)
    u1_hi = 1.2 * float(traj.states[:, 0].max()) or 1.0
    u2_hi = 1.2 * float(traj.states[:, 1].max()) or 1.0
    predator, prey = nullclines(cfg.params, (0.0, u1_hi), (0.0, u2_hi), n=200)
    write_csv(
        os.path.join(out_dir, "nullclines.csv"),
        ["u1_predator_nc", "u2_predator_nc", "u1_prey_nc", "u2_prey_nc"],
        np.hstack([predator, prey]),
    )
    print(f"integrated to t={traj.times[-1]:g}; final state {tuple(traj.final)}")


def _lyapunov_probe(cfg: ExperimentConfig, base):
    coex = coexistence_equilibrium(cfg.params)
    kind = cfg.lyap_kind
    if kind == "auto":
        kind = "coexistence" if coex is not None else "prey_vanishing"
    config = lyap.LyapunovConfig.defaults(
        cfg.params, coex, sup_u1=cfg.lyap_sup_u1, sup_u2=cfg.lyap_sup_u2
    )
    probe = lyap.make_probe(cfg.params, cfg.grid, config, kind, coex)
    return probe, config, kind


def _simulate(cfg: ExperimentConfig, out_dir: str, track: bool):
    _require_valid_params(cfg.params)
    base = _resolve_base(cfg)
    spec = InitSpec(base, cfg.amplitude, cfg.noise_scale, cfg.seed, cfg.signs)
    probe = config = kind = None
    if track:
        probe, config, kind = _lyapunov_probe(cfg, base)
    final, series, snapshots = run(
        cfg.params,
        cfg.grid,
        spec,
        cfg.dt,
        cfg.t_end,
        sample_every=cfg.sample_every,
        snapshot_times=cfg.snapshot_times,
        energy_probe=probe,
        strips=cfg.strips,
        unsafe=cfg.unsafe,
        positivity_floor=cfg.positivity_floor,
    )
    cols = series.arrays()
    write_csv(
        os.path.join(out_dir, "diagnostics.csv"),
        list(cols),
        zip(*cols.values()),
    )
    for t_req, snap in snapshots:
        tag = f"snap_t{t_req:g}".replace(".", "p")
        write_fieldset(out_dir, tag, snap, cfg.grid, cfg.out_graymaps, cfg.out_csv)
    write_fieldset(out_dir, "final", final, cfg.grid, cfg.out_graymaps, cfg.out_csv)
    spec_u1 = radial_spectrum(final.u1, cfg.grid)
    write_csv(
        os.path.join(out_dir, "spectrum_u1.csv"),
        ["k2", "power", "dominant"],
        [
            (spec_u1.k2[i], spec_u1.power[i], int(i == spec_u1.dominant))
            for i in range(len(spec_u1.k2))
        ],
    )
    bounds = mass_bound_check(series, cfg.params, cfg.grid)
    write_key_values(
        os.path.join(out_dir, "mass_bounds.txt"),
        {
            "u2_bound": bounds.u2_bound,
            "u2_worst_ratio": bounds.u2_worst_ratio,
            "u2_ok": bounds.u2_ok,
            "combined_bound": bounds.combined_bound,
            "combined_worst_ratio": bounds.combined_worst_ratio,
            "combined_ok": bounds.combined_ok,
        },
    )
    return final, series, (probe, config, kind)


def cmd_simulate(cfg: ExperimentConfig, out_dir: str) -> None:
    final, series, _ = _simulate(cfg, out_dir, track=cfg.lyap_track)
    print(f"simulated to t={final.time:g}; u1 std {float(np.asarray(series.std_u1)[-1])!r}")


def cmd_lyapunov_check(cfg: ExperimentConfig, out_dir: str) -> None:
    final, series, (probe, config, kind) = _simulate(cfg, out_dir, track=True)
    report_regime = classify_regime(cfg.params, sup_bounds=None)
    decay = lyap.decay_report(series, report_regime, burn_in=cfg.lyap_burn_in)
    items = {
        "regime": report_regime.regime.value,
        "functional": kind,
        **{f"config_{k}": getattr(config, k) for k in ("delta1", "delta2", "delta3", "delta4", "sup_u1", "sup_u2")},
    }
    for i, note in enumerate(config.notes):
        items[f"config_note_{i}"] = note
    with open(os.path.join(out_dir, "decay_report.txt"), "w") as fh:
        for key, value in items.items():
            fh.write(f"{key} = {value}\n")
        fh.write(decay.as_text())
    print(
        f"decay fit ({decay.fit_kind}): slope {decay.slope!r}, r2 {decay.r2!r}, "
        f"monotone fraction {decay.monotone_fraction!r}"
    )


def run_table_reproduction(base_params: ModelParams, rows) -> list[dict]:
    """Unstable-band endpoints for a list of parameter overrides.

    ``rows`` holds (label, overrides, reference) triples, where overrides
    is a field->value mapping applied to ``base_params`` and reference an
    optional (lo, hi) pair for difference columns.  Rows without a
    coexistence state or without a band are kept, marked in the 'note'
    column.
    """
    out = []
    for label, overrides, reference in rows:
        p = base_params.with_overrides(**overrides)
        entry: dict = {"label": label, "k2_lo": "", "k2_hi": "", "note": ""}
        if reference is not None:
            entry["ref_lo"], entry["ref_hi"] = reference
        result = validate_params(p)
        if not result.ok:
            entry["note"] = "invalid-parameters"
            out.append(entry)
            continue
        e = coexistence_equilibrium(p)
        if e is None:
            entry["note"] = "no-coexistence"
            out.append(entry)
            continue
        bands = unstable_band(p, e)
        if not bands:
            entry["note"] = "no-band"
            out.append(entry)
            continue
        lo, hi = bands[0][0], bands[-1][1]
        entry["k2_lo"], entry["k2_hi"] = lo, hi
        if len(bands) > 1:
            entry["note"] = f"{len(bands)}-intervals"
        if reference is not None:
            entry["err_lo"] = abs(lo - reference[0])
            entry["err_hi"] = abs(hi - reference[1])
        out.append(entry)
    return out


def cmd_table(cfg: ExperimentConfig, out_dir: str) -> None:
    rows = [
        (case.label, {k: getattr(case.params, k) for k in PARAM_FIELDS}, case.reference)
        for case in presets.BAND_REFERENCE_CASES
    ]
    table = run_table_reproduction(cfg.params, rows)
    header = ["label", "k2_lo", "k2_hi", "ref_lo", "ref_hi", "err_lo", "err_hi", "note"]
    write_csv(
        os.path.join(out_dir, "table.csv"),
        header,
        [[row.get(col, "") for col in header] for row in table],
    )
    worst = max(
        (max(row.get("err_lo", 0.0), row.get("err_hi", 0.0)) for row in table),
        default=0.0,
    )
    print(f"reproduced {len(table)} band rows; worst endpoint error {worst!r}")


def run_sweep(cfg: ExperimentConfig, axis: str, values) -> list[dict]:
    """Regime, band and (optionally) final-pattern summary per axis value.

    Simulations reuse the configured seed; rows are ordered by input
    index.  ``TURING_LAB_THREADS`` > 1 fans rows out over a thread pool.
    """
    if axis not in PARAM_FIELDS:
        raise ConfigError(f"sweep axis {axis!r} is not a model parameter")

    def one(value: float) -> dict:
        p = cfg.params.with_overrides(**{axis: float(value)})
        entry: dict = {axis: float(value)}
        check = validate_params(p)
        if not check.ok:
            entry["regime"] = "invalid-parameters"
            return entry
        entry["regime"] = classify_regime(p).regime.value
        e = coexistence_equilibrium(p)
        bands = unstable_band(p, e) if e is not None else []
        entry["k2_lo"] = bands[0][0] if bands else ""
        entry["k2_hi"] = bands[-1][1] if bands else ""
        if cfg.sweep_simulate and e is not None:
            spec = InitSpec(e, cfg.amplitude, cfg.noise_scale, cfg.seed, cfg.signs)
            final, series, _ = run(
                p, cfg.grid, spec, cfg.dt, cfg.t_end,
                sample_every=cfg.sample_every, strips=cfg.strips, unsafe=cfg.unsafe,
                positivity_floor=cfg.positivity_floor,
            )
            spectrum = radial_spectrum(final.u1, cfg.grid)
            entry["dominant_k2"] = spectrum.dominant_k2
            entry["u1_std"] = float(final.u1.std())
        return entry

    workers = int(os.environ.get("TURING_LAB_THREADS", "1"))
    values = list(values)
    if workers > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, values))
    return [one(v) for v in values]


def cmd_sweep(cfg: ExperimentConfig, out_dir: str) -> None:
    if cfg.sweep_axis is None:
        raise ConfigError("sweep mode needs [sweep] axis")
    rows = run_sweep(cfg, cfg.sweep_axis, cfg.sweep_values)
    header = [cfg.sweep_axis, "regime", "k2_lo", "k2_hi"]
    if cfg.sweep_simulate:
        header += ["dominant_k2", "u1_std"]
    write_csv(
        os.path.join(out_dir, "sweep.csv"),
        header,
        [[row.get(col, "") for col in header] for row in rows],
    )
    print(f"swept {cfg.sweep_axis} over {len(rows)} values")


_COMMANDS = {
    "equilibria": cmd_equilibria,
    "dispersion": cmd_dispersion,
    "band": cmd_band,
    "ode": cmd_ode,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "lyapunov-check": cmd_lyapunov_check,
    "table": cmd_table,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="turing-lab",
        description="Predator-prey/two-signal cross-diffusion lab: "
        "equilibria, dispersion analysis, pattern simulation.",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", required=True, help="path to the INI configuration")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a configuration entry (section.key=value)",
    )
    parser.add_argument("--out", default=None, help="output directory (default: [output] dir)")
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as err:
        print(f"error: cannot read config: {err}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        cfg = parse_config(text, mode=args.mode, overrides=args.overrides)
        out_dir = args.out if args.out is not None else cfg.out_dir
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "config.resolved.ini"), "w") as fh:
            fh.write(emit_config(cfg))
        _COMMANDS[cfg.mode](cfg, out_dir)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationFailure as err:
        print(f"validation failure: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SimulationBlowup, NegativeStateError) as err:
        print(f"simulation aborted: {err}", file=sys.stderr)
        return EXIT_SIMULATION
    except OSError as err:
        print(f"output error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
