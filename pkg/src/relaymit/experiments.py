"""Sweep engine, named presets, plain-text config parsing, CSV/plot output.

A :class:`SweepSpec` fixes a channel (gains, powers, optional fading
statistics, Monte Carlo settings) and varies one quantity: interference
power in dB (``p_i_db``), interference codebook rate (``r_i``), or the
Ricean K-factor of all links (``k_factor``). :func:`run_sweep` evaluates
every requested scheme at every sweep point and returns rows ready for
:func:`emit_csv` (comma-separated) or :func:`emit_plot` (gnuplot-style
whitespace-separated).

Config files are plain ``key=value`` lines with ``#`` comments. A preset
name (``fig1`` ... ``fading_fig3``) can be given as a bare line or via
``preset=<name>``; any keys after it override the preset's values. Powers
are accepted in dB and converted to linear scale once, at parse time.

The same :class:`~relaymit.fading.MonteCarloCfg` (hence the same seeded
sample batch) is used for every scheme at every sweep point, so fading
curves are coupled through common random numbers and repeated runs are
byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO

from . import awgn as _awgn
from . import fading as _fading
from .core import ChannelGains, DomainError, PowerBudget, RateResult, db_to_linear
from .fading import FadingSpec, MonteCarloCfg
from .optimize import OptimizerConfig

__all__ = [
    "AWGN_SCHEMES",
    "FADING_SCHEMES",
    "KNOWN_SCHEMES",
    "MULTIHOP_ONLY_SCHEMES",
    "ConfigError",
    "SweepSpec",
    "FigurePreset",
    "CsvRow",
    "PRESETS",
    "figure_preset",
    "evaluate_scheme",
    "run_sweep",
    "sweep_points",
    "emit_csv",
    "emit_plot",
    "parse_config",
]

AWGN_SCHEMES = ("nr", "ni", "du", "cu", "cs1", "cs2", "aid", "nldf")
FADING_SCHEMES = (
    "f_p2p_u",
    "f_p2p_s",
    "f_du",
    "f_ds",
    "f_cu",
    "f_cs1",
    "f_cs2",
    "f_aid",
    "f_ni",
)
KNOWN_SCHEMES = AWGN_SCHEMES + FADING_SCHEMES

#: schemes defined only on the relay-only topology (no direct link)
MULTIHOP_ONLY_SCHEMES = frozenset(
    {"nldf", "f_du", "f_ds", "f_cu", "f_cs1", "f_cs2", "f_aid", "f_ni"}
)

_SWEEP_VARS = ("p_i_db", "r_i", "k_factor")


class ConfigError(ValueError):
    """Configuration problem; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: scheme list, swept variable, inclusive range, fixed channel.

    ``start``/``stop``/``step`` correspond to the config keys ``from``/``to``/
    ``step``. ``optimizer`` overrides both families' optimizer settings when
    given; otherwise each family uses its default settings with this spec's
    ``grid_resolution``.
    """

    schemes: tuple[str, ...]
    sweep_var: str
    start: float
    stop: float
    step: float
    gains: ChannelGains
    budget: PowerBudget
    fading: FadingSpec | None = None
    mc: MonteCarloCfg = field(default_factory=MonteCarloCfg)
    grid_resolution: float = 0.05
    optimizer: OptimizerConfig | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if not self.schemes:
            raise ConfigError("schemes must be nonempty")
        for s in self.schemes:
            if s not in KNOWN_SCHEMES:
                raise ConfigError(f"unknown scheme {s!r}")
        if len(set(self.schemes)) != len(self.schemes):
            raise ConfigError("duplicate scheme in schemes list")
        if self.sweep_var not in _SWEEP_VARS:
            raise ConfigError(f"sweep must be one of {_SWEEP_VARS}, got {self.sweep_var!r}")
        if not (self.step > 0):
            raise ConfigError(f"step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise ConfigError(f"from must be <= to, got {self.start} > {self.stop}")
        if self.fading is None and any(s in FADING_SCHEMES for s in self.schemes):
            raise ConfigError("fading schemes require a FadingSpec")
        if not self.gains.multihop:
            bad = [s for s in self.schemes if s in MULTIHOP_ONLY_SCHEMES]
            if bad:
                raise ConfigError(f"scheme {bad[0]!r} requires h_sd = 0, got h_sd = {self.gains.h_sd}")
        if not (0.0 < self.grid_resolution <= 1.0):
            raise ConfigError(f"grid_resolution must be in (0, 1], got {self.grid_resolution}")


@dataclass(frozen=True)
class CsvRow:
    """One output row: column names plus the matching float values."""

    columns: tuple[str, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.values):
            raise DomainError(
                f"row has {len(self.columns)} columns but {len(self.values)} values"
            )
        for name, v in zip(self.columns, self.values):
            if not math.isfinite(v):
                raise DomainError(f"non-finite value {v} in column {name!r}")


def sweep_points(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid from ``start`` toward ``stop``."""
    if step <= 0:
        raise ConfigError(f"step must be > 0, got {step}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(max(n, 1))]


def evaluate_scheme(
    scheme: str,
    gains: ChannelGains,
    budget: PowerBudget,
    fading: FadingSpec | None = None,
    mc: MonteCarloCfg | None = None,
    awgn_cfg: OptimizerConfig | None = None,
    fading_cfg: OptimizerConfig | None = None,
) -> RateResult:
    """Dispatch one scheme identifier to its evaluator."""
    if scheme == "nr":
        return _awgn.rate_nr(gains, budget)
    if scheme == "nldf":
        return _awgn.rate_nldf(gains, budget)
    awgn_fns = {
        "ni": _awgn.rate_ni,
        "du": _awgn.rate_du,
        "cu": _awgn.rate_cu,
        "cs1": _awgn.rate_cs1,
        "cs2": _awgn.rate_cs2,
        "aid": _awgn.rate_aid,
    }
    if scheme in awgn_fns:
        return awgn_fns[scheme](gains, budget, awgn_cfg)
    if scheme not in FADING_SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}")
    if fading is None:
        raise ConfigError(f"scheme {scheme!r} requires fading statistics")
    mc = mc or MonteCarloCfg()
    if scheme == "f_ni":
        return _fading.rate_fading_ni_multihop(fading, budget, mc)
    fading_fns = {
        "f_p2p_u": _fading.rate_fading_p2p_u,
        "f_p2p_s": _fading.rate_fading_p2p_s,
        "f_du": _fading.rate_fading_du,
        "f_ds": _fading.rate_fading_ds,
        "f_cu": _fading.rate_fading_cu,
        "f_cs1": _fading.rate_fading_cs1,
        "f_cs2": _fading.rate_fading_cs2,
        "f_aid": _fading.rate_fading_aid,
    }
    return fading_fns[scheme](fading, budget, mc, fading_cfg)


def run_sweep(spec: SweepSpec) -> list[CsvRow]:
    """Evaluate every scheme at every sweep point; rows ordered by sweep value."""
    if spec.sweep_var == "k_factor":
        for s in spec.schemes:
            if s in AWGN_SCHEMES:
                raise ConfigError(
                    f"scheme {s!r} cannot be swept over 'k_factor': it has no fading statistics"
                )
    if spec.sweep_var in ("r_i", "k_factor") and spec.start < 0:
        raise ConfigError(f"'{spec.sweep_var}' sweep cannot include negative values")
    awgn_cfg = spec.optimizer or replace(_awgn.AWGN_OPT_CFG, grid_resolution=spec.grid_resolution)
    fading_cfg = spec.optimizer or replace(
        _fading.FADING_OPT_CFG, grid_resolution=spec.grid_resolution
    )
    columns: list[str] = [spec.sweep_var]
    for s in spec.schemes:
        columns.append(s)
        if s in FADING_SCHEMES:
            columns.append(f"{s}_se")
    rows: list[CsvRow] = []
    for v in sweep_points(spec.start, spec.stop, spec.step):
        budget = spec.budget
        fading = spec.fading
        if spec.sweep_var == "p_i_db":
            budget = replace(budget, p_i=db_to_linear(v))
        elif spec.sweep_var == "r_i":
            budget = replace(budget, r_i=float(v))
        else:
            fading = FadingSpec(k_sr=v, k_sd=v, k_rd=v, k_i=v)
        values: list[float] = [float(v)]
        for s in spec.schemes:
            res = evaluate_scheme(s, spec.gains, budget, fading, spec.mc, awgn_cfg, fading_cfg)
            values.append(res.rate)
            if s in FADING_SCHEMES:
                values.append(res.std_error if res.std_error is not None else 0.0)
        rows.append(CsvRow(columns=tuple(columns), values=tuple(values)))
    return rows


def _render(rows: list[CsvRow], sep: str, header_prefix: str) -> bytes:
    columns = rows[0].columns
    for r in rows[1:]:
        if r.columns != columns:
            raise DomainError("rows disagree on column layout")
    lines = [header_prefix + sep.join(columns)]
    for r in rows:
        lines.append(sep.join(f"{v:.6f}" for v in r.values))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _write_out(data: bytes, destination: "str | Path | IO | None") -> None:
    if destination is None:
        return
    if hasattr(destination, "write"):
        try:
            destination.write(data)
        except TypeError:
            destination.write(data.decode("utf-8"))
        return
    Path(destination).write_bytes(data)


def emit_csv(rows: list[CsvRow], destination: "str | Path | IO | None" = None) -> bytes:
    """Render rows as UTF-8 CSV (header, LF endings, 6-decimal floats)."""
    if not rows:
        raise DomainError("no rows to emit")
    data = _render(list(rows), ",", "")
    _write_out(data, destination)
    return data


def emit_plot(rows: list[CsvRow], destination: "str | Path | IO | None" = None) -> bytes:
    """Render rows whitespace-separated with a '#' header (gnuplot-friendly)."""
    if not rows:
        raise DomainError("no rows to emit")
    data = _render(list(rows), " ", "# ")
    _write_out(data, destination)
    return data


# ----------------------------------------------------------------------
# presets
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FigurePreset:
    """A named bundle of config pairs that expands to a full SweepSpec."""

    name: str
    description: str
    pairs: tuple[tuple[str, str], ...]


_BASE_AWGN = (
    ("sweep", "p_i_db"),
    ("from", "-10"),
    ("to", "30"),
    ("step", "1"),
    ("p_s_db", "10"),
    ("p_r_db", "10"),
    ("r_i", "1"),
    ("h_sr", "1"),
    ("h_sd", "1"),
    ("h_rd", "1"),
    ("h_i", "1"),
)

PRESETS: dict[str, FigurePreset] = {
    "fig1": FigurePreset(
        "fig1",
        "interference power sweep, equal unit gains",
        (("schemes", "nr,ni,du,cu,cs1,cs2,aid"),) + _BASE_AWGN,
    ),
    "fig2": FigurePreset(
        "fig2",
        "interference power sweep, strong source-relay link",
        (("schemes", "nr,ni,du,cu,cs1,cs2,aid"),) + _BASE_AWGN + (("h_sr", "2"),),
    ),
    "fig3": FigurePreset(
        "fig3",
        "interference power sweep, strong source-relay link, high-rate interferer",
        (("schemes", "nr,ni,du,cu,cs1,cs2,aid"),)
        + _BASE_AWGN
        + (("h_sr", "2"), ("r_i", "3")),
    ),
    "fig5": FigurePreset(
        "fig5",
        "multihop interference-rate sweep",
        (
            ("schemes", "ni,du,cu,cs1,cs2,aid,nldf"),
            ("sweep", "r_i"),
            ("from", "0"),
            ("to", "3"),
            ("step", "0.25"),
            ("p_s_db", "10"),
            ("p_r_db", "10"),
            ("p_i_db", "10"),
            ("h_sr", "1"),
            ("h_sd", "0"),
            ("h_rd", "1"),
            ("h_i", "1"),
        ),
    ),
    "fading_fig1": FigurePreset(
        "fading_fig1",
        "point-to-point fading K-factor sweep",
        (
            ("schemes", "f_p2p_u,f_p2p_s"),
            ("sweep", "k_factor"),
            ("from", "0"),
            ("to", "10"),
            ("step", "0.5"),
            ("p_s_db", "5"),
            ("p_i_db", "5"),
            ("r_i", "0.5"),
        ),
    ),
    "fading_fig2": FigurePreset(
        "fading_fig2",
        "point-to-point fading interference power sweep",
        (
            ("schemes", "f_p2p_u,f_p2p_s"),
            ("sweep", "p_i_db"),
            ("from", "-10"),
            ("to", "30"),
            ("step", "1"),
            ("p_s_db", "5"),
            ("r_i", "0.5"),
            ("k_sr", "1"),
            ("k_sd", "1"),
            ("k_rd", "1"),
            ("k_i", "1"),
        ),
    ),
    "fading_fig3": FigurePreset(
        "fading_fig3",
        "multihop fading interference power sweep",
        (
            ("schemes", "f_ni,f_du,f_ds,f_cu,f_cs2,f_aid"),
            ("sweep", "p_i_db"),
            ("from", "-10"),
            ("to", "30"),
            ("step", "1"),
            ("p_s_db", "10"),
            ("p_r_db", "7"),
            ("r_i", "0.4"),
            ("h_sd", "0"),
            ("k_sr", "1"),
            ("k_sd", "1"),
            ("k_rd", "1"),
            ("k_i", "1"),
        ),
    ),
}


def figure_preset(name: str) -> SweepSpec:
    """Expand a named preset into its full SweepSpec."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return _build_spec([(None, k, v) for k, v in PRESETS[name].pairs])


# ----------------------------------------------------------------------
# config parsing
# ----------------------------------------------------------------------

_CONFIG_KEYS = (
    "schemes",
    "sweep",
    "from",
    "to",
    "step",
    "p_s_db",
    "p_r_db",
    "p_i_db",
    "r_i",
    "h_sr",
    "h_sd",
    "h_rd",
    "h_i",
    "k_sr",
    "k_sd",
    "k_rd",
    "k_i",
    "mc_samples",
    "seed",
    "grid_resolution",
)

_DEFAULT_RAW: dict[str, str | None] = {
    "schemes": None,
    "sweep": "p_i_db",
    "from": "-10",
    "to": "30",
    "step": "1",
    "p_s_db": "10",
    "p_r_db": "10",
    "p_i_db": "10",
    "r_i": "1",
    "h_sr": "1",
    "h_sd": "1",
    "h_rd": "1",
    "h_i": "1",
    "k_sr": "1",
    "k_sd": "1",
    "k_rd": "1",
    "k_i": "1",
    "mc_samples": "100000",
    "seed": "42",
    "grid_resolution": "0.05",
}

_FADING_TRIGGER_KEYS = frozenset({"k_sr", "k_sd", "k_rd", "k_i", "mc_samples", "seed"})

Entry = tuple[int | None, str, str]


def parse_config(text: str) -> SweepSpec:
    """Parse ``key=value`` lines (\\# comments) into a SweepSpec.

    A bare preset name, or ``preset=<name>``, expands that preset's values;
    later keys override earlier ones. Omitted keys take documented defaults
    (``mc_samples=100000``, ``seed=42``, ``grid_resolution=0.05``, sweep
    ``p_i_db`` from -10 to 30 step 1, unit gains, 10 dB source/relay power,
    fixed 10 dB interference power, ``r_i=1``, all K-factors 1).
    """
    entries: list[Entry] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" in stripped:
            key, _, value = stripped.partition("=")
            key = key.strip()
            value = value.strip()
            if not key:
                raise ConfigError("missing key before '='", lineno)
            if key != "preset" and key not in _CONFIG_KEYS:
                raise ConfigError(f"unknown key {key!r}", lineno)
            if not value:
                raise ConfigError(f"empty value for key {key!r}", lineno)
            entries.append((lineno, key, value))
        elif stripped in PRESETS:
            entries.append((lineno, "preset", stripped))
        else:
            raise ConfigError(
                f"expected key=value or a preset name, got {stripped!r}", lineno
            )
    return _build_spec(entries)


def _parse_float(key: str, value: str, line: int | None) -> float:
    try:
        out = float(value)
    except ValueError:
        raise ConfigError(f"invalid number for {key}: {value!r}", line) from None
    if math.isnan(out):
        raise ConfigError(f"invalid number for {key}: {value!r}", line)
    return out


def _parse_int(key: str, value: str, line: int | None) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"invalid integer for {key}: {value!r}", line) from None


def _parse_complex(key: str, value: str, line: int | None) -> complex:
    try:
        return complex(value)
    except ValueError:
        raise ConfigError(f"invalid gain for {key}: {value!r}", line) from None


def _build_spec(entries: list[Entry]) -> SweepSpec:
    raw = dict(_DEFAULT_RAW)
    lines: dict[str, int | None] = {k: None for k in _CONFIG_KEYS}
    explicit: set[str] = set()

    preset: tuple[int | None, str] | None = None
    for lineno, key, value in entries:
        if key == "preset":
            if preset is not None:
                raise ConfigError("multiple presets in one config", lineno)
            if value not in PRESETS:
                raise ConfigError(f"unknown preset {value!r}", lineno)
            preset = (lineno, value)
    if preset is not None:
        p_line, p_name = preset
        for key, value in PRESETS[p_name].pairs:
            raw[key] = value
            lines[key] = p_line
            explicit.add(key)
    for lineno, key, value in entries:
        if key == "preset":
            continue
        raw[key] = value
        lines[key] = lineno
        explicit.add(key)

    def _line(key: str) -> int | None:
        return lines.get(key)

    if raw["schemes"] is None:
        raise ConfigError("schemes must be given (directly or via a preset)")
    schemes = tuple(s.strip() for s in str(raw["schemes"]).split(",") if s.strip())
    if not schemes:
        raise ConfigError("schemes list is empty", _line("schemes"))
    for s in schemes:
        if s not in KNOWN_SCHEMES:
            raise ConfigError(f"unknown scheme {s!r}", _line("schemes"))
    if len(set(schemes)) != len(schemes):
        raise ConfigError("duplicate scheme in schemes list", _line("schemes"))

    sweep_var = str(raw["sweep"])
    if sweep_var not in _SWEEP_VARS:
        raise ConfigError(
            f"sweep must be one of {_SWEEP_VARS}, got {sweep_var!r}", _line("sweep")
        )
    start = _parse_float("from", str(raw["from"]), _line("from"))
    stop = _parse_float("to", str(raw["to"]), _line("to"))
    step = _parse_float("step", str(raw["step"]), _line("step"))
    if not (step > 0):
        raise ConfigError(f"step must be > 0, got {step}", _line("step"))
    if start > stop:
        raise ConfigError(f"from must be <= to, got {start} > {stop}", _line("from"))

    gains_kwargs = {}
    for key in ("h_sr", "h_sd", "h_rd", "h_i"):
        gains_kwargs[key] = _parse_complex(key, str(raw[key]), _line(key))
    try:
        gains = ChannelGains(**gains_kwargs)
    except DomainError as e:
        raise ConfigError(str(e), _line("h_sr")) from None

    p_s_db = _parse_float("p_s_db", str(raw["p_s_db"]), _line("p_s_db"))
    p_r_db = _parse_float("p_r_db", str(raw["p_r_db"]), _line("p_r_db"))
    p_i_db = _parse_float("p_i_db", str(raw["p_i_db"]), _line("p_i_db"))
    r_i = _parse_float("r_i", str(raw["r_i"]), _line("r_i"))
    try:
        budget = PowerBudget(
            p_s=db_to_linear(p_s_db),
            p_r=db_to_linear(p_r_db),
            p_i=db_to_linear(p_i_db),
            r_i=r_i,
        )
    except DomainError as e:
        raise ConfigError(str(e), _line("r_i")) from None

    needs_fading = (
        sweep_var == "k_factor"
        or any(s in FADING_SCHEMES for s in schemes)
        or bool(explicit & _FADING_TRIGGER_KEYS)
    )
    fading = None
    if needs_fading:
        k_kwargs = {}
        for key in ("k_sr", "k_sd", "k_rd", "k_i"):
            k_kwargs[key] = _parse_float(key, str(raw[key]), _line(key))
        try:
            fading = FadingSpec(**k_kwargs)
        except DomainError as e:
            raise ConfigError(str(e), _line("k_sr")) from None

    mc_samples = _parse_int("mc_samples", str(raw["mc_samples"]), _line("mc_samples"))
    seed = _parse_int("seed", str(raw["seed"]), _line("seed"))
    try:
        mc = MonteCarloCfg(samples=mc_samples, seed=seed)
    except DomainError as e:
        raise ConfigError(str(e), _line("mc_samples")) from None

    grid_resolution = _parse_float(
        "grid_resolution", str(raw["grid_resolution"]), _line("grid_resolution")
    )
    if not (0.0 < grid_resolution <= 1.0):
        raise ConfigError(
            f"grid_resolution must be in (0, 1], got {grid_resolution}",
            _line("grid_resolution"),
        )

    multihop_requested = [s for s in schemes if s in MULTIHOP_ONLY_SCHEMES]
    if multihop_requested and gains.h_sd != 0:
        raise ConfigError(
            f"scheme {multihop_requested[0]!r} requires h_sd = 0, got h_sd = {gains.h_sd}",
            _line("schemes"),
        )

    return SweepSpec(
        schemes=schemes,
        sweep_var=sweep_var,
        start=start,
        stop=stop,
        step=step,
        gains=gains,
        budget=budget,
        fading=fading,
        mc=mc,
        grid_resolution=grid_resolution,
    )
