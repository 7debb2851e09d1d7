"""Command-line interface.

Subcommands:

``rate``
    Evaluate one scheme at one operating point and print the rate, the
    branch values, and the maximizing parameters.
``sweep``
    Run a sweep described by ``--config FILE`` and/or flags mirroring the
    config keys; write CSV (or gnuplot text) to ``--out`` or stdout.
``figure NAME``
    Run a named preset sweep, with optional flag overrides.

Exit codes: 0 on success, 1 on configuration errors, 2 on numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import awgn as _awgn
from . import fading as _fading
from .core import DomainError, RateResult
from .experiments import (
    _CONFIG_KEYS,
    ConfigError,
    PRESETS,
    emit_csv,
    emit_plot,
    evaluate_scheme,
    parse_config,
    run_sweep,
)
from .optimize import InfeasibleSpaceError

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors become ConfigError (exit code 1)."""

    def error(self, message: str):  # noqa: D401 - argparse hook
        raise ConfigError(message)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    for key in _CONFIG_KEYS:
        parser.add_argument(f"--{key}", metavar="V", help=f"config key '{key}'")


def _config_text(args: argparse.Namespace, head: list[str]) -> str:
    lines = list(head)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def _format_params(res: RateResult) -> str:
    p = res.params
    if p is None:
        return ""
    parts: list[str] = []
    if p.gamma is not None:
        parts.append(f"gamma={p.gamma:.6f}")
    if p.r_q is not None:
        parts.append(f"r_q={p.r_q:.6f}")
    if p.alpha is not None:
        parts.append(f"alpha={p.alpha:.6f}")
    if p.rho:
        parts.append("rho=(" + ", ".join(f"{t:.6f}" for t in p.rho) + ")")
    if p.rho_bar:
        parts.append("rho_bar=(" + ", ".join(f"{t:.6f}" for t in p.rho_bar) + ")")
    return " ".join(parts)


def _format_result(res: RateResult) -> str:
    lines = [f"scheme: {res.scheme}", f"rate: {res.rate:.6f} bits/channel use"]
    if res.branch_values:
        lines.append(
            "branches: " + " ".join(f"{name}={value:.6f}" for name, value in res.branch_values)
        )
    params = _format_params(res)
    if params:
        lines.append("params: " + params)
    if res.std_error is not None:
        lines.append(f"std_error: {res.std_error:.6f}")
    return "\n".join(lines) + "\n"


def _emit(rows, args: argparse.Namespace) -> None:
    emit = emit_plot if args.format == "plot" else emit_csv
    if args.out:
        emit(rows, args.out)
    else:
        sys.stdout.buffer.write(emit(rows))
        sys.stdout.buffer.flush()


def _cmd_rate(args: argparse.Namespace) -> int:
    spec = parse_config(_config_text(args, [f"schemes={args.scheme}"]))
    awgn_cfg = replace(_awgn.AWGN_OPT_CFG, grid_resolution=spec.grid_resolution)
    fading_cfg = replace(_fading.FADING_OPT_CFG, grid_resolution=spec.grid_resolution)
    res = evaluate_scheme(
        args.scheme, spec.gains, spec.budget, spec.fading, spec.mc, awgn_cfg, fading_cfg
    )
    text = _format_result(res)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    head: list[str] = []
    if args.config:
        try:
            head = Path(args.config).read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise ConfigError(f"cannot read config file {args.config!r}: {e}") from None
    spec = parse_config(_config_text(args, head))
    _emit(run_sweep(spec), args)
    return 0


def _cmd_figure(args: argparse.Namespace) -> int:
    spec = parse_config(_config_text(args, [args.name]))
    _emit(run_sweep(spec), args)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="relaymit",
        description="Achievable rates for a relay link with a known interfering codeword.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_rate = sub.add_parser("rate", help="evaluate one scheme at one operating point")
    p_rate.add_argument("--scheme", required=True, help="scheme identifier (e.g. du, f_du)")
    p_rate.add_argument("--out", metavar="PATH", help="write the report to a file")
    _add_config_flags(p_rate)
    p_rate.set_defaults(func=_cmd_rate)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--config", metavar="PATH", help="plain-text config file")
    p_sweep.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p_sweep.add_argument("--format", choices=("csv", "plot"), default="csv")
    _add_config_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="run a named preset sweep")
    p_fig.add_argument("name", choices=sorted(PRESETS), help="preset name")
    p_fig.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p_fig.add_argument("--format", choices=("csv", "plot"), default="csv")
    _add_config_flags(p_fig)
    p_fig.set_defaults(func=_cmd_figure)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except (DomainError, InfeasibleSpaceError, OSError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
