"""Command-line front end: a thin client over the service handlers.

Flags override config-file values, which override the built-in defaults
(the defaults reproduce the reference figures).  Exit codes: 0 success,
2 usage error, 3 infeasible parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np
from pydantic import ValidationError

from .params import InfeasibleParametersError
from .service import handlers
from .service import schemas as s

USAGE_ERROR = 2
INFEASIBLE_ERROR = 3

_CONFIG_KEYS = {
    "sigma",
    "prior",
    "wage",
    "threshold",
    "epsilon",
    "base-rate",
    "prevalence",
    "psi",
    "seed",
    "draws",
    "workers",
    "format",
    "out",
}


def _grid(text: str) -> list[float]:
    """Parse '0.1,0.2' as a list or 'lo:hi:n' as n evenly spaced points."""
    text = text.strip()
    if ":" in text:
        lo, hi, n = text.split(":")
        return [float(v) for v in np.linspace(float(lo), float(hi), int(n))]
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _psi_kind(text: str) -> tuple[str, float | None]:
    """Parse 'linear' | 'power[:gamma]' | 'step'."""
    kind, _, gamma = text.strip().partition(":")
    if kind not in ("linear", "power", "step"):
        raise ValueError(f"psi must be linear, power[:gamma] or step, got {text!r}")
    if gamma and kind != "power":
        raise ValueError("only power takes an exponent, e.g. power:0.5")
    return kind, float(gamma) if gamma else None


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key or not value:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value
    return values


def _pick(flag_value, config: dict[str, str], key: str, parse):
    if flag_value is not None:
        return parse(flag_value)
    if key in config:
        return parse(config[key])
    return None


def _psi_spec(args, config) -> dict | None:
    fields: dict = {}
    spec = _pick(getattr(args, "psi", None), config, "psi", _psi_kind)
    if spec is not None:
        fields["kind"] = spec[0]
        if spec[1] is not None:
            fields["gamma"] = spec[1]
    wage = _pick(getattr(args, "wage", None), config, "wage", float)
    if wage is not None:
        fields["wage"] = wage
    threshold = _pick(getattr(args, "threshold", None), config, "threshold", float)
    if threshold is not None:
        fields["threshold"] = threshold
    return fields or None


def _gather(args, config, fields: dict[str, tuple[str, object]]) -> dict:
    """Collect request fields as {name: (config key, parser)}, skipping unset ones."""
    out = {}
    for name, (key, parse) in fields.items():
        value = _pick(getattr(args, name.replace("-", "_"), None), config, key, parse)
        if value is not None:
            out[name] = value
    return out


def _build_figure1(args, config) -> s.Figure1Request:
    kwargs = _gather(args, config, {"sigma": ("sigma", _grid), "prior": ("prior", _grid), "wage": ("wage", _grid)})
    spec = _pick(args.psi, config, "psi", _psi_kind)
    if spec is not None:
        kind, gamma = spec
        kwargs["psi"] = {"kind": kind, **({"gamma": gamma} if gamma is not None else {})}
    return s.Figure1Request(**kwargs)


def _build_figure2(args, config) -> s.Figure2Request:
    return s.Figure2Request(**_gather(args, config, {"sigma": ("sigma", _grid), "prior": ("prior", _grid)}))


def _build_figure3(args, config) -> s.Figure3Request:
    return s.Figure3Request(
        **_gather(
            args,
            config,
            {
                "sigma": ("sigma", _grid),
                "wage": ("wage", _grid),
                "threshold": ("threshold", float),
                "prior": ("prior", _grid),
            },
        )
    )


def _build_figure4(args, config) -> s.Figure4Request:
    return s.Figure4Request(**_gather(args, config, {"sigma": ("sigma", _grid), "wage": ("wage", _grid)}))


def _build_choose(args, config) -> s.ChooseRequest:
    kwargs = _gather(
        args,
        config,
        {
            "sigma": ("sigma", float),
            "prior": ("prior", float),
            "prevalence": ("prevalence", float),
            "base_rate": ("base-rate", float),
        },
    )
    psi = _psi_spec(args, config)
    if psi is not None:
        kwargs["psi"] = psi
    return s.ChooseRequest(**kwargs)


def _build_simulate(args, config) -> s.SimulateRequest:
    kwargs = _gather(
        args,
        config,
        {
            "sigma": ("sigma", float),
            "prior": ("prior", float),
            "prevalence": ("prevalence", float),
            "base_rate": ("base-rate", float),
            "epsilon": ("epsilon", float),
            "seed": ("seed", int),
            "draws": ("draws", int),
            "workers": ("workers", int),
        },
    )
    psi = _psi_spec(args, config)
    if psi is not None:
        kwargs["psi"] = psi
    return s.SimulateRequest(**kwargs)


def _build_equilibria(args, config) -> s.EquilibriaRequest:
    return s.EquilibriaRequest(
        **_gather(args, config, {"sigma": ("sigma", float), "wage": ("wage", float)})
    )


_BUILDERS = {
    "figure1": (_build_figure1, handlers.figure1),
    "figure2": (_build_figure2, handlers.figure2),
    "figure3": (_build_figure3, handlers.figure3),
    "figure4": (_build_figure4, handlers.figure4),
    "choose": (_build_choose, handlers.choose),
    "simulate": (_build_simulate, handlers.simulate),
    "equilibria": (_build_equilibria, handlers.equilibria),
}


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default=None, help="output format (default csv)")
    sub.add_argument("--out", default=None, help="write output to this path instead of stdout")
    sub.add_argument("--config", default=None, help="flat key=value config file; flags take precedence")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="advicegame",
        description="Expert-advice reputation game: figure data, rule choice, simulation, equilibria.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    grids = {
        "figure1": ("sweep the payoff gain over the wage", ["sigma", "prior", "wage", "psi"]),
        "figure2": ("posterior beliefs by prior and covariance", ["sigma", "prior"]),
        "figure3": ("wage-regime payoffs by prior", ["sigma", "wage", "threshold", "prior"]),
        "figure4": ("known-type best responses and equilibria", ["sigma", "wage"]),
    }
    for name, (help_text, flags) in grids.items():
        sub = commands.add_parser(name, help=help_text)
        for flag in flags:
            if flag == "psi":
                sub.add_argument("--psi", default=None, help="reward shape: linear or power[:gamma]")
            elif flag == "threshold":
                sub.add_argument("--threshold", default=None, help="replacement threshold")
            else:
                sub.add_argument(f"--{flag}", default=None, help=f"{flag} grid: list a,b,... or lo:hi:n")
        _add_output_flags(sub)

    points = {
        "choose": ("evaluate the rule choice at one parameter point", False),
        "simulate": ("run the seeded Monte-Carlo oracle", True),
    }
    for name, (help_text, with_sim) in points.items():
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--sigma", default=None, help="covariance of action and condition")
        sub.add_argument("--prior", default=None, help="prior probability of competence")
        sub.add_argument("--prevalence", default=None, help="Pr(X=1)")
        sub.add_argument("--base-rate", default=None, help="Pr(A=1)")
        sub.add_argument("--psi", default=None, help="linear | power[:gamma] | step")
        sub.add_argument("--wage", default=None, help="reputation payoff scale / step wage")
        sub.add_argument("--threshold", default=None, help="step threshold")
        if with_sim:
            sub.add_argument("--epsilon", default=None, help="condition misreading probability")
            sub.add_argument("--seed", default=None, help="64-bit RNG seed")
            sub.add_argument("--draws", default=None, help="number of Monte-Carlo draws")
            sub.add_argument("--workers", default=None, help="worker threads (does not affect results)")
        _add_output_flags(sub)

    sub = commands.add_parser("equilibria", help="classify the known-type wage game's equilibria")
    sub.add_argument("--sigma", default=None)
    sub.add_argument("--wage", default=None)
    _add_output_flags(sub)

    return parser


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _render_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    columns = list(type(rows[0]).model_fields)
    writer.writerow(columns)
    for row in rows:
        writer.writerow(_format_cell(getattr(row, c)) for c in columns)
    return buffer.getvalue()


def _render_json(response) -> str:
    return json.dumps(response.model_dump(), indent=2) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    build, handle = _BUILDERS[args.command]
    try:
        config = _load_config(args.config) if args.config else {}
        request = build(args, config)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"advicegame {args.command}: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        response = handle(request)
    except InfeasibleParametersError as exc:
        print(f"advicegame {args.command}: {exc}", file=sys.stderr)
        return INFEASIBLE_ERROR
    for warning in response.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    fmt = args.format or config.get("format") or "csv"
    out_path = args.out or config.get("out")
    text = _render_csv(response.rows) if fmt == "csv" else _render_json(response)
    _emit(text, out_path)
    return 0
