# src/cli/main.py

"""
Command-line front end.

    python -m src.cli.main count --g 3 --cm 0,1,1 --pol 1,1,1 --max-degree 3

Payloads (JSON or CSV) go to stdout or --out; logs go to stderr.
Exit codes: 0 success, 1 usage or validation error, 2 verification failure.
"""

import json
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click
import pandas as pd
from pydantic import BaseModel, ValidationError, model_validator

from src.config import get_settings
from src.core.census3 import FIELDS as THREEFOLD_FIELDS
from src.core.cm import CmParams, validate_cm
from src.core.errors import CensusError, VerificationFailed
from src.services.census_service import CensusQuery, CensusResult, get_census_service, sweep_csv
from src.utils.logger import configure_logging, get_logger

logger = get_logger(__name__)

SURFACE_FIELDS = ("alpha", "beta", "gamma", "eta")


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class RunConfig(BaseModel):
    """Everything one invocation needs, validated before any work starts."""

    command: str
    g: int
    cm: Optional[CmParams] = None
    no_cm: bool = False
    multipliers: Tuple[int, ...]
    t: Optional[int] = None
    t_min: Optional[int] = None
    t_max: Optional[int] = None
    box: Optional[int] = None
    threads: int = 1
    output_format: OutputFormat = OutputFormat.JSON
    out: Optional[Path] = None

    @model_validator(mode="after")
    def validate_config(self):
        if (self.cm is None) == (not self.no_cm):
            raise ValueError("specify exactly one of --cm and --no-cm")
        if len(self.multipliers) != self.g:
            raise ValueError(f"--g {self.g} needs {self.g} multipliers in --pol, got {len(self.multipliers)}")
        if self.threads < 1:
            raise ValueError(f"--threads must be >= 1, got {self.threads}")
        return self

    @property
    def query(self) -> CensusQuery:
        return CensusQuery(g=self.g, cm=self.cm, multipliers=self.multipliers)


def _parse_ints(ctx, param, value: Optional[str]) -> Optional[Tuple[int, ...]]:
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


def _build_config(command: str, **kwargs) -> RunConfig:
    cm_triple = kwargs.pop("cm_triple")
    cm = None
    if cm_triple is not None:
        if len(cm_triple) != 3:
            raise click.BadParameter(f"--cm needs three integers u,v,w, got {len(cm_triple)}")
        cm = validate_cm(*cm_triple)
    return RunConfig(command=command, cm=cm, **kwargs)


def _emit(payload: str, out: Optional[Path]) -> None:
    if not payload.endswith("\n"):
        payload += "\n"
    if out is None:
        click.echo(payload, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(payload)
    logger.info(f"wrote {out}")


def _curves_csv(result: CensusResult) -> str:
    fields = SURFACE_FIELDS if result.params.g == 2 else THREEFOLD_FIELDS
    rows: List[dict] = []
    for record in result.curves:
        row = dict(zip(fields, record.coords))
        row.update(degree=record.degree, kind=record.kind.value)
        if record.basis is not None:
            row.update(
                **{"lambda": " ".join(map(str, record.basis.lam)), "mu": " ".join(map(str, record.basis.mu))}
            )
        rows.append(row)
    columns = list(fields) + ["degree", "kind"] + (["lambda", "mu"] if any(r.basis for r in result.curves) else [])
    return pd.DataFrame(rows, columns=columns).to_csv(index=False, lineterminator="\n")


def common_options(func):
    """Options shared by every subcommand."""
    options = [
        click.option("--g", "g", type=click.IntRange(2, 3), required=True, help="Dimension of E^g."),
        click.option("--cm", "cm_triple", callback=_parse_ints, help="CM triple u,v,w with w*tau^2 + u*tau + v = 0."),
        click.option("--no-cm", "no_cm", is_flag=True, help="End(E) = Z: ordinary curves only."),
        click.option("--pol", "multipliers", callback=_parse_ints, required=True, help="Polarization multipliers m,n(,p)."),
        click.option(
            "--threads",
            type=int,
            envvar="EC_CENSUS_THREADS",
            default=lambda: get_settings().census.threads,
            show_default="1",
            help="Worker processes for enumeration and the oracle; the output does not depend on it.",
        ),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the payload here instead of stdout."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _format_option(default: str):
    return click.option(
        "--format",
        "output_format",
        type=click.Choice([f.value for f in OutputFormat]),
        default=default,
        show_default=True,
    )


@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL for this run.")
def cli(log_level: Optional[str]):
    """Count and list the elliptic curves of bounded degree in E^2 and E^3."""
    configure_logging(log_level)


@cli.command("enumerate")
@common_options
@click.option("--max-degree", "t", type=click.IntRange(min=0), required=True)
@click.option("--with-basis", is_flag=True, help="Attach a lattice basis (lambda, mu) to every curve.")
@_format_option("json")
def enumerate_command(with_basis: bool, **kwargs):
    """Every curve of degree <= t with its class, degree and kind."""
    config = _build_config("enumerate", **kwargs)
    result = get_census_service().enumerate(config.query, config.t, with_basis=with_basis, threads=config.threads)
    if config.output_format == OutputFormat.CSV:
        payload = _curves_csv(result)
    else:
        payload = result.model_dump_json(indent=2, exclude_none=True, by_alias=True)
    _emit(payload, config.out)


@cli.command("count")
@common_options
@click.option("--max-degree", "t", type=click.IntRange(min=0), required=True)
@_format_option("text")
def count_command(**kwargs):
    """N(t), the number of curves of degree <= t."""
    config = _build_config("count", **kwargs)
    n = get_census_service().count(config.query, config.t, threads=config.threads)
    if config.output_format == OutputFormat.JSON:
        payload = json.dumps(
            {"params": config.query.model_dump(mode="json"), "t": config.t, "count": n}, indent=2
        )
    else:
        payload = str(n)
    _emit(payload, config.out)


@cli.command("sweep")
@common_options
@click.option("--t-min", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--t-max", type=click.IntRange(min=0), required=True)
@_format_option("csv")
def sweep_command(**kwargs):
    """Table of t, N(t), ordinary and extra-ordinary counts and the upper bound."""
    config = _build_config("sweep", **kwargs)
    rows = get_census_service().sweep(config.query, config.t_min, config.t_max, threads=config.threads)
    if config.output_format == OutputFormat.JSON:
        payload = json.dumps([row.model_dump() for row in rows], indent=2)
    else:
        payload = sweep_csv(rows)
    _emit(payload, config.out)


@cli.command("bound")
@common_options
@click.option("--max-degree", "t", type=click.IntRange(min=0), required=True)
@_format_option("json")
def bound_command(**kwargs):
    """The upper bound for N(t) with its constants."""
    config = _build_config("bound", **kwargs)
    report = get_census_service().bound(config.query, config.t)
    _emit(report.model_dump_json(indent=2), config.out)


@cli.command("verify")
@common_options
@click.option("--max-degree", "t", type=click.IntRange(min=0), required=True)
@click.option("--box", type=click.IntRange(min=1), default=None, help="Oracle box radius B.")
@_format_option("json")
def verify_command(**kwargs):
    """Compare the census with the brute-force lattice oracle."""
    config = _build_config("verify", **kwargs)
    report = get_census_service().verify(config.query, config.t, box=config.box, threads=config.threads)
    _emit(report.model_dump_json(indent=2), config.out)
    if not report.passed:
        raise VerificationFailed(
            f"oracle disagrees with the census: {len(report.missing_from_census)} missing, "
            f"{len(report.invalid_oracle_classes)} invalid, {len(report.round_trip_failures)} round trip failures"
        )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and translate the outcome into an exit code."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="ec-census", standalone_mode=False)
    except VerificationFailed as e:
        click.echo(f"Verification failed: {e}", err=True)
        return 2
    except (CensusError, ValidationError) as e:
        click.echo(f"Error: {e}", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(run())
