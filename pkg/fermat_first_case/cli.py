"""Command-line surface: every criterion and survey, with Human/Json/Csv payloads.

Exit codes: 0 when the command ran (the verdict is in the payload, whatever it
is), 2 for usage and argument errors, 3 for capability errors (overflow, caps,
unsupported fields), 4 for I/O errors.
"""

import logging
import sys
from dataclasses import dataclass

import click

from fermat_first_case import criteria, survey, wendt
from fermat_first_case.arith_core import is_prime
from fermat_first_case.errors import ArgumentError, CapabilityError
from fermat_first_case.output import Emitter, OutputFormat
from fermat_first_case.quad_field import describe, make_field

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPABILITY = 3
EXIT_IO = 4

# lets "-1" through as a positional value instead of an unknown option
SIGNED_ARGS = {"ignore_unknown_options": True}


@dataclass
class Settings:
    fmt: OutputFormat
    n_max: int | None
    quiet: bool

    def emitter(self) -> Emitter:
        return Emitter(self.fmt, sys.stdout)


class IntPair(click.ParamType):
    """Two comma-separated integers, e.g. "3,7"."""

    name = "int,int"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            first, second = (int(part) for part in value.split(","))
        except ValueError:
            self.fail(f"{value!r} is not two comma-separated integers", param, ctx)
        return first, second


pass_settings = click.make_pass_decorator(Settings)


@click.group()
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="human", show_default=True)
@click.option("--nmax", type=click.IntRange(min=2), default=None, help="Cap on n for Wendt searches (default 2^20).")
@click.option("--quiet", is_flag=True, help="Only warnings on stderr, no progress bars.")
@click.pass_context
def cli(ctx, fmt, nmax, quiet):
    """Local-obstruction criteria for the first case of Fermat's Last Theorem."""
    if quiet:
        logging.getLogger().setLevel(logging.WARNING)
    ctx.obj = Settings(fmt=OutputFormat(fmt), n_max=nmax, quiet=quiet)


@cli.command("wendt", context_settings=SIGNED_ARGS)
@click.argument("n", type=click.IntRange(min=1))
@click.option("--mod", "modulus", type=int, default=None, help="Prime q = 1 mod n; report W_n mod q.")
@pass_settings
def wendt_command(settings, n, modulus):
    """Exact W_n, or W_n mod a prime with the divisibility verdict."""
    if modulus is not None and not (2 <= modulus and is_prime(modulus)):
        raise click.BadParameter(f"{modulus} is not prime", param_hint="--mod")
    settings.emitter().emit(wendt.evaluate(n, modulus))


@cli.command("class-number", context_settings=SIGNED_ARGS)
@click.argument("d", type=int)
@pass_settings
def class_number_command(settings, d):
    """Class number of Q(sqrt(d)) for squarefree d < 0."""
    settings.emitter().emit(describe(make_field(d)))


@cli.command("theorem1")
@click.option("--d", "d", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--n", "n", type=int, default=None, help="Check this n instead of searching.")
@pass_settings
def theorem1_command(settings, d, p, n):
    """Wendt-type criterion over Q(sqrt(d)): check one n, or search the smallest."""
    K = make_field(d)
    if n is None:
        payload = criteria.theorem1_search_report(K, p, settings.n_max)
    else:
        payload = criteria.theorem1_check(K, p, n)
    settings.emitter().emit(payload)


@cli.command("germain")
@click.option("--d", "d", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@pass_settings
def germain_command(settings, d, p):
    """Sophie Germain analogue: n = 2, q = 2p + 1."""
    settings.emitter().emit(criteria.sophie_germain_check(make_field(d), p))


@cli.command("corollary2")
@click.option("--p", "p", type=int, required=True)
@pass_settings
def corollary2_command(settings, p):
    """Over Q(i): 4p + 1, 8p + 1 or 16p + 1."""
    settings.emitter().emit(criteria.corollary2_check(p))


@cli.command("condition1")
@click.option("--p", "p", type=int, required=True)
@click.option("--witnesses", is_flag=True, help="List every violating a.")
@pass_settings
def condition1_command(settings, p, witnesses):
    """Condition (1): 1 + a^p != (1 + a)^p mod p^2 for a = 1 .. (p-3)/2."""
    if witnesses:
        payload = criteria.condition1_check(p)
    else:
        payload = criteria.Condition1Verdict(p=p, holds=criteria.condition1_holds(p))
    settings.emitter().emit(payload)


@cli.command("theorem2")
@click.option("--p", "p", type=int, required=True)
@click.option("--quadratic", type=int, default=None, help="Quadratic field Q(sqrt(d)).")
@click.option("--pure", type=IntPair(), default=None, help="Pure field Q(d^(1/n)) as d,n.")
@click.option("--totally-ramified", "totally_ramified", type=click.IntRange(min=1), default=None, help="Degree of a field totally ramified at p.")
@click.option("--asserted", type=IntPair(), default=None, help="Ramification index and residue degree as e,f.")
@pass_settings
def theorem2_command(settings, p, quadratic, pure, totally_ramified, asserted):
    """Criterion modulo p^2 over a described field."""
    given = [name for name, value in (("--quadratic", quadratic), ("--pure", pure), ("--totally-ramified", totally_ramified), ("--asserted", asserted)) if value is not None]
    if len(given) != 1:
        raise click.UsageError("give exactly one of --quadratic, --pure, --totally-ramified, --asserted")
    try:
        if quadratic is not None:
            hypothesis = criteria.QuadraticHypothesis(d=quadratic)
        elif pure is not None:
            hypothesis = criteria.PureFieldHypothesis(d=pure[0], n=pure[1])
        elif totally_ramified is not None:
            hypothesis = criteria.TotallyRamifiedHypothesis(degree=totally_ramified)
        else:
            hypothesis = criteria.AssertedHypothesis(e=asserted[0], f=asserted[1])
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint=given[0]) from exc
    settings.emitter().emit(criteria.theorem2_check(hypothesis, p))


@cli.group("survey")
def survey_group():
    """Batch reproductions: smallest-n table, Q(i) scan, condition (1) census."""


@survey_group.command("table")
@click.option("--pmax", type=click.IntRange(min=3), required=True, help="Primes p < pmax.")
@click.option("--d", "d", type=int, default=-1, show_default=True)
@pass_settings
def table_command(settings, pmax, d):
    emitter = settings.emitter()
    survey.qi_smallest_n_table(pmax, settings.n_max, d, on_row=emitter.emit)


@survey_group.command("qi")
@click.option("--pmax", type=click.IntRange(min=2), required=True, help="Primes p <= pmax.")
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@pass_settings
def qi_command(settings, pmax, checkpoint, jobs):
    emitter = settings.emitter()
    result = survey.qi_scan(pmax, checkpoint, jobs=jobs, n_max=settings.n_max, on_record=emitter.emit, progress=not settings.quiet)
    emitter.emit(result)


@survey_group.command("census")
@click.option("--bound", type=click.IntRange(min=5), required=True, help="Primes p < bound.")
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--method", type=click.Choice(survey.CENSUS_METHODS), default="sieve", show_default=True)
@pass_settings
def census_command(settings, bound, checkpoint, jobs, method):
    emitter = settings.emitter()
    totals = survey.condition1_census(bound, checkpoint, jobs=jobs, method=method, on_record=emitter.emit, progress=not settings.quiet)
    emitter.emit(totals)


@survey_group.command("pure")
@click.option("--d", "d", type=int, default=3, show_default=True)
@click.option("--p", "p", type=int, default=5, show_default=True)
@click.option("--n-limit", "n_limit", type=click.IntRange(min=3), default=50, show_default=True)
@pass_settings
def pure_command(settings, d, p, n_limit):
    """Criterion modulo p^2 over Q(d^(1/n)) for odd n not divisible by p."""
    emitter = settings.emitter()
    for row in criteria.pure_field_family(d, p, n_limit):
        emitter.emit(row)


def run(argv: list[str] | None = None) -> int:
    """Runs the CLI on `argv` and returns the exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name="fermat-first-case", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except ArgumentError as exc:
        logger.error(f"run() failed - {exc}")
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except CapabilityError as exc:
        logger.error(f"run() failed - {exc}")
        click.echo(f"error: {exc}", err=True)
        return EXIT_CAPABILITY
    except OSError as exc:
        logger.error(f"run() failed - {exc}")
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))
