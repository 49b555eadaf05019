import functools
from dataclasses import replace
from pathlib import Path

import click
from pydantic import ValidationError

from src.encoding import Codebook, build_codebook
from src.errors import (
    CapacityExceededError,
    CodebookGenerationError,
    ConfigurationError,
    InstanceValidationError,
    OracleGuardError,
    ScriptError,
    ScriptParseError,
)
from src.graph_model import dfs_renumber, validate
from src.instance_io import decision_json, decision_text, load_instance, oracle_json, oracle_text
from src.oracle import bruteforce
from src.rpp_pipeline import PipelineConfig, solve
from src.settings import DEFAULT_CAP, DEFAULT_MODE, DEFAULT_SEED, MODES, logger
from src.tube import AnnealMode
from src.tube_script import ScriptEnv, TubeProgram, execute, parse_program, print_program

EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _guarded(command):
    @functools.wraps(command)
    def inner(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CapacityExceededError as err:
            click.echo(err.format(kwargs.get("script", "<script>")), err=True)
            raise SystemExit(EXIT_CAPACITY)
        except ScriptParseError as err:
            click.echo(str(err), err=True)
            raise SystemExit(EXIT_USAGE)
        except ScriptError as err:
            click.echo(err.format(kwargs.get("script", "<script>")), err=True)
            raise SystemExit(EXIT_USAGE)
        except (InstanceValidationError, ConfigurationError, OracleGuardError, CodebookGenerationError) as err:
            click.echo(f"error: {err}", err=True)
            raise SystemExit(EXIT_USAGE)
        except ValidationError as err:
            click.echo(f"error: invalid instance file\n{err}", err=True)
            raise SystemExit(EXIT_USAGE)
        except OSError as err:
            click.echo(f"error: {err}", err=True)
            raise SystemExit(EXIT_USAGE)
    return inner


seed_option = click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=DEFAULT_SEED, show_default=True,
                           help="Seed for codeword generation.")
mode_option = click.option("--mode", type=click.Choice(MODES), default=DEFAULT_MODE, show_default=True,
                           help="Annealing semantics.")
cap_option = click.option("--cap", type=click.IntRange(min=1), default=DEFAULT_CAP, show_default=True,
                          help="Maximum distinct strands per tube.")
format_option = click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json",
                             show_default=True)
instance_argument = click.argument("instance", type=click.Path(exists=True, dir_okay=False))


def write_trace(decision, trace: str) -> None:
    trace_path = Path(trace)
    if decision.trace is None:
        # decided before any tube work: an empty script still parses and replays
        trace_path.write_text(print_program(TubeProgram()))
        click.echo(f"warning: no tube operations ran; {trace_path} is an empty script", err=True)
        return
    codebook_path = trace_path.with_name(trace_path.name + ".codebook")
    codebook_path.write_text(decision.codebook.dump() if decision.codebook is not None else "")
    program = replace(decision.trace, codebook=codebook_path.name)
    trace_path.write_text(print_program(program))
    logger.info(f"Trace written to {trace_path} ({len(program)} statements)")


@click.group()
def cli():
    """Tube-model simulator deciding Rural Postman instances."""


@cli.command(name="solve")
@instance_argument
@seed_option
@mode_option
@cap_option
@click.option("--witness", is_flag=True, help="Decode a satisfying circuit.")
@format_option
@click.option("--trace", type=click.Path(dir_okay=False), default=None, help="Write the executed tube script here.")
@_guarded
def solve_command(instance, seed, mode, cap, witness, output_format, trace):
    logger.info(f"solve {instance} seed={seed} mode={mode} cap={cap}")
    config = PipelineConfig(mode=AnnealMode(mode), seed=seed, cap=cap, trace=trace is not None, witness=witness)
    decision = solve(load_instance(instance), config)
    if trace is not None:
        write_trace(decision, trace)
    click.echo(decision_json(decision) if output_format == "json" else decision_text(decision))


@cli.command(name="oracle")
@instance_argument
@format_option
@_guarded
def oracle_command(instance, output_format):
    result = bruteforce(validate(load_instance(instance)))
    click.echo(oracle_json(result) if output_format == "json" else oracle_text(result))


@cli.command(name="encode")
@instance_argument
@seed_option
@_guarded
def encode_command(instance, seed):
    renumbered, _ = dfs_renumber(validate(load_instance(instance)))
    click.echo(build_codebook(renumbered, seed).dump(), nl=False)


@cli.command(name="emit-script")
@instance_argument
@seed_option
@mode_option
@cap_option
@click.option("--trace", type=click.Path(dir_okay=False), required=True, help="Script file to write.")
@_guarded
def emit_script_command(instance, seed, mode, cap, trace):
    config = PipelineConfig(mode=AnnealMode(mode), seed=seed, cap=cap, trace=True)
    decision = solve(load_instance(instance), config)
    if decision.trace is None:
        raise click.UsageError("instance is decided without any tube operation; nothing to emit")
    write_trace(decision, trace)
    click.echo(f"wrote {trace} ({len(decision.trace)} statements, answer {decision.answer.value})")


@cli.command(name="run-script")
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@mode_option
@cap_option
@_guarded
def run_script_command(script, mode, cap):
    path = Path(script)
    program = parse_program(path.read_text(), filename=str(path))
    codebook = None
    if program.codebook is not None:
        codebook = Codebook.from_dump((path.parent / program.codebook).read_text())
    env = execute(program, ScriptEnv(codebook=codebook, mode=AnnealMode(mode), cap=cap))
    for line in env.detect_lines():
        click.echo(line)


def main():
    cli()


if __name__ == "__main__":
    main()
