"""CLI module - subcommands, verification suite and output rendering."""

from kacbaker.cli.commands import COMMANDS, CommandResult, RunConfig
from kacbaker.cli.output import render_csv, render_json, write_atomic
from kacbaker.cli.verify import verification_suite

__all__ = [
    "COMMANDS",
    "CommandResult",
    "RunConfig",
    "render_csv",
    "render_json",
    "write_atomic",
    "verification_suite",
]
