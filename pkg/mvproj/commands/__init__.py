"""
Global command registry
"""
import argparse

from mvproj.commands import independence, k_sample, power, selftest, two_sample

COMMANDS = [two_sample, k_sample, independence, power, selftest]


def register(subparsers: argparse._SubParsersAction) -> None:
    """Adds every command to the CLI; each sets `handler` on its namespace."""
    for command in COMMANDS:
        command.register(subparsers)
        subparsers.choices[command.NAME].set_defaults(handler=command.handle)
