# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

from argparse import ArgumentParser, RawDescriptionHelpFormatter

from soca import __version__
from soca.core.basic import BaseCommands
from soca.core.commands.rate import RateCommands
from soca.core.commands.source import SourceCommands
from soca.core.commands.study import StudyCommands
from soca.core.commands.universal import UniversalCommands


class Categories(BaseCommands):
    message = "What do you want to compute with SOCA?"
    commands = {
        "Source": SourceCommands,
        "Rates": RateCommands,
        "Universal code": UniversalCommands,
        "Studies": StudyCommands,
    }

    @classmethod
    def find(cls, name):
        for family in cls.commands.values():
            if name in family.commands:
                return family.commands[name]
        return None


def build_parser():
    parser = ArgumentParser(
        prog="soca",
        formatter_class=RawDescriptionHelpFormatter,
        description=f"SOCA: Second-Order Coding Asymptotics (Version {__version__})",
        epilog="exit codes: 0 success, 2 invalid input, 3 rate not finite, 4 cap exceeded",
    )
    parser.add_argument("-d", "--debug",
                        action="store_true",
                        default=False,
                        help="display extra debugging information")
    parser.add_argument("--log-file",
                        default=None,
                        help="also write the log to this file")
    parser.add_argument("--version", action="version", version=f"SOCA {__version__}")

    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    for category, family in Categories.commands.items():
        for name in family.get():
            command = family.commands[name]
            subparser = subparsers.add_parser(name, help=command.help, description=f"{category}: {command.help}")
            for flags, options in command.arguments:
                subparser.add_argument(*flags, **options)
    return parser
