# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import argparse
import math
from dataclasses import dataclass, field

from soca.config import DEFAULT_ETA
from soca.exceptions import GridSyntaxError
from soca.model import MixedSourceSpec, load_mixed_spec, validate_mixed
from soca.utils.grids import parse_grid


@dataclass(frozen=True)
class Command:
    help: str
    handler: object
    arguments: tuple = field(default_factory=tuple)
    writes_table: bool = False


def argument(*flags, **options):
    return flags, options


class BaseCommands:
    # Metadata about this command family.
    message = ""
    commands = {}

    @classmethod
    def get(cls):
        return list(cls.commands)


# Argument types: argparse turns ArgumentTypeError into exit code 2.
def probability(text):
    value = _number(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {text}")
    return value


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def positive_float(text):
    value = _number(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def finite_float(text):
    return _number(text)


def _number(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return value


def float_grid(text):
    try:
        return parse_grid(text, float)
    except GridSyntaxError as error:
        raise argparse.ArgumentTypeError(str(error))


def int_grid(text):
    try:
        values = parse_grid(text, int)
    except (GridSyntaxError, ValueError) as error:
        raise argparse.ArgumentTypeError(str(error))
    if any(value < 1 for value in values):
        raise argparse.ArgumentTypeError(f"block lengths must be positive, got {text}")
    return values


def eigenvalues(text):
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated eigenvalues, got {text}")


def memoryless_source(probs):
    """Validated single-component source built from an eigenvalue flag."""

    spec = MixedSourceSpec.memoryless(probs)
    validate_mixed(spec)
    return spec


SOURCE = argument("source", help="JSON source description")
EPS = argument("--eps", type=probability, required=True, help="error threshold in (0, 1)")
BLOCK_LENGTH = argument("--n", type=positive_int, required=True, help="block length")
ETA = argument("--eta", type=positive_float, default=DEFAULT_ETA, help="entropy equality tolerance in bits")
N_GRID = argument("--n-grid", type=int_grid, default=None,
                  help="block lengths, start:stop:step or a comma list (default 64,128,...,4096)")
OUTPUT = argument("-o", "--output", default=None, help="write the CSV table to this file")


def load_source(args):
    return load_mixed_spec(args.source)
