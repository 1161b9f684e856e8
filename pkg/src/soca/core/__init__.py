# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import io
import logging
import sys

from soca.core.manager import Categories, build_parser
from soca.exceptions import (
    CapExceededError,
    DomainError,
    EntropyOrderError,
    GridSyntaxError,
    RateEquationError,
    SourceSpecError,
)

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_RATE = 3
EXIT_CAP = 4

_INPUT_ERRORS = (SourceSpecError, DomainError, EntropyOrderError, GridSyntaxError, OSError)


def configure_logging(debug=False, log_file=None):
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(filename=log_file, mode='w'))

    logging.basicConfig(
        level=logging.INFO if not debug else logging.DEBUG,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def run(argv=None):
    """Run one SOCA command and return its exit code.

    Results are buffered so that stdout stays empty when a command fails.
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_INVALID_INPUT

    configure_logging(args.debug, args.log_file)
    command = Categories.find(args.command)
    logging.debug(f"Arguments: {vars(args)}")

    buffer = io.StringIO()
    try:
        code = command.handler(args, buffer)
    except _INPUT_ERRORS as error:
        logging.error(f"{args.command}: {error}")
        return EXIT_INVALID_INPUT
    except RateEquationError as error:
        logging.error(f"{args.command}: {error}")
        return EXIT_RATE
    except CapExceededError as error:
        logging.error(f"{args.command}: {error}")
        return EXIT_CAP

    if code != EXIT_OK:
        return code

    output = getattr(args, "output", None)
    if command.writes_table and output:
        with open(output, "w", encoding="utf-8", newline="") as file:
            file.write(buffer.getvalue())
        logging.info(f"Wrote {args.command} table to {output}")
    else:
        sys.stdout.write(buffer.getvalue())
    return code
