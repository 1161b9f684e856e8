# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

from soca.core.basic import (
    BLOCK_LENGTH,
    BaseCommands,
    Command,
    argument,
    eigenvalues,
    finite_float,
    memoryless_source,
    positive_int,
)
from soca.universal import hayashi_inclusion_check, universal_dims
from soca.utils.output import write_scalars

RATE_A = argument("--a", type=finite_float, required=True, help="first order rate in bits")
RATE_B = argument("--b", type=finite_float, required=True, help="second order rate")


def universal_dim(args, out):
    dims = universal_dims(args.n, args.d, args.a, args.b)
    write_scalars([
        ("log2_xi", dims.log2_xi),
        ("xi", dims.xi_exact),
        ("log2_upsilon_bound", dims.log2_upsilon_bound),
        ("boundary_types", dims.boundary_types),
    ], out)
    return 0


def inclusion(args, out):
    spectrum = memoryless_source(args.p).spectra[0]
    result = hayashi_inclusion_check(spectrum, args.n, args.a, args.b)
    pairs = [("holds", result.holds)]
    if result.counterexample is not None:
        pairs.append(("counterexample", ",".join(str(letter) for letter in result.counterexample)))
    write_scalars(pairs, out)
    return 0


class UniversalCommands(BaseCommands):
    message = "Universal type code"
    commands = {
        "universal-dim": Command("dimension of the universal code space", universal_dim, (
            BLOCK_LENGTH,
            argument("--d", type=positive_int, required=True, help="alphabet size"),
            RATE_A, RATE_B,
        )),
        "inclusion": Command("brute-force check that likely sequences fall in kept types", inclusion, (
            argument("--p", type=eigenvalues, required=True, help="eigenvalues, comma separated"),
            BLOCK_LENGTH, RATE_A, RATE_B,
        )),
    }
