# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

from soca.core.basic import (
    BLOCK_LENGTH,
    EPS,
    OUTPUT,
    SOURCE,
    BaseCommands,
    Command,
    argument,
    finite_float,
    float_grid,
    load_source,
)
from soca.experiments import converse_study
from soca.model import source_stats
from soca.spectrum import d_s_eps, min_compression_length, spectral_tail
from soca.utils.output import write_scalars, write_study


def stats(args, out):
    spec = load_source(args)
    pairs = [("dim", spec.dim)]
    for index, (weight, spectrum) in enumerate(spec.components):
        values = source_stats(spectrum)
        pairs += [
            (f"weight_{index}", weight),
            (f"S_{index}", values.entropy_S),
            (f"V_{index}", values.varentropy_V),
            (f"sigma_{index}", values.sigma),
        ]
    write_scalars(pairs, out)
    return 0


def oracle(args, out):
    length = min_compression_length(load_source(args), args.n, args.eps)
    write_scalars([("log2_M", length.log2_M), ("M", length.M)], out)
    return 0


def tail(args, out):
    write_scalars([("tail", spectral_tail(load_source(args), args.n, args.gamma))], out)
    return 0


def dseps(args, out):
    write_scalars([("d_s_eps", d_s_eps(load_source(args), args.n, args.eps))], out)
    return 0


def fidelity(args, out):
    write_study(converse_study(load_source(args), args.n, args.eps, args.gamma_grid), out)
    return 0


class SourceCommands(BaseCommands):
    message = "Exact finite-blocklength quantities of a source"
    commands = {
        "stats": Command("entropy, varentropy and sigma of every component", stats, (SOURCE,)),
        "oracle": Command("minimum compression length at error eps", oracle, (SOURCE, BLOCK_LENGTH, EPS)),
        "tail": Command("spectral tail mass at or below 2^gamma", tail, (
            SOURCE, BLOCK_LENGTH,
            argument("--gamma", type=finite_float, required=True, help="log2 threshold"),
        )),
        "dseps": Command("information spectrum entropy D_s^eps", dseps, (SOURCE, BLOCK_LENGTH, EPS)),
        "fidelity": Command("optimal fidelity against the converse bound", fidelity, (
            SOURCE, BLOCK_LENGTH, EPS,
            argument("--gamma-grid", type=float_grid, required=True, help="gamma grid, start:stop:step"),
            OUTPUT,
        ), writes_table=True),
    }
