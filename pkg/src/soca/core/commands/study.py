# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

from soca.core.basic import (
    EPS,
    ETA,
    N_GRID,
    OUTPUT,
    SOURCE,
    BaseCommands,
    Command,
    argument,
    eigenvalues,
    finite_float,
    float_grid,
    load_source,
    memoryless_source,
    positive_float,
    probability,
)
from soca.experiments import (
    DEFAULT_N_GRID,
    berry_esseen_study,
    convergence_study,
    dominance_study,
    figure1_curve,
    first_order_divergence_check,
)
from soca.utils.output import write_study


def _n_grid(args):
    return args.n_grid or list(DEFAULT_N_GRID)


def converge(args, out):
    write_study(convergence_study(load_source(args), args.eps, _n_grid(args), args.eta), out)
    return 0


def diverge(args, out):
    write_study(first_order_divergence_check(load_source(args), args.eps, args.wrong_a, _n_grid(args)), out)
    return 0


def berry_esseen(args, out):
    spectrum = memoryless_source(args.p).spectra[0]
    write_study(berry_esseen_study(spectrum, args.l_grid, _n_grid(args)), out)
    return 0


def dominance(args, out):
    spectrum1 = memoryless_source(args.p1).spectra[0]
    spectrum2 = memoryless_source(args.p2).spectra[0]
    write_study(dominance_study(spectrum1, spectrum2, args.c, _n_grid(args)), out)
    return 0


def figure1(args, out):
    write_study(figure1_curve(args.sigma1, args.sigma2, args.t, args.eps_grid, args.eta), out)
    return 0


class StudyCommands(BaseCommands):
    message = "Reproducible studies (CSV)"
    commands = {
        "converge": Command("oracle length against the predicted second order rate", converge, (
            SOURCE, EPS, N_GRID, ETA, OUTPUT,
        ), writes_table=True),
        "diverge": Command("oracle length normalized at a wrong first order rate", diverge, (
            SOURCE, EPS, N_GRID, OUTPUT,
            argument("--wrong-a", type=finite_float, required=True, help="rate used for normalization"),
        ), writes_table=True),
        "berry-esseen": Command("exact spectral tail against its Gaussian limit", berry_esseen, (
            argument("--p", type=eigenvalues, required=True, help="eigenvalues, comma separated"),
            argument("--l-grid", type=float_grid, default=[-2.0, -1.0, 0.0, 1.0, 2.0], help="L grid"),
            N_GRID, OUTPUT,
        ), writes_table=True),
        "dominance": Command("tails of two sources at each other's entropy", dominance, (
            argument("--p1", type=eigenvalues, required=True, help="eigenvalues of the higher-entropy source"),
            argument("--p2", type=eigenvalues, required=True, help="eigenvalues of the lower-entropy source"),
            argument("--c", type=finite_float, default=0.0, help="sqrt(n) shift constant"),
            N_GRID, OUTPUT,
        ), writes_table=True),
        "figure1": Command("equal-entropy rate L over eps with its bounds", figure1, (
            argument("--sigma1", type=positive_float, required=True, help="sigma of source 1"),
            argument("--sigma2", type=positive_float, required=True, help="sigma of source 2"),
            argument("--t", type=probability, required=True, help="weight of source 1"),
            argument("--eps-grid", type=float_grid, required=True, help="eps grid, start:stop:step"),
            ETA, OUTPUT,
        ), writes_table=True),
    }
