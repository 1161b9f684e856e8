# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import logging

from soca.core.basic import (
    EPS,
    ETA,
    OUTPUT,
    SOURCE,
    BaseCommands,
    Command,
    argument,
    finite_float,
    load_source,
    positive_float,
    probability,
)
from soca.experiments import Study
from soca.model import SourceStats
from soca.rates import RateQuery, first_order_rate, rate_profile, solve_second_order, two_source_rate
from soca.utils.output import format_scalar, write_scalars, write_study

# Exit code for a rate equation without a finite solution.
RATE_NOT_FINITE = 3


def _emit_rate(result, out):
    if not result.is_finite:
        logging.error(f"No finite second order rate at a={result.a}: b={format_scalar(result.b_star)} ({result.case_tag})")
        return RATE_NOT_FINITE

    write_scalars([("a", result.a), ("b", result.b_star), ("case", str(result.case_tag))], out)
    return 0


def rate(args, out):
    result = solve_second_order(load_source(args), RateQuery(args.a, args.eps), args.eta)
    return _emit_rate(result, out)


def rate_two(args, out):
    stats1 = SourceStats(args.s1, args.sigma1 ** 2, args.sigma1)
    stats2 = SourceStats(args.s2, args.sigma2 ** 2, args.sigma2)
    return _emit_rate(two_source_rate(stats1, stats2, args.t, args.eps, args.eta), out)


def first_order(args, out):
    write_scalars([("a", first_order_rate(load_source(args), args.eps, args.eta))], out)
    return 0


def profile(args, out):
    study = Study("profile", ("a", "b_star", "case"))
    for a, result in rate_profile(load_source(args), args.eps, args.eta):
        study.add(a, result.b_star, str(result.case_tag))
    write_study(study, out)
    return 0


class RateCommands(BaseCommands):
    message = "Second order rates"
    commands = {
        "rate": Command("solve the second order rate equation at rate a", rate, (
            SOURCE, EPS, ETA,
            argument("--a", type=finite_float, required=True, help="first order rate in bits"),
        )),
        "rate-two": Command("second order rate of a two-source mixture, case picked automatically", rate_two, (
            argument("--s1", type=finite_float, required=True, help="entropy of source 1"),
            argument("--sigma1", type=positive_float, required=True, help="sigma of source 1"),
            argument("--s2", type=finite_float, required=True, help="entropy of source 2"),
            argument("--sigma2", type=positive_float, required=True, help="sigma of source 2"),
            argument("--t", type=probability, required=True, help="weight of source 1"),
            EPS, ETA,
        )),
        "first-order": Command("first order rate at error eps", first_order, (SOURCE, EPS, ETA)),
        "profile": Command("second order rate at every component entropy", profile, (
            SOURCE, EPS, ETA, OUTPUT,
        ), writes_table=True),
    }
