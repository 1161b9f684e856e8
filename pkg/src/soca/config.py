# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import logging
import os

# Entropy classification tolerance (bits).
DEFAULT_ETA = 1e-9

# Normalization tolerance on eigenvalues and weights.
NORMALIZATION_TOLERANCE = 1e-12

# Atoms of the n-fold spectrum closer than this (in log2) are one level.
ATOM_MERGE_TOLERANCE = 1e-12

# Cumulative masses within this distance of a target count as hitting it.
MASS_TIE_TOLERANCE = 1e-12

# Log-domain guard band for universal-code type sizes.
GUARD_BAND = 1e-9

# Information standard deviations at or below this are treated as zero.
SIGMA_TOLERANCE = 1e-12

# Above this threshold exponent the universal inclusion test switches to log2.
EXACT_THRESHOLD_LIMIT = 63

DEFAULT_TYPE_CAP = 5_000_000
BRUTE_FORCE_CAP = 1_000_000

TYPE_CAP_ENV = "SOCA_TYPE_CAP"


def type_cap():
    """Return the type-count cap, honouring ``SOCA_TYPE_CAP`` when it is set."""

    value = os.environ.get(TYPE_CAP_ENV)
    if not value:
        return DEFAULT_TYPE_CAP

    try:
        cap = int(value)
    except ValueError:
        logging.warning(f"Ignoring {TYPE_CAP_ENV}={value!r}: not an integer.")
        return DEFAULT_TYPE_CAP

    if cap < 1:
        logging.warning(f"Ignoring {TYPE_CAP_ENV}={value!r}: must be positive.")
        return DEFAULT_TYPE_CAP
    return cap
