# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import math

import numpy as np

from soca.exceptions import GridSyntaxError

# Grid points are rounded to this many decimals to drop accumulation noise.
_GRID_DECIMALS = 12


def parse_grid(text, kind=float):
    """Parse ``start:stop:step`` (endpoints included within half a step) or ``v1,v2,...``."""

    text = text.strip()
    if not text:
        raise GridSyntaxError("Empty grid.")

    try:
        if ":" not in text:
            return [kind(item) for item in text.split(",") if item.strip()]

        parts = text.split(":")
        if len(parts) != 3:
            raise GridSyntaxError(f"Grid '{text}' must look like start:stop:step.")
        start, stop, step = (float(part) for part in parts)
    except ValueError as error:
        raise GridSyntaxError(f"Grid '{text}' is not numeric: {error}") from error

    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)) or step <= 0:
        raise GridSyntaxError(f"Grid '{text}' needs finite bounds and a positive step.")
    if stop < start:
        raise GridSyntaxError(f"Grid '{text}' stops before it starts.")

    count = int(math.floor((stop - start) / step + 0.5)) + 1
    points = np.round(start + step * np.arange(count), _GRID_DECIMALS)
    if kind is int:
        return [int(round(point)) for point in points]
    return [float(point) for point in points]


def geometric_grid(start, stop, factor=2):
    points = []
    value = start
    while value <= stop:
        points.append(value)
        value *= factor
    return points
