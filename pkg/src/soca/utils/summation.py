# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import math


class CompensatedSum:
    """Running Neumaier sum for prefix masses.

    Use :func:`math.fsum` when only the total is needed.
    """

    def __init__(self):
        self.total = 0.0
        self.compensation = 0.0

    def add(self, value):
        total = self.total + value
        if abs(self.total) >= abs(value):
            self.compensation += (self.total - total) + value
        else:
            self.compensation += (value - total) + self.total
        self.total = total
        return self.value

    @property
    def value(self):
        return self.total + self.compensation


def log2_int(value):
    """log2 of a non-negative Python integer of any size."""

    if value <= 0:
        return -math.inf
    return math.log2(value)
