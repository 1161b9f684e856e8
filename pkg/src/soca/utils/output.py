# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import csv
import math


def format_scalar(value):
    """Shortest round-trip text for scalars; big integers stay exact."""

    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value + 0.0)
    return str(value)


def format_cell(value):
    """17 significant digits for floats in CSV files."""

    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value + 0.0, ".17g")
    return str(value)


def write_scalars(pairs, stream):
    for name, value in pairs:
        stream.write(f"{name}={format_scalar(value)}\n")


def write_study(study, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(study.columns)
    for row in study.rows:
        writer.writerow([format_cell(value) for value in row])
