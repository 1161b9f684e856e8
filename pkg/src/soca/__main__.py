# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""
SOCA : Second-Order Coding Asymptotics
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

SOCA computes second order rates for fixed-length visible source coding of
mixed sources and checks them against an exact finite-blocklength oracle.

:copyright: (c) 2025 BlockGuard SF
:license: Apache-2.0, see LICENSE for more details.
"""

import sys

from soca.core import run

if __name__ == '__main__':
    sys.exit(run(sys.argv[1:]))
