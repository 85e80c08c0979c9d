"""Adaptive-precision interval sign decisions.

Inequalities that mix incommensurable logarithms are decided by evaluating
the difference in mpmath interval arithmetic, doubling the working
precision until the interval excludes zero.  The starting precision comes
from the COLOURED_NERETIN_PRECISION environment variable (bits, default
128); an inequality that stays undecided at the precision cap is reported
as undecided, never as true or false.
"""

from __future__ import annotations

import os

from mpmath import iv

MAX_BITS = 1 << 14


def default_precision():
    try:
        bits = int(os.environ.get("COLOURED_NERETIN_PRECISION", "128"))
    except ValueError:
        bits = 128
    return max(16, bits)


def decide_sign(expression, start_bits=None, max_bits=MAX_BITS):
    """Sign of expression() evaluated in interval arithmetic.

    ``expression`` is called with no arguments and must build its value from
    the ``mpmath.iv`` context.  Returns (sign, interval, bits) where sign is
    +1, -1 or None (undecided at max_bits) and bits is the precision that
    settled the question.
    """
    bits = start_bits if start_bits is not None else default_precision()
    value = None
    while bits <= max_bits:
        saved = iv.prec
        try:
            iv.prec = bits
            value = expression()
        finally:
            iv.prec = saved
        if value.a > 0:
            return 1, value, bits
        if value.b < 0:
            return -1, value, bits
        bits *= 2
    return None, value, bits


def interval_width(value):
    return float(value.b - value.a)
