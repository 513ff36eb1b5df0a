"""Quotients by repeated subtraction.

Partial quotients are small with high probability (Gauss-Kuzmin), so a
subtraction loop usually beats a full division. A quotient still running
after ``threshold`` subtractions falls back to :func:`divmod`.
"""
from __future__ import annotations

from functools import partial
from typing import Tuple

from ostrowski.cf_engine import CfContext, Divider, cf_expand

DEFAULT_THRESHOLD = 16


def subtractive_divmod(x: int, y: int, threshold: int = DEFAULT_THRESHOLD) -> Tuple[int, int]:
    quotient = 0
    while x >= y:
        if quotient == threshold:
            extra, x = divmod(x, y)
            return quotient + extra, x
        x -= y
        quotient += 1
    return quotient, x


def make_divider(threshold: int = DEFAULT_THRESHOLD) -> Divider:
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    return partial(subtractive_divmod, threshold=threshold)


def cf_expand_subtractive(a: int, d: int, threshold: int = DEFAULT_THRESHOLD) -> CfContext:
    return cf_expand(a, d, divide=make_divider(threshold))
