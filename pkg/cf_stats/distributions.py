"""Closed forms: the Gauss-Kuzmin law of partial quotients and the limiting
distribution of the overflow digit b_{n+1} when a, d are uniform in [1, N]
and b is uniform in [1, d).

    P(b_{n+1} <= k) -> zeta(2)^-1 [ sum_{i=1}^{k+1} (i - (k+1)) / i^3 + (k+1) zeta(3) ]
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from mpmath import mp, mpf

from cf_stats.file_funcs import write_text_lines
from ostrowski.errors import DomainError

# Apery's constant to 30 significant digits.
ZETA3_DIGITS = "1.20205690315959428539973816151"
WORKING_DPS = 40


class CdfSource(str, Enum):
    CLOSED_FORM = "closed_form"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class SampleMeta:
    N: int
    samples: int
    seed: int
    workers: int = 1


@dataclass(frozen=True)
class Bn1Distribution:
    kmax: int
    cdf: Tuple[float, ...]
    source: CdfSource
    sample_meta: Optional[SampleMeta] = None

    def __post_init__(self):
        if len(self.cdf) != self.kmax + 1:
            raise DomainError(f"cdf has {len(self.cdf)} entries, expected {self.kmax + 1}")
        if any(not 0.0 <= p <= 1.0 for p in self.cdf):
            raise DomainError("cdf entries must lie in [0, 1]")
        if any(lo > hi for lo, hi in zip(self.cdf, self.cdf[1:])):
            raise DomainError("cdf must be nondecreasing")

    def at(self, k: int) -> float:
        return self.cdf[k]


def zeta2():
    with mp.workdps(WORKING_DPS):
        return mp.pi ** 2 / 6


def zeta3():
    with mp.workdps(WORKING_DPS):
        return mpf(ZETA3_DIGITS)


def gauss_kuzmin_pmf(k: int) -> float:
    """P(k_i = k) = -log2(1 - 1/(k+1)^2)."""
    if k < 1:
        raise DomainError(f"partial quotients are >= 1, got {k}")
    return -math.log1p(-1.0 / (k + 1) ** 2) / math.log(2)


def gcd_law(i: int) -> float:
    """Limiting P(gcd(a, d) = i) = zeta(2)^-1 / i^2."""
    if i < 1:
        raise DomainError(f"gcd values are >= 1, got {i}")
    with mp.workdps(WORKING_DPS):
        return float(1 / (zeta2() * i * i))


def bn1_cdf(k: int) -> float:
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    with mp.workdps(WORKING_DPS):
        m = k + 1
        head = mp.fsum(mpf(i - m) / mpf(i) ** 3 for i in range(1, m + 1))
        return float((head + m * zeta3()) / zeta2())


def bn1_limit_pieces(k: int) -> Tuple[float, float]:
    """The two terms of the total-probability split: sum_{i<=k+1} P(gcd = i)
    and sum_{i>k+1} ((k+1)/i) P(gcd = i). They add up to bn1_cdf(k)."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    with mp.workdps(WORKING_DPS):
        m = k + 1
        s2 = mp.fsum(1 / mpf(i) ** 2 for i in range(1, m + 1))
        s3 = mp.fsum(1 / mpf(i) ** 3 for i in range(1, m + 1))
        z2 = zeta2()
        return float(s2 / z2), float(m * (zeta3() - s3) / z2)


def bn1_cdf_table(kmax: int) -> Bn1Distribution:
    """bn1_cdf(0..kmax) in one pass with running partial sums."""
    if kmax < 0:
        raise DomainError(f"kmax must be >= 0, got {kmax}")
    values: List[float] = []
    with mp.workdps(WORKING_DPS):
        z2 = zeta2()
        z3 = zeta3()
        s2 = mpf(0)
        s3 = mpf(0)
        for k in range(kmax + 1):
            i = mpf(k + 1)
            s2 += 1 / i ** 2
            s3 += 1 / i ** 3
            values.append(float((s2 + (k + 1) * (z3 - s3)) / z2))
    return Bn1Distribution(kmax=kmax, cdf=tuple(values), source=CdfSource.CLOSED_FORM)


def format_proba_lines(dist: Bn1Distribution) -> List[str]:
    return [f"{k} {p:.6f}" for k, p in enumerate(dist.cdf)]


def emit_proba_dat(kmax: int, path: str) -> str:
    """Write "k cdf(k)" for k = 0..kmax, one pair per line, ready for plotting."""
    write_text_lines(format_proba_lines(bn1_cdf_table(kmax)), path)
    return path
