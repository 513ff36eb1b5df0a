from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from numpy.random import SeedSequence

from cf_stats.distributions import Bn1Distribution, CdfSource, SampleMeta
from cf_stats.sampling import make_rng, spawn_seeds, split_counts, uniform_int
from ostrowski.cf_engine import cf_expand
from ostrowski.errors import DomainError
from ostrowski.number_systems import ostrowski_encode

SAMPLE_COLUMNS = ["a", "d", "b", "g", "q_n", "overflow", "appendix_digit"]
DEFAULT_MAX_BUCKET = 64


@dataclass
class QuotientHistogram:
    max_bucket: int = DEFAULT_MAX_BUCKET
    counts: Optional[np.ndarray] = None
    tail: int = 0
    tail_log_sum: float = 0.0
    total: int = 0
    quotient_sum: int = 0

    def __post_init__(self):
        if self.counts is None:
            # index k holds the count of quotient k; index 0 stays empty
            self.counts = np.zeros(self.max_bucket + 1, dtype=np.int64)

    def add(self, quotients: Iterable[int]) -> None:
        for k in quotients:
            if k <= self.max_bucket:
                self.counts[k] += 1
            else:
                self.tail += 1
                self.tail_log_sum += math.log(k)
            self.total += 1
            self.quotient_sum += k

    def merge(self, other: "QuotientHistogram") -> "QuotientHistogram":
        if other.max_bucket != self.max_bucket:
            raise DomainError("cannot merge histograms with different buckets")
        return QuotientHistogram(
            max_bucket=self.max_bucket,
            counts=self.counts + other.counts,
            tail=self.tail + other.tail,
            tail_log_sum=self.tail_log_sum + other.tail_log_sum,
            total=self.total + other.total,
            quotient_sum=self.quotient_sum + other.quotient_sum,
        )

    def pmf(self, k: int) -> float:
        if not 1 <= k <= self.max_bucket:
            raise DomainError(f"k must lie in 1..{self.max_bucket}, got {k}")
        return float(self.counts[k]) / self.total if self.total else 0.0

    @property
    def tail_frequency(self) -> float:
        return self.tail / self.total if self.total else 0.0

    @property
    def log_sum(self) -> float:
        ks = np.arange(1, self.max_bucket + 1)
        return float(np.dot(self.counts[1:], np.log(ks))) + self.tail_log_sum

    @property
    def geometric_mean(self) -> float:
        return math.exp(self.log_sum / self.total) if self.total else 0.0

    @property
    def mean(self) -> float:
        return self.quotient_sum / self.total if self.total else 0.0

    def to_frame(self) -> pd.DataFrame:
        rows = [(k, int(self.counts[k])) for k in range(1, self.max_bucket + 1)]
        rows.append((f">{self.max_bucket}", self.tail))
        df = pd.DataFrame(rows, columns=["k", "count"])
        df["frequency"] = df["count"] / self.total if self.total else 0.0
        return df


def _run_workers(func: Callable, tasks: Sequence, workers: int) -> List:
    if workers == 1:
        return [func(task) for task in tasks]
    with Pool(workers) as pool:
        return pool.map(func, tasks)


def _validate_workers(workers: int) -> None:
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")


def _bn1_worker(task: Tuple[int, int, SeedSequence]) -> Tuple[List[Tuple[int, ...]], int]:
    N, count, seed_seq = task
    rng = make_rng(seed_seq)
    rows: List[Tuple[int, ...]] = []
    resampled = 0
    while len(rows) < count:
        a = uniform_int(rng, 1, N)
        d = uniform_int(rng, 1, N)
        if a % d == 0:
            resampled += 1
            continue
        b = uniform_int(rng, 1, d - 1)
        ctx = cf_expand(a, d)
        overflow = ostrowski_encode(b, ctx).overflow
        rows.append((a, d, b, ctx.g, ctx.q_n, overflow, b // ctx.q_n))
    return rows, resampled


def sample_bn1(
    N: int,
    samples: int,
    seed: int,
    workers: int = 1,
    logger: Optional[logging.Logger] = None,
) -> pd.DataFrame:
    """One row per (a, d, b) drawn with a, d uniform in [1, N] and b uniform in [1, d).

    ``overflow`` is the encoded digit floor((b-1)/q_n); ``appendix_digit`` is
    floor(b/q_n), the statistic behind the event {b < (k+1) q_n}. Since
    b < d = g q_n, ``appendix_digit`` never exceeds g - 1.
    """
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    _validate_workers(workers)
    log = logger or logging.getLogger(__name__)

    started = time.perf_counter()
    tasks = [
        (N, count, seed_seq)
        for count, seed_seq in zip(split_counts(samples, workers), spawn_seeds(seed, workers))
    ]
    results = _run_workers(_bn1_worker, tasks, workers)
    rows = [row for worker_rows, _ in results for row in worker_rows]
    resampled = sum(r for _, r in results)
    log.info(
        "bn1 sampling N=%s samples=%s seed=%s workers=%s resampled=%s in %.2fs",
        N, samples, seed, workers, resampled, time.perf_counter() - started,
    )
    return pd.DataFrame(rows, columns=SAMPLE_COLUMNS)


def empirical_cdf(digits: Sequence[int], kmax: int) -> Tuple[float, ...]:
    values = np.fromiter((min(int(v), kmax + 1) for v in digits), dtype=np.int64)
    counts = np.bincount(values, minlength=kmax + 2)
    return tuple(float(c) / len(values) for c in np.cumsum(counts)[: kmax + 1])


def empirical_bn1(
    N: int,
    samples: int,
    seed: int,
    kmax: int = 49,
    workers: int = 1,
    logger: Optional[logging.Logger] = None,
) -> Bn1Distribution:
    if kmax < 0:
        raise DomainError(f"kmax must be >= 0, got {kmax}")
    frame = sample_bn1(N, samples, seed, workers=workers, logger=logger)
    return Bn1Distribution(
        kmax=kmax,
        cdf=empirical_cdf(frame["appendix_digit"].tolist(), kmax),
        source=CdfSource.EMPIRICAL,
        sample_meta=SampleMeta(N=N, samples=samples, seed=seed, workers=workers),
    )


def _quotient_worker(task: Tuple[int, int, int, SeedSequence]) -> Tuple[QuotientHistogram, int]:
    bits, count, max_bucket, seed_seq = task
    rng = make_rng(seed_seq)
    hist = QuotientHistogram(max_bucket=max_bucket)
    low, high = 1 << (bits - 1), (1 << bits) - 1
    drawn = 0
    resampled = 0
    while drawn < count:
        d = uniform_int(rng, low, high)
        a = uniform_int(rng, 1, d - 1)
        if math.gcd(a, d) != 1:
            resampled += 1
            continue
        hist.add(cf_expand(a, d).k)
        drawn += 1
    return hist, resampled


def empirical_quotients(
    bits: int,
    samples: int,
    seed: int,
    workers: int = 1,
    max_bucket: int = DEFAULT_MAX_BUCKET,
    logger: Optional[logging.Logger] = None,
) -> QuotientHistogram:
    """Partial quotients of random coprime a/d with d uniform in [2^(bits-1), 2^bits)."""
    if bits < 8:
        raise DomainError(f"bits must be >= 8, got {bits}")
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    _validate_workers(workers)
    log = logger or logging.getLogger(__name__)

    started = time.perf_counter()
    tasks = [
        (bits, count, max_bucket, seed_seq)
        for count, seed_seq in zip(split_counts(samples, workers), spawn_seeds(seed, workers))
    ]
    results = _run_workers(_quotient_worker, tasks, workers)
    hist = QuotientHistogram(max_bucket=max_bucket)
    for worker_hist, _ in results:
        hist = hist.merge(worker_hist)
    log.info(
        "quotient sampling bits=%s samples=%s seed=%s workers=%s quotients=%s resampled=%s geo_mean=%.4f in %.2fs",
        bits, samples, seed, workers, hist.total, sum(r for _, r in results),
        hist.geometric_mean, time.perf_counter() - started,
    )
    return hist
