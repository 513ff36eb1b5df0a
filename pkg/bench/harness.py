"""Timing harness: continued-fraction modular operations against the schoolbook baseline.

Every bit size gets its own input set drawn from SeedSequence([seed, bits]),
so a row only depends on (seed, bits, reps). Each operation runs one warmup
batch, then ``batches`` timed batches over the same inputs; the reported time
is the median batch.
"""
from __future__ import annotations

import logging
import math
import statistics
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from numpy.random import SeedSequence

from bench.subtractive import DEFAULT_THRESHOLD, make_divider
from cf_stats.file_funcs import write_output_csv
from cf_stats.monte_carlo import QuotientHistogram
from cf_stats.sampling import make_rng, uniform_int
from ostrowski.cf_engine import Divider
from ostrowski.errors import DomainError
from ostrowski.modular_ops import (
    ModContext,
    ctx_modmul,
    ito_t2_trace,
    make_context,
    naive_modmul,
    theorem2_trace,
)

REPORT_COLUMNS = ["op", "bits", "reps", "total_ns", "ns_per_op", "checksum"]
CHECKSUM_MASK = (1 << 64) - 1

Triple = Tuple[int, int, int]


@dataclass
class BenchConfig:
    bits: List[int] = field(default_factory=lambda: [64, 128, 256, 512, 1024])
    reps: int = 1000
    seed: int = 1
    batches: int = 5
    subtractive: bool = False
    subtraction_threshold: int = DEFAULT_THRESHOLD


@dataclass(frozen=True)
class BenchRow:
    op: str
    bits: int
    reps: int
    total_ns: int
    ns_per_op: float
    checksum: int


@dataclass
class BenchReport:
    rows: List[BenchRow] = field(default_factory=list)
    subtractive: bool = False
    # geometric-mean partial quotient of each bit size's inputs
    quotient_geo_mean: Dict[int, float] = field(default_factory=dict)

    def row(self, op: str, bits: int) -> BenchRow:
        for row in self.rows:
            if row.op == op and row.bits == bits:
                return row
        raise KeyError((op, bits))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(r) for r in self.rows], columns=REPORT_COLUMNS)


def fold_checksum(values: Sequence[int]) -> int:
    checksum = 0
    for value in values:
        checksum = (checksum * 31 + value) & CHECKSUM_MASK
    return checksum


def generate_inputs(bits: int, reps: int, seed: int) -> List[Triple]:
    """(a, b, d) with d a bits-bit modulus, a coprime to d, b in [0, d)."""
    rng = make_rng(SeedSequence([seed, bits]))
    low, high = 1 << (bits - 1), (1 << bits) - 1
    triples: List[Triple] = []
    while len(triples) < reps:
        d = uniform_int(rng, low, high)
        a = uniform_int(rng, 1, d - 1)
        if math.gcd(a, d) == 1:
            triples.append((a, uniform_int(rng, 0, d - 1), d))
    return triples


def _time_batches(func: Callable[[], List[int]], batches: int) -> Tuple[int, List[int]]:
    outputs = func()  # warmup
    elapsed: List[int] = []
    for _ in range(batches):
        started = time.perf_counter_ns()
        outputs = func()
        elapsed.append(time.perf_counter_ns() - started)
    return int(statistics.median(elapsed)), outputs


def _operations(
    triples: List[Triple],
    contexts: List[ModContext],
    divide: Divider,
) -> List[Tuple[str, Callable[[], List[int]]]]:
    def one_shot_modmul() -> List[int]:
        return [ctx_modmul(make_context(a, d, divide), b, divide) for a, b, d in triples]

    return [
        ("naive_modmul", lambda: [naive_modmul(a, b, d) for a, b, d in triples]),
        ("modmul", one_shot_modmul),
        ("ctx_build", lambda: [make_context(a, d, divide).ctx.q_n for a, _, d in triples]),
        ("ctx_modmul", lambda: [ctx_modmul(mc, b, divide) for mc, (_, b, _) in zip(contexts, triples)]),
        ("moddiv_theorem2", lambda: [
            theorem2_trace(make_context(a, d, divide), b, divide).result for a, b, d in triples
        ]),
        ("moddiv_ito_t2", lambda: [
            ito_t2_trace(make_context(a, d, divide), b, divide).result for a, b, d in triples
        ]),
    ]


def run_bench(config: BenchConfig, logger: Optional[logging.Logger] = None) -> BenchReport:
    if config.reps < 1:
        raise DomainError(f"reps must be >= 1, got {config.reps}")
    if config.batches < 1:
        raise DomainError(f"batches must be >= 1, got {config.batches}")
    if any(bits < 16 for bits in config.bits):
        raise DomainError(f"bit sizes must be >= 16, got {config.bits}")
    log = logger or logging.getLogger(__name__)
    divide: Divider = make_divider(config.subtraction_threshold) if config.subtractive else divmod

    report = BenchReport(subtractive=config.subtractive)
    for bits in config.bits:
        triples = generate_inputs(bits, config.reps, config.seed)
        contexts = [make_context(a, d, divide) for a, _, d in triples]

        quotients = QuotientHistogram()
        for mc in contexts:
            quotients.add(mc.ctx.k)
        report.quotient_geo_mean[bits] = quotients.geometric_mean
        if config.subtractive:
            log.info(
                "bits=%s quotient geometric mean=%.4f arithmetic mean=%.4f",
                bits, quotients.geometric_mean, quotients.mean,
            )

        for op, func in _operations(triples, contexts, divide):
            total_ns, outputs = _time_batches(func, config.batches)
            row = BenchRow(
                op=op,
                bits=bits,
                reps=config.reps,
                total_ns=total_ns,
                ns_per_op=total_ns / config.reps,
                checksum=fold_checksum(outputs),
            )
            report.rows.append(row)
            log.info("bench %s bits=%s ns/op=%.1f checksum=%s", op, bits, row.ns_per_op, row.checksum)
    return report


def run_bench_subtractive(config: BenchConfig, logger: Optional[logging.Logger] = None) -> BenchReport:
    return run_bench(replace(config, subtractive=True), logger=logger)


def write_report_csv(report: BenchReport, output_path: str) -> None:
    write_output_csv(report.to_frame(), output_path)


def format_table(report: BenchReport) -> str:
    df = report.to_frame()
    df["ns_per_op"] = df["ns_per_op"].map(lambda v: f"{v:.1f}")
    return df.to_string(index=False)
