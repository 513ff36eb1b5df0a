import math

import numpy as np
import pandas as pd
import pytest

from cf_stats.distributions import (
    Bn1Distribution,
    CdfSource,
    bn1_cdf,
    bn1_cdf_table,
    bn1_limit_pieces,
    emit_proba_dat,
    format_proba_lines,
    gauss_kuzmin_pmf,
    gcd_law,
    zeta2,
    zeta3,
)
from cf_stats.file_funcs import HISTOGRAM_COLUMNS, write_histogram_csv
from cf_stats.monte_carlo import (
    SAMPLE_COLUMNS,
    QuotientHistogram,
    empirical_bn1,
    empirical_cdf,
    empirical_quotients,
    sample_bn1,
)
from cf_stats.sampling import make_rng, spawn_seeds, split_counts, uniform_int
from ostrowski.errors import DomainError

GK_ONE = 0.415037


@pytest.mark.parametrize("k, expected", [(1, 0.415037), (2, 0.169925)])
def test_gauss_kuzmin_pmf(k, expected):
    assert gauss_kuzmin_pmf(k) == pytest.approx(expected, abs=1e-6)


def test_gauss_kuzmin_partial_sums():
    # the sum telescopes to 1 - log2(1 + 1/(K+1))
    partial = sum(gauss_kuzmin_pmf(k) for k in range(1, 1001))
    assert partial == pytest.approx(1 - math.log2(1 + 1 / 1001), abs=1e-9)
    assert sum(gauss_kuzmin_pmf(k) for k in range(1, 2001)) >= 0.999


def test_gauss_kuzmin_rejects_zero():
    with pytest.raises(DomainError):
        gauss_kuzmin_pmf(0)


def test_zeta_constants():
    assert float(zeta2()) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert float(zeta3()) == pytest.approx(1.2020569031595942, rel=1e-15)


def test_gcd_law():
    assert gcd_law(1) == pytest.approx(6 / math.pi ** 2)
    assert gcd_law(2) == pytest.approx(gcd_law(1) / 4)
    with pytest.raises(DomainError):
        gcd_law(0)


def test_bn1_cdf_anchor():
    assert 0.9245 <= bn1_cdf(3) <= 0.9250


def test_bn1_cdf_at_zero():
    assert bn1_cdf(0) == pytest.approx(float(zeta3() / zeta2()), abs=1e-12)
    assert bn1_cdf(0) == pytest.approx(0.730763, abs=1e-6)


def test_bn1_cdf_limit():
    assert bn1_cdf(10 ** 4) > 0.9999
    with pytest.raises(DomainError):
        bn1_cdf(-1)


@pytest.mark.parametrize("k", [0, 1, 3, 10, 49])
def test_bn1_limit_pieces_add_up(k):
    inside, outside = bn1_limit_pieces(k)
    assert inside + outside == pytest.approx(bn1_cdf(k), abs=1e-12)
    assert inside == pytest.approx(sum(gcd_law(i) for i in range(1, k + 2)), abs=1e-12)


def test_bn1_cdf_table():
    dist = bn1_cdf_table(49)
    assert dist.kmax == 49
    assert dist.source is CdfSource.CLOSED_FORM
    assert len(dist.cdf) == 50
    assert dist.at(0) == pytest.approx(0.7308, abs=1e-4)
    assert all(lo < hi for lo, hi in zip(dist.cdf, dist.cdf[1:]))
    assert all(0.70 <= p < 1.0 for p in dist.cdf)
    for k in (0, 3, 17, 49):
        assert dist.at(k) == pytest.approx(bn1_cdf(k), abs=1e-12)


def test_bn1_distribution_validation():
    with pytest.raises(DomainError):
        Bn1Distribution(kmax=1, cdf=(0.5,), source=CdfSource.CLOSED_FORM)
    with pytest.raises(DomainError):
        Bn1Distribution(kmax=1, cdf=(0.6, 0.5), source=CdfSource.EMPIRICAL)
    with pytest.raises(DomainError):
        Bn1Distribution(kmax=0, cdf=(1.5,), source=CdfSource.EMPIRICAL)


def test_emit_proba_dat(tmp_path):
    path = tmp_path / "plots" / "proba.dat"
    assert emit_proba_dat(49, str(path)) == str(path)
    lines = path.read_text(encoding="ascii").splitlines()
    assert len(lines) == 50
    k, value = lines[3].split()
    assert k == "3"
    assert 0.9245 <= float(value) <= 0.9250


def test_emit_proba_dat_single_line(tmp_path):
    path = tmp_path / "proba.dat"
    emit_proba_dat(0, str(path))
    assert path.read_text(encoding="ascii") == "0 0.730763\n"
    assert format_proba_lines(bn1_cdf_table(0)) == ["0 0.730763"]


def test_spawn_seeds_and_split_counts():
    assert len(spawn_seeds(42, 4)) == 4
    assert split_counts(10, 3) == [4, 3, 3]
    assert sum(split_counts(100_001, 8)) == 100_001


@pytest.mark.parametrize("low, high", [(1, 1), (0, 9), (1, 10 ** 6), (1 << 255, (1 << 256) - 1), (0, (1 << 63) + 5)])
def test_uniform_int_range(low, high):
    rng = make_rng(spawn_seeds(7, 1)[0])
    values = [uniform_int(rng, low, high) for _ in range(500)]
    assert all(low <= v <= high for v in values)


def test_uniform_int_deterministic():
    draws = []
    for _ in range(2):
        rng = make_rng(spawn_seeds(3, 1)[0])
        draws.append([uniform_int(rng, 0, 1 << 300) for _ in range(20)])
    assert draws[0] == draws[1]


def test_uniform_int_small_range_is_unbiased():
    rng = make_rng(spawn_seeds(1, 1)[0])
    counts = np.bincount([uniform_int(rng, 0, 2) for _ in range(30_000)], minlength=3)
    assert all(abs(c / 30_000 - 1 / 3) < 0.015 for c in counts)


def test_uniform_int_empty_range():
    rng = make_rng(spawn_seeds(1, 1)[0])
    with pytest.raises(ValueError):
        uniform_int(rng, 5, 4)


def test_quotient_histogram_merge():
    left = QuotientHistogram(max_bucket=4)
    left.add([1, 1, 2, 9])
    right = QuotientHistogram(max_bucket=4)
    right.add([1, 3, 4, 100])
    merged = left.merge(right)

    both = QuotientHistogram(max_bucket=4)
    both.add([1, 1, 2, 9, 1, 3, 4, 100])
    assert merged.counts.tolist() == both.counts.tolist() == [0, 3, 1, 1, 1]
    assert merged.tail == 2
    assert merged.total == 8
    assert merged.pmf(1) == pytest.approx(3 / 8)
    assert merged.tail_frequency == pytest.approx(2 / 8)
    assert merged.mean == pytest.approx(121 / 8)
    assert merged.geometric_mean == pytest.approx(math.exp(math.log(2 * 9 * 3 * 4 * 100) / 8))
    with pytest.raises(DomainError):
        left.merge(QuotientHistogram(max_bucket=8))


def test_quotient_histogram_frame(tmp_path):
    hist = QuotientHistogram(max_bucket=3)
    hist.add([1, 2, 2, 7])
    df = hist.to_frame()
    assert df["k"].tolist() == [1, 2, 3, ">3"]
    assert df["count"].tolist() == [1, 2, 0, 1]
    assert df["frequency"].sum() == pytest.approx(1.0)

    path = tmp_path / "hist.csv"
    write_histogram_csv(hist, str(path))
    written = pd.read_csv(path)
    assert list(written.columns) == HISTOGRAM_COLUMNS
    assert len(written) == 4


def test_empty_histogram():
    hist = QuotientHistogram()
    assert hist.total == 0
    assert hist.pmf(1) == 0.0
    assert hist.geometric_mean == 0.0
    with pytest.raises(DomainError):
        hist.pmf(0)


def test_gauss_kuzmin_agreement():
    hist = empirical_quotients(bits=256, samples=1000, seed=42)
    assert abs(hist.pmf(1) - GK_ONE) <= 0.02
    assert 2.60 <= hist.geometric_mean <= 2.77


def test_empirical_quotients_deterministic():
    first = empirical_quotients(bits=64, samples=200, seed=9)
    second = empirical_quotients(bits=64, samples=200, seed=9)
    assert first.counts.tolist() == second.counts.tolist()
    assert first.tail == second.tail
    assert first.total == second.total


def test_empirical_quotients_workers_deterministic():
    first = empirical_quotients(bits=64, samples=200, seed=9, workers=2)
    second = empirical_quotients(bits=64, samples=200, seed=9, workers=2)
    assert first.counts.tolist() == second.counts.tolist()
    assert first.total == second.total


def test_empirical_quotients_validation():
    with pytest.raises(DomainError):
        empirical_quotients(bits=4, samples=10, seed=1)
    with pytest.raises(DomainError):
        empirical_quotients(bits=64, samples=0, seed=1)
    with pytest.raises(DomainError):
        empirical_quotients(bits=64, samples=10, seed=1, workers=0)


def test_sample_bn1_frame():
    df = sample_bn1(N=1000, samples=500, seed=3)
    assert list(df.columns) == SAMPLE_COLUMNS
    assert len(df) == 500
    assert ((df["a"] >= 1) & (df["a"] <= 1000)).all()
    assert ((df["b"] >= 1) & (df["b"] < df["d"])).all()
    assert (df["q_n"] * df["g"] == df["d"]).all()
    assert (df["overflow"] == (df["b"] - 1) // df["q_n"]).all()
    assert (df["appendix_digit"] == df["b"] // df["q_n"]).all()
    assert (df["a"] % df["d"] != 0).all()


@pytest.fixture(scope="module")
def bn1_frame():
    return sample_bn1(N=10 ** 4, samples=60_000, seed=5)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_bn1_digit_bounded_when_gcd_small(bn1_frame, k):
    small = bn1_frame[bn1_frame["g"] <= k + 1]
    assert len(small) > 0
    assert (small["appendix_digit"] <= k).all()


@pytest.mark.parametrize("k, i", [(0, 2), (0, 3), (1, 3)])
def test_bn1_conditional_on_large_gcd(bn1_frame, k, i):
    subset = bn1_frame[bn1_frame["g"] == i]
    assert len(subset) >= 1000
    assert abs((subset["appendix_digit"] <= k).mean() - (k + 1) / i) <= 0.03


def test_sample_bn1_validation():
    with pytest.raises(DomainError):
        sample_bn1(N=1, samples=10, seed=1)
    with pytest.raises(DomainError):
        sample_bn1(N=100, samples=0, seed=1)


def test_empirical_cdf():
    assert empirical_cdf([0, 0, 1, 5], 2) == (0.5, 0.75, 0.75)
    assert empirical_cdf([7], 3) == (0.0, 0.0, 0.0, 0.0)


def test_empirical_bn1_single_sample_is_a_step():
    dist = empirical_bn1(N=10 ** 6, samples=1, seed=42, kmax=10)
    assert dist.source is CdfSource.EMPIRICAL
    assert set(dist.cdf) <= {0.0, 1.0}
    assert dist.sample_meta.samples == 1


def test_empirical_bn1_matches_closed_form():
    dist = empirical_bn1(N=10 ** 6, samples=10 ** 5, seed=42, kmax=10)
    for k in (0, 1, 2, 3, 5, 10):
        assert abs(dist.at(k) - bn1_cdf(k)) <= 0.01, k


def test_empirical_bn1_deterministic():
    first = empirical_bn1(N=10 ** 6, samples=5000, seed=42, kmax=49)
    second = empirical_bn1(N=10 ** 6, samples=5000, seed=42, kmax=49)
    assert first.cdf == second.cdf
    assert first.sample_meta == second.sample_meta
