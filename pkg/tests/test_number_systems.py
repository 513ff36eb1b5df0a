import itertools
import math
import os
import random

import pytest

from ostrowski.cf_engine import cf_expand
from ostrowski.errors import BoundViolation, ContextMismatchError, DomainError, NotInvertibleError
from ostrowski.number_systems import (
    Basis,
    DigitString,
    Scale,
    decode,
    enumerate_markovian,
    eta_encode,
    format_digits,
    ostrowski_encode,
    parse_digits,
    reinterpret,
    theta_encode,
    validate_markovian,
)

CTX_4_7 = cf_expand(4, 7)

# OSTROWSKI_FULL_BOUNDS=1 runs the round trips up to d = 500 (several minutes)
FULL_BOUNDS = os.getenv("OSTROWSKI_FULL_BOUNDS") == "1"
Q_ROUND_TRIP_MAX_D = 500 if FULL_BOUNDS else 100
THETA_ROUND_TRIP_MAX_D = 500 if FULL_BOUNDS else 120


def q_digits(*digits, ctx=CTX_4_7):
    return DigitString(tuple(digits), Scale.Q_SCALE, ctx.fingerprint)


@pytest.mark.parametrize(
    "N, digits",
    [(5, (0, 0, 2, 0)), (1, (0, 0, 0, 0)), (20, (0, 1, 2, 2))],
)
def test_ostrowski_encode(N, digits):
    ds = ostrowski_encode(N, CTX_4_7)
    assert ds.digits == digits
    assert ds.scale is Scale.Q_SCALE
    assert ds.ctx_fingerprint == (4, 7)
    assert len(ds) == CTX_4_7.n + 1


def test_overflow_digit():
    assert ostrowski_encode(20, CTX_4_7).overflow == 2
    assert ostrowski_encode(7, CTX_4_7).overflow == 0
    assert ostrowski_encode(8, CTX_4_7).overflow == 1


@pytest.mark.parametrize("N", [0, -5])
def test_ostrowski_encode_rejects_non_positive(N):
    with pytest.raises(DomainError):
        ostrowski_encode(N, CTX_4_7)


@pytest.mark.parametrize(
    "b, digits",
    [(6, (1, 0, 2, 0)), (0, (0, 0, 0, 0)), (3, (0, 1, 0, 0))],
)
def test_theta_encode(b, digits):
    ds = theta_encode(b, CTX_4_7)
    assert ds.digits == digits
    assert ds.scale is Scale.THETA_SCALE


def test_theta_encode_errors():
    with pytest.raises(DomainError):
        theta_encode(7, CTX_4_7)
    with pytest.raises(DomainError):
        theta_encode(-1, CTX_4_7)
    with pytest.raises(NotInvertibleError) as excinfo:
        theta_encode(1, cf_expand(6, 9))
    assert excinfo.value.g == 3


@pytest.mark.parametrize(
    "b, digits",
    [(3, (1, 1, 2, 0)), (6, (2, 1, 1, 0)), (0, (0, 0, 0, 0))],
)
def test_eta_encode(b, digits):
    ds = eta_encode(b, CTX_4_7)
    assert ds.digits == digits
    assert ds.scale is Scale.ETA_SCALE
    assert decode(ds, CTX_4_7) == b


@pytest.mark.parametrize(
    "ds, expected",
    [
        (q_digits(0, 0, 2, 0), 5),
        (q_digits(0, 0, 0, 0), 1),
        (DigitString((1, 0, 2, 0), Scale.THETA_SCALE, (4, 7)), 6),
    ],
)
def test_decode(ds, expected):
    assert decode(ds, CTX_4_7) == expected


def test_reinterpret_bases():
    ds = theta_encode(6, CTX_4_7)
    assert reinterpret(ds, CTX_4_7, Basis.THETA) == 6
    assert reinterpret(ds, CTX_4_7, Basis.SIGNED_Q) == 5
    assert reinterpret(ds, CTX_4_7, Basis.Q) == 5
    ds = ostrowski_encode(5, CTX_4_7)
    assert reinterpret(ds, CTX_4_7, Basis.Q) == 4
    assert reinterpret(ds, CTX_4_7, Basis.ETA) == 2


def test_context_mismatch():
    ds = ostrowski_encode(5, CTX_4_7)
    other = cf_expand(3, 7)
    with pytest.raises(ContextMismatchError):
        decode(ds, other)
    with pytest.raises(ContextMismatchError):
        validate_markovian(ds, other)


@pytest.mark.parametrize(
    "digits, expected",
    [((0, 0, 2, 0), True), ((1, 0, 0, 0), False), ((0, 1, 3, 0), False), ((0, 0, 3, 5), True)],
)
def test_validate_markovian_q_scale(digits, expected):
    assert validate_markovian(q_digits(*digits), CTX_4_7) is expected


def test_validate_markovian_shape():
    assert validate_markovian(q_digits(0, 0, 2), CTX_4_7) is False
    assert validate_markovian(q_digits(0, -1, 2, 0), CTX_4_7) is False


def test_validate_markovian_theta_scale():
    def theta(*digits):
        return DigitString(digits, Scale.THETA_SCALE, (4, 7))

    assert validate_markovian(theta(1, 0, 2, 0), CTX_4_7)
    assert not validate_markovian(theta(1, 1, 0, 0), CTX_4_7)
    assert not validate_markovian(theta(0, 0, 4, 0), CTX_4_7)
    assert not validate_markovian(theta(0, 0, 0, 1), CTX_4_7)


def test_q_scale_round_trip_exhaustive():
    for d in range(1, Q_ROUND_TRIP_MAX_D + 1):
        for a in range(d):
            ctx = cf_expand(a, d)
            for N in range(1, 2 * ctx.q_n):
                ds = ostrowski_encode(N, ctx)
                assert decode(ds, ctx) == N
                assert validate_markovian(ds, ctx)
                assert ds.overflow == (N - 1) // ctx.q_n


def test_q_scale_round_trip_random_256_bit():
    rng = random.Random(11)
    for _ in range(200):
        d = rng.getrandbits(256) | (1 << 255)
        ctx = cf_expand(rng.randrange(1, d), d)
        for N in (1, ctx.q_n, ctx.q_n + 1, rng.randrange(1, 2 * ctx.q_n)):
            ds = ostrowski_encode(N, ctx)
            assert decode(ds, ctx) == N
            assert validate_markovian(ds, ctx)


def test_theta_and_eta_round_trip_exhaustive():
    for d in range(2, THETA_ROUND_TRIP_MAX_D + 1):
        for a in range(1, d):
            if math.gcd(a, d) != 1:
                continue
            ctx = cf_expand(a, d)
            for b in range(d):
                ds = theta_encode(b, ctx)
                assert decode(ds, ctx) == b
                assert validate_markovian(ds, ctx)
                es = eta_encode(b, ctx)
                assert decode(es, ctx) == b
                assert validate_markovian(es, ctx)


def test_enumeration_matches_brute_force():
    for d in range(1, 31):
        for a in range(d):
            ctx = cf_expand(a, d)
            bounds = [range(ctx.k_at(i) + 1) for i in range(1, ctx.n + 1)]
            brute = set()
            for head in itertools.product(*bounds):
                ds = q_digits(*head, 0, ctx=ctx)
                if validate_markovian(ds, ctx):
                    brute.add(ds.digits)
            assert {ds.digits for ds in enumerate_markovian(ctx)} == brute


def check_unique_representations(ctx):
    values = [decode(ds, ctx) for ds in enumerate_markovian(ctx)]
    assert sorted(values) == list(range(1, ctx.q_n + 1))


def test_markovian_representations_unique_small():
    for d in range(1, 81):
        for a in range(d):
            check_unique_representations(cf_expand(a, d))


def test_markovian_representations_unique_random():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.randrange(1000, 2001)
        check_unique_representations(cf_expand(rng.randrange(1, d), d))


def test_encoders_report_leftover_remainder():
    def stuck(x, y):
        return 0, x

    with pytest.raises(BoundViolation):
        theta_encode(6, CTX_4_7, divide=stuck)
    with pytest.raises(ArithmeticError):
        eta_encode(6, CTX_4_7, divide=lambda x, y: (0, 0))


def test_format_and_parse_digits():
    ds = ostrowski_encode(20, CTX_4_7)
    text = format_digits(ds)
    assert text == "0,1,2,2"
    assert parse_digits(text, CTX_4_7, Scale.Q_SCALE) == ds
    assert parse_digits(" 1, 0, 2, 0", CTX_4_7, Scale.THETA_SCALE) == theta_encode(6, CTX_4_7)


@pytest.mark.parametrize("text", ["0,x,1,0", "", "0,0,1"])
def test_parse_digits_rejects_bad_input(text):
    with pytest.raises(DomainError):
        parse_digits(text, CTX_4_7, Scale.Q_SCALE)
