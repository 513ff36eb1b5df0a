"""Digit strings over the numeration scales of one CfContext.

A digit string always has n + 1 entries b_1..b_{n+1}; b_{n+1} is the overflow
digit. The same digits can be evaluated against any basis (see
:func:`reinterpret`), which is how the modular operations are built.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Tuple

from ostrowski.cf_engine import CfContext, Divider
from ostrowski.errors import BoundViolation, ContextMismatchError, DomainError, NotInvertibleError


class Scale(str, Enum):
    Q_SCALE = "q"
    THETA_SCALE = "theta"
    ETA_SCALE = "eta"


class Basis(str, Enum):
    Q = "q"
    SIGNED_Q = "signed_q"
    THETA = "theta"
    ETA = "eta"


@dataclass(frozen=True)
class DigitString:
    digits: Tuple[int, ...]
    scale: Scale
    ctx_fingerprint: Tuple[int, int]

    @property
    def overflow(self) -> int:
        return self.digits[-1]

    def __len__(self) -> int:
        return len(self.digits)


def _bind(ds: DigitString, ctx: CfContext) -> None:
    if ds.ctx_fingerprint != ctx.fingerprint:
        raise ContextMismatchError(ctx.fingerprint, ds.ctx_fingerprint)
    if len(ds.digits) != ctx.n + 1:
        raise DomainError(f"expected {ctx.n + 1} digits for {ctx.a}/{ctx.d}, got {len(ds.digits)}")


def _require_coprime(ctx: CfContext) -> None:
    if ctx.g != 1:
        raise NotInvertibleError(ctx.a, ctx.d, ctx.g)


def _require_residue(b: int, ctx: CfContext) -> None:
    if not 0 <= b < ctx.d:
        raise DomainError(f"b must satisfy 0 <= b < {ctx.d}, got {b}")


def ostrowski_encode(N: int, ctx: CfContext, divide: Divider = divmod) -> DigitString:
    """Write N = 1 + sum b_i q_{i-1}, greedy from the top index down."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    digits = [0] * (ctx.n + 1)
    tmp = N - 1
    for i in range(ctx.n + 1, 0, -1):
        digits[i - 1], tmp = divide(tmp, ctx.q[i])
    return DigitString(tuple(digits), Scale.Q_SCALE, ctx.fingerprint)


def theta_encode(b: int, ctx: CfContext, divide: Divider = divmod) -> DigitString:
    """Write b = sum b_i theta'_{i-1}, most significant digit first.

    This is the integer form of Ito's T1 map. Because
    theta'_{i-2} = k_i theta'_{i-1} + theta'_i, a digit equal to k_i always
    leaves a remainder below theta'_i, so the next digit is 0.
    """
    _require_residue(b, ctx)
    _require_coprime(ctx)
    digits = [0] * (ctx.n + 1)
    rem = b
    for i in range(1, ctx.n + 1):
        digits[i - 1], rem = divide(rem, ctx.theta_p[i])
    if rem:
        raise BoundViolation(f"theta-scale remainder {rem} left for {b} over {ctx.a}/{ctx.d}")
    return DigitString(tuple(digits), Scale.THETA_SCALE, ctx.fingerprint)


def eta_encode(b: int, ctx: CfContext, divide: Divider = divmod) -> DigitString:
    """Write b = sum c_i eta'_{i-1} with Ito's T2 map in integer form:
    c_i = ceil(m_{i-1} / theta'_{i-1}), m_i = theta'_{i-1} c_i - m_{i-1}, m_0 = b.
    """
    _require_residue(b, ctx)
    _require_coprime(ctx)
    digits = [0] * (ctx.n + 1)
    m = b
    for i in range(1, ctx.n + 1):
        t = ctx.theta_p[i]
        c, r = divide(m, t)
        if r:
            c += 1
        digits[i - 1] = c
        m = t * c - m
    if m:
        raise BoundViolation(f"T2 iteration left {m} for {b} over {ctx.a}/{ctx.d}")
    return DigitString(tuple(digits), Scale.ETA_SCALE, ctx.fingerprint)


def _basis_value(ctx: CfContext, basis: Basis, j: int) -> int:
    # j is the basis index i - 1, ranging over 0..n
    if basis is Basis.Q:
        return ctx.q[j + 1]
    if basis is Basis.SIGNED_Q:
        return -ctx.q[j + 1] if j % 2 else ctx.q[j + 1]
    if basis is Basis.THETA:
        return ctx.theta_p[j + 1]
    return -ctx.theta_p[j + 1] if j % 2 else ctx.theta_p[j + 1]


def reinterpret(ds: DigitString, ctx: CfContext, basis: Basis) -> int:
    """sum_{i=1}^{n+1} b_i * basis_{i-1}, whatever scale produced the digits."""
    _bind(ds, ctx)
    return sum(b * _basis_value(ctx, basis, j) for j, b in enumerate(ds.digits) if b)


def decode(ds: DigitString, ctx: CfContext) -> int:
    if ds.scale is Scale.Q_SCALE:
        return 1 + reinterpret(ds, ctx, Basis.Q)
    if ds.scale is Scale.THETA_SCALE:
        return reinterpret(ds, ctx, Basis.THETA)
    return reinterpret(ds, ctx, Basis.ETA)


def validate_markovian(ds: DigitString, ctx: CfContext) -> bool:
    if ds.ctx_fingerprint != ctx.fingerprint:
        raise ContextMismatchError(ctx.fingerprint, ds.ctx_fingerprint)
    digits = ds.digits
    n = ctx.n
    if len(digits) != n + 1 or any(b < 0 for b in digits):
        return False

    if ds.scale is Scale.Q_SCALE:
        for i in range(1, n + 1):
            upper = ctx.k_at(i) - 1 if i == 1 else ctx.k_at(i)
            if digits[i - 1] > upper:
                return False
            if i < n and digits[i] == ctx.k_at(i + 1) and digits[i - 1] != 0:
                return False
        return True

    if ds.scale is Scale.THETA_SCALE:
        for i in range(1, n + 1):
            if digits[i - 1] > ctx.k_at(i):
                return False
            if digits[i - 1] == ctx.k_at(i) and digits[i] != 0:
                return False
        return digits[n] == 0

    # T2 digits carry no Markovian condition.
    return digits[n] == 0


def enumerate_markovian(ctx: CfContext) -> Iterator[DigitString]:
    """Every Q-scale Markovian string b_1..b_n (with b_{n+1} = 0)."""
    n = ctx.n
    digits: List[int] = [0] * (n + 1)

    def fill(i: int) -> Iterator[DigitString]:
        if i == 0:
            yield DigitString(tuple(digits), Scale.Q_SCALE, ctx.fingerprint)
            return
        if i < n and digits[i] == ctx.k_at(i + 1):
            choices = range(1)
        else:
            choices = range(ctx.k_at(i) if i == 1 else ctx.k_at(i) + 1)
        for value in choices:
            digits[i - 1] = value
            yield from fill(i - 1)
        digits[i - 1] = 0

    yield from fill(n)


def format_digits(ds: DigitString) -> str:
    return ",".join(str(b) for b in ds.digits)


def parse_digits(text: str, ctx: CfContext, scale: Scale) -> DigitString:
    try:
        digits = tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse digit string {text!r}") from exc
    ds = DigitString(digits, scale, ctx.fingerprint)
    _bind(ds, ctx)
    return ds
