from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from ostrowski.cf_engine import CfContext, Divider, cf_expand
from ostrowski.errors import BoundViolation, DomainError, ModulusError, NotInvertibleError
from ostrowski.number_systems import DigitString, eta_encode, ostrowski_encode, theta_encode

THEOREM2 = "theorem2"
ITO_T2 = "ito-t2"
METHODS = (THEOREM2, ITO_T2)


@dataclass(frozen=True)
class ModContext:
    """Everything needed to multiply or divide repeatedly by the same a modulo d.

    ``eta`` and ``signed_q`` are indexed by i - 1 for i = 1..n+1, i.e. they hold
    eta'_0..eta'_n and q_0, -q_1, q_2, ... so digit j pairs with entry j.
    """

    ctx: CfContext
    eta: Tuple[int, ...]
    signed_q: Tuple[int, ...]

    @property
    def invertible(self) -> bool:
        return self.ctx.g == 1


@dataclass(frozen=True)
class DivisionTrace:
    result: int
    raw: int
    digits: DigitString
    corrected: bool
    method: str


def _check_modulus(d: int, minimum: int = 1) -> None:
    if d < minimum:
        raise ModulusError(f"modulus must be >= {minimum}, got {d}")


def make_context(a: int, d: int, divide: Divider = divmod) -> ModContext:
    ctx = cf_expand(a, d, divide=divide)
    eta = ctx.eta_sequence()[1:]
    signed_q = tuple(-q if j % 2 else q for j, q in enumerate(ctx.q[1:]))
    return ModContext(ctx=ctx, eta=eta, signed_q=signed_q)


def ctx_modmul(
    mc: ModContext,
    b: int,
    divide: Divider = divmod,
    logger: Optional[logging.Logger] = None,
) -> int:
    """a * b mod d as a + sum b_i eta'_{i-1}, with b written in the q-scale."""
    ctx = mc.ctx
    if b < 0:
        raise DomainError(f"b must be >= 0, got {b}")
    if ctx.is_degenerate or b == 0:
        return 0

    ds = ostrowski_encode(b, ctx, divide=divide)
    value = ctx.a
    for digit, eta in zip(ds.digits, mc.eta):
        if digit:
            value += digit * eta

    if value == ctx.d:
        # b is a multiple of q_n and n is odd: the digits of q_n - 1 sum to d.
        log = logger or logging.getLogger(__name__)
        log.debug("Folded boundary value d for b=%s over %s/%s", b, ctx.a, ctx.d)
        return 0
    if not 0 <= value < ctx.d:
        raise BoundViolation(f"modmul sum {value} outside [0, {ctx.d}) for b={b} over {ctx.a}/{ctx.d}")
    return value


def modmul(a: int, b: int, d: int, logger: Optional[logging.Logger] = None) -> int:
    _check_modulus(d)
    if b < 0:
        raise DomainError(f"b must be >= 0, got {b}")
    if d == 1 or b == 0 or a % d == 0:
        return 0
    return ctx_modmul(make_context(a, d), b, logger=logger)


def _require_division(mc: ModContext, b: int) -> None:
    ctx = mc.ctx
    if ctx.g != 1:
        raise NotInvertibleError(ctx.a, ctx.d, ctx.g)
    if not 0 <= b < ctx.d:
        raise DomainError(f"b must satisfy 0 <= b < {ctx.d}, got {b}")


def theorem2_trace(
    mc: ModContext,
    b: int,
    divide: Divider = divmod,
    logger: Optional[logging.Logger] = None,
) -> DivisionTrace:
    """a^-1 * b mod d: b in the theta'-scale, digits evaluated on (-1)^{i-1} q_{i-1}.

    The raw value c lies in (-d, d); it is corrected by +d exactly when c < 0.
    """
    _require_division(mc, b)
    ctx = mc.ctx
    ds = theta_encode(b, ctx, divide=divide)
    raw = 0
    for digit, weight in zip(ds.digits, mc.signed_q):
        if digit:
            raw += digit * weight
    if not -ctx.d < raw < ctx.d:
        raise BoundViolation(f"theorem 2 sum {raw} outside (-{ctx.d}, {ctx.d}) for b={b} over {ctx.a}/{ctx.d}")

    corrected = raw < 0
    if corrected:
        log = logger or logging.getLogger(__name__)
        log.debug("Correction +d applied for b=%s over %s/%s (raw=%s)", b, ctx.a, ctx.d, raw)
    return DivisionTrace(
        result=raw + ctx.d if corrected else raw,
        raw=raw,
        digits=ds,
        corrected=corrected,
        method=THEOREM2,
    )


def ito_t2_trace(
    mc: ModContext,
    b: int,
    divide: Divider = divmod,
    logger: Optional[logging.Logger] = None,
) -> DivisionTrace:
    """a^-1 * b mod d: b in the eta'-scale via Ito's T2 map, digits evaluated on q_{i-1}.

    No proof bounds the raw sum; a value outside [0, d) is reduced and logged.
    """
    _require_division(mc, b)
    ctx = mc.ctx
    ds = eta_encode(b, ctx, divide=divide)
    raw = 0
    for digit, q in zip(ds.digits, ctx.q[1:]):
        if digit:
            raw += digit * q

    corrected = not 0 <= raw < ctx.d
    if corrected:
        log = logger or logging.getLogger(__name__)
        log.warning("Ito T2 raw sum %s outside [0, %s) for a=%s b=%s", raw, ctx.d, ctx.a, b)
    return DivisionTrace(
        result=raw % ctx.d if corrected else raw,
        raw=raw,
        digits=ds,
        corrected=corrected,
        method=ITO_T2,
    )


def ctx_moddiv(mc: ModContext, b: int, logger: Optional[logging.Logger] = None) -> int:
    return theorem2_trace(mc, b, logger=logger).result


def ctx_moddiv_ito_t2(mc: ModContext, b: int, logger: Optional[logging.Logger] = None) -> int:
    return ito_t2_trace(mc, b, logger=logger).result


def moddiv_trace(
    a: int,
    b: int,
    d: int,
    method: str = THEOREM2,
    logger: Optional[logging.Logger] = None,
) -> DivisionTrace:
    _check_modulus(d)
    if method not in METHODS:
        raise DomainError(f"unknown division method {method!r}")
    mc = make_context(a, d)
    if method == ITO_T2:
        return ito_t2_trace(mc, b, logger=logger)
    return theorem2_trace(mc, b, logger=logger)


def moddiv_theorem2(a: int, b: int, d: int, logger: Optional[logging.Logger] = None) -> int:
    return moddiv_trace(a, b, d, THEOREM2, logger=logger).result


def moddiv_ito_t2(a: int, b: int, d: int, logger: Optional[logging.Logger] = None) -> int:
    return moddiv_trace(a, b, d, ITO_T2, logger=logger).result


def modinv(a: int, d: int) -> int:
    """(-1)^{n-1} q_{n-1} reduced into [0, d), from the Bezout relation."""
    _check_modulus(d, minimum=2)
    ctx = cf_expand(a, d)
    if ctx.g != 1:
        raise NotInvertibleError(ctx.a, d, ctx.g)
    q = ctx.q_at(ctx.n - 1)
    return d - q if (ctx.n - 1) % 2 else q


def ctx_modmul_many(mc: ModContext, bs: Iterable[int]) -> List[int]:
    return [ctx_modmul(mc, b) for b in bs]


def ctx_moddiv_many(mc: ModContext, bs: Iterable[int]) -> List[int]:
    return [ctx_moddiv(mc, b) for b in bs]


def naive_modmul(a: int, b: int, d: int) -> int:
    """Schoolbook product followed by one Euclidean reduction."""
    _check_modulus(d)
    return (a * b) % d
