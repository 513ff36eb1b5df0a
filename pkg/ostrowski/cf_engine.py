"""Extended Euclidean algorithm on (a, d) exposed as continued fraction sequences.

All sequences are stored from index -1, so position ``i + 1`` of a stored tuple
holds the term of index ``i``. Use the ``*_at`` accessors, which take the
mathematical index directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from ostrowski.errors import DigitIndexError, ModulusError

Divider = Callable[[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class CfContext:
    a: int
    d: int
    n: int
    k: Tuple[int, ...]
    p: Tuple[int, ...]
    q: Tuple[int, ...]
    theta_p: Tuple[int, ...]
    g: int

    @property
    def fingerprint(self) -> Tuple[int, int]:
        return (self.a, self.d)

    @property
    def is_degenerate(self) -> bool:
        # a = 0 after reduction (which covers d = 1): no partial quotients.
        return self.n == 0

    @property
    def q_n(self) -> int:
        return self.q[-1]

    @property
    def p_n(self) -> int:
        return self.p[-1]

    def _check(self, i: int, low: int) -> None:
        if not low <= i <= self.n:
            raise DigitIndexError(f"index {i} outside {low}..{self.n} for {self.a}/{self.d}")

    def k_at(self, i: int) -> int:
        self._check(i, 1)
        return self.k[i - 1]

    def p_at(self, i: int) -> int:
        self._check(i, -1)
        return self.p[i + 1]

    def q_at(self, i: int) -> int:
        self._check(i, -1)
        return self.q[i + 1]

    def theta_at(self, i: int) -> int:
        self._check(i, -1)
        return self.theta_p[i + 1]

    def eta_at(self, i: int) -> int:
        value = self.theta_at(i)
        return -value if i % 2 else value

    def eta_sequence(self) -> Tuple[int, ...]:
        """eta'_{-1}..eta'_n."""
        return tuple(-t if (idx - 1) % 2 else t for idx, t in enumerate(self.theta_p))


def cf_expand(a: int, d: int, divide: Divider = divmod) -> CfContext:
    """Expand a/d = [0; k_1, ..., k_n] with the remainder recurrence
    theta'_i = theta'_{i-2} - floor(theta'_{i-2} / theta'_{i-1}) * theta'_{i-1}.

    ``a`` is reduced modulo ``d`` first. A residue of 0 (including every a
    when d = 1) gives the degenerate context with n = 0 and g = d.
    ``divide`` must behave like :func:`divmod` on non-negative integers; the
    benchmark swaps in a subtraction loop.
    """
    if d < 1:
        raise ModulusError(f"modulus must be >= 1, got {d}")
    a = a % d

    theta: List[int] = [d, a]
    p: List[int] = [1, 0]
    q: List[int] = [0, 1]
    k: List[int] = []
    while theta[-1] != 0:
        quotient, remainder = divide(theta[-2], theta[-1])
        k.append(quotient)
        theta.append(remainder)
        p.append(p[-2] + quotient * p[-1])
        q.append(q[-2] + quotient * q[-1])

    return CfContext(
        a=a,
        d=d,
        n=len(k),
        k=tuple(k),
        p=tuple(p),
        q=tuple(q),
        theta_p=tuple(theta),
        g=theta[-2],
    )


def eta_p(ctx: CfContext, i: int) -> int:
    """Signed remainder eta'_i = (-1)^i theta'_i."""
    return ctx.eta_at(i)


def tail(ctx: CfContext, i: int) -> Fraction:
    """Exact tail r_i = theta'_i / theta'_{i-1} for 0 <= i <= n."""
    ctx._check(i, 0)
    return Fraction(ctx.theta_at(i), ctx.theta_at(i - 1))


def convergent(ctx: CfContext, i: int):
    """p_i/q_i as a Fraction; index -1 has q = 0 and comes back as the raw pair (1, 0)."""
    if i == -1:
        return (ctx.p_at(-1), ctx.q_at(-1))
    return Fraction(ctx.p_at(i), ctx.q_at(i))


def rational_remainders(a: int, d: int) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...]]:
    """Run theta_i = theta_{i-2} - floor(theta_{i-2}/theta_{i-1}) theta_{i-1}
    over the rationals, starting from theta_{-1} = 1 and theta_0 = a/d.

    Returns the quotients and theta_{-1}..theta_n. Independent of
    :func:`cf_expand` so the two can be compared.
    """
    if d < 1:
        raise ModulusError(f"modulus must be >= 1, got {d}")
    thetas: List[Fraction] = [Fraction(1), Fraction(a % d, d)]
    quotients: List[int] = []
    while thetas[-1] != 0:
        quotient = thetas[-2] // thetas[-1]
        quotients.append(int(quotient))
        thetas.append(thetas[-2] - quotient * thetas[-1])
    return tuple(quotients), tuple(thetas)
