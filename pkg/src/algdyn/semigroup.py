"""Index, period and kernel group of a monogenic semigroup.

Elements are opaque: the caller supplies ``compose(x, y)`` and
``equals(x, y)``.  Nothing is hashed, so elements only need a sound equality
test (exact matrices, tables, curve points...).

Powers start at ``a**1``; there is no neutral element in general.  With index
``r`` and period ``q`` the powers ``a, ..., a**(r+q-1)`` are pairwise distinct
and ``a**(r+q) == a**r``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Any, Callable


class OrderExceedsBudget(Exception):
    """The cyclic semigroup has more than ``budget`` elements (maybe infinitely many)."""

    def __init__(self, budget):
        super().__init__("order of the cyclic semigroup exceeds budget %d" % budget)
        self.budget = budget


class ClosureViolation(Exception):
    """The compose/equals callbacks do not describe a semigroup consistently."""


@dataclass(frozen=True)
class OrbitProfile:
    index: int
    period: int

    def __post_init__(self):
        if self.index < 1 or self.period < 1:
            raise ValueError("index and period must be positive")

    @property
    def order(self):
        return self.index - 1 + self.period

    @property
    def idempotent_exponent(self):
        return idempotent_power(self)

    def as_dict(self):
        return {"index": self.index, "period": self.period, "order": self.order,
                "idempotent_exponent": self.idempotent_exponent}


@dataclass(frozen=True)
class Element:
    """A semigroup element together with its operations."""

    value: Any
    compose: Callable[[Any, Any], Any]
    equals: Callable[[Any, Any], bool] = operator.eq

    def power(self, k):
        if k < 1:
            raise ValueError("semigroup powers start at 1")
        result = None
        base = self.value
        while k:
            if k & 1:
                result = base if result is None else self.compose(result, base)
            k >>= 1
            if k:
                base = self.compose(base, base)
        return result


def analyze(a: Element, budget: int = 10**6) -> OrbitProfile:
    """Return the index and period of ``a``.

    Brent's cycle finding on ``a, a**2, a**3, ...``.  Raises
    :class:`OrderExceedsBudget` when the orbit has more than ``budget``
    distinct powers.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    step = lambda x: a.compose(x, a.value)
    eq = a.equals
    # Brent needs fewer than 3 * order steps to see the repeat
    cap = 4 * budget + 4

    power = lam = 1
    tortoise = a.value
    hare = step(a.value)
    steps = 1
    while not eq(tortoise, hare):
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
        steps += 1
        if steps > cap:
            raise OrderExceedsBudget(budget)

    tortoise = hare = a.value
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while not eq(tortoise, hare):
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    profile = OrbitProfile(index=mu + 1, period=lam)
    if profile.order > budget:
        raise OrderExceedsBudget(budget)
    return profile


def idempotent_power(p: OrbitProfile) -> int:
    """The unique multiple of the period in ``[index, index + period - 1]``."""
    q = p.period
    return -(-p.index // q) * q


def kernel_group(a: Element, p: OrbitProfile, full_check: int = 64) -> list:
    """The cyclic group ``[a**r, ..., a**(r+q-1)]`` with its group axioms checked."""
    r, q = p.index, p.period
    eq = a.equals
    group = [a.power(r)]
    for _ in range(q - 1):
        group.append(a.compose(group[-1], a.value))
    if not eq(a.compose(group[-1], a.value), group[0]):
        raise ClosureViolation("a^(r+q) != a^r for the supplied profile")

    def position(x):
        for i, g in enumerate(group):
            if eq(g, x):
                return i
        return None

    # pairwise closure is cubic in q with equality-only lookups; past the
    # threshold closure follows from the generator checks below
    if q <= full_check:
        for x in group:
            for y in group:
                if position(a.compose(x, y)) is None:
                    raise ClosureViolation("kernel group is not closed under composition")

    t = idempotent_power(p)
    e = group[(t - r) % q]
    if not eq(a.compose(e, e), e):
        raise ClosureViolation("a^t is not idempotent")
    for x in group:
        if not (eq(a.compose(e, x), x) and eq(a.compose(x, e), x)):
            raise ClosureViolation("a^t is not neutral in the kernel group")

    # (a^(t+1))^i must be a^(t+i); the group elements are pairwise distinct powers
    gen = group[(t + 1 - r) % q]
    x = gen
    for i in range(1, q + 1):
        if not eq(x, group[(t + i - r) % q]):
            raise ClosureViolation("a^(t+1) does not generate the kernel group")
        x = a.compose(x, gen)
    return group
