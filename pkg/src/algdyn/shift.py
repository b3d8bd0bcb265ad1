"""Shift systems with a prescribed tail length and cyclic group part.

Given a permutation ``h`` of a finite set ``Y`` (so ``<h>`` is a finite cyclic
group acting faithfully), an integer ``p >= 1`` and a base set ``B`` with a
marked point ``0``, the map

    f(x_1, ..., x_p, y) = (0, x_1, ..., x_{p-1}, h(y))

on ``B^p x Y`` has index exactly ``p`` and period ``ord(h)`` as soon as
``|B| >= 2``.  Its idempotent power forgets the ``B`` coordinates and ``e f``
acts as ``h``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .finite import FiniteMap, image_chain
from .semigroup import analyze, idempotent_power, kernel_group


class BaseTooSmall(ValueError):
    pass


def permutation_order(h):
    seen = set()
    order = 1
    for start in range(len(h)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = h[x]
            length += 1
        order = lcm(order, length)
    return order


@dataclass(frozen=True)
class MonotheticModel:
    p: int
    h: tuple
    base_size: int = 2

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))
        if self.p < 1:
            raise ValueError("p must be a positive integer")
        if sorted(self.h) != list(range(len(self.h))) or not self.h:
            raise ValueError("h must be a permutation of {0, .., |Y|-1}")

    @classmethod
    def cyclic(cls, p, h_order, base_size=2):
        """``H = Z/h_order`` acting on itself by ``y -> y + 1``."""
        if h_order < 1:
            raise ValueError("h_order must be positive")
        return cls(p, tuple((y + 1) % h_order for y in range(h_order)), base_size)

    @property
    def h_order(self):
        return permutation_order(self.h)

    def states(self):
        """``B^p x Y`` in lexicographic order."""
        return list(itertools.product(*([range(self.base_size)] * self.p), range(len(self.h))))


def build(model: MonotheticModel):
    """The shift map as a :class:`FiniteMap`, plus the list of states."""
    if model.base_size < 2:
        raise BaseTooSmall("the base set needs a point besides 0 for the index to be p")
    states = model.states()
    index = {s: i for i, s in enumerate(states)}
    table = [index[(0,) + s[:model.p - 1] + (model.h[s[-1]],)] for s in states]
    return FiniteMap(table), states


def verify_theorem(model: MonotheticModel, budget=10**6):
    """Run the structural checks on the shift system of ``model``."""
    f, states = build(model)
    index = {s: i for i, s in enumerate(states)}
    a = f.element()
    prof = analyze(a, budget)
    q = model.h_order
    t = idempotent_power(prof)
    e = f ** t

    forget = FiniteMap(index[(0,) * model.p + (s[-1],)] for s in states)
    group = kernel_group(a, prof)

    # a^k in the kernel group moves the Y coordinate by h^k
    def h_power(k, y):
        for _ in range(k % q):
            y = model.h[y]
        return y

    probe = [s for s in states if all(x == 0 for x in s[:-1])]
    iso = True
    exps = [prof.index + i for i in range(prof.period)]
    for u, ku in zip(group, exps):
        for s in probe:
            if states[u(index[s])][-1] != h_power(ku, s[-1]):
                iso = False
        for v, kv in zip(group, exps):
            w = u @ v
            pos = next(i for i, g in enumerate(group) if g.table == w.table)
            if (exps[pos] - ku - kv) % q:
                iso = False

    y_set = sorted(index[(0,) * model.p + (y,)] for y in range(len(model.h)))
    ef = e @ f
    ef_ok = all(states[ef(i)] == (0,) * model.p + (model.h[states[i][-1]],) for i in y_set)
    checks = {
        "index_is_p": prof.index == model.p,
        "period_is_ord_h": prof.period == q,
        "order_is_p_minus_1_plus_ord_h": prof.order == model.p - 1 + q,
        "idempotent_forgets_base": e.table == forget.table,
        "idempotent_stable": (f ** (t + q)).table == e.table,
        "kernel_group_is_h": iso and len(group) == q,
        "eventual_image": image_chain(f)[-1] == y_set,
        "ef_acts_as_h": ef_ok,
    }
    return {
        "p": model.p,
        "h_order": q,
        "base_size": model.base_size,
        "states": len(states),
        "orbit": prof.as_dict(),
        "idempotent_exponent": t,
        "checks": checks,
    }
