"""Brute-force reference computations, kept independent of the package."""

from fractions import Fraction
from itertools import product


def power_profile(table):
    """(index, period) of a self-map by listing its powers."""
    table = tuple(table)
    seen = [table]
    while True:
        nxt = tuple(seen[-1][j] for j in table)
        if nxt in seen:
            i = seen.index(nxt)
            return i + 1, len(seen) - i
        seen.append(nxt)


def matmul(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def matpow(a, k):
    n = len(a)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = matmul(out, a)
    return out


def rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                t = rows[i][c] / rows[r][c]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def curve_points(p, a, b):
    pts = [None]
    for x, y in product(range(p), repeat=2):
        if (y * y - x ** 3 - a * x - b) % p == 0:
            pts.append((x, y))
    return pts


def chord_tangent(p, a, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p
