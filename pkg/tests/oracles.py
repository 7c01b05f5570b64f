"""Brute-force reference computations shared by the tests."""

from __future__ import annotations

import math


def lattice_r2(n: int) -> int:
    r = math.isqrt(n)
    pts = sum(1 for a in range(-r, r + 1) for b in range(-r, r + 1) if a * a + b * b == n)
    return pts // 4


def coprime_pairs(n: int) -> int:
    r = math.isqrt(n)
    return sum(1 for a in range(1, r + 1) for b in range(1, r + 1) if a * a + b * b == n and math.gcd(a, b) == 1)


def roots_minus_one(n: int) -> list[int]:
    return [x for x in range(1, n) if (x * x + 1) % n == 0]


def trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def hartley_alexander(p: int, q: int) -> tuple[int, ...]:
    """Two-bridge Alexander polynomial from the sign sequence of floor(iq/p).

    Returned as a coefficient tuple in ascending powers, normalized to value 1 at t = 1.
    """
    if q % 2 == 0:
        q = p - q
    exps = [0]
    s = 0
    for i in range(1, p):
        s += (-1) ** ((i * q) // p)
        exps.append(s)
    lo = min(exps)
    c = [0] * (max(exps) - lo + 1)
    for k, e in enumerate(exps):
        c[e - lo] += (-1) ** k
    if sum(c) < 0:
        c = [-x for x in c]
    return tuple(c)


def continued_fraction_value(cf):
    """a1 + 1/(a2 + ...) with Fractions; None for infinity."""
    from fractions import Fraction

    val = None  # infinity
    for a in reversed(cf):
        if val is None:
            val = Fraction(a)
        elif val == 0:
            val = None
        else:
            val = a + 1 / val
    return val
