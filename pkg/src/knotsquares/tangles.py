"""Continued fractions, Krebes fractions of rational tangles, and the
three-strand diagram-algebra pairing behind the square-determinant templates.

Conventions
-----------
``eval_cf([a1, ..., an])`` is ``a1 + 1/(a2 + ... + 1/an)``, evaluated by 2x2
matrix products so that 1/0 = oo and 1/oo = 0 come for free.

A tangle in Conway notation ``(a1 ... an)`` is built left to right
(``T := T' a_k``), so its fraction is the continued fraction of the
*reversed* sequence: ``tangle_fraction([3, 1]) == (4, 3)``.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "KrebesFraction",
    "TL3Element",
    "TL3_GENERATORS",
    "TL3_PAIRING_TABLE",
    "eval_cf",
    "cf_of",
    "tangle_fraction",
    "conway_of",
    "parse_conway",
    "format_conway",
    "kr_sum",
    "kr_transpose",
    "kr_connected_sum",
    "tsum_det",
    "tl3_pairing",
    "tl3_multiply",
    "tl3_trace_loops",
    "tl3_reflect",
    "stack_element",
    "stack3_element",
    "square_det_1",
    "square_det_2",
    "minus_achiral_det",
]


class KrebesFraction(NamedTuple):
    """Unreduced pair (p, q), identified with (-p, -q)."""

    p: int
    q: int

    @classmethod
    def make(cls, p: int, q: int) -> "KrebesFraction":
        p, q = int(p), int(q)
        if p == 0 and q == 0:
            raise ValueError("(0, 0) is not a Krebes fraction")
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        return cls(p, q)

    def reduced(self) -> "KrebesFraction":
        g = math.gcd(self.p, self.q)
        return KrebesFraction.make(self.p // g, self.q // g)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


# ---------------------------------------------------------------------------
# continued fractions


def eval_cf(cf: Iterable[int]) -> KrebesFraction:
    """Value of ``[[a1, ..., an]]`` in lowest terms (``(1, 0)`` is infinity).

    >>> eval_cf([1, 1, 3])
    KrebesFraction(p=7, q=4)
    """
    # running product of [[a, 1], [1, 0]] matrices; first column is the value
    m00, m01, m10, m11 = 1, 0, 0, 1
    for a in cf:
        a = int(a)
        m00, m01, m10, m11 = m00 * a + m01, m00, m10 * a + m11, m10
    return KrebesFraction.make(m00, m10)


def cf_of(p: int, q: int) -> list[int]:
    """Regular continued fraction of p/q for p >= 0, q > 0 (inverse of :func:`eval_cf`).

    The first entry is 0 when p < q; the last entry is >= 2 unless p/q is an integer.
    """
    if q <= 0 or p < 0:
        raise ValueError(f"expected p >= 0, q > 0, got ({p}, {q})")
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def tangle_fraction(conway: Sequence[int]) -> KrebesFraction:
    """Fraction of the rational tangle ``(a1 ... an)``."""
    if len(conway) == 0:
        raise ValueError("empty Conway notation")
    return eval_cf(reversed(list(conway)))


def conway_of(p: int, q: int) -> list[int]:
    """Conway notation of a positive rational tangle with fraction p/q."""
    return list(reversed(cf_of(p, q)))


def parse_conway(text: str) -> list[int]:
    """Parse whitespace-separated signed integers, e.g. ``"3 1 1 3"``.

    Surrounding parentheses and commas are tolerated.
    """
    cleaned = text.replace("(", " ").replace(")", " ").replace(",", " ").split()
    if not cleaned:
        raise ValueError("empty Conway notation")
    try:
        return [int(tok) for tok in cleaned]
    except ValueError as exc:
        raise ValueError(f"bad Conway notation {text!r}") from exc


def format_conway(conway: Sequence[int]) -> str:
    return " ".join(str(int(a)) for a in conway)


# ---------------------------------------------------------------------------
# Krebes calculus


def kr_sum(x: KrebesFraction, y: KrebesFraction) -> KrebesFraction:
    """Tangle sum: fractions add, without reduction."""
    return KrebesFraction.make(x.p * y.q + y.p * x.q, x.q * y.q)


def kr_transpose(x: KrebesFraction) -> KrebesFraction:
    return KrebesFraction.make(x.q, x.p)


def kr_connected_sum(x: KrebesFraction, d: int) -> KrebesFraction:
    """Tie a knot of determinant ``d`` into one strand: both closures gain the factor d."""
    if d == 0:
        raise ValueError("connected-sum factor must be nonzero")
    return KrebesFraction.make(d * x.p, d * x.q)


def tsum_det(x: KrebesFraction) -> int:
    """Determinant p^2 + q^2 of the numerator closure of T + (mirror T)^transpose."""
    if x.p == 0 and x.q == 0:
        raise ValueError("(0, 0) is not a Krebes fraction")
    return x.p * x.p + x.q * x.q


# ---------------------------------------------------------------------------
# three-strand diagram algebra at loop value 0
#
# Basis elements are planar matchings on bottom points b0..b2 and top points
# t0..t2; a product is read bottom to top.  ``e1`` caps strands 0,1 and
# ``e2`` caps strands 1,2.  Generator order follows the pairing table:
# identity, e2, e1, (e2 below e1), (e1 below e2).

TL3Element = tuple  # (a, b, c, d, e) integer coefficients


def _matching(pairs) -> frozenset:
    return frozenset(frozenset(p) for p in pairs)


_ID = _matching([(("b", 0), ("t", 0)), (("b", 1), ("t", 1)), (("b", 2), ("t", 2))])
_E1 = _matching([(("b", 0), ("b", 1)), (("t", 0), ("t", 1)), (("b", 2), ("t", 2))])
_E2 = _matching([(("b", 1), ("b", 2)), (("t", 1), ("t", 2)), (("b", 0), ("t", 0))])


def _compose(lower: frozenset, upper: frozenset) -> tuple[frozenset, int]:
    """Stack ``upper`` on ``lower``; return the matching and the number of closed loops."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tag, g in (("L", lower), ("U", upper)):
        for pair in g:
            u, v = tuple(pair)
            parent[find((tag,) + u)] = find((tag,) + v)
    for i in range(3):
        parent[find(("L", "t", i))] = find(("U", "b", i))
    ends: dict = {}
    for i in range(3):
        ends.setdefault(find(("L", "b", i)), []).append(("b", i))
        ends.setdefault(find(("U", "t", i)), []).append(("t", i))
    loops = len({find(x) for x in list(parent)} - set(ends))
    return _matching(ends.values()), loops


TL3_GENERATORS: tuple = (
    _ID,
    _E2,
    _E1,
    _compose(_E2, _E1)[0],
    _compose(_E1, _E2)[0],
)
_GEN_INDEX = {g: i for i, g in enumerate(TL3_GENERATORS)}

#: Pairing values on generator pairs (symmetric).
TL3_PAIRING_TABLE: tuple[tuple[int, ...], ...] = (
    (0, 0, 0, 1, 1),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (1, 0, 0, 0, 1),
    (1, 0, 0, 1, 0),
)


def tl3_reflect(g: frozenset) -> frozenset:
    """Left-right mirror of a basis matching (strand i <-> 2 - i)."""
    return _matching([tuple((side, 2 - i) for side, i in pair) for pair in g])


def tl3_trace_loops(g: frozenset) -> int:
    """Number of loops in the closure joining top i to bottom i."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for pair in g:
        u, v = tuple(pair)
        parent[find(u)] = find(v)
    for i in range(3):
        parent[find(("b", i))] = find(("t", i))
    return len({find(x) for x in list(parent)})


def tl3_multiply(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """Product ``s`` (below) times ``t`` (above) at loop value 0."""
    out = [0] * 5
    for i, si in enumerate(s):
        if not si:
            continue
        for j, tj in enumerate(t):
            if not tj:
                continue
            m, loops = _compose(TL3_GENERATORS[i], TL3_GENERATORS[j])
            if loops == 0:
                out[_GEN_INDEX[m]] += si * tj
    return tuple(out)


def tl3_pairing(s: Sequence[int], t: Sequence[int]) -> int:
    """Bilinear extension of :data:`TL3_PAIRING_TABLE`."""
    if len(s) != 5 or len(t) != 5:
        raise ValueError("TL3 elements have five coefficients")
    return sum(
        s[i] * t[j] * TL3_PAIRING_TABLE[i][j] for i in range(5) for j in range(5)
    )


def _two_strand(id_coeff: int, cap_coeff: int, gen: frozenset) -> tuple[int, ...]:
    v = [0] * 5
    v[0] = id_coeff
    v[_GEN_INDEX[gen]] += cap_coeff
    return tuple(v)


def stack_element(X: int, Y: int, A: int, B: int) -> tuple[int, ...]:
    """Coefficients of the tangle (X, Y) on strands 0,1, then (A, B) on
    strands 1,2, then one crossing on strands 0,1 (a crossing counts as id + e1)."""
    return (X * A, B * X, A * X + B * Y + A * Y, B * X, B * Y)


def stack3_element(X: int, Y: int, A: int, B: int, C: int, D: int) -> tuple[int, ...]:
    """Coefficients of (X, Y) on strands 0,1, (A, B) on 1,2, (C, D) on 0,1."""
    t = _two_strand(X, Y, _E1)
    t = tl3_multiply(t, _two_strand(A, B, _E2))
    return tl3_multiply(t, _two_strand(C, D, _E1))


def square_det_1(X: int, Y: int, A: int, B: int) -> int:
    return ((X + Y) * (A + B)) ** 2


def square_det_2(X: int, Y: int, A: int, B: int, C: int, D: int) -> int:
    return (X * (D * A + B * C) + Y * (B * D + A * C)) ** 2


def minus_achiral_det(A: int, B: int, C: int, D: int, X: int, Y: int) -> int:
    f1 = X * (A * D + B * C) + Y * (A * C + B * D)
    f2 = Y * (A * D - B * C)
    return f1 * f1 + f2 * f2
