"""Alexander polynomials of two-bridge knots.

S(p, q) is written as an all-even continued fraction [a1, ..., a2g].  The
Seifert matrix V has diagonal (-1)^(i+1) a_i / 2 and ones on the
superdiagonal, so V - tV^T is tridiagonal and its determinant follows from
a three-term recursion.  The result is shifted by t^-g so that it is
symmetric with value 1 at t = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tangles import eval_cf

__all__ = [
    "SymmetricLaurentPoly",
    "EvenExpansion",
    "even_expansion",
    "alexander_rational",
    "leading_coeff",
    "square_leading_check",
]


@dataclass(frozen=True)
class SymmetricLaurentPoly:
    """Coefficients of t^-g .. t^g."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) % 2 == 0:
            raise ValueError("a symmetric Laurent polynomial has an odd number of coefficients")
        if c != c[::-1]:
            raise ValueError(f"coefficients {c} are not palindromic")
        # strip matching zero ends
        while len(c) > 1 and c[0] == 0:
            c = c[1:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) // 2

    def coefficient(self, k: int) -> int:
        g = self.degree
        return self.coeffs[k + g] if -g <= k <= g else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, t):
        g = self.degree
        t = Fraction(t) if isinstance(t, int) else t
        return sum(c * t ** (k - g) for k, c in enumerate(self.coeffs))

    def to_text(self) -> str:
        """Space-separated ``coeff:exponent`` pairs, highest exponent first."""
        g = self.degree
        return " ".join(f"{self.coeffs[k]}:{k - g}" for k in range(len(self.coeffs) - 1, -1, -1))

    @classmethod
    def from_text(cls, text: str) -> "SymmetricLaurentPoly":
        terms: dict[int, int] = {}
        for tok in text.split():
            c, sep, e = tok.partition(":")
            if not sep:
                raise ValueError(f"bad term {tok!r}, expected coeff:exponent")
            terms[int(e)] = terms.get(int(e), 0) + int(c)
        g = max((abs(e) for e in terms), default=0)
        return cls(tuple(terms.get(k, 0) for k in range(-g, g + 1)))

    def __str__(self) -> str:
        out = ""
        for k in range(len(self.coeffs) - 1, -1, -1):
            c, e = self.coeffs[k], k - self.degree
            if c == 0:
                continue
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = "" if (mono and abs(c) == 1) else str(abs(c))
            if not out:
                out = ("-" if c < 0 else "") + mag + mono
            else:
                out += (" - " if c < 0 else " + ") + mag + mono
        return out or "0"


@dataclass(frozen=True)
class EvenExpansion:
    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(a) for a in self.entries)
        if len(e) % 2 or any(a == 0 or a % 2 for a in e):
            raise ValueError(f"{e} is not an even-length expansion with nonzero even entries")
        object.__setattr__(self, "entries", e)

    @property
    def genus(self) -> int:
        return len(self.entries) // 2

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _nearest_even(x: int, y: int) -> int:
    # even integer closest to x / y; never a tie when x, y have opposite parity
    lo = math.floor(Fraction(x, y))
    cands = [a for a in (lo - 1, lo, lo + 1, lo + 2) if a % 2 == 0]
    return min(cands, key=lambda a: abs(Fraction(x, y) - a))


def even_expansion(p: int, q: int) -> EvenExpansion:
    """All-even continued fraction whose value has numerator +-p.

    q is first replaced by an even representative (q - p when q is odd).

    >>> even_expansion(9, 2).entries
    (4, 2)
    """
    p, q = int(p), int(q)
    if p < 1 or p % 2 == 0:
        raise ValueError(f"p must be odd and positive, got {p}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    if p == 1:
        return EvenExpansion(())
    q %= p
    if q % 2:
        q -= p
    x, y = p, q
    out = []
    while y:
        a = _nearest_even(x, y)
        out.append(a)
        x, y = y, x - a * y
    return EvenExpansion(tuple(out))


def _poly_mul_add(a: list[int], s: int, b: list[int]) -> list[int]:
    """(1 - t) * s * a + t * b as coefficient lists in ascending powers."""
    n = max(len(a) + 1, len(b) + 1)
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += s * c
        out[i + 1] -= s * c
    for i, c in enumerate(b):
        out[i + 1] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _alexander_from_expansion(entries: Sequence[int]) -> SymmetricLaurentPoly:
    g = len(entries) // 2
    f_prev, f = [0], [1]
    for i, a in enumerate(entries, start=1):
        d = (a // 2) if i % 2 else -(a // 2)
        f_prev, f = f, _poly_mul_add(f, d, f_prev)
    f = f + [0] * (2 * g + 1 - len(f))
    return SymmetricLaurentPoly(tuple(f))


def alexander_rational(p: int, q: int) -> SymmetricLaurentPoly:
    """Symmetric Alexander polynomial of S(p, q), normalized by Delta(1) = 1.

    >>> str(alexander_rational(5, 2))
    '-t + 3 - t^-1'
    """
    return _alexander_from_expansion(even_expansion(p, q).entries)


def leading_coeff(expansion: EvenExpansion | Sequence[int]) -> int:
    """(-1)^g * prod(a_i) / 4^g."""
    e = expansion if isinstance(expansion, EvenExpansion) else EvenExpansion(tuple(expansion))
    prod = math.prod(e.entries)
    val = Fraction((-1) ** e.genus * prod, 4**e.genus)
    if val.denominator != 1:
        raise ArithmeticError("leading coefficient is not an integer")
    return int(val)


def square_leading_check(p: int, q: int) -> bool:
    """Whether |max cf Delta| of the achiral knot S(p, q) is a perfect square."""
    if p < 3 or (q * q + 1) % p:
        raise ValueError(f"S({p}, {q}) is not achiral")
    lead = abs(alexander_rational(p, q).leading)
    return math.isqrt(lead) ** 2 == lead


def expansion_value(expansion: EvenExpansion):
    """Fraction of the expansion under the tangle conventions."""
    return eval_cf(expansion.entries)
