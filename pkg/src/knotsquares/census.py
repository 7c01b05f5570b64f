"""Two-bridge knots S(p, q) grouped by determinant p."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .numtheory import omega, r2_0, totient
from .tangles import format_conway, tangle_fraction, tsum_det

__all__ = [
    "SchubertForm",
    "schubert_equivalent",
    "is_achiral_rational",
    "count_achiral_rational",
    "count_rational_by_det",
    "count_rational_chiral_twice",
    "brute_achiral_classes",
    "brute_classes",
    "km_upper_bound",
    "achiral_u1_series",
    "census_rows",
    "export_csv",
    "export_json",
]


@dataclass(frozen=True, order=True)
class SchubertForm:
    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p < 1 or p % 2 == 0:
            raise ValueError(f"p must be odd and positive, got {p}")
        if p == 1:
            if q != 0:
                raise ValueError("the unknot is S(1, 0)")
        elif not (0 < q < p) or math.gcd(p, q) != 1:
            raise ValueError(f"need 0 < q < p with gcd(p, q) = 1, got ({p}, {q})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __str__(self) -> str:
        return f"S({self.p},{self.q})"


def _orbit(p: int, q: int, sensitive: bool) -> frozenset[int]:
    qi = pow(q, -1, p)
    pts = {q % p, qi}
    if not sensitive:
        pts |= {(-q) % p, (-qi) % p}
    return frozenset(pts)


def schubert_equivalent(s1: SchubertForm, s2: SchubertForm, chirality_sensitive: bool = False) -> bool:
    """Same unoriented knot; with ``chirality_sensitive`` mirror images stay apart."""
    if s1.p != s2.p:
        raise ValueError(f"different determinants {s1.p} and {s2.p}")
    if s1.p == 1:
        return True
    return s2.q in _orbit(s1.p, s1.q, chirality_sensitive)


def is_achiral_rational(s: SchubertForm) -> bool:
    return s.p > 1 and (s.q * s.q + 1) % s.p == 0


def count_achiral_rational(n: int) -> int:
    return r2_0(n) // 2 if n > 2 and n % 2 else 0


def count_rational_by_det(n: int) -> int:
    """Classes of S(n, q) up to mirror and q -> 1/q (orbit count by Burnside)."""
    _check_odd(n)
    return (totient(n) + r2_0(n) + 2 ** omega(n)) // 4


def count_rational_chiral_twice(n: int) -> int:
    """Classes up to q -> 1/q only (mirror pairs counted twice)."""
    _check_odd(n)
    return (totient(n) + 2 ** omega(n)) // 2


def _check_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and > 1, got {n}")


def brute_classes(n: int, chirality_sensitive: bool = False) -> list[frozenset[int]]:
    """Equivalence classes of units mod n, found by scanning."""
    seen: set[int] = set()
    out = []
    for q in range(1, n):
        if q in seen or math.gcd(q, n) != 1:
            continue
        orb = _orbit(n, q, chirality_sensitive)
        seen |= orb
        out.append(orb)
    return out


def brute_achiral_classes(n: int) -> list[frozenset[int]]:
    if n < 3 or n % 2 == 0:
        return []
    return [c for c in brute_classes(n) if (min(c) ** 2 + 1) % n == 0]


def km_upper_bound(p: int) -> int:
    """2^(w((p+1)/2) - 1) + 2^(w((p-1)/2) - 1) - 1.

    A term with w = 0 (only p = 3) is taken as 1, which keeps the value an
    upper bound for the trefoil.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be odd and >= 3, got {p}")

    def term(m: int) -> int:
        w = omega(m)
        return 2 ** (w - 1) if w else 1

    return term((p + 1) // 2) + term((p - 1) // 2) - 1


def achiral_u1_series(kind: str, n: int) -> tuple[list[int], int]:
    """Palindromic notations (n 1 1 n) and (3 (1 2)^n 1 1 1 1 (2 1)^n 3).

    Returns the notation and the determinant p^2 + q^2 of its half tangle.
    """
    if kind == "A":
        if n < 1:
            raise ValueError("kind A needs n >= 1")
        half = [n, 1]
    elif kind == "B":
        if n < 0:
            raise ValueError("kind B needs n >= 0")
        half = [3] + [1, 2] * n + [1, 1]
    else:
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    return half + half[::-1], tsum_det(tangle_fraction(half))


# -- export ------------------------------------------------------------------


def census_rows(p: int, achiral_only: bool = False) -> list[dict]:
    """One row per class: determinant, sorted class members, achiral flag."""
    _check_odd(p)
    rows = []
    for cls in brute_classes(p):
        members = sorted(cls)
        achiral = (members[0] ** 2 + 1) % p == 0
        if achiral_only and not achiral:
            continue
        rows.append({"p": p, "representatives": members, "achiral": achiral})
    rows.sort(key=lambda r: r["representatives"])
    return rows


def export_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "representatives", "achiral"])
    for r in rows:
        w.writerow([r["p"], " ".join(map(str, r["representatives"])), str(r["achiral"]).lower()])
    return buf.getvalue()


def export_json(rows: Sequence[dict]) -> str:
    return json.dumps(list(rows), sort_keys=True)


def series_notation_text(notation: Sequence[int]) -> str:
    return format_conway(notation)
