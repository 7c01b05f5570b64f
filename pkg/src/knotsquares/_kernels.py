"""Splice-state enumeration kernels.

A diagram is passed as an ``(c, 4)`` int array of edge labels in ``0..E-1``.
State bit ``i`` selects the splice at crossing ``i``: 0 joins slots 0-1 and
2-3, 1 joins slots 1-2 and 3-0.  Each label is touched by exactly two joins,
so the joined labels form disjoint cycles, one per resolved circle.

Two interchangeable backends exist: a numba-compiled depth-first walk and a
vectorized numpy relabeling over blocks of states.  Setting
``KNOTSQUARES_DISABLE_NUMBA=1`` before import forces numpy.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = "KNOTSQUARES_DISABLE_NUMBA"

try:
    if os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on"):
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numba backend


def _find(parent, x):
    while parent[x] != x:
        x = parent[x]
    return x


def _enumerate(arcs, n_labels, out):
    """Depth-first walk over splice choices with undoable union by size.

    Counts single-circle states; when ``out`` is nonempty also stores their
    bitmasks.  Returns the count.
    """
    c = arcs.shape[0]
    parent = np.arange(n_labels)
    size = np.ones(n_labels, dtype=np.int64)
    undo = np.full((c, 2), -1, dtype=np.int64)  # attached child per join
    choice = np.zeros(c, dtype=np.int64)  # next option to try at each depth
    applied = np.zeros(c, dtype=np.bool_)
    comps = n_labels
    total = 0
    d = 0
    while d >= 0:
        if d == c:
            if comps == 1:
                if out.shape[0] > 0:
                    mask = 0
                    for i in range(c):
                        mask |= (choice[i] - 1) << i
                    out[total] = mask
                total += 1
            d -= 1
            continue
        if applied[d]:
            for j in range(1, -1, -1):
                ch = undo[d, j]
                if ch >= 0:
                    root = parent[ch]
                    size[root] -= size[ch]
                    parent[ch] = ch
                    comps += 1
                    undo[d, j] = -1
            applied[d] = False
        if choice[d] == 2:
            choice[d] = 0
            d -= 1
            continue
        opt = choice[d]
        choice[d] += 1
        for j in range(2):
            if opt == 0:
                a = arcs[d, 2 * j]
                b = arcs[d, 2 * j + 1]
            else:
                a = arcs[d, 2 * j + 1]
                b = arcs[d, (2 * j + 2) % 4]
            ra = _find(parent, a)
            rb = _find(parent, b)
            if ra != rb:
                if size[ra] > size[rb]:
                    ra, rb = rb, ra
                parent[ra] = rb
                size[rb] += size[ra]
                undo[d, j] = ra
                comps -= 1
        applied[d] = True
        d += 1
    return total


def _count_monocyclic_loop(arcs, n_labels):
    return _enumerate(arcs, n_labels, np.zeros(0, dtype=np.int64))


def _monocyclic_masks_loop(arcs, n_labels):
    count = _enumerate(arcs, n_labels, np.zeros(0, dtype=np.int64))
    out = np.empty(max(count, 1), dtype=np.int64)
    if count:
        _enumerate(arcs, n_labels, out)
    return out[:count]


if HAVE_NUMBA:
    _find = njit(cache=True)(_find)
    _enumerate = njit(cache=True)(_enumerate)
    _count_monocyclic_numba = njit(cache=True)(_count_monocyclic_loop)
    _monocyclic_masks_numba = njit(cache=True)(_monocyclic_masks_loop)


# ---------------------------------------------------------------------------
# numpy backend

_CHUNK = 1 << 14


def _loop_counts_numpy(arcs: np.ndarray, n_labels: int, states: np.ndarray) -> np.ndarray:
    """Circle count per state: one vectorized union per splice join."""
    m = states.shape[0]
    if n_labels == 0:
        return np.ones(m, dtype=np.int64)
    rows = np.arange(m)
    lab = np.broadcast_to(np.arange(n_labels), (m, n_labels)).copy()
    for i in range(arcs.shape[0]):
        a0, a1, a2, a3 = (int(x) for x in arcs[i])
        b = ((states >> i) & 1).astype(bool)
        for (x0, y0), (x1, y1) in (((a0, a1), (a1, a2)), ((a2, a3), (a3, a0))):
            lx = lab[rows, np.where(b, x1, x0)][:, None]
            ly = lab[rows, np.where(b, y1, y0)][:, None]
            lab = np.where(lab == ly, lx, lab)
    return (lab == np.arange(n_labels)[None, :]).sum(axis=1)


def _count_monocyclic_numpy(arcs: np.ndarray, n_labels: int) -> int:
    total = 0
    n_states = 1 << arcs.shape[0]
    for start in range(0, n_states, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, n_states), dtype=np.int64)
        total += int((_loop_counts_numpy(arcs, n_labels, states) == 1).sum())
    return total


def _monocyclic_masks_numpy(arcs: np.ndarray, n_labels: int) -> np.ndarray:
    out = []
    n_states = 1 << arcs.shape[0]
    for start in range(0, n_states, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, n_states), dtype=np.int64)
        out.append(states[_loop_counts_numpy(arcs, n_labels, states) == 1])
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# dispatch


def _prep(arcs) -> tuple[np.ndarray, int]:
    a = np.asarray(arcs, dtype=np.int64).reshape(-1, 4)
    n_labels = int(a.max()) + 1 if a.size else 0
    return a, n_labels


def count_monocyclic(arcs, backend: str | None = None) -> int:
    """Number of splice states resolving to a single circle."""
    a, n = _prep(arcs)
    if a.shape[0] == 0:
        return 1
    backend = backend or BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend unavailable")
        return int(_count_monocyclic_numba(a, n))
    if backend == "numpy":
        return _count_monocyclic_numpy(a, n)
    raise ValueError(f"unknown backend {backend!r}")


def monocyclic_masks(arcs, backend: str | None = None) -> np.ndarray:
    """Sorted bitmasks of the single-circle states."""
    a, n = _prep(arcs)
    if a.shape[0] == 0:
        return np.zeros(1, dtype=np.int64)
    backend = backend or BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend unavailable")
        return np.sort(_monocyclic_masks_numba(a, n))
    if backend == "numpy":
        return _monocyclic_masks_numpy(a, n)
    raise ValueError(f"unknown backend {backend!r}")
