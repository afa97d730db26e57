"""Triangulations of labelled convex polygons and the Conway-Coxeter correspondence."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .eta import QuiddityCycle
from .frieze import FriezeClass, FriezePattern, classify, extract_quiddity, from_quiddity

__all__ = [
    "MAX_GON",
    "NotConwayCoxeter",
    "Triangulation",
    "crosses",
    "enumerate_triangulations",
    "frieze_of_triangulation",
    "quiddity_of_triangulation",
    "triangulation_of_cc_frieze",
]

MAX_GON = 14


class NotConwayCoxeter(ValueError):
    pass


def crosses(d1: tuple[int, int], d2: tuple[int, int]) -> bool:
    """Strict interior crossing of two chords ``(i, j)``, ``i < j``."""
    i, j = d1
    k, l = d2
    return i < k < j < l or k < i < l < j


@dataclass(frozen=True)
class Triangulation:
    n_gon: int
    diagonals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_gon < 3:
            raise ValueError("need at least a triangle")
        diags = tuple(sorted(tuple(sorted(dg)) for dg in self.diagonals))
        object.__setattr__(self, "diagonals", diags)
        if len(diags) != self.n_gon - 3 or len(set(diags)) != len(diags):
            raise ValueError(f"an {self.n_gon}-gon triangulation has exactly {self.n_gon - 3} diagonals")
        for i, j in diags:
            if not 0 <= i < j < self.n_gon or j - i < 2 or (i == 0 and j == self.n_gon - 1):
                raise ValueError(f"({i}, {j}) is not a diagonal")
        for x, a in enumerate(diags):
            for b in diags[x + 1 :]:
                if crosses(a, b):
                    raise ValueError(f"diagonals {a} and {b} cross")

    def to_json(self) -> list[list[int]]:
        return [list(dg) for dg in self.diagonals]


@functools.lru_cache(maxsize=None)
def _sub(lo: int, hi: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Diagonal sets triangulating the sub-polygon lo, lo+1, ..., hi (edge lo-hi is given)."""
    if hi - lo < 2:
        return ((),)
    out = []
    for k in range(lo + 1, hi):
        own = tuple(dg for dg in ((lo, k), (k, hi)) if dg[1] - dg[0] >= 2)
        for left in _sub(lo, k):
            for right in _sub(k, hi):
                out.append(own + left + right)
    return tuple(out)


def enumerate_triangulations(n_gon: int) -> list[Triangulation]:
    """All triangulations of the labelled ``n_gon``, sorted by diagonal list."""
    if not 3 <= n_gon <= MAX_GON:
        raise ValueError(f"n_gon must be in [3, {MAX_GON}], got {n_gon}")
    tris = [Triangulation(n_gon, dgs) for dgs in _sub(0, n_gon - 1)]
    tris.sort(key=lambda t: t.diagonals)
    return tris


def quiddity_of_triangulation(t: Triangulation) -> QuiddityCycle:
    """Number of triangles at each vertex (one more than its diagonal degree)."""
    counts = [1] * t.n_gon
    for i, j in t.diagonals:
        counts[i] += 1
        counts[j] += 1
    return QuiddityCycle(counts)


def frieze_of_triangulation(t: Triangulation) -> FriezePattern:
    return from_quiddity(quiddity_of_triangulation(t))


def triangulation_of_cc_frieze(frieze: FriezePattern) -> Triangulation:
    """Invert the correspondence by cutting off ears (quiddity entry 1), smallest
    vertex label first."""
    if classify(frieze) is not FriezeClass.CONWAY_COXETER:
        raise NotConwayCoxeter("frieze is not Conway-Coxeter")
    q = [int(c.x) for c in extract_quiddity(frieze)]
    n_gon = len(q)
    alive = list(range(n_gon))
    diags = []
    while len(alive) > 3:
        pos = next(p for p, v in enumerate(alive) if q[v] == 1)
        u, w = alive[pos - 1], alive[(pos + 1) % len(alive)]
        diags.append((min(u, w), max(u, w)))
        q[u] -= 1
        q[w] -= 1
        del alive[pos]
    return Triangulation(n_gon, tuple(diags))
