"""Exhaustive search for non-zero frieze patterns of a given height.

The search runs over quiddity cycles whose entries lie in a finite candidate
set (ring elements with ``abs_sq <= bound``).  Only the first ``n`` entries of a
height-``n`` cycle are free:

* entry ``n`` is forced by ``c[0, n+2] = 1``, i.e. ``K(q_0..q_n) = 1`` for the
  continuant ``K``;
* the last two are read off the closing matrix ``-(eta(q_0)...eta(q_n))^-1``.

Every cycle has an entry of absolute value < 2 somewhere, so the first entry
is drawn from that small set and all rotations of each hit are added
afterwards.  Partial continuants (which are frieze entries) are checked for
zero as soon as they are known.

Arithmetic in the hot loop uses integer pairs ``(a, b) = a + b*w``.
"""

from __future__ import annotations

import enum
import logging
import math
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .eta import QuiddityCycle
from .frieze import FriezeClass, FriezePattern, classify, from_quiddity, validate
from .qint import FieldTag, QuadInt, QuadRat, small_elements

__all__ = [
    "CensusResult",
    "Positivity",
    "SearchConfig",
    "SubringReport",
    "count_by_class",
    "enumerate_friezes",
    "frieze_subring_report",
]

log = logging.getLogger(__name__)


class Positivity(enum.Enum):
    ALL = "all"
    POSITIVE_ONLY = "positive"


@dataclass(frozen=True)
class SearchConfig:
    """``tag=None`` searches over the rational integers."""

    tag: FieldTag | None
    height: int
    quiddity_bound_sq: Fraction | int | None = None
    positivity: Positivity = Positivity.ALL
    workers: int = 1

    def __post_init__(self):
        if self.height < 0:
            raise ValueError("height must be >= 0")
        bound = self.quiddity_bound_sq
        if bound is None:
            bound = max(4, (self.height + 1) ** 2)
        bound = Fraction(bound)
        if bound < 4:
            raise ValueError("quiddity_bound_sq must be >= 4 so every small entry is a candidate")
        object.__setattr__(self, "quiddity_bound_sq", bound)
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def d(self) -> int | None:
        return None if self.tag is None else self.tag.d


@dataclass(frozen=True)
class CensusResult:
    config: SearchConfig
    friezes: tuple[FriezePattern, ...]
    classes: tuple[FriezeClass, ...]
    complete: bool
    completeness_note: str
    nodes: int = 0

    @property
    def bound_used(self) -> Fraction:
        return self.config.quiddity_bound_sq

    @property
    def counts(self) -> dict[FriezeClass, int]:
        return count_by_class(self)

    def __len__(self):
        return len(self.friezes)


# -- integer-pair arithmetic ----------------------------------------------------


def _mul(x, y, t, n):
    a, b = x
    c, e = y
    be = b * e
    return (a * c - n * be, a * e + b * c + t * be)


def _div(x, y, t, n):
    """Exact quotient in O_d, or None."""
    c, e = y
    conj = (c + t * e, -e)
    nrm = c * c + t * c * e + n * e * e
    if nrm == 0:
        return None
    p, q = _mul(x, conj, t, n)
    if p % nrm or q % nrm:
        return None
    return (p // nrm, q // nrm)


@dataclass(frozen=True)
class _Params:
    t: int
    n: int
    height: int
    cands: tuple
    small: tuple


def _candidates(cfg: SearchConfig) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    bound = cfg.quiddity_bound_sq
    # small_elements uses a strict bound; nudge it to include abs_sq == bound
    if cfg.tag is None:
        els = [(a, 0) for a in small_elements(None, bound + Fraction(1, 2))]
        sq = {(a, 0): a * a for a, _ in els}
    else:
        qs = small_elements(cfg.tag, bound + Fraction(1, 8))
        els = [(q.a, q.b) for q in qs]
        sq = {(q.a, q.b): q.norm() for q in qs}
    els = [e for e in els if e != (0, 0) and sq[e] <= bound]
    if cfg.positivity is Positivity.POSITIVE_ONLY:
        els = [e for e in els if e[1] == 0 and e[0] > 0]
    small = [e for e in els if sq[e] < 4]
    return els, small


def _arith(tag: FieldTag | None) -> tuple[int, int]:
    # Z sits inside any O_d; b stays 0 so the choice of (t, n) is irrelevant
    return (0, 1) if tag is None else (tag.omega_trace, tag.omega_norm)


def _close(prefix, p: _Params, cand_set):
    """Complete a free prefix of length ``height`` to a full cycle, or None."""
    t, n, h = p.t, p.n, p.height
    # P = eta(q_0) ... eta(q_k) as integer-pair matrix
    one, zero = (1, 0), (0, 0)
    m11, m12, m21, m22 = one, zero, zero, one
    for q in prefix:
        # [[m11, m12], [m21, m22]] @ [[q, -1], [1, 0]]
        m11, m12, m21, m22 = (
            _add(_mul(m11, q, t, n), m12),
            _neg(m11),
            _add(_mul(m21, q, t, n), m22),
            _neg(m21),
        )
    # m11 = K(q_0..q_{h-1}), m12 = -K(q_0..q_{h-2}); need K(q_0..q_h) = 1
    qh = _div(_add(one, _neg(m12)), m11, t, n)
    if qh is None or qh not in cand_set:
        return None
    m11, m12, m21, m22 = (
        _add(_mul(m11, qh, t, n), m12),
        _neg(m11),
        _add(_mul(m21, qh, t, n), m22),
        _neg(m21),
    )
    # eta(x) eta(y) = [[xy - 1, -x], [y, -1]] must equal -P^-1 = [[-m22, m12], [m21, -m11]]
    if m11 != one:
        return None
    x, y = _neg(m12), m21
    if x not in cand_set or y not in cand_set:
        return None
    if _add(_mul(x, y, t, n), (-1, 0)) != _neg(m22):
        return None
    return tuple(prefix) + (qh, x, y)


def _add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _neg(x):
    return (-x[0], -x[1])


def _all_interior_nonzero(cycle, p: _Params) -> bool:
    m = len(cycle)
    t, n = p.t, p.n
    for i in range(m):
        prev, cur = (1, 0), cycle[i]
        if cur == (0, 0):
            return False
        for L in range(2, p.height + 1):
            prev, cur = cur, _add(_mul(cycle[(i + L - 1) % m], cur, t, n), _neg(prev))
            if cur == (0, 0):
                return False
    return True


def _search(args) -> tuple[list[tuple], int]:
    p, prefix = args
    cand_set = set(p.cands)
    h = p.height
    t, n = p.t, p.n
    hits: list[tuple] = []
    nodes = 0

    # conts[i] = (K(q_i..q_{k-2}), K(q_i..q_{k-1})) for the current prefix q_0..q_{k-1}
    def extend(conts, q):
        out = []
        for prev, cur in conts:
            nxt = _add(_mul(cur, q, t, n), _neg(prev))
            if nxt == (0, 0):
                return None
            out.append((cur, nxt))
        out.append(((1, 0), q))
        return out

    def dfs(pref, conts):
        nonlocal nodes
        nodes += 1
        if len(pref) == h:
            cyc = _close(pref, p, cand_set)
            if cyc is not None and _all_interior_nonzero(cyc, p):
                hits.append(cyc)
            return
        pool = p.small if not pref else p.cands
        for q in pool:
            nc = extend(conts, q)
            if nc is not None:
                dfs(pref + [q], nc)

    conts = []
    for q in prefix:
        conts = extend(conts, q)
        if conts is None:
            return hits, 1
    dfs(list(prefix), conts)
    return hits, nodes


def _tasks(p: _Params) -> list[tuple]:
    if p.height == 0:
        return [()]
    if p.height == 1:
        return [(q,) for q in p.small]
    return [(a, b) for a in p.small for b in p.cands]


def _sort_key(cycle, p: _Params):
    t, n = p.t, p.n
    return tuple((a * a + t * a * b + n * b * b, a, b) for a, b in cycle)


def enumerate_friezes(cfg: SearchConfig, progress: bool = False) -> CensusResult:
    """All non-zero friezes of height ``cfg.height`` with quiddity entries in the
    candidate set.  Output order is canonical and independent of ``workers``."""
    els, small = _candidates(cfg)
    t, n = _arith(cfg.tag)
    p = _Params(t, n, cfg.height, tuple(els), tuple(small))
    tasks = [(p, pre) for pre in _tasks(p)]
    found: set[tuple] = set()
    nodes = 0
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            results = ex.map(_search, tasks, chunksize=max(1, len(tasks) // (4 * cfg.workers)))
            for k, (hits, nd) in enumerate(results):
                found.update(hits)
                nodes += nd
                if progress:
                    print(f"\rsubtrees {k + 1}/{len(tasks)}  hits {len(found)}", end="", file=sys.stderr)
    else:
        for k, task in enumerate(tasks):
            hits, nd = _search(task)
            found.update(hits)
            nodes += nd
            if progress:
                print(f"\rsubtrees {k + 1}/{len(tasks)}  hits {len(found)}", end="", file=sys.stderr)
    if progress:
        print(file=sys.stderr)
    m = cfg.height + 3
    closed = {c[r:] + c[:r] for c in found for r in range(m)}
    ordered = sorted(closed, key=lambda c: _sort_key(c, p))
    friezes = tuple(from_quiddity(_to_cycle(c, cfg.tag)) for c in ordered)
    classes = tuple(classify(f) for f in friezes)
    complete, note = _completeness(cfg)
    log.debug("census d=%s n=%s: %d friezes, %d nodes", cfg.d, cfg.height, len(friezes), nodes)
    return CensusResult(cfg, friezes, classes, complete, note, nodes)


def _to_cycle(c, tag: FieldTag | None) -> QuiddityCycle:
    if tag is None:
        return QuiddityCycle([QuadRat(a) for a, _ in c])
    return QuiddityCycle([QuadInt(a, b, tag).to_rat() for a, b in c], tag)


def _completeness(cfg: SearchConfig) -> tuple[bool, str]:
    need = (cfg.height + 1) ** 2
    if cfg.tag is not None and cfg.tag.is_exceptional:
        return False, (
            f"complete only relative to the quiddity bound |c|^2 <= {cfg.quiddity_bound_sq}; "
            f"no a-priori bound is known for O_{cfg.tag.d}"
        )
    if cfg.quiddity_bound_sq >= need:
        ring = "Z" if cfg.tag is None else f"O_{cfg.tag.d}"
        return True, (
            f"complete: every non-zero frieze over {ring} of height {cfg.height} is a (twisted) "
            f"Conway-Coxeter frieze with |quiddity entries| <= {cfg.height + 1}"
        )
    return False, f"complete only relative to the quiddity bound |c|^2 <= {cfg.quiddity_bound_sq} (< {need})"


def count_by_class(result: CensusResult) -> dict[FriezeClass, int]:
    counts = Counter(result.classes)
    table = {c: counts.get(c, 0) for c in FriezeClass}
    if table[FriezeClass.OTHER_INTEGRAL]:
        raise AssertionError("found a non-zero integral frieze that is neither CC nor twisted CC")
    return table


@dataclass(frozen=True)
class SubringReport:
    """The subring of O_d generated by all census entries: ``Z + conductor*w*Z``,
    with ``conductor = 0`` meaning Z itself."""

    tag: FieldTag | None
    conductor: int

    @property
    def is_integers(self) -> bool:
        return self.conductor == 0

    @property
    def is_maximal_order(self) -> bool:
        return self.conductor == 1

    def contains(self, z: QuadRat) -> bool:
        from .qint import is_integral

        if z.is_rational():
            return z.x.denominator == 1
        if self.tag is None:
            return False
        ok, q = is_integral(z, self.tag)
        return ok and self.conductor != 0 and q.b % self.conductor == 0

    def __str__(self):
        if self.conductor == 0:
            return "Z"
        if self.conductor == 1:
            return f"O_{self.tag.d}"
        return f"Z + {self.conductor}*w*Z in O_{self.tag.d}"


def frieze_subring_report(results: Iterable[CensusResult]) -> SubringReport:
    results = list(results)
    if not results:
        raise ValueError("need at least one census")
    tags = {r.config.tag for r in results}
    if len(tags) != 1:
        raise ValueError("censuses over different rings")
    (tag,) = tags
    g = 0
    from .qint import is_integral

    for r in results:
        for f in r.friezes:
            for z in f.all_entries():
                if z.is_rational():
                    continue
                _, q = is_integral(z, tag)
                g = math.gcd(g, q.b)
    return SubringReport(tag, g)


def census_rows(result: CensusResult) -> list[dict]:
    from .frieze import frieze_to_json

    return [frieze_to_json(f, c) for f, c in zip(result.friezes, result.classes)]


def census_to_json(result: CensusResult) -> dict:
    cfg = result.config
    return {
        "d": cfg.d,
        "height": cfg.height,
        "bound_sq": str(cfg.quiddity_bound_sq),
        "positivity": cfg.positivity.value,
        "complete": result.complete,
        "completeness_note": result.completeness_note,
        "counts": {c.value: k for c, k in result.counts.items()},
        "friezes": census_rows(result),
    }


__all__ += ["census_rows", "census_to_json"]


def validate_census(result: CensusResult) -> bool:
    seen = set()
    for f in result.friezes:
        if f in seen or not validate(f).ok:
            return False
        seen.add(f)
    return True
