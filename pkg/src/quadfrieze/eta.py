"""The eta-matrix calculus for quiddity cycles.

``eta(c) = [[c, -1], [1, 0]]``.  A sequence ``(c_1, ..., c_m)`` is a quiddity cycle
when the ordered product of the ``eta(c_i)`` is ``-id``.  Three local rewrites
shorten a cycle:

* ``REMOVE_ONE``:       eta(a) eta(1) eta(b)  =  eta(a-1) eta(b-1)
* ``REMOVE_MINUS_ONE``: eta(a) eta(-1) eta(b) = -eta(a+1) eta(b+1)
* ``MERGE_ZERO``:       eta(a) eta(0) eta(b)  = -eta(a+b)

Positions are 0-based and cyclic.  When the rewritten triple wraps around the
end of the list the surviving entries keep their cyclic order; the product of
the new list is then conjugate (not equal) to the signed old product, which
makes no difference for quiddity cycles since ``-id`` is central.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .qint import FieldTag, QuadRat, abs_sq, is_integral

__all__ = [
    "Mat2",
    "QuiddityCycle",
    "ReductionStep",
    "ReductionTrace",
    "Rule",
    "Stuck",
    "eta",
    "eta_product",
    "inverse_step",
    "is_quiddity_cycle",
    "reduce_to_canonical",
    "replay",
    "rewrite_step",
    "small_entry_witnesses",
    "unreduce",
]


@dataclass(frozen=True)
class Mat2:
    m11: object
    m12: object
    m21: object
    m22: object

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )

    def __neg__(self) -> Mat2:
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def is_scalar(self, s) -> bool:
        return self.m11 == s and self.m22 == s and self.m12 == 0 and self.m21 == 0


IDENTITY = Mat2(1, 0, 0, 1)


def eta(c) -> Mat2:
    return Mat2(c, -1, 1, 0)


def eta_product(entries: Sequence) -> Mat2:
    m = IDENTITY
    for c in entries:
        m = m @ eta(c)
    return m


class QuiddityCycle:
    """A finite cyclic sequence of field elements (not necessarily a quiddity cycle;
    use :func:`is_quiddity_cycle` to check)."""

    __slots__ = ("entries", "tag")

    def __init__(self, entries: Sequence, tag: FieldTag | None = None):
        ents = tuple(QuadRat.coerce(e, tag) for e in entries)
        if tag is None:
            tags = {e.tag for e in ents if e.tag is not None}
            if len(tags) > 1:
                raise ValueError("entries from different fields")
            tag = tags.pop() if tags else None
        object.__setattr__(self, "entries", ents)
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, name, value):
        raise AttributeError("QuiddityCycle is immutable")

    def __reduce__(self):
        return (QuiddityCycle, (self.entries, self.tag))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i % len(self.entries)]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, o):
        if isinstance(o, QuiddityCycle):
            return self.entries == o.entries
        if isinstance(o, (tuple, list)):
            return len(o) == len(self.entries) and all(a == b for a, b in zip(self.entries, o))
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def rotate(self, k: int) -> QuiddityCycle:
        k %= len(self.entries)
        return QuiddityCycle(self.entries[k:] + self.entries[:k], self.tag)

    def __repr__(self):
        return "QuiddityCycle(" + ", ".join(str(e) for e in self.entries) + ")"


def _as_cycle(cycle) -> QuiddityCycle:
    return cycle if isinstance(cycle, QuiddityCycle) else QuiddityCycle(cycle)


def is_quiddity_cycle(cycle) -> bool:
    cycle = _as_cycle(cycle)
    if len(cycle) < 2:
        return False
    return eta_product(cycle.entries).is_scalar(-1)


class Rule(enum.Enum):
    REMOVE_ONE = "i"
    REMOVE_MINUS_ONE = "ii"
    MERGE_ZERO = "iii"

    @property
    def pivot(self) -> int:
        return {Rule.REMOVE_ONE: 1, Rule.REMOVE_MINUS_ONE: -1, Rule.MERGE_ZERO: 0}[self]

    @property
    def flips_sign(self) -> bool:
        return self is not Rule.REMOVE_ONE

    @classmethod
    def for_value(cls, v) -> Rule | None:
        for r in cls:
            if v == r.pivot:
                return r
        return None


def _splice(seq: list, p: int, mid: list) -> list:
    """Replace the cyclic triple ``(p-1, p, p+1)`` of ``seq`` by ``mid``.

    ``mid`` has one entry (merge) or two (left, right).  Untouched entries keep
    their relative cyclic order.
    """
    m = len(seq)
    if 1 <= p <= m - 2:
        return seq[: p - 1] + mid + seq[p + 2 :]
    if p == 0:
        if len(mid) == 2:
            left, right = mid
            return [right] + seq[2 : m - 1] + [left]
        return mid + seq[2 : m - 1]
    # p == m - 1
    if len(mid) == 2:
        left, right = mid
        return [right] + seq[1 : m - 2] + [left]
    return seq[1 : m - 2] + mid


def rewrite_step(cycle, rule: Rule, position: int) -> tuple[QuiddityCycle, bool]:
    """Apply one local rewrite; returns the shortened cycle and whether the
    eta-product picked up a factor -1."""
    cycle = _as_cycle(cycle)
    m = len(cycle)
    if m < 3:
        raise ValueError(f"rewrite needs a cycle of length >= 3, got {m}")
    if not 0 <= position < m:
        raise IndexError(f"position {position} out of range for length {m}")
    e = list(cycle.entries)
    if e[position] != rule.pivot:
        raise ValueError(f"rule {rule.value} needs entry {rule.pivot} at {position}, found {e[position]}")
    a, b = e[(position - 1) % m], e[(position + 1) % m]
    if rule is Rule.REMOVE_ONE:
        mid = [a - 1, b - 1]
    elif rule is Rule.REMOVE_MINUS_ONE:
        mid = [a + 1, b + 1]
    else:
        mid = [a + b]
    return QuiddityCycle(_splice(e, position, mid), cycle.tag), rule.flips_sign


def _track(m: int, position: int, n_mid: int, index: int) -> int:
    """Where an untouched entry at ``index`` lands after a rewrite at ``position``."""
    labels = list(range(m))
    out = _splice(labels, position, [None] * n_mid)
    return out.index(index)


def unreduce(cycle, rule: Rule, position: int, old_length: int, split=None) -> QuiddityCycle:
    """Inverse of :func:`rewrite_step`.

    ``position`` and ``old_length`` refer to the longer cycle that is being
    rebuilt.  ``MERGE_ZERO`` additionally needs ``split``: the value of the left
    neighbour of the re-inserted 0.
    """
    cycle = _as_cycle(cycle)
    e = list(cycle.entries)
    m = old_length
    p = position
    piv = QuadRat(rule.pivot)
    if rule is Rule.MERGE_ZERO:
        if len(e) != m - 2:
            raise ValueError("length mismatch for MERGE_ZERO inverse")
        if split is None:
            raise ValueError("MERGE_ZERO inverse needs the split value")
        if 1 <= p <= m - 2:
            s = e[p - 1]
            new = e[: p - 1] + [split, piv, s - split] + e[p:]
        elif p == 0:
            s = e[0]
            new = [piv, s - split] + e[1:] + [split]
        else:
            s = e[-1]
            new = [s - split] + e[:-1] + [split, piv]
        return QuiddityCycle(new, cycle.tag)
    if len(e) != m - 1:
        raise ValueError("length mismatch for inverse rewrite")
    delta = 1 if rule is Rule.REMOVE_ONE else -1
    if 1 <= p <= m - 2:
        new = e[: p - 1] + [e[p - 1] + delta, piv, e[p] + delta] + e[p + 1 :]
    elif p == 0:
        new = [piv, e[0] + delta] + e[1:-1] + [e[-1] + delta]
    else:
        new = [e[0] + delta] + e[1:-1] + [e[-1] + delta, piv]
    return QuiddityCycle(new, cycle.tag)


def inverse_step(cycle, rule: Rule, gap: int, split=None) -> QuiddityCycle:
    """Grow a cycle by re-inserting a pivot between entries ``gap`` and ``gap+1``
    (cyclically); for ``MERGE_ZERO`` entry ``gap`` is split as ``split, 0, rest``.

    This is the generator-friendly face of :func:`unreduce`.
    """
    cycle = _as_cycle(cycle)
    m = len(cycle)
    gap %= m
    if rule is Rule.MERGE_ZERO:
        rot = cycle.rotate(gap)
        return unreduce(rot, rule, 1, m + 2, split)
    rot = cycle.rotate(gap)
    return unreduce(rot, rule, 1, m + 1)


def _is_small(z) -> bool:
    return abs_sq(z) < 4


def small_entry_witnesses(cycle) -> tuple[int, int]:
    """Two distinct indices with ``|c| < 2``; non-neighbouring (cyclically) when
    the cycle is longer than 3."""
    cycle = _as_cycle(cycle)
    m = len(cycle)
    small = [i for i, c in enumerate(cycle.entries) if _is_small(c)]
    if m <= 3:
        if len(small) >= 2:
            return small[0], small[1]
        if m == 2 and small:
            return small[0], (small[0] + 1) % 2
    else:
        for x, j in enumerate(small):
            for k in small[x + 1 :]:
                if k - j > 1 and not (j == 0 and k == m - 1):
                    return j, k
    raise AssertionError(f"no small-entry witnesses in {cycle!r}; is it a quiddity cycle?")


@dataclass(frozen=True)
class ReductionStep:
    rule: Rule
    position: int
    before: QuiddityCycle
    after: QuiddityCycle
    sign_flip: bool
    split: object = None  # left neighbour value, MERGE_ZERO only

    def to_json(self) -> dict:
        from .frieze import cycle_to_json

        out = {
            "rule": self.rule.value,
            "position": self.position,
            "before": cycle_to_json(self.before),
            "after": cycle_to_json(self.after),
            "sign_flip": self.sign_flip,
        }
        return out


@dataclass(frozen=True)
class ReductionTrace:
    original: QuiddityCycle
    steps: tuple[ReductionStep, ...] = dc_field(default_factory=tuple)

    @property
    def terminal(self) -> QuiddityCycle:
        return self.steps[-1].after if self.steps else self.original

    @property
    def net_sign_flips(self) -> int:
        return sum(s.sign_flip for s in self.steps)

    def to_json(self) -> dict:
        from .frieze import cycle_to_json

        return {
            "original": cycle_to_json(self.original),
            "steps": [s.to_json() for s in self.steps],
            "terminal": cycle_to_json(self.terminal),
        }


class Stuck(Exception):
    """No rewrite applies although the cycle is longer than 3."""

    def __init__(self, cycle: QuiddityCycle, steps=()):
        super().__init__(f"reduction stuck at {cycle!r}")
        self.cycle = cycle
        self.steps = tuple(steps)


def _step(cycle, rule, p, steps):
    before = cycle
    after, flip = rewrite_step(cycle, rule, p)
    split = before[(p - 1)] if rule is Rule.MERGE_ZERO else None
    steps.append(ReductionStep(rule, p, before, after, flip, split))
    return after


def reduce_to_canonical(cycle, tag: FieldTag | None = None) -> ReductionTrace:
    """Reduce a quiddity cycle to ``(0, 0)`` or ``(1, 1, 1)``.

    Strategy: remove the leftmost 1; failing that, take the lexicographically
    first non-neighbouring pair of entries in {-1, 0} and remove both (the two
    sign flips cancel).  Raises :class:`Stuck` when neither move exists, which
    happens for cycles with other small entries (e.g. over O_-2).
    """
    original = _as_cycle(cycle)
    if not is_quiddity_cycle(original):
        raise ValueError(f"{original!r} is not a quiddity cycle")
    for c in original:
        if not is_integral(c, tag)[0]:
            raise ValueError(f"entry {c} is not an algebraic integer")
    cur = original
    steps: list[ReductionStep] = []
    while len(cur) > 3:
        m = len(cur)
        e = cur.entries
        ones = [i for i, c in enumerate(e) if c == 1]
        if ones:
            cur = _step(cur, Rule.REMOVE_ONE, ones[0], steps)
            continue
        cand = [i for i, c in enumerate(e) if c == 0 or c == -1]
        pair = None
        for x, j in enumerate(cand):
            for k in cand[x + 1 :]:
                if k - j > 1 and not (j == 0 and k == m - 1):
                    pair = (j, k)
                    break
            if pair:
                break
        if pair is None:
            raise Stuck(cur, steps)
        j, k = pair
        rule_k = Rule.for_value(e[k])
        cur = _step(cur, rule_k, k, steps)
        j2 = _track(m, k, 1 if rule_k is Rule.MERGE_ZERO else 2, j)
        if len(cur) < 3:
            raise Stuck(cur, steps)
        cur = _step(cur, Rule.for_value(cur[j2]), j2, steps)
    if len(cur) == 3 and cur != (1, 1, 1) or len(cur) == 2 and cur != (0, 0) or len(cur) < 2:
        raise Stuck(cur, steps)
    return ReductionTrace(original, tuple(steps))


def replay(trace: ReductionTrace) -> QuiddityCycle:
    """Re-apply every recorded step from the original cycle; returns the terminal."""
    cur = trace.original
    for s in trace.steps:
        if cur != s.before:
            raise ValueError("trace is inconsistent")
        cur, flip = rewrite_step(cur, s.rule, s.position)
        if cur != s.after or flip != s.sign_flip:
            raise ValueError("trace is inconsistent")
    return cur


def replay_backwards(trace: ReductionTrace) -> QuiddityCycle:
    """Rebuild the original cycle from the terminal by inverse rewrites."""
    cur = trace.terminal
    for s in reversed(trace.steps):
        cur = unreduce(cur, s.rule, s.position, len(s.before), s.split)
    return cur
