"""Frieze patterns of finite height over subrings of Q(sqrt(d)).

A pattern of height ``n`` is stored by its fundamental domain: rows
``i = 0 .. n+2``, each holding ``c[i, j]`` for ``j = i .. n+i+3``.  Everything else
follows from periodicity ``c[i+n+3, j+n+3] = c[i, j]``.  Friezes compare by
their anchored entries, so rotating the quiddity cycle gives a different frieze.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .eta import QuiddityCycle, is_quiddity_cycle
from .qint import FieldTag, QuadRat, abs_sq, field, format_element, is_integral, parse_element

__all__ = [
    "EvenHeight",
    "FriezeClass",
    "FriezePattern",
    "NotAQuiddityCycle",
    "PreconditionViolated",
    "SignLemmaReport",
    "ValidationReport",
    "check_sign_lemma",
    "classify",
    "classify_detail",
    "cycle_from_json",
    "cycle_to_json",
    "extract_quiddity",
    "from_quiddity",
    "frieze_from_json",
    "frieze_to_json",
    "pretty",
    "twist",
    "validate",
]


class NotAQuiddityCycle(ValueError):
    pass


class EvenHeight(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class FriezeClass(enum.Enum):
    CONWAY_COXETER = "ConwayCoxeter"
    TWISTED_CONWAY_COXETER = "TwistedConwayCoxeter"
    NON_INTEGRAL = "NonIntegral"
    CONTAINS_ZERO = "ContainsZero"
    OTHER_INTEGRAL = "OtherIntegral"


@dataclass(frozen=True)
class FriezePattern:
    tag: FieldTag | None
    height: int
    rows: tuple[tuple[QuadRat, ...], ...]

    def __post_init__(self):
        n = self.height
        if n < 0:
            raise ValueError("height must be >= 0")
        if len(self.rows) != n + 3 or any(len(r) != n + 4 for r in self.rows):
            raise ValueError(f"fundamental domain of a height-{n} frieze needs {n + 3} rows of {n + 4}")
        for i, r in enumerate(self.rows):
            if r[0] != 0 or r[1] != 1 or r[n + 2] != 1 or r[n + 3] != 0:
                raise ValueError(f"row {i} violates the 0, 1, ..., 1, 0 border")

    @property
    def period(self) -> int:
        return self.height + 3

    def entry(self, i: int, j: int) -> QuadRat:
        p = self.period
        i0 = i % p
        k = j - i
        if not 0 <= k <= self.height + 3:
            raise IndexError(f"c[{i},{j}] is outside the pattern")
        return self.rows[i0][k]

    def __getitem__(self, ij: tuple[int, int]) -> QuadRat:
        return self.entry(*ij)

    def interior(self) -> Iterator[tuple[int, int, QuadRat]]:
        """Entries c[i, j] with 2 <= j - i <= n + 1, over one period."""
        for i, row in enumerate(self.rows):
            for k in range(2, self.height + 2):
                yield i, i + k, row[k]

    def all_entries(self) -> Iterator[QuadRat]:
        for row in self.rows:
            yield from row

    def with_entry(self, i: int, j: int, value) -> FriezePattern:
        """Copy with one fundamental-domain entry replaced (no re-validation)."""
        rows = [list(r) for r in self.rows]
        rows[i % self.period][j - i] = QuadRat.coerce(value)
        return FriezePattern(self.tag, self.height, tuple(tuple(r) for r in rows))


def _cycle(c) -> QuiddityCycle:
    return c if isinstance(c, QuiddityCycle) else QuiddityCycle(c)


def from_quiddity(cycle) -> FriezePattern:
    """Build the frieze whose quiddity cycle is ``cycle`` (length n + 3)."""
    cycle = _cycle(cycle)
    m = len(cycle)
    if m < 3 or not is_quiddity_cycle(cycle):
        raise NotAQuiddityCycle(f"{cycle!r} is not a quiddity cycle of length >= 3")
    q = cycle.entries
    zero, one = QuadRat(0, 0, cycle.tag), QuadRat(1, 0, cycle.tag)
    rows = []
    for i in range(m):
        row = [zero, one]
        # c[i, j+1] = q[j-1] * c[i, j] - c[i, j-1]
        for j in range(i + 1, i + m):
            row.append(q[(j - 1) % m] * row[-1] - row[-2])
        rows.append(tuple(row))
    return FriezePattern(cycle.tag, m - 3, tuple(rows))


def extract_quiddity(frieze: FriezePattern) -> QuiddityCycle:
    return QuiddityCycle([r[2] for r in frieze.rows], frieze.tag)


@dataclass(frozen=True)
class ValidationReport:
    unimodular: bool
    tame: bool
    nonzero: bool
    glide: bool

    @property
    def ok(self) -> bool:
        return self.unimodular and self.tame and self.nonzero and self.glide


def _det3(m) -> object:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def validate(frieze: FriezePattern) -> ValidationReport:
    n, c = frieze.height, frieze.entry
    rng = range(frieze.period)
    unimodular = all(
        c(i, j) * c(i + 1, j + 1) - c(i, j + 1) * c(i + 1, j) == 1
        for i in rng
        for j in range(i + 1, n + i + 3)
    )
    tame = all(
        _det3([[c(i + r, j + s) for s in range(3)] for r in range(3)]) == 0
        for i in rng
        for j in range(i + 2, n + i + 2)
    )
    nonzero = all(v != 0 for _, _, v in frieze.interior())
    glide = all(c(i, j) == c(j, n + i + 3) for i in rng for j in range(i, n + i + 4))
    return ValidationReport(unimodular, tame, nonzero, glide)


def _negate_parity(frieze: FriezePattern, parity: int) -> FriezePattern:
    n = frieze.height
    rows = tuple(
        tuple(-v if 2 <= k <= n + 1 and k % 2 == parity else v for k, v in enumerate(row))
        for row in frieze.rows
    )
    return FriezePattern(frieze.tag, n, rows)


def twist(frieze: FriezePattern, parity: int = 0) -> FriezePattern:
    """Negate every second diagonal.

    ``parity=0`` negates the diagonals ``j - i`` even, i.e. the quiddity diagonal
    and every second one after it; this is the construction that turns a
    frieze of odd height into another frieze.  ``parity=1`` negates the other
    interior diagonals and is only offered so :func:`classify` can try both;
    its result is generally not a frieze.
    """
    if frieze.height % 2 == 0:
        raise EvenHeight(f"twisting needs odd height, got {frieze.height}")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    return _negate_parity(frieze, parity)


def _is_cc(frieze: FriezePattern) -> bool:
    return all(v.is_rational_integer() and v.x > 0 for _, _, v in frieze.interior())


def classify_detail(frieze: FriezePattern) -> tuple[FriezeClass, int | None]:
    """Class plus, for twisted friezes, the untwisting parity that worked."""
    interior = [v for _, _, v in frieze.interior()]
    if any(v == 0 for v in interior):
        return FriezeClass.CONTAINS_ZERO, None
    if not all(v.is_rational_integer() for v in interior):
        return FriezeClass.NON_INTEGRAL, None
    if all(v.x > 0 for v in interior):
        return FriezeClass.CONWAY_COXETER, None
    if frieze.height % 2 == 1:
        for parity in (0, 1):
            untwisted = twist(frieze, parity)
            if _is_cc(untwisted) and validate(untwisted).unimodular:
                return FriezeClass.TWISTED_CONWAY_COXETER, parity
    return FriezeClass.OTHER_INTEGRAL, None


def classify(frieze: FriezePattern) -> FriezeClass:
    return classify_detail(frieze)[0]


@dataclass(frozen=True)
class SignLemmaReport:
    adjacent_blocks: bool
    quiddity_products: bool
    constant_quiddity_sign: bool
    quiddity_sign: int

    @property
    def ok(self) -> bool:
        return self.adjacent_blocks and self.quiddity_products and self.constant_quiddity_sign


_HALF = Fraction(1, 2)


def check_sign_lemma(frieze: FriezePattern) -> SignLemmaReport:
    """Check the sign rules for real friezes whose entries all exceed 1/sqrt(2)
    in absolute value (tested as abs_sq > 1/2).

    (a) every adjacent 2x2 block has an even number of negative entries;
    (b) eps[i,i+2] eps[i+1,i+2] eps[i,i+l+1] eps[i+1,i+l+1] = 1 for 1 <= l <= n+1;
    (c) all quiddity entries share one sign.
    """
    n, c = frieze.height, frieze.entry
    for _, _, v in frieze.interior():
        if not v.is_rational():
            raise PreconditionViolated(f"entry {v} is not real")
        if abs_sq(v) <= _HALF:
            raise PreconditionViolated(f"entry {v} has |c|^2 <= 1/2")

    def eps(i, j):
        return 1 if c(i, j).x > 0 else -1

    rng = range(frieze.period)
    a = all(
        eps(i, j) * eps(i + 1, j) * eps(i, j + 1) * eps(i + 1, j + 1) == 1
        for i in rng
        for j in range(i + 2, n + i + 2)
    )
    b = all(
        eps(i, i + 2) * eps(i + 1, i + 2) * eps(i, i + l + 1) * eps(i + 1, i + l + 1) == 1
        for i in rng
        for l in range(1, n + 2)
    )
    signs = {eps(i, i + 2) for i in rng}
    return SignLemmaReport(a, b, len(signs) == 1, signs.pop() if len(signs) == 1 else 0)


# -- text and JSON -----------------------------------------------------------


def _omega_symbol(z: QuadRat, tag: FieldTag | None) -> str:
    if tag is not None and tag.is_exceptional and not z.is_rational():
        w = tag.omega().to_rat()
        if z == w:
            return "ω"
        if z == w.conj():
            return "ω̄"
        if z == -w:
            return "-ω"
        if z == -w.conj():
            return "-ω̄"
    return format_element(z)


def pretty(frieze: FriezePattern, rows: int | None = None) -> str:
    """Staircase layout: row ``i`` is indented by ``i`` cells and reads
    ``0 1 c[i,i+2] ... c[i,n+i+1] 1 0``."""
    rows = frieze.period if rows is None else rows
    cells = [[_omega_symbol(frieze.entry(i, i + k), frieze.tag) for k in range(frieze.height + 4)] for i in range(rows)]
    width = max(len(s) for r in cells for s in r)
    lines = []
    for i, r in enumerate(cells):
        lines.append((" " * (width + 1)) * i + " ".join(s.rjust(width) for s in r))
    return "\n".join(line.rstrip() for line in lines)


def _coords(z: QuadRat, tag: FieldTag | None) -> list[str]:
    """w-basis coordinates as exact decimal/rational strings."""
    if tag is None:
        return [str(z.x), "0"]
    w_kind_half = tag.omega_trace == 1
    b = 2 * z.y if w_kind_half else z.y
    a = z.x - b / 2 if w_kind_half else z.x
    return [str(a), str(b)]


def cycle_to_json(cycle) -> list[list[str]]:
    cycle = _cycle(cycle)
    return [_coords(e, cycle.tag) for e in cycle]


def cycle_from_json(data, d: int | None) -> QuiddityCycle:
    tag = None if d is None else field(d)
    out = []
    for a, b in data:
        a, b = Fraction(a), Fraction(b)
        if tag is None:
            if b != 0:
                raise ValueError("non-rational entry without a field")
            out.append(QuadRat(a))
        else:
            out.append(QuadRat(a) + b * tag.omega().to_rat())
    return QuiddityCycle(out, tag)


def frieze_to_json(frieze: FriezePattern, cls: FriezeClass | None = None) -> dict:
    return {
        "d": None if frieze.tag is None else frieze.tag.d,
        "height": frieze.height,
        "quiddity": cycle_to_json(extract_quiddity(frieze)),
        "class": (cls or classify(frieze)).value,
    }


def frieze_from_json(data: dict) -> FriezePattern:
    f = from_quiddity(cycle_from_json(data["quiddity"], data.get("d")))
    if f.height != data["height"]:
        raise ValueError("height does not match the quiddity length")
    return f


def parse_cycle(text: str, d: int | None = None) -> QuiddityCycle:
    """Comma- or space-separated entries, e.g. ``"w, 1-w, w, 1-w"``."""
    tag = None if d is None else field(d)
    parts = [p for p in text.replace(",", " ").split() if p]
    return QuiddityCycle([parse_element(p, tag) for p in parts], tag)


__all__.append("parse_cycle")


def integral_coords(z: QuadRat, tag: FieldTag | None):
    """``(a, b)`` with ``z = a + b w``; raises if ``z`` is not integral."""
    if tag is None:
        if not z.is_rational_integer():
            raise ValueError(f"{z} is not a rational integer")
        return int(z.x), 0
    ok, q = is_integral(z, tag)
    if not ok:
        raise ValueError(f"{z} is not integral")
    return q.a, q.b
