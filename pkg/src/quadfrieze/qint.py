"""Exact arithmetic in imaginary quadratic fields Q(sqrt(d)) and their rings of integers.

Two coordinate systems are used.  :class:`QuadRat` stores ``x + y*sqrt(d)`` with
rational ``x, y``; :class:`QuadInt` stores ``a + b*w`` with integer ``a, b`` where
``w = sqrt(d)`` for ``d = 2, 3 (mod 4)`` and ``w = (1 + sqrt(d))/2`` for
``d = 1 (mod 4)``.  Nothing here ever touches floating point; magnitudes are
compared through :func:`abs_sq`.
"""

from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "FieldTag",
    "OmegaKind",
    "QuadInt",
    "QuadRat",
    "abs_sq",
    "field",
    "format_element",
    "is_integral",
    "parse_element",
    "small_elements",
]


class OmegaKind(enum.Enum):
    SQRT = "sqrt"
    HALF_INTEGRAL = "half"


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


@dataclass(frozen=True)
class FieldTag:
    """The field Q(sqrt(d)) for a square-free ``d < 0``."""

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise TypeError(f"d must be an int, got {self.d!r}")
        if self.d >= 0:
            raise ValueError(f"only imaginary quadratic fields are supported (d < 0), got d={self.d}")
        if not _is_squarefree(self.d):
            raise ValueError(f"d={self.d} is not square-free")

    @property
    def omega_kind(self) -> OmegaKind:
        return OmegaKind.HALF_INTEGRAL if self.d % 4 == 1 else OmegaKind.SQRT

    @property
    def disc(self) -> int:
        """Fundamental discriminant."""
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def omega_trace(self) -> int:
        return 1 if self.omega_kind is OmegaKind.HALF_INTEGRAL else 0

    @property
    def omega_norm(self) -> int:
        return (1 - self.d) // 4 if self.omega_kind is OmegaKind.HALF_INTEGRAL else -self.d

    @property
    def is_exceptional(self) -> bool:
        """True when O_d has non-integral elements of absolute value < 2."""
        return self.d in (-1, -2, -3, -7, -11)

    def omega(self) -> QuadInt:
        return QuadInt(0, 1, self)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


@functools.lru_cache(maxsize=None)
def field(d: int) -> FieldTag:
    return FieldTag(d)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a number here")
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot convert {v!r} to an exact rational")


def _join_tags(s: FieldTag | None, o: FieldTag | None) -> FieldTag | None:
    if s is None:
        return o
    if o is None or o == s:
        return s
    raise ValueError(f"field mismatch: {s} vs {o}")


class QuadRat:
    """``x + y*sqrt(d)`` with exact rational coordinates.

    ``tag=None`` denotes a plain rational number (``y`` must be 0).  Rationals
    mix freely with elements of any field; two different fields do not.
    """

    __slots__ = ("x", "y", "tag")

    def __init__(self, x=0, y=0, tag: FieldTag | None = None):
        x = _frac(x)
        y = _frac(y)
        if tag is None and y != 0:
            raise ValueError("a non-zero sqrt(d) coordinate needs a FieldTag")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    def __reduce__(self):
        return (QuadRat, (self.x, self.y, self.tag))

    @classmethod
    def coerce(cls, v, tag: FieldTag | None = None) -> QuadRat:
        if isinstance(v, QuadRat):
            return v
        if isinstance(v, QuadInt):
            return v.to_rat()
        return cls(_frac(v), 0, tag)

    @property
    def d(self) -> int | None:
        return None if self.tag is None else self.tag.d

    def _other(self, o):
        if isinstance(o, QuadRat):
            return o
        if isinstance(o, QuadInt):
            return o.to_rat()
        if isinstance(o, (int, Fraction)) and not isinstance(o, bool):
            return QuadRat(o, 0, None)
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return QuadRat(self.x + o.x, self.y + o.y, _join_tags(self.tag, o.tag))

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.x, -self.y, self.tag)

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return QuadRat(self.x - o.x, self.y - o.y, _join_tags(self.tag, o.tag))

    def __rsub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        tag = _join_tags(self.tag, o.tag)
        d = 0 if tag is None else tag.d
        return QuadRat(self.x * o.x + d * self.y * o.y, self.x * o.y + self.y * o.x, tag)

    __rmul__ = __mul__

    def conj(self) -> QuadRat:
        return QuadRat(self.x, -self.y, self.tag)

    def norm(self) -> Fraction:
        d = 0 if self.tag is None else self.tag.d
        return self.x * self.x - d * self.y * self.y

    def __truediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        num = self * o.conj()
        return QuadRat(num.x / n, num.y / n, num.tag)

    def __rtruediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadRat(1, 0, self.tag) / (self ** (-k))
        result = QuadRat(1, 0, self.tag)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        if self.x != o.x or self.y != o.y:
            return False
        return self.y == 0 or self.tag == o.tag

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.tag.d))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def is_rational(self) -> bool:
        return self.y == 0

    def is_rational_integer(self) -> bool:
        return self.y == 0 and self.x.denominator == 1

    def __repr__(self):
        return f"QuadRat({self.x}, {self.y}, d={self.d})"

    def __str__(self):
        return format_element(self)


@dataclass(frozen=True)
class QuadInt:
    """``a + b*w`` in the ring of integers O_d."""

    a: int
    b: int
    tag: FieldTag

    def to_rat(self) -> QuadRat:
        if self.tag.omega_kind is OmegaKind.HALF_INTEGRAL:
            return QuadRat(self.a + Fraction(self.b, 2), Fraction(self.b, 2), self.tag)
        return QuadRat(self.a, self.b, self.tag)

    @classmethod
    def from_rat(cls, z: QuadRat, tag: FieldTag | None = None) -> QuadInt:
        ok, coords = is_integral(z, tag)
        if not ok:
            raise ValueError(f"{z!r} is not in the ring of integers")
        return coords

    def _other(self, o):
        if isinstance(o, QuadInt):
            if o.tag != self.tag:
                raise ValueError(f"field mismatch: {self.tag} vs {o.tag}")
            return o
        if isinstance(o, int) and not isinstance(o, bool):
            return QuadInt(o, 0, self.tag)
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return QuadInt(self.a + o.a, self.b + o.b, self.tag)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.tag)

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return QuadInt(self.a - o.a, self.b - o.b, self.tag)

    def __rsub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        # w^2 = t*w - n
        t, n = self.tag.omega_trace, self.tag.omega_norm
        bb = self.b * o.b
        return QuadInt(self.a * o.a - n * bb, self.a * o.b + self.b * o.a + t * bb, self.tag)

    __rmul__ = __mul__

    def conj(self) -> QuadInt:
        return QuadInt(self.a + self.tag.omega_trace * self.b, -self.b, self.tag)

    def norm(self) -> int:
        t, n = self.tag.omega_trace, self.tag.omega_norm
        return self.a * self.a + t * self.a * self.b + n * self.b * self.b

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        w = "w" if abs(self.b) == 1 else f"{abs(self.b)}*w"
        if self.a == 0:
            return w if self.b > 0 else f"-{w}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{w}"


def is_integral(z: QuadRat, tag: FieldTag | None = None) -> tuple[bool, QuadInt | None]:
    """Whether ``z`` lies in O_d; on success also return its ``(a, b)`` w-coordinates.

    A rational ``z`` needs a ``tag`` to produce coordinates; without one only the
    boolean is meaningful (and the coordinates are ``None``).
    """
    z = QuadRat.coerce(z)
    tag = z.tag or tag
    if tag is None:
        return (z.x.denominator == 1, None)
    if tag.omega_kind is OmegaKind.HALF_INTEGRAL:
        b = 2 * z.y
        if b.denominator != 1:
            return (False, None)
        a = z.x - b / 2
        if a.denominator != 1:
            return (False, None)
        return (True, QuadInt(int(a), int(b), tag))
    if z.x.denominator != 1 or z.y.denominator != 1:
        return (False, None)
    return (True, QuadInt(int(z.x), int(z.y), tag))


def abs_sq(z) -> Fraction:
    """|z|^2 = z * conj(z), exact."""
    if isinstance(z, QuadInt):
        return Fraction(z.norm())
    return QuadRat.coerce(z).norm()


def small_elements(tag: FieldTag | None, bound_sq) -> list[QuadInt] | list[int]:
    """All ring elements with ``abs_sq < bound_sq``.

    Ordered by ``abs_sq`` then by ``(a, b)``.  With ``tag=None`` the ring is Z and
    plain ints are returned.
    """
    bound_sq = _frac(bound_sq)
    if bound_sq <= 0:
        raise ValueError("bound_sq must be positive")
    if tag is None:
        r = math.isqrt(math.ceil(bound_sq))
        out = [a for a in range(-r, r + 1) if a * a < bound_sq]
        return sorted(out, key=lambda a: (a * a, a))
    t, n = tag.omega_trace, tag.omega_norm
    # abs_sq(a + b w) = (a + t b/2)^2 + (|disc|/4) b^2
    disc = -tag.disc
    bmax = math.isqrt(math.ceil(4 * bound_sq / disc)) + 1
    out = []
    for b in range(-bmax, bmax + 1):
        rest = bound_sq - Fraction(disc * b * b, 4)
        if rest <= 0:
            continue
        r = math.isqrt(math.ceil(rest)) + 1
        centre = -((t * b) // 2)
        for a in range(centre - r - 1, centre + r + 2):
            if a * a + t * a * b + n * b * b < bound_sq:
                out.append((a, b))
    out.sort(key=lambda ab: (ab[0] ** 2 + t * ab[0] * ab[1] + n * ab[1] ** 2, ab[0], ab[1]))
    return [QuadInt(a, b, tag) for a, b in out]


def format_element(z) -> str:
    """Canonical text: ``p/q`` for rationals, ``a+b*w`` for integral elements,
    ``x+y*sqrt(d)`` otherwise."""
    if isinstance(z, QuadInt):
        return str(z)
    z = QuadRat.coerce(z)
    if z.y == 0:
        return str(z.x)
    ok, c = is_integral(z)
    if ok:
        return str(c)
    y = z.y
    sign = "-" if y < 0 else "+"
    return f"{z.x}{sign}{abs(y)}*sqrt({z.tag.d})"


_SQRT_RE = re.compile(r"sqrt\(\s*(-?\d+)\s*\)")
_TERM_RE = re.compile(r"([+-]?)([^+-]*)")


def parse_element(text: str, tag: FieldTag | None = None) -> QuadRat:
    """Parse the canonical forms produced by :func:`format_element`.

    Also accepts looser spellings such as ``"w"``, ``"-2w"`` or ``"1/2*sqrt(-3)"``.
    Parenthesised expressions are not supported.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    found = {int(m) for m in _SQRT_RE.findall(s)}
    if found:
        if len(found) > 1:
            raise ValueError(f"mixed square roots in {text!r}")
        (d,) = found
        if tag is None:
            tag = field(d)
        elif tag.d != d:
            raise ValueError(f"{text!r} does not live in {tag}")
        s = _SQRT_RE.sub("s", s)
    total = QuadRat(0, 0, tag if tag is not None and ("w" in s or "s" in s) else None)
    pos = 0
    if s[0] not in "+-":
        s = "+" + s
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        sign, body = m.group(1), m.group(2)
        if not sign or not body:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        unit = None
        if body.endswith("w") or body.endswith("s"):
            unit = body[-1]
            body = body[:-1].rstrip("*")
        coef = _frac(body) if body else Fraction(1)
        if sign == "-":
            coef = -coef
        if unit is None:
            total = total + coef
        elif tag is None:
            raise ValueError(f"{text!r} mentions w but no field was given")
        elif unit == "w":
            total = total + coef * tag.omega().to_rat()
        else:
            total = total + QuadRat(0, coef, tag)
    return total
