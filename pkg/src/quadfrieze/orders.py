"""Ideals, class numbers and unit certificates in imaginary quadratic fields.

Ideals of O_K are rank-2 lattices in w-coordinates, kept in Hermite normal
form ``{(a, 0), (b, c)}`` (``a, c > 0``, ``0 <= b < a``) and scaled by ``1/den``
for fractional ideals.  The non-maximal ring Z[alpha] is never given a
lattice of its own; membership is decided for the finitely generated pieces
``Z + Z alpha + ... + Z alpha^N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .qint import FieldTag, QuadInt, QuadRat, field, format_element, is_integral, small_elements

__all__ = [
    "BudgetExceeded",
    "FactoredIdeal",
    "IdealHNF",
    "NoDenominator",
    "NormTooLargeToFactor",
    "NotCoprime",
    "UnitCertificate",
    "bezout",
    "class_number",
    "factor_principal",
    "find_infinite_unit",
    "is_principal",
    "primes_above",
    "reduced_forms",
    "zalpha_membership",
]

TRIAL_DIVISION_BUDGET = 10**7


class NormTooLargeToFactor(ValueError):
    pass


class NotCoprime(ValueError):
    pass


class NoDenominator(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial or {}


# -- integer lattice helpers ---------------------------------------------------


def echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-echelon form of an integer matrix with two columns.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ rows == H``.  ``H`` has at
    most two non-zero rows, first ``(g0, s)`` then ``(0, g1)``, with ``g0, g1 >= 0``;
    when a column is entirely zero its pivot row is absent.
    """
    m = len(rows)
    H = [list(map(int, r)) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def combine(i, j, col):
        # gcd step on rows i, j in column col: row i gets the gcd, row j gets 0
        x, y = H[i][col], H[j][col]
        g, s, t = _xgcd(x, y)
        if g == 0:
            return
        xg, yg = x // g, y // g
        Hi = [s * a + t * b for a, b in zip(H[i], H[j])]
        Hj = [-yg * a + xg * b for a, b in zip(H[i], H[j])]
        Ui = [s * a + t * b for a, b in zip(U[i], U[j])]
        Uj = [-yg * a + xg * b for a, b in zip(U[i], U[j])]
        H[i], H[j], U[i], U[j] = Hi, Hj, Ui, Uj

    pivots = []
    r = 0
    for col in range(2):
        piv = next((i for i in range(r, m) if H[i][col] != 0), None)
        if piv is None:
            continue
        H[r], H[piv], U[r], U[piv] = H[piv], H[r], U[piv], U[r]
        for j in range(r + 1, m):
            if H[j][col]:
                combine(r, j, col)
        if H[r][col] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        pivots.append((r, col))
        r += 1
    # reduce the entry above the second pivot
    if len(pivots) == 2:
        (r0, c0), (r1, c1) = pivots
        q = H[r0][c1] // H[r1][c1]
        H[r0] = [a - q * b for a, b in zip(H[r0], H[r1])]
        U[r0] = [a - q * b for a, b in zip(U[r0], U[r1])]
    return H, U


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _rank(H) -> int:
    return sum(1 for r in H if r[0] or r[1])


def solve_integer(rows: Sequence[Sequence[int]], target: Sequence[int]):
    """Integer ``c`` with ``sum c_i rows_i == target`` plus a basis of the kernel,
    or ``(None, kernel)`` when no solution exists."""
    H, U = echelon(rows)
    k = _rank(H)
    kernel = U[k:]
    coeffs = [0] * k
    rest = list(target)
    for i in range(k):
        col = 0 if H[i][0] else 1
        if rest[col] % H[i][col]:
            return None, kernel
        coeffs[i] = rest[col] // H[i][col]
        rest = [a - coeffs[i] * b for a, b in zip(rest, H[i])]
    if any(rest):
        return None, kernel
    sol = [sum(coeffs[i] * U[i][j] for i in range(k)) for j in range(len(rows))]
    return sol, kernel


def _size_reduce(v: list[int], kernel: list[list[int]]) -> list[int]:
    """Make ``v`` short modulo the kernel lattice (LLL basis + nearest plane)."""
    if not kernel:
        return v
    basis = DomainMatrix([[ZZ(x) for x in r] for r in kernel], (len(kernel), len(v)), ZZ).lll().to_list()
    basis = [[int(x) for x in r] for r in basis]
    # Gram-Schmidt over Q
    gs: list[list[Fraction]] = []
    for b in basis:
        w = [Fraction(x) for x in b]
        for g in gs:
            mu = sum(x * y for x, y in zip(w, g)) / sum(y * y for y in g)
            w = [x - mu * y for x, y in zip(w, g)]
        gs.append(w)
    v = list(v)
    for b, g in zip(reversed(basis), reversed(gs)):
        mu = sum(x * y for x, y in zip(v, g)) / sum(y * y for y in g)
        k = round(mu)
        if k:
            v = [x - k * y for x, y in zip(v, b)]
    return v


# -- ideals --------------------------------------------------------------------


def _wcoords(z, tag: FieldTag) -> tuple[Fraction, Fraction]:
    z = QuadRat.coerce(z, tag)
    if tag.omega_trace:
        b = 2 * z.y
        return z.x - b / 2, b
    return z.x, z.y


def _from_w(a, b, tag: FieldTag) -> QuadRat:
    return QuadRat(a) + Fraction(b) * tag.omega().to_rat()


@dataclass(frozen=True)
class IdealHNF:
    """The fractional ideal ``(1/den) * (Z a + Z (b + c w))``."""

    tag: FieldTag
    a: int
    b: int
    c: int
    den: int = 1

    @classmethod
    def generated_by(cls, tag: FieldTag, gens: Sequence) -> IdealHNF:
        """The O_K-ideal generated by field elements ``gens``."""
        gens = [QuadRat.coerce(g, tag) for g in gens]
        w = tag.omega().to_rat()
        vecs = []
        for g in gens:
            vecs.append(_wcoords(g, tag))
            vecs.append(_wcoords(g * w, tag))
        den = reduce(math.lcm, (x.denominator for v in vecs for x in v), 1)
        ints = [(int(y * den), int(x * den)) for x, y in vecs]  # pivot on w first
        H, _ = echelon(ints)
        if _rank(H) < 2:
            raise ValueError("the zero ideal has no HNF")
        c, b = H[0]
        a = H[1][1]
        return cls._normal(tag, a, b % a, c, den)

    @classmethod
    def _normal(cls, tag, a, b, c, den) -> IdealHNF:
        g = math.gcd(math.gcd(a, b), math.gcd(c, den))
        return cls(tag, a // g, (b // g) % (a // g), c // g, den // g)

    @classmethod
    def unit(cls, tag: FieldTag) -> IdealHNF:
        return cls(tag, 1, 0, 1)

    @property
    def basis(self) -> tuple[QuadRat, QuadRat]:
        return (
            _from_w(Fraction(self.a, self.den), 0, self.tag),
            _from_w(Fraction(self.b, self.den), Fraction(self.c, self.den), self.tag),
        )

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction:
        return Fraction(self.a * self.c, self.den**2)

    def contains(self, z) -> bool:
        x, y = _wcoords(z, self.tag)
        x, y = x * self.den, y * self.den
        if y.denominator != 1 or x.denominator != 1 or y % self.c:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    def is_module(self) -> bool:
        """Closed under multiplication by w, i.e. really an O_K-ideal."""
        w = self.tag.omega().to_rat()
        return all(self.contains(v * w) for v in self.basis)

    def __mul__(self, other: IdealHNF) -> IdealHNF:
        if other.tag != self.tag:
            raise ValueError("field mismatch")
        return IdealHNF.generated_by(self.tag, [x * y for x in self.basis for y in other.basis])

    def conj(self) -> IdealHNF:
        return IdealHNF.generated_by(self.tag, [v.conj() for v in self.basis])

    def inverse(self) -> IdealHNF:
        n = self.norm()
        return IdealHNF.generated_by(self.tag, [v.conj() / n for v in self.basis])

    def __pow__(self, k: int) -> IdealHNF:
        if k < 0:
            return self.inverse() ** (-k)
        out = IdealHNF.unit(self.tag)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        g2 = format_element(_from_w(self.b, self.c, self.tag))
        s = f"({self.a}, {g2})"
        return s if self.den == 1 else f"{s}/{self.den}"

    def two_generator_str(self) -> str:
        """Two-generator form written with ``sqrt(d)`` when ``w = sqrt(d)``."""
        if self.tag.omega_trace == 0 and self.c == 1 and self.den == 1:
            return f"({self.a}, {self.b}+tau)"
        return str(self)


def ideal_ops(op: str, *ideals: IdealHNF, k: int | None = None):
    """Dispatcher over ``mul``, ``pow``, ``inverse``, ``norm``, ``equals``."""
    if op == "mul":
        return reduce(lambda x, y: x * y, ideals)
    if op == "pow":
        return ideals[0] ** k
    if op == "inverse":
        return ideals[0].inverse()
    if op == "norm":
        return ideals[0].norm()
    if op == "equals":
        return all(i == ideals[0] for i in ideals)
    raise ValueError(f"unknown op {op!r}")


__all__.append("ideal_ops")


# -- primes and factorization --------------------------------------------------


def _trial_factor(n: int, budget: int = TRIAL_DIVISION_BUDGET) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p, steps = 2, 0
    while p * p <= n:
        steps += 1
        if steps > budget:
            raise NormTooLargeToFactor(f"trial division budget exhausted on {n}")
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def kronecker(D: int, p: int) -> int:
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: IdealHNF
    p: int
    kind: str  # split / inert / ramified
    e: int
    f: int


def primes_above(p: int, tag: FieldTag) -> list[PrimeIdeal]:
    """Prime ideals over the rational prime ``p``, sorted by HNF."""
    if p < 2 or _trial_factor(p) != {p: 1}:
        raise ValueError(f"{p} is not prime")
    t, n = tag.omega_trace, tag.omega_norm
    k = kronecker(tag.disc, p)
    if k == -1:
        return [PrimeIdeal(IdealHNF.generated_by(tag, [p]), p, "inert", 1, 2)]
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    ideals = sorted({IdealHNF.generated_by(tag, [p, _from_w(-r, 1, tag)]) for r in roots}, key=lambda i: (i.b, i.c))
    if k == 0:
        return [PrimeIdeal(ideals[0], p, "ramified", 2, 1)]
    return [PrimeIdeal(i, p, "split", 1, 1) for i in ideals]


def _valuation(z: QuadRat, P: IdealHNF, cap: int) -> int:
    v, power = 0, P
    while v < cap and power.contains(z):
        v += 1
        power = power * P
    return v


@dataclass(frozen=True)
class FactoredIdeal:
    tag: FieldTag
    factors: tuple[tuple[IdealHNF, int], ...]

    @property
    def positive(self):
        return tuple(f for f in self.factors if f[1] > 0)

    @property
    def negative(self):
        return tuple(f for f in self.factors if f[1] < 0)

    def product(self) -> IdealHNF:
        out = IdealHNF.unit(self.tag)
        for P, e in self.factors:
            out = out * P**e
        return out

    def __str__(self):
        if not self.factors:
            return "(1)"
        return " * ".join(f"{P.two_generator_str()}^{e}" for P, e in self.factors)


def factor_principal(alpha, tag: FieldTag, budget: int = TRIAL_DIVISION_BUDGET) -> FactoredIdeal:
    """Prime factorization of the fractional ideal ``(alpha)``."""
    alpha = QuadRat.coerce(alpha, tag)
    if alpha == 0:
        raise ValueError("(0) has no factorization")
    x, y = _wcoords(alpha, tag)
    m = math.lcm(x.denominator, y.denominator)
    beta = alpha * m
    nb = int(beta.norm())
    primes = set(_trial_factor(nb, budget)) | set(_trial_factor(m, budget))
    factors = []
    for p in sorted(primes):
        cap_b = _count(nb, p)
        cap_m = 2 * _count(m, p)
        for P in primes_above(p, tag):
            v = _valuation(beta, P.ideal, cap_b) - _valuation(QuadRat(m, 0, tag), P.ideal, cap_m)
            if v:
                factors.append((P.ideal, v))
    return FactoredIdeal(tag, tuple(factors))


def _count(n: int, p: int) -> int:
    k = 0
    while n and n % p == 0:
        n //= p
        k += 1
    return k


# -- class numbers and principal ideals -----------------------------------------


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced positive definite forms ``(a, b, c)`` with ``b^2 - 4ac = D``."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            out.append((a, b, c))
        a += 1
    return out


def class_number(tag: FieldTag | int) -> int:
    if isinstance(tag, int):
        tag = field(tag)
    return len(reduced_forms(tag.disc))


def _elements_of_norm(ideal: IdealHNF, target: int):
    """Elements of an integral ideal with norm exactly ``target``, sorted."""
    tag = ideal.tag
    t, n = tag.omega_trace, tag.omega_norm
    D = -tag.disc
    a, b, c = ideal.a, ideal.b, ideal.c
    ymax = math.isqrt(4 * target // D + 1) + 1
    out = []
    for j in range(-(ymax // c) - 1, ymax // c + 2):
        y = j * c
        # (x + t y / 2)^2 + D y^2 / 4 = target
        rem4 = 4 * target - D * y * y
        if rem4 < 0:
            continue
        r = math.isqrt(rem4)
        if r * r != rem4:
            continue
        for s2 in {r, -r}:
            if (s2 - t * y) % 2:
                continue
            x = (s2 - t * y) // 2
            if (x - j * b) % a == 0 and x * x + t * x * y + n * y * y == target:
                out.append((x, y))
    out.sort(key=lambda xy: (-xy[0], xy[1]))
    return [QuadInt(x, y, tag) for x, y in out]


def is_principal(ideal: IdealHNF) -> QuadRat | None:
    """A generator of an integral ideal, or None."""
    if not ideal.is_integral:
        scaled = IdealHNF._normal(ideal.tag, ideal.a, ideal.b, ideal.c, 1)
        g = is_principal(scaled)
        return None if g is None else g / ideal.den
    target = ideal.a * ideal.c
    for z in _elements_of_norm(ideal, target):
        return z.to_rat()
    return None


def units(tag: FieldTag) -> list[QuadRat]:
    return [q.to_rat() for q in small_elements(tag, 2) if q.norm() == 1]


__all__.append("units")


def bezout(g1, g2, tag: FieldTag | None = None) -> tuple[QuadRat, QuadRat]:
    """``(x, y)`` in O_K with ``x*g1 + y*g2 = 1``."""
    g1 = g1.to_rat() if isinstance(g1, QuadInt) else QuadRat.coerce(g1, tag)
    g2 = g2.to_rat() if isinstance(g2, QuadInt) else QuadRat.coerce(g2, tag)
    tag = tag or g1.tag or g2.tag
    if tag is None:
        g, s, t = _xgcd(int(g1.x), int(g2.x))
        if g != 1:
            raise NotCoprime(f"gcd({g1}, {g2}) = {g}")
        return QuadRat(s), QuadRat(t)
    w = tag.omega().to_rat()
    gens = [g1, g1 * w, g2, g2 * w]
    rows = []
    for z in gens:
        x, y = _wcoords(z, tag)
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError(f"{z} is not integral")
        rows.append((int(x), int(y)))
    sol, _ = solve_integer(rows, (1, 0))
    if sol is None:
        raise NotCoprime(f"({format_element(g1)}, {format_element(g2)}) is not the unit ideal")
    c0, c1, c2, c3 = sol
    x = _from_w(c0, c1, tag)
    y = _from_w(c2, c3, tag)
    assert x * g1 + y * g2 == 1
    return x, y


# -- Z[alpha] membership and unit certificates ---------------------------------


def _coords_sqrt(z: QuadRat) -> tuple[Fraction, Fraction]:
    return z.x, z.y


def zalpha_membership(x, alpha, n_max: int) -> list[int] | None:
    """Integer coefficients ``c`` with ``x = sum c_i alpha^i`` (degree <= n_max).

    The smallest degree that works is used; among the solutions of that degree
    a short one (modulo the integer relations among the powers) is returned.
    ``None`` only means no certificate up to ``n_max``.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    alpha = QuadRat.coerce(alpha)
    x = QuadRat.coerce(x, alpha.tag)
    powers = [QuadRat(1, 0, alpha.tag)]
    for N in range(n_max + 1):
        if N:
            powers.append(powers[-1] * alpha)
        vecs = [_coords_sqrt(p) for p in powers] + [_coords_sqrt(x)]
        den = reduce(math.lcm, (v.denominator for vec in vecs for v in vec), 1)
        rows = [(int(a * den), int(b * den)) for a, b in vecs[:-1]]
        target = (int(vecs[-1][0] * den), int(vecs[-1][1] * den))
        sol, kernel = solve_integer(rows, target)
        if sol is not None:
            sol = _size_reduce(sol, kernel)
            assert sum((c * p for c, p in zip(sol, powers)), QuadRat(0, 0, alpha.tag)) == x
            return sol
    return None


def eval_poly(coeffs: Sequence[int], alpha) -> QuadRat:
    alpha = QuadRat.coerce(alpha)
    out = QuadRat(0, 0, alpha.tag)
    for c in reversed(coeffs):
        out = out * alpha + c
    return out


__all__.append("eval_poly")


@dataclass(frozen=True)
class UnitCertificate:
    alpha: QuadRat
    h: int
    gamma1: QuadRat
    gamma2: QuadRat
    k: int
    unit: QuadRat
    inverse: QuadRat
    unit_poly: tuple[int, ...]
    inverse_poly: tuple[int, ...]

    @property
    def norm(self) -> Fraction:
        return self.unit.norm()

    def verify(self) -> bool:
        return (
            self.unit * self.inverse == 1
            and eval_poly(self.unit_poly, self.alpha) == self.unit
            and eval_poly(self.inverse_poly, self.alpha) == self.inverse
            and self.norm != 1
        )

    def to_json(self) -> dict:
        def el(z):
            return [str(z.x), str(z.y)]

        return {
            "d": self.alpha.d,
            "alpha": el(self.alpha),
            "h": self.h,
            "gamma1": el(self.gamma1),
            "gamma2": el(self.gamma2),
            "k": self.k,
            "unit": el(self.unit),
            "inverse": el(self.inverse),
            "unit_poly": [str(c) for c in self.unit_poly],
            "inverse_poly": [str(c) for c in self.inverse_poly],
            "norm": str(self.norm),
        }

    @classmethod
    def from_json(cls, data: dict) -> UnitCertificate:
        tag = None if data["d"] is None else field(data["d"])

        def el(v):
            x, y = Fraction(v[0]), Fraction(v[1])
            return QuadRat(x, y, tag if y or tag else None)

        return cls(
            el(data["alpha"]),
            data["h"],
            el(data["gamma1"]),
            el(data["gamma2"]),
            data["k"],
            el(data["unit"]),
            el(data["inverse"]),
            tuple(int(c) for c in data["unit_poly"]),
            tuple(int(c) for c in data["inverse_poly"]),
        )


def _poly_str(coeffs, var="alpha") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def certificate_lines(cert: UnitCertificate) -> list[str]:
    """Human-readable identities, one per line."""
    f = format_element
    return [
        f"alpha = {f(cert.alpha)}, h = {cert.h}",
        f"alpha^{cert.h} = ({f(cert.gamma1)}) / ({f(cert.gamma2)})",
        f"u = gamma2^{cert.k} = {f(cert.unit)} = {_poly_str(cert.unit_poly)}",
        f"u^-1 = {f(cert.inverse)} = {_poly_str(cert.inverse_poly)}",
        f"u * u^-1 = {f(cert.unit * cert.inverse)}",
        f"N(u) = {cert.norm}",
    ]


__all__.append("certificate_lines")


def _generator(ideal: IdealHNF) -> QuadRat:
    g = is_principal(ideal)
    if g is None:
        raise AssertionError(f"{ideal} should be principal after raising to the class number")
    return g


def find_infinite_unit(
    alpha, tag: FieldTag | None = None, power_budget: int = 12, n_max: int | None = None
) -> UnitCertificate:
    """Produce a unit of infinite order in Z[alpha] for non-integral ``alpha``.

    ``alpha^h = gamma1 / gamma2`` with coprime integral ``gamma1, gamma2``; then
    ``1/gamma2`` lies in Z[alpha] * O_K and some power of ``gamma2`` (times a
    root of unity, or its conjugate) is a unit of Z[alpha] itself.
    """
    alpha = QuadRat.coerce(alpha, tag)
    tag = alpha.tag or tag
    if alpha.is_rational():
        if alpha.x.denominator == 1:
            raise NoDenominator(f"{alpha} is an integer")
        h = 1
        g1, g2 = QuadRat(alpha.x.numerator, 0, None), QuadRat(alpha.x.denominator, 0, None)
        candidates = [g2]
        unit_group = [QuadRat(1), QuadRat(-1)]
    else:
        if is_integral(alpha, tag)[0]:
            raise NoDenominator(f"{format_element(alpha)} lies in O_K")
        fac = factor_principal(alpha, tag)
        h = class_number(tag)
        pos = IdealHNF.unit(tag)
        neg = IdealHNF.unit(tag)
        for P, e in fac.factors:
            if e > 0:
                pos = pos * P ** (e * h)
            else:
                neg = neg * P ** (-e * h)
        g2 = _generator(neg)
        g1 = alpha**h * g2
        if not is_integral(g1, tag)[0]:
            raise AssertionError("alpha^h * gamma2 should be integral")
        bezout(g1, g2, tag)
        candidates = [g2, g2.conj()]
        unit_group = units(tag)
    n_max = n_max if n_max is not None else 2 * power_budget + 2
    tried = 0
    for k in range(1, power_budget + 1):
        for g in candidates:
            for eps in unit_group:
                u = eps * g**k
                tried += 1
                inv_poly = zalpha_membership(1 / u, alpha, n_max)
                if inv_poly is None:
                    continue
                u_poly = zalpha_membership(u, alpha, n_max)
                if u_poly is None:
                    continue
                cert = UnitCertificate(alpha, h, g1, g2, k, u, 1 / u, tuple(u_poly), tuple(inv_poly))
                assert cert.verify()
                return cert
    raise BudgetExceeded(
        f"no unit among gamma2^k, k <= {power_budget}, with degree <= {n_max}",
        {"h": h, "gamma1": g1, "gamma2": g2, "tried": tried},
    )
