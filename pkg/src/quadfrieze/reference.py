"""Reference values from the literature and a checker that replays them.

Used by the ``verify-paper`` command and by the acceptance tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .eta import QuiddityCycle, is_quiddity_cycle
from .frieze import FriezeClass, classify, from_quiddity, validate
from .qint import QuadRat, field

__all__ = [
    "CHECKS",
    "CheckResult",
    "EXCEPTIONAL_D",
    "HEEGNER_D",
    "d11_display",
    "d11_expected_rows",
    "exceptional_cycles",
    "run_checks",
]

EXCEPTIONAL_D = (-1, -2, -3, -7, -11)
HEEGNER_D = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

# d = -13: alpha = (-2 + 5*tau) / 47 with tau = sqrt(-13)
D13 = -13
ALPHA_13 = (Fraction(-2, 47), Fraction(5, 47))
NORM_47_6 = 10779215329
FIRST_IDENTITY = (2969, 0, 0, 0, 0, 12400457, 5900521)
SECOND_IDENTITY = (-4689, 0, 0, 0, 0, -339167, -1215601)


def exceptional_cycles() -> dict[int, QuiddityCycle]:
    """One quiddity cycle with non-integral entries for each exceptional d."""
    out = {}
    for d in EXCEPTIONAL_D:
        tag = field(d)
        w = tag.omega().to_rat()
        wb = w.conj()
        if d == -1:
            entries = [1 + w, 1 - w] * 2
        elif d == -3:
            entries = [w, 2 * wb] * 2
        elif d == -11:
            entries = [w, wb] * 3
        else:
            entries = [w, wb] * 2
        out[d] = QuiddityCycle(entries, tag)
    return out


def d11_display() -> QuiddityCycle:
    return exceptional_cycles()[-11]


def d11_expected_rows() -> list[list[QuadRat]]:
    """Rows ``0 1 w 2 w 1 0`` alternating with their conjugates."""
    w = field(-11).omega().to_rat()
    rows = []
    for i in range(6):
        z = w if i % 2 == 0 else w.conj()
        rows.append([QuadRat(0), QuadRat(1), z, QuadRat(2), z, QuadRat(1), QuadRat(0)])
    return rows


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check_cycles() -> CheckResult:
    bad = []
    for d, cyc in exceptional_cycles().items():
        if not is_quiddity_cycle(cyc):
            bad.append(f"{d}: not a quiddity cycle")
            continue
        f = from_quiddity(cyc)
        if not validate(f).ok or classify(f) is not FriezeClass.NON_INTEGRAL:
            bad.append(f"{d}: frieze fails")
    return CheckResult("exceptional quiddity cycles", not bad, "; ".join(bad) or "5 cycles, 5 non-integral friezes")


def _check_d11() -> CheckResult:
    f = from_quiddity(d11_display())
    w = field(-11).omega().to_rat()
    rows_ok = [[f.entry(i, i + k) for k in range(7)] for i in range(6)] == d11_expected_rows()
    prod_ok = w * w.conj() == 3
    return CheckResult("d=-11 frieze display", rows_ok and prod_ok, f"rows match: {rows_ok}, w*conj(w) = 3: {prod_ok}")


def _check_d13() -> CheckResult:
    from .orders import (
        IdealHNF,
        class_number,
        eval_poly,
        factor_principal,
        find_infinite_unit,
        is_principal,
        units,
    )

    tag = field(D13)
    tau = QuadRat(0, 1, tag)
    alpha = QuadRat(*ALPHA_13, tag)
    p7 = IdealHNF.generated_by(tag, [7, 1 + tau])
    q47 = IdealHNF.generated_by(tag, [47, 38 + tau])
    fails = []
    fac = factor_principal(alpha, tag)
    if fac.factors != ((p7, 1), (q47, -1)):
        fails.append(f"factorization {fac}")
    if class_number(tag) != 2:
        fails.append("class number")
    us = units(tag)
    g1, g2 = is_principal(p7**2), is_principal(q47**2)
    if g1 is None or not any(g1 == e * (6 - tau) for e in us):
        fails.append("generator of p^2")
    if g2 is None or not any(g2 == e * (-34 + 9 * tau) for e in us):
        fails.append("generator of q^2")
    if is_principal(p7) is not None:
        fails.append("p is principal")
    cert = find_infinite_unit(alpha, tag)
    if not (cert.verify() and cert.k == 3 and cert.inverse == QuadRat(Fraction(68102, NORM_47_6), Fraction(-21735, NORM_47_6), tag)):
        fails.append("unit certificate")
    if eval_poly(FIRST_IDENTITY, alpha) != QuadRat(-68102, 21735, tag):
        fails.append("first identity")
    if eval_poly(SECOND_IDENTITY, alpha) != QuadRat(Fraction(-68102, NORM_47_6), Fraction(21735, NORM_47_6), tag):
        fails.append("second identity")
    if not (68102**2 + 13 * 21735**2 == 47**6 == NORM_47_6):
        fails.append("norm identity")
    return CheckResult("d=-13 unit example", not fails, "; ".join(fails) or "k = 3, (1/gamma2)^3 = (68102-21735*tau)/47^6")


def _check_heegner() -> CheckResult:
    from sympy import factorint

    from .orders import class_number

    ones = tuple(
        d for d in range(-1, -201, -1) if all(e == 1 for e in factorint(-d).values()) and class_number(d) == 1
    )
    return CheckResult("class number one in [-200, -1]", ones == HEEGNER_D, str(ones))


CHECKS: tuple[Callable[[], CheckResult], ...] = (_check_cycles, _check_d11, _check_d13, _check_heegner)


def run_checks() -> list[CheckResult]:
    out = []
    for chk in CHECKS:
        try:
            out.append(chk())
        except Exception as exc:  # a crash is a failed check, reported like one
            out.append(CheckResult(chk.__name__.lstrip("_"), False, f"{type(exc).__name__}: {exc}"))
    return out
