"""Frieze patterns over imaginary quadratic integers, with the quadratic-order
tools (ideals, class numbers, unit certificates) that go with them."""

from .qint import FieldTag, QuadInt, QuadRat, abs_sq, field, is_integral, small_elements
from .eta import QuiddityCycle, is_quiddity_cycle, reduce_to_canonical, rewrite_step
from .frieze import FriezeClass, FriezePattern, classify, from_quiddity, validate

__version__ = "0.1.0"
