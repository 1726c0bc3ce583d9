"""Rational points of the projective line and exact Moebius transformations."""

from __future__ import annotations

from fractions import Fraction

from .eps import RatLike, rat
from .errors import PreconditionError


class ProjPoint:
    """A point ``[a : b]`` with rational coordinates, normalized so that
    finite points are ``[a : 1]`` and the point at infinity is ``[1 : 0]``."""

    __slots__ = ("a", "b", "_h")

    def __init__(self, a: RatLike, b: RatLike):
        a, b = rat(a), rat(b)
        if a == 0 and b == 0:
            raise PreconditionError("[0 : 0] is not a projective point")
        if b == 0:
            a, b = Fraction(1), Fraction(0)
        else:
            a, b = a / b, Fraction(1)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_h", hash((a, b)))

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @staticmethod
    def finite(value: RatLike) -> "ProjPoint":
        return ProjPoint(rat(value), 1)

    @staticmethod
    def infinity() -> "ProjPoint":
        return ProjPoint(1, 0)

    @property
    def is_infinite(self) -> bool:
        return self.b == 0

    def affine(self) -> Fraction:
        if self.is_infinite:
            raise PreconditionError("the point at infinity has no affine coordinate")
        return self.a

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"ProjPoint({self.a}, {self.b})"

    def __str__(self):
        return "inf" if self.is_infinite else str(self.a)


INFINITY = ProjPoint.infinity()


def _linear_form_at(p: ProjPoint, q: ProjPoint) -> Fraction:
    """Value at q of the linear form vanishing at p (``b_p * a - a_p * b``)."""
    return p.b * q.a - p.a * q.b


class Mobius:
    """An invertible 2x2 rational matrix acting on the projective line."""

    __slots__ = ("m",)

    def __init__(self, m00: RatLike, m01: RatLike, m10: RatLike, m11: RatLike):
        entries = (rat(m00), rat(m01), rat(m10), rat(m11))
        if entries[0] * entries[3] - entries[1] * entries[2] == 0:
            raise PreconditionError("Moebius matrix must be invertible")
        object.__setattr__(self, "m", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Mobius is immutable")

    @staticmethod
    def identity() -> "Mobius":
        return Mobius(1, 0, 0, 1)

    def determinant(self) -> Fraction:
        a, b, c, d = self.m
        return a * d - b * c

    def apply(self, p: ProjPoint) -> ProjPoint:
        a, b, c, d = self.m
        return ProjPoint(a * p.a + b * p.b, c * p.a + d * p.b)

    def compose(self, other: "Mobius") -> "Mobius":
        """Matrix product self * other (apply ``other`` first)."""
        a, b, c, d = self.m
        e, f, g, h = other.m
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __mul__ = compose

    def inverse(self) -> "Mobius":
        a, b, c, d = self.m
        return Mobius(d, -b, -c, a)

    @staticmethod
    def sending_to_infty_zero_one(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> "Mobius":
        """The unique map with ``p1 -> inf``, ``p2 -> 0``, ``p3 -> 1``."""
        if p1 == p2 or p1 == p3 or p2 == p3:
            raise PreconditionError("the three points must be pairwise distinct")
        s1 = _linear_form_at(p1, p3)
        s2 = _linear_form_at(p2, p3)
        return Mobius(p2.b * s1, -p2.a * s1, p1.b * s2, -p1.a * s2)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        # projective equality: proportional matrices act identically
        a, b, c, d = self.m
        e, f, g, h = other.m
        return (a * f == b * e and a * g == c * e and a * h == d * e
                and b * g == c * f and b * h == d * f and c * h == d * g)

    def __hash__(self):
        a, b, c, d = self.m
        for pivot in (a, b, c, d):
            if pivot != 0:
                return hash((a / pivot, b / pivot, c / pivot, d / pivot))
        raise AssertionError("zero matrix")

    def __repr__(self):
        a, b, c, d = self.m
        return f"Mobius({a}, {b}, {c}, {d})"


def mobius_apply(m: Mobius, p: ProjPoint) -> ProjPoint:
    """Apply the transformation: ``[a:b] -> [m00 a + m01 b : m10 a + m11 b]``."""
    return m.apply(p)


def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> ProjPoint:
    """The cross-ratio ``((p1-p3)(p2-p4)) / ((p1-p4)(p2-p3))`` as a projective value.

    Differences are evaluated projectively (``pi - pj`` becomes the 2x2
    determinant ``a_i b_j - a_j b_i``), so points at infinity need no special
    casing.  Defined as long as at least three of the four points are
    pairwise distinct; with four distinct points the value is finite and
    different from 0 and 1.
    """
    pts = (p1, p2, p3, p4)
    distinct = len({p for p in pts})
    if distinct < 3:
        raise PreconditionError("cross-ratio needs at least three distinct points")

    def d(p: ProjPoint, q: ProjPoint) -> Fraction:
        return p.a * q.b - q.a * p.b

    num = d(p1, p3) * d(p2, p4)
    den = d(p1, p4) * d(p2, p3)
    return ProjPoint(num, den)
