"""Exact scalars: arbitrary-precision rationals and first-order infinitesimals.

Rationals are plain :class:`fractions.Fraction` values (always in lowest
terms, positive denominator, exact arithmetic).  :class:`EpsNum` adjoins a
formal infinitesimal ``eps`` truncated at first order: values are
``const + eps_coeff * eps`` with ``eps^2 = 0``, ordered lexicographically,
which agrees with evaluation at any sufficiently small positive rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import InputParseError

RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, ``"p/q"`` string, or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputParseError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class EpsNum:
    """``const + eps_coeff * eps`` with ``eps`` a positive first-order infinitesimal.

    Products truncate the ``eps^2`` term to zero; comparison is lexicographic
    in ``(const, eps_coeff)``, so ``EpsNum(0, 1) > 0`` and constant terms
    dominate.
    """

    __slots__ = ("const", "eps_coeff")

    def __init__(self, const: RatLike = 0, eps_coeff: RatLike = 0):
        object.__setattr__(self, "const", rat(const))
        object.__setattr__(self, "eps_coeff", rat(eps_coeff))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("EpsNum is immutable")

    @staticmethod
    def coerce(value: "EpsNum | RatLike") -> "EpsNum":
        if isinstance(value, EpsNum):
            return value
        return EpsNum(rat(value), 0)

    @property
    def is_constant(self) -> bool:
        return self.eps_coeff == 0

    def _key(self):
        return (self.const, self.eps_coeff)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = EpsNum.coerce(other)
        return EpsNum(self.const + o.const, self.eps_coeff + o.eps_coeff)

    __radd__ = __add__

    def __neg__(self):
        return EpsNum(-self.const, -self.eps_coeff)

    def __sub__(self, other):
        return self + (-EpsNum.coerce(other))

    def __rsub__(self, other):
        return EpsNum.coerce(other) + (-self)

    def __mul__(self, other):
        o = EpsNum.coerce(other)
        return EpsNum(
            self.const * o.const,
            self.const * o.eps_coeff + self.eps_coeff * o.const,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, EpsNum):
            if not other.is_constant:
                raise ValueError("division only by nonzero constants")
            other = other.const
        d = rat(other)
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return EpsNum(self.const / d, self.eps_coeff / d)

    # -- order ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (EpsNum, int, Fraction)):
            return self._key() == EpsNum.coerce(other)._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < EpsNum.coerce(other)._key()

    def __le__(self, other):
        return self._key() <= EpsNum.coerce(other)._key()

    def __gt__(self, other):
        return self._key() > EpsNum.coerce(other)._key()

    def __ge__(self, other):
        return self._key() >= EpsNum.coerce(other)._key()

    def sign(self) -> int:
        """-1, 0 or +1 for evaluation at small positive eps."""
        if self.const != 0:
            return 1 if self.const > 0 else -1
        if self.eps_coeff != 0:
            return 1 if self.eps_coeff > 0 else -1
        return 0

    def evaluate(self, eps_value: RatLike) -> Fraction:
        return self.const + self.eps_coeff * rat(eps_value)

    def __repr__(self):
        return f"EpsNum({self.const!r}, {self.eps_coeff!r})"

    def __str__(self):
        if self.eps_coeff == 0:
            return str(self.const)
        eps_part = "eps" if self.eps_coeff == 1 else (
            "-eps" if self.eps_coeff == -1 else f"{self.eps_coeff}*eps"
        )
        if self.const == 0:
            return eps_part
        sign = "+" if self.eps_coeff > 0 else "-"
        mag = eps_part.lstrip("-")
        return f"{self.const} {sign} {mag}"


def eps_compare(u: EpsNum, v: EpsNum) -> int:
    """Lexicographic comparison; returns -1, 0 or +1."""
    ku, kv = u._key(), v._key()
    return (ku > kv) - (ku < kv)


#: the one formal infinitesimal
EPS = EpsNum(0, 1)

#: coefficient (1 + eps)/2 attached to branch divisors of the double covers
LOG_BRANCH_COEFF = EpsNum(Fraction(1, 2), Fraction(1, 2))

#: marked-point weight 1/4 + eps for the weighted-stability test
HASSETT_WEIGHT = EpsNum(Fraction(1, 4), 1)
