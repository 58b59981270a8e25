"""Exact nonnegative dyadic rationals k / 2^n.

All measure coefficients, capacities and flows in this package are dyadic,
and every operation here is exact: numerators are Python integers (arbitrary
precision, so there is no overflow path), and results are kept in the unique
canonical form where the numerator is odd or zero whenever the exponent is
positive.

Negative values are excluded from the type itself; subtraction below zero
raises :class:`errors.NegativeResult`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import NegativeResult, ParseError, PrecisionLoss


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """A nonnegative dyadic rational, value = num / 2**exp, in canonical form."""

    num: int
    exp: int

    def __post_init__(self):
        if self.num < 0:
            raise NegativeResult("dyadic value would be negative: %d/2^%d"
                                 % (self.num, self.exp))
        if self.exp < 0:
            raise ValueError("exponent must be nonnegative")
        num, exp = self.num, self.exp
        if num == 0:
            exp = 0
        else:
            while exp > 0 and num % 2 == 0:
                num //= 2
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_int(k: int) -> "Dyadic":
        return Dyadic(k, 0)

    @staticmethod
    def from_ratio(k: int, n: int) -> "Dyadic":
        """k / 2**n, canonicalized."""
        return Dyadic(k, n)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        return Dyadic(self.num * (1 << (e - self.exp))
                      + other.num * (1 << (e - other.exp)), e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        a = self.num * (1 << (e - self.exp))
        b = other.num * (1 << (e - other.exp))
        if a < b:
            raise NegativeResult("%s - %s is negative" % (self, other))
        return Dyadic(a - b, e)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.num * other.num, self.exp + other.exp)

    # -- order ----------------------------------------------------------

    def compare(self, other: "Dyadic") -> int:
        """-1, 0 or 1 as self <, =, > other (exact)."""
        e = max(self.exp, other.exp)
        a = self.num * (1 << (e - self.exp))
        b = other.num * (1 << (e - other.exp))
        return (a > b) - (a < b)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.compare(other) < 0

    def is_zero(self) -> bool:
        return self.num == 0

    # -- scaling --------------------------------------------------------

    def rescale(self, n: int) -> int:
        """Return self * 2**n as an exact integer; requires exp <= n."""
        if self.exp > n:
            raise PrecisionLoss("cannot rescale %s to denominator 2^%d"
                                % (self, n))
        return self.num << (n - self.exp)

    # -- text form ------------------------------------------------------

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return "%d/2^%d" % (self.num, self.exp)

    def __repr__(self) -> str:
        return "Dyadic(%s)" % self


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)

# parse-time ceiling on exponents: generous for any realistic depth, while
# keeping hostile inputs from forcing astronomically wide integer shifts
MAX_PARSED_EXPONENT = 10_000


def parse_dyadic(text: str) -> Dyadic:
    """Parse the textual form "k/2^n" or the integer shorthand "k".

    Round-trips exactly with str(): parse_dyadic(str(d)) == d.
    """
    text = text.strip()
    try:
        if "/" in text:
            num_part, den_part = text.split("/", 1)
            if not den_part.startswith("2^"):
                raise ValueError
            exp = int(den_part[2:])
            if exp > MAX_PARSED_EXPONENT:
                raise ParseError("exponent %d too large" % exp)
            return Dyadic(int(num_part), exp)
        return Dyadic(int(text), 0)
    except (ValueError, NegativeResult):
        raise ParseError("not a dyadic rational: %r" % text)
