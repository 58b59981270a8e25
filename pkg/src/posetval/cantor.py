"""Finite-depth slices of the full binary tree, and the unit-interval bridge.

Binary words under the prefix order model the space of finite and infinite
bit sequences at a working depth: an infinite word is always handled through
a truncation, since every operation in the package touches finitely many
bits. A word is either genuinely finite or flagged as the truncation of an
infinite word; only finite words approximate others (u is way below v iff u
is finite and a prefix of v).

The bridge to [0, 1] is the binary-expansion value of a word together with
its lower adjoint: the map sending r to the lexicographically least infinite
word whose value reaches r. For dyadic r > 0 that word is the
non-terminating expansion (tail of ones), which pins the otherwise
ambiguous choice and makes grid tabulations exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dyadic import ZERO, Dyadic
from .errors import DepthExceeded, OutOfRange, PartialMap
from .poset import Poset
from .valuation import SimpleValuation


@dataclass(frozen=True)
class Word:
    """A binary word; bits is a string over '0'/'1'."""

    bits: str
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.bits.strip("01"):
            raise ValueError("bits must be over {0,1}: %r" % self.bits)

    def __len__(self):
        return len(self.bits)

    def is_prefix_of(self, other: "Word") -> bool:
        """The tree order: u <= v iff u is a prefix of v."""
        return other.bits.startswith(self.bits)

    def way_below(self, other: "Word") -> bool:
        return not self.truncated and self.is_prefix_of(other)

    def __str__(self):
        return self.bits


def project(w: Word, m: int) -> Word:
    """The m-bit prefix; functorial over nested depths.

    The prefix of a word is known exactly even when the word stands for
    an infinite one, so the result is a genuine finite word.
    """
    if m > len(w.bits):
        raise DepthExceeded("cannot project %r to depth %d" % (w.bits, m))
    return Word(w.bits[:m])


def embed(w: Word, n: int) -> Word:
    """Pad with zeros to depth n; a section of project."""
    if n < len(w.bits):
        return Word(w.bits, w.truncated)
    return Word(w.bits + "0" * (n - len(w.bits)), w.truncated)


def level(n: int):
    """All 2^n words of depth n in lexicographic order (an antichain)."""
    return [Word(format(i, "0%db" % n) if n else "")
            for i in range(1 << n)]


def pushforward_counting(table: dict, depth: int,
                         base: Poset) -> SimpleValuation:
    """Push normalized counting measure on a level through a table.

    table maps every depth-bit string to an element; the result weights
    each element by its preimage count over 2^depth, hence is always a
    probability valuation. Monotonicity is not required here.
    """
    counts = {}
    for w in level(depth):
        if w.bits not in table:
            raise PartialMap("level map undefined on %r" % w.bits)
        y = table[w.bits]
        counts[y] = counts.get(y, 0) + 1
    return SimpleValuation(base, {y: Dyadic(c, depth)
                                  for y, c in counts.items()})


def word_to_unit(w: Word) -> Dyadic:
    """Binary-expansion value: sum of bit_i / 2^(i+1)."""
    total = ZERO
    for i, b in enumerate(w.bits):
        if b == "1":
            total = total + Dyadic(1, i + 1)
    return total


def unit_to_word(r: Dyadic, n: int) -> Word:
    """Depth-n truncation of the least infinite word with value >= r.

    For dyadic r > 0 this is the non-terminating expansion, so the first n
    bits encode ceil(r * 2^n) - 1; r = 0 gives the all-zeros word.
    """
    if Dyadic(1, 0) < r:
        raise OutOfRange("%s lies outside [0, 1]" % r)
    if r.is_zero():
        return Word("0" * n, truncated=True)
    if r.exp <= n:
        scaled = r.rescale(n)          # exact, ceil not needed
    else:
        shift = r.exp - n
        scaled = -(-r.num >> shift)    # ceil(num / 2^shift)
    return Word(format(scaled - 1, "0%db" % n) if n else "",
                truncated=True)
