"""Finitely supported measures with dyadic weights on a finite poset.

A :class:`SimpleValuation` assigns a dyadic weight to finitely many
elements; its value on an upper set is the sum of the weights inside. Total
mass is at most 1 (exactly 1 for probability valuations).

The pointwise order ("mu(U) <= nu(U) on every upper set") is decided two
independent ways:

* :func:`leq` routes mu's mass upward into nu's mass through a max-flow
  network whose middle edges follow the poset order; the order holds iff
  the flow saturates mu. The resulting flow doubles as an explicit
  transport plan witnessing the comparison.
* :func:`leq_oracle` enumerates every upper set and compares values
  directly. It exists purely to cross-check the flow route.

Way-below, integration against monotone functions, normalization to
probability mass, pushforward along monotone maps, and a finite-scale
weak-convergence (Portmanteau) check complete the module.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import flow as flowmod
from .dyadic import ONE, ZERO, Dyadic, parse_dyadic
from .errors import (MassExceeded, MixedBase, NotComparable, NotMonotone,
                     NotProbability, ParseError, PartialMap, UnknownElement)
from .poset import ORACLE_BOUND, Poset, UpperSet

# capacity for middle edges; strictly above any achievable mass, so a
# minimum cut never crosses the middle layer
_WIDE = Dyadic(2, 0)


class SimpleValuation:
    """Sum of weighted point masses; weights dyadic, total mass <= 1.

    Zero-weight entries are dropped, so equal valuations have equal weight
    maps. Instances are immutable by convention.
    """

    def __init__(self, base: Poset, weights: dict):
        self.base = base
        clean = {}
        for x in base.elements:
            w = weights.get(x)
            if w is not None and not w.is_zero():
                clean[x] = w
        for x in weights:
            if x not in base.index:
                raise UnknownElement("%r is not an element" % (x,))
        self.weights = clean
        mass = ZERO
        for w in clean.values():
            mass = mass + w
        if ONE < mass:
            raise MassExceeded("total mass %s exceeds 1" % mass)
        self.mass = mass

    @property
    def support(self):
        """Support in element declaration order."""
        return list(self.weights)

    def weight(self, x) -> Dyadic:
        self.base._check(x)
        return self.weights.get(x, ZERO)

    def is_probability(self) -> bool:
        return self.mass == ONE

    def max_exponent(self) -> int:
        return max((w.exp for w in self.weights.values()), default=0)

    def evaluate(self, upper: UpperSet) -> Dyadic:
        """Mass inside an upper set of the same base poset."""
        if upper.base is not self.base:
            raise MixedBase("upper set belongs to a different poset")
        total = ZERO
        for x, w in self.weights.items():
            if x in upper.members:
                total = total + w
        return total

    def value_on(self, members) -> Dyadic:
        """Mass on an arbitrary element subset (no upper-closure check)."""
        total = ZERO
        for x, w in self.weights.items():
            if x in members:
                total = total + w
        return total

    def __eq__(self, other):
        return (isinstance(other, SimpleValuation)
                and self.base is other.base and self.weights == other.weights)

    def __repr__(self):
        body = " + ".join("%s.d[%s]" % (w, x)
                          for x, w in self.weights.items()) or "0"
        return "SimpleValuation(%s)" % body


def delta(base: Poset, x) -> SimpleValuation:
    """The point mass at x."""
    return SimpleValuation(base, {x: ONE})


def scale(v: SimpleValuation, c: Dyadic) -> SimpleValuation:
    return SimpleValuation(v.base, {x: w * c for x, w in v.weights.items()})


def add(v: SimpleValuation, w: SimpleValuation) -> SimpleValuation:
    if v.base is not w.base:
        raise MixedBase("cannot add valuations over different posets")
    out = dict(v.weights)
    for x, c in w.weights.items():
        out[x] = out.get(x, ZERO) + c
    return SimpleValuation(v.base, out)


def _same_base(mu: SimpleValuation, nu: SimpleValuation):
    if mu.base is not nu.base:
        raise MixedBase("valuations live on different posets")


def order_network(mu: SimpleValuation, nu: SimpleValuation) -> flowmod.FlowNetwork:
    """The network whose maximum flow decides mu <= nu."""
    left, right = mu.support, nu.support
    mid = {(x, y): _WIDE for x in left for y in right if mu.base.leq(x, y)}
    return flowmod.FlowNetwork(left, right, dict(mu.weights), mid,
                               dict(nu.weights))


def leq(mu: SimpleValuation, nu: SimpleValuation) -> bool:
    """The valuation order, decided by max-flow.

    True iff the maximum flow routes all of mu's mass, i.e. iff transport
    numbers moving mass only upward exist.
    """
    _same_base(mu, nu)
    return flowmod.max_flow(order_network(mu, nu)).value == mu.mass


def leq_witness(mu: SimpleValuation, nu: SimpleValuation):
    """On failure of leq, an upper set U with mu(U) > nu(U), else None.

    The witness is read off the minimum cut: the left-side support elements
    generate an upper set whose nu-mass is beaten by its mu-mass.
    """
    _same_base(mu, nu)
    value, side = flowmod.min_cut(order_network(mu, nu))
    if value == mu.mass:
        return None
    blocked = [x for x in mu.support if ("left", x) in side]
    return UpperSet(mu.base, mu.base.upward_closure(blocked))


@dataclass
class TransportPlan:
    """Matrix t[x, y] witnessing mu <= nu.

    Mass moves only upward (t > 0 implies x <= y), rows sum to mu's
    weights, columns stay within nu's weights.
    """

    source: SimpleValuation
    target: SimpleValuation
    entries: dict

    def verify(self):
        base = self.source.base
        for (x, y), t in self.entries.items():
            assert not t.is_zero() and base.leq(x, y)
        for x in self.source.support:
            row = ZERO
            for (x2, _y), t in self.entries.items():
                if x2 == x:
                    row = row + t
            assert row == self.source.weight(x)
        for y in self.target.support:
            col = ZERO
            for (_x, y2), t in self.entries.items():
                if y2 == y:
                    col = col + t
            assert not (self.target.weight(y) < col)

    def column_sum(self, y) -> Dyadic:
        total = ZERO
        for (_x, y2), t in self.entries.items():
            if y2 == y:
                total = total + t
        return total

    def lines(self):
        order = self.source.base.index
        for (x, y) in sorted(self.entries, key=lambda e: (order[e[0]],
                                                          order[e[1]])):
            yield "t %s %s %s" % (x, y, self.entries[x, y])


def transport_plan(mu: SimpleValuation, nu: SimpleValuation) -> TransportPlan:
    """Extract transport numbers from the maximum flow; requires mu <= nu."""
    _same_base(mu, nu)
    f = flowmod.max_flow(order_network(mu, nu))
    if f.value != mu.mass:
        raise NotComparable("valuations are not ordered; no transport plan")
    plan = TransportPlan(mu, nu, dict(f.across))
    plan.verify()
    return plan


def leq_oracle(mu: SimpleValuation, nu: SimpleValuation,
               bound: int = ORACLE_BOUND) -> bool:
    """Brute-force order test: compare on every enumerated upper set."""
    _same_base(mu, nu)
    for u in mu.base.enumerate_upper_sets(bound):
        if nu.evaluate(u) < mu.evaluate(u):
            return False
    return True


def _way_below_subprobability(mu: SimpleValuation,
                              nu: SimpleValuation) -> bool:
    # min-cut dual of strict transport feasibility: every nonempty support
    # subset must carry strictly less mass than nu gives its upward closure
    supp = mu.support
    for mask in range(1, 1 << len(supp)):
        sub = [supp[i] for i in range(len(supp)) if mask >> i & 1]
        above = mu.base.upward_closure(sub)
        if not (mu.value_on(sub) < nu.value_on(above)):
            return False
    return True


def _epsilon_bound(mu: SimpleValuation, nu: SimpleValuation) -> int:
    p = max(mu.max_exponent(), nu.max_exponent())
    sizes = len(mu.support) + len(nu.support)
    return p + (sizes - 1).bit_length() + 2


def way_below(mu: SimpleValuation, nu: SimpleValuation,
              normalized: bool = False) -> bool:
    """The approximation relation between valuations.

    Subprobability mode tests the strict subset condition directly. In
    normalized (probability) mode, mu approximates nu iff mu lies below
    some convex shift (1 - eps) * nu + eps * bottom; eps is searched over
    2^-k with k up to a bound that provably suffices for dyadic inputs.
    """
    _same_base(mu, nu)
    if not normalized:
        return _way_below_subprobability(mu, nu)
    if not (mu.is_probability() and nu.is_probability()):
        raise NotProbability("normalized mode needs probability valuations")
    bot = delta(mu.base, mu.base.bottom)
    for k in range(1, _epsilon_bound(mu, nu) + 1):
        eps = Dyadic(1, k)
        shifted = add(scale(nu, ONE - eps), scale(bot, eps))
        if leq(mu, shifted):
            return True
    return False


def integrate_monotone(f: dict, v: SimpleValuation) -> Dyadic:
    """Sum of weight(x) * f(x) for a monotone dyadic-valued f.

    f must cover the whole poset and respect the order.
    """
    base = v.base
    for x in base.elements:
        if x not in f:
            raise PartialMap("integrand undefined on %r" % (x,))
    for x in base.elements:
        for y in base.elements:
            if base.leq(x, y) and f[y] < f[x]:
                raise NotMonotone("integrand decreases from %s to %s" % (x, y))
    total = ZERO
    for x, w in v.weights.items():
        total = total + w * f[x]
    return total


def normalize(v: SimpleValuation) -> SimpleValuation:
    """Send the missing mass to bottom; a projection onto probability."""
    gap = ONE - v.mass
    if gap.is_zero():
        return v
    return add(v, scale(delta(v.base, v.base.bottom), gap))


@dataclass
class PosetMap:
    """A map between posets, monotone where defined."""

    source: Poset
    target: Poset
    mapping: dict

    def __post_init__(self):
        for x, y in self.mapping.items():
            self.source._check(x)
            self.target._check(y)
        for x in self.mapping:
            for y in self.mapping:
                if self.source.leq(x, y) \
                        and not self.target.leq(self.mapping[x],
                                                self.mapping[y]):
                    raise NotMonotone("map breaks order at %s <= %s" % (x, y))


def pushforward(g: PosetMap, v: SimpleValuation) -> SimpleValuation:
    """Transport a valuation along a monotone map; mass is preserved."""
    if g.source is not v.base:
        raise MixedBase("map domain differs from the valuation's poset")
    out = {}
    for x, w in v.weights.items():
        if x not in g.mapping:
            raise PartialMap("map undefined on support element %r" % (x,))
        y = g.mapping[x]
        out[y] = out.get(y, ZERO) + w
    return SimpleValuation(g.target, out)


# -- finite-scale weak convergence ------------------------------------------

@dataclass
class PortmanteauRecord:
    upper: UpperSet
    open_ok: bool    # liminf-style condition on the Scott-open reading
    closed_ok: bool  # limsup-style condition on the finitely-generated reading


@dataclass
class PortmanteauReport:
    from_index: int
    records: list
    verdict: bool
    witness: UpperSet | None


def _approaches(values, limit, from_below: bool) -> bool:
    """Exact convergence certificate for a finite tail of dyadic values.

    from_below checks the liminf-style bullet: every value already at or
    above the limit is fine and must not fall back; a deficit must at least
    halve at each step (geometric decay is the only convergence a finite
    exact window can certify). from_below=False is the mirrored limsup
    check.
    """

    def deficit_side(v):  # True when v is on the wrong side of the limit
        return v < limit if from_below else limit < v

    if len(values) == 1:
        return not deficit_side(values[0])
    two = Dyadic(2, 0)
    for v, nxt in zip(values, values[1:]):
        if deficit_side(v):
            if from_below:
                if two * nxt < limit + v:
                    return False
            else:
                if limit + v < two * nxt:
                    return False
        elif deficit_side(nxt):
            return False
    return True


def portmanteau_check(seq, limit: SimpleValuation,
                      from_index: int = 0) -> PortmanteauReport:
    """Check the two weak-convergence bullets on every upper set.

    On a finite poset every upper set is both Scott-open and finitely
    generated, so both bullets run against the same family. The tail
    starts at from_index; liminf/limsup are rendered as exact decay
    certificates (see _approaches).
    """
    if not seq:
        raise ValueError("empty sequence")
    if not 0 <= from_index < len(seq):
        raise ValueError("from_index %d out of range" % from_index)
    for v in seq:
        _same_base(v, limit)
    tail = seq[from_index:]
    records = []
    witness = None
    for u in limit.base.enumerate_upper_sets():
        values = [v.evaluate(u) for v in tail]
        target = limit.evaluate(u)
        rec = PortmanteauRecord(u,
                                open_ok=_approaches(values, target, True),
                                closed_ok=_approaches(values, target, False))
        records.append(rec)
        if witness is None and not (rec.open_ok and rec.closed_ok):
            witness = u
    return PortmanteauReport(from_index, records, witness is None, witness)


# -- text form ---------------------------------------------------------------

def parse_valuation(text: str, base: Poset) -> SimpleValuation:
    """Parse "<element> <dyadic>" lines into a valuation on base."""
    weights = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<element> <dyadic>'", lineno)
        x, w = parts
        if x not in base.index:
            raise UnknownElement("line %d: unknown element %r" % (lineno, x))
        try:
            d = parse_dyadic(w)
        except ParseError:
            raise ParseError("not a dyadic rational: %r" % w, lineno)
        weights[x] = weights.get(x, ZERO) + d
    return SimpleValuation(base, weights)


def format_valuation(v: SimpleValuation) -> str:
    lines = ["%s %s" % (x, v.weights[x]) for x in v.support]
    return "\n".join(lines) + ("\n" if lines else "")
