"""Layered monotone maps from binary-tree levels onto a poset.

A probability valuation is realized as the law of a map from the tree: a
schedule of approximants climbs from the point mass at bottom up to the
target, and each climb is realized by refining the current level map so
that normalized counting measure pushes forward to the next approximant
exactly. The refinement step distributes the slots under each word among
the targets prescribed by a transport plan; the matching this requires
always exists for probability measures, and the deterministic slot-filling
below constructs one outright.

Everything here is exact: pushforwards are counting arguments, so equality
with the schedule stages is dyadic equality, not approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cantor import Word, level, project, pushforward_counting
from .dyadic import Dyadic
from .errors import (DepthExceeded, NotComparable, NotConvergent,
                     NotProbability, ParseError, SourceExhausted,
                     UnknownElement)
from .poset import Poset
from .valuation import (SimpleValuation, add, delta, leq, portmanteau_check,
                        scale, transport_plan, way_below)


@dataclass
class ApproximationSchedule:
    """Chain of probability valuations from the bottom point mass up.

    Consecutive stages must be related by way-below in the probability
    order; the last stage is the target.
    """

    target: SimpleValuation
    stages: list

    def __post_init__(self):
        if not self.stages:
            raise ValueError("schedule needs at least one stage")
        bot = delta(self.target.base, self.target.base.bottom)
        if self.stages[0] != bot:
            raise NotComparable("schedule must start at the bottom mass")
        if self.stages[-1] != self.target:
            raise NotComparable("schedule must end at the target")
        for a, b in zip(self.stages, self.stages[1:]):
            if not way_below(a, b, normalized=True):
                raise NotComparable("stage %r does not approximate %r"
                                    % (a, b))


def build_schedule(target: SimpleValuation, steps: int) -> ApproximationSchedule:
    """The convex schedule (1 - 2^-k) * target + 2^-k * bottom, k = 1..steps.

    Stage 0 is the bottom point mass, stage `steps` the target itself. A
    bottom target collapses to the constant schedule.
    """
    if steps < 1:
        raise ValueError("schedule length must be at least 1")
    if not target.is_probability():
        raise NotProbability("schedule target must have mass 1")
    bot = delta(target.base, target.base.bottom)
    if target == bot:
        return ApproximationSchedule(target, [bot] * (steps + 1))
    stages = [bot]
    for k in range(1, steps):
        eps = Dyadic(1, k)
        stages.append(add(scale(target, Dyadic(1, 0) - eps),
                          scale(bot, eps)))
    stages.append(target)
    return ApproximationSchedule(target, stages)


@dataclass
class Layer:
    """A total map from the depth-level words to poset elements."""

    depth: int
    table: dict  # bit string -> element


def lift_step(current: Layer, target: SimpleValuation, base: Poset) -> Layer:
    """Refine a level map so counting measure pushes to `target` exactly.

    The current map's law must lie below `target` in the probability
    order. The new depth is the smallest one past the current depth at
    which the laws and the transport numbers all become integer counts;
    each word's extensions are then dealt out to the transported targets
    in lexicographic order against the poset's declaration order, which
    makes the result deterministic and monotone over the current layer.
    """
    law = pushforward_counting(current.table, current.depth, base)
    if not target.is_probability():
        raise NotProbability("lift target must have mass 1")
    if not leq(law, target):
        raise NotComparable("current law does not lie below the lift target")
    plan = transport_plan(law, target)
    depth = max(current.depth + 1,
                law.max_exponent(), target.max_exponent(),
                max((t.exp for t in plan.entries.values()), default=0))
    budgets = {xy: t.rescale(depth) for xy, t in plan.entries.items()}
    targets = target.support
    table = {}
    stride = depth - current.depth
    for w in level(current.depth):
        x = current.table[w.bits]
        for suffix in level(stride):
            bits = w.bits + suffix.bits
            for y in targets:
                if budgets.get((x, y), 0) > 0:
                    budgets[x, y] -= 1
                    table[bits] = y
                    break
            else:
                raise AssertionError("slot without budget at %r" % bits)
    assert all(b == 0 for b in budgets.values())
    return Layer(depth, table)


class RepresentationMap:
    """Stack of layers realizing a valuation as a law on tree levels.

    Layers are monotone along projections and strictly deepen; the final
    layer's counting pushforward is the represented valuation.
    """

    def __init__(self, base: Poset, layers):
        if not layers:
            raise ValueError("need at least one layer")
        self.base = base
        self.layers = list(layers)
        for layer in self.layers:
            if len(layer.table) != 1 << layer.depth:
                raise ValueError("layer at depth %d is not total"
                                 % layer.depth)
        for a, b in zip(self.layers, self.layers[1:]):
            if not a.depth < b.depth:
                raise ValueError("layer depths must increase strictly")
            for bits, y in b.table.items():
                if not base.leq(a.table[bits[:a.depth]], y):
                    raise NotComparable(
                        "layers disagree above word %r" % bits)

    @property
    def final_depth(self) -> int:
        return self.layers[-1].depth

    def law(self) -> SimpleValuation:
        last = self.layers[-1]
        return pushforward_counting(last.table, last.depth, self.base)

    def evaluate(self, w: Word):
        """(chain of layer values along w, final value)."""
        if len(w) < self.final_depth:
            raise DepthExceeded("word %r shorter than depth %d"
                                % (w.bits, self.final_depth))
        chain = [layer.table[project(w, layer.depth).bits]
                 for layer in self.layers]
        return chain, chain[-1]

    def to_dot(self) -> str:
        lines = ["digraph layers {", "  rankdir=TB;"]
        for k, layer in enumerate(self.layers):
            for bits, y in sorted(layer.table.items()):
                name = "L%d_%s" % (k, bits or "-")
                lines.append('  "%s" [label="%s:%s"];'
                             % (name, bits or "-", y))
                if k:
                    prev = self.layers[k - 1]
                    lines.append('  "L%d_%s" -> "%s";'
                                 % (k - 1, bits[:prev.depth] or "-", name))
        lines.append("}")
        return "\n".join(lines) + "\n"


def represent(schedule: ApproximationSchedule) -> RepresentationMap:
    """Realize a schedule, stage by stage, via lift_step.

    Every layer's law equals its stage exactly; the checks are asserted
    here rather than trusted.
    """
    base = schedule.target.base
    layers = [Layer(0, {"": base.bottom})]
    for stage in schedule.stages[1:]:
        layers.append(lift_step(layers[-1], stage, base))
    rmap = RepresentationMap(base, layers)
    for layer, stage in zip(rmap.layers, schedule.stages):
        assert pushforward_counting(layer.table, layer.depth, base) == stage
    return rmap


def sample(rmap: RepresentationMap, bits):
    """Evaluate at a word drawn bit-by-bit from an iterator of 0/1."""
    it = iter(bits)
    drawn = []
    for _ in range(rmap.final_depth):
        try:
            drawn.append("1" if next(it) else "0")
        except StopIteration:
            raise SourceExhausted("bit source ended after %d bits"
                                  % len(drawn))
    _, value = rmap.evaluate(Word("".join(drawn)))
    return value


def represent_sequence(targets, limit: SimpleValuation, steps: int,
                       from_index: int = 0):
    """One representation per target plus one for the limit.

    The sequence must pass the weak-convergence check first; all maps use
    the shared schedule formula, so approximants inherit closeness from
    the measures themselves.
    """
    report = portmanteau_check(targets, limit, from_index)
    if not report.verdict:
        raise NotConvergent("sequence fails weak convergence at %s"
                            % report.witness)
    maps = [represent(build_schedule(t, steps)) for t in targets]
    limit_map = represent(build_schedule(limit, steps))
    return maps, limit_map


@dataclass
class ConvergenceRecord:
    word: Word
    limit_value: object
    maximal: bool
    geq_from: int | None   # least tail index from which value >= limit value
    equal_from: int | None  # least index from which equality holds (maximal)
    ok: bool


@dataclass
class ConvergenceReport:
    records: list
    verdict: bool


def _tail_index(flags) -> int | None:
    """Least N such that every flag from N on is set; None if the last fails."""
    if not flags or not flags[-1]:
        return None
    n = len(flags) - 1
    while n > 0 and flags[n - 1]:
        n -= 1
    return n


def convergence_check(maps, limit_map: RepresentationMap,
                      words) -> ConvergenceReport:
    """Pointwise convergence of map values toward the limit map.

    Where the limit value is maximal, the sequence must become equal to it
    and stay equal; elsewhere only the eventually-at-least check applies
    (the maps need not be ordered among themselves).
    """
    base = limit_map.base
    records = []
    for w in words:
        _, lv = limit_map.evaluate(w)
        maximal = base.up_set(lv) == frozenset([lv])
        values = [m.evaluate(w)[1] for m in maps]
        geq = [base.leq(lv, v) for v in values]
        geq_from = _tail_index(geq)
        equal_from = None
        ok = geq_from is not None
        if maximal:
            equal_from = _tail_index([v == lv for v in values])
            ok = equal_from is not None
        records.append(ConvergenceRecord(w, lv, maximal, geq_from,
                                         equal_from, ok))
    return ConvergenceReport(records, all(r.ok for r in records))


@dataclass
class SubprobabilityRepresentation:
    """Representation of a subprobability target over a lifted poset.

    The missing mass is parked on a fresh bottom; the words routed there
    form the undefined region, and the law restricted to the remaining
    words is the original target on the original poset.
    """

    original_base: Poset
    lifted_base: Poset
    fresh_bottom: object
    rmap: RepresentationMap

    def defined(self, w: Word) -> bool:
        return self.rmap.evaluate(w)[1] != self.fresh_bottom

    def restricted_law(self) -> SimpleValuation:
        last = self.rmap.layers[-1]
        counts = {}
        for bits, y in last.table.items():
            if y != self.fresh_bottom:
                counts[y] = counts.get(y, 0) + 1
        return SimpleValuation(self.original_base,
                               {y: Dyadic(c, last.depth)
                                for y, c in counts.items()})


def represent_subprobability(target: SimpleValuation,
                             steps: int) -> SubprobabilityRepresentation:
    """Represent mass <= 1 by lifting the poset under a fresh bottom."""
    lifted = target.base.lift()
    gap = Dyadic(1, 0) - target.mass
    weights = dict(target.weights)
    if not gap.is_zero():
        weights[lifted.bottom] = gap
    lifted_target = SimpleValuation(lifted, weights)
    rmap = represent(build_schedule(lifted_target, steps))
    return SubprobabilityRepresentation(target.base, lifted,
                                        lifted.bottom, rmap)


# -- serialization -----------------------------------------------------------

# a serialized layer at depth d must list 2^d entries, so anything beyond
# this is either corrupt or hostile
MAX_PARSED_DEPTH = 64


def format_map(rmap: RepresentationMap) -> str:
    """Line format: layers <count>, then per layer its depth and entries.

    The empty word (depth 0) is spelled "-".
    """
    lines = ["layers %d" % len(rmap.layers)]
    for layer in rmap.layers:
        lines.append("layer %d" % layer.depth)
        for bits in sorted(layer.table):
            lines.append("map %s %s" % (bits or "-", layer.table[bits]))
    return "\n".join(lines) + "\n"


def parse_map(text: str, base: Poset) -> RepresentationMap:
    declared = None
    layers = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] in ("layers", "layer") and len(parts) == 2:
            try:
                count = int(parts[1])
            except ValueError:
                raise ParseError("expected an integer after %r" % parts[0],
                                 lineno)
            if not 0 <= count <= MAX_PARSED_DEPTH:
                raise ParseError("%s %d out of range" % (parts[0], count),
                                 lineno)
            if parts[0] == "layers":
                declared = count
            else:
                current = Layer(count, {})
                layers.append(current)
        elif parts[0] == "map" and len(parts) == 3:
            if current is None:
                raise ParseError("map entry before any layer", lineno)
            bits = "" if parts[1] == "-" else parts[1]
            if len(bits) != current.depth or bits.strip("01"):
                raise ParseError("word %r does not fit depth %d"
                                 % (parts[1], current.depth), lineno)
            if parts[2] not in base.index:
                raise UnknownElement("line %d: unknown element %r"
                                     % (lineno, parts[2]))
            current.table[bits] = parts[2]
        else:
            raise ParseError("unrecognized directive %r" % line, lineno)
    if declared is None or declared != len(layers):
        raise ParseError("layer count mismatch")
    if not layers:
        raise ParseError("no layers")
    for layer in layers:
        if len(layer.table) != 1 << layer.depth:
            raise ParseError("layer %d is not total" % layer.depth)
    return RepresentationMap(base, layers)
