"""Exact max-flow / min-cut on source->left->right->sink networks.

This is the computational engine behind the order test for finitely
supported measures: the question "can all of mu's mass be routed upward
into nu's mass?" is a max-flow problem whose capacities are dyadic. All
capacities are rescaled to a common denominator 2^p, the search runs over
plain integers (so termination and exactness are trivial), and results are
scaled back; every returned flow is therefore dyadic with exponent <= p.

Augmenting paths are found breadth-first with nodes explored in declaration
order, which makes the returned flow (and hence every transport plan built
from it) deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .dyadic import ZERO, Dyadic

SOURCE = "source"
SINK = "sink"


@dataclass
class FlowNetwork:
    """Bipartite network with terminals; the only shape this package needs.

    Edges run source -> left, left -> right (where declared), right -> sink.
    Left and right node names may overlap (they are distinct nodes).
    """

    left: list
    right: list
    source_caps: dict
    mid_caps: dict   # (x, y) -> Dyadic
    sink_caps: dict

    def __post_init__(self):
        if len(set(self.left)) != len(self.left) \
                or len(set(self.right)) != len(self.right):
            raise ValueError("duplicate node name within a side")
        left, right = set(self.left), set(self.right)
        if set(self.source_caps) - left or set(self.sink_caps) - right:
            raise ValueError("terminal capacity on unknown node")
        for x, y in self.mid_caps:
            if x not in left or y not in right:
                raise ValueError("middle edge (%r, %r) off the bipartition"
                                 % (x, y))

    def common_exponent(self) -> int:
        caps = list(self.source_caps.values()) \
            + list(self.mid_caps.values()) + list(self.sink_caps.values())
        return max((c.exp for c in caps), default=0)


@dataclass
class Flow:
    """A feasible flow; capacity and conservation hold exactly."""

    value: Dyadic
    from_source: dict = field(default_factory=dict)
    across: dict = field(default_factory=dict)
    to_sink: dict = field(default_factory=dict)


def _solve(net: FlowNetwork):
    """Integer Edmonds-Karp; returns (scale p, node list, residual, caps)."""
    p = net.common_exponent()
    nodes = [SOURCE] + [("left", x) for x in net.left] \
        + [("right", y) for y in net.right] + [SINK]
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    cap = [[0] * n for _ in range(n)]
    for x, c in net.source_caps.items():
        cap[0][idx["left", x]] = c.rescale(p)
    for (x, y), c in net.mid_caps.items():
        cap[idx["left", x]][idx["right", y]] = c.rescale(p)
    for y, c in net.sink_caps.items():
        cap[idx["right", y]][n - 1] = c.rescale(p)
    res = [row[:] for row in cap]
    while True:
        parent = [-1] * n
        parent[0] = 0
        queue = deque([0])
        while queue:
            u = queue.popleft()
            if u == n - 1:
                break
            for v in range(n):
                if parent[v] < 0 and res[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[n - 1] < 0:
            break
        bottleneck = None
        v = n - 1
        while v != 0:
            u = parent[v]
            r = res[u][v]
            bottleneck = r if bottleneck is None else min(bottleneck, r)
            v = u
        v = n - 1
        while v != 0:
            u = parent[v]
            res[u][v] -= bottleneck
            res[v][u] += bottleneck
            v = u
    return p, nodes, idx, cap, res


def max_flow(net: FlowNetwork) -> Flow:
    """A maximum flow; its value equals the minimum cut capacity."""
    p, nodes, idx, cap, res = _solve(net)
    n = len(nodes)

    def d(units):
        return Dyadic(units, p)

    flow = Flow(value=ZERO)
    total = 0
    for x in net.left:
        units = cap[0][idx["left", x]] - res[0][idx["left", x]]
        total += units
        if units:
            flow.from_source[x] = d(units)
    flow.value = d(total)
    for (x, y) in net.mid_caps:
        i, j = idx["left", x], idx["right", y]
        units = cap[i][j] - res[i][j]
        if units:
            flow.across[x, y] = d(units)
    for y in net.right:
        i = idx["right", y]
        units = cap[i][n - 1] - res[i][n - 1]
        if units:
            flow.to_sink[y] = d(units)
    return flow


def min_cut(net: FlowNetwork):
    """A minimum cut as (value, left_side node set).

    The left side contains SOURCE plus tagged nodes ("left", x) /
    ("right", y); its crossing capacity equals the max-flow value.
    """
    p, nodes, idx, cap, res = _solve(net)
    n = len(nodes)
    reach = [False] * n
    reach[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in range(n):
            if not reach[v] and res[u][v] > 0:
                reach[v] = True
                queue.append(v)
    value = 0
    for u in range(n):
        for v in range(n):
            if reach[u] and not reach[v]:
                value += cap[u][v]
    side = frozenset(nodes[i] for i in range(n) if reach[i])
    return Dyadic(value, p), side


def to_dot(net: FlowNetwork, flow: Flow | None = None) -> str:
    """Debug rendering of a network, optionally annotated with a flow."""

    def label(c, f):
        return "%s of %s" % (f, c) if f is not None else str(c)

    lines = ["digraph flow {", "  rankdir=LR;"]
    for x, c in net.source_caps.items():
        f = flow.from_source.get(x) if flow else None
        lines.append('  "%s" -> "L_%s" [label="%s"];'
                     % (SOURCE, x, label(c, f)))
    for (x, y), c in net.mid_caps.items():
        f = flow.across.get((x, y)) if flow else None
        lines.append('  "L_%s" -> "R_%s" [label="%s"];' % (x, y, label(c, f)))
    for y, c in net.sink_caps.items():
        f = flow.to_sink.get(y) if flow else None
        lines.append('  "R_%s" -> "%s" [label="%s"];'
                     % (y, SINK, label(c, f)))
    lines.append("}")
    return "\n".join(lines) + "\n"
