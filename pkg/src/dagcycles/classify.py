"""Directed images of undirected cycles and their four-way classification.

A directed cycle is kept as the cyclic node sequence plus one sign per edge:
``signs[i]`` is +1 when the edge between ``nodes[i]`` and ``nodes[i+1]``
points forward along the sequence and -1 when it points backwards.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import EdgeNotInDag
from .graph import OrderedDag


class NodeRole(enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    NEUTRAL = "neutral"


class CycleClass(enum.Enum):
    FEEDBACK = "feedback"
    SHORTCUT = "shortcut"
    DIAMOND = "diamond"
    MIXER = "mixer"


@dataclass(frozen=True)
class DirectedCycle:
    nodes: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.signs):
            raise ValueError("need exactly one sign per cycle edge")
        if len(self.nodes) < 3:
            raise ValueError("a cycle needs at least three nodes")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def __len__(self) -> int:
        return len(self.nodes)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> DirectedCycle:
        """Cycle on nodes 0..L-1 with the given edge orientations."""
        return cls(tuple(range(len(signs))), tuple(signs))

    def roles(self) -> list[NodeRole]:
        out = []
        for i in range(len(self.signs)):
            before, after = self.signs[i - 1], self.signs[i]
            if before == after:
                out.append(NodeRole.NEUTRAL)
            elif after == 1:
                out.append(NodeRole.SOURCE)
            else:
                out.append(NodeRole.SINK)
        return out

    def arcs(self) -> list[tuple[int, int]]:
        """Directed edges (tail, head) of the cycle."""
        L = len(self.nodes)
        return [
            (self.nodes[i], self.nodes[(i + 1) % L]) if s == 1 else (self.nodes[(i + 1) % L], self.nodes[i])
            for i, s in enumerate(self.signs)
        ]


def directed_image(cycle, dag: OrderedDag) -> DirectedCycle:
    """Orient the edges of an undirected cycle as they appear in ``dag``.

    ``cycle`` is anything with a ``nodes`` sequence (e.g. a basis ``Cycle``)
    or a plain node sequence.
    """
    nodes = tuple(getattr(cycle, "nodes", cycle))
    L = len(nodes)
    signs = []
    for i in range(L):
        a, b = nodes[i], nodes[(i + 1) % L]
        if dag.has_edge(a, b):
            signs.append(1)
        elif dag.has_edge(b, a):
            signs.append(-1)
        else:
            raise EdgeNotInDag(a, b)
    return DirectedCycle(nodes, tuple(signs))


def node_roles(dc: DirectedCycle) -> dict[int, NodeRole]:
    return dict(zip(dc.nodes, dc.roles()))


def pair_count(dc: DirectedCycle) -> int:
    """Number of source/sink pairs (equal to the number of sources)."""
    return sum(r is NodeRole.SOURCE for r in dc.roles())


def classify(dc: DirectedCycle) -> CycleClass:
    roles = dc.roles()
    pairs = sum(r is NodeRole.SOURCE for r in roles)
    if pairs == 0:
        return CycleClass.FEEDBACK
    if pairs >= 2:
        return CycleClass.MIXER
    L = len(roles)
    src = roles.index(NodeRole.SOURCE)
    snk = roles.index(NodeRole.SINK)
    gap = abs(src - snk)
    return CycleClass.SHORTCUT if min(gap, L - gap) == 1 else CycleClass.DIAMOND


def contract_wedges(dc: DirectedCycle) -> DirectedCycle:
    """Repeatedly drop a neutral node with at most one non-neutral neighbour.

    Nodes are examined in ascending id and the first eligible one is removed;
    its two edges (which point the same way) merge into one.  Contraction
    stops at length three.
    """
    nodes, signs = list(dc.nodes), list(dc.signs)
    while len(nodes) > 3:
        roles = DirectedCycle(tuple(nodes), tuple(signs)).roles()
        L = len(nodes)
        victim = None
        for i in sorted(range(L), key=nodes.__getitem__):
            if roles[i] is not NodeRole.NEUTRAL:
                continue
            boundary = (roles[i - 1], roles[(i + 1) % L])
            if sum(r is not NodeRole.NEUTRAL for r in boundary) <= 1:
                victim = i
                break
        if victim is None:
            break
        # the merged edge keeps the shared direction, stored on the predecessor slot
        del nodes[victim]
        del signs[victim]
    return DirectedCycle(tuple(nodes), tuple(signs))


@dataclass(frozen=True)
class AntichainSignature:
    """Sizes of the longest-path levels of a (contracted) directed cycle."""

    levels: tuple[int, ...]
    feedback: bool = False

    @property
    def unitary(self) -> int:
        return sum(1 for s in self.levels if s == 1)

    @property
    def non_unitary(self) -> int:
        return sum(1 for s in self.levels if s > 1)

    def multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.levels))


def cycle_levels(dc: DirectedCycle) -> list[int]:
    """Longest directed path, inside the cycle, from any cycle source to each node."""
    roles = dc.roles()
    L = len(roles)
    level = [0] * L
    for i, r in enumerate(roles):
        if r is not NodeRole.SOURCE:
            continue
        for step in (1, -1):
            # walk each run leaving the source until its sink
            j, depth = i, 0
            while True:
                edge = j if step == 1 else (j - 1) % L
                if dc.signs[edge] != step:
                    break
                j = (j + step) % L
                depth += 1
                level[j] = max(level[j], depth)
    return level


def antichain_signature(dc: DirectedCycle) -> AntichainSignature:
    if pair_count(dc) == 0:
        return AntichainSignature((1,) * len(dc), feedback=True)
    level = cycle_levels(dc)
    sizes = [0] * (max(level) + 1)
    for lv in level:
        sizes[lv] += 1
    return AntichainSignature(tuple(sizes))
