"""Exception types raised across the package."""


class DagCycError(Exception):
    """Base class for all errors raised by dagcycles."""


class InvalidGraph(DagCycError, ValueError):
    pass


class SelfLoop(InvalidGraph):
    def __init__(self, node: int):
        super().__init__(f"self-loop on node {node}")
        self.node = node


class DuplicateEdge(InvalidGraph):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"duplicate edge {edge}")
        self.edge = edge


class DirectedCycleDetected(InvalidGraph):
    """The input contains a directed cycle; ``cycle`` lists its nodes in order."""

    def __init__(self, cycle: list[int]):
        path = " -> ".join(map(str, cycle + cycle[:1]))
        super().__init__(f"directed cycle detected: {path}")
        self.cycle = cycle


class RankViolation(InvalidGraph):
    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"edge {edge} runs against the supplied ranks")
        self.edge = edge


class IncomparableAdjacentPair(InvalidGraph):
    def __init__(self, u: int, v: int):
        super().__init__(f"adjacent nodes {u} and {v} have equal rank")
        self.pair = (u, v)


class EdgeNotInDag(DagCycError, KeyError):
    def __init__(self, u: int, v: int):
        super().__init__(f"cycle edge ({u}, {v}) is not an edge of the DAG")
        self.pair = (u, v)


class MultipleSourcesWithoutVirtualRoot(DagCycError, ValueError):
    pass


class TooLarge(DagCycError, ValueError):
    pass


class FeedbackCycleHasNoPaths(DagCycError, ValueError):
    pass


class NotSymmetric(DagCycError, ValueError):
    pass


class ParseError(DagCycError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class InvalidSpec(DagCycError, ValueError):
    pass
