"""Edge labelings as first-class values and their induced colorings.

A labeling is a bijection from the edges onto [1..q]; the induced color
of a vertex is the sum of the labels on its incident edges.  A labeling
is local antimagic when no edge joins two vertices of equal color.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import AntimagicError
from .graph import Edge, Graph, VertexId, edge, is_bipartite_equal_parts


@dataclass(frozen=True)
class EdgeLabeling:
    graph: Graph
    labels: dict[Edge, int]

    def __post_init__(self):
        q = self.graph.size
        if set(self.labels) != set(self.graph.edges):
            raise AntimagicError("labels must cover exactly the edge set")
        if sorted(self.labels.values()) != list(range(1, q + 1)):
            raise AntimagicError(f"labels must be a bijection onto [1..{q}]")

    @property
    def q(self) -> int:
        return self.graph.size

    def label(self, a: VertexId, b: VertexId) -> int:
        return self.labels[edge(a, b)]

    def relabel_edges(self, edge_map: dict[Edge, Edge], new_graph: Graph) -> "EdgeLabeling":
        """Carry labels across a surgery described by old-edge -> new-edge."""
        moved = {edge_map[e]: lab for e, lab in self.labels.items()}
        return EdgeLabeling(new_graph, moved)


@dataclass(frozen=True)
class InducedColoring:
    colors: dict[VertexId, int]

    @cached_property
    def color_set(self) -> frozenset[int]:
        return frozenset(self.colors.values())

    @property
    def c(self) -> int:
        return len(self.color_set)

    def total(self) -> int:
        return sum(self.colors.values())


def induce(labeling: EdgeLabeling) -> InducedColoring:
    """Per-vertex sums of incident labels; the total is always q(q+1)."""
    sums = {w: 0 for w in labeling.graph.vertices}
    for (a, b), lab in labeling.labels.items():
        sums[a] += lab
        sums[b] += lab
    return InducedColoring(sums)


def is_local_antimagic(labeling: EdgeLabeling) -> tuple[bool, list[Edge]]:
    """Check the defining condition; violating edges are listed sorted."""
    colors = induce(labeling).colors
    bad = sorted(e for e in labeling.graph.edges if colors[e[0]] == colors[e[1]])
    return (not bad, bad)


@dataclass(frozen=True)
class ThreeColorReport:
    ok: bool
    color_set: frozenset[int]
    expected: frozenset[int]
    violations: tuple[Edge, ...]

    def diff(self) -> str:
        missing = sorted(self.expected - self.color_set)
        extra = sorted(self.color_set - self.expected)
        parts = []
        if missing:
            parts.append(f"missing colors {missing}")
        if extra:
            parts.append(f"unexpected colors {extra}")
        if self.violations:
            a, b = self.violations[0]
            parts.append(f"{len(self.violations)} equal-color edges (first: {a}-{b})")
        return "; ".join(parts) if parts else "ok"


def assert_three_coloring(labeling: EdgeLabeling, expected: set[int]) -> ThreeColorReport:
    """Pass iff the labeling is local antimagic with exactly these colors."""
    colors = induce(labeling).colors
    bad = sorted(e for e in labeling.graph.edges if colors[e[0]] == colors[e[1]])
    cs = frozenset(colors.values())
    return ThreeColorReport(
        ok=not bad and cs == frozenset(expected),
        color_set=cs,
        expected=frozenset(expected),
        violations=tuple(bad),
    )


def chi_la_lower_bound(g: Graph) -> tuple[int, str]:
    """Sound lower bound for the local antimagic chromatic number.

    A 2-coloring forces a bipartition with strictly unequal class sizes
    carrying equal total weight, so a bipartite graph whose components
    all have equal partite sizes needs at least 3 colors.  A graph that
    is not even 2-chromatic needs at least 3 as well.  The bound never
    overstates; it is not always attained (e.g. a single edge).
    """
    if not g.edges:
        return 1, "edgeless"
    if is_bipartite_equal_parts(g):
        return 3, "equal-bipartition"
    from .graph import bipartition

    if any(p is None for p in bipartition(g)):
        return 3, "chromatic"
    return 2, "adjacent-pair"
