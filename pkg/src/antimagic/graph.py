"""Role-tagged vertices and immutable simple graphs.

Vertices carry their role (u_i / v_i / x_{i,j} / merged bundle) so that
statements like "merge v_1 and v_11" stay expressible after arbitrary
surgery.  All graph operations return new graphs; nothing mutates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AntimagicError, LoopError, ParallelEdgeError

U_ROLE = "u"
V_ROLE = "v"
X_ROLE = "x"
MERGED_ROLE = "m"

_ROLE_RANK = {U_ROLE: 0, V_ROLE: 1, X_ROLE: 2, MERGED_ROLE: 3}


@dataclass(frozen=True)
class VertexId:
    """Canonical vertex identity surviving merges and splits.

    ``role`` is one of ``u``/``v``/``x``/``m``.  Simple roles use ``i``
    (and ``j`` for x-vertices); merged vertices carry the flattened,
    sorted tuple of their simple constituents.  Two ids are equal iff
    their canonical forms are equal.
    """

    role: str
    i: int = 0
    j: int = 0
    parts: tuple["VertexId", ...] = ()
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.role == MERGED_ROLE:
            if len(self.parts) < 2:
                raise AntimagicError("merged id needs at least two parts")
            key = (3,) + tuple(p._key for p in self.parts)
        else:
            if self.i < 1 or (self.role == X_ROLE and self.j < 1):
                raise AntimagicError(f"vertex indices must be >= 1: {self.role}{self.i}.{self.j}")
            key = (_ROLE_RANK[self.role], self.i, self.j)
        object.__setattr__(self, "_key", key)

    def __lt__(self, other: "VertexId") -> bool:
        return self._key < other._key

    def __le__(self, other: "VertexId") -> bool:
        return self._key <= other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexId) and self._key == other._key

    def token(self) -> str:
        """Serialized form: ``u3``, ``v12``, ``x2.7``, ``m(v1|v11)``."""
        if self.role == U_ROLE:
            return f"u{self.i}"
        if self.role == V_ROLE:
            return f"v{self.i}"
        if self.role == X_ROLE:
            return f"x{self.i}.{self.j}"
        return "m(" + "|".join(p.token() for p in self.parts) + ")"

    def __str__(self) -> str:
        return self.token()


def u(i: int) -> VertexId:
    return VertexId(U_ROLE, i)


def v(i: int) -> VertexId:
    return VertexId(V_ROLE, i)


def x(i: int, j: int) -> VertexId:
    return VertexId(X_ROLE, i, j)


def merged(parts: Iterable[VertexId]) -> VertexId:
    """Merged id over ``parts``, flattening nested merges and sorting.

    A single-constituent bundle collapses to the constituent itself.
    """
    flat: list[VertexId] = []
    for p in parts:
        if p.role == MERGED_ROLE:
            flat.extend(p.parts)
        else:
            flat.append(p)
    unique = sorted(set(flat))
    if len(unique) != len(flat):
        raise AntimagicError("merged parts must be pairwise distinct")
    if len(unique) == 1:
        return unique[0]
    return VertexId(MERGED_ROLE, parts=tuple(unique))


def parse_token(tok: str) -> VertexId:
    """Inverse of :meth:`VertexId.token`."""
    tok = tok.strip()
    if tok.startswith("m(") and tok.endswith(")"):
        inner = tok[2:-1]
        return merged(parse_token(t) for t in inner.split("|"))
    if tok.startswith("x"):
        a, _, b = tok[1:].partition(".")
        return x(int(a), int(b))
    if tok.startswith("u"):
        return u(int(tok[1:]))
    if tok.startswith("v"):
        return v(int(tok[1:]))
    raise AntimagicError(f"unparseable vertex token: {tok!r}")


@dataclass(frozen=True)
class FamilyParams:
    """Parameter record naming one family instance.

    ``m`` is the null-part order, ``n`` the half-order parameter
    (m = 2n or 2n+1), ``k`` the component-count parameter; ``r``/``s``
    factor k = r*s where a construction needs it, ``t``/``ks`` describe
    component groupings.
    """

    m: int = 0
    n: int = 0
    k: int = 0
    r: int = 0
    s: int = 0
    t: int = 0
    ks: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("m", "n", "k", "r", "s", "t"):
            val = getattr(self, name)
            if val < 0:
                raise AntimagicError(f"{name} must be >= 1 when present")
        if any(ka < 1 for ka in self.ks):
            raise AntimagicError("every group size must be >= 1")
        if self.r and self.s and self.k and self.k != self.r * self.s:
            raise AntimagicError(f"k = r*s required: {self.k} != {self.r}*{self.s}")


Edge = tuple[VertexId, VertexId]


def edge(a: VertexId, b: VertexId) -> Edge:
    """Canonical (sorted) form of the undirected edge {a, b}."""
    if a == b:
        raise LoopError(f"loop at {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph over :class:`VertexId`."""

    vertices: frozenset[VertexId]
    edges: frozenset[Edge]

    @staticmethod
    def build(vertices: Iterable[VertexId], edges: Iterable[tuple[VertexId, VertexId]]) -> "Graph":
        vs = frozenset(vertices)
        es = frozenset(edge(a, b) for a, b in edges)
        for a, b in es:
            if a not in vs or b not in vs:
                raise AntimagicError(f"edge endpoint not in vertex set: {a}-{b}")
        return Graph(vs, es)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[VertexId, frozenset[VertexId]]:
        adj: dict[VertexId, set[VertexId]] = {w: set() for w in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {w: frozenset(nb) for w, nb in adj.items()}

    def degree(self, w: VertexId) -> int:
        return len(self.adjacency[w])

    def incident_edges(self, w: VertexId) -> list[Edge]:
        return sorted(edge(w, nb) for nb in self.adjacency[w])

    def sorted_vertices(self) -> list[VertexId]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def p2(i: int = 1) -> Graph:
    """Single edge u_i v_i."""
    return Graph.build([u(i), v(i)], [(u(i), v(i))])


def null_graph(m: int, component: int = 1) -> Graph:
    """O_m: m isolated vertices x_{component,1..m}."""
    return Graph.build([x(component, j) for j in range(1, m + 1)], [])


def join(g: Graph, h: Graph) -> Graph:
    """Join product: g + h plus every cross edge between them."""
    if g.vertices & h.vertices:
        raise AntimagicError("join requires disjoint vertex sets")
    cross = [(a, b) for a in g.vertices for b in h.vertices]
    return Graph.build(
        g.vertices | h.vertices,
        list(g.edges) + list(h.edges) + cross,
    )


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    """Disjoint union; copies are re-indexed so vertex sets cannot clash.

    Copy c of u_i becomes u_{(c-1)*width + i} where ``width`` is the
    largest first index appearing in any input, and similarly for v and
    x vertices.  Merged vertices are not supported: every family built
    here takes its disjoint unions before any surgery.
    """
    if not gs:
        return Graph.build([], [])
    width = 0
    for g in gs:
        for w in g.vertices:
            if w.role == MERGED_ROLE:
                raise AntimagicError("disjoint_union does not re-index merged vertices")
            width = max(width, w.i)

    def shift(w: VertexId, c: int) -> VertexId:
        off = c * width
        if w.role == X_ROLE:
            return x(w.i + off, w.j)
        return VertexId(w.role, w.i + off)

    vs: list[VertexId] = []
    es: list[tuple[VertexId, VertexId]] = []
    for c, g in enumerate(gs):
        vs.extend(shift(w, c) for w in g.vertices)
        es.extend((shift(a, c), shift(b, c)) for a, b in g.edges)
    return Graph.build(vs, es)


def copies_of_p2_join_null(a: int, m: int) -> Graph:
    """a(P_2 ∨ O_m): a disjoint copies, copy i on u_i, v_i, x_{i,1..m}."""
    vs: list[VertexId] = []
    es: list[tuple[VertexId, VertexId]] = []
    for i in range(1, a + 1):
        vs += [u(i), v(i)] + [x(i, j) for j in range(1, m + 1)]
        es.append((u(i), v(i)))
        for j in range(1, m + 1):
            es.append((u(i), x(i, j)))
            es.append((v(i), x(i, j)))
    return Graph.build(vs, es)


def merge_vertices(g: Graph, groups: Sequence[Iterable[VertexId]]) -> Graph:
    """Collapse each group to one merged vertex, preserving every edge.

    Raises :class:`LoopError` if a group contains adjacent vertices and
    :class:`ParallelEdgeError` if two group members share a neighbor
    (either would break the edge bijection).
    """
    g2, _ = merge_vertices_mapped(g, groups)
    return g2


def merge_vertices_mapped(
    g: Graph, groups: Sequence[Iterable[VertexId]]
) -> tuple[Graph, dict[VertexId, VertexId]]:
    """Like :func:`merge_vertices` but also returns old->new vertex map."""
    vmap: dict[VertexId, VertexId] = {}
    seen: set[VertexId] = set()
    for group in groups:
        members = sorted(set(group))
        missing = [w for w in members if w not in g.vertices]
        if missing:
            raise AntimagicError(f"merge group member not in graph: {missing[0]}")
        if seen & set(members):
            raise AntimagicError("merge groups must be pairwise disjoint")
        seen.update(members)
        if len(members) == 1:
            continue
        target = merged(members)
        for w in members:
            vmap[w] = target

    new_edges: dict[Edge, Edge] = {}
    for a, b in g.edges:
        na, nb = vmap.get(a, a), vmap.get(b, b)
        if na == nb:
            raise LoopError(f"merging adjacent vertices {a} and {b}")
        ne = edge(na, nb)
        if ne in new_edges:
            raise ParallelEdgeError(
                f"merge creates parallel edge {ne[0]}-{ne[1]} (shared neighbor)"
            )
        new_edges[ne] = (a, b)
    new_vertices = {vmap.get(w, w) for w in g.vertices}
    return Graph(frozenset(new_vertices), frozenset(new_edges)), vmap


def split_vertex(
    g: Graph,
    w: VertexId,
    first_edges: Iterable[Edge],
    names: tuple[VertexId, VertexId] | None = None,
) -> tuple[Graph, tuple[VertexId, VertexId]]:
    """Replace ``w`` by two vertices, dividing its incident edges.

    ``first_edges`` must be a nonempty proper subset of the edges at
    ``w``; the complement goes to the second vertex.  ``names`` fixes
    the identities of the two halves.  When omitted, ``w`` must be a
    merged vertex: the halves are then named by splitting its
    constituent list in two (callers that care about which constituent
    carries which edge should pass ``names`` explicitly).
    """
    if w not in g.vertices:
        raise AntimagicError(f"{w} not in graph")
    incident = set(g.incident_edges(w))
    first = {edge(*e) for e in first_edges}
    if not first or not first < incident:
        raise AntimagicError("first_edges must be a nonempty proper subset of the edges at the vertex")
    second = incident - first
    if names is None:
        if w.role != MERGED_ROLE:
            raise AntimagicError("names required when splitting a non-merged vertex")
        half = len(w.parts) // 2
        names = (merged(w.parts[:half]), merged(w.parts[half:]))
    ya, za = names
    if ya == za:
        raise AntimagicError("split halves need distinct names")
    for nm in names:
        if nm in g.vertices - {w}:
            raise AntimagicError(f"split name collides with existing vertex: {nm}")

    def reattach(e: Edge, target: VertexId) -> Edge:
        a, b = e
        other = b if a == w else a
        return edge(target, other)

    new_edges = set(g.edges) - incident
    new_edges |= {reattach(e, ya) for e in first}
    new_edges |= {reattach(e, za) for e in second}
    new_vertices = (g.vertices - {w}) | {ya, za}
    if len(new_edges) != g.size:
        raise ParallelEdgeError("split produced a parallel edge")
    return Graph(frozenset(new_vertices), frozenset(new_edges)), (ya, za)


def delete_add_edges(
    g: Graph,
    delete: Iterable[tuple[VertexId, VertexId]],
    add: Iterable[tuple[VertexId, VertexId]],
) -> Graph:
    """Remove ``delete`` and insert ``add``; vertex set unchanged."""
    dels = [edge(a, b) for a, b in delete]
    adds = [edge(a, b) for a, b in add]
    if len(dels) != len(adds):
        raise AntimagicError("delete and add lists must have equal length")
    es = set(g.edges)
    for e in dels:
        if e not in es:
            raise AntimagicError(f"cannot delete missing edge {e[0]}-{e[1]}")
        es.remove(e)
    for e in adds:
        if e in es:
            raise ParallelEdgeError(f"adding existing edge {e[0]}-{e[1]}")
        if e[0] not in g.vertices or e[1] not in g.vertices:
            raise AntimagicError("added edge endpoint not in vertex set")
        es.add(e)
    return Graph(g.vertices, frozenset(es))


def components(g: Graph) -> list[Graph]:
    """Connected components, ordered by their smallest vertex id."""
    remaining = set(g.vertices)
    comps: list[Graph] = []
    adj = g.adjacency
    while remaining:
        seed = min(remaining)
        stack = [seed]
        comp = {seed}
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        remaining -= comp
        comps.append(Graph(frozenset(comp), frozenset(e for e in g.edges if e[0] in comp)))
    return comps


def bipartition(g: Graph) -> list[tuple[frozenset[VertexId], frozenset[VertexId]] | None]:
    """Per component: its 2-coloring classes, or None if not bipartite.

    The side containing the component's smallest vertex is listed first,
    making the output deterministic.
    """
    out = []
    adj = g.adjacency
    for comp in components(g):
        seed = min(comp.vertices)
        color = {seed: 0}
        queue = [seed]
        ok = True
        while queue and ok:
            cur = queue.pop()
            for nb in adj[cur]:
                if nb not in color:
                    color[nb] = 1 - color[cur]
                    queue.append(nb)
                elif color[nb] == color[cur]:
                    ok = False
                    break
        if not ok:
            out.append(None)
        else:
            side0 = frozenset(w for w, c in color.items() if c == 0)
            out.append((side0, comp.vertices - side0))
    return out


def is_bipartite_equal_parts(g: Graph) -> bool:
    """True iff every component is bipartite with equal partite sizes."""
    parts = bipartition(g)
    return all(p is not None and len(p[0]) == len(p[1]) for p in parts)


DEFAULT_CHROMATIC_LIMIT = 64


def chromatic_number_small(g: Graph, cap: int | None = None, limit: int = DEFAULT_CHROMATIC_LIMIT) -> int | None:
    """Exact chromatic number by DSATUR-style branch and bound.

    Only intended for small instances (|V| <= ``limit``).  Returns the
    chromatic number, or None when it exceeds ``cap``.
    """
    if g.order > limit:
        raise AntimagicError(f"graph too large for exact coloring ({g.order} > {limit})")
    verts = g.sorted_vertices()
    if not verts:
        return 0
    if not g.edges:
        return 1 if (cap is None or cap >= 1) else None
    idx = {w: n for n, w in enumerate(verts)}
    adj = [[idx[nb] for nb in g.adjacency[w]] for w in verts]
    n_verts = len(verts)

    # greedy upper bound in descending-degree order
    best = [0] * n_verts
    order = sorted(range(n_verts), key=lambda a: -len(adj[a]))
    for a in order:
        used = {best[b] for b in adj[a] if best[b]}
        c = 1
        while c in used:
            c += 1
        best[a] = c
    best_k = max(best)

    colors = [0] * n_verts
    neighbor_colors = [set() for _ in range(n_verts)]

    def pick() -> int | None:
        cands = [a for a in range(n_verts) if colors[a] == 0]
        if not cands:
            return None
        return max(cands, key=lambda a: (len(neighbor_colors[a]), len(adj[a]), -a))

    def backtrack(current_k: int):
        nonlocal best_k
        a = pick()
        if a is None:
            best_k = min(best_k, current_k)
            return
        for c in range(1, min(current_k + 1, best_k - 1) + 1):
            if c in neighbor_colors[a]:
                continue
            colors[a] = c
            touched = []
            for b in adj[a]:
                if colors[b] == 0 and c not in neighbor_colors[b]:
                    neighbor_colors[b].add(c)
                    touched.append(b)
            backtrack(max(current_k, c))
            colors[a] = 0
            for b in touched:
                neighbor_colors[b].discard(c)

    backtrack(0)
    if cap is not None and best_k > cap:
        return None
    return best_k
