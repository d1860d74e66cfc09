"""Label-preserving graph surgery deriving every labeled family.

Each transform consumes a :class:`LabeledGraph` and returns a new one
whose labeling reuses the same integers; merged vertices accumulate the
colors of their constituents, split vertices divide them.  Every value
carries a provenance log that replays to the value itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import cached_property

from .errors import AntimagicError, SumDriftError, SumMismatchError
from .graph import (
    Edge,
    FamilyParams,
    Graph,
    MERGED_ROLE,
    U_ROLE,
    V_ROLE,
    VertexId,
    X_ROLE,
    components,
    copies_of_p2_join_null,
    delete_add_edges,
    edge,
    merge_vertices_mapped,
    merged,
    u,
    v,
    x,
)
from .labeling import EdgeLabeling, InducedColoring, induce, is_local_antimagic
from .schemes import (
    EVEN,
    LabelMatrix,
    ODD,
    build_matrix,
    cross_pair_constant,
    special_2p2_o2,
    u_color,
    v_color,
    x_pair_constant,
)

Step = tuple


@dataclass(frozen=True)
class LabeledGraph:
    labeling: EdgeLabeling
    params: FamilyParams
    provenance: tuple[Step, ...]

    @property
    def graph(self) -> Graph:
        return self.labeling.graph

    @cached_property
    def coloring(self) -> InducedColoring:
        return induce(self.labeling)

    @property
    def colors(self) -> frozenset[int]:
        return self.coloring.color_set

    @property
    def parity(self) -> str:
        return EVEN if self.params.m % 2 == 0 else ODD


@dataclass(frozen=True)
class SwapSpec:
    """A delete-add rewiring: ``delete`` lists edges to remove, ``add``
    pairs each inserted edge with the label it carries over."""

    delete: tuple[Edge, ...]
    add: tuple[tuple[Edge, int], ...]


def from_matrix(mx: LabelMatrix) -> LabeledGraph:
    """2k disjoint copies of P_2 ∨ O_m labeled straight off the matrix."""
    m, k = mx.m, mx.k
    g = copies_of_p2_join_null(2 * k, m)
    labels: dict[Edge, int] = {}
    for i in range(1, 2 * k + 1):
        labels[edge(u(i), v(i))] = mx.entry(("uv", 0), i)
        for j in range(1, m + 1):
            labels[edge(u(i), x(i, j))] = mx.entry(("ux", j), i)
            labels[edge(v(i), x(i, j))] = mx.entry(("vx", j), i)
    params = FamilyParams(m=m, n=mx.n, k=k)
    return LabeledGraph(EdgeLabeling(g, labels), params, (("matrix", mx.parity, mx.n, mx.k),))


def special_labeled() -> LabeledGraph:
    g, labeling = special_2p2_o2()
    return LabeledGraph(labeling, FamilyParams(m=2, n=1, k=1), (("special",),))


def _is_fresh_matrix(lg: LabeledGraph) -> bool:
    return len(lg.provenance) == 1 and lg.provenance[0][0] == "matrix"


def _merge_with_labels(lg: LabeledGraph, groups, step: Step, params: FamilyParams | None = None) -> LabeledGraph:
    g2, vmap = merge_vertices_mapped(lg.graph, groups)
    edge_map = {e: edge(vmap.get(e[0], e[0]), vmap.get(e[1], e[1])) for e in lg.graph.edges}
    labeling = lg.labeling.relabel_edges(edge_map, g2)
    return LabeledGraph(labeling, params or lg.params, lg.provenance + (step,))


def merge_all_x(lg: LabeledGraph) -> LabeledGraph:
    """Collapse {x_{i,j} | all i} per j, turning 2k(P_2 ∨ O_m)
    into (2k)P_2 ∨ O_m with the labeling kept."""
    if not _is_fresh_matrix(lg):
        raise AntimagicError("merge_all_x expects a fresh matrix graph")
    m, k = lg.params.m, lg.params.k
    groups = [[x(i, j) for i in range(1, 2 * k + 1)] for j in range(1, m + 1)]
    return _merge_with_labels(lg, groups, ("merge_all_x",))


def _block_columns(k: int, r: int, s: int, b: int) -> tuple[list[int], list[int]]:
    """Columns of block b and its complementary block 2r+1-b."""
    lo = list(range((b - 1) * s + 1, b * s + 1))
    hi = list(range(2 * k - b * s + 1, 2 * k - (b - 1) * s + 1))
    return lo, hi


def block_merge(lg: LabeledGraph, r: int, s: int) -> LabeledGraph:
    """Merge x's of complementary column blocks, giving r((2s)P_2 ∨ O_m)."""
    if not _is_fresh_matrix(lg):
        raise AntimagicError("block_merge expects a fresh matrix graph")
    if r < 2 or s < 1:
        raise AntimagicError("block_merge needs r >= 2 and s >= 1")
    k = lg.params.k
    if k != r * s:
        raise AntimagicError(f"k = r*s required: {k} != {r}*{s}")
    m = lg.params.m
    groups = []
    for b in range(1, r + 1):
        lo, hi = _block_columns(k, r, s, b)
        for j in range(1, m + 1):
            groups.append([x(i, j) for i in lo + hi])
    params = replace(lg.params, r=r, s=s)
    return _merge_with_labels(lg, groups, ("block_merge", r, s), params)


def split_x(lg: LabeledGraph) -> LabeledGraph:
    """Split every merged x into two equal-color halves.

    The half named after the lower column block takes the u-side edges
    of those columns together with the v-side edges of the complementary
    columns; the cross pair identity makes the two halves equal.
    """
    if not lg.provenance or lg.provenance[-1][0] != "block_merge":
        raise AntimagicError("split_x expects a block_merge output")
    _, r, s = lg.provenance[-1]
    k, m = lg.params.k, lg.params.m
    g = lg.graph
    new_vertices = set(g.vertices)
    edge_map: dict[Edge, Edge] = {e: e for e in g.edges}
    for b in range(1, r + 1):
        lo, hi = _block_columns(k, r, s, b)
        for j in range(1, m + 1):
            xv = merged(x(i, j) for i in lo + hi)
            y_id = merged(x(i, j) for i in lo) if s > 1 else x(lo[0], j)
            z_id = merged(x(i, j) for i in hi) if s > 1 else x(hi[0], j)
            new_vertices.remove(xv)
            new_vertices.update((y_id, z_id))
            for i in lo:
                edge_map[edge(u(i), xv)] = edge(u(i), y_id)
                edge_map[edge(v(i), xv)] = edge(v(i), z_id)
            for i in hi:
                edge_map[edge(v(i), xv)] = edge(v(i), y_id)
                edge_map[edge(u(i), xv)] = edge(u(i), z_id)
    g2 = Graph(frozenset(new_vertices), frozenset(edge_map.values()))
    if g2.size != g.size:
        raise AntimagicError("split lost an edge")
    labeling = lg.labeling.relabel_edges(edge_map, g2)
    return LabeledGraph(labeling, lg.params, lg.provenance + (("split_x",),))


def _uv_side(w: VertexId) -> bool:
    if w.role in (U_ROLE, V_ROLE):
        return True
    if w.role == MERGED_ROLE:
        return all(p.role in (U_ROLE, V_ROLE) for p in w.parts)
    return False


def delete_add(lg: LabeledGraph, spec: SwapSpec) -> LabeledGraph:
    """Apply a label-preserving rewiring; every induced sum must survive.

    Each moved label stays attached to its u/v-side endpoint while the
    x-side endpoint changes; any drift in an induced sum raises
    :class:`SumDriftError`.
    """
    dels = [edge(*e) for e in spec.delete]
    if len(set(dels)) != len(dels):
        raise AntimagicError("duplicate edge in delete list")
    labels = lg.labeling.labels
    for e in dels:
        if e not in labels:
            raise AntimagicError(f"cannot delete missing edge {e[0]}-{e[1]}")
    del_labels = sorted(labels[e] for e in dels)
    add_labels = sorted(lab for _, lab in spec.add)
    if del_labels != add_labels:
        raise AntimagicError("added labels must be exactly the deleted labels")
    by_label = {labels[e]: e for e in dels}
    for (a, b), lab in spec.add:
        old = by_label[lab]
        uv_old = {w for w in old if _uv_side(w)}
        if not uv_old:
            raise AntimagicError("deleted edge has no u/v-side endpoint")
        if not (uv_old & {a, b}):
            raise AntimagicError(
                f"label {lab} must keep its u/v-side endpoint ({next(iter(uv_old))})"
            )

    g2 = delete_add_edges(lg.graph, dels, [e for e, _ in spec.add])
    new_labels = dict(labels)
    for e in dels:
        del new_labels[e]
    for (a, b), lab in spec.add:
        new_labels[edge(a, b)] = lab
    labeling = EdgeLabeling(g2, new_labels)
    before = lg.coloring.colors
    after = induce(labeling).colors
    if before != after:
        drifted = sorted(w for w in before if before[w] != after[w])
        raise SumDriftError(f"induced sum changed at {drifted[0]}")
    step = (
        "delete_add",
        tuple((a.token(), b.token()) for a, b in dels),
        tuple((a.token(), b.token(), lab) for (a, b), lab in spec.add),
    )
    return LabeledGraph(labeling, lg.params, lg.provenance + (step,))


def _j_input_kind(lg: LabeledGraph) -> str:
    """J/H inputs are k(2P_2 ∨ O_m) or its split; returns which."""
    tags = [st[0] for st in lg.provenance]
    if tags[-1:] == ["block_merge"] and lg.provenance[-1][2] == 1:
        return "merged"
    if tags[-2:] == ["block_merge", "split_x"] and lg.provenance[-2][2] == 1:
        return "split"
    raise AntimagicError("expected k(2P_2 ∨ O_m) or its split graph")


def theorem_certificate(g: Graph) -> str:
    """Structural applicability certificate for the merge theorems."""
    from .graph import is_bipartite_equal_parts

    if is_bipartite_equal_parts(g):
        return "bipartite-equal-parts"
    classes = {}
    for w in g.vertices:
        if w.role in (U_ROLE, X_ROLE):
            classes[w] = w.role
        elif w.role == V_ROLE:
            classes[w] = V_ROLE
        else:
            roles = {p.role for p in w.parts}
            classes[w] = roles.pop() if len(roles) == 1 else "?"
    if all(classes[a] != "?" and classes[a] != classes[b] for a, b in g.edges):
        return "tripartite"
    return "unverified by theorem"


def merge_v_blocks(lg: LabeledGraph, blocks, side: str | None = None) -> LabeledGraph:
    """Merge same-colored degree-(m+1) vertices in equal-size blocks.

    ``blocks`` partitions a subset of the v-vertices (or u-vertices for
    the odd families) into blocks of one size s >= 2 whose members share
    no neighbor.  The merged vertices pick up s times the old color.
    """
    _j_input_kind(lg)
    blocks = [sorted(b) for b in blocks]
    if not blocks:
        raise AntimagicError("no blocks given")
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise AntimagicError(f"blocks must all have one size, got {sorted(sizes)}")
    s = sizes.pop()
    if s < 1:
        raise AntimagicError("block size must be >= 1")
    roles = {w.role for b in blocks for w in b}
    if len(roles) != 1 or roles & {X_ROLE, MERGED_ROLE}:
        raise AntimagicError("blocks must contain only u-vertices or only v-vertices")
    role = roles.pop()
    if side and side != role:
        raise AntimagicError(f"blocks are {role}-side, expected {side}-side")
    step = ("merge_v_blocks", role, tuple(tuple(w.token() for w in b) for b in blocks))
    return _merge_with_labels(lg, blocks, step)


def connected_chain_blocks(k: int, side: str = V_ROLE) -> list[list[VertexId]]:
    """The size-2 pairing {w_i, w_{2k-i}} ∪ {w_k, w_{2k}} that chains all
    k components of k(2P_2 ∨ O_m) into one connected graph."""
    mk = u if side == U_ROLE else v
    return [[mk(i), mk(2 * k - i)] for i in range(1, k)] + [[mk(k), mk(2 * k)]]


def chunk_blocks(k: int, s: int, side: str = V_ROLE) -> list[list[VertexId]]:
    """Equal blocks of size s over all 2k side-vertices, never putting a
    complementary pair {i, 2k+1-i} together (s must divide 2k, s <= k)."""
    if s < 2 or s > k or (2 * k) % s:
        raise AntimagicError(f"need 2 <= s <= k with s | 2k, got s={s}, k={k}")
    mk = u if side == U_ROLE else v
    order = list(range(1, k + 1)) + list(range(2 * k, k, -1))
    return [[mk(i) for i in order[t : t + s]] for t in range(0, 2 * k, s)]


def group_components(lg: LabeledGraph, ks, side: str | None = None) -> LabeledGraph:
    """Group the k components consecutively and chain each group into one
    connected piece by pair merges, as in the connected J construction."""
    kind_side = side or (V_ROLE if lg.params.m % 2 == 0 else U_ROLE)
    _j_input_kind(lg)
    k = lg.params.k
    ks = tuple(ks)
    if sum(ks) != k:
        raise AntimagicError(f"group sizes must sum to k={k}, got {ks}")
    if any(ka < 2 for ka in ks):
        raise AntimagicError("every group must hold at least 2 components")
    mk = u if kind_side == U_ROLE else v
    blocks: list[list[VertexId]] = []
    start = 1
    for ka in ks:
        comps = list(range(start, start + ka))
        for a in range(ka):
            c_here, c_next = comps[a], comps[(a + 1) % ka]
            blocks.append([mk(c_here), mk(2 * k + 1 - c_next)])
        start += ka
    out = _merge_with_labels(lg, blocks, ("group_components", kind_side, ks))
    return replace(out, params=replace(out.params, t=len(ks), ks=ks))


@dataclass(frozen=True)
class GenericMergeReport:
    colors: frozenset[int]
    local_antimagic: bool
    component_count: int

    @property
    def is_three_coloring(self) -> bool:
        return self.local_antimagic and len(self.colors) == 3


def partition_merge_generic(lg: LabeledGraph, x_partition) -> tuple[LabeledGraph, GenericMergeReport]:
    """Merge x-vertices of a fresh matrix graph in user-supplied blocks.

    Every block must carry the same label sum s * (column-pair constant)
    where 2s is the common block size; the outcome (color count, local
    antimagic, component count) is verified and reported, never assumed.
    """
    if not _is_fresh_matrix(lg):
        raise AntimagicError("partition_merge_generic expects a fresh matrix graph")
    blocks = [sorted(b) for b in x_partition]
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1 or sizes & {0}:
        raise AntimagicError("blocks must all have one nonzero size")
    width = sizes.pop()
    if width % 2:
        raise AntimagicError("block size must be even (2s columns per merge)")
    s = width // 2
    n, k = lg.params.n, lg.params.k
    target = s * x_pair_constant(lg.parity, n, k)
    labels = lg.labeling.labels
    for b in blocks:
        if any(w.role != X_ROLE for w in b):
            raise AntimagicError("partition blocks must contain x-vertices")
        total = sum(labels[edge(u(w.i), w)] + labels[edge(v(w.i), w)] for w in b)
        if total != target:
            raise SumMismatchError(f"block {[w.token() for w in b]} sums to {total}, target {target}")
    step = ("partition_merge", tuple(tuple(w.token() for w in b) for b in blocks))
    out = _merge_with_labels(lg, blocks, step)
    ok, _ = is_local_antimagic(out.labeling)
    report = GenericMergeReport(
        colors=out.colors,
        local_antimagic=ok,
        component_count=len(components(out.graph)),
    )
    return out, report


# --- expected color triples -------------------------------------------------


def expected_colors_merge_all(parity: str, n: int, k: int) -> set[int]:
    return {u_color(parity, n, k), v_color(parity, n, k), k * x_pair_constant(parity, n, k)}


def expected_colors_block(parity: str, n: int, k: int, s: int) -> set[int]:
    return {u_color(parity, n, k), v_color(parity, n, k), s * x_pair_constant(parity, n, k)}


def expected_colors_split(parity: str, n: int, k: int, s: int) -> set[int]:
    return {u_color(parity, n, k), v_color(parity, n, k), s * cross_pair_constant(parity, n, k)}


def expected_colors_j(parity: str, n: int, k: int, s: int, split: bool) -> set[int]:
    """Color triple after merging side-vertex blocks of size s in
    k(2P_2 ∨ O_m) (or its split): the merged side scales by s."""
    uc, vc = u_color(parity, n, k), v_color(parity, n, k)
    xc = cross_pair_constant(parity, n, k) if split else x_pair_constant(parity, n, k)
    if parity == EVEN:
        return {uc, s * vc, xc}
    return {s * uc, vc, xc}


# --- randomized label-preserving swaps ---------------------------------------


def random_swap_spec(lg: LabeledGraph, rng: random.Random) -> SwapSpec:
    """A random valid swap moving one equal-sum edge pair between two
    x-class vertices (the generalization of the worked swap examples).

    Pair types: both v-side edges of a complementary column pair, both
    u-side edges, or the mixed u/v cross pair; each type has a constant
    label sum, so any two same-type pairs at different x-vertices may
    trade places.
    """
    g = lg.graph
    labels = lg.labeling.labels
    k = lg.params.k

    adj = g.adjacency
    xs = sorted(w for w in g.vertices if not _uv_side(w))
    by_j: dict[int, list[VertexId]] = {}
    for xv in xs:
        j = xv.parts[0].j if xv.role == MERGED_ROLE else xv.j
        by_j.setdefault(j, []).append(xv)

    def pairs_at(xv: VertexId):
        nbrs = adj[xv]
        cols = sorted({w.i for w in nbrs if w.role in (U_ROLE, V_ROLE)})
        found = []
        for a in cols:
            b = 2 * k + 1 - a
            if b <= a:
                continue
            for kind, wa, wb in (("u", u(a), u(b)), ("v", v(a), v(b)), ("c", u(a), v(b)), ("c", v(a), u(b))):
                if wa in nbrs and wb in nbrs:
                    found.append((kind, wa, wb))
        return found

    js = [j for j, group in sorted(by_j.items()) if len(group) >= 2]
    if not js:
        raise AntimagicError("graph has no two x-vertices sharing a null index")
    for _ in range(200):
        j = rng.choice(js)
        xa, xb = rng.sample(by_j[j], 2)
        cands_a, cands_b = pairs_at(xa), pairs_at(xb)
        kinds = {c[0] for c in cands_a} & {c[0] for c in cands_b}
        if not kinds:
            continue
        kind = rng.choice(sorted(kinds))
        _, a1, a2 = rng.choice([c for c in cands_a if c[0] == kind])
        _, b1, b2 = rng.choice([c for c in cands_b if c[0] == kind])
        # moved endpoints must not already touch the receiving x-vertex
        if {a1, a2} & adj[xb] or {b1, b2} & adj[xa]:
            continue
        dels = (edge(a1, xa), edge(a2, xa), edge(b1, xb), edge(b2, xb))
        adds = (
            (edge(a1, xb), labels[edge(a1, xa)]),
            (edge(a2, xb), labels[edge(a2, xa)]),
            (edge(b1, xa), labels[edge(b1, xb)]),
            (edge(b2, xa), labels[edge(b2, xb)]),
        )
        return SwapSpec(dels, adds)
    raise AntimagicError("no valid swap found for this graph")


def connecting_swaps(lg: LabeledGraph) -> LabeledGraph:
    """Chain all components into one connected graph by successive
    v-side (or u-side) pair swaps between adjacent components."""
    current = lg
    while True:
        comps = components(current.graph)
        if len(comps) < 2:
            return current
        rng = random.Random(0)
        for _ in range(500):
            spec = random_swap_spec(current, rng)
            touched = {w for e in spec.delete for w in e}
            comp_idx = {i for i, comp in enumerate(comps) for w in touched if w in comp.vertices}
            if len(comp_idx) >= 2:
                current = delete_add(current, spec)
                break
        else:
            raise AntimagicError("could not connect components by swaps")


# --- provenance replay --------------------------------------------------------


def replay(provenance: tuple[Step, ...]) -> LabeledGraph:
    """Rebuild a labeled graph from its provenance log."""
    from .graph import parse_token

    lg: LabeledGraph | None = None
    for step in provenance:
        tag = step[0]
        if tag == "matrix":
            _, parity, n, k = step
            lg = from_matrix(build_matrix(parity, n, k))
        elif tag == "special":
            lg = special_labeled()
        elif tag == "merge_all_x":
            lg = merge_all_x(lg)
        elif tag == "block_merge":
            lg = block_merge(lg, step[1], step[2])
        elif tag == "split_x":
            lg = split_x(lg)
        elif tag == "delete_add":
            dels = tuple(edge(parse_token(a), parse_token(b)) for a, b in step[1])
            adds = tuple((edge(parse_token(a), parse_token(b)), lab) for a, b, lab in step[2])
            lg = delete_add(lg, SwapSpec(dels, adds))
        elif tag == "merge_v_blocks":
            blocks = [[parse_token(t) for t in b] for b in step[2]]
            lg = merge_v_blocks(lg, blocks, side=step[1])
        elif tag == "group_components":
            lg = group_components(lg, step[2], side=step[1])
        elif tag == "partition_merge":
            blocks = [[parse_token(t) for t in b] for b in step[1]]
            lg, _ = partition_merge_generic(lg, blocks)
        else:
            raise AntimagicError(f"unknown provenance step {tag!r}")
    if lg is None:
        raise AntimagicError("empty provenance")
    return lg
