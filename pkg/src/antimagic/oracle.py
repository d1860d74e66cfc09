"""Exact desk-scale search over edge-label bijections.

Ground truth for tiny graphs: the minimum color count over all local
antimagic labelings, labelings hitting a prescribed color set, and
certified impossibility of 2-colorings.  Backtracking assigns labels
edge by edge (edges clustered around high-degree vertices so vertices
finish early) and prunes on finished-vertex ties, color budgets and
forced last labels.  Exact-mode results are deterministic.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass

from .errors import AntimagicError
from .graph import Edge, Graph
from .labeling import EdgeLabeling, chi_la_lower_bound, induce, is_local_antimagic

DEFAULT_EDGE_CAP = 12
ENV_EDGE_CAP = "ANTIMAGIC_EDGE_CAP"


def edge_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get(ENV_EDGE_CAP, DEFAULT_EDGE_CAP))


def _edge_order(g: Graph) -> list[Edge]:
    verts = sorted(g.vertices, key=lambda w: (-g.degree(w), w))
    order: list[Edge] = []
    seen: set[Edge] = set()
    for w in verts:
        for e in sorted(g.incident_edges(w), key=lambda e: (-max(g.degree(e[0]), g.degree(e[1])), e)):
            if e not in seen:
                seen.add(e)
                order.append(e)
    return order


class _Search:
    """One backtracking run; reusable across label budgets."""

    def __init__(self, g: Graph, target_colors: frozenset[int] | None, max_colors: int | None,
                 first_labels: list[int] | None = None):
        self.g = g
        self.q = g.size
        self.target = target_colors
        self.max_colors = max_colors
        self.order = _edge_order(g)
        verts = g.sorted_vertices()
        self.vidx = {w: n for n, w in enumerate(verts)}
        self.adj = [[self.vidx[nb] for nb in g.adjacency[w]] for w in verts]
        self.deg = [g.degree(w) for w in verts]
        self.edge_ends = [(self.vidx[a], self.vidx[b]) for a, b in self.order]
        self.sums = [0] * len(verts)
        self.remaining = list(self.deg)
        self.finished = [w_deg == 0 for w_deg in self.deg]
        self.color_count: dict[int, int] = {}
        for n, w_deg in enumerate(self.deg):
            if w_deg == 0:
                self.color_count[0] = self.color_count.get(0, 0) + 1
        self.free = [True] * (self.q + 1)
        self.assignment: list[int] = [0] * self.q
        self.nodes = 0
        self.first_labels = first_labels

    def _candidates(self, pos: int) -> list[int]:
        if pos == 0 and self.first_labels is not None:
            labs = [lab for lab in self.first_labels if self.free[lab]]
        else:
            labs = [lab for lab in range(1, self.q + 1) if self.free[lab]]
        if self.target:
            a, b = self.edge_ends[pos]
            for w in (a, b):
                if self.remaining[w] == 1:
                    forced = {t - self.sums[w] for t in self.target}
                    labs = [lab for lab in labs if lab in forced]
        return labs

    def _finish(self, w: int) -> bool:
        color = self.sums[w]
        if self.target is not None and color not in self.target:
            return False
        for nb in self.adj[w]:
            if self.finished[nb] and self.sums[nb] == color:
                return False
        if self.max_colors is not None and color not in self.color_count and len(self.color_count) >= self.max_colors:
            return False
        self.finished[w] = True
        self.color_count[color] = self.color_count.get(color, 0) + 1
        return True

    def _unfinish(self, w: int) -> None:
        self.finished[w] = False
        color = self.sums[w]
        self.color_count[color] -= 1
        if self.color_count[color] == 0:
            del self.color_count[color]

    def run(self, pos: int = 0) -> dict[Edge, int] | None:
        if pos == self.q:
            if self.target is not None and set(self.color_count) != set(self.target):
                return None
            return {e: lab for e, lab in zip(self.order, self.assignment)}
        a, b = self.edge_ends[pos]
        for lab in self._candidates(pos):
            self.nodes += 1
            self.free[lab] = False
            self.assignment[pos] = lab
            self.sums[a] += lab
            self.sums[b] += lab
            self.remaining[a] -= 1
            self.remaining[b] -= 1
            done: list[int] = []
            ok = True
            for w in (a, b):
                if self.remaining[w] == 0:
                    if self._finish(w):
                        done.append(w)
                    else:
                        ok = False
                        break
            if ok:
                found = self.run(pos + 1)
                if found is not None:
                    return found
            for w in done:
                self._unfinish(w)
            self.sums[a] -= lab
            self.sums[b] -= lab
            self.remaining[a] += 1
            self.remaining[b] += 1
            self.free[lab] = True
        return None


def _search(g: Graph, target_colors=None, max_colors=None, first_labels=None) -> tuple[dict[Edge, int] | None, int]:
    s = _Search(g, frozenset(target_colors) if target_colors else None, max_colors, first_labels)
    return s.run(), s.nodes


@dataclass(frozen=True)
class ChiLaResult:
    value: int | None  # None: no local antimagic labeling exists
    nodes: int
    seconds: float

    @property
    def exists(self) -> bool:
        return self.value is not None


def exact_chi_la(g: Graph, cap: int | None = None) -> ChiLaResult:
    """Minimum c(f) over all local antimagic bijections, by exhaustion.

    Tries color budgets upward from the sound lower bound; once every
    budget up to |V| fails, no labeling exists at all (a labeling always
    induces at most |V| colors).
    """
    limit = edge_cap(cap)
    if g.size > limit:
        raise AntimagicError(f"graph has {g.size} edges, over the cap {limit}")
    t0 = time.perf_counter()
    if not g.edges:
        return ChiLaResult(None, 0, time.perf_counter() - t0)
    lb, _ = chi_la_lower_bound(g)
    nodes = 0
    for budget in range(max(lb, 1), g.order + 1):
        found, n = _search(g, max_colors=budget)
        nodes += n
        if found is not None:
            labeling = EdgeLabeling(g, found)
            c = induce(labeling).c
            return ChiLaResult(c, nodes, time.perf_counter() - t0)
    return ChiLaResult(None, nodes, time.perf_counter() - t0)


@dataclass(frozen=True)
class FindResult:
    labeling: EdgeLabeling | None
    nodes: int
    seconds: float
    mode: str


def find_labeling(
    g: Graph,
    target_colors: set[int] | None = None,
    target_c: int | None = None,
    mode: str = "exact",
    seed: int = 0,
    cap: int | None = None,
    restarts: int = 200,
    iters: int = 2000,
) -> FindResult:
    """Search for a local antimagic labeling meeting the constraints.

    Exact mode exhausts the space (None means none exists); heuristic
    mode runs seeded random restarts with local label swaps and proves
    nothing when it fails.
    """
    if target_colors is not None and target_c is not None and len(target_colors) != target_c:
        raise AntimagicError(f"contradictory constraints: {len(target_colors)} colors vs c={target_c}")
    t0 = time.perf_counter()
    if mode == "exact":
        limit = edge_cap(cap)
        if g.size > limit:
            raise AntimagicError(f"graph has {g.size} edges, over the cap {limit}")
        max_colors = target_c if target_c is not None else (len(target_colors) if target_colors else None)
        found, nodes = _search(g, target_colors=target_colors, max_colors=max_colors)
        labeling = EdgeLabeling(g, found) if found else None
        return FindResult(labeling, nodes, time.perf_counter() - t0, mode)
    if mode != "heuristic":
        raise AntimagicError(f"unknown mode {mode!r}")
    labeling = _heuristic(g, target_colors, target_c, seed, restarts, iters)
    return FindResult(labeling, 0, time.perf_counter() - t0, mode)


def _penalty(labeling: EdgeLabeling, target_colors, target_c) -> int:
    coloring = induce(labeling)
    colors = coloring.colors
    bad = sum(1 for a, b in labeling.graph.edges if colors[a] == colors[b])
    pen = bad * 1000
    if target_colors is not None:
        pen += sum(1 for c in coloring.color_set if c not in target_colors)
        pen += sum(1 for c in target_colors if c not in coloring.color_set)
    if target_c is not None and coloring.c > target_c:
        pen += coloring.c - target_c
    return pen


def _heuristic(g: Graph, target_colors, target_c, seed: int, restarts: int, iters: int) -> EdgeLabeling | None:
    rng = random.Random(seed)
    edges = g.sorted_edges()
    q = len(edges)
    for _ in range(restarts):
        labels = list(range(1, q + 1))
        rng.shuffle(labels)
        current = EdgeLabeling(g, dict(zip(edges, labels)))
        pen = _penalty(current, target_colors, target_c)
        for _ in range(iters):
            if pen == 0:
                return current
            i, j = rng.sample(range(q), 2)
            labels[i], labels[j] = labels[j], labels[i]
            cand = EdgeLabeling(g, dict(zip(edges, labels)))
            cand_pen = _penalty(cand, target_colors, target_c)
            if cand_pen <= pen:
                current, pen = cand, cand_pen
            else:
                labels[i], labels[j] = labels[j], labels[i]
        if pen == 0:
            return current
    return None


def certify_no_2_coloring(g: Graph, cap: int | None = None) -> bool:
    """True iff exhaustive search finds no labeling with c(f) = 2."""
    limit = edge_cap(cap)
    if g.size > limit:
        raise AntimagicError(f"graph has {g.size} edges, over the cap {limit}")
    found, _ = _search(g, max_colors=2)
    return found is None


def parallel_exact_chi_la(g: Graph, jobs: int, cap: int | None = None) -> ChiLaResult:
    """exact_chi_la with the top level of the search tree fanned out.

    Branches partition the label choices of the first edge, so the
    reduction (min over budgets, any-found per budget) is independent of
    worker count and scheduling.
    """
    if jobs <= 1 or g.size <= 1:
        return exact_chi_la(g, cap=cap)
    limit = edge_cap(cap)
    if g.size > limit:
        raise AntimagicError(f"graph has {g.size} edges, over the cap {limit}")
    from multiprocessing import Pool

    t0 = time.perf_counter()
    if not g.edges:
        return ChiLaResult(None, 0, time.perf_counter() - t0)
    lb, _ = chi_la_lower_bound(g)
    q = g.size
    chunks = [list(range(start, q + 1, jobs)) for start in range(1, min(jobs, q) + 1)]
    nodes = 0
    with Pool(processes=jobs) as pool:
        for budget in range(max(lb, 1), g.order + 1):
            results = pool.starmap(_branch_search, [(g, budget, chunk) for chunk in chunks])
            nodes += sum(r[1] for r in results)
            hits = [r[0] for r in results if r[0] is not None]
            if hits:
                labeling = EdgeLabeling(g, min(hits, key=lambda d: sorted(d.items())))
                c = induce(labeling).c
                return ChiLaResult(c, nodes, time.perf_counter() - t0)
    return ChiLaResult(None, nodes, time.perf_counter() - t0)


def _branch_search(g: Graph, budget: int, first_labels: list[int]):
    return _search(g, max_colors=budget, first_labels=first_labels)


def verify_labeling(labeling: EdgeLabeling) -> tuple[bool, list[str]]:
    """Bijection is enforced on construction; check the rest, reporting
    every failure by name."""
    problems: list[str] = []
    ok, bad = is_local_antimagic(labeling)
    if not ok:
        a, b = bad[0]
        problems.append(f"local-antimagic: {len(bad)} equal-color edges (first: {a}-{b})")
    return (not problems, problems)
