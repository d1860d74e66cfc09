import random

import pytest

from antimagic.errors import AntimagicError, ParallelEdgeError, SumDriftError, SumMismatchError
from antimagic.graph import components, edge, is_bipartite_equal_parts, merged, u, v, x
from antimagic.labeling import induce
from antimagic.schemes import EVEN, ODD, build_even_matrix, build_odd_matrix
from antimagic.transforms import (
    SwapSpec,
    block_merge,
    chunk_blocks,
    connected_chain_blocks,
    connecting_swaps,
    delete_add,
    expected_colors_block,
    expected_colors_split,
    from_matrix,
    group_components,
    merge_all_x,
    merge_v_blocks,
    partition_merge_generic,
    random_swap_spec,
    replay,
    split_x,
    theorem_certificate,
)


def even_base(n, k):
    return from_matrix(build_even_matrix(n, k))


def odd_base(n, k):
    return from_matrix(build_odd_matrix(n, k))


class TestFromMatrix:
    def test_even_column_sums(self):
        lg = even_base(2, 4)
        colors = lg.coloring.colors
        assert colors[u(1)] == 65 + 16 + 49 + 40 + 44 == 214
        assert colors[v(1)] == 44 + 1 + 64 + 17 + 25 == 151

    def test_odd_column_sums(self):
        lg = odd_base(2, 3)
        colors = lg.coloring.colors
        assert colors[u(1)] == 261 and colors[v(1)] == 111

    def test_shape(self):
        lg = even_base(2, 4)
        assert lg.graph.size == 72
        assert len(components(lg.graph)) == 8


class TestMergeAllX:
    def test_even_colors(self):
        lg = merge_all_x(even_base(2, 4))
        assert lg.colors == {214, 151, 584}
        assert lg.graph.order == 4 * 4 + 2 * 2
        assert lg.graph.size == 72

    def test_odd_colors(self):
        lg = merge_all_x(odd_base(2, 3))
        assert lg.colors == {261, 111, 438}  # 438 = 2k(8kn+8k+1)

    def test_x_degree(self):
        lg = merge_all_x(even_base(2, 4))
        xm = merged([x(i, 1) for i in range(1, 9)])
        assert lg.graph.degree(xm) == 16

    def test_requires_fresh_matrix_graph(self):
        lg = merge_all_x(even_base(2, 4))
        with pytest.raises(AntimagicError):
            merge_all_x(lg)


class TestBlockMerge:
    def test_worked_color_triple(self):
        lg = block_merge(even_base(2, 2), 2, 1)
        assert lg.colors == {108, 77, 74}
        assert 1 * (16 * 2 * 2 + 4 * 2 + 2) == 74

    def test_odd_worked_triple(self):
        lg = block_merge(odd_base(2, 3), 3, 1)
        assert lg.colors == {261, 111, 146}

    def test_component_count_is_r(self):
        for r, s in [(2, 2), (4, 1)]:
            lg = block_merge(even_base(1, 4), r, s)
            assert len(components(lg.graph)) == r
            assert all(lg.graph.degree(w) == 4 * s for w in lg.graph.vertices if not w.role == "u" and not w.role == "v")

    def test_factorization_enforced(self):
        with pytest.raises(AntimagicError):
            block_merge(even_base(2, 4), 3, 1)
        with pytest.raises(AntimagicError):
            block_merge(even_base(2, 4), 1, 4)


class TestSplitX:
    def test_odd_worked_triple(self):
        lg = split_x(block_merge(odd_base(2, 3), 3, 1))
        assert lg.colors == {261, 111, 73}

    def test_even_derived_triple(self):
        lg = split_x(block_merge(even_base(2, 3), 3, 1))
        assert lg.colors == {161, 114, 55}

    def test_halves_sum_to_old_color_and_are_equal(self):
        merged_lg = block_merge(even_base(2, 4), 2, 2)
        split_lg = split_x(merged_lg)
        old = merged_lg.coloring.colors
        new = split_lg.coloring.colors
        for b, (lo, hi) in [(1, ([1, 2], [7, 8])), (2, ([3, 4], [5, 6]))]:
            for j in range(1, 5):
                xm = merged(x(i, j) for i in lo + hi)
                ya = merged(x(i, j) for i in lo)
                za = merged(x(i, j) for i in hi)
                assert new[ya] == new[za]
                assert new[ya] + new[za] == old[xm]

    def test_split_is_bipartite_with_equal_parts(self):
        lg = split_x(block_merge(even_base(2, 2), 2, 1))
        assert is_bipartite_equal_parts(lg.graph)

    def test_merge_back_restores_block_output(self):
        merged_lg = block_merge(even_base(1, 2), 2, 1)
        split_lg = split_x(merged_lg)
        back = merge_vertices_back(split_lg)
        assert back == merged_lg.labeling.labels

    def test_requires_block_output(self):
        with pytest.raises(AntimagicError):
            split_x(even_base(2, 2))
        with pytest.raises(AntimagicError):
            split_x(merge_all_x(even_base(2, 2)))


def merge_vertices_back(split_lg):
    """Merge each y/z pair back and return the resulting label map."""
    from antimagic.graph import merge_vertices_mapped

    g = split_lg.graph
    xs = sorted(w for w in g.vertices if w.role in ("x", "m") and (w.role == "x" or all(p.role == "x" for p in w.parts)))
    pair_of = {}
    for w in xs:
        j = w.j if w.role == "x" else w.parts[0].j
        cols = {w.i} if w.role == "x" else {p.i for p in w.parts}
        key = (j, frozenset(cols | {2 * split_lg.params.k + 1 - c for c in cols}))
        pair_of.setdefault(key, []).append(w)
    groups = [pair for pair in pair_of.values() if len(pair) == 2]
    g2, vmap = merge_vertices_mapped(g, groups)
    return {edge(vmap.get(a, a), vmap.get(b, b)): lab for (a, b), lab in split_lg.labeling.labels.items()}


class TestDeleteAdd:
    def worked_swap(self):
        lg = block_merge(even_base(2, 3), 3, 1)
        a = merged([x(1, 4), x(6, 4)])
        b = merged([x(3, 1), x(4, 1)])
        spec = SwapSpec(
            delete=(edge(u(1), a), edge(v(6), a), edge(u(3), b), edge(v(4), b)),
            add=(
                (edge(u(1), b), 30),
                (edge(v(6), b), 25),
                (edge(u(3), a), 51),
                (edge(v(4), a), 4),
            ),
        )
        return lg, spec

    def test_worked_swap_labels(self):
        lg, spec = self.worked_swap()
        labels = lg.labeling
        a = merged([x(1, 4), x(6, 4)])
        b = merged([x(3, 1), x(4, 1)])
        assert labels.label(u(1), a) == 30
        assert labels.label(v(6), a) == 25
        assert labels.label(u(3), b) == 51
        assert labels.label(v(4), b) == 4

    def test_worked_swap_preserves_coloring(self):
        lg, spec = self.worked_swap()
        out = delete_add(lg, spec)
        assert out.coloring.colors == lg.coloring.colors
        assert out.graph.order == lg.graph.order and out.graph.size == lg.graph.size
        assert len(components(out.graph)) == len(components(lg.graph)) - 1

    def test_empty_spec_is_identity(self):
        lg = block_merge(even_base(2, 2), 2, 1)
        out = delete_add(lg, SwapSpec((), ()))
        assert out.labeling.labels == lg.labeling.labels

    def test_label_multiset_mismatch_rejected(self):
        lg, spec = self.worked_swap()
        bad = SwapSpec(spec.delete, tuple((e, lab + 1) for e, lab in spec.add))
        with pytest.raises(AntimagicError, match="labels"):
            delete_add(lg, bad)

    def test_moved_uv_endpoint_rejected(self):
        lg, spec = self.worked_swap()
        adds = list(spec.add)
        a = merged([x(1, 4), x(6, 4)])
        b = merged([x(3, 1), x(4, 1)])
        adds[0] = (edge(v(1), b), 30)  # label 30 belongs to u1, not v1
        with pytest.raises(AntimagicError, match="endpoint"):
            delete_add(lg, SwapSpec(spec.delete, tuple(adds)))

    def test_sum_drift_rejected(self):
        lg = block_merge(even_base(2, 3), 3, 1)
        a = merged([x(1, 1), x(6, 1)])
        b = merged([x(2, 1), x(5, 1)])
        p, q = lg.labeling.label(v(1), a), lg.labeling.label(v(2), b)
        assert p != q
        spec = SwapSpec(
            delete=(edge(v(1), a), edge(v(2), b)),
            add=((edge(v(1), b), p), (edge(v(2), a), q)),
        )
        with pytest.raises(SumDriftError):
            delete_add(lg, spec)

    def test_parallel_add_rejected(self):
        lg = block_merge(even_base(2, 3), 3, 1)
        a = merged([x(1, 1), x(6, 1)])
        a2 = merged([x(1, 2), x(6, 2)])
        lab = lg.labeling.label(v(1), a)
        spec = SwapSpec(delete=(edge(v(1), a),), add=((edge(v(1), a2), lab),))
        with pytest.raises(ParallelEdgeError):
            delete_add(lg, spec)

    def test_random_swaps_preserve_coloring(self):
        rng = random.Random(42)
        lg = block_merge(even_base(2, 4), 2, 2)
        for _ in range(25):
            spec = random_swap_spec(lg, rng)
            lg = delete_add(lg, spec)
        base = block_merge(even_base(2, 4), 2, 2)
        assert lg.coloring.colors == base.coloring.colors

    def test_connecting_swaps_reach_one_component(self):
        lg = block_merge(even_base(1, 4), 4, 1)
        out = connecting_swaps(lg)
        assert len(components(out.graph)) == 1
        assert out.coloring.colors == lg.coloring.colors


class TestMergeVBlocks:
    def test_j1_worked_triple(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = merge_v_blocks(pairs, [[v(3 * a - 2), v(3 * a - 1), v(3 * a)] for a in range(1, 5)])
        assert out.colors == {127, 168, 122}

    def test_connected_chain_gives_one_component(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = merge_v_blocks(pairs, connected_chain_blocks(6))
        assert len(components(out.graph)) == 1

    def test_odd_side_is_u(self):
        pairs = block_merge(odd_base(1, 2), 2, 1)
        out = merge_v_blocks(pairs, chunk_blocks(2, 2, "u"), "u")
        uc = (1 + 1) * (12 * 1 * 2 + 4 * 2 + 1) + 2 * 2  # 70
        assert out.colors == {2 * uc, 34, 66}

    def test_size_one_blocks_are_identity(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = merge_v_blocks(pairs, [[v(i)] for i in range(1, 13)])
        assert out.graph == pairs.graph

    def test_unequal_sizes_rejected(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        with pytest.raises(AntimagicError, match="one size"):
            merge_v_blocks(pairs, [[v(1), v(2)], [v(3), v(4), v(5)]])

    def test_common_neighbor_rejected(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        with pytest.raises(ParallelEdgeError):
            merge_v_blocks(pairs, [[v(1), v(12)]])  # same component


class TestGroupComponents:
    def test_worked_h_triple(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = group_components(pairs, (2, 4))
        assert out.colors == {127, 112, 122}
        assert len(components(out.graph)) == 2

    def test_equal_groups(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = group_components(pairs, (3, 3))
        assert out.colors == {127, 112, 122}
        assert len(components(out.graph)) == 2

    def test_single_group_is_connected(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = group_components(pairs, (6,))
        assert len(components(out.graph)) == 1

    def test_wrong_total_rejected(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        with pytest.raises(AntimagicError, match="sum to k"):
            group_components(pairs, (2, 3))

    def test_split_input_even_groups_bipartite(self):
        sp = split_x(block_merge(even_base(1, 4), 4, 1))
        out = group_components(sp, (2, 2))
        assert is_bipartite_equal_parts(out.graph)
        # equal partite size 2*k_i*n + 3*k_i/2 = 7 per group
        from antimagic.graph import bipartition

        for part in bipartition(out.graph):
            assert len(part[0]) == len(part[1]) == 7


class TestPartitionMergeGeneric:
    def test_complementary_pairs_reproduce_block_merge(self):
        base = even_base(2, 3)
        blocks = [[x(i, j), x(7 - i, j)] for j in range(1, 5) for i in range(1, 4)]
        out, report = partition_merge_generic(base, blocks)
        expected = block_merge(even_base(2, 3), 3, 1)
        assert out.labeling.labels == expected.labeling.labels
        assert report.is_three_coloring
        assert report.component_count == 3

    def test_wrong_block_sum_rejected(self):
        base = even_base(2, 3)
        blocks = [[x(1, 1), x(2, 1)]] + [[x(i, j), x(7 - i, j)] for j in range(1, 5) for i in range(1, 4) if (i, j) != (1, 1) and (i, j) != (2, 1)]
        with pytest.raises(SumMismatchError):
            partition_merge_generic(base, blocks)

    def test_requires_fresh_matrix(self):
        lg = block_merge(even_base(2, 3), 3, 1)
        with pytest.raises(AntimagicError):
            partition_merge_generic(lg, [[x(1, 1), x(6, 1)]])


class TestCertificatesAndReplay:
    def test_split_graph_certificate(self):
        sp = split_x(block_merge(even_base(1, 2), 2, 1))
        assert theorem_certificate(sp.graph) == "bipartite-equal-parts"

    def test_merged_graph_certificate(self):
        pairs = block_merge(even_base(1, 6), 6, 1)
        out = merge_v_blocks(pairs, connected_chain_blocks(6))
        assert theorem_certificate(out.graph) == "tripartite"

    def test_replay_round_trip(self):
        rng = random.Random(5)
        lg = split_x(block_merge(even_base(2, 4), 2, 2))
        lg = delete_add(lg, random_swap_spec(lg, rng))
        again = replay(lg.provenance)
        assert again.labeling.labels == lg.labeling.labels
        assert again.graph == lg.graph

    def test_replay_j_chain(self):
        pairs = block_merge(odd_base(1, 3), 3, 1)
        out = group_components(pairs, (3,), "u")
        again = replay(out.provenance)
        assert again.labeling.labels == out.labeling.labels


class TestExpectedColorFormulas:
    def test_block_formula_matches_worked_values(self):
        assert expected_colors_block(EVEN, 2, 2, 1) == {108, 77, 74}
        assert expected_colors_block(ODD, 2, 3, 1) == {261, 111, 146}

    def test_split_formula_matches_worked_values(self):
        assert expected_colors_split(ODD, 2, 3, 1) == {261, 111, 73}
        assert expected_colors_split(EVEN, 2, 3, 1) == {161, 114, 55}
