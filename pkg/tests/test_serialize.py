import json

from antimagic.graph import merged, u, v, x
from antimagic.schemes import build_even_matrix, special_2p2_o2
from antimagic.serialize import (
    dot,
    dumps,
    graph_doc,
    graph_from_doc,
    labeling_doc,
    labeling_from_doc,
    matrix_csv,
    provenance_doc,
    provenance_from_doc,
)
from antimagic.transforms import block_merge, from_matrix, split_x


class TestGraphDoc:
    def test_round_trip(self):
        g, _ = special_2p2_o2()
        assert graph_from_doc(graph_doc(g)) == g

    def test_round_trip_with_merged_ids(self):
        lg = block_merge(from_matrix(build_even_matrix(2, 2)), 2, 1)
        assert graph_from_doc(graph_doc(lg.graph)) == lg.graph

    def test_id_grammar(self):
        doc = graph_doc(split_x(block_merge(from_matrix(build_even_matrix(1, 2)), 2, 1)).graph)
        ids = {item["id"] for item in doc["vertices"]}
        assert "u1" in ids and "v4" in ids
        assert any(tok.startswith("x") and "." in tok for tok in ids)

    def test_vertices_sorted(self):
        g, _ = special_2p2_o2()
        doc = graph_doc(g)
        ids = [item["id"] for item in doc["vertices"]]
        assert ids == ["u1", "u2", "v1", "v2", "x1.1", "x1.2"]


class TestLabelingDoc:
    def test_round_trip(self):
        _, labeling = special_2p2_o2()
        assert labeling_from_doc(labeling_doc(labeling)).labels == labeling.labels

    def test_sorted_by_label(self):
        _, labeling = special_2p2_o2()
        doc = labeling_doc(labeling)
        labs = [item["label"] for item in doc["labels"]]
        assert labs == sorted(labs) == list(range(1, 11))

    def test_byte_stable(self):
        lg = block_merge(from_matrix(build_even_matrix(2, 2)), 2, 1)
        assert dumps(labeling_doc(lg.labeling)) == dumps(labeling_doc(lg.labeling))
        assert dumps(labeling_doc(lg.labeling)) == dumps(
            labeling_doc(block_merge(from_matrix(build_even_matrix(2, 2)), 2, 1).labeling)
        )


class TestMatrixCsv:
    def test_row_order_and_header(self):
        text = matrix_csv(build_even_matrix(2, 4))
        lines = text.strip().split("\n")
        assert lines[0] == "row,1,2,3,4,5,6,7,8"
        names = [line.split(",")[0] for line in lines[1:]]
        assert names == ["ux1", "ux2", "ux3", "ux4", "uv", "vx1", "vx2", "vx3", "vx4"]
        assert lines[1] == "ux1,65,66,67,68,69,70,71,72"


class TestDot:
    def test_role_shapes_and_labels(self):
        g, labeling = special_2p2_o2()
        text = dot(g, labeling)
        assert '"u1" [shape=box];' in text
        assert '"v1" [shape=diamond];' in text
        assert '"x1.1" [shape=ellipse];' in text
        assert '-- "x1.1" [label=' in text

    def test_merged_shape(self):
        lg = block_merge(from_matrix(build_even_matrix(1, 2)), 2, 1)
        assert "[shape=octagon]" in dot(lg.graph)


class TestProvenanceDoc:
    def test_json_round_trip(self):
        lg = split_x(block_merge(from_matrix(build_even_matrix(2, 2)), 2, 1))
        doc = provenance_doc(lg.provenance)
        text = json.dumps(doc)
        assert provenance_from_doc(json.loads(text)) == lg.provenance
