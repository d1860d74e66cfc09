"""Byte-stable JSON / CSV / DOT views of graphs, labelings and matrices."""

from __future__ import annotations

import json
from typing import Any

from .errors import AntimagicError
from .graph import Graph, MERGED_ROLE, U_ROLE, V_ROLE, VertexId, edge, parse_token
from .labeling import EdgeLabeling
from .schemes import LabelMatrix

_SHAPES = {U_ROLE: "box", V_ROLE: "diamond", MERGED_ROLE: "octagon"}


def graph_doc(g: Graph) -> dict[str, Any]:
    return {
        "vertices": [{"id": w.token()} for w in g.sorted_vertices()],
        "edges": [[a.token(), b.token()] for a, b in g.sorted_edges()],
    }


def graph_from_doc(doc: dict[str, Any]) -> Graph:
    try:
        vs = [parse_token(item["id"]) for item in doc["vertices"]]
        es = [(parse_token(a), parse_token(b)) for a, b in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise AntimagicError(f"malformed graph document: {exc}") from exc
    return Graph.build(vs, es)


def labeling_doc(labeling: EdgeLabeling) -> dict[str, Any]:
    items = sorted(labeling.labels.items(), key=lambda kv: kv[1])
    return {
        "graph": graph_doc(labeling.graph),
        "labels": [{"edge": [a.token(), b.token()], "label": lab} for (a, b), lab in items],
    }


def labeling_from_doc(doc: dict[str, Any]) -> EdgeLabeling:
    g = graph_from_doc(doc.get("graph", {}))
    try:
        labels = {
            edge(parse_token(item["edge"][0]), parse_token(item["edge"][1])): int(item["label"])
            for item in doc["labels"]
        }
    except (KeyError, TypeError, IndexError) as exc:
        raise AntimagicError(f"malformed labeling document: {exc}") from exc
    return EdgeLabeling(g, labels)


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def matrix_csv(mx: LabelMatrix) -> str:
    """Rows in canonical order: u-rows by ascending j, uv, v-rows."""
    lines = ["row," + ",".join(str(i) for i in range(1, mx.cols + 1))]
    for key in mx.rows:
        side, j = key
        name = "uv" if side == "uv" else f"{side}{j}"
        lines.append(name + "," + ",".join(str(val) for val in mx.row(key)))
    return "\n".join(lines) + "\n"


def matrix_doc(mx: LabelMatrix) -> dict[str, Any]:
    return {
        "n": mx.n,
        "k": mx.k,
        "parity": mx.parity,
        "rows": [
            {"row": ("uv" if side == "uv" else f"{side}{j}"), "entries": list(mx.row((side, j)))}
            for side, j in mx.rows
        ],
    }


def _shape(w: VertexId) -> str:
    return _SHAPES.get(w.role, "ellipse")


def dot(g: Graph, labeling: EdgeLabeling | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for w in g.sorted_vertices():
        lines.append(f'  "{w.token()}" [shape={_shape(w)}];')
    for a, b in g.sorted_edges():
        attr = ""
        if labeling is not None:
            attr = f' [label="{labeling.labels[(a, b)]}"]'
        lines.append(f'  "{a.token()}" -- "{b.token()}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def provenance_doc(provenance: tuple) -> list[Any]:
    return json.loads(json.dumps([list(step) for step in provenance]))


def provenance_from_doc(doc: list[Any]) -> tuple:
    def freeze(item):
        if isinstance(item, list):
            return tuple(freeze(sub) for sub in item)
        return item

    return tuple(freeze(step) for step in doc)
