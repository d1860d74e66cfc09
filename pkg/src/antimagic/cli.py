"""Command line interface: construct, verify, sweep, oracle.

Exit codes: 0 success, 1 verification failure, 2 input/parameter error.
All outputs are byte-stable across runs for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import AntimagicError, UseSpecialCase
from .graph import components
from .labeling import chi_la_lower_bound, induce, is_local_antimagic
from .oracle import certify_no_2_coloring, edge_cap, exact_chi_la, find_labeling, parallel_exact_chi_la
from .schemes import EVEN, ODD, build_matrix, check_identities
from .serialize import (
    dot,
    dumps,
    graph_from_doc,
    labeling_doc,
    labeling_from_doc,
    matrix_csv,
    matrix_doc,
    provenance_doc,
)
from .sweep import ALL_FAMILIES, SweepRow, sweep
from .transforms import (
    block_merge,
    chunk_blocks,
    connecting_swaps,
    from_matrix,
    group_components,
    merge_all_x,
    merge_v_blocks,
    special_labeled,
    split_x,
)

FAMILIES = (
    "matrix-even",
    "matrix-odd",
    "kP2-join",
    "block-merge",
    "split-G",
    "J1",
    "J2",
    "H-group",
    "delete-add",
    "special-2p2o2",
)


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.replace("+", ",").split(",") if part)


def _build_family(args) -> tuple:
    """Returns (labeled_graph, matrix_or_None)."""
    parity = args.parity
    if args.family == "special-2p2o2":
        return special_labeled(), None
    if args.family == "matrix-even" or (args.family == "matrix-odd"):
        parity = EVEN if args.family == "matrix-even" else ODD
        mx = build_matrix(parity, args.n, args.k)
        return from_matrix(mx), mx
    if args.family == "kP2-join":
        try:
            mx = build_matrix(parity, args.n, args.k)
        except UseSpecialCase:
            return special_labeled(), None
        return merge_all_x(from_matrix(mx)), mx
    mx = build_matrix(parity, args.n, args.k)
    base = from_matrix(mx)
    merged = block_merge(base, args.r, args.s)
    if args.family == "block-merge":
        return merged, mx
    if args.family == "split-G":
        return split_x(merged), mx
    if args.family == "delete-add":
        return connecting_swaps(merged), mx
    side = "v" if parity == EVEN else "u"
    pairs = block_merge(base, args.k, 1) if (args.r, args.s) != (args.k, 1) else merged
    if args.family == "J1":
        return merge_v_blocks(pairs, chunk_blocks(args.k, args.block_size, side), side), mx
    if args.family == "J2":
        return merge_v_blocks(split_x(pairs), chunk_blocks(args.k, args.block_size, side), side), mx
    if args.family == "H-group":
        if not args.ks:
            raise AntimagicError("H-group requires --ks, e.g. --ks 2,4")
        return group_components(pairs, _parse_ints(args.ks), side), mx
    raise AntimagicError(f"unknown family {args.family!r}")


def cmd_construct(args) -> int:
    try:
        lg, mx = _build_family(args)
    except AntimagicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    from .serialize import graph_doc

    (out / "graph.json").write_text(dumps(graph_doc(lg.graph)))
    (out / "labeling.json").write_text(dumps(labeling_doc(lg.labeling)))
    (out / "graph.dot").write_text(dot(lg.graph, lg.labeling))
    (out / "provenance.json").write_text(dumps({"provenance": provenance_doc(lg.provenance)}))
    if mx is not None:
        (out / "matrix.csv").write_text(matrix_csv(mx))
        (out / "matrix.json").write_text(dumps(matrix_doc(mx)))
    colors = sorted(lg.colors)
    ok, bad = is_local_antimagic(lg.labeling)
    report = {
        "family": args.family,
        "order": lg.graph.order,
        "size": lg.graph.size,
        "components": len(components(lg.graph)),
        "colors": colors,
        "local_antimagic": ok,
    }
    (out / "report.json").write_text(dumps(report))
    print(f"{args.family}: order {lg.graph.order}, size {lg.graph.size}, colors {colors}")
    return 0


def cmd_verify(args) -> int:
    try:
        doc = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if "rows" in doc:
        return _verify_matrix(doc)
    if "labels" not in doc:
        print("parse error: document has neither labels nor matrix rows", file=sys.stderr)
        return 2
    try:
        labeling = labeling_from_doc(doc)
    except AntimagicError as exc:
        msg = str(exc)
        if "bijection" in msg or "cover exactly" in msg:
            print(f"verification failed: bijection: {msg}")
            return 1
        print(f"parse error: {msg}", file=sys.stderr)
        return 2
    print("bijection: ok")
    ok, bad = is_local_antimagic(labeling)
    print(f"local-antimagic: {'ok' if ok else f'{len(bad)} violations'}")
    colors = sorted(induce(labeling).color_set)
    print(f"colors: {colors}")
    failed = not ok
    if args.expect_colors:
        expected = sorted(_parse_ints(args.expect_colors))
        match = colors == expected
        print(f"color-set: {'ok' if match else f'expected {expected}'}")
        failed = failed or not match
    return 1 if failed else 0


def _verify_matrix(doc) -> int:
    try:
        parity, n, k = doc["parity"], int(doc["n"]), int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    mx = build_matrix(parity, n, k)
    stored = {row["row"]: tuple(row["entries"]) for row in doc["rows"]}
    built = {("uv" if side == "uv" else f"{side}{j}"): mx.row((side, j)) for side, j in mx.rows}
    if stored != built:
        print("verification failed: matrix entries differ from the closed forms")
        return 1
    report = check_identities(mx, strict=False)
    for failure in report.failures:
        print(f"verification failed: {failure}")
    print("matrix identities: " + ("ok" if report.ok else "failed"))
    return 0 if report.ok else 1


def _sweep_cell_args(n_max: int, k_max: int, families: tuple[str, ...]):
    for parity in (EVEN, ODD):
        for n in range(1, n_max + 1):
            for k in range(1, k_max + 1):
                yield (parity, n, k, families)


def _sweep_worker(cell) -> list[SweepRow]:
    from .sweep import _sweep_cell

    parity, n, k, families = cell
    return list(_sweep_cell(parity, n, k, set(families)))


def cmd_sweep(args) -> int:
    families = tuple(args.families.split(",")) if args.families else ALL_FAMILIES
    unknown = set(families) - set(ALL_FAMILIES)
    if unknown:
        print(f"error: unknown families {sorted(unknown)}", file=sys.stderr)
        return 2
    if args.jobs > 1:
        from multiprocessing import Pool

        cells = list(_sweep_cell_args(args.n_max, args.k_max, families))
        with Pool(processes=args.jobs) as pool:
            rows = [row for cell_rows in pool.map(_sweep_worker, cells) for row in cell_rows]
    else:
        rows = list(sweep(args.n_max, args.k_max, families))
    lines = ["family,parity,params,colors,status,detail"] + [row.csv() for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    failed = sum(1 for row in rows if not row.ok)
    print(f"# {len(rows)} instances, {failed} failures", file=sys.stderr)
    return 1 if failed else 0


def cmd_oracle(args) -> int:
    try:
        doc = json.loads(Path(args.input).read_text())
        if not isinstance(doc, dict):
            raise AntimagicError("expected a graph document object")
        g = graph_from_doc(doc.get("graph", doc))
    except (OSError, json.JSONDecodeError, AntimagicError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    target_colors = set(_parse_ints(args.target_colors)) if args.target_colors else None
    try:
        if args.mode == "chi-la":
            res = parallel_exact_chi_la(g, args.jobs, cap=args.cap) if args.jobs > 1 else exact_chi_la(g, cap=args.cap)
            result = res.value if res.value is not None else "no labeling exists"
            nodes, seconds = res.nodes, res.seconds
        elif args.mode == "certify-2":
            import time as _time

            t0 = _time.perf_counter()
            result = certify_no_2_coloring(g, cap=args.cap)
            nodes, seconds = 0, _time.perf_counter() - t0
        else:
            res = find_labeling(
                g, target_colors=target_colors, target_c=args.target_c,
                mode=("heuristic" if args.mode == "heuristic" else "exact"),
                seed=args.seed, cap=args.cap,
            )
            if res.labeling is None:
                result = "none" if args.mode == "find" else "not found"
            else:
                result = sorted(induce(res.labeling).color_set)
                if args.save:
                    Path(args.save).write_text(dumps(labeling_doc(res.labeling)))
            nodes, seconds = res.nodes, res.seconds
    except AntimagicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "instance": Path(args.input).name,
        "mode": args.mode,
        "result": result,
        "nodes_expanded": nodes,
        "wall_time": round(seconds, 6),
    }
    print(dumps(report), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antimagic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family instance and write its files")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--parity", choices=(EVEN, ODD), default=EVEN)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--ks", default="", help="group sizes for H-group, e.g. 2,4")
    p.add_argument("--block-size", type=int, default=2, help="J-family block size")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a labeling (or matrix) document")
    p.add_argument("input")
    p.add_argument("--expect-colors", default="")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run the family grid and emit a CSV summary")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--families", default="", help=f"comma list from {','.join(ALL_FAMILIES)}")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="exact or heuristic search on a graph document")
    p.add_argument("input")
    p.add_argument("--mode", choices=("chi-la", "find", "heuristic", "certify-2"), default="chi-la")
    p.add_argument("--target-c", type=int, default=None)
    p.add_argument("--target-colors", default="")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--save", default="", help="write a found labeling here")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
