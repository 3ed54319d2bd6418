"""Command-line interface.

Usage errors exit with status 2 (argparse), data errors with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .drawing import to_svg
from .embedding import is_pyramid, validate_polyhedron
from .enumeration import generate_census, is_unigraphic, realizations_of
from .errors import PolyuniError, Undecided
from .isomorphism import canonical_code, code_of_rotation
from .planar_code import read_planar_code, write_planar_code
from .report import encode_graph, report_document
from .transforms import KINDS, TransformInstance, apply
from .witness import find_second_realization, largest_face


def _read_graphs(path: str):
    return read_planar_code(Path(path).read_bytes())


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _params(text: str) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"parameter {key!r} must be an integer") from None
    return out


def cmd_gen(args) -> int:
    census = generate_census(args.max_vertices, config=args.config)
    data = write_planar_code(census.graphs())
    if args.out:
        Path(args.out).write_bytes(data)
    for p, n in census.counts.items():
        print(f"p={p}: {n}")
    print("counts:", " ".join(str(n) for n in census.counts.values()))
    return 0


def cmd_witness(args) -> int:
    docs = []
    failed = 0
    for idx, rs in enumerate(_read_graphs(args.input)):
        g = validate_polyhedron(rs)
        face = largest_face(g, args.face_min)
        if face is None:
            print(f"graph {idx}: no face with at least {args.face_min} sides, skipped", file=sys.stderr)
            continue
        if is_pyramid(g) is not None:
            print(f"graph {idx}: pyramid, skipped", file=sys.stderr)
            continue
        report = find_second_realization(g, face, fallback=not args.no_fallback)
        extra = {"graph": idx}
        if args.timestamps:
            extra["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        docs.append(report_document(report, extra))
        failed += report.stage == "failed"
        print(f"graph {idx}: {report.stage}")
    text = json.dumps(docs, indent=2, sort_keys=True) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{len(docs)} reports, {failed} failed", file=sys.stderr)
    return 1 if failed else 0


def cmd_canon(args) -> int:
    for rs in _read_graphs(args.input):
        print(code_of_rotation(validate_polyhedron(rs).rs).hex())
    return 0


def cmd_iso(args) -> int:
    graphs = _read_graphs(args.a)
    if args.b is not None:
        graphs = graphs[:1] + _read_graphs(args.b)[:1]
    if len(graphs) < 2:
        raise PolyuniError("need two graphs: give two files, or one file holding two graphs")
    g, h = (validate_polyhedron(rs) for rs in graphs[:2])
    same = canonical_code(g) == canonical_code(h)
    print("isomorphic" if same else "not isomorphic")
    return 0 if same else 1


def cmd_unigraphic(args) -> int:
    sigma = args.sequence
    census = generate_census(args.census_max) if args.census_max else None
    try:
        verdict: Optional[bool] = is_unigraphic(sigma, census=census, budget=args.budget)
    except Undecided as exc:
        verdict = None
        print(f"undecided: {exc}", file=sys.stderr)
    print({True: "yes", False: "no", None: "undecided"}[verdict])
    if verdict is not None:
        found = realizations_of(sigma, limit=args.limit, census=census, budget=args.budget)
        for g in found:
            print(canonical_code(g).hex())
    return 0


def cmd_transform(args) -> int:
    graphs = _read_graphs(args.input)
    if not 0 <= args.index < len(graphs):
        raise PolyuniError(f"graph index {args.index} out of range (file holds {len(graphs)})")
    g = validate_polyhedron(graphs[args.index])
    inst = TransformInstance(args.kind, tuple(args.face), args.params)
    out = apply(g, inst)
    doc = {
        "transform": inst.as_dict(),
        "valid": out.valid,
        "rejection_reason": out.rejection_reason,
        "detail": out.detail,
        "is_isomorphic_to_input": out.is_isomorphic_to_input,
        "output": encode_graph(out.result) if out.result is not None else None,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out and out.result is not None:
        Path(args.out).write_bytes(write_planar_code([out.result]))
    return 0


def cmd_render_svg(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for idx, rs in enumerate(_read_graphs(args.input)):
        g = validate_polyhedron(rs)
        (out / f"graph_{idx:05d}.svg").write_text(to_svg(g, title=f"graph {idx}"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyuni", description="Polyhedral graphs and their degree sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate all polyhedra up to a vertex bound")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--config", choices=("default", "reverse"), default="default")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("witness", help="find a second realisation for each input graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--face-min", type=int, default=8)
    p.add_argument("--report")
    p.add_argument("--no-fallback", action="store_true", help="skip the exhaustive last stage")
    p.add_argument("--timestamps", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("canon", help="print hex canonical codes")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", help="exit 0 iff two graphs are isomorphic")
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("unigraphic", help="decide whether a degree sequence has one realisation")
    p.add_argument("--sequence", type=_int_list, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--census-max", type=int, default=0, help="answer from a census up to this many vertices")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.set_defaults(func=cmd_unigraphic)

    p = sub.add_parser("transform", help="apply one transform instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--kind", choices=[k.lower() for k in KINDS if k[0] in "TU"], required=True, type=str.lower)
    p.add_argument("--face", type=_int_list, required=True)
    p.add_argument("--params", type=_params, default={})
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("render-svg", help="write a Tutte drawing per graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render_svg)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None):
        args.kind = args.kind.upper()
    try:
        return args.func(args)
    except PolyuniError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
