"""Command-line interface: ``beltedfal <subcommand> [files] [flags]``.

JSON goes to standard output and diagnostics to standard error.  Exit codes:
0 on success, 1 for invalid input or a failed computation, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import beltsum, census, cuts, disks, packing, render, volume
from .core import (
    InvalidCrushtacean,
    PaintedCrushtacean,
    ParseError,
    ValidationReport,
    nerve_of,
    parse,
    serialize,
    validate,
)


class DomainError(Exception):
    """Failure that maps to exit code 1; ``payload`` is echoed on stdout."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


class UsageError(Exception):
    pass


def _read_text(source: str | None) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise DomainError(f"{source}: {exc.strerror}") from None


def _load(source: str | None, check: bool = True) -> PaintedCrushtacean:
    name = source or "<stdin>"
    try:
        g = parse(_read_text(source))
    except ParseError as exc:
        report = ValidationReport(False, (f"parse: {exc}",))
        raise DomainError(f"{name}: {exc}", report.to_dict()) from None
    if check:
        report = validate(g)
        if not report.ok:
            raise DomainError(f"{name}: invalid crushtacean", report.to_dict())
    return g


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    g = _load(args.file, check=False)
    report = validate(g)
    _emit(report.to_dict())
    return 0 if report.ok else 1


def cmd_nerve(args) -> int:
    n = nerve_of(_load(args.file))
    if args.format == "svg":
        _write_or_print(render.render_nerve(n), args.out)
        return 0
    _emit(
        {
            "vertices": n.vertex_count,
            "edges": [list(e) for e in n.edges],
            "faces": [list(f) for f in n.faces],
            "painted": sorted(n.painted),
            "dual_edge": list(n.dual_edge),
        }
    )
    return 0


def cmd_cuts(args) -> int:
    g = _load(args.file)
    found = cuts.all_three_edge_cuts(g)
    if args.nontrivial:
        found = [k for k in found if not k.trivial]
    _emit({"cuts": [k.to_dict() for k in found]})
    return 0


def cmd_disks(args) -> int:
    _emit(disks.disk_census(_load(args.file)).to_dict())
    return 0


def cmd_pairs(args) -> int:
    pairs = disks.separating_pairs(_load(args.file))
    _emit({"pairs": [[a.to_dict(), b.to_dict()] for a, b in pairs]})
    return 0


def cmd_prime(args) -> int:
    g = _load(args.file)
    witness = beltsum.b_prime_witness(g)
    _emit({"b_prime": beltsum.is_b_prime(g), "witness_cut": witness.to_dict() if witness else None})
    return 0


def cmd_decompose(args) -> int:
    g = _load(args.file)
    d = beltsum.canonical_decompose(g)
    if args.refine_whitehead:
        d = beltsum.refine_to_whitehead(d)
    doc = d.to_dict()
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for i, s in enumerate(d.summands):
            path = out / f"summand_{i}.crush"
            path.write_text(serialize(s))
            files.append(str(path))
        tree_path = out / "tree.json"
        tree_path.write_text(json.dumps(d.tree.to_dict(), indent=2, sort_keys=True) + "\n")
        doc["files"] = files
        doc["tree_file"] = str(tree_path)
    _emit(doc)
    return 0


def cmd_sum(args) -> int:
    if args.tree:
        tree_path = Path(args.tree)
        try:
            node = beltsum.SplitNode.from_dict(json.loads(_read_text(args.tree)))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise DomainError(f"{args.tree}: malformed provenance tree ({exc})") from None
        leaves = {}
        for leaf in node.leaves():
            path = tree_path.parent / f"summand_{leaf.summand}.crush"
            if leaf.summand is not None and path.exists():
                leaves[leaf.summand] = _load(str(path))
        g = beltsum.reassemble(node, leaves)
    else:
        if len(args.files) != 2 or args.edge1 is None or args.edge2 is None:
            raise UsageError("sum needs two files with --edge1/--edge2, or --tree")
        g1, g2 = (_load(f) for f in args.files)
        g = beltsum.belted_sum(g1, args.edge1, g2, args.edge2, args.orient, args.drop1, args.drop2)
    _write_or_print(serialize(g), args.out)
    return 0


def _packing(args):
    return packing.pack(nerve_of(_load(args.file)).skeleton(), args.outer_face, args.tol)


def cmd_pack(args) -> int:
    p = _packing(args)
    if args.format == "svg":
        _write_or_print(render.render_packing(p), args.out)
    else:
        _emit(p.to_dict())
    return 0


def cmd_volume(args) -> int:
    g = _load(args.file)
    report = volume.verify_decomposition_volume(g, refine=args.refine_whitehead, tol=args.tol)
    _emit(report.to_dict())
    return 0


def cmd_census(args) -> int:
    rows = census.tabulate_census(args.c_max, args.twist_sensitive)
    if args.format == "json":
        _emit({"rows": [r.to_dict() for r in rows]})
    else:
        text = census.census_csv(rows)
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / "census.csv").write_text(text)
            census.write_sidecars(args.c_max, out / "instances")
        sys.stdout.write(text)
    for r in rows:
        if r.note:
            print(f"c={r.c}: {r.note}", file=sys.stderr)
    return 0


def cmd_render(args) -> int:
    g = _load(args.file)
    if args.what == "crushtacean":
        svg = render.render_crushtacean(g)
    elif args.what == "nerve":
        svg = render.render_nerve(nerve_of(g))
    else:
        svg = render.render_packing(packing.pack(nerve_of(g).skeleton(), args.outer_face, args.tol))
    _write_or_print(svg, args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beltedfal", description="b-primality and belted sums of fully augmented links"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name, func, help_text, file=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if file:
            p.add_argument("file", nargs="?", help="crushtacean file (default: standard input)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a crushtacean file; exit status mirrors the report")
    p = add("nerve", cmd_nerve, "dual triangulation")
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.add_argument("--out")
    p = add("cuts", cmd_cuts, "3-edge cuts with painted counts")
    p.add_argument("--nontrivial", action="store_true", help="only cuts with a vertex pair on each side")
    add("disks", cmd_disks, "thrice-punctured sphere classification")
    add("pairs", cmd_pairs, "separating pairs of disks")
    add("prime", cmd_prime, "decide b-primality")
    p = add("decompose", cmd_decompose, "canonical belted-sum decomposition")
    p.add_argument("--out-dir", help="write summand_<i>.crush files and tree.json here")
    p.add_argument(
        "--refine-whitehead", action="store_true", help="split Borromean summands with a flat circle further"
    )

    p = add("sum", cmd_sum, "belted sum of two crushtaceans, or reassembly of a decomposition", file=False)
    p.add_argument("files", nargs="*")
    p.add_argument("--edge1", type=int)
    p.add_argument("--edge2", type=int)
    p.add_argument("--drop1", type=int)
    p.add_argument("--drop2", type=int)
    p.add_argument("--orient", choices=("preserve", "reverse"), default="preserve")
    p.add_argument("--tree", help="tree.json written by decompose; summand files next to it are used")
    p.add_argument("--out")

    for name, func, help_text in (
        ("pack", cmd_pack, "circle packing of the nerve"),
        ("render", cmd_render, "SVG picture"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--tol", type=float, default=packing.DEFAULT_TOL)
        p.add_argument("--outer-face", type=int, default=0)
        p.add_argument("--out")
    sub.choices["pack"].add_argument("--format", choices=("json", "svg"), default="json")
    sub.choices["render"].add_argument("--what", choices=("crushtacean", "nerve", "packing"), default="crushtacean")

    p = add("volume", cmd_volume, "hyperbolic volume and additivity check")
    p.add_argument("--tol", type=float, default=packing.DEFAULT_TOL)
    p.add_argument("--refine-whitehead", action="store_true")

    p = add("census", cmd_census, "tabulate painted crushtaceans by number of crossing circles", file=False)
    p.add_argument("--c-max", type=int, default=6)
    p.add_argument("--twist-sensitive", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out-dir", help="write census.csv and one JSON sidecar per instance")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"beltedfal: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        if exc.payload is not None:
            _emit(exc.payload)
        print(f"beltedfal: {exc}", file=sys.stderr)
        return 1
    except InvalidCrushtacean as exc:
        _emit(exc.report.to_dict())
        print(f"beltedfal: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        # surgery preconditions, packing or volume failures
        print(f"beltedfal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
