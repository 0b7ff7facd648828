"""Command-line interface.

Exit codes: 0 all checks hold, 1 a mathematical violation was found,
2 usage or input error.  Data goes to stdout, progress to stderr.

TSV columns of ``info --format tsv`` (fixed order)::

    dim point_count interior_count v h_star e degree delta_genus lambda
    kappa regularity is_normal
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .enumeration import SCHEMA, GuardrailExceeded
from .families import FAMILIES, BadParams, FamilySpec, build
from .geometry import (
    DegenerateInput,
    LatticePolytope,
    NotFullDimensional,
    from_points,
    normalize_full_dimensional,
)
from .invariants import (
    equality_case_classify,
    identity_suite,
    invariant_report,
    main_inequality,
    run_checks,
)

TSV_COLUMNS = (
    "dim", "point_count", "interior_count", "v", "h_star", "e", "degree",
    "delta_genus", "lambda", "kappa", "regularity", "is_normal",
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


# -- file formats ---------------------------------------------------------------


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_json(text: str) -> tuple[int, list[tuple[int, ...]]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or set(doc) != {"dim", "vertices"}:
        raise ParseError('expected an object with exactly the keys "dim" and "vertices"', 1, 1)
    n, verts = doc["dim"], doc["vertices"]
    if not _is_int(n) or n < 1:
        raise ParseError('"dim" must be a positive integer', 1, 1)
    if not isinstance(verts, list) or not verts:
        raise ParseError('"vertices" must be a nonempty list', 1, 1)
    out = []
    for i, v in enumerate(verts):
        if not isinstance(v, list) or len(v) != n or not all(_is_int(x) for x in v):
            raise ParseError(f"vertex {i} must be a list of {n} integers", 1, 1)
        out.append(tuple(v))
    return n, out


def parse_text(text: str) -> tuple[int, list[tuple[int, ...]]]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1, 1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ParseError('first line must be "dim <n>"', 1, 1)
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad dimension {head[1]!r}", 1, lines[0].index(head[1]) + 1) from None
    if n < 1:
        raise ParseError("dimension must be positive", 1, lines[0].index(head[1]) + 1)
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != n:
            raise ParseError(f"expected {n} integers, found {len(fields)}", lineno, 1)
        row = []
        col = 0
        for f in fields:
            col = line.index(f, col)
            try:
                row.append(int(f))
            except ValueError:
                raise ParseError(f"not an integer: {f!r}", lineno, col + 1) from None
            col += len(f)
        out.append(tuple(row))
    if not out:
        raise ParseError("no vertices", 1, 1)
    return n, out


def parse_polytope(text: str) -> tuple[int, list[tuple[int, ...]]]:
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def format_polytope(p: LatticePolytope, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps({"dim": p.dim, "vertices": [list(v) for v in p.vertices]}, sort_keys=True) + "\n"
    lines = [f"dim {p.dim}"] + [" ".join(map(str, v)) for v in p.vertices]
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def load_polytope(path: str, normalize: bool = False):
    n, pts = parse_polytope(_read(path))
    if normalize:
        return normalize_full_dimensional(pts)
    return from_points(pts, n), None


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# -- commands -------------------------------------------------------------------


def cmd_info(args) -> int:
    p, transform = load_polytope(args.file, args.normalize)
    rep = invariant_report(p, cap=args.paranoid_cap).to_dict()
    if args.format == "tsv":
        if transform is not None:
            print(json.dumps({"transform": transform.to_dict()}), file=sys.stderr)
        vals = []
        for c in TSV_COLUMNS:
            v = rep[c]
            vals.append(",".join(map(str, v)) if isinstance(v, list) else str(v))
        sys.stdout.write("\t".join(TSV_COLUMNS) + "\n" + "\t".join(vals) + "\n")
    else:
        rep["schema"] = SCHEMA
        if transform is not None:
            rep["transform"] = transform.to_dict()
        _dump(rep)
    return EXIT_OK


def cmd_family(args) -> int:
    name = {"koelman": "koelman_quad", "lawrence": "lawrence_prism"}.get(args.name, args.name)
    params: tuple = ()
    n = args.n
    if name == "koelman_quad":
        if args.a is None or args.b is None or len(args.a) != 1:
            raise BadParams(name, "--a A --b B")
        params, n = (args.a[0], args.b), 2
    elif name == "lawrence_prism":
        if not args.a:
            raise BadParams(name, "--a a_1 ... a_n")
        params = tuple(args.a)
        n = len(params) if n is None else n
    elif name == "fano_pyramid":
        if not args.coords:
            raise BadParams(name, "--coords x1 y1 x2 y2 ...")
        params, n = tuple(args.coords), 3
    if n is None:
        raise BadParams(name, "--n")
    p = build(FamilySpec(name, n, params))
    sys.stdout.write(format_polytope(p, args.format))
    return EXIT_OK


def cmd_check(args) -> int:
    p, _ = load_polytope(args.file, args.normalize)
    reports = []
    if args.suite in ("identities", "all"):
        reports += identity_suite(p)
    if args.suite in ("inequality", "all"):
        reports.append(main_inequality(p))
    if args.suite == "all":
        reports += run_checks(p, ["reciprocity", "extrapolation", "prop5", "lemma51", "lemma52",
                                  "basic_iff_e_eq_n", "tabei_polygon"])
    out = {"schema": SCHEMA, "suite": args.suite, "checks": [r.to_dict() for r in reports]}
    main = next((r for r in reports if r.name == "main_inequality"), None)
    if main is not None and main.detail["equality"]:
        out["equality_case"] = equality_case_classify(p).to_dict()
    ok = all(r.holds is not False for r in reports)
    out["holds"] = ok
    _dump(out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    from .campaigns import verify

    verdict = verify(
        args.theorem,
        dim=args.dim,
        vmax=args.vmax,
        box=args.box,
        jobs=args.jobs,
        random_count=args.random,
        seed=args.seed,
    )
    _dump(verdict.report)
    return EXIT_OK if verdict.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    from .campaigns import THEOREMS

    ap = argparse.ArgumentParser(prog="polydelta", description=__doc__.split("\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="progress logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="invariant report for a polytope file")
    p.add_argument("file", help="polytope file (JSON or text), '-' for stdin")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--normalize", action="store_true", help="re-coordinatize lower-dimensional input")
    p.add_argument("--paranoid-cap", type=int, default=None, metavar="K",
                   help="check normality steps up to K instead of n-1")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("family", help="emit a named polytope")
    p.add_argument("name", choices=FAMILIES + ("koelman", "lawrence"))
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int, nargs="+")
    p.add_argument("--b", type=int)
    p.add_argument("--coords", type=int, nargs="+", help="polygon coordinates for fano_pyramid")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("check", help="run identity / inequality checks")
    p.add_argument("file")
    p.add_argument("--suite", choices=("identities", "inequality", "all"), default="all")
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--dim", type=int)
    p.add_argument("--vmax", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--random", type=int, default=0, help="number of random hull polytopes to add")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"polydelta: parse error: {exc}", file=sys.stderr)
    except NotFullDimensional as exc:
        print(f"polydelta: {exc} (use --normalize)", file=sys.stderr)
    except (BadParams, DegenerateInput, GuardrailExceeded, OSError, ValueError) as exc:
        print(f"polydelta: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
