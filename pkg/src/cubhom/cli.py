"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 invalid input (including
presentations or systems that fail validation).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cube_cat as cc
from . import io
from .abgrp import DimensionError, FpAbGroup
from .chain import ChainError, plus_complex
from .coeff import FunctorialityError, SystemError_, constant_system, validate_functoriality
from .cubical_set import PresentationError, inverse_image
from .homology import HomologyError, mayer_vietoris, normalized_complex, result_record

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2

INPUT_ERRORS = (PresentationError, SystemError_, io.FormatError, HomologyError, ChainError,
                cc.CubeError, DimensionError, FileNotFoundError)


class UsageError(ValueError):
    pass


def _orders(text: str) -> list:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad group {text!r}: expected comma-separated orders, 0 meaning Z")


def _system(args, X, cap):
    if getattr(args, "system", None):
        return io.read_system(args.system, X, cap)
    return constant_system(X, FpAbGroup.from_orders(_orders(args.group)), cap)


def _render_line(results) -> str:
    return " ".join(f"H{r.degree}={r.group}" for r in results)


def _structured(results, groups=None, witnesses=False) -> str:
    recs = [result_record(r, groups[r.degree] if groups else None, witnesses=witnesses)
            for r in results]
    return json.dumps({"homology": recs}, indent=2, sort_keys=True)


def cmd_homology(args) -> int:
    X = io.read_set(args.set)
    if args.degree is not None:
        lo = hi = args.degree
    else:
        lo, hi = 0, args.max_degree if args.max_degree is not None else max(X.dim_cap, 0) + 1
    F = _system(args, X, hi + 1)
    bundle = normalized_complex(X, F, hi, check_splitting=False)
    results = [bundle.homology(n) for n in range(lo, hi + 1)]
    if args.format == "structured":
        print(_structured(results, bundle.groups, args.witnesses))
    else:
        print(_render_line(results))
    return EXIT_OK


def cmd_normal_form(args) -> int:
    f = cc.parse_word(args.word, args.source_dim, order=args.order)
    print(cc.render(cc.normal_form(f)))
    if args.verbose:
        print(f)
    return EXIT_OK


def compress_report(results) -> str:
    """``H0=Z, H1..H4=0``: runs of equal groups are merged."""
    parts, k = [], 0
    while k < len(results):
        j = k
        while j + 1 < len(results) and str(results[j + 1].group) == str(results[k].group):
            j += 1
        label = f"H{results[k].degree}" if j == k else f"H{results[k].degree}..H{results[j].degree}"
        parts.append(f"{label}={results[k].group}")
        k = j + 1
    return ", ".join(parts)


def cmd_plus_complex(args) -> int:
    C = plus_complex(args.n)
    results = [C.homology(q) for q in range(args.n + 1)]
    if args.format == "structured":
        print(_structured(results))
    else:
        print(compress_report(results))
    return EXIT_OK


def cmd_mv(args) -> int:
    X = io.read_set(args.set)
    N = args.max_degree
    F = _system(args, X, N + 2)
    first = [s for s in args.first.split(",") if s]
    second = [s for s in args.second.split(",") if s]
    mv = mayer_vietoris(X, first, second, F, N)
    seq = mv.sequence
    names = {"A": "H{n}(X1nX2)", "B": "H{n}(X1)+H{n}(X2)", "C": "H{n}(X1uX2)"}
    print(f"cover: X1={','.join(sorted(mv.cover.X1.dims))}")
    print(f"       X2={','.join(sorted(mv.cover.X2.dims))}")
    for n in range(N, -1, -1):
        a, b, c = (names[k].format(n=n) for k in "ABC")
        print(f"{a} = {seq.H_A[n].group}")
        print(f"{b} = {seq.H_B[n].group}")
        print(f"{c} = {seq.H_C[n].group}")
        print(f"  {a} -> {b}: {seq.incl_star[n].matrix.tolist()}")
        print(f"  {b} -> {c}: {seq.proj_star[n].matrix.tolist()}")
        if n >= 1:
            print(f"  {c} -> {names['A'].format(n=n - 1)}: {seq.connecting[n].matrix.tolist()}")
    for label, ok in seq.exactness:
        n, part = label[1:label.index("(")], label[label.index("(") + 1]
        print(f"exact at {names[part].format(n=n)}: {'yes' if ok else 'NO'}")
    verdict = seq.is_exact()
    print("verdict: " + ("exact" if verdict else "not exact"))
    return EXIT_OK if verdict else EXIT_INTERNAL


def cmd_inverse_image(args) -> int:
    X, Y = io.read_set(args.source), io.read_set(args.target)
    f = io.map_from_json(io.load_json(args.map), X, Y)
    y = io.parse_cube(args.cube, Y)
    S, _ = inverse_image(f, y)
    text = io.dumps(io.set_to_json(S))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    status = EXIT_OK
    if args.set:
        X = io.read_set(args.set)
        print(f"{args.set}: valid cubical set {X!r}")
        if args.system:
            cap = args.cap if args.cap is not None else max(X.dim_cap, 0) + 2
            F = io.read_system(args.system, X, cap)
            validate_functoriality(F)
            print(f"{args.system}: valid system, cap {F.cap}")
    elif args.system:
        raise UsageError("a system needs the cubical set it lives on")
    if args.properties:
        from .properties import run_all
        scale = dict(words=1000, matrices=200, corpus=20) if args.quick else {}
        for rep in run_all(args.seed, **scale):
            print(rep)
            for msg in rep.failures[:5]:
                print(f"  {msg}")
            if not rep.ok:
                status = EXIT_INVALID
    if not (args.set or args.properties):
        raise UsageError("nothing to validate")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubhom",
                                description="Homology of finite cubical sets with coefficients.")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homology", help="homology groups of a cubical set")
    h.add_argument("set", help="cubical set presentation (JSON)")
    h.add_argument("system", nargs="?", help="coefficient system (JSON); default constant group")
    h.add_argument("--group", default="0", help="constant coefficients as cyclic orders, 0 = Z")
    g = h.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int)
    g.add_argument("--max-degree", type=int)
    h.add_argument("--format", choices=("text", "structured"), default="text")
    h.add_argument("--witnesses", action="store_true", help="include cycle representatives")
    h.set_defaults(func=cmd_homology)

    n = sub.add_parser("normal-form", help="normal form of a face/degeneracy word")
    n.add_argument("word", help='e.g. "e[1] d[1,0]"')
    n.add_argument("--order", choices=("apply", "compose"), default="apply",
                   help="apply: letters act left to right; compose: rightmost acts first")
    n.add_argument("--source-dim", type=int)
    n.add_argument("--verbose", action="store_true")
    n.set_defaults(func=cmd_normal_form)

    q = sub.add_parser("plus-complex", help="homology of the complex of injective morphisms")
    q.add_argument("n", type=int)
    q.add_argument("--format", choices=("text", "structured"), default="text")
    q.set_defaults(func=cmd_plus_complex)

    m = sub.add_parser("mv", help="Mayer-Vietoris sequence of two subobjects")
    m.add_argument("set")
    m.add_argument("system", nargs="?")
    m.add_argument("--first", required=True, help="comma-separated generating cubes of X1")
    m.add_argument("--second", required=True, help="comma-separated generating cubes of X2")
    m.add_argument("--group", default="0")
    m.add_argument("--max-degree", type=int, default=2)
    m.set_defaults(func=cmd_mv)

    i = sub.add_parser("inverse-image", help="inverse image of a cube under a cubical map")
    i.add_argument("source")
    i.add_argument("target")
    i.add_argument("map")
    i.add_argument("cube", help="cube of the target, e.g. 'v' or 'v<1>'")
    i.add_argument("-o", "--output")
    i.set_defaults(func=cmd_inverse_image)

    v = sub.add_parser("validate", help="validate files or run the property suites")
    v.add_argument("set", nargs="?")
    v.add_argument("system", nargs="?")
    v.add_argument("--cap", type=int, default=None, help="cap for systems that do not state one (default: top dimension + 2)")
    v.add_argument("--properties", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--quick", action="store_true", help="smaller property suites")
    v.set_defaults(func=cmd_validate)
    return p


def _diagnostic(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, FunctorialityError):
        v = exc.violation
        out["violation"] = {"relation": v.relation, "degree": v.degree, "cube": str(v.cube),
                            "indices": list(v.indices), "paths": [v.left_path, v.right_path]}
    elif isinstance(exc, PresentationError) and exc.instance is not None:
        out["instance"] = repr(exc.instance)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS + (UsageError,) as exc:
        print(json.dumps(_diagnostic(exc), sort_keys=True), file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(json.dumps(_diagnostic(exc), sort_keys=True), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
