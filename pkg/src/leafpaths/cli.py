"""Command-line interface: ``leafpaths <command> ...``.

Exit codes: 0 success, 1 a bound was violated, 2 bad input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import random
import sys
from typing import Iterator, TextIO

from . import __version__
from .generators import (
    FAMILIES,
    FamilySpec,
    make_t_delta_h,
    random_degree_sequence,
    random_tree_with_degrees,
)
from .greedy import min_height, min_height_k, min_radius, rooted_form
from .kraft import kraft_survey
from .oracle import (
    CapExceededError,
    EnumerationScope,
    GapRecord,
    NoTreeInScopeError,
    _require,
    canonical_form,
    enumerate_trees,
    f_of_D_upper,
    gap_record,
    iter_gap_records,
)
from .pathlens import certified_lower_bound, lp_set
from .tree import (
    TreeError,
    degree_sequence_of,
    metrics,
    parse_sequence,
    parse_tree,
    serialize_tree,
    validate_degree_sequence,
    validate_out_degree_sequence,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
RANDOM_CHECK_CAP = 100_000

GAP_COLUMNS = [
    "n", "degree_sequence", "rad_s", "rad_s_prime", "lp", "diameter", "theorem2_bound", "satisfied",
]
KRAFT_COLUMNS = [
    "leaves", "shape_id", "sum_numerator", "sum_exponent", "bound", "equality", "perfect",
    "every_internal_has_2_children",
]


class InputError(ValueError):
    pass


def _int_range(text: str) -> list[int]:
    """``"4"`` -> [4]; ``"1..6"`` -> [1, ..., 6]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None


def _header(args: argparse.Namespace) -> str:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    seed = flags.get("seed", 0)
    return (
        f"# leafpaths {__version__} command={args.command} seed={seed} "
        f"flags={json.dumps(flags, sort_keys=True, default=str)}\n"
    )


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _summary_stream(args: argparse.Namespace) -> TextIO:
    # Keep stdout clean when it carries the CSV.
    return sys.stderr if getattr(args, "out", None) in (None, "-") else sys.stdout


def _seq(text: str) -> list[int]:
    return parse_sequence(text)


# -- commands --------------------------------------------------------------------


def cmd_lp(args: argparse.Namespace) -> int:
    try:
        with open(args.tree) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.tree}: {exc.strerror}") from None
    tree = parse_tree(text)
    lengths = lp_set(tree)
    diam = metrics(tree).diameter
    cert = certified_lower_bound(tree) if tree.n >= 2 else None
    bound = cert.bound if cert else 1
    if args.csv:
        out = io.StringIO()
        out.write(_header(args))
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "lp", "lp_nontrivial", "set", "diameter", "bound", "certificate"])
        w.writerow([tree.n, len(lengths), len(lengths) - 1, str(lengths), diam, bound,
                    cert.describe() if cert else ""])
        sys.stdout.write(out.getvalue())
    else:
        print(f"lp={len(lengths)} set={lengths} bound>={bound}")
        print(f"nontrivial={len(lengths) - 1} diameter={diam} n={tree.n}")
        if cert:
            print(f"certificate: {cert.describe()}")
    return EXIT_OK


def cmd_rad(args: argparse.Namespace) -> int:
    s = validate_degree_sequence(_seq(args.seq))
    rad, witness = min_radius(s)
    s_plus = rooted_form(s)
    h, _ = min_height(s_plus)
    print(f"rad={rad}")
    print(f"h(s+)={h} s+={s_plus}")
    if args.witness:
        with open(args.witness, "w") as fh:
            fh.write(serialize_tree(witness.rooted.tree))
    if h != rad:
        print(f"VIOLATION: h(s+)={h} != rad(s)={rad}", file=sys.stderr)
        return EXIT_VIOLATION
    print("eq1=ok")
    return EXIT_OK


def cmd_hk(args: argparse.Namespace) -> int:
    s_plus = validate_out_degree_sequence(_seq(args.seq))
    if not 1 <= args.k <= s_plus.leaves:
        raise InputError(f"k={args.k} outside 1..{s_plus.leaves}")
    value, p, witness = min_height_k(s_plus, args.k)
    sub = ",".join(map(str, sorted(witness.rooted.out_degrees(), reverse=True)))
    print(f"h(s+,k)={value} k={args.k} p={p} subsequence={sub}")
    if args.witness:
        with open(args.witness, "w") as fh:
            fh.write(serialize_tree(witness.rooted.tree))
    return EXIT_OK


def _check_records(args: argparse.Namespace) -> Iterator[GapRecord]:
    """Validate the corpus flags now; the returned iterator builds records lazily."""
    if args.family:
        for delta in args.delta:
            for h in args.h:
                if delta < 3 or h < 1:
                    raise InputError(f"t_delta_h needs delta >= 3 and h >= 1, got {delta}, {h}")
        return (gap_record(make_t_delta_h(d, h)) for d in args.delta for h in args.h)
    if args.random:
        _require(args.random, RANDOM_CHECK_CAP, "random")
        if args.max_n < 2:
            raise InputError("--max-n must be at least 2")
        return _random_records(args.random, args.max_n, args.seed)
    if args.seq:
        scope = EnumerationScope(
            mode="trees_with_degree_sequence", sequence=tuple(_seq(args.seq)),
            dedupe=not args.labeled, no_degree2=args.no_deg2,
        )
        validate_degree_sequence(scope.sequence)
    elif args.all_n:
        scope = EnumerationScope(
            n=args.all_n, n_min=2, dedupe=not args.labeled, no_degree2=args.no_deg2
        )
    else:
        raise InputError("choose a corpus: --all-n, --seq, --family or --random")
    scope.check_caps()
    return iter_gap_records(scope, workers=args.workers)


def _random_records(count: int, max_n: int, seed: int) -> Iterator[GapRecord]:
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(2, max_n)
        s = random_degree_sequence(n, seed + i)
        yield gap_record(random_tree_with_degrees(s, seed + i))


def _gap_row(r: GapRecord) -> list:
    t2 = "" if r.theorem2_bound is None else f"{r.theorem2_bound:.6f}"
    return [r.n, ",".join(map(str, r.degree_sequence)), r.rad_s, r.rad_s_prime, r.lp, r.diameter,
            t2, int(r.satisfied)]


def cmd_check(args: argparse.Namespace) -> int:
    summary = _summary_stream(args)
    records = _check_records(args)
    seen = 0
    bad: list[GapRecord] = []
    counts = {"leaf_bound": 0, "radius_bound": 0, "diameter": 0}
    max_gap = max_gap_prime = None
    interrupted = False
    with _output(args.out) as out:
        out.write(_header(args))
        w = csv.writer(out, lineterminator="\n")
        w.writerow(GAP_COLUMNS)
        try:
            for r in records:
                seen += 1
                w.writerow(_gap_row(r))
                for key, ok in (("leaf_bound", r.leaf_bound_ok), ("radius_bound", r.radius_bound_ok),
                                ("diameter", r.diameter_ok)):
                    if ok is not None:
                        counts[key] += 1
                if not r.satisfied:
                    bad.append(r)
                if r.n >= 2:
                    if r.no_degree2:
                        max_gap = r.gap if max_gap is None else max(max_gap, r.gap)
                    max_gap_prime = r.gap_prime if max_gap_prime is None else max(max_gap_prime, r.gap_prime)
                if args.progress and seen % args.progress == 0:
                    print(f"... {seen} trees", file=sys.stderr, flush=True)
        except KeyboardInterrupt:
            interrupted = True
        out.flush()
    verdict = "FAIL" if bad else "PASS"
    print(
        f"trees={seen} leaf_bound_checked={counts['leaf_bound']} radius_bound_checked={counts['radius_bound']} "
        f"diameter_checked={counts['diameter']} max_gap_rad={max_gap} "
        f"max_gap_rad_prime={max_gap_prime} violations={len(bad)} verdict={verdict}",
        file=summary,
    )
    for r in bad[:50]:
        print(f"violation: n={r.n} s={','.join(map(str, r.degree_sequence))} lp={r.lp} "
              f"leaf_bound={r.leaf_bound_ok} radius_bound={r.radius_bound_ok} diameter={r.diameter_ok}",
              file=sys.stderr)
    if interrupted:
        print(f"interrupted after {seen} trees; CSV is partial", file=sys.stderr)
        return 130
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_fd(args: argparse.Namespace) -> int:
    summary = _summary_stream(args)
    with _output(args.out) as out:
        out.write(_header(args))
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["D", "n_cap", "kind", "f_upper", "lower_bound", "ratio", "consistent", "witness"])
        inconsistent = 0
        for D in args.D:
            r = f_of_D_upper(D, args.n_cap)
            inconsistent += not r.consistent
            edges = " ".join(f"{u}-{v}" for u, v in r.witness.edges())
            w.writerow([D, args.n_cap, r.kind, r.value, f"{r.lower_bound:.6f}",
                        f"{r.value / D:.6f}", int(r.consistent), edges])
            print(f"D={D} f(D)<={r.value} (upper bound over n<={args.n_cap}, "
                  f"{r.trees_seen} trees) lower={r.lower_bound:.4f}", file=summary)
    return EXIT_VIOLATION if inconsistent else EXIT_OK


def cmd_kraft(args: argparse.Namespace) -> int:
    summary = _summary_stream(args)
    rows = []
    with _output(args.out) as out:
        out.write(_header(args))
        w = csv.writer(out, lineterminator="\n")
        w.writerow(KRAFT_COLUMNS)
        for r in kraft_survey(args.leaf_cap):
            rows.append(r)
            w.writerow([r.leaves, r.shape_id, r.total.numerator, r.total.exponent,
                        f"{r.leaves - 1}/4", int(r.equality), int(r.perfect),
                        int(r.every_internal_has_2_children)])
    eq = [r for r in rows if r.equality]
    violated = [r for r in rows if not r.holds]
    print(f"shapes={len(rows)} satisfied={len(rows) - len(violated)} equality={len(eq)}", file=summary)
    print(f"equality set == full shapes: {set(r.shape_id for r in eq) == set(r.shape_id for r in rows if r.every_internal_has_2_children)}",
          file=summary)
    print(f"equality set == perfect shapes: {set(r.shape_id for r in eq) == set(r.shape_id for r in rows if r.perfect)}",
          file=summary)
    print(f"all perfect shapes reach equality: {all(r.equality for r in rows if r.perfect)}", file=summary)
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    spec = FamilySpec(
        args.family,
        delta=args.delta,
        h=args.h,
        leaves=args.leaves,
        degrees=tuple(_seq(args.seq)) if args.seq else None,
        seed=args.seed,
    )
    tree = spec.build()
    with _output(args.out) as out:
        out.write(serialize_tree(tree))
    return EXIT_OK


def cmd_enum(args: argparse.Namespace) -> int:
    if args.seq:
        scope = EnumerationScope(mode="trees_with_degree_sequence", sequence=tuple(_seq(args.seq)),
                                 dedupe=not args.labeled, no_degree2=args.no_deg2)
    elif args.D is not None:
        scope = EnumerationScope(mode="no_degree2_diameter_D", D=args.D, n_cap=args.n_cap)
    elif args.n is not None:
        scope = EnumerationScope(n=args.n, n_min=args.n_min, dedupe=not args.labeled,
                                 no_degree2=args.no_deg2)
    else:
        raise InputError("choose a scope: --n, --seq or --D")
    summary = _summary_stream(args)
    count = 0
    with _output(args.out) as out:
        out.write(_header(args))
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "n", "degree_sequence", "canonical_form", "edges"])
        for t in enumerate_trees(scope):
            w.writerow([count, t.n, ",".join(map(str, degree_sequence_of(t).entries)),
                        canonical_form(t), " ".join(f"{u}-{v}" for u, v in t.edges())])
            count += 1
    print(f"trees={count}", file=summary)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leafpaths", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"leafpaths {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lp", help="leaf-to-leaf path lengths of a tree file")
    s.add_argument("tree", help="edge-list file")
    s.add_argument("--csv", action="store_true", help="machine-readable output")
    s.set_defaults(func=cmd_lp)

    s = sub.add_parser("rad", help="minimum radius of a degree sequence")
    s.add_argument("--seq", required=True, help="comma-separated degrees")
    s.add_argument("--witness", help="write the greedy witness tree here")
    s.set_defaults(func=cmd_rad)

    s = sub.add_parser("hk", help="h(s+, k) for an out-degree sequence")
    s.add_argument("--seq", required=True, help="comma-separated out-degrees")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--witness", help="write the witness tree here")
    s.set_defaults(func=cmd_hk)

    s = sub.add_parser("check", help="check lower bounds over a corpus of trees")
    s.add_argument("--all-n", type=int, help="every tree with 2..N vertices")
    s.add_argument("--seq", help="every realization of this degree sequence")
    s.add_argument("--family", choices=["t_delta_h"])
    s.add_argument("--delta", type=_int_range, default=[3])
    s.add_argument("--h", type=_int_range, default=[1])
    s.add_argument("--random", type=int, default=0, help="number of random trees")
    s.add_argument("--max-n", type=int, default=200)
    s.add_argument("--no-deg2", action="store_true", help="only trees without degree-2 vertices")
    s.add_argument("--labeled", action="store_true", help="labeled trees instead of shapes")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--progress", type=int, default=0, help="report every N trees on stderr")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("fD", help="upper bound on f(D) by enumeration")
    s.add_argument("--D", type=_int_range, required=True)
    s.add_argument("--n-cap", type=int, default=12)
    s.add_argument("--out")
    s.set_defaults(func=cmd_fd)

    s = sub.add_parser("kraft", help="Kraft-sum survey over binary shapes")
    s.add_argument("--leaf-cap", type=int, default=8)
    s.add_argument("--out")
    s.set_defaults(func=cmd_kraft)

    s = sub.add_parser("gen", help="emit a tree from a named family")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--delta", type=int)
    s.add_argument("--h", type=int, help="height (t_delta_h) or depth (perfect_binary)")
    s.add_argument("--leaves", type=int)
    s.add_argument("--seq")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("enum", help="list trees in an enumeration scope")
    s.add_argument("--n", type=int)
    s.add_argument("--n-min", type=int)
    s.add_argument("--seq")
    s.add_argument("--D", type=int)
    s.add_argument("--n-cap", type=int, default=12)
    s.add_argument("--no-deg2", action="store_true")
    s.add_argument("--labeled", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_enum)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TreeError, InputError, NoTreeInScopeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
