"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 computation
budget exceeded.
"""

from __future__ import annotations

import argparse
import difflib
import logging
import sys
from pathlib import Path

from . import fpgroup as fp
from . import reproduce as repro
from .algebra import AxiomError, as_biquandle, format_solution, make_pair, parse_solution
from .cocycle import CocyclePair, check_pair, check_state_sum_pair, parse_cocycle, universal_presentation
from .coloring import colorings
from .diagram import DiagramError, catalog, catalog_names, data_dir, parse_gauss
from .enumeration import SizeError, census, enumerate_involutive, enumerate_virtual_pairs, write_keys
from .invariant import battery_homs, invariant, state_sum

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class BudgetError(Exception):
    pass


# ------------------------------------------------------------ resolvers


def pair_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "pairs").glob("*.sol"))


def load_pair(ref: str, strict: bool = True):
    path = Path(ref)
    if not path.is_file():
        path = data_dir() / "pairs" / f"{ref}.sol"
        if not path.is_file():
            raise UsageError(f"unknown pair {ref!r}; known: {', '.join(pair_names())}")
    tables = parse_solution(path.read_text())
    if len(tables) != 2:
        raise UsageError(f"{ref}: a pair file needs two tables, found {len(tables)}")
    return make_pair(tables[0], tables[1], name=path.stem, involutive=strict)


def load_diagram(ref: str):
    path = Path(ref)
    if path.is_file():
        return parse_gauss(path.read_text())
    try:
        return catalog(ref)
    except KeyError:
        pass
    if any(ch.isdigit() for ch in ref):
        return parse_gauss(ref)
    raise UsageError(f"unknown diagram {ref!r}; known: {', '.join(catalog_names())}")


def load_battery(directory: str | None) -> list[fp.FiniteGroup]:
    if directory is None:
        return fp.battery()
    files = sorted(Path(directory).glob("*.grp"))
    if not files:
        raise UsageError(f"no *.grp files in {directory}")
    return [fp.parse_group(p.read_text(), name=p.stem) for p in files]


def resolve_target(ref: str, base: Path | None = None):
    """A battery group name, ``free:a,b``, or a ``.grp`` / ``.pres`` file."""
    named = {G.name: G for G in fp.battery()}
    if ref in named:
        return named[ref]
    if ref.startswith("free:"):
        gens = tuple(g.strip() for g in ref[5:].split(",") if g.strip())
        return fp.Presentation(gens, ())
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    if not path.is_file():
        raise UsageError(f"cannot resolve cocycle target {ref!r}")
    if path.suffix == ".grp":
        return fp.parse_group(path.read_text(), name=path.stem)
    return fp.parse_presentation(path.read_text())


def load_cocycle(ref: str) -> CocyclePair:
    path = Path(ref)
    if not path.is_file():
        path = data_dir() / "pairs" / f"{ref}.cocycle"
        if not path.is_file():
            raise UsageError(f"no cocycle file {ref!r}")
    return parse_cocycle(path.read_text(), lambda t: resolve_target(t, path.parent))


# ------------------------------------------------------------ commands


def cmd_check(args, out) -> int:
    if args.cocycle:
        cp = load_cocycle(args.cocycle)
        report = check_state_sum_pair(cp) if args.state_sum else check_pair(cp, load_battery(args.battery))
        if report.ok:
            print(f"cocycle pair: OK ({report.mode})", file=out)
            return EXIT_OK
        print(f"cocycle pair: FAILED ({report.mode}, {len(report.violations)} instances)", file=out)
        for name, inst in report.violations[:10]:
            print(f"  {name} at {tuple(x + 1 for x in inst)}", file=out)
        return EXIT_INVALID
    path = Path(args.pair)
    if not path.is_file():
        path = data_dir() / "pairs" / f"{args.pair}.sol"
    if not path.is_file():
        raise UsageError(f"unknown pair {args.pair!r}; known: {', '.join(pair_names())}")
    tables = parse_solution(path.read_text())
    what = "biquandle" if len(tables) == 1 else "virtual pair"
    try:
        if len(tables) == 1:
            as_biquandle(tables[0])
        else:
            make_pair(tables[0], tables[1], involutive=not args.lenient)
    except AxiomError as exc:
        print(f"{what}: FAILED {type(exc).__name__}: {exc}", file=out)
        return EXIT_INVALID
    print(f"{what}: OK", file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if args.mode == "involutive":
        classes = enumerate_involutive(args.n, compatible_with_flip=args.flip_compatible, long=args.long)
        tables = lambda cls: [cls.representative]  # noqa: E731
    else:
        if args.flip_compatible:
            raise UsageError("--flip-compatible only applies to --mode involutive")
        mode = "aut_induced" if args.mode in ("aut", "aut_induced") else "all"
        classes = enumerate_virtual_pairs(args.n, mode, long=args.long, strict=args.strict, workers=args.workers)
        tables = lambda cls: [cls.representative.S.table, cls.representative.beta.table]  # noqa: E731
    extra = " flip-compatible" if args.flip_compatible else ""
    print(f"n={args.n} mode={args.mode}{extra} classes={len(classes)}", file=out)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        for k, cls in enumerate(classes):
            Path(args.out, f"pair-{args.n}-{k:05d}.sol").write_text(format_solution(tables(cls)))
    if args.keys_file:
        write_keys(args.keys_file, classes)
        print(f"keys written to {args.keys_file}", file=out)
    if args.keys:
        for cls in classes:
            print(cls.hex, file=out)
    return EXIT_OK


def cmd_color(args, out) -> int:
    d = load_diagram(args.diagram)
    vp = load_pair(args.pair)
    cols = colorings(d, vp)
    print(f"colorings: {len(cols)}", file=out)
    if args.list:
        for k, c in enumerate(cols):
            print(f"{k}\t" + " ".join(str(v + 1) for v in c.colors), file=out)
    return EXIT_OK


def cmd_invariant(args, out) -> int:
    d = load_diagram(args.diagram)
    if args.state_sum:
        if not args.cocycle:
            raise UsageError("--state-sum needs --cocycle with a finite abelian target")
        cp = load_cocycle(args.cocycle)
        if not cp.finite or not cp.target.is_abelian:
            raise UsageError("--state-sum needs a finite abelian target")
        result = state_sum(d, cp.vp, cp.f, cp.g, cp.target)
        for value, mult in sorted(result.items()):
            print(f"{mult} x {cp.target.label(value)}", file=out)
        return EXIT_OK
    groups = load_battery(args.battery)
    if args.cocycle:
        cp = load_cocycle(args.cocycle)
        homs = None
    else:
        vp = load_pair(args.pair)
        up = universal_presentation(vp)
        if up.simplified.exhausted:
            raise BudgetError("simplification budget exhausted; presentation is not fully reduced")
        cp = up.cocycle()
        homs = battery_homs(up.simplified, groups)
    if not cp.finite and homs is None:
        homs = battery_homs(cp.target, groups)
    value = invariant(d, cp, homs=homs)
    if args.format == "lines":
        print("\n".join(value.lines()), file=out)
    else:
        print(f"colorings: {len(value.entries)}", file=out)
        print(value.table(), file=out)
    return EXIT_OK


def _load_presentation(args):
    if args.presentation:
        return fp.parse_presentation(Path(args.presentation).read_text())
    up = universal_presentation(load_pair(args.pair))
    if up.simplified.exhausted:
        raise BudgetError("simplification budget exhausted")
    return up.simplified


def cmd_unc(args, out) -> int:
    vp = load_pair(args.pair)
    up = universal_presentation(vp, budget=args.budget)
    p = up.simplified
    print(fp.format_presentation(p, with_aliases=args.aliases).rstrip("\n"), file=out)
    if args.tables:
        print("f table:", file=out)
        print(up.show_table("f"), file=out)
        print("g table:", file=out)
        print(up.show_table("g"), file=out)
    ab = fp.abelianize(p)
    print("abelianization: " + (" x ".join(f"Z/{k}" if k else "Z" for k in ab.factors) or "trivial"), file=out)
    if p.exhausted:
        print("warning: simplification budget exhausted", file=out)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_homs(args, out) -> int:
    p = _load_presentation(args)
    groups = [resolve_target(args.group)] if args.group else load_battery(args.battery)
    total = 0
    for G in groups:
        homs = fp.find_homs(p, G)
        total += len(homs)
        print(f"{G.name}: {len(homs)}", file=out)
        if args.list:
            for h in homs:
                print("  " + ", ".join(f"{g}->{G.label(i)}" for g, i in zip(p.gens, h.images)), file=out)
    return EXIT_OK


def cmd_census(args, out) -> int:
    for n in args.n:
        row = census(n, long=args.long, strict=args.strict, workers=args.workers)
        a, b, c, d = row.as_tuple()
        print(f"n={n} all={a} aut-induced={b} connected={c} both-disconnected={d}", file=out)
        for msg in ([] if args.strict else row.discrepancies()):
            print(f"  note: {msg}", file=out)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    text = repro.render(args.table)
    golden = data_dir() / "golden" / f"{args.table}.txt"
    print(text, end="", file=out)
    if args.bless:
        golden.parent.mkdir(parents=True, exist_ok=True)
        golden.write_text(text)
        print(f"blessed {golden}", file=out)
        return EXIT_OK
    if not golden.is_file():
        print(f"no golden for {args.table}; rerun with --bless to create it", file=out)
        return EXIT_INVALID
    want = golden.read_text()
    if want == text:
        print(f"golden: match ({golden.name})", file=out)
        return EXIT_OK
    diff = difflib.unified_diff(want.splitlines(), text.splitlines(), "golden", "current", lineterm="")
    print("\n".join(diff), file=out)
    print(f"golden: MISMATCH ({golden.name})", file=out)
    return EXIT_INVALID


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vck", description="Virtual knot colorings and cocycle invariants.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a solution, virtual pair or cocycle file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", help="pair name or solution file")
    g.add_argument("--cocycle", help="cocycle pair file")
    p.add_argument("--lenient", action="store_true", help="do not require beta to be involutive")
    p.add_argument("--state-sum", action="store_true", help="check the state-sum conditions instead")
    p.add_argument("--battery", help="directory of *.grp files")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="virtual pairs up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("all", "aut", "aut_induced", "involutive"), default="all")
    p.add_argument("--flip-compatible", action="store_true", help="involutive mode: keep solutions forming a pair with flip")
    p.add_argument("--strict", action="store_true", help="require beta to be involutive")
    p.add_argument("--long", action="store_true", help="allow long-running sizes")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--keys", action="store_true", help="print canonical keys")
    p.add_argument("--keys-file", help="write canonical keys to this file")
    p.add_argument("--out", help="write one solution file per class into this directory")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("color", help="count colorings of a diagram")
    p.add_argument("--diagram", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("invariant", help="conjugacy-class invariant or state sum")
    p.add_argument("--diagram", required=True)
    p.add_argument("--pair")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--cocycle", help="cocycle pair file")
    g.add_argument("--universal", action="store_true", help="use the universal cocycle (default)")
    p.add_argument("--battery", help="directory of *.grp files")
    p.add_argument("--state-sum", action="store_true")
    p.add_argument("--format", choices=("text", "lines"), default="text")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("unc", help="simplified universal group of a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--aliases", action="store_true")
    p.add_argument("--tables", action="store_true", help="print the universal f and g tables")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.set_defaults(func=cmd_unc)

    p = sub.add_parser("homs", help="homomorphisms into finite groups")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair")
    g.add_argument("--presentation")
    p.add_argument("--group", help="battery name or .grp file")
    p.add_argument("--battery")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("census", help="census rows")
    p.add_argument("--n", type=int, nargs="+", default=[2, 3])
    p.add_argument("--strict", action="store_true")
    p.add_argument("--long", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("reproduce", help="regenerate a table and diff against its golden file")
    p.add_argument("table", choices=repro.TABLES)
    p.add_argument("--bless", action="store_true", help="overwrite the golden file")
    p.set_defaults(func=cmd_reproduce)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "invariant" and not args.cocycle and not args.pair:
        print("error: invariant needs --pair or --cocycle", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, SizeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, fp.GuardError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AxiomError, DiagramError, fp.GroupTableError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
