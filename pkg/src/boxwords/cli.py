"""Command-line entry point.

Exit codes: 0 when the checked property holds or the search completed,
1 when a property is violated, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import family as fam
from . import geometry, parity, search
from .words import Word, WordError, format_family, parse_family, read_family, write_family

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


def _emit(out, text: str = "") -> None:
    out.write(text + "\n")


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _load_words(path: str) -> list[Word]:
    try:
        return read_family(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_family(path: str, k: int | None) -> fam.WordFamily:
    words = _load_words(path)
    if not words:
        raise UsageError(f"{path}: no words")
    return fam.WordFamily(words, k)


def _write_or_print(args, words, out) -> None:
    if args.out:
        write_family(args.out, words)
    else:
        out.write(format_family(words))


# -- subcommands ------------------------------------------------------------


def cmd_verify_family(args, out) -> int:
    family = _load_family(args.file, args.k)
    rep = fam.check_alpha(family)
    bound = fam.theorem_bound(family.k, family.n)
    within = len(family) <= bound
    _emit(out, f"n={family.n} k={family.k} size={len(family)}")
    for name, ok in (("alpha1", rep.alpha1_ok), ("alpha2", rep.alpha2_ok), ("alpha3", rep.alpha3_ok)):
        _emit(out, f"{name}={'ok' if ok else 'fail'}")
    for line in rep.lines():
        _emit(out, line)
    _emit(out, f"bound={bound} within_bound={_bool(within)}")
    status = ", ".join(
        f"{name} {'ok' if ok else 'FAIL'}"
        for name, ok in (("alpha1", rep.alpha1_ok), ("alpha2", rep.alpha2_ok), ("alpha3", rep.alpha3_ok))
    )
    _emit(out, f"{status}, |V|={len(family)} {'<=' if within else '>'} {bound}")
    return 0 if rep.ok and within else 1


def cmd_verify_tiling(args, out) -> int:
    words = _load_words(args.file)
    rep = parity.verify_tiling(words, args.n)
    _emit(out, f"n={rep.n} members={len(words)} tiling={_bool(rep.ok)}")
    if rep.overlap is not None:
        _emit(out, f"overlap={rep.overlap[0]} {rep.overlap[1]}")
    if rep.deficit is not None:
        _emit(out, f"deficit={rep.deficit}")
    return 0 if rep.ok else 1


def _lemma1_lines(tiling, out) -> bool:
    ok = True
    for split in parity.check_lemma1(tiling):
        bal = split.balanced
        ok &= bal
        _emit(
            out,
            f"class={split.base} even={len(split.even_side)} odd={len(split.odd_side)} "
            f"balanced={_bool(bal)}",
        )
        if split.odd_side:
            _emit(out, f"witness={min(split.odd_side, key=Word.sort_key)}")
    return ok


def cmd_lemma1_check(args, out) -> int:
    if args.random:
        if args.n is None:
            raise UsageError("--random needs --n")
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.random):
            t = parity.random_tiling(args.n, rng, pinwheel_probability=args.pinwheel)
            if not parity.verify_tiling(t).ok or not all(s.balanced for s in parity.check_lemma1(t)):
                bad += 1
                _emit(out, "counterexample")
                out.write(format_family(t))
        _emit(out, f"n={args.n} tilings={args.random} seed={args.seed} failures={bad}")
        return 0 if bad == 0 else 1
    if args.file is None:
        raise UsageError("lemma1-check needs a tiling file or --random")
    words = _load_words(args.file)
    rep = parity.verify_tiling(words, args.n)
    if not rep.ok:
        _emit(out, f"tiling=false {rep.describe()}")
        return 1
    _emit(out, f"n={rep.n} members={len(words)} tiling=true")
    ok = _lemma1_lines(words, out)
    _emit(out, f"lemma1={'holds' if ok else 'violated'}")
    return 0 if ok else 1


def _parse_support(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad support {text!r}") from None


def cmd_char_sum(args, out) -> int:
    support = _parse_support(args.support)
    if (args.word is None) == (args.cube is None):
        raise UsageError("give exactly one of WORD or --cube N")
    if args.cube is not None:
        value = parity.char_sum_cube(support, args.cube)
    else:
        value = parity.char_sum_box(support, Word.parse(args.word))
    _emit(out, f"sum={value}")
    return 0


def cmd_search_max(args, out) -> int:
    seed = _load_family(args.seed_file, args.k) if args.seed_file else None
    problem = search.SearchProblem(
        args.n,
        args.k,
        budget_nodes=args.budget_nodes,
        time_limit=args.time_limit,
        seed_family=seed,
        use_theorem_bound=not args.no_theorem_bound,
        threads=args.threads,
    )
    res = search.max_family(problem)
    _write_or_print(args, res.best_family, out)
    _emit(out, res.summary(args.deterministic))
    if not args.deterministic:
        _emit(out, f"elapsed={res.elapsed:.3f}")
    return 0


def cmd_construct_double(args, out) -> int:
    family = _load_family(args.file, args.k)
    for _ in range(args.times):
        family = fam.double(family)
    _write_or_print(args, family, out)
    if args.out:
        _emit(out, f"n={family.n} k={family.k} size={len(family)}")
    return 0


def cmd_conjecture_probe(args, out) -> int:
    seeds = {}
    if args.seed_file:
        seed = _load_family(args.seed_file, args.k)
        seeds[seed.n] = seed
    ns = list(range(args.n_min, args.n_max + 1))
    ns += [n for n in sorted(seeds) if n not in ns]
    rep = search.conjecture_probe(
        args.k, ns, args.budget_nodes, args.time_limit, seeds, args.out_dir, args.threads
    )
    _emit(out, f"k={rep.k} theorem_bound={fam.theorem_bound(rep.k)} conjectured={search.conjectured_max(rep.k)}")
    for row in rep.rows:
        _emit(out, row.line(args.deterministic))
    _emit(out, f"counterexamples={len(rep.counterexamples)}")
    return 0


def cmd_encode_simplices(args, out) -> int:
    try:
        simplices = geometry.read_simplices(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    all_ok = True
    if args.check_neighbourly:
        for i, j, cert in geometry.check_neighbourly(simplices):
            if cert.ok:
                _emit(out, f"pair={i + 1},{j + 1} neighbourly=true hyperplane={cert.hyperplane} "
                      f"point={geometry.format_point(cert.point)}")
            else:
                all_ok = False
                _emit(out, f"pair={i + 1},{j + 1} neighbourly=false reason={cert.reason}")
    enc = geometry.encode_family(simplices)
    _emit(out, f"hyperplanes={len(enc.hyperplanes)}")
    for i, h in enumerate(enc.hyperplanes, start=1):
        _emit(out, f"H{i}={h}")
    _write_or_print(args, enc.family, out)
    rep = fam.check_alpha(enc.family)
    bound = fam.theorem_bound(enc.family.k, enc.family.n)
    _emit(out, f"k={enc.family.k} size={len(enc.family)} admissible={_bool(rep.ok)} bound={bound}")
    for line in rep.lines():
        _emit(out, line)
    if args.check_neighbourly and all_ok and not rep.ok:
        _emit(out, "note=neighbourly family encodes to a non-admissible word family")
    return 0 if all_ok and rep.ok else 1


def cmd_slice_stats(args, out) -> int:
    family = _load_family(args.file, args.k)
    for i in range(1, family.n + 1):
        c0, c1, cs = fam.slice_counts(family, i)
        _emit(out, f"i={i} zeros={c0} ones={c1} stars={cs}")
    _emit(out, f"balanced_slices={_bool(fam.balanced_slices(family))}")
    rep = fam.check_alpha(family)
    if rep.alpha1_ok and rep.alpha2_ok:
        _emit(out, f"uncovered={fam.uncovered_count(family)}")
        if family.k < family.n and family.n <= args.max_fiber_n:
            for view in fam.all_fibers(family, canonical=True):
                _emit(out, f"delta={view.delta} members={len(view.members)} "
                      f"uncovered={len(view.uncovered)} ones_in_head={','.join(map(str, view.ones_in_head))}")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed")
    common.add_argument("--deterministic", action="store_true", help="omit timing and node counts")
    common.add_argument("--threads", type=int, default=1, help="worker processes for search")

    p = argparse.ArgumentParser(prog="boxwords", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-family", parents=[common], help="check alpha1-alpha3 and the size bound")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_verify_family)

    s = sub.add_parser("verify-tiling", parents=[common], help="check that boxes tile the cube")
    s.add_argument("--n", type=int)
    s.add_argument("file")
    s.set_defaults(func=cmd_verify_tiling)

    s = sub.add_parser("lemma1-check", parents=[common], help="parity balance of minimal classes")
    s.add_argument("--n", type=int)
    s.add_argument("--random", type=int, default=0, metavar="COUNT", help="check COUNT random tilings")
    s.add_argument("--pinwheel", type=float, default=0.0, help="pinwheel substitution probability")
    s.add_argument("file", nargs="?")
    s.set_defaults(func=cmd_lemma1_check)

    s = sub.add_parser("char-sum", parents=[common], help="sum of a character over a box or the cube")
    s.add_argument("--support", default="", help="positions, e.g. 1,2")
    s.add_argument("--cube", type=int, metavar="N")
    s.add_argument("word", nargs="?")
    s.set_defaults(func=cmd_char_sum)

    s = sub.add_parser("search-max", parents=[common], help="largest admissible family")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--seed-file")
    s.add_argument("--no-theorem-bound", action="store_true", help="do not stop at 2^k-2")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search_max)

    s = sub.add_parser("construct-double", parents=[common], help="apply the doubling construction")
    s.add_argument("--k", type=int)
    s.add_argument("--times", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("file")
    s.set_defaults(func=cmd_construct_double)

    s = sub.add_parser("conjecture-probe", parents=[common], help="search several lengths for large families")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n-min", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--seed-file")
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_conjecture_probe)

    s = sub.add_parser("encode-simplices", parents=[common], help="words of a simplex family")
    s.add_argument("--check-neighbourly", action="store_true")
    s.add_argument("--out")
    s.add_argument("file")
    s.set_defaults(func=cmd_encode_simplices)

    s = sub.add_parser("slice-stats", parents=[common], help="slice counts and fiber diagnostics")
    s.add_argument("--k", type=int)
    s.add_argument("--max-fiber-n", type=int, default=16)
    s.add_argument("file")
    s.set_defaults(func=cmd_slice_stats)
    return p


def _validate(args) -> None:
    for name in ("n", "k", "budget_nodes", "times", "random", "cube", "n_min", "n_max"):
        val = getattr(args, name, None)
        if val is not None and val < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    if getattr(args, "k", None) == 0:
        raise UsageError("--k must be positive")
    if args.command == "search-max" and not 1 <= args.k < args.n:
        raise UsageError("search-max needs 1 <= k < n")
    if args.command == "conjecture-probe" and args.n_min > args.n_max:
        raise UsageError("--n-min exceeds --n-max")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args, out)
    except (UsageError, WordError, geometry.GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
