"""Families of words with prescribed prop size and pairwise single clashes.

The three conditions checked here:

* alpha1: every word has exactly k fixed coordinates;
* alpha2: any two distinct words clash in exactly one coordinate;
* alpha3: distinct words have distinct prop sets.

Under them, with 3 <= k < n, the family has at most 2^k - 2 members.  The
diagnostics below expose the quantities used to reach that bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import (
    Complementation,
    ElementaryOp,
    Permutation,
    Word,
    WordError,
    apply_ops,
    as_word,
    clash_mask,
    invert_ops,
)

MAX_FIBER_K = 24


def theorem_bound(k: int, n: int | None = None) -> int:
    """Largest admissible family size for prop size k."""
    if n is not None and k >= n:
        return 1
    if k <= 1:
        return 1
    if k == 2:
        return 3
    return (1 << k) - 2


@dataclass
class WordFamily:
    words: tuple[Word, ...]
    n: int
    k: int

    def __init__(self, words: Iterable[Word | str], k: int | None = None, n: int | None = None):
        ws = tuple(as_word(w) for w in words)
        if ws:
            m = ws[0].n
            for w in ws:
                if w.n != m:
                    raise WordError(f"length mismatch: {w.n} != {m}")
            if n is not None and n != m:
                raise WordError(f"words have length {m}, expected {n}")
            n = m
        elif n is None:
            raise WordError("empty family needs an explicit length")
        if k is None:
            if not ws:
                raise WordError("empty family needs an explicit k")
            k = ws[0].rank
        if len(set(ws)) != len(ws):
            raise WordError("duplicate words in family")
        self.words = ws
        self.n = n
        self.k = k

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return as_word(w) in self.words

    def sorted(self) -> "WordFamily":
        return WordFamily(sorted(self.words, key=Word.sort_key), self.k, self.n)


@dataclass
class AlphaReport:
    alpha1_ok: bool = True
    alpha2_ok: bool = True
    alpha3_ok: bool = True
    violations: list[tuple[str, tuple[Word, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = []
        for cond, witness in self.violations:
            out.append(f"violation={cond} " + " ".join(map(str, witness)))
        return out


def check_alpha(family: WordFamily | Iterable[Word | str], k: int | None = None) -> AlphaReport:
    """Check all three conditions, collecting every violation."""
    if not isinstance(family, WordFamily):
        family = WordFamily(family, k)
    elif k is not None and k != family.k:
        family = WordFamily(family.words, k)
    k = family.k
    rep = AlphaReport()
    ws = family.words
    for w in ws:
        if w.rank != k:
            rep.alpha1_ok = False
            rep.violations.append(("alpha1", (w,)))
    for i, a in enumerate(ws):
        for b in ws[i + 1:]:
            c = clash_mask(a, b)
            if c == 0 or c & (c - 1):
                rep.alpha2_ok = False
                rep.violations.append(("alpha2", (a, b)))
            if a.fixed == b.fixed:
                rep.alpha3_ok = False
                rep.violations.append(("alpha3", (a, b)))
    return rep


def is_alpha_valid(family: WordFamily | Iterable[Word | str], k: int | None = None) -> bool:
    return check_alpha(family, k).ok


def _require_valid(family: WordFamily) -> None:
    rep = check_alpha(family)
    if not rep.ok:
        raise WordError("family violates " + ", ".join(sorted({c for c, _ in rep.violations})))


# -- slices -----------------------------------------------------------------


def slice_counts(family: WordFamily | Iterable[Word | str], i: int) -> tuple[int, int, int]:
    """Numbers of words with 0, 1 and * at 1-based position ``i``."""
    if not isinstance(family, WordFamily):
        family = WordFamily(family)
    if not 1 <= i <= family.n:
        raise WordError(f"position {i} out of range 1..{family.n}")
    bit = 1 << (i - 1)
    c0 = c1 = cs = 0
    for w in family:
        if not w.fixed & bit:
            cs += 1
        elif w.ones & bit:
            c1 += 1
        else:
            c0 += 1
    return c0, c1, cs


def balanced_slices(family: WordFamily) -> bool:
    """|V^{i0}| = |V^{i1}| != 0 and V^{i*} nonempty at every position."""
    for i in range(1, family.n + 1):
        c0, c1, cs = slice_counts(family, i)
        if c0 != c1 or c0 == 0 or cs == 0:
            return False
    return True


def unbalanced_positions(family: WordFamily) -> list[int]:
    out = []
    for i in range(1, family.n + 1):
        c0, c1, _ = slice_counts(family, i)
        if c0 != c1:
            out.append(i)
    return out


def uncovered_count(family: WordFamily) -> int:
    """Points of the cube outside every member; needs alpha1 and alpha2."""
    rep = check_alpha(family)
    if not (rep.alpha1_ok and rep.alpha2_ok):
        raise WordError("uncovered_count needs alpha1 and alpha2 (disjoint members of equal size)")
    return (1 << family.n) - len(family) * (1 << (family.n - family.k))


def half_cube_uncovered(family: WordFamily, i: int, value: int) -> int:
    """Uncovered points of the half cube x_i = value, by enumeration."""
    if not 1 <= i <= family.n:
        raise WordError(f"position {i} out of range 1..{family.n}")
    n = family.n
    bit = 1 << (i - 1)
    covered = set()
    for w in family:
        if w.fixed & bit and bool(w.ones & bit) != bool(value):
            continue
        for x in w.points():
            if bool(x & bit) == bool(value):
                covered.add(x)
    return (1 << (n - 1)) - len(covered)


# -- fibers -----------------------------------------------------------------


@dataclass
class FiberView:
    delta: Word
    members: list[Word]
    pieces: list[Word]
    uncovered: list[Word]
    ones_in_head: list[int]

    @property
    def odd_points(self) -> list[Word]:
        return [p for p, c in zip(self.uncovered, self.ones_in_head) if c % 2]


def _fiber(family: WordFamily, delta: Word) -> FiberView:
    n, k = family.n, family.k
    if k > MAX_FIBER_K:
        raise WordError(f"fiber enumeration limited to k <= {MAX_FIBER_K}")
    head = (1 << k) - 1
    fiber = Word(n, ((1 << n) - 1) & ~head, delta.ones << k)
    members, pieces = [], []
    covered = set()
    for w in family:
        if clash_mask(w, fiber):
            continue
        piece = Word(n, w.fixed | fiber.fixed, w.ones | fiber.ones)
        members.append(w)
        pieces.append(piece)
        covered.update(piece.points())
    uncovered, ones = [], []
    for x in fiber.points():
        if x in covered:
            continue
        uncovered.append(Word(n, (1 << n) - 1, x))
        ones.append((x & head).bit_count())
    return FiberView(delta, members, pieces, uncovered, ones)


def fiber_view(
    family: WordFamily,
    delta: Word | str,
    canonical: bool = False,
) -> FiberView:
    """Restrict the family to the fiber *...*delta (delta fixes the last n-k coordinates).

    With ``canonical=True`` the family is first moved by elementary operations
    so that it contains 0^k *^(n-k); the fiber is taken in those coordinates and
    every reported word is mapped back to the original coordinates.
    """
    m = family.n - family.k
    if m < 1:
        raise WordError("fibers need k < n")
    delta = as_word(delta)
    if delta.n != m or not delta.is_point():
        raise WordError(f"delta must be a 0/1 word of length {m}")
    if not canonical:
        return _fiber(family, delta)
    image, ops = canonicalize(family)
    view = _fiber(image, delta)
    back = invert_ops(ops)
    by_image = dict(zip(image.words, family.words))
    return FiberView(
        delta,
        [by_image[w] for w in view.members],
        [apply_ops(back, w) for w in view.pieces],
        [apply_ops(back, w) for w in view.uncovered],
        view.ones_in_head,
    )


def all_fibers(family: WordFamily, canonical: bool = False) -> list[FiberView]:
    m = family.n - family.k
    return [
        fiber_view(family, Word(m, (1 << m) - 1, d), canonical=canonical)
        for d in range(1 << m)
    ]


# -- normal form ------------------------------------------------------------


def _lex_key(w: Word) -> str:
    # symbol order 0 < 1 < *
    return str(w).replace("*", "2")


def canonicalize(family: WordFamily) -> tuple[WordFamily, list[ElementaryOp]]:
    """Map the lexicographically least word (0 < 1 < *) to 0^k *^(n-k).

    Returns the image family, in the original member order, and the
    operations applied (empty when nothing had to move).
    """
    if not len(family):
        raise WordError("cannot canonicalize an empty family")
    n = family.n
    lead = min(family.words, key=_lex_key)
    if any(w.rank != lead.rank for w in family):
        raise WordError("canonicalize needs alpha1 (equal prop sizes)")
    ops: list[ElementaryOp] = []
    fixed = [i for i in range(1, n + 1) if lead.fixed >> (i - 1) & 1]
    free = [i for i in range(1, n + 1) if not lead.fixed >> (i - 1) & 1]
    sigma = tuple(fixed + free)
    if sigma != tuple(range(1, n + 1)):
        ops.append(Permutation(sigma))
    moved = apply_ops(ops, lead)
    if moved.ones:
        ops.append(Complementation(n, moved.ones))
    image = WordFamily([apply_ops(ops, w) for w in family], family.k, n)
    return image, ops


# -- construction -----------------------------------------------------------


def double(family: WordFamily) -> WordFamily:
    """W' = {w *^n 0} + {*^n w 1}: length 2n+1, prop size k+1, twice as many words."""
    _require_valid(family)
    n = family.n
    top = 1 << (2 * n)
    out = []
    for w in family:
        out.append(Word(2 * n + 1, w.fixed | top, w.ones))
    for w in family:
        out.append(Word(2 * n + 1, (w.fixed << n) | top, (w.ones << n) | top))
    result = WordFamily(out, family.k + 1)
    _require_valid(result)
    return result


def pad(family: WordFamily, extra: int = 1) -> WordFamily:
    """Append ``extra`` star coordinates to every word."""
    return WordFamily(
        [Word(w.n + extra, w.fixed, w.ones) for w in family], family.k, family.n + extra
    )


PAPER_K2 = ("00*", "*10", "1*1")


def paper_k2_family() -> WordFamily:
    return WordFamily(PAPER_K2, 2)


def doubled_family(times: int) -> WordFamily:
    fam = paper_k2_family()
    for _ in range(times):
        fam = double(fam)
    return fam


def as_family(words: Sequence[Word | str], k: int | None = None) -> WordFamily:
    return words if isinstance(words, WordFamily) else WordFamily(words, k)
