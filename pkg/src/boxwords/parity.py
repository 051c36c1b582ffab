"""Characters on {0,1}^n, character sums over boxes, and the parity balance
of minimal classes in a tiling.

For a tiling T and a member A that is minimal under ⪯ (no member has a strictly
larger prop set), the members equivalent to A split evenly according to the
parity of their disagreement with A on prop A.  The proof runs through the
character chi_{prop A}: its sum over a box is zero unless the box is fixed on
all of prop A.  The one-box tiling {*^n} is outside this: prop A is empty,
chi_{} sums to 2^n over the cube, and the class {*^n} cannot balance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import (
    Complementation,
    Permutation,
    Word,
    WordError,
    apply_op,
    as_word,
    clash_mask,
    positions_to_mask,
    strictly_precedes,
)

# Point-marking coverage check is used up to this length; above it,
# disjointness is checked pairwise.
POINT_CHECK_MAX_N = 22


def character(support: Iterable[int], x: Sequence[int]) -> int:
    """chi_S(x) = (-1)^(sum of x_i over i in S), positions 1-based."""
    return -1 if sum(x[i - 1] for i in support) % 2 else 1


def _support_mask(support: Iterable[int] | int, n: int) -> int:
    if isinstance(support, int):
        if support >> n:
            raise WordError(f"support mask exceeds length {n}")
        return support
    return positions_to_mask(support, n)


def char_sum_box(support: Iterable[int] | int, box: Word | str) -> int:
    """Sum of chi_S over the points of ``box`` in closed form.

    A star inside S cancels the sum to zero.  Otherwise each fixed coordinate
    in S contributes a sign, each star outside S doubles the count.
    """
    box = as_word(box)
    s = _support_mask(support, box.n)
    if s & ~box.fixed:
        return 0
    sign = -1 if (s & box.ones).bit_count() % 2 else 1
    return sign << (box.n - box.rank)


def char_sum_cube(support: Iterable[int] | int, n: int) -> int:
    if n < 1:
        raise WordError("n must be positive")
    s = _support_mask(support, n)
    return 1 << n if s == 0 else 0


# -- tilings ----------------------------------------------------------------


@dataclass
class TilingReport:
    ok: bool
    n: int
    covered: int
    deficit: int | None
    overlap: tuple[Word, Word] | None = None

    def describe(self) -> str:
        if self.ok:
            return "tiling"
        if self.overlap is not None:
            a, b = self.overlap
            return f"overlap {a} {b}"
        return f"deficit {self.deficit}"


def _common_length(words: Sequence[Word], n: int | None) -> int:
    if not words:
        if n is None:
            raise WordError("empty family needs an explicit length")
        return n
    m = words[0].n
    for w in words:
        if w.n != m:
            raise WordError(f"length mismatch: {w.n} != {m}")
    if n is not None and n != m:
        raise WordError(f"words have length {m}, expected {n}")
    return m


def verify_tiling(words: Iterable[Word | str], n: int | None = None) -> TilingReport:
    """Check that the boxes are pairwise disjoint and cover {0,1}^n."""
    words = [as_word(w) for w in words]
    n = _common_length(words, n)
    total = 1 << n
    if not words:
        return TilingReport(False, n, 0, total)

    if n <= POINT_CHECK_MAX_N:
        owner: dict[int, int] = {}
        overlap = None
        for idx, w in enumerate(words):
            for x in w.points():
                prev = owner.setdefault(x, idx)
                if prev != idx and overlap is None:
                    overlap = (words[prev], w)
        covered = len(owner)
        deficit = total - covered
        return TilingReport(overlap is None and deficit == 0, n, covered, deficit, overlap)

    for i, a in enumerate(words):
        for b in words[i + 1:]:
            if clash_mask(a, b) == 0:
                return TilingReport(False, n, 0, None, (a, b))
    covered = sum(1 << (n - w.rank) for w in words)
    return TilingReport(covered == total, n, covered, total - covered)


def minimal_members(words: Iterable[Word | str]) -> list[Word]:
    """Members that no other member strictly precedes."""
    words = [as_word(w) for w in words]
    fixeds = {w.fixed for w in words}
    out = []
    for a in words:
        if not any(f != a.fixed and f & a.fixed == a.fixed for f in fixeds):
            out.append(a)
    return out


@dataclass
class EquivClassSplit:
    base: Word
    even_side: list[Word] = field(default_factory=list)
    odd_side: list[Word] = field(default_factory=list)

    @property
    def balanced(self) -> bool:
        return len(self.even_side) == len(self.odd_side)


def lemma1_split(tiling: Iterable[Word | str], base: Word | str) -> EquivClassSplit:
    """Partition the class of ``base`` by parity of disagreement on prop(base)."""
    tiling = [as_word(w) for w in tiling]
    base = as_word(base)
    if base not in tiling:
        raise WordError(f"{base} is not a member")
    for b in tiling:
        if strictly_precedes(b, base):
            raise WordError(f"{base} is not minimal: {b} precedes it")
    split = EquivClassSplit(base)
    for b in tiling:
        if b.fixed != base.fixed:
            continue
        if ((b.ones ^ base.ones) & base.fixed).bit_count() % 2:
            split.odd_side.append(b)
        else:
            split.even_side.append(b)
    return split


def odd_witness(tiling: Iterable[Word | str], base: Word | str) -> Word:
    """A member equivalent to ``base`` that disagrees with it an odd number of times."""
    split = lemma1_split(tiling, base)
    if not split.odd_side:
        raise WordError(f"no odd-parity member equivalent to {split.base}")
    return min(split.odd_side, key=Word.sort_key)


def check_lemma1(tiling: Iterable[Word | str]) -> list[EquivClassSplit]:
    """Split the class of every minimal member; one entry per distinct class."""
    tiling = [as_word(w) for w in tiling]
    seen = set()
    out = []
    for a in sorted(minimal_members(tiling), key=Word.sort_key):
        if a.fixed in seen:
            continue
        seen.add(a.fixed)
        out.append(lemma1_split(tiling, a))
    return out


# -- tiling generators ------------------------------------------------------

# Five boxes tiling {0,1}^3 with no coordinate splitting all of them.
PINWHEEL_3 = ("10*", "*10", "0*1", "000", "111")


def _substitute(box: Word, pattern: Sequence[Word], coords: Sequence[int]) -> list[Word]:
    """Tile ``box`` by placing ``pattern`` (over len(coords) coordinates) on the
    given free 0-based coordinates of the box."""
    out = []
    for p in pattern:
        fixed, ones = box.fixed, box.ones
        for j, c in enumerate(coords):
            if p.fixed >> j & 1:
                fixed |= 1 << c
                if p.ones >> j & 1:
                    ones |= 1 << c
        out.append(Word(box.n, fixed, ones))
    return out


def random_tiling(
    n: int,
    rng: random.Random,
    stop_probability: float = 0.5,
    pinwheel_probability: float = 0.0,
) -> list[Word]:
    """Random tiling by recursive splitting.

    Every box other than the whole cube stops with ``stop_probability``;
    otherwise it is split on a uniformly chosen free coordinate.  With
    ``pinwheel_probability`` a box with at least three free coordinates is
    instead tiled by a randomly placed copy of the 3-dimensional pinwheel,
    which yields tilings that are not hierarchical.
    """
    pinwheel = [Word.parse(w) for w in PINWHEEL_3]
    done: list[Word] = []
    stack = [Word.cube(n)]
    first = True
    while stack:
        box = stack.pop()
        free = [i for i in range(n) if not box.fixed >> i & 1]
        if not free or (not first and rng.random() < stop_probability):
            done.append(box)
            first = False
            continue
        first = False
        if len(free) >= 3 and pinwheel_probability and rng.random() < pinwheel_probability:
            coords = rng.sample(free, 3)
            flip = rng.getrandbits(3)
            pattern = [Complementation(3, flip).apply(p) for p in pinwheel]
            stack.extend(_substitute(box, pattern, coords))
            continue
        c = rng.choice(free)
        bit = 1 << c
        stack.append(Word(n, box.fixed | bit, box.ones))
        stack.append(Word(n, box.fixed | bit, box.ones | bit))
    return done


def product_tiling(left: Sequence[Word], right: Sequence[Word]) -> list[Word]:
    """Concatenate every member of one tiling with every member of another."""
    out = []
    for a in left:
        for b in right:
            out.append(Word(a.n + b.n, a.fixed | (b.fixed << a.n), a.ones | (b.ones << a.n)))
    return out


def handcrafted_tilings() -> list[list[Word]]:
    """Non-hierarchical tilings for n = 3..6 built from the pinwheel."""
    pin = [Word.parse(w) for w in PINWHEEL_3]
    out = [pin]
    # Refine the singleton-free boxes of the pinwheel on n = 4.
    half = [Word.parse("0"), Word.parse("1")]
    out.append(product_tiling(pin, half))
    out.append(product_tiling(half, pin))
    # Pinwheel of pinwheels: tile *** of a 6-cube into pinwheel x pinwheel.
    out.append(product_tiling(pin, pin))
    # Pinwheel substituted into one of its own boxes after padding to n = 5.
    padded = product_tiling(pin, [Word.parse("**")])
    target = padded[0]
    rest = padded[1:]
    free = [i for i in range(5) if not target.fixed >> i & 1]
    out.append(rest + _substitute(target, pin, free[:3]))
    # Images under elementary operations.
    swap = Permutation((3, 1, 2))
    out.append([apply_op(swap, w) for w in pin])
    out.append([apply_op(Complementation(3, 0b101), w) for w in pin])
    return out
