"""Words over {0,1,*} and the sub-boxes of {0,1}^n they encode.

A word is stored as two bit masks over 0-based positions: ``fixed`` marks the
coordinates holding 0 or 1, ``ones`` marks the coordinates holding 1 (always a
subset of ``fixed``).  Python ints are unbounded, so the same representation
covers every supported length.

All public functions speak 1-based positions, as in the usual notation for
words; masks are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_LENGTH = 1024

SYMBOLS = "01*"


class WordError(ValueError):
    """Malformed word, or words of incompatible lengths."""


class ParseError(WordError):
    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)


@dataclass(frozen=True, order=False)
class Word:
    n: int
    fixed: int
    ones: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise WordError(f"word length must be in 1..{MAX_LENGTH}, got {self.n}")
        full = (1 << self.n) - 1
        if self.fixed & ~full or self.ones & ~self.fixed:
            raise WordError("inconsistent masks")

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if not text:
            raise WordError("empty word")
        fixed = ones = 0
        for i, ch in enumerate(text):
            if ch == "0":
                fixed |= 1 << i
            elif ch == "1":
                fixed |= 1 << i
                ones |= 1 << i
            elif ch != "*":
                raise WordError(f"bad symbol {ch!r} at position {i + 1}")
        return cls(len(text), fixed, ones)

    @classmethod
    def point(cls, bits: Sequence[int]) -> "Word":
        """The singleton box {bits}."""
        n = len(bits)
        ones = 0
        for i, b in enumerate(bits):
            if b:
                ones |= 1 << i
        return cls(n, (1 << n) - 1, ones)

    @classmethod
    def cube(cls, n: int) -> "Word":
        return cls(n, 0, 0)

    def __str__(self) -> str:
        out = []
        for i in range(self.n):
            bit = 1 << i
            if not self.fixed & bit:
                out.append("*")
            else:
                out.append("1" if self.ones & bit else "0")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, position: int) -> str:
        """Symbol at 1-based ``position``."""
        if not 1 <= position <= self.n:
            raise IndexError(position)
        bit = 1 << (position - 1)
        if not self.fixed & bit:
            return "*"
        return "1" if self.ones & bit else "0"

    @property
    def stars(self) -> int:
        return ((1 << self.n) - 1) & ~self.fixed

    @property
    def rank(self) -> int:
        """|prop w|."""
        return self.fixed.bit_count()

    def is_point(self) -> bool:
        return self.fixed == (1 << self.n) - 1

    def points(self) -> Iterator[int]:
        """Enumerate the box's points as n-bit integers (bit i-1 is x_i)."""
        free = self.stars
        sub = 0
        while True:
            yield self.ones | sub
            sub = (sub - free) & free
            if sub == 0:
                return

    def contains_point(self, x: int) -> bool:
        return (x ^ self.ones) & self.fixed == 0

    def sort_key(self) -> tuple:
        """Deterministic order: prop set lexicographic, then values on it."""
        prop = _positions(self.fixed)
        return (prop, tuple(1 if self.ones >> (p - 1) & 1 else 0 for p in prop))


def _positions(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def positions_to_mask(positions: Iterable[int], n: int) -> int:
    mask = 0
    for p in positions:
        if not 1 <= p <= n:
            raise WordError(f"position {p} out of range 1..{n}")
        mask |= 1 << (p - 1)
    return mask


def mask_to_positions(mask: int) -> frozenset[int]:
    return frozenset(_positions(mask))


def _same_length(v: Word, u: Word) -> None:
    if v.n != u.n:
        raise WordError(f"length mismatch: {v.n} != {u.n}")


def as_word(w: Word | str) -> Word:
    return w if isinstance(w, Word) else Word.parse(w)


# -- the operations ---------------------------------------------------------


def prop(w: Word | str) -> frozenset[int]:
    """Positions (1-based) where ``w`` holds 0 or 1."""
    return mask_to_positions(as_word(w).fixed)


def cardinality(w: Word | str) -> int:
    w = as_word(w)
    return 1 << (w.n - w.rank)


def intersect(v: Word | str, u: Word | str) -> Word | None:
    """Cellwise meet of two boxes; ``None`` stands for the empty box."""
    v, u = as_word(v), as_word(u)
    _same_length(v, u)
    if (v.ones ^ u.ones) & v.fixed & u.fixed:
        return None
    return Word(v.n, v.fixed | u.fixed, v.ones | u.ones)


def clash_mask(v: Word, u: Word) -> int:
    return (v.ones ^ u.ones) & v.fixed & u.fixed


def clash_positions(v: Word | str, u: Word | str) -> frozenset[int]:
    """Positions i with {v_i, u_i} = {0, 1}."""
    v, u = as_word(v), as_word(u)
    _same_length(v, u)
    return mask_to_positions(clash_mask(v, u))


def disjoint(v: Word | str, u: Word | str) -> bool:
    v, u = as_word(v), as_word(u)
    _same_length(v, u)
    return clash_mask(v, u) != 0


def equivalent(v: Word | str, u: Word | str) -> bool:
    v, u = as_word(v), as_word(u)
    _same_length(v, u)
    return v.fixed == u.fixed


def precedes(v: Word | str, u: Word | str) -> bool:
    """v ⪯ u, i.e. prop v contains prop u."""
    v, u = as_word(v), as_word(u)
    _same_length(v, u)
    return u.fixed & ~v.fixed == 0


def strictly_precedes(v: Word | str, u: Word | str) -> bool:
    v, u = as_word(v), as_word(u)
    return precedes(v, u) and v.fixed != u.fixed


# -- elementary operations --------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Coordinate permutation v -> v_{s(1)} ... v_{s(n)}.

    ``sigma`` is the 1-based image tuple (s(1), ..., s(n)).
    """

    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise WordError(f"not a permutation of 1..{len(self.sigma)}: {self.sigma}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "Permutation":
        s = list(range(1, n + 1))
        s[i - 1], s[j - 1] = s[j - 1], s[i - 1]
        return cls(tuple(s))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, s in enumerate(self.sigma, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def _move(self, mask: int) -> int:
        out = 0
        for i, s in enumerate(self.sigma):
            if mask >> (s - 1) & 1:
                out |= 1 << i
        return out

    def apply(self, w: Word) -> Word:
        return Word(w.n, self._move(w.fixed), self._move(w.ones))

    def __str__(self) -> str:
        return "perm(" + " ".join(map(str, self.sigma)) + ")"


@dataclass(frozen=True)
class Complementation:
    """Apply c (0<->1, * fixed) at the positions in ``mask`` (0-based bits)."""

    n: int
    mask: int

    @classmethod
    def at(cls, n: int, positions: Iterable[int]) -> "Complementation":
        return cls(n, positions_to_mask(positions, n))

    def inverse(self) -> "Complementation":
        return self

    def apply(self, w: Word) -> Word:
        return Word(w.n, w.fixed, w.ones ^ (self.mask & w.fixed))

    def __str__(self) -> str:
        return "comp(" + " ".join(map(str, sorted(mask_to_positions(self.mask)))) + ")"


ElementaryOp = Permutation | Complementation


def apply_op(op: ElementaryOp, w: Word | str) -> Word:
    w = as_word(w)
    if op.n != w.n:
        raise WordError(f"operation on {op.n} coordinates applied to word of length {w.n}")
    return op.apply(w)


def apply_op_family(op: ElementaryOp, family: Iterable[Word | str]) -> frozenset[Word]:
    return frozenset(apply_op(op, w) for w in family)


def apply_ops(ops: Sequence[ElementaryOp], w: Word) -> Word:
    for op in ops:
        w = apply_op(op, w)
    return w


def invert_ops(ops: Sequence[ElementaryOp]) -> list[ElementaryOp]:
    return [op.inverse() for op in reversed(ops)]


# -- text format ------------------------------------------------------------


def parse_family(lines: Iterable[str], source: str | None = None) -> list[Word]:
    """Parse one word per line; blank lines and '#' comments are skipped."""
    words: list[Word] = []
    n = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            w = Word.parse(line)
        except WordError as exc:
            raise ParseError(str(exc), lineno, source) from None
        if n is None:
            n = w.n
        elif w.n != n:
            raise ParseError(f"word of length {w.n}, expected {n}", lineno, source)
        words.append(w)
    return words


def read_family(path: str | Path) -> list[Word]:
    path = Path(path)
    with path.open() as fh:
        return parse_family(fh, source=str(path))


def format_family(words: Iterable[Word]) -> str:
    return "".join(f"{w}\n" for w in words)


def write_family(path: str | Path, words: Iterable[Word]) -> None:
    Path(path).write_text(format_family(words))
