"""From families of d-simplices with rational vertices to families of words.

Every hyperplane spanned by a facet of some simplex gets a coordinate.  A
simplex reads 0 or 1 at the coordinates of its own facet hyperplanes,
according to the closed side it lies on, and * everywhere else.

Arithmetic is exact throughout: coordinates are Fractions, hyperplanes are
stored as coprime integer vectors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import rational_lp
from .family import WordFamily
from .words import ParseError, Word

Point = tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


class Side(enum.Enum):
    ZERO = "0"
    ONE = "1"
    ON = "on"
    STRADDLES = "straddles"


def _det(rows: list[list[Fraction]]) -> Fraction:
    M = [list(r) for r in rows]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _null_vector(rows: list[list[Fraction]], width: int) -> list[Fraction] | None:
    """A nonzero vector in the kernel of ``rows`` if the kernel is 1-dimensional."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [a / pv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(width) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    x = [Fraction(0)] * width
    x[f] = Fraction(1)
    for i, c in enumerate(pivots):
        x[c] = -M[i][f]
    return x


@dataclass(frozen=True)
class Hyperplane:
    """{x : normal . x = offset}, with (normal, offset) coprime integers and
    the first nonzero normal entry positive.  Side 0 is normal . x <= offset."""

    normal: tuple[int, ...]
    offset: int

    @classmethod
    def canonical(cls, normal: Sequence, offset) -> "Hyperplane":
        vals = [Fraction(a) for a in normal] + [Fraction(offset)]
        if all(a == 0 for a in vals[:-1]):
            raise GeometryError("zero normal")
        lcm = 1
        for a in vals:
            lcm = lcm * a.denominator // math.gcd(lcm, a.denominator)
        ints = [int(a * lcm) for a in vals]
        g = 0
        for a in ints:
            g = math.gcd(g, a)
        ints = [a // g for a in ints]
        lead = next(a for a in ints[:-1] if a != 0)
        if lead < 0:
            ints = [-a for a in ints]
        return cls(tuple(ints[:-1]), ints[-1])

    def value(self, p: Sequence[Fraction]) -> Fraction:
        return sum(a * x for a, x in zip(self.normal, p)) - self.offset

    def key(self) -> tuple[int, ...]:
        return self.normal + (self.offset,)

    def __str__(self) -> str:
        return " ".join(map(str, self.key()))


def _point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[Iterable]):
        verts = tuple(_point(v) for v in vertices)
        d = len(verts) - 1
        if d < 1 or any(len(v) != d for v in verts):
            raise GeometryError("a d-simplex needs d+1 vertices in R^d")
        edges = [[a - b for a, b in zip(v, verts[0])] for v in verts[1:]]
        if _det(edges) == 0:
            raise GeometryError("degenerate simplex")
        object.__setattr__(self, "vertices", verts)

    @property
    def d(self) -> int:
        return len(self.vertices) - 1

    def facet(self, omit: int) -> tuple[Point, ...]:
        return self.vertices[:omit] + self.vertices[omit + 1:]


def hyperplane_through(points: Sequence[Point]) -> Hyperplane:
    d = len(points[0])
    rows = [list(p) + [Fraction(-1)] for p in points]
    x = _null_vector(rows, d + 1)
    if x is None:
        raise GeometryError("points do not span a unique hyperplane")
    return Hyperplane.canonical(x[:d], x[d])


def facet_hyperplane(s: Simplex, omit: int) -> Hyperplane:
    """Hyperplane through all vertices of ``s`` except vertex ``omit`` (0-based)."""
    if not 0 <= omit <= s.d:
        raise GeometryError(f"vertex index {omit} out of range")
    return hyperplane_through(s.facet(omit))


def side_of(h: Hyperplane, s: Simplex) -> Side:
    vals = [h.value(v) for v in s.vertices]
    neg = any(v < 0 for v in vals)
    pos = any(v > 0 for v in vals)
    if neg and pos:
        return Side.STRADDLES
    if neg:
        return Side.ZERO
    if pos:
        return Side.ONE
    return Side.ON


def facets(s: Simplex) -> list[tuple[Hyperplane, Side, int]]:
    out = []
    for i in range(s.d + 1):
        h = facet_hyperplane(s, i)
        side = side_of(h, s)
        if side not in (Side.ZERO, Side.ONE):
            raise GeometryError(f"simplex not on one side of its own facet hyperplane {h}")
        out.append((h, side, i))
    return out


# -- neighbourliness --------------------------------------------------------


NO_COMMON_HYPERPLANE = "no-common-facet-hyperplane"
SAME_SIDE = "same-side"
LOWER_DIMENSIONAL = "facet-intersection-lower-dimensional"


@dataclass
class NeighbourCertificate:
    ok: bool
    hyperplane: Hyperplane | None = None
    point: Point | None = None
    reason: str | None = None


def common_relative_interior_point(
    first: Sequence[Point], second: Sequence[Point]
) -> Point | None:
    """A point in the relative interiors of both facets, or None.

    Maximizes t subject to x = sum l_i p_i = sum m_j q_j, sum l = sum m = 1,
    l_i, m_j >= t.  The relative interiors meet iff the optimum is positive.
    """
    d = len(first[0])
    a, b = len(first), len(second)
    # variables: l'_i = l_i - t, m'_j = m_j - t, t   (all >= 0)
    nv = a + b + 1
    A, rhs = [], []
    for c in range(d):
        row = [Fraction(0)] * nv
        for i, p in enumerate(first):
            row[i] = p[c]
        for j, q in enumerate(second):
            row[a + j] = -q[c]
        row[-1] = sum(p[c] for p in first) - sum(q[c] for q in second)
        A.append(row)
        rhs.append(Fraction(0))
    row = [Fraction(0)] * nv
    for i in range(a):
        row[i] = Fraction(1)
    row[-1] = Fraction(a)
    A.append(row)
    rhs.append(Fraction(1))
    row = [Fraction(0)] * nv
    for j in range(b):
        row[a + j] = Fraction(1)
    row[-1] = Fraction(b)
    A.append(row)
    rhs.append(Fraction(1))
    c = [Fraction(0)] * (nv - 1) + [Fraction(1)]
    res = rational_lp.maximize(c, A, rhs)
    if res.status != rational_lp.OPTIMAL or res.value <= 0:
        return None
    t = res.x[-1]
    lam = [res.x[i] + t for i in range(a)]
    return tuple(sum(l * p[k] for l, p in zip(lam, first)) for k in range(d))


def neighbourly_pair(s: Simplex, t: Simplex) -> NeighbourCertificate:
    """Do s and t meet in a (d-1)-dimensional set?

    Certified by a common facet hyperplane with s and t on opposite sides and
    a rational point interior to both facets.
    """
    if s.d != t.d:
        raise GeometryError("simplices of different dimensions")
    tf = {h: (side, i) for h, side, i in facets(t)}
    reason = NO_COMMON_HYPERPLANE
    for h, side, i in facets(s):
        if h not in tf:
            continue
        tside, j = tf[h]
        if tside == side:
            reason = SAME_SIDE
            continue
        p = common_relative_interior_point(s.facet(i), t.facet(j))
        if p is not None:
            return NeighbourCertificate(True, h, p)
        reason = LOWER_DIMENSIONAL
    return NeighbourCertificate(False, reason=reason)


def check_neighbourly(simplices: Sequence[Simplex]) -> list[tuple[int, int, NeighbourCertificate]]:
    out = []
    for i in range(len(simplices)):
        for j in range(i + 1, len(simplices)):
            out.append((i, j, neighbourly_pair(simplices[i], simplices[j])))
    return out


# -- encoding ---------------------------------------------------------------


@dataclass
class Encoding:
    hyperplanes: list[Hyperplane]
    family: WordFamily


def encode_family(simplices: Sequence[Simplex]) -> Encoding:
    """Words of the simplices over their sorted, deduplicated facet hyperplanes."""
    if not simplices:
        raise GeometryError("empty simplex family")
    d = simplices[0].d
    if any(s.d != d for s in simplices):
        raise GeometryError("simplices of different dimensions")
    per = [facets(s) for s in simplices]
    planes = sorted({h for fs in per for h, _, _ in fs}, key=Hyperplane.key)
    index = {h: i for i, h in enumerate(planes)}
    n = len(planes)
    words = []
    for fs in per:
        fixed = ones = 0
        for h, side, _ in fs:
            bit = 1 << index[h]
            fixed |= bit
            if side is Side.ONE:
                ones |= bit
        words.append(Word(n, fixed, ones))
    if len(set(words)) != len(words):
        raise GeometryError("two simplices encode to the same word")
    return Encoding(planes, WordFamily(words, d + 1, n))


# -- file format ------------------------------------------------------------


def _rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational {tok!r}") from None


def parse_simplices(lines: Iterable[str], source: str | None = None) -> list[Simplex]:
    """Header ``d m``, then m blocks of d+1 lines with d rationals each."""
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("missing header", None, source)
    lineno, head = rows[0]
    try:
        d, m = (int(x) for x in head)
    except ValueError:
        raise ParseError("header must be 'd m'", lineno, source) from None
    if d < 1 or m < 0:
        raise ParseError("header must have d >= 1, m >= 0", lineno, source)
    body = rows[1:]
    if len(body) != m * (d + 1):
        raise ParseError(f"expected {m * (d + 1)} vertex lines, found {len(body)}", None, source)
    out = []
    seen = {}
    for s in range(m):
        block = body[s * (d + 1):(s + 1) * (d + 1)]
        verts = []
        for lineno, toks in block:
            if len(toks) != d:
                raise ParseError(f"expected {d} coordinates", lineno, source)
            try:
                verts.append(tuple(_rational(t) for t in toks))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, source) from None
        first = block[0][0]
        try:
            simplex = Simplex(verts)
        except GeometryError as exc:
            raise ParseError(f"simplex {s + 1}: {exc}", first, source) from None
        key = frozenset(simplex.vertices)
        if key in seen:
            raise ParseError(f"simplex {s + 1} duplicates simplex {seen[key]}", first, source)
        seen[key] = s + 1
        out.append(simplex)
    return out


def read_simplices(path: str | Path) -> list[Simplex]:
    path = Path(path)
    with path.open() as fh:
        return parse_simplices(fh, source=str(path))


def format_simplices(simplices: Sequence[Simplex]) -> str:
    d = simplices[0].d if simplices else 1
    lines = [f"{d} {len(simplices)}"]
    for s in simplices:
        for v in s.vertices:
            lines.append(" ".join(str(c) for c in v))
    return "\n".join(lines) + "\n"


def format_point(p: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(c) for c in p) + ")"
