"""Maximum admissible families for given (n, k).

Two words with k fixed coordinates each are *compatible* when they clash in
exactly one coordinate and have different prop sets; an admissible family is
a clique of the compatibility graph on all C(n,k) 2^k such words.  The search
is a bitset branch and bound with greedy-colouring bounds.

Symmetry breaking: any family can be moved by elementary operations to one
containing u = 0^k *^(n-k).  The operations fixing u (permuting the first k
coordinates, permuting the rest, complementing the rest) act on the
neighbours of u with orbits indexed by j = |prop w ∩ {1..k}|, so the search
fixes u, branches on one representative per orbit, and in branch j keeps
only neighbours with orbit index >= j.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .family import WordFamily, check_alpha, theorem_bound
from .words import Word, WordError, clash_mask, write_family

UNIVERSE_CAP = 200_000
BOUNDED_UNIVERSE_CAP = 2_000_000
CHECK_EVERY = 1 << 12


def compatible(v: Word, u: Word) -> bool:
    c = clash_mask(v, u)
    return c != 0 and c & (c - 1) == 0 and v.fixed != u.fixed


def universe_size(n: int, k: int) -> int:
    return math.comb(n, k) << k


def universe(n: int, k: int) -> Iterator[Word]:
    """All words of length n with k fixed coordinates, in tie-break order."""
    for cols in itertools.combinations(range(n), k):
        fixed = 0
        for c in cols:
            fixed |= 1 << c
        for values in itertools.product((0, 1), repeat=k):
            ones = 0
            for c, b in zip(cols, values):
                if b:
                    ones |= 1 << c
            yield Word(n, fixed, ones)


def anchor(n: int, k: int) -> Word:
    """0^k *^(n-k)."""
    return Word(n, (1 << k) - 1, 0)


def anchor_neighbours(n: int, k: int) -> list[Word]:
    """Words compatible with 0^k *^(n-k), in tie-break order."""
    out = []
    head = list(range(k))
    tail = list(range(k, n))
    for j in range(1, k):
        if k - j > len(tail):
            continue
        for hcols in itertools.combinations(head, j):
            hmask = sum(1 << c for c in hcols)
            for one in hcols:
                for tcols in itertools.combinations(tail, k - j):
                    tmask = sum(1 << c for c in tcols)
                    for tvals in range(1 << (k - j)):
                        ones = 1 << one
                        for b, c in enumerate(tcols):
                            if tvals >> b & 1:
                                ones |= 1 << c
                        out.append(Word(n, hmask | tmask, ones))
    out.sort(key=Word.sort_key)
    return out


def orbit_index(w: Word, k: int) -> int:
    return (w.fixed & ((1 << k) - 1)).bit_count()


def orbit_representative(n: int, k: int, j: int) -> Word:
    """1 0^(j-1) *^(k-j) 0^(k-j) *^(n-2k+j)."""
    head = (1 << j) - 1
    tail = ((1 << (k - j)) - 1) << k
    return Word(n, head | tail, 1)


@dataclass
class SearchProblem:
    n: int
    k: int
    budget_nodes: int | None = None
    time_limit: float | None = None
    seed_family: WordFamily | None = None
    use_theorem_bound: bool = True
    symmetry: bool = True
    threads: int = 1

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise WordError(f"need 1 <= k < n, got n={self.n} k={self.k}")

    @property
    def exact(self) -> bool:
        return self.budget_nodes is None and self.time_limit is None


@dataclass
class SearchResult:
    best_family: WordFamily
    size: int
    optimal: bool
    nodes: int
    elapsed: float
    n: int = 0
    k: int = 0

    def summary(self, deterministic: bool = False) -> str:
        line = f"n={self.n} k={self.k} size={self.size} optimal={str(self.optimal).lower()}"
        if not deterministic:
            line += f" nodes={self.nodes}"
        return line


class _Stop(Exception):
    pass


class _Exhausted(Exception):
    pass


@dataclass
class _Incumbent:
    size: int = 0
    members: list[Word] = field(default_factory=list)


def _color_sort(P: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    order, colors = [], []
    color = 0
    U = P
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v]
            Q &= ~low
            U &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


class _Clique:
    """Branch and bound for a maximum clique extending a fixed base set."""

    def __init__(self, base, cands, incumbent, cap, budget, deadline, nodes=0):
        self.base = list(base)
        cands = list(cands)
        m = len(cands)
        nbr = [0] * m
        for a in range(m):
            wa = cands[a]
            for b in range(a + 1, m):
                if compatible(wa, cands[b]):
                    nbr[a] |= 1 << b
                    nbr[b] |= 1 << a
        # high degree first; ties keep tie-break order
        perm = sorted(range(m), key=lambda i: -nbr[i].bit_count())
        pos = {old: new for new, old in enumerate(perm)}
        self.cands = [cands[i] for i in perm]
        self.adj = [0] * m
        for new, old in enumerate(perm):
            mask = nbr[old]
            out = 0
            while mask:
                low = mask & -mask
                out |= 1 << pos[low.bit_length() - 1]
                mask ^= low
            self.adj[new] = out
        self.inc = incumbent
        self.cap = cap
        self.budget = budget
        self.deadline = deadline
        self.nodes = nodes

    def _record(self, chosen: list[int]) -> None:
        self.inc.size = len(self.base) + len(chosen)
        self.inc.members = self.base + [self.cands[i] for i in chosen]
        if self.cap is not None and self.inc.size >= self.cap:
            raise _Stop

    def greedy(self) -> None:
        P = (1 << len(self.cands)) - 1
        chosen = []
        while P:
            low = P & -P
            v = low.bit_length() - 1
            chosen.append(v)
            P &= self.adj[v]
        if len(self.base) + len(chosen) > self.inc.size:
            self._record(chosen)

    def run(self) -> None:
        if len(self.base) > self.inc.size:
            self._record([])
        if not self.cands:
            return
        self.greedy()
        self._expand([], (1 << len(self.cands)) - 1)

    def _expand(self, R: list[int], P: int) -> None:
        self.nodes += 1
        if self.nodes % CHECK_EVERY == 0:
            if self.budget is not None and self.nodes >= self.budget:
                raise _Exhausted
            if self.deadline is not None and time.monotonic() >= self.deadline:
                raise _Exhausted
        order, colors = _color_sort(P, self.adj)
        base = len(self.base)
        for idx in range(len(order) - 1, -1, -1):
            if base + len(R) + colors[idx] <= self.inc.size:
                return
            v = order[idx]
            R.append(v)
            NP = P & self.adj[v]
            if NP:
                self._expand(R, NP)
            elif base + len(R) > self.inc.size:
                self._record(R)
            R.pop()
            P &= ~(1 << v)


def _branches(p: SearchProblem) -> list[tuple[list[Word], list[Word]]]:
    """(base, candidates) pairs whose best cliques together give the optimum."""
    n, k = p.n, p.k
    if p.seed_family is not None:
        seed = list(p.seed_family.words)
        seen = set(seed)
        cands = [w for w in universe(n, k) if w not in seen and all(compatible(w, s) for s in seed)]
        return [(seed, cands)]
    if not p.symmetry:
        return [([], list(universe(n, k)))]
    u = anchor(n, k)
    nbrs = anchor_neighbours(n, k)
    out = [([u], [])]
    for j in range(1, k):
        if k - j > n - k:
            continue
        v = orbit_representative(n, k, j)
        cands = [w for w in nbrs if w != v and orbit_index(w, k) >= j and compatible(w, v)]
        out.append(([u, v], cands))
    return out


def _run_branch(args):
    base, cands, cap, budget, time_limit, floor = args
    inc = _Incumbent(floor, [])
    deadline = None if time_limit is None else time.monotonic() + time_limit
    solver = _Clique(base, cands, inc, cap, budget, deadline)
    status = "done"
    try:
        solver.run()
    except _Stop:
        status = "cap"
    except _Exhausted:
        status = "budget"
    return inc.size, inc.members, solver.nodes, status


def _validate(p: SearchProblem) -> None:
    size = universe_size(p.n, p.k)
    if p.exact and size > UNIVERSE_CAP:
        raise WordError(
            f"universe of {size} words exceeds the exact-mode cap {UNIVERSE_CAP}; "
            "use a node or time budget"
        )
    if size > BOUNDED_UNIVERSE_CAP:
        raise WordError(f"universe of {size} words is beyond the supported range")
    if p.seed_family is not None:
        seed = p.seed_family
        if seed.n != p.n or seed.k != p.k:
            raise WordError(f"seed family has n={seed.n} k={seed.k}, expected n={p.n} k={p.k}")
        rep = check_alpha(seed)
        if not rep.ok:
            raise WordError("seed family is not admissible: " + "; ".join(rep.lines()))


def max_family(p: SearchProblem) -> SearchResult:
    """Largest admissible family for (p.n, p.k), within the problem's budget."""
    _validate(p)
    start = time.monotonic()
    cap = theorem_bound(p.k, p.n) if p.use_theorem_bound else None
    branches = _branches(p)

    inc = _Incumbent()
    nodes = 0
    exhausted = False
    if p.threads > 1 and len(branches) > 1:
        share = None if p.budget_nodes is None else max(1, p.budget_nodes // len(branches))
        jobs = [(b, c, cap, share, p.time_limit, 0) for b, c in branches]
        with ProcessPoolExecutor(max_workers=p.threads) as pool:
            results = list(pool.map(_run_branch, jobs))
        for size, members, n_nodes, status in results:
            nodes += n_nodes
            exhausted |= status == "budget"
            if size > inc.size:
                inc = _Incumbent(size, members)
    else:
        deadline = None if p.time_limit is None else start + p.time_limit
        try:
            for base, cands in branches:
                solver = _Clique(base, cands, inc, cap, p.budget_nodes, deadline, nodes)
                try:
                    solver.run()
                finally:
                    nodes = solver.nodes
        except _Stop:
            pass
        except _Exhausted:
            exhausted = True

    fam = WordFamily(sorted(inc.members, key=Word.sort_key), p.k, p.n)
    return SearchResult(fam, len(fam), not exhausted, nodes, time.monotonic() - start, p.n, p.k)


# -- conjecture probe -------------------------------------------------------


def conjectured_max(k: int) -> int:
    """3/4 * 2^k for k >= 2; 1 for k = 1."""
    return 1 if k < 2 else 3 << (k - 2)


@dataclass
class ProbeRow:
    n: int
    size: int
    optimal: bool
    nodes: int
    seeded: bool
    counterexample: bool
    family: WordFamily

    def line(self, deterministic: bool = False) -> str:
        s = (
            f"n={self.n} size={self.size} optimal={str(self.optimal).lower()}"
            f" seeded={str(self.seeded).lower()} counterexample={str(self.counterexample).lower()}"
        )
        if not deterministic:
            s += f" nodes={self.nodes}"
        return s


@dataclass
class ProbeReport:
    k: int
    rows: list[ProbeRow]

    @property
    def counterexamples(self) -> list[ProbeRow]:
        return [r for r in self.rows if r.counterexample]


def conjecture_probe(
    k: int,
    n_values: Iterable[int],
    budget_nodes: int | None = None,
    time_limit: float | None = None,
    seeds: dict[int, WordFamily] | None = None,
    out_dir: str | Path | None = None,
    threads: int = 1,
) -> ProbeReport:
    """Search each n and flag families larger than 3/4 * 2^k.

    Lengths whose universe exceeds the exact cap run under the given budget
    (a default node budget is used if none is given).  Flagged families are
    written to ``out_dir`` when provided.
    """
    if k < 3:
        raise WordError("the probe is meant for k >= 3")
    seeds = seeds or {}
    rows = []
    for n in n_values:
        seed = seeds.get(n)
        budget, limit = budget_nodes, time_limit
        if budget is None and limit is None and universe_size(n, k) > UNIVERSE_CAP:
            budget = 1_000_000
        res = max_family(SearchProblem(n, k, budget, limit, seed, threads=threads))
        flag = res.size > conjectured_max(k)
        if flag and out_dir is not None:
            path = Path(out_dir)
            path.mkdir(parents=True, exist_ok=True)
            write_family(path / f"counterexample_k{k}_n{n}.words", res.best_family)
        rows.append(ProbeRow(n, res.size, res.optimal, res.nodes, seed is not None, flag, res.best_family))
    return ProbeReport(k, rows)
