"""Finite pregeometry on a grid of cells.

Cells are pairs (row, column), rows counted 1..depth from the base up.
Closure pulls every cell downward in its own column, so closed sets are
exactly the "height vectors" assigning each column the top occupied row.
Rank of a set over a base is the number of new cells its closure adds.
A set is internal over a base when each new cell sits in row 1 or
directly above the base's closure: one step per column.

On top of that sit reductions (largest internal part), coreductions
(smallest base making the set internal), analyses by iterating either,
and the minimality / canonicity notions decided by exhaustive search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import NotMonotone

Cell = tuple[int, int]
CellSet = frozenset[Cell]

EMPTY: CellSet = frozenset()

DEFAULT_CELL_BUDGET = 12


@dataclass(frozen=True)
class GridModel:
    """depth rows by columns independent copies."""

    depth: int
    columns: int

    def __post_init__(self):
        if self.depth < 1 or self.columns < 1:
            raise ValueError("grid dimensions must be positive")

    @property
    def cells(self) -> int:
        return self.depth * self.columns

    def all_cells(self) -> list[Cell]:
        return [(i, j) for i in range(1, self.depth + 1) for j in range(1, self.columns + 1)]

    def check(self, S: CellSet) -> None:
        for i, j in S:
            if not (1 <= i <= self.depth and 1 <= j <= self.columns):
                raise ValueError(f"cell ({i}, {j}) outside the {self.depth}x{self.columns} grid")


def heights(S: CellSet, g: GridModel) -> tuple[int, ...]:
    """Top occupied row per column (0 when the column is empty)."""
    h = [0] * g.columns
    for i, j in S:
        if i > h[j - 1]:
            h[j - 1] = i
    return tuple(h)


def from_heights(h: Sequence[int], g: GridModel) -> CellSet:
    return frozenset((i, j + 1) for j, top in enumerate(h) for i in range(1, top + 1))


def closure(S: CellSet, g: GridModel) -> CellSet:
    """Downward column closure; extensive, monotone, idempotent."""
    g.check(S)
    return from_heights(heights(S, g), g)


def closed_sets(g: GridModel) -> Iterator[CellSet]:
    """All closed subsets (all height vectors)."""
    for h in _height_vectors([g.depth] * g.columns):
        yield from_heights(h, g)


def _height_vectors(limits: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not limits:
        yield ()
        return
    for rest in _height_vectors(limits[1:]):
        for v in range(limits[0] + 1):
            yield (v,) + rest


def urank(S: CellSet, T: CellSet, g: GridModel) -> int:
    """Number of cells the closure of S adds over the closure of T."""
    g.check(S)
    g.check(T)
    return len(closure(S | T, g)) - len(closure(T, g))


def internal(S: CellSet, T: CellSet, g: GridModel) -> bool:
    """One-step criterion: every new closed cell is in row 1 or directly
    above the closure of T."""
    g.check(S)
    g.check(T)
    ht = heights(T, g)
    hs = heights(frozenset(S) | frozenset(T), g)
    return all(hs[j] <= ht[j] + 1 for j in range(g.columns))


def reduction(S: CellSet, T: CellSet, g: GridModel) -> CellSet:
    """Largest internal part: all cells of cl(S|T) internal over T, closed."""
    g.check(S)
    g.check(T)
    full = closure(frozenset(S) | frozenset(T), g)
    ht = heights(closure(T, g), g)
    # cell (i, j) is internal over T exactly when i <= height_T(j) + 1
    part = frozenset(x for x in full if x[0] <= ht[x[1] - 1] + 1)
    return closure(part, g)


def coreduction(S: CellSet, T: CellSet, g: GridModel) -> CellSet:
    """Smallest closed T' inside cl(S|T) with S internal over T|T'.

    Brute force over all closed subsets.  The witness family must have a
    least element (equivalently: a unique minimal witness), which is
    asserted.
    """
    g.check(S)
    g.check(T)
    ht = heights(closure(T, g), g)
    full_h = heights(frozenset(S) | frozenset(T), g)
    witnesses = [
        h
        for h in _height_vectors(full_h)
        # X = closed set of heights h; S internal over T|X
        if all(fv <= max(tv, xv) + 1 for fv, tv, xv in zip(full_h, ht, h))
    ]
    assert witnesses, "a witness always exists (the full closure works)"
    least = tuple(min(w[j] for w in witnesses) for j in range(g.columns))
    assert least in witnesses, "minimal coreduction witnesses disagree"
    return from_heights(least, g)


@dataclass(frozen=True)
class Analysis:
    """Stepwise decomposition of a target over a base.

    Steps are closed sets containing cl(base); each is internal over its
    predecessor, closures strictly increase, and the last step's closure
    is cl(base | target).
    """

    grid: GridModel
    base: CellSet
    target: CellSet
    steps: tuple[CellSet, ...]

    def validate(self) -> None:
        g = self.grid
        prev = closure(self.base, g)
        for step in self.steps:
            s = closure(frozenset(step) | self.base, g)
            if not prev < s:
                raise ValueError("closures must strictly increase")
            if not internal(s, prev, g):
                raise ValueError("each step must be internal over the previous")
            prev = s
        if prev != closure(frozenset(self.target) | self.base, g):
            raise ValueError("the analysis must end at the target's closure")

    @property
    def length(self) -> int:
        return len(self.steps)

    def utype(self) -> tuple[int, ...]:
        g = self.grid
        prev = closure(self.base, g)
        out = []
        for step in self.steps:
            s = closure(frozenset(step) | self.base, g)
            out.append(len(s) - len(prev))
            prev = s
        return tuple(out)

    def step_heights(self) -> list[tuple[int, ...]]:
        g = self.grid
        return [heights(frozenset(step) | self.base, g) for step in self.steps]


def analysis_by_reductions(S: CellSet, T: CellSet, g: GridModel) -> Analysis:
    """Iterate A_k = reduction(S, T | A_{k-1}) until the closure stabilizes."""
    target = closure(frozenset(S) | frozenset(T), g)
    steps: list[CellSet] = []
    current = closure(T, g)
    while current != target:
        nxt = reduction(S, frozenset(T) | current, g)
        steps.append(nxt)
        current = nxt
    return Analysis(g, closure(T, g), target, tuple(steps))


def analysis_by_coreductions(S: CellSet, T: CellSet, g: GridModel) -> Analysis:
    """Walk backward: the predecessor of each step is its coreduction over T."""
    base = closure(T, g)
    target = closure(frozenset(S) | frozenset(T), g)
    chain: list[CellSet] = []
    current = target
    while current != base:
        chain.append(current)
        prev = closure(coreduction(current, T, g) | frozenset(T), g)
        assert prev < current, "coreduction must strictly shrink the closure"
        current = prev
    chain.reverse()
    return Analysis(g, base, target, tuple(chain))


def is_incompressible(a: Analysis) -> bool:
    """No two consecutive steps merge: step i+1 is never internal over the
    (i-1)-st closure."""
    g = a.grid
    for idx in range(1, len(a.steps)):
        before = a.steps[idx - 2] if idx >= 2 else a.base
        if internal(frozenset(a.steps[idx]) | a.base, frozenset(before) | a.base, g):
            return False
    return True


def _successor_heights(
    h: tuple[int, ...], target: tuple[int, ...]
) -> Iterator[tuple[int, ...]]:
    """All strictly larger height vectors reachable in one internal step."""
    choices = [(h[j],) if h[j] >= target[j] else (h[j], h[j] + 1) for j in range(len(h))]

    def rec(j: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if j == len(choices):
            if acc != h:
                yield acc
            return
        for v in choices[j]:
            yield from rec(j + 1, acc + (v,))

    yield from rec(0, ())


def enumerate_analyses(
    S: CellSet,
    T: CellSet,
    g: GridModel,
    *,
    max_length: int,
    exact_length: int | None = None,
) -> Iterator[Analysis]:
    """All valid analyses of (S over T) with at most (or exactly) the given
    number of steps.  Height-vector DFS with the remaining-distance prune."""
    base_h = heights(closure(T, g), g)
    target_h = heights(closure(frozenset(S) | frozenset(T), g), g)

    def rec(h: tuple[int, ...], prefix: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
        if h == target_h:
            # Steps past the target cannot strictly increase, so stop here.
            if exact_length is None or len(prefix) == exact_length:
                yield prefix
            return
        remaining = max(t - v for v, t in zip(h, target_h))
        if len(prefix) + remaining > max_length:
            return
        for nxt in _successor_heights(h, target_h):
            yield from rec(nxt, prefix + [nxt])

    for seq in rec(base_h, []):
        yield Analysis(
            g,
            from_heights(base_h, g),
            from_heights(target_h, g),
            tuple(from_heights(h, g) for h in seq),
        )


def is_minimal(a: Analysis, g: GridModel) -> bool:
    """No strictly shorter valid analysis of the same pair exists."""
    if a.length == 0:
        return True
    shorter = enumerate_analyses(a.target, a.base, g, max_length=a.length - 1)
    return next(iter(shorter), None) is None


def is_canonical(a: Analysis, g: GridModel) -> bool:
    """Minimal and stepwise interalgebraic with every other minimal analysis."""
    if not is_minimal(a, g):
        return False
    own = a.step_heights()
    for other in enumerate_analyses(
        a.target, a.base, g, max_length=a.length, exact_length=a.length
    ):
        if other.step_heights() != own:
            return False
    return True


# --- prescribed-U-type constructions ---------------------------------------


def build_seqred_a(s: Sequence[int]) -> tuple[GridModel, CellSet]:
    """Staircase target whose analysis by reductions has U-type s
    (s nonincreasing)."""
    s = list(s)
    if not s or any(v < 1 for v in s):
        raise NotMonotone("s must be a nonempty sequence of positive integers")
    if any(a < b for a, b in zip(s, s[1:])):
        raise NotMonotone("analysis by reductions needs a nonincreasing sequence")
    n = len(s)
    g = GridModel(depth=n, columns=s[0])
    target = frozenset((i, j) for i in range(1, n + 1) for j in range(1, s[i - 1] + 1))
    return g, target


def build_seqred_b(s: Sequence[int]) -> tuple[GridModel, CellSet]:
    """Descending-staircase target whose analysis by coreductions has U-type s
    (s nondecreasing)."""
    s = list(s)
    if not s or any(v < 1 for v in s):
        raise NotMonotone("s must be a nonempty sequence of positive integers")
    if any(a > b for a, b in zip(s, s[1:])):
        raise NotMonotone("analysis by coreductions needs a nondecreasing sequence")
    n = len(s)
    g = GridModel(depth=n, columns=s[-1])
    first_fit = {}
    for j in range(1, s[-1] + 1):
        first_fit[j] = next(k for k in range(1, n + 1) if j <= s[k - 1])
    target = frozenset((n + 1 - first_fit[j], j) for j in range(1, s[-1] + 1))
    return g, target


# --- scenario files ---------------------------------------------------------


def dump_scenario(g: GridModel, base: CellSet, target: CellSet) -> str:
    doc = {
        "depth": g.depth,
        "columns": g.columns,
        "base": sorted([i, j] for i, j in base),
        "target": sorted([i, j] for i, j in target),
    }
    return json.dumps(doc, sort_keys=True)


def load_scenario(text: str) -> tuple[GridModel, CellSet, CellSet]:
    doc = json.loads(text)
    g = GridModel(int(doc["depth"]), int(doc["columns"]))
    base = frozenset((int(i), int(j)) for i, j in doc.get("base", []))
    target = frozenset((int(i), int(j)) for i, j in doc.get("target", []))
    g.check(base)
    g.check(target)
    return g, base, target
