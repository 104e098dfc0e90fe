"""Exhaustive verification of the grid pregeometry.

Every property quantifies over all grids up to a cell budget and over
closed sets as representatives (every notion involved is closure
invariant).  The verification is layered so that each layer is checked
exhaustively against the one below:

* layer 0 - the public ``closure`` is compared with the bitmask closure
  table on **every** subset of every grid (``closure_axioms``);
* layer 1 - the public ``reduction`` and ``coreduction`` are compared on
  **every** closed pair (T, G) with the literal brute-force definitions,
  stated in bitmask arithmetic (``reduction_maximality``,
  ``coreduction_uniqueness``);
* layer 2 - the chain properties (minimality, canonicity, the local
  criteria, ...) quantify over every closed pair but iterate the
  layer-1-verified height maps; the public analysis functions are
  cross-checked against those chains on a deterministic slice of the
  pairs.

Cells are packed column-major: cell (i, j) is bit (j-1)*depth + (i-1).
Closed sets are exactly the masks whose columns are downward intervals,
so unions of closed masks are closed and ranks are popcount differences.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BudgetExceeded
from .grid import (
    Analysis,
    GridModel,
    analysis_by_coreductions,
    analysis_by_reductions,
    closure,
    coreduction,
    from_heights,
    heights,
    internal,
    is_incompressible,
    is_minimal,
    reduction,
    urank,
)

MAX_VERIFY_CELLS = 12

# every CROSS_CHECK_SLICE-th closed pair also exercises the public functions
CROSS_CHECK_SLICE = 16


@dataclass
class PropertyReport:
    name: str
    instances: int
    passed: bool
    counterexample: str | None = None
    millis: int = 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" {self.counterexample}" if self.counterexample else ""
        return f"{self.name} instances={self.instances} {status}{tail}"


class _Grid:
    """Bitmask tables for one grid."""

    def __init__(self, depth: int, columns: int):
        self.depth = depth
        self.columns = columns
        self.g = GridModel(depth, columns)
        self.cells = depth * columns
        size = 1 << self.cells
        self.cells_mask = size - 1
        self.row1_mask = 0
        for j in range(columns):
            self.row1_mask |= 1 << (j * depth)
        self.closure_table = np.zeros(size, dtype=np.int64)
        for mask in range(size):
            self.closure_table[mask] = self._close(mask)
        self.popcount = np.array([bin(m).count("1") for m in range(size)], dtype=np.int64)
        self.closed_masks = sorted({int(self.closure_table[m]) for m in range(size)})
        self.closed_array = np.array(self.closed_masks, dtype=np.int64)

    def _close(self, mask: int) -> int:
        out = 0
        for j in range(self.columns):
            col = (mask >> (j * self.depth)) & ((1 << self.depth) - 1)
            out |= ((1 << col.bit_length()) - 1) << (j * self.depth)
        return out

    def to_set(self, mask: int):
        return frozenset(
            (i + 1, j + 1)
            for j in range(self.columns)
            for i in range(self.depth)
            if mask >> (j * self.depth + i) & 1
        )

    def heights_of(self, mask: int) -> tuple[int, ...]:
        return tuple(
            ((mask >> (j * self.depth)) & ((1 << self.depth) - 1)).bit_length()
            for j in range(self.columns)
        )

    def mask_of_heights(self, h) -> int:
        out = 0
        for j, top in enumerate(h):
            out |= ((1 << top) - 1) << (j * self.depth)
        return out

    def set_of_heights(self, h) -> frozenset:
        return from_heights(h, self.g)


def _grids(max_cells: int):
    for depth in range(1, max_cells + 1):
        for columns in range(1, max_cells // depth + 1):
            yield _Grid(depth, columns)


def _pairs_closed(gr: _Grid):
    """(T, G) height-vector pairs with cl(T) contained in G, both closed."""
    for g_h in product(*[range(gr.depth + 1)] * gr.columns):
        for t_h in product(*[range(v + 1) for v in g_h]):
            yield t_h, g_h


def _check(name, gen):
    """Run a generator yielding counterexample strings or None per instance."""
    start = time.perf_counter()
    count = 0
    for outcome in gen:
        count += 1
        if outcome is not None:
            millis = int((time.perf_counter() - start) * 1000)
            return PropertyReport(name, count, False, outcome, millis)
    millis = int((time.perf_counter() - start) * 1000)
    return PropertyReport(name, count, True, None, millis)


# --- height maps verified exhaustively in layer 1 ---------------------------


def _red_next(h, target):
    """Heights of reduction(G over current): one step up per column."""
    return tuple(min(tv, hv + 1) for hv, tv in zip(h, target))


def _cored_next(h, base):
    """Heights of cl(base | coreduction(current over base)): one step down."""
    return tuple(max(bv, hv - 1) for hv, bv in zip(h, base))


def _red_chain(t_h, g_h):
    chain = []
    cur = t_h
    while cur != g_h:
        cur = _red_next(cur, g_h)
        chain.append(cur)
    return chain


def _cored_chain(t_h, g_h):
    chain = []
    cur = g_h
    while cur != t_h:
        chain.append(cur)
        cur = _cored_next(cur, t_h)
    chain.reverse()
    return chain


def _utype(chain, t_h):
    out = []
    prev = sum(t_h)
    for h in chain:
        cells = sum(h)
        out.append(cells - prev)
        prev = cells
    return tuple(out)


def _chains_dfs(t_h, g_h, max_length, exact_length=None):
    """All analyses as height chains: steps raise each column by at most 1,
    strictly increase, and end at the target."""

    def rec(h, prefix):
        if h == g_h:
            if exact_length is None or len(prefix) == exact_length:
                yield prefix
            return
        if len(prefix) + max(tv - hv for hv, tv in zip(h, g_h)) > max_length:
            return
        options = [
            (hv,) if hv >= tv else (hv, hv + 1) for hv, tv in zip(h, g_h)
        ]
        for nxt in product(*options):
            if nxt != h:
                yield from rec(nxt, prefix + [nxt])

    yield from rec(t_h, [])


def _shortest_chain_length(t_h, g_h) -> int:
    upper = sum(g_h) - sum(t_h)
    for k in range(upper + 1):
        if next(iter(_chains_dfs(t_h, g_h, k)), None) is not None:
            return k
    raise AssertionError("a chain of length <= total rank always exists")


# --- individual properties --------------------------------------------------


def check_closure_axioms(max_cells: int) -> PropertyReport:
    def gen():
        for gr in _grids(max_cells):
            size = 1 << gr.cells
            for mask in range(size):
                S = gr.to_set(mask)
                cl = closure(S, gr.g)
                cl_mask = int(gr.closure_table[mask])
                if cl != gr.to_set(cl_mask):
                    yield f"grid {gr.depth}x{gr.columns}: closure mismatch on {sorted(S)}"
                    return
                if not S <= cl:
                    yield f"grid {gr.depth}x{gr.columns}: closure not extensive on {sorted(S)}"
                    return
                if closure(cl, gr.g) != cl:
                    yield f"grid {gr.depth}x{gr.columns}: closure not idempotent on {sorted(S)}"
                    return
                yield None
            # monotonicity over all nested pairs via submask enumeration
            for big in range(size):
                cl_big = int(gr.closure_table[big])
                sub = big
                while True:
                    if int(gr.closure_table[sub]) & ~cl_big:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: closure not monotone "
                            f"on {sorted(gr.to_set(sub))} <= {sorted(gr.to_set(big))}"
                        )
                        return
                    yield None
                    if sub == 0:
                        break
                    sub = (sub - 1) & big

    return _check("closure_axioms", gen())


def check_urank_additivity(max_cells: int) -> PropertyReport:
    start = time.perf_counter()
    count = 0
    for gr in _grids(max_cells):
        closed = gr.closed_array
        pc = gr.popcount
        # closed masks are union-stable, so cl(X|Y) = X|Y there; closure
        # itself is tied to the table exhaustively by closure_axioms.
        # Cross-check the public urank on a deterministic slice of pairs.
        for idx in range(0, len(gr.closed_masks), CROSS_CHECK_SLICE):
            x = gr.closed_masks[idx]
            for y in gr.closed_masks[::CROSS_CHECK_SLICE]:
                expected = int(pc[x | y] - pc[y])
                if urank(gr.to_set(x), gr.to_set(y), gr.g) != expected:
                    millis = int((time.perf_counter() - start) * 1000)
                    return PropertyReport(
                        "urank_additivity",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: urank disagrees with the mask table",
                        millis,
                    )
        # additivity over all closed triples, vectorized
        for t in gr.closed_masks:
            tb = closed | t  # T|B for all B
            lhs = pc[(closed[:, None] | closed[None, :]) | t] - pc[t]
            rhs = (
                pc[closed[:, None] | tb[None, :]]
                - pc[tb][None, :]
                + (pc[tb] - pc[t])[None, :]
            )
            count += lhs.size
            if not np.array_equal(lhs, rhs):
                a_i, b_i = np.argwhere(lhs != rhs)[0]
                millis = int((time.perf_counter() - start) * 1000)
                return PropertyReport(
                    "urank_additivity",
                    count,
                    False,
                    f"grid {gr.depth}x{gr.columns}: additivity fails at "
                    f"A={sorted(gr.to_set(int(closed[a_i])))} "
                    f"B={sorted(gr.to_set(int(closed[b_i])))} T={sorted(gr.to_set(t))}",
                    millis,
                )
    millis = int((time.perf_counter() - start) * 1000)
    return PropertyReport("urank_additivity", count, True, None, millis)


def check_reduction_maximality(max_cells: int) -> PropertyReport:
    start = time.perf_counter()
    count = 0
    for gr in _grids(max_cells):
        closed = gr.closed_array
        cm, r1 = gr.cells_mask, gr.row1_mask
        for g_mask in gr.closed_masks:
            inside = closed[(closed & ~g_mask) == 0]
            for t_mask in inside.tolist():
                count += 1
                red = reduction(gr.to_set(g_mask), gr.to_set(t_mask), gr.g)
                red_mask = 0
                for i, j in red:
                    red_mask |= 1 << ((j - 1) * gr.depth + i - 1)
                if not internal(red, gr.to_set(t_mask), gr.g):
                    return PropertyReport(
                        "reduction_maximality",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: reduction not internal, "
                        f"T={sorted(gr.to_set(t_mask))} G={sorted(gr.to_set(g_mask))}",
                        int((time.perf_counter() - start) * 1000),
                    )
                # brute force: internal closed subsets of G over T
                allowed_t = t_mask | ((t_mask << 1) & cm) | r1
                flags = ((inside | t_mask) & ~allowed_t) == 0
                candidates = inside[flags]
                if np.any(candidates & ~red_mask):
                    return PropertyReport(
                        "reduction_maximality",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: an internal subset escapes the "
                        f"reduction, T={sorted(gr.to_set(t_mask))} G={sorted(gr.to_set(g_mask))}",
                        int((time.perf_counter() - start) * 1000),
                    )
                if red_mask not in candidates:
                    return PropertyReport(
                        "reduction_maximality",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: the reduction is not itself an "
                        f"internal closed subset, T={sorted(gr.to_set(t_mask))}",
                        int((time.perf_counter() - start) * 1000),
                    )
                # ties the one-step-up height map used by the chain properties
                # to the public reduction, on every pair
                formula = gr.mask_of_heights(
                    _red_next(gr.heights_of(t_mask), gr.heights_of(g_mask))
                )
                if red_mask != formula:
                    return PropertyReport(
                        "reduction_maximality",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: reduction disagrees with the "
                        f"height map, T={sorted(gr.to_set(t_mask))}",
                        int((time.perf_counter() - start) * 1000),
                    )
    return PropertyReport(
        "reduction_maximality", count, True, None, int((time.perf_counter() - start) * 1000)
    )


def check_coreduction_uniqueness(max_cells: int) -> PropertyReport:
    start = time.perf_counter()
    count = 0
    for gr in _grids(max_cells):
        closed = gr.closed_array
        cm, r1 = gr.cells_mask, gr.row1_mask
        pair_index = 0
        for g_mask in gr.closed_masks:
            inside = closed[(closed & ~g_mask) == 0]
            for t_mask in inside.tolist():
                count += 1
                pair_index += 1
                tx = inside | t_mask
                allowed = tx | ((tx << 1) & cm) | r1
                witnesses = inside[(g_mask & ~allowed) == 0]
                least = int(np.bitwise_and.reduce(witnesses))
                if least not in witnesses:
                    return PropertyReport(
                        "coreduction_uniqueness",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: minimal witnesses disagree, "
                        f"T={sorted(gr.to_set(t_mask))} G={sorted(gr.to_set(g_mask))}",
                        int((time.perf_counter() - start) * 1000),
                    )
                # ties the one-step-down height map used by the chain
                # properties to the least witness, on every pair
                formula = gr.mask_of_heights(
                    _cored_next(gr.heights_of(g_mask), gr.heights_of(t_mask))
                )
                if (t_mask | least) != formula:
                    return PropertyReport(
                        "coreduction_uniqueness",
                        count,
                        False,
                        f"grid {gr.depth}x{gr.columns}: least witness disagrees with "
                        f"the height map, T={sorted(gr.to_set(t_mask))}",
                        int((time.perf_counter() - start) * 1000),
                    )
                if pair_index % CROSS_CHECK_SLICE == 0 or gr.cells <= 6:
                    cored = coreduction(gr.to_set(g_mask), gr.to_set(t_mask), gr.g)
                    if cored != gr.to_set(least):
                        return PropertyReport(
                            "coreduction_uniqueness",
                            count,
                            False,
                            f"grid {gr.depth}x{gr.columns}: coreduction disagrees with "
                            f"brute force, T={sorted(gr.to_set(t_mask))} "
                            f"G={sorted(gr.to_set(g_mask))}",
                            int((time.perf_counter() - start) * 1000),
                        )
    return PropertyReport(
        "coreduction_uniqueness", count, True, None, int((time.perf_counter() - start) * 1000)
    )


def check_analyses_minimal(max_cells: int) -> PropertyReport:
    def gen():
        for gr in _grids(max_cells):
            pair_index = 0
            for t_h, g_h in _pairs_closed(gr):
                pair_index += 1
                red_chain = _red_chain(t_h, g_h)
                cored_chain = _cored_chain(t_h, g_h)
                shortest = _shortest_chain_length(t_h, g_h)
                bad = None
                for label, chain in (("reductions", red_chain), ("coreductions", cored_chain)):
                    if any(u < 1 for u in _utype(chain, t_h)):
                        bad = f"degenerate {label} step"
                        break
                    if len(chain) != shortest:
                        bad = f"analysis by {label} not minimal"
                        break
                if bad is None and len(red_chain) != len(cored_chain):
                    bad = "analysis lengths differ"
                if bad is None and (pair_index % CROSS_CHECK_SLICE == 0 or gr.cells <= 6):
                    T = gr.set_of_heights(t_h)
                    G = gr.set_of_heights(g_h)
                    ar = analysis_by_reductions(G, T, gr.g)
                    ac = analysis_by_coreductions(G, T, gr.g)
                    ar.validate()
                    ac.validate()
                    if ar.step_heights() != red_chain or ac.step_heights() != cored_chain:
                        bad = "public analysis disagrees with the verified chain"
                    elif not (is_minimal(ar, gr.g) and is_minimal(ac, gr.g)):
                        bad = "public is_minimal disagrees"
                if bad is not None:
                    yield f"grid {gr.depth}x{gr.columns}: {bad}, T={t_h} G={g_h}"
                    return
                yield None

    return _check("analyses_minimal", gen())


def check_equal_utype_canonical(max_cells: int) -> PropertyReport:
    def gen():
        for gr in _grids(max_cells):
            for t_h, g_h in _pairs_closed(gr):
                red_chain = _red_chain(t_h, g_h)
                cored_chain = _cored_chain(t_h, g_h)
                if _utype(red_chain, t_h) != _utype(cored_chain, t_h):
                    yield None
                    continue
                length = len(red_chain)
                for other in _chains_dfs(t_h, g_h, length, exact_length=length):
                    if other != red_chain:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: equal U-types but a minimal "
                            f"analysis deviates, T={t_h} G={g_h} other={other}"
                        )
                        return
                if length and cored_chain != red_chain:
                    yield f"grid {gr.depth}x{gr.columns}: analyses disagree stepwise, T={t_h} G={g_h}"
                    return
                yield None

    return _check("equal_utype_canonical", gen())


def check_incompressible_ones_minimal(max_cells: int) -> PropertyReport:
    def gen():
        for gr in _grids(max_cells):
            pair_index = 0
            for t_h, g_h in _pairs_closed(gr):
                pair_index += 1
                if t_h == g_h:
                    yield None
                    continue
                shortest = _shortest_chain_length(t_h, g_h)
                for seq in _ones_incompressible_sequences(t_h, g_h):
                    if len(seq) != shortest:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: incompressible (1,..,1) analysis "
                            f"of length {len(seq)} but minimum is {shortest}, T={t_h} G={g_h}"
                        )
                        return
                    if pair_index % CROSS_CHECK_SLICE == 0 or gr.cells <= 6:
                        a = Analysis(
                            gr.g,
                            gr.set_of_heights(t_h),
                            gr.set_of_heights(g_h),
                            tuple(gr.set_of_heights(h) for h in seq),
                        )
                        a.validate()
                        if not (
                            all(u == 1 for u in a.utype())
                            and is_incompressible(a)
                            and is_minimal(a, gr.g)
                        ):
                            yield (
                                f"grid {gr.depth}x{gr.columns}: public predicates disagree "
                                f"on {seq}, T={t_h} G={g_h}"
                            )
                            return
                yield None

    return _check("incompressible_ones_minimal", gen())


def _ones_incompressible_sequences(base_h, target_h):
    """All analyses whose steps each add exactly one cell, pruned by the
    incompressibility definition (a violated prefix can never recover)."""

    def rec(prefix):
        last = prefix[-1]
        if last == target_h:
            yield list(prefix[1:])
            return
        before = prefix[-2] if len(prefix) >= 2 else None
        for j in range(len(last)):
            if last[j] >= target_h[j]:
                continue
            nxt = last[:j] + (last[j] + 1,) + last[j + 1 :]
            if before is not None and all(a <= b + 1 for a, b in zip(nxt, before)):
                continue  # step would be internal over the step before last
            yield from rec(prefix + [nxt])

    yield from rec([base_h])


def check_local_criterion_reductions(max_cells: int) -> PropertyReport:
    def gen():
        for gr in _grids(max_cells):
            pair_index = 0
            for t_h, g_h in _pairs_closed(gr):
                pair_index += 1
                official = _red_chain(t_h, g_h)
                chain = [t_h] + official
                # forward: the by-reductions analysis satisfies the local criterion
                for i in range(1, len(chain) - 1):
                    if _red_next(chain[i - 1], chain[i + 1]) != chain[i]:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: by-reductions analysis fails "
                            f"the local criterion at step {i}, T={t_h} G={g_h}"
                        )
                        return
                if pair_index % CROSS_CHECK_SLICE == 0 or gr.cells <= 6:
                    for i in range(1, len(chain) - 1):
                        red = reduction(
                            gr.set_of_heights(chain[i + 1]),
                            gr.set_of_heights(chain[i - 1]),
                            gr.g,
                        )
                        if heights(red, gr.g) != chain[i]:
                            yield (
                                f"grid {gr.depth}x{gr.columns}: public reduction disagrees "
                                f"at step {i}, T={t_h} G={g_h}"
                            )
                            return
                # reverse: anything satisfying the local criterion is that analysis
                for seq in _local_red_sequences(t_h, g_h):
                    if seq != official:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: locally-by-reductions analysis "
                            f"differs, T={t_h} G={g_h} got {seq}"
                        )
                        return
                yield None

    return _check("local_criterion_reductions", gen())


def _local_red_sequences(base_h, target_h):
    """DFS of analyses satisfying: step i is the reduction of step i+1 over
    the (i-1)-st step.  Candidates for the next step are generated from the
    constraint column by column, so dead branches cost O(columns)."""

    def candidates(last, before):
        options = []
        for j in range(len(last)):
            opts = [v for v in (last[j], last[j] + 1) if v <= target_h[j]]
            if before is not None:
                opts = [v for v in opts if min(v, before[j] + 1) == last[j]]
            if not opts:
                return
            options.append(opts)
        for nxt in product(*options):
            if nxt != last:
                yield nxt

    def rec(prefix):
        last = prefix[-1]
        if last == target_h:
            yield list(prefix[1:])
            return
        before = prefix[-2] if len(prefix) >= 2 else None
        for nxt in candidates(last, before):
            yield from rec(prefix + [nxt])

    yield from rec([base_h])


def check_local_criterion_coreductions(max_cells: int) -> PropertyReport:
    def gen():
        for gr in _grids(max_cells):
            pair_index = 0
            for t_h, g_h in _pairs_closed(gr):
                pair_index += 1
                official = _cored_chain(t_h, g_h)
                chain = [t_h] + official
                for i in range(1, len(chain) - 1):
                    if _cored_next(chain[i + 1], chain[i - 1]) != chain[i]:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: by-coreductions analysis fails "
                            f"the local criterion at step {i}, T={t_h} G={g_h}"
                        )
                        return
                if pair_index % CROSS_CHECK_SLICE == 0 or gr.cells <= 6:
                    for i in range(1, len(chain) - 1):
                        cored = coreduction(
                            gr.set_of_heights(chain[i + 1]),
                            gr.set_of_heights(chain[i - 1]),
                            gr.g,
                        )
                        merged = tuple(
                            max(a, b)
                            for a, b in zip(heights(cored, gr.g), chain[i - 1])
                        )
                        if merged != chain[i]:
                            yield (
                                f"grid {gr.depth}x{gr.columns}: public coreduction disagrees "
                                f"at step {i}, T={t_h} G={g_h}"
                            )
                            return
                for seq in _local_cored_sequences(t_h, g_h):
                    if seq != official:
                        yield (
                            f"grid {gr.depth}x{gr.columns}: locally-by-coreductions "
                            f"analysis differs, T={t_h} G={g_h} got {seq}"
                        )
                        return
                yield None

    return _check("local_criterion_coreductions", gen())


def _local_cored_sequences(base_h, target_h):
    """Dual DFS: step i must be the coreduction of step i+1 over step i-1."""

    def candidates(last, before):
        options = []
        for j in range(len(last)):
            opts = []
            for v in (last[j], last[j] + 1):
                if v > target_h[j]:
                    continue
                if before is not None and max(before[j], v - 1) != last[j]:
                    continue
                opts.append(v)
            if not opts:
                return
            options.append(opts)
        for nxt in product(*options):
            if nxt != last:
                yield nxt

    def rec(prefix):
        last = prefix[-1]
        if last == target_h:
            yield list(prefix[1:])
            return
        before = prefix[-2] if len(prefix) >= 2 else None
        for nxt in candidates(last, before):
            yield from rec(prefix + [nxt])

    yield from rec([base_h])


def check_column_chain_length(max_cells: int) -> PropertyReport:
    def gen():
        for depth in range(1, max_cells + 1):
            g = GridModel(depth, 1)
            target = frozenset({(depth, 1)})
            shortest = _shortest_chain_length((0,), (depth,))
            if shortest != depth:
                yield f"column of depth {depth}: minimal analysis length {shortest}"
                return
            a = analysis_by_reductions(target, frozenset(), g)
            if a.length != depth or not is_minimal(a, g):
                yield f"column of depth {depth}: public analysis has length {a.length}"
                return
            yield None

    return _check("column_chain_length", gen())


# (name, checker, cell cap): the closure axioms quantify over arbitrary
# subsets and stay feasible up to 12 cells; the pair- and chain-quantified
# properties are stated over grids with at most 9 cells.
PAIR_PROPERTY_CELLS = 9

ALL_PROPERTIES = [
    ("closure_axioms", check_closure_axioms, MAX_VERIFY_CELLS),
    ("urank_additivity", check_urank_additivity, PAIR_PROPERTY_CELLS),
    ("reduction_maximality", check_reduction_maximality, PAIR_PROPERTY_CELLS),
    ("coreduction_uniqueness", check_coreduction_uniqueness, PAIR_PROPERTY_CELLS),
    ("analyses_minimal", check_analyses_minimal, PAIR_PROPERTY_CELLS),
    ("equal_utype_canonical", check_equal_utype_canonical, PAIR_PROPERTY_CELLS),
    ("incompressible_ones_minimal", check_incompressible_ones_minimal, PAIR_PROPERTY_CELLS),
    ("local_criterion_reductions", check_local_criterion_reductions, PAIR_PROPERTY_CELLS),
    ("local_criterion_coreductions", check_local_criterion_coreductions, PAIR_PROPERTY_CELLS),
    ("column_chain_length", check_column_chain_length, MAX_VERIFY_CELLS),
]


def run_grid_suite(max_cells: int = 9, budget: int = MAX_VERIFY_CELLS) -> list[PropertyReport]:
    """Run every property exhaustively on all grids with at most max_cells
    cells (each property additionally honors its own stated cap).  Larger
    requests are refused rather than sampled."""
    if max_cells > budget:
        raise BudgetExceeded(
            f"max_cells={max_cells} exceeds the exhaustive-verification budget {budget}"
        )
    if max_cells < 1:
        raise ValueError("max_cells must be positive")
    return [fn(min(max_cells, cap)) for _, fn, cap in ALL_PROPERTIES]
