"""Exact width, level matchings and chain partitions of graph posets.

The poset under study orders connected graphs on [n] by strict edge-set
inclusion; its levels are the connected graphs of a fixed edge count.  A
maximum matching between two adjacent levels decides whether a complete
matching (an injection pairing every graph with a comparable neighbor)
exists; when it does not, a certificate family violating Hall's condition
is extracted from the final alternating-reachability cut.

Exact width uses the classical reduction: split every element into a left
and right copy, connect the copies of every strictly comparable pair, and
take a maximum matching.  |P| minus the matching size is both the minimum
number of chains covering P and, via the matching's vertex cover, the size
of a maximum antichain, so the two certificates confirm each other.
"""

from __future__ import annotations

import random
from array import array
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graphs import EdgeSet, _iter_bits, _level_bits, slot_count
from .limits import (
    ORDER_ORACLE_MAX_ELEMENTS,
    check_scan_budget,
    check_width_budget,
)

_BIG = 1 << 60


class ChainPartitionError(Exception):
    """A level pair lacks the complete matching the chain gluing needs."""

    def __init__(self, k_from: int, k_to: int, message: str):
        super().__init__(message)
        self.k_from = k_from
        self.k_to = k_to


# ---------------------------------------------------------------------------
# bipartite maximum matching


def hopcroft_karp(
    n_left: int, n_right: int, neighbors: Callable[[int], Iterable[int]]
) -> tuple[int, list[int], list[int]]:
    """Maximum bipartite matching by breadth-layered alternating phases.

    neighbors(u) yields the right-side indices adjacent to left index u; it
    may be a list lookup or a generator, so adjacency can be streamed for
    instances too large to materialize.  Returns (size, match_l, match_r)
    with -1 for unmatched.
    """
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    size = 0
    for u in range(n_left):
        for v in neighbors(u):
            if match_r[v] < 0:
                match_r[v] = u
                match_l[u] = v
                size += 1
                break

    dist = [0] * n_left

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _BIG
        found = _BIG
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du >= found:
                continue
            for v in neighbors(u):
                w = match_r[v]
                if w < 0:
                    if found == _BIG:
                        found = du + 1
                elif dist[w] == _BIG:
                    dist[w] = du + 1
                    queue.append(w)
        return found != _BIG

    def dfs(start: int) -> bool:
        stack = [(start, iter(neighbors(start)))]
        while stack:
            node, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w < 0:
                    # augment along the alternating path on the stack
                    for s_node, _ in reversed(stack):
                        nxt = match_l[s_node]
                        match_l[s_node] = v
                        match_r[v] = s_node
                        v = nxt
                    return True
                if dist[w] == dist[node] + 1:
                    stack.append((w, iter(neighbors(w))))
                    advanced = True
                    break
            if not advanced:
                dist[node] = _BIG
                stack.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0 and dfs(u):
                size += 1
    return size, match_l, match_r


def augmenting_path_matching(
    n_left: int, n_right: int, neighbors: Callable[[int], Iterable[int]]
) -> tuple[int, list[int], list[int]]:
    """Plain one-path-at-a-time augmenting matcher, kept as an independent
    cross-check for the phase-based matcher above."""
    match_l = [-1] * n_left
    match_r = [-1] * n_right

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in neighbors(u):
            if not seen[v]:
                seen[v] = True
                if match_r[v] < 0 or try_augment(match_r[v], seen):
                    match_r[v] = u
                    match_l[u] = v
                    return True
        return False

    size = 0
    for u in range(n_left):
        if try_augment(u, [False] * n_right):
            size += 1
    return size, match_l, match_r


def _alternating_reachable(
    n_left: int,
    n_right: int,
    neighbors: Callable[[int], Iterable[int]],
    match_l: list[int],
    match_r: list[int],
) -> tuple[list[bool], list[bool]]:
    """Left/right vertices reachable from unmatched lefts by alternating paths
    (non-matching edges rightward, matching edges leftward)."""
    seen_l = [False] * n_left
    seen_r = [False] * n_right
    queue = deque(u for u in range(n_left) if match_l[u] < 0)
    for u in queue:
        seen_l[u] = True
    while queue:
        u = queue.popleft()
        for v in neighbors(u):
            if not seen_r[v]:
                seen_r[v] = True
                w = match_r[v]
                if w >= 0 and not seen_l[w]:
                    seen_l[w] = True
                    queue.append(w)
    return seen_l, seen_r


# ---------------------------------------------------------------------------
# adjacent-level matchings


@dataclass(frozen=True)
class MatchingResult:
    """Maximum matching between two adjacent levels, matched from k_from."""

    n: int
    universe: str
    k_from: int
    k_to: int
    size_from: int
    size_to: int
    matching_size: int
    pairs: tuple[tuple[EdgeSet, EdgeSet], ...]
    violator: tuple[EdgeSet, ...] | None

    @property
    def complete(self) -> bool:
        return self.matching_size == self.size_from


def _universe_levels(
    n: int, universe, budget_override: bool
) -> tuple[str, tuple[tuple[int, ...], ...]]:
    check_scan_budget(n, budget_override)
    if callable(universe):
        base = _level_bits(n, "all")
        levels = tuple(
            tuple(b for b in level if universe(EdgeSet(n, b))) for level in base
        )
        return getattr(universe, "__name__", "custom"), levels
    if universe in ("connected", "all", "two_edge_connected"):
        return universe, _level_bits(n, universe)
    raise ValueError(f"unknown universe {universe!r}")


def _level_pair_adjacency(
    n: int, from_bits: Sequence[int], to_bits: Sequence[int], direction: str
) -> list[list[int]]:
    index = {b: i for i, b in enumerate(to_bits)}
    m = slot_count(n)
    full = (1 << m) - 1
    adj: list[list[int]] = []
    for b in from_bits:
        row = []
        flips = _iter_bits(full ^ b) if direction == "up" else _iter_bits(b)
        for s in flips:
            other = b | (1 << s) if direction == "up" else b ^ (1 << s)
            i = index.get(other)
            if i is not None:
                row.append(i)
        adj.append(row)
    return adj


def adjacent_level_matching(
    n: int,
    k: int,
    direction: str = "up",
    universe="connected",
    budget_override: bool = False,
) -> MatchingResult:
    """Maximum matching from level k into level k+1 (up) or k-1 (down)."""
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    name, levels = _universe_levels(n, universe, budget_override)
    m = slot_count(n)
    k_to = k + 1 if direction == "up" else k - 1
    if not (0 <= k <= m and 0 <= k_to <= m):
        raise ValueError(f"level pair ({k},{k_to}) out of range 0..{m}")
    from_bits, to_bits = levels[k], levels[k_to]
    if not from_bits or not to_bits:
        raise ValueError(f"level pair ({k},{k_to}) has an empty side")
    adj = _level_pair_adjacency(n, from_bits, to_bits, direction)
    size, match_l, match_r = hopcroft_karp(len(from_bits), len(to_bits), adj.__getitem__)

    pairs = tuple(
        (EdgeSet(n, from_bits[u]), EdgeSet(n, to_bits[match_l[u]]))
        for u in range(len(from_bits))
        if match_l[u] >= 0
    )
    violator = None
    if size < len(from_bits):
        seen_l, seen_r = _alternating_reachable(
            len(from_bits), len(to_bits), adj.__getitem__, match_l, match_r
        )
        side = [u for u in range(len(from_bits)) if seen_l[u]]
        neighborhood = set()
        for u in side:
            neighborhood.update(adj[u])
        if len(neighborhood) >= len(side):
            raise AssertionError("alternating cut failed to violate Hall's condition")
        violator = tuple(EdgeSet(n, from_bits[u]) for u in side)
    return MatchingResult(
        n=n,
        universe=name,
        k_from=k,
        k_to=k_to,
        size_from=len(from_bits),
        size_to=len(to_bits),
        matching_size=size,
        pairs=pairs,
        violator=violator,
    )


# ---------------------------------------------------------------------------
# chain partition through the largest level


@dataclass(frozen=True)
class ChainPartition:
    """Chains of consecutive-level graphs partitioning the connected poset."""

    n: int
    chains: tuple[tuple[EdgeSet, ...], ...]

    @property
    def count(self) -> int:
        return len(self.chains)


def chain_partition(n: int, budget_override: bool = False) -> ChainPartition:
    """Glue complete level matchings through the middle level M = ceil(m/2).

    Below M every level must match completely into the next one up; above M
    every level must match completely into the next one down.  The resulting
    chains partition the poset into exactly |level M| chains.  If some pair
    lacks the required matching, ChainPartitionError names the first one.
    """
    check_scan_budget(n, budget_override)
    m = slot_count(n)
    M = (m + 1) // 2
    levels = _level_bits(n, "connected")
    lowest = n - 1 if n > 1 else 0

    up_maps: dict[int, dict[int, int]] = {}
    for k in range(lowest, M):
        if len(levels[k]) > len(levels[k + 1]):
            raise ChainPartitionError(
                k, k + 1, f"level {k} is larger than level {k + 1}; cannot glue upward"
            )
        res = adjacent_level_matching(n, k, "up", "connected", budget_override)
        if not res.complete:
            raise ChainPartitionError(
                k, k + 1, f"no complete matching from level {k} into level {k + 1}"
            )
        up_maps[k] = {g.bits: h.bits for g, h in res.pairs}

    down_maps: dict[int, dict[int, int]] = {}
    for k in range(M, m):
        if len(levels[k + 1]) > len(levels[k]):
            raise ChainPartitionError(
                k + 1, k, f"level {k + 1} is larger than level {k}; cannot glue downward"
            )
        res = adjacent_level_matching(n, k + 1, "down", "connected", budget_override)
        if not res.complete:
            raise ChainPartitionError(
                k + 1, k, f"no complete matching from level {k + 1} into level {k}"
            )
        down_maps[k + 1] = {g.bits: h.bits for g, h in res.pairs}

    up_inverse: dict[int, dict[int, int]] = {
        k: {h: g for g, h in mp.items()} for k, mp in up_maps.items()
    }
    down_inverse: dict[int, dict[int, int]] = {
        k: {h: g for g, h in mp.items()} for k, mp in down_maps.items()
    }

    chains = []
    for anchor in levels[M]:
        below: list[int] = []
        cur = anchor
        for k in range(M - 1, lowest - 1, -1):
            cur = up_inverse[k].get(cur, -1)
            if cur < 0:
                break
            below.append(cur)
        above: list[int] = []
        cur = anchor
        for k in range(M + 1, m + 1):
            cur = down_inverse[k].get(cur, -1)
            if cur < 0:
                break
            above.append(cur)
        chain = list(reversed(below)) + [anchor] + above
        chains.append(tuple(EdgeSet(n, b) for b in chain))
    return ChainPartition(n, tuple(chains))


# ---------------------------------------------------------------------------
# exact width via minimum chain cover


@dataclass(frozen=True)
class WidthResult:
    """Exact poset width with an antichain certificate and chain-cover size."""

    element_count: int
    width: int
    chain_cover_size: int
    antichain: tuple
    level_sizes: dict[int, int] | None = None
    max_level_k: int | None = None
    max_level_size: int | None = None


def _spot_check_order(elements: Sequence, order: Callable) -> None:
    rng = random.Random(0x5EED)
    n = len(elements)
    for _ in range(min(100, n)):
        x = elements[rng.randrange(n)]
        if order(x, x):
            raise ValueError(f"order oracle is not irreflexive at {x!r}")
    for _ in range(300):
        a, b, c = (elements[rng.randrange(n)] for _ in range(3))
        if order(a, b) and order(b, c) and not order(a, c):
            raise ValueError(f"order oracle violates transitivity on ({a!r},{b!r},{c!r})")


def _spot_check_adjacency(adj: list[Sequence[int]]) -> None:
    rng = random.Random(0x5EED)
    n = len(adj)
    for _ in range(300):
        u = rng.randrange(n)
        if not adj[u]:
            continue
        row = adj[u]
        v = row[rng.randrange(len(row))]
        row_v = adj[v]
        if row_v:
            w = row_v[rng.randrange(len(row_v))]
            pos = bisect_left(row, w)
            if pos == len(row) or row[pos] != w:
                raise ValueError(f"successor relation not transitive at ({u},{v},{w})")


def width_dilworth(
    elements: Sequence,
    order: Callable | None = None,
    successors: Callable | None = None,
    level_of: Callable | None = None,
    budget_override: bool = False,
) -> WidthResult:
    """Exact width and a maximum antichain of a finite strict partial order.

    Supply either `order(a, b)` (strict less-than oracle; quadratic, for
    small posets) or `successors(a)` (all elements strictly above a; lets
    large instances skip the all-pairs scan).  The order must be strict;
    irreflexivity and transitivity are spot-checked on samples.
    """
    n = len(elements)
    check_width_budget(n, budget_override)
    if (order is None) == (successors is None):
        raise ValueError("provide exactly one of order= or successors=")

    if order is not None:
        if n > ORDER_ORACLE_MAX_ELEMENTS and not budget_override:
            raise ValueError(
                f"all-pairs order route over {n} elements; supply successors= instead"
            )
        _spot_check_order(elements, order)
        adj: list[Sequence[int]] = [
            [j for j in range(n) if i != j and order(elements[i], elements[j])]
            for i in range(n)
        ]
    else:
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != n:
            raise ValueError("elements must be distinct")
        adj = [array("i", sorted(index[s] for s in successors(e))) for e in elements]
        for i, row in enumerate(adj):
            pos = bisect_left(row, i)
            if pos != len(row) and row[pos] == i:
                raise ValueError(f"successors({elements[i]!r}) contains the element itself")
        _spot_check_adjacency(adj)

    size, match_l, match_r = hopcroft_karp(n, n, adj.__getitem__)
    seen_l, seen_r = _alternating_reachable(n, n, adj.__getitem__, match_l, match_r)
    # minimum vertex cover = (L not reached) + (R reached); the elements with
    # neither copy in the cover form a maximum antichain
    antichain_idx = [i for i in range(n) if seen_l[i] and not seen_r[i]]
    cover = n - size
    if len(antichain_idx) != cover:
        raise AssertionError(
            f"antichain certificate has size {len(antichain_idx)}, expected {cover}"
        )

    level_sizes = None
    max_level_k = None
    max_level_size = None
    if level_of is not None:
        level_sizes = {}
        for e in elements:
            k = level_of(e)
            level_sizes[k] = level_sizes.get(k, 0) + 1
        max_level_k = max(level_sizes, key=lambda k: (level_sizes[k], -k))
        max_level_size = level_sizes[max_level_k]

    return WidthResult(
        element_count=n,
        width=cover,
        chain_cover_size=cover,
        antichain=tuple(elements[i] for i in sorted(antichain_idx)),
        level_sizes=level_sizes,
        max_level_k=max_level_k,
        max_level_size=max_level_size,
    )


# ---------------------------------------------------------------------------
# the largest-antichain verdict


@dataclass(frozen=True)
class SpernerReport:
    """Width of a graded graph poset compared against its largest level."""

    n: int
    universe: str
    element_count: int
    level_sizes: dict[int, int]
    max_level_k: int
    max_level_size: int
    width: int
    antichain: tuple[EdgeSet, ...]

    @property
    def sperner(self) -> bool:
        return self.width == self.max_level_size

    @property
    def strict(self) -> bool:
        """Is the certificate antichain exactly one full level?"""
        ks = {g.edge_count for g in self.antichain}
        if len(ks) != 1:
            return False
        return len(self.antichain) == self.level_sizes.get(next(iter(ks)), -1)


# adjacency larger than this is generated on the fly instead of materialized
_MATERIALIZE_PAIR_LIMIT = 40_000_000


def _subset_order_neighbors(
    bits_list: Sequence[int], m: int
) -> Callable[[int], Iterable[int]]:
    """Neighbor access under strict subset order, via supermask enumeration.

    Rows are materialized when the total pair count is affordable; otherwise
    every call walks the supermasks of the element's complement directly.
    """
    index = array("i", [-1] * (1 << m))
    for i, b in enumerate(bits_list):
        index[b] = i
    full = (1 << m) - 1
    total_pairs = sum((1 << (m - b.bit_count())) - 1 for b in bits_list)

    if total_pairs <= _MATERIALIZE_PAIR_LIMIT:
        rows = []
        for b in bits_list:
            row = array("i")
            comp = full ^ b
            t = comp
            while t:
                j = index[b | t]
                if j >= 0:
                    row.append(j)
                t = (t - 1) & comp
            rows.append(array("i", sorted(row)))
        return rows.__getitem__

    def streamed(u: int) -> Iterable[int]:
        b = bits_list[u]
        comp = full ^ b
        t = comp
        while t:
            j = index[b | t]
            if j >= 0:
                yield j
            t = (t - 1) & comp

    return streamed


def sperner_verdict(
    n: int, universe="connected", budget_override: bool = False
) -> SpernerReport:
    """Exact width of the whole universe versus its largest level."""
    name, levels = _universe_levels(n, universe, budget_override)
    bits_list = [b for level in levels for b in sorted(level)]
    check_width_budget(len(bits_list), budget_override)
    m = slot_count(n)
    rows = _subset_order_neighbors(bits_list, m)

    size, match_l, match_r = hopcroft_karp(len(bits_list), len(bits_list), rows)
    seen_l, seen_r = _alternating_reachable(
        len(bits_list), len(bits_list), rows, match_l, match_r
    )
    antichain_idx = [i for i in range(len(bits_list)) if seen_l[i] and not seen_r[i]]
    width = len(bits_list) - size
    if len(antichain_idx) != width:
        raise AssertionError("antichain certificate does not match the chain cover")

    level_sizes = {k: len(level) for k, level in enumerate(levels) if level}
    max_level_k = max(level_sizes, key=lambda k: (level_sizes[k], -k))
    return SpernerReport(
        n=n,
        universe=name,
        element_count=len(bits_list),
        level_sizes=level_sizes,
        max_level_k=max_level_k,
        max_level_size=level_sizes[max_level_k],
        width=width,
        antichain=tuple(
            EdgeSet(n, b) for b in sorted(bits_list[i] for i in antichain_idx)
        ),
    )
