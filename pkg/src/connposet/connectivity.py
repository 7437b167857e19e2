"""Bridges, skeleton decomposition, removable edges, and multigraph cycles.

The skeleton of a connected graph is the pair (B, {A_1,...,A_t}): B its set
of bridges and A_1..A_t the vertex sets of the components left after the
bridges are deleted.  For a bridgeless (2-edge-connected) graph, R(G) is the
set of edges whose deletion destroys 2-edge-connectivity; deleting them
splits the graph into q components, and |R(G)| is at most 2q-2 because the
multigraph induced on those components never contains a chorded cycle.

Conventions: a one-vertex graph is 2-edge-connected (skeleton parts of size
one must qualify); a two-vertex single edge is not (the edge is a bridge).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

from .graphs import (
    EdgeSet,
    _component_masks,
    _connected_bits,
    _iter_bits,
    _slot_pairs,
    is_connected,
    slot_count,
)
from .limits import check_scan_budget


# ---------------------------------------------------------------------------
# bridges and skeletons of simple graphs


def _bridge_slots(n: int, bits: int) -> list[int]:
    """Bridge slots via one lowpoint DFS (graph need not be connected)."""
    pairs = _slot_pairs(n)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for s in _iter_bits(bits):
        i, j = pairs[s]
        adj[i].append((j, s))
        adj[j].append((i, s))
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    out: list[int] = []
    timer = 1

    def dfs(u: int, parent: int) -> None:
        nonlocal timer
        disc[u] = low[u] = timer
        timer += 1
        for v, s in adj[u]:
            if v == parent:
                continue
            if disc[v]:
                low[u] = min(low[u], disc[v])
            else:
                dfs(v, u)
                low[u] = min(low[u], low[v])
                if low[v] > disc[u]:
                    out.append(s)

    for root in range(1, n + 1):
        if not disc[root]:
            dfs(root, 0)
    out.sort()
    return out


def bridges(g: EdgeSet) -> list[tuple[int, int]]:
    """The edges whose deletion disconnects g, sorted; rejects disconnected g."""
    if not is_connected(g):
        raise ValueError("bridges requires a connected graph")
    pairs = _slot_pairs(g.n)
    return sorted(pairs[s] for s in _bridge_slots(g.n, g.bits))


def bridges_by_deletion(g: EdgeSet) -> list[tuple[int, int]]:
    """Per-edge-deletion cross-check for bridges (quadratic but independent)."""
    if not is_connected(g):
        raise ValueError("bridges requires a connected graph")
    pairs = _slot_pairs(g.n)
    return sorted(
        pairs[s]
        for s in _iter_bits(g.bits)
        if not _connected_bits(g.n, g.bits ^ (1 << s))
    )


def _mask_vertices(mask: int) -> tuple[int, ...]:
    return tuple(_iter_bits(mask))


@dataclass(frozen=True)
class Skeleton:
    """Bridge set plus the vertex partition left after deleting the bridges."""

    bridges: tuple[tuple[int, int], ...]
    parts: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.parts)


def skeleton(g: EdgeSet) -> Skeleton:
    """Skeleton of a connected graph; parts sorted by smallest member."""
    bridge_slots = _bridge_slots(g.n, g.bits)
    if not is_connected(g):
        raise ValueError("skeleton requires a connected graph")
    rest = g.bits
    for s in bridge_slots:
        rest ^= 1 << s
    parts = tuple(_mask_vertices(m) for m in _component_masks(g.n, rest))
    pairs = _slot_pairs(g.n)
    return Skeleton(tuple(sorted(pairs[s] for s in bridge_slots)), parts)


def _two_edge_connected_bits(n: int, bits: int) -> bool:
    return _connected_bits(n, bits) and not _bridge_slots(n, bits)


def is_two_edge_connected(g: EdgeSet) -> bool:
    """Connected with no bridge; a single vertex qualifies, a single edge not."""
    return _two_edge_connected_bits(g.n, g.bits)


def _induced_bits(n: int, bits: int, vertex_mask: int) -> tuple[int, int]:
    """Induced subgraph on the masked vertices, relabeled to 1..|mask|."""
    verts = _mask_vertices(vertex_mask)
    relabel = {v: i + 1 for i, v in enumerate(verts)}
    pairs = _slot_pairs(n)
    sub = 0
    for s in _iter_bits(bits):
        i, j = pairs[s]
        if vertex_mask >> i & 1 and vertex_mask >> j & 1:
            a, b = relabel[i], relabel[j]
            if a > b:
                a, b = b, a
            sub |= 1 << ((b - 1) * (b - 2) // 2 + (a - 1))
    return len(verts), sub


# ---------------------------------------------------------------------------
# removable edges of 2-edge-connected graphs


@dataclass(frozen=True)
class RemovabilityReport:
    """R(G) together with the component count q of G - R(G) and 2q-2."""

    removable: tuple[tuple[int, int], ...]
    q: int

    @property
    def r(self) -> int:
        return len(self.removable)

    @property
    def bound(self) -> int:
        return 2 * self.q - 2


def _removable_slots(n: int, bits: int) -> list[int]:
    return [
        s
        for s in _iter_bits(bits)
        if not _two_edge_connected_bits(n, bits ^ (1 << s))
    ]


def removable_edges(g: EdgeSet) -> RemovabilityReport:
    """Edges whose deletion destroys 2-edge-connectivity, by per-edge retest."""
    if not is_two_edge_connected(g):
        raise ValueError("removable_edges requires a 2-edge-connected graph")
    slots = _removable_slots(g.n, g.bits)
    rest = g.bits
    for s in slots:
        rest ^= 1 << s
    q = len(_component_masks(g.n, rest))
    pairs = _slot_pairs(g.n)
    return RemovabilityReport(tuple(sorted(pairs[s] for s in slots)), q)


# ---------------------------------------------------------------------------
# multigraphs and chorded cycles


@dataclass(frozen=True)
class MultiGraph:
    """Loop-free multigraph on vertex set {1,...,q} with edge multiplicities."""

    q: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for u, v, mult in self.edges:
            if not (1 <= u < v <= self.q):
                raise ValueError(f"bad edge ({u},{v}): need 1 <= u < v <= q={self.q}")
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            if (u, v) in seen:
                raise ValueError(f"duplicate pair ({u},{v}); merge multiplicities")
            seen.add((u, v))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def edge_total(self) -> int:
        return sum(mult for _, _, mult in self.edges)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        return {(u, v): mult for u, v, mult in self.edges}

    @classmethod
    def from_pairs(cls, q: int, pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        counts: dict[tuple[int, int], int] = {}
        for u, v in pairs:
            if u > v:
                u, v = v, u
            counts[(u, v)] = counts.get((u, v), 0) + 1
        return cls(q, tuple((u, v, c) for (u, v), c in counts.items()))

    def to_json(self) -> str:
        return json.dumps(
            {"q": self.q, "edges": [[u, v, mult] for u, v, mult in self.edges]}
        )

    @classmethod
    def from_json(cls, text: str) -> "MultiGraph":
        data = json.loads(text)
        return cls(data["q"], tuple(tuple(e) for e in data["edges"]))


def _has_spanning_cycle(vertices: tuple[int, ...], support: set[tuple[int, int]]) -> bool:
    """Is there a cycle through all the given vertices (|vertices| >= 3)?"""
    first, rest = vertices[0], vertices[1:]

    def linked(a: int, b: int) -> bool:
        return (a, b) in support if a < b else (b, a) in support

    for perm in permutations(rest):
        cyc = (first,) + perm
        if all(linked(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))):
            return True
    return False


def is_chorded_cycle_free(h: MultiGraph) -> bool:
    """True iff no vertex subset carries a spanning cycle plus an extra edge.

    A pair joined by two parallel edges is a cycle; a third parallel edge is
    a chord.  For larger subsets a chord is any edge (including a parallel
    copy of a cycle edge) beyond the |S| edges the spanning cycle uses.
    """
    mults = h.multiplicities()
    if any(c >= 3 for c in mults.values()):
        return False
    support = set(mults)
    touched = sorted({v for u, v in support} | {u for u, v in support})
    for size in range(3, len(touched) + 1):
        for subset in combinations(touched, size):
            members = set(subset)
            inside = [
                (pair, c) for pair, c in mults.items()
                if pair[0] in members and pair[1] in members
            ]
            if sum(c for _, c in inside) < size + 1:
                continue
            if _has_spanning_cycle(subset, {pair for pair, _ in inside}):
                return False
    return True


def is_cactus(h: MultiGraph) -> bool:
    """Every block (biconnected component) is a single edge or a cycle.

    This is a strictly stronger condition than is_chorded_cycle_free: the
    complete bipartite graph on parts of sizes 2 and 3 has no chorded cycle
    yet is a single non-cycle block.  Both predicates imply the 2q-2 edge
    bound; they first diverge at q = 5.
    """
    if any(mult >= 3 for _, _, mult in h.edges):
        return False
    # expand parallel edges into distinct edge ids
    edge_list: list[tuple[int, int]] = []
    for u, v, mult in h.edges:
        edge_list.extend([(u, v)] * mult)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(h.q + 1)]
    for eid, (u, v) in enumerate(edge_list):
        adj[u].append((v, eid))
        adj[v].append((u, eid))

    disc = [0] * (h.q + 1)
    low = [0] * (h.q + 1)
    timer = 1
    stack: list[int] = []
    blocks: list[list[int]] = []

    def dfs(u: int, parent_eid: int) -> None:
        nonlocal timer
        disc[u] = low[u] = timer
        timer += 1
        for v, eid in adj[u]:
            if eid == parent_eid:
                continue
            if disc[v]:
                if disc[v] < disc[u]:
                    stack.append(eid)
                    low[u] = min(low[u], disc[v])
            else:
                stack.append(eid)
                dfs(v, eid)
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    cut = stack.index(eid)
                    blocks.append(stack[cut:])
                    del stack[cut:]

    for root in range(1, h.q + 1):
        if not disc[root]:
            dfs(root, -1)

    for block in blocks:
        verts = set()
        for eid in block:
            verts.update(edge_list[eid])
        if len(block) != 1 and len(block) != len(verts):
            return False
    return True


def contract_set(h: MultiGraph, s: Iterable[int]) -> MultiGraph:
    """Merge the vertices of s into one; multiplicities add, inner edges vanish.

    The merged vertex inherits the slot of min(s) in the relabeling to
    {1,...,q'}, keeping the remaining vertices in their original order.
    """
    merged = set(s)
    if not merged:
        raise ValueError("cannot contract the empty set")
    if not merged <= set(range(1, h.q + 1)):
        raise ValueError(f"contraction set {sorted(merged)} not within 1..{h.q}")
    rep = min(merged)
    kept = sorted((set(range(1, h.q + 1)) - merged) | {rep})
    relabel = {v: i + 1 for i, v in enumerate(kept)}
    counts: dict[tuple[int, int], int] = {}
    for u, v, mult in h.edges:
        a = rep if u in merged else u
        b = rep if v in merged else v
        if a == b:
            continue
        a, b = relabel[a], relabel[b]
        if a > b:
            a, b = b, a
        counts[(a, b)] = counts.get((a, b), 0) + mult
    return MultiGraph(len(kept), tuple((u, v, c) for (u, v), c in counts.items()))


def removal_condensation(g: EdgeSet) -> tuple[RemovabilityReport, MultiGraph]:
    """The multigraph induced on the components of G - R(G) by the R(G) edges."""
    report = removable_edges(g)
    rest = g.bits
    for i, j in report.removable:
        rest ^= 1 << ((j - 1) * (j - 2) // 2 + (i - 1))
    comps = _component_masks(g.n, rest)
    comp_of = {}
    for idx, mask in enumerate(comps, start=1):
        for v in _iter_bits(mask):
            comp_of[v] = idx
    cross = []
    for i, j in report.removable:
        ci, cj = comp_of[i], comp_of[j]
        if ci == cj:
            raise AssertionError(
                f"removable edge ({i},{j}) does not cross components in {g.text()}"
            )
        cross.append((min(ci, cj), max(ci, cj)))
    return report, MultiGraph.from_pairs(len(comps), cross)


# ---------------------------------------------------------------------------
# exhaustive sweeps


def _skeleton_range(n: int, lo: int, hi: int) -> tuple[int, list[dict]]:
    findings = []
    checked = 0
    for bits in range(lo, hi):
        if not _connected_bits(n, bits):
            continue
        checked += 1
        g = EdgeSet(n, bits)
        sk = skeleton(g)
        if len(sk.bridges) != sk.t - 1:
            findings.append(
                {"graph": g.text(), "problem": "bridge count != t-1",
                 "bridges": len(sk.bridges), "t": sk.t}
            )
        for part in sk.parts:
            mask = 0
            for v in part:
                mask |= 1 << v
            n_sub, sub = _induced_bits(n, bits, mask)
            if not _two_edge_connected_bits(n_sub, sub):
                findings.append(
                    {"graph": g.text(), "problem": "part not 2-edge-connected",
                     "part": list(part)}
                )
    return checked, findings


def _removability_range(n: int, lo: int, hi: int) -> tuple[int, list[dict]]:
    findings = []
    checked = 0
    for bits in range(lo, hi):
        if not _two_edge_connected_bits(n, bits):
            continue
        checked += 1
        g = EdgeSet(n, bits)
        report, condensed = removal_condensation(g)
        if report.r > report.bound:
            findings.append(
                {"graph": g.text(), "problem": "removable set exceeds 2q-2",
                 "r": report.r, "q": report.q}
            )
        if report.r == 1:
            findings.append({"graph": g.text(), "problem": "removable set of size 1"})
        if not is_chorded_cycle_free(condensed):
            findings.append(
                {"graph": g.text(), "problem": "condensation has a chorded cycle",
                 "condensation": condensed.to_json()}
            )
    return checked, findings


def _parallel_range_scan(worker, n: int, workers: int) -> tuple[int, list[dict]]:
    total = 1 << slot_count(n)
    if workers <= 1:
        return worker(n, 0, total)
    from multiprocessing import Pool

    step = -(-total // workers)
    ranges = [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    with Pool(workers) as pool:
        parts = pool.starmap(worker, ranges)
    checked = sum(c for c, _ in parts)
    findings = [f for _, fs in parts for f in fs]
    return checked, findings


def skeleton_findings(
    n: int, budget_override: bool = False, workers: int = 1
) -> tuple[int, list[dict]]:
    """Check |B| = t-1 and 2-edge-connected parts over all connected graphs."""
    check_scan_budget(n, budget_override)
    return _parallel_range_scan(_skeleton_range, n, workers)


def removability_findings(
    n: int, budget_override: bool = False, workers: int = 1
) -> tuple[int, list[dict]]:
    """Check |R| <= 2q-2, |R| != 1 and a chorded-cycle-free condensation
    over all 2-edge-connected graphs on [n]."""
    check_scan_budget(n, budget_override)
    return _parallel_range_scan(_removability_range, n, workers)


def _multigraphs_on(q: int, mult_max: int) -> Iterator[tuple[tuple[int, int, int], ...]]:
    pair_list = list(combinations(range(1, q + 1), 2))
    for mults in product(range(mult_max + 1), repeat=len(pair_list)):
        yield tuple(
            (u, v, c) for (u, v), c in zip(pair_list, mults) if c
        )


def doubled_star(q: int) -> MultiGraph:
    """Star on q vertices with every edge doubled: 2q-2 edges, all 2-cycles."""
    if q < 2:
        return MultiGraph(max(q, 1), ())
    return MultiGraph(q, tuple((1, v, 2) for v in range(2, q + 1)))


def chorded_cycle_sweep(q_max: int = 5, mult_max: int = 3) -> dict:
    """Exhaust all multigraphs with q <= q_max vertices, multiplicity <= mult_max.

    Returns per-q statistics, any violations of the 2q-2 edge bound among
    chorded-cycle-free instances, tightness of the doubled star, and every
    instance on which the cactus block test disagrees with the direct
    chorded-cycle search.
    """
    results = {"per_q": {}, "bound_violations": [], "mismatches": []}
    for q in range(1, q_max + 1):
        total = free_count = 0
        # any pair at multiplicity >= 3 is a 2-cycle plus chord and also a
        # non-cycle block, so both predicates are False; cache the remaining
        # multiplicity<=2 patterns, which both predicates fully determine.
        cache: dict[tuple[tuple[int, int, int], ...], tuple[bool, bool]] = {}
        for edges in _multigraphs_on(q, mult_max):
            total += 1
            if any(c >= 3 for _, _, c in edges):
                continue
            if edges not in cache:
                h = MultiGraph(q, edges)
                cache[edges] = (is_chorded_cycle_free(h), is_cactus(h))
            free, cactus = cache[edges]
            if free != cactus:
                results["mismatches"].append(MultiGraph(q, edges).to_json())
            if free:
                free_count += 1
                size = sum(c for _, _, c in edges)
                if size > 2 * q - 2:
                    results["bound_violations"].append(MultiGraph(q, edges).to_json())
        star = doubled_star(q)
        results["per_q"][q] = {
            "multigraphs": total,
            "chorded_cycle_free": free_count,
            "doubled_star_edges": star.edge_total,
            "doubled_star_tight": q < 2
            or (star.edge_total == 2 * q - 2 and is_chorded_cycle_free(star)),
        }
    return results
