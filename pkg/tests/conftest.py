"""Shared independent oracles for the test suite.

The oracles here deliberately use different algorithms from the package
(union-find instead of frontier BFS, pairwise deletion instead of lowpoint,
subset enumeration instead of matching) so the two sides of every check
share no code path.
"""

from itertools import combinations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def pairs_on(n):
    """All vertex pairs in slot order (colexicographic)."""
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


def uf_connected(n, edges):
    """Union-find connectivity over an explicit edge list."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        parent[find(i)] = find(j)
    return len({find(v) for v in range(1, n + 1)}) == 1


def bits_edges(n, bits):
    """Edge list of a bitmask graph, in slot order."""
    return [pair for s, pair in enumerate(pairs_on(n)) if bits >> s & 1]


def uf_connected_bits(n, bits):
    return uf_connected(n, bits_edges(n, bits))


def brute_width(elements, lt):
    """Maximum antichain size by enumerating all subsets (tiny posets only)."""
    n = len(elements)
    assert n <= 20
    best = 0
    for mask in range(1 << n):
        chosen = [elements[i] for i in range(n) if mask >> i & 1]
        if all(
            not lt(a, b) and not lt(b, a)
            for a, b in combinations(chosen, 2)
        ):
            best = max(best, len(chosen))
    return best
