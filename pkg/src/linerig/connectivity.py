"""Vertex connectivity by exhaustive removal of (k-1)-subsets."""

from __future__ import annotations

from itertools import combinations

from .errors import DomainError
from .graphs import Graph


def _connected_without(G: Graph, removed: frozenset[int]) -> bool:
    remaining = [v for v in range(G.n) if v not in removed]
    if not remaining:
        return True
    seen = {remaining[0]}
    stack = [remaining[0]]
    while stack:
        x = stack.pop()
        for y in G.neighbors(x):
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(remaining)


def is_k_connected(G: Graph, k: int) -> bool:
    """True iff G stays connected after removing any set of fewer than k vertices.

    Checks every (k-1)-subset with a reachability sweep; if some smaller removal
    disconnected G, extending it to size k-1 keeps a disconnection (at least two
    nonempty components survive because n > k), so these checks suffice.
    """
    if k < 1:
        raise DomainError("k must be positive")
    if G.n <= k:
        raise DomainError(f"k-connectivity needs n > k (n={G.n}, k={k})")
    return all(_connected_without(G, frozenset(S)) for S in combinations(range(G.n), k - 1))
