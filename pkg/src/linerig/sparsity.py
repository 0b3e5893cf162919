"""(2,3)-sparsity matroid rank and the Laman / redundant / Hendrickson decision chain.

A set of edges is (2,3)-sparse when every sub-vertex-set V' with |V'| >= 2 spans at
most 2|V'| - 3 of them. Sparse sets are the independent sets of a matroid, so a
greedy pass over the canonical edge order with an exact independence test computes
the rank and a lexicographically least maximum independent witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .connectivity import is_k_connected
from .errors import DomainError
from .graphs import Edge, Graph


@dataclass(frozen=True)
class SparsityRankResult:
    rank: int
    witness: tuple[Edge, ...]


def sparsity_rank(G: Graph) -> SparsityRankResult:
    """Matroid rank of the edge set, via the (2,3)-pebble game.

    Every vertex starts with 2 pebbles. An edge is independent iff 4 pebbles can
    be gathered onto its endpoints by pulling free pebbles along directed accepted
    edges (reversing the path); accepting the edge spends one pebble of its tail.
    Acceptance is order-insensitive per edge, so the witness is exactly the greedy
    maximum independent subset in canonical edge order.
    """
    if G.n < 2:
        raise DomainError("sparsity rank needs at least 2 vertices")
    pebbles = [2] * G.n
    out: list[set[int]] = [set() for _ in range(G.n)]
    accepted: list[Edge] = []
    for u, v in G.edges:
        if _gather(pebbles, out, u, v):
            pebbles[u] -= 1
            out[u].add(v)
            accepted.append((u, v))
    return SparsityRankResult(len(accepted), tuple(accepted))


def _gather(pebbles: list[int], out: list[set[int]], u: int, v: int) -> bool:
    # 4 pebbles on {u, v} certify that the edge is independent (2k - l + 1 for k=2, l=3).
    while pebbles[u] + pebbles[v] < 4:
        if not (_pull_pebble(pebbles, out, u, (u, v)) or _pull_pebble(pebbles, out, v, (u, v))):
            return False
    return True


def _pull_pebble(pebbles: list[int], out: list[set[int]], root: int, blocked: tuple[int, int]) -> bool:
    """DFS from root along directed edges for a free pebble outside `blocked`.

    On success the path is reversed and the pebble moves to root.
    """
    parent: dict[int, Optional[int]] = {root: None}
    stack = [root]
    found = -1
    while stack and found < 0:
        x = stack.pop()
        for y in sorted(out[x]):
            if y in parent:
                continue
            parent[y] = x
            if y not in blocked and pebbles[y] > 0:
                found = y
                break
            stack.append(y)
    if found < 0:
        return False
    pebbles[found] -= 1
    node = found
    while parent[node] is not None:
        prev = parent[node]
        out[prev].remove(node)
        out[node].add(prev)
        node = prev
    pebbles[root] += 1
    return True


def is_laman(G: Graph) -> bool:
    """m = 2n - 3 and the whole edge set is independent."""
    if G.n < 2:
        raise DomainError("is_laman needs at least 2 vertices")
    return G.m == 2 * G.n - 3 and sparsity_rank(G).rank == G.m


def spanning_laman_subgraph(G: Graph) -> Optional[Graph]:
    """A spanning subgraph with 2n - 3 independent edges, when the rank allows one."""
    if G.n < 2:
        raise DomainError("spanning_laman_subgraph needs at least 2 vertices")
    result = sparsity_rank(G)
    if result.rank != 2 * G.n - 3:
        return None
    return Graph(G.n, result.witness)


def is_redundant(G: Graph) -> bool:
    """Every single-edge deletion still leaves a spanning Laman subgraph."""
    if G.n < 2:
        raise DomainError("is_redundant needs at least 2 vertices")
    target = 2 * G.n - 3
    return all(sparsity_rank(G.without_edge(*e)).rank == target for e in G.edges)


def is_hendrickson(G: Graph) -> bool:
    """Redundant and 3-vertex-connected."""
    if G.n < 4:
        raise DomainError("is_hendrickson needs at least 4 vertices")
    return is_redundant(G) and is_k_connected(G, 3)
