"""Simple undirected graphs on vertices 0..n-1: parsing, serialization, generators.

Two text formats are supported:

* JSON: ``{"n": 4, "edges": [[0, 1], [1, 2]]}``
* edge list: first line ``n m``, then m lines ``i j``

Vertex indices are 0-based everywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, GraphParseError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``edges`` is canonically sorted, each pair (i, j) with i < j."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError("vertex count must be non-negative")
        seen: set[Edge] = set()
        for e in self.edges:
            i, j = e
            if not (0 <= i < j < self.n):
                raise DomainError(f"edge {e} is not an ordered pair of distinct vertices below n={self.n}")
            if e in seen:
                raise DomainError(f"duplicate edge {e}")
            seen.add(e)
        if any(self.edges[k] > self.edges[k + 1] for k in range(len(self.edges) - 1)):
            object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from unordered, possibly repeated edge pairs (repeats collapse)."""
        canon: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        return cls(n, tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _adj(self) -> tuple[frozenset[int], ...]:
        nbr: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbr[i].add(j)
            nbr[j].add(i)
        return tuple(frozenset(s) for s in nbr)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        return e in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise DomainError("cannot add a self-loop")
        e = (u, v) if u < v else (v, u)
        if e in self._edge_set:
            raise DomainError(f"edge {e} already present")
        return Graph(self.n, tuple(sorted(self.edges + (e,))))

    def without_edge(self, u: int, v: int) -> "Graph":
        e = (u, v) if u < v else (v, u)
        if e not in self._edge_set:
            raise DomainError(f"edge {e} not present")
        return Graph(self.n, tuple(x for x in self.edges if x != e))

    def without_vertex(self, v: int) -> tuple["Graph", list[int]]:
        """Delete vertex v. Returns the compacted graph and the list of surviving old labels."""
        if not 0 <= v < self.n:
            raise DomainError(f"no vertex {v}")
        keep = [x for x in range(self.n) if x != v]
        index = {old: new for new, old in enumerate(keep)}
        edges = tuple((index[i], index[j]) for i, j in self.edges if v not in (i, j))
        return Graph(self.n - 1, edges), keep

    def relabeled(self, mapping: Sequence[int]) -> "Graph":
        """Apply the vertex relabeling ``old -> mapping[old]`` (a permutation of 0..n-1)."""
        if sorted(mapping) != list(range(self.n)):
            raise DomainError("mapping is not a permutation of the vertex set")
        return Graph.from_edges(self.n, ((mapping[i], mapping[j]) for i, j in self.edges))


def parse_graph(text: str, fmt: str = "json") -> Graph:
    """Parse graph text in the given format ("json" or "edge-list")."""
    if fmt == "json":
        return _parse_json(text)
    if fmt in ("edge-list", "edgelist"):
        return _parse_edge_list(text)
    raise GraphParseError(f"unknown graph format '{fmt}'")


def serialize_graph(G: Graph, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges]}, sort_keys=True, separators=(",", ":"))
    if fmt in ("edge-list", "edgelist"):
        lines = [f"{G.n} {G.m}"] + [f"{i} {j}" for i, j in G.edges]
        return "\n".join(lines) + "\n"
    raise GraphParseError(f"unknown graph format '{fmt}'")


def _check_edge(n: int, u: object, v: object, where: str) -> Edge:
    if not isinstance(u, int) or not isinstance(v, int) or isinstance(u, bool) or isinstance(v, bool):
        raise GraphParseError(f"{where}: endpoints must be integers, got [{u!r}, {v!r}]")
    if u == v:
        raise GraphParseError(f"{where}: self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise GraphParseError(f"{where}: endpoint out of range for n={n}")
    return (u, v) if u < v else (v, u)


def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphParseError("top-level JSON value must be an object")
    if "n" not in data:
        raise GraphParseError("missing field 'n'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphParseError("field 'n': must be a non-negative integer")
    raw = data.get("edges", [])
    if not isinstance(raw, list):
        raise GraphParseError("field 'edges': must be a list")
    edges: set[Edge] = set()
    order: list[Edge] = []
    for k, item in enumerate(raw):
        where = f"field 'edges[{k}]'"
        if not isinstance(item, list) or len(item) != 2:
            raise GraphParseError(f"{where}: must be a pair [i, j]")
        e = _check_edge(n, item[0], item[1], where)
        if e in edges:
            raise GraphParseError(f"{where}: duplicate edge {list(e)}")
        edges.add(e)
        order.append(e)
    return Graph(n, tuple(sorted(order)))


def _parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphParseError("line 1: expected header 'n m'")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphParseError("line 1: expected header 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphParseError(f"line 1: non-integer header: {exc}") from exc
    if n < 0 or m < 0:
        raise GraphParseError("line 1: n and m must be non-negative")
    if len(lines) - 1 != m:
        raise GraphParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges: set[Edge] = set()
    for k, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {k}: expected 'i j'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphParseError(f"line {k}: non-integer endpoint: {exc}") from exc
        e = _check_edge(n, u, v, f"line {k}")
        if e in edges:
            raise GraphParseError(f"line {k}: duplicate edge {list(e)}")
        edges.add(e)
    return Graph(n, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# named generators


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _complete(params: tuple[int, ...], rng: random.Random) -> Graph:
    (k,) = params
    if k < 1:
        raise DomainError("complete(k) needs k >= 1")
    return Graph(k, tuple(combinations(range(k), 2)))


def _cycle(params: tuple[int, ...], rng: random.Random) -> Graph:
    (k,) = params
    if k < 3:
        raise DomainError("cycle(k) needs k >= 3")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def _path(params: tuple[int, ...], rng: random.Random) -> Graph:
    (k,) = params
    if k < 1:
        raise DomainError("path(k) needs k >= 1")
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def _wheel(params: tuple[int, ...], rng: random.Random) -> Graph:
    # k vertices total: hub 0 plus a (k-1)-cycle on 1..k-1
    (k,) = params
    if k < 4:
        raise DomainError("wheel(k) needs k >= 4")
    rim = [(i, i % (k - 1) + 1) for i in range(1, k)]
    spokes = [(0, i) for i in range(1, k)]
    return Graph.from_edges(k, rim + spokes)


def _laman_random(params: tuple[int, ...], rng: random.Random) -> Graph:
    (k,) = params
    if k < 2:
        raise DomainError("laman_random(k) needs k >= 2")
    n = 2
    edges: set[Edge] = {(0, 1)}
    while n < k:
        z = n
        if n >= 3 and rng.random() < 0.5:
            u, v = rng.choice(sorted(edges))
            w = rng.choice([x for x in range(n) if x not in (u, v)])
            edges.remove((u, v))
            edges |= {_pair(u, z), _pair(v, z), _pair(w, z)}
        else:
            u, v = rng.sample(range(n), 2)
            edges |= {_pair(u, z), _pair(v, z)}
        n += 1
    return Graph(k, tuple(sorted(edges)))


def _hendrickson_random(params: tuple[int, ...], rng: random.Random) -> Graph:
    if len(params) == 1:
        k, extra = params[0], 1
    else:
        k, extra = params[0], params[1]
    if k < 4:
        raise DomainError("hendrickson_random(k) needs k >= 4")
    if extra < 0:
        raise DomainError("extra edge count must be non-negative")
    n = 4
    edges: set[Edge] = set(combinations(range(4), 2))

    def add_random_edge() -> None:
        non_edges = [e for e in combinations(range(n), 2) if e not in edges]
        if non_edges:
            edges.add(rng.choice(non_edges))

    while n < k:
        z = n
        u, v = rng.choice(sorted(edges))
        w = rng.choice([x for x in range(n) if x not in (u, v)])
        edges.remove((u, v))
        edges |= {_pair(u, z), _pair(v, z), _pair(w, z)}
        n += 1
        if rng.random() < 0.3:
            add_random_edge()
    for _ in range(extra):
        add_random_edge()
    return Graph(k, tuple(sorted(edges)))


_GENERATORS = {
    "complete": _complete,
    "cycle": _cycle,
    "path": _path,
    "wheel": _wheel,
    "laman_random": _laman_random,
    "hendrickson_random": _hendrickson_random,
}


def generate(name: str, params: Sequence[int], seed: int = 0) -> Graph:
    """Build a named catalog graph. Deterministic for fixed (name, params, seed)."""
    if name not in _GENERATORS:
        raise DomainError(f"unknown generator '{name}' (choose from {sorted(_GENERATORS)})")
    ptuple = tuple(int(x) for x in params)
    rng = random.Random(f"{name}:{ptuple}:{seed}")
    return _GENERATORS[name](ptuple, rng)


def catalog(n_max: int = 8) -> list[tuple[str, Graph]]:
    """Named small graphs used across the verification suites."""
    out: list[tuple[str, Graph]] = []
    for k in range(2, n_max + 1):
        out.append((f"complete({k})", generate("complete", [k])))
    for k in range(3, n_max + 1):
        out.append((f"cycle({k})", generate("cycle", [k])))
    for k in range(2, n_max + 1):
        out.append((f"path({k})", generate("path", [k])))
    for k in range(4, n_max + 1):
        out.append((f"wheel({k})", generate("wheel", [k])))
    for k in range(4, n_max + 1):
        for s in (1, 2):
            out.append((f"laman_random({k},seed={s})", generate("laman_random", [k], seed=s)))
    for k in range(5, n_max + 1):
        out.append((f"hendrickson_random({k},seed=1)", generate("hendrickson_random", [k], seed=1)))
    return out
