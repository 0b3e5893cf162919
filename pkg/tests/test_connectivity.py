import random

import networkx as nx
import pytest
from helpers import random_graph

from linerig.connectivity import is_k_connected
from linerig.errors import DomainError
from linerig.graphs import Graph, generate


def test_examples():
    assert is_k_connected(generate("complete", [4]), 3)
    assert not is_k_connected(generate("cycle", [4]), 3)
    assert is_k_connected(generate("wheel", [5]), 3)


def test_domain():
    with pytest.raises(DomainError):
        is_k_connected(generate("complete", [3]), 3)
    with pytest.raises(DomainError):
        is_k_connected(generate("complete", [4]), 0)


def test_monotone_in_k():
    rng = random.Random(4)
    for _ in range(30):
        G = random_graph(rng, n_max=8)
        for k in range(2, G.n):
            if is_k_connected(G, k):
                assert is_k_connected(G, k - 1)


def test_disconnected_graph():
    G = Graph(4, ((0, 1), (2, 3)))
    assert not is_k_connected(G, 1)


def test_agreement_with_networkx():
    rng = random.Random(9)
    for _ in range(60):
        G = random_graph(rng, n_max=8)
        H = nx.Graph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from(G.edges)
        conn = nx.node_connectivity(H)
        for k in range(1, G.n):
            assert is_k_connected(G, k) == (conn >= k), (G, k, conn)
