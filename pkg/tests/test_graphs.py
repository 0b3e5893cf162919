import pytest

from linerig.errors import DomainError, GraphParseError
from linerig.graphs import Graph, catalog, generate, parse_graph, serialize_graph
from linerig.sparsity import is_hendrickson, is_laman


def test_parse_json_k4():
    G = parse_graph('{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0],[0,2],[1,3]]}')
    assert G == generate("complete", [4])


def test_parse_json_k2():
    assert parse_graph('{"n":2,"edges":[[0,1]]}') == Graph(2, ((0, 1),))


def test_parse_duplicate_edge_rejected():
    with pytest.raises(GraphParseError, match=r"edges\[1\]"):
        parse_graph('{"n":3,"edges":[[0,1],[0,1]]}')
    with pytest.raises(GraphParseError, match="duplicate"):
        parse_graph('{"n":3,"edges":[[0,1],[1,0]]}')


def test_parse_errors_name_field_or_line():
    with pytest.raises(GraphParseError, match="self-loop"):
        parse_graph('{"n":3,"edges":[[1,1]]}')
    with pytest.raises(GraphParseError, match="out of range"):
        parse_graph('{"n":2,"edges":[[0,5]]}')
    with pytest.raises(GraphParseError, match="line 3"):
        parse_graph("3 2\n0 1\n1 5\n", fmt="edge-list")
    with pytest.raises(GraphParseError, match="invalid JSON"):
        parse_graph("{not json")


def test_unordered_endpoints_normalize():
    assert parse_graph('{"n":3,"edges":[[2,0]]}').edges == ((0, 2),)


@pytest.mark.parametrize("fmt", ["json", "edge-list"])
def test_round_trip(fmt):
    for _, G in catalog(7):
        assert parse_graph(serialize_graph(G, fmt), fmt) == G


def test_graph_invariants():
    with pytest.raises(DomainError):
        Graph(3, ((0, 0),))
    with pytest.raises(DomainError):
        Graph(2, ((0, 1), (0, 1)))
    with pytest.raises(DomainError):
        Graph(2, ((0, 2),))


def test_generate_counts():
    K4 = generate("complete", [4])
    assert K4.n == 4 and K4.m == 6
    W5 = generate("wheel", [5])
    assert W5.n == 5 and W5.m == 8
    C4 = generate("cycle", [4])
    assert C4.n == 4 and C4.m == 4
    P5 = generate("path", [5])
    assert P5.m == 4


def test_generate_unknown_name():
    with pytest.raises(DomainError, match="unknown generator"):
        generate("petersen", [10])
    with pytest.raises(DomainError):
        generate("cycle", [2])


def test_generate_deterministic():
    for name, params in [("laman_random", [9]), ("hendrickson_random", [7])]:
        assert generate(name, params, seed=5) == generate(name, params, seed=5)
        assert generate(name, params, seed=5) != generate(name, params, seed=6)


def test_random_generators_hit_their_class():
    for k in range(2, 13):
        assert is_laman(generate("laman_random", [k], seed=k))
    for k in range(4, 10):
        assert is_hendrickson(generate("hendrickson_random", [k], seed=k))


def test_without_vertex_relabels():
    G = generate("wheel", [5])
    H, keep = G.without_vertex(0)
    assert H.n == 4 and keep == [1, 2, 3, 4]
    assert H.m == 4  # the rim cycle


def test_relabeled_permutation():
    G = Graph(3, ((0, 1), (1, 2)))
    assert G.relabeled([2, 1, 0]).edges == ((0, 1), (1, 2))
    assert G.relabeled([1, 2, 0]).edges == ((0, 2), (1, 2))
