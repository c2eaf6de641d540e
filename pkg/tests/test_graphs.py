import pytest

from cyclade.graphs import (
    FAMILY_TAGS,
    GraphFamily,
    ParameterOutOfRange,
    UnsupportedFamily,
    build_ade,
    loop_counts,
)


def walks_by_enumeration(graph, length):
    """Count root-based closed walks by direct recursion over edge choices."""
    adj = graph.adjacency

    def go(v, remaining):
        if remaining == 0:
            return 1 if v == graph.root else 0
        return sum(adj[v][u] * go(u, remaining - 1)
                   for u in range(graph.vertex_count) if adj[v][u])

    return go(graph.root, length)


@pytest.mark.parametrize("tag,param", [
    ("A", 3), ("A", 5), ("D", 4), ("Dtilde", 4), ("Atilde", 4), ("E6", 6),
])
def test_loop_counts_against_enumeration(tag, param):
    g = build_ade(GraphFamily(tag, param))
    got = loop_counts(g, 4)
    assert got == [walks_by_enumeration(g, 2 * k) for k in range(5)]


def test_loop_count_examples():
    assert loop_counts(build_ade(GraphFamily("A", 2)), 4) == [1, 1, 1, 1, 1]
    assert loop_counts(build_ade(GraphFamily("Atilde", 2)), 3) == [1, 4, 16, 64]
    assert loop_counts(build_ade(GraphFamily("A", 3)), 4) == [1, 1, 2, 4, 8]


def test_a2_shape():
    g = build_ade(GraphFamily("A", 2))
    assert g.vertex_count == 2
    assert g.adjacency == ((0, 1), (1, 0))
    assert g.degree(g.root) == 1


def test_atilde2_double_edge():
    g = build_ade(GraphFamily("Atilde", 2))
    assert g.vertex_count == 2
    assert g.adjacency[0][1] == 2


def test_e8_shape():
    g = build_ade(GraphFamily("E8", 8))
    assert g.vertex_count == 8
    degrees = sorted(g.degree(v) for v in range(8))
    assert degrees == [1, 1, 1, 2, 2, 2, 2, 3]
    assert g.degree(g.root) == 1
    # root sits four steps from the branch vertex
    dist = {g.root: 0}
    frontier = [g.root]
    while frontier:
        v = frontier.pop()
        for u in range(8):
            if g.adjacency[v][u] and u not in dist:
                dist[u] = dist[v] + 1
                frontier.append(u)
    branch = next(v for v in range(8) if g.degree(v) == 3)
    assert dist[branch] == 4


def test_d3_root_is_branch():
    g = build_ade(GraphFamily("D", 3))
    assert g.vertex_count == 3
    assert g.degree(g.root) == 2


def test_dtilde4_star():
    g = build_ade(GraphFamily("Dtilde", 4))
    assert g.vertex_count == 5
    assert sorted(g.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]
    assert g.degree(g.root) == 1


def test_vertex_counts():
    assert build_ade(GraphFamily("A", 7)).vertex_count == 7
    assert build_ade(GraphFamily("D", 9)).vertex_count == 9
    assert build_ade(GraphFamily("Atilde", 10)).vertex_count == 10
    assert build_ade(GraphFamily("Dtilde", 8)).vertex_count == 9
    for tag, n in (("E6", 6), ("E7", 7), ("E8", 8)):
        assert build_ade(GraphFamily(tag, n)).vertex_count == n
        assert build_ade(GraphFamily(tag + "tilde", n)).vertex_count == n + 1


def test_bipartite_odd_powers_vanish():
    for tag, param in (("A", 4), ("D", 5), ("E7", 7), ("Dtilde", 6)):
        g = build_ade(GraphFamily(tag, param))
        n = g.vertex_count
        vec = [0] * n
        vec[g.root] = 1
        for step in range(1, 6):
            vec = [sum(g.adjacency[u][v] * vec[v] for v in range(n)) for u in range(n)]
            if step % 2:
                assert vec[g.root] == 0
        assert all(g.parity[u] != g.parity[v]
                   for u in range(n) for v in range(n) if g.adjacency[u][v])
        assert g.parity[g.root] == 0


def test_count_bounds():
    series_params = {"A": 5, "Atilde": 6, "D": 6, "Dtilde": 6}
    for tag in FAMILY_TAGS:
        param = series_params[tag] if tag in series_params else int(tag[1])
        g = build_ade(GraphFamily(tag, param))
        counts = loop_counts(g, 12)
        n = g.vertex_count
        square = [[sum(g.adjacency[u][w] * g.adjacency[w][v] for w in range(n))
                   for v in range(n)] for u in range(n)]
        col_norm = max(sum(square[u][v] for u in range(n)) for v in range(n))
        for k, c in enumerate(counts):
            assert c >= 1
            assert c <= 4 ** k
        for k in range(len(counts) - 1):
            assert counts[k + 1] <= col_norm * counts[k]


def test_parameter_errors():
    with pytest.raises(ParameterOutOfRange):
        build_ade(GraphFamily("A", 1))
    with pytest.raises(ParameterOutOfRange):
        build_ade(GraphFamily("D", 2))
    with pytest.raises(ParameterOutOfRange):
        build_ade(GraphFamily("Atilde", 3))
    with pytest.raises(ParameterOutOfRange):
        build_ade(GraphFamily("Dtilde", 3))
    with pytest.raises(UnsupportedFamily):
        GraphFamily("F4", 4)
