import itertools

import numpy as np
import pytest

from svqaoa.dense import plus_state, to_density, expectation_diagonal
from svqaoa.errors import GenerationError, InvalidArgumentError
from svqaoa.graphs import (
    Graph,
    build_instance,
    complete_graph,
    cut_value,
    cycle_graph,
    is_permutation_symmetry,
    path_graph,
    random_regular,
    small_graph_catalog,
)


def canonical_form(g: Graph):
    """Brute-force canonical edge set: lexicographic minimum over all relabelings."""
    best = None
    for perm in itertools.permutations(range(g.n_nodes)):
        e = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in g.edges))
        if best is None or e < best:
            best = e
    return best


def connected(g: Graph) -> bool:
    adj = {v: set() for v in range(g.n_nodes)}
    for i, j in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == g.n_nodes


def test_cut_value_examples():
    tri = complete_graph(3)
    assert cut_value(tri, [0, 0, 0]) == 0
    assert cut_value(tri, [0, 1, 1]) == 2
    assert cut_value(cycle_graph(4), [0, 1, 0, 1]) == 4
    with pytest.raises(InvalidArgumentError):
        cut_value(tri, [0, 1])


def test_graph_validation():
    assert Graph.from_edges(3, [(2, 0), (0, 2), (1, 0)]).edges == ((0, 1), (0, 2))
    with pytest.raises(InvalidArgumentError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(InvalidArgumentError):
        Graph.from_edges(2, [(0, 2)])
    g = random_regular(6, 3, 4)
    assert Graph.from_json(g.to_json()) == g


def test_build_instance_examples():
    edge = build_instance(path_graph(2))
    assert list(edge.cost_diagonal) == [0, 1, 1, 0]
    assert build_instance(complete_graph(3)).c_max == 2
    assert build_instance(cycle_graph(4)).c_max == 4
    with pytest.raises(ValueError):
        edge.cost_diagonal[0] = 3


@pytest.mark.parametrize("g", [path_graph(5), complete_graph(4), random_regular(8, 3, 2)])
def test_diagonal_matches_cut_value_and_bitflip(g):
    inst = build_instance(g)
    n = g.n_nodes
    for x in range(1 << n):
        bits = [(x >> i) & 1 for i in range(n)]
        assert inst.cost_diagonal[x] == cut_value(g, bits)
        assert inst.cost_diagonal[x] == inst.cost_diagonal[x ^ ((1 << n) - 1)]


def test_plus_state_expectation_is_half_edges():
    for g in [path_graph(4), complete_graph(4), random_regular(6, 3, 0)]:
        inst = build_instance(g)
        e = expectation_diagonal(to_density(plus_state(g.n_nodes)), inst.cost_diagonal)
        assert e == pytest.approx(len(g.edges) / 2, abs=1e-12)


def test_random_regular():
    k4 = random_regular(4, 3, 0)
    assert k4 == complete_graph(4)
    for seed in range(5):
        g = random_regular(10, 3, seed)
        assert np.all(g.degrees() == 3)
        assert len(g.edges) == 15
    assert random_regular(12, 3, 7) == random_regular(12, 3, 7)
    assert random_regular(12, 3, 7) != random_regular(12, 3, 8)
    with pytest.raises(InvalidArgumentError):
        random_regular(5, 3, 0)
    with pytest.raises(InvalidArgumentError):
        random_regular(4, 4, 0)


def test_random_regular_budget(monkeypatch):
    import svqaoa.graphs as graphs

    monkeypatch.setattr(graphs, "REJECTION_BUDGET", 0)
    with pytest.raises(GenerationError):
        graphs.random_regular(8, 3, 0)


@pytest.mark.parametrize("n,count", [(3, 2), (4, 6)])
def test_catalog_is_all_connected_graphs(n, count):
    cat = small_graph_catalog(n)
    assert len(cat) == count
    assert all(connected(g) for g in cat)
    forms = {canonical_form(g) for g in cat}
    assert len(forms) == count
    # oracle: every connected graph on n nodes up to isomorphism
    pairs = list(itertools.combinations(range(n), 2))
    every = set()
    for r in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, r):
            g = Graph.from_edges(n, es)
            if connected(g):
                every.add(canonical_form(g))
    assert forms == every
    names = [name for name, _ in small_graph_catalog(n, names=True)]
    assert len(set(names)) == count


def test_catalog_range():
    with pytest.raises(InvalidArgumentError):
        small_graph_catalog(5)


def test_permutation_symmetry_examples():
    tri = complete_graph(3)
    assert is_permutation_symmetry(tri, [1, 0, 2])
    p3 = path_graph(3)
    assert is_permutation_symmetry(p3, [2, 1, 0])
    assert not is_permutation_symmetry(p3, [1, 0, 2])
    with pytest.raises(InvalidArgumentError):
        is_permutation_symmetry(p3, [0, 0, 1])


def test_cut_invariant_under_automorphisms():
    g = cycle_graph(5)
    perm = [1, 2, 3, 4, 0]
    assert is_permutation_symmetry(g, perm)
    for x in range(32):
        bits = [(x >> i) & 1 for i in range(5)]
        moved = [0] * 5
        for i in range(5):
            moved[perm[i]] = bits[i]
        assert cut_value(g, bits) == cut_value(g, moved)
