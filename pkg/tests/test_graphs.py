from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import factorial

import pytest

from quintic_bcov.errors import Unstable
from quintic_bcov.graphs import dump, enumerate_colored, enumerate_graphs


def _connected(n, edges):
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == n


def brute_force(g: int, n: int):
    """(mass, number of classes) from vertex-labeled multigraphs.

    The mass sum 1/|Aut| equals the sum over vertex-labeled graphs of
    1/(V! * prod over loops 2^k k! * prod over parallel edges k!); classes
    are found by minimizing over all vertex relabelings.
    """
    mass = Fraction(0)
    classes = set()
    for V in range(1, 2 * g - 2 + n + 1):
        pairs = [(u, v) for u in range(V) for v in range(u, V)]
        for E in range(V - 1, g + V):
            h1 = E - V + 1
            rest = g - h1
            for edges in combinations_with_replacement(pairs, E):
                if not _connected(V, edges):
                    continue
                deg = [0] * V
                for u, v in edges:
                    deg[u] += 1
                    deg[v] += 1
                sym = factorial(V)
                for p in set(edges):
                    k = edges.count(p)
                    sym *= factorial(k) * (2 ** k if p[0] == p[1] else 1)
                for genera in product(range(rest + 1), repeat=V):
                    if sum(genera) != rest:
                        continue
                    for legs in product(range(V), repeat=n):
                        val = [deg[v] + legs.count(v) for v in range(V)]
                        if any(2 * genera[v] - 2 + val[v] <= 0 for v in range(V)):
                            continue
                        mass += Fraction(1, sym)
                        classes.add(_canonical(V, edges, genera, legs))
    return mass, len(classes)


def _canonical(V, edges, genera, legs):
    best = None
    for p in permutations(range(V)):
        key = (
            tuple(genera[p.index(i)] for i in range(V)),
            tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges)),
            tuple(p[v] for v in legs),
        )
        if best is None or key < best:
            best = key
    return best


CASES = [(g, n) for g in range(3) for n in range(4) if 2 * g - 2 + n > 0]


@pytest.mark.parametrize("g,n", CASES)
def test_labeled_vs_canonical(g, n):
    graphs = enumerate_graphs(g, n)
    mass = sum(Fraction(1, G.aut_order) for G in graphs)
    bf_mass, bf_count = brute_force(g, n)
    assert len(graphs) == bf_count
    assert mass == bf_mass


def test_known_counts():
    assert len(enumerate_graphs(2, 0)) == 7
    assert len(enumerate_graphs(1, 1)) == 2
    assert len(enumerate_graphs(0, 3)) == 1
    assert sorted(G.aut_order for G in enumerate_graphs(2, 0)) == [1, 2, 2, 2, 8, 8, 12]


def test_theta_and_dumbbell():
    graphs = enumerate_graphs(2, 0)
    theta = [G for G in graphs if G.n_vertices == 2 and G.matrix[0][1] == 3]
    dumbbell = [G for G in graphs if G.n_vertices == 2 and G.matrix[0][0] == 1 and G.matrix[1][1] == 1]
    assert [G.aut_order for G in theta] == [12]
    assert [G.aut_order for G in dumbbell] == [8]


def test_genus_and_stability_of_every_graph():
    for g, n in CASES:
        for G in enumerate_graphs(g, n):
            assert G.genus == g
            assert sorted(G.legs) == list(range(1, n + 1))
            assert all(2 * G.genera[v] - 2 + G.valence(v) > 0 for v in range(G.n_vertices))


def test_colored_legs_reduce_to_symmetric_count():
    # identical colors: the mass is the labeled mass divided by n!
    for g, n in ((1, 2), (2, 2), (1, 3)):
        labeled = sum(Fraction(1, G.aut_order) for G in enumerate_graphs(g, n))
        same = sum(Fraction(1, G.aut_order) for G in enumerate_colored(g, (0,) * n))
        assert same == labeled / factorial(n)


def test_unstable_rejected():
    with pytest.raises(Unstable):
        enumerate_graphs(0, 2)
    with pytest.raises(Unstable):
        enumerate_graphs(1, 0)


def test_dump_is_deterministic():
    assert dump(enumerate_graphs(2, 1)) == dump(enumerate_graphs(2, 1))
    assert dump(enumerate_graphs(1, 1)).splitlines()[0].endswith(";1")
