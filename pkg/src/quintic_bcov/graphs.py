"""Stable graphs: enumeration up to isomorphism and automorphism orders.

A stable graph is stored by its vertex genera, a symmetric multiplicity
matrix (self-loops on the diagonal) and, per vertex, the sorted tuple of
leg labels attached to it. Legs carry *colors*; automorphisms must preserve
colors. With all colors distinct (the default) legs are fixed pointwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterator, Sequence

from .errors import Unstable

Raw = tuple  # (genera, matrix, legs)


@dataclass(frozen=True)
class StableGraph:
    genera: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    vertex_legs: tuple[tuple[int, ...], ...]
    aut_order: int

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(len(self.genera)):
            for v in range(u, len(self.genera)):
                out.extend([(u, v)] * self.matrix[u][v])
        return out

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def legs(self) -> dict[int, int]:
        """Leg color -> vertex (meaningful when colors are distinct labels)."""
        return {c: v for v, cs in enumerate(self.vertex_legs) for c in cs}

    def valence(self, v: int) -> int:
        row = self.matrix[v]
        return sum(row) + row[v] + len(self.vertex_legs[v])

    @property
    def genus(self) -> int:
        return sum(self.genera) + self.n_edges - self.n_vertices + 1

    def encode(self) -> str:
        """One-line text form: genera; edge list; leg map; aut order."""
        gen = ",".join(map(str, self.genera))
        edges = ",".join(f"{u}-{v}" for u, v in self.edges)
        legs = ",".join(f"{c}:{v}" for v, cs in enumerate(self.vertex_legs) for c in cs)
        return f"{gen};{edges};{legs};{self.aut_order}"


def _refine(genera, M, legs) -> list[int]:
    n = len(genera)
    colors = [(genera[v], legs[v], M[v][v], sum(M[v])) for v in range(n)]
    ranks = _rank(colors)
    while True:
        sig = [(ranks[v], tuple(sorted((ranks[w], M[v][w]) for w in range(n) if w != v and M[v][w])))
               for v in range(n)]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            return new
        ranks = new


def _rank(items) -> list[int]:
    order = {c: i for i, c in enumerate(sorted(set(items)))}
    return [order[c] for c in items]


def canonical_form(genera, M, legs) -> tuple[Raw, int]:
    """Canonical representative and the number of vertex automorphisms."""
    n = len(genera)
    ranks = _refine(genera, M, legs)
    cells = [[v for v in range(n) if ranks[v] == r] for r in sorted(set(ranks))]
    best, count = None, 0
    for choice in product(*(permutations(c) for c in cells)):
        p = [v for cell in choice for v in cell]
        enc = (tuple(genera[v] for v in p), tuple(legs[v] for v in p),
               tuple(tuple(M[v][w] for w in p) for v in p))
        if best is None or enc < best:
            best, count = enc, 1
        elif enc == best:
            count += 1
    genera_c, legs_c, M_c = best
    return (genera_c, M_c, legs_c), count


def aut_order_of(genera, M, legs) -> int:
    _, vaut = canonical_form(genera, M, legs)
    return vaut * _edge_leg_symmetry(M, legs)


def _edge_leg_symmetry(M, legs) -> int:
    out = 1
    n = len(M)
    for u in range(n):
        out *= factorial(M[u][u]) * 2 ** M[u][u]
        for v in range(u + 1, n):
            out *= factorial(M[u][v])
        for c in set(legs[u]):
            out *= factorial(legs[u].count(c))
    return out


def aut_order(graph: StableGraph) -> int:
    return graph.aut_order


def _make(raw: Raw, vaut: int) -> StableGraph:
    genera, M, legs = raw
    return StableGraph(genera, M, legs, vaut * _edge_leg_symmetry(M, legs))


def _stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def _splits(raw: Raw) -> Iterator[tuple]:
    """All graphs with one more edge whose contraction gives ``raw``."""
    genera, M, legs = raw
    n = len(genera)
    for v in range(n):
        gv = genera[v]
        # non-separating: new self-loop, genus drops by one
        if gv >= 1:
            G = list(genera)
            G[v] -= 1
            MM = [list(r) for r in M]
            MM[v][v] += 1
            yield tuple(G), tuple(map(tuple, MM)), legs
        # separating: v -> (v, new vertex n) joined by an edge
        loops = M[v][v]
        others = [w for w in range(n) if w != v and M[v][w]]
        vlegs = legs[v]
        leg_subsets = [c for k in range(len(vlegs) + 1) for c in combinations(range(len(vlegs)), k)]
        for g1 in range(gv + 1):
            g2 = gv - g1
            for a in range(loops + 1):
                for b in range(loops - a + 1):
                    c = loops - a - b
                    for split in product(*(range(M[v][w] + 1) for w in others)):
                        e1 = sum(split)
                        e2 = sum(M[v][w] for w in others) - e1
                        for sub in leg_subsets:
                            l1 = len(sub)
                            l2 = len(vlegs) - l1
                            if not _stable(g1, l1 + 2 * a + c + e1 + 1):
                                continue
                            if not _stable(g2, l2 + 2 * b + c + e2 + 1):
                                continue
                            G = list(genera) + [g2]
                            G[v] = g1
                            MM = [list(r) + [0] for r in M] + [[0] * (n + 1)]
                            MM[v][v] = a
                            MM[n][n] = b
                            MM[v][n] = MM[n][v] = c + 1
                            for w, k in zip(others, split):
                                MM[v][w] = MM[w][v] = k
                                MM[n][w] = MM[w][n] = M[v][w] - k
                            L = list(legs) + [()]
                            L[v] = tuple(sorted(vlegs[i] for i in sub))
                            L[n] = tuple(sorted(vlegs[i] for i in range(len(vlegs)) if i not in sub))
                            yield tuple(G), tuple(map(tuple, MM)), tuple(L)


@lru_cache(maxsize=None)
def enumerate_colored(g: int, colors: tuple[int, ...]) -> tuple[StableGraph, ...]:
    """Stable graphs of genus g whose legs carry the given colors."""
    if g < 0 or not _stable(g, len(colors)):
        raise Unstable(f"(g, n) = ({g}, {len(colors)}) is not stable")
    start = ((g,), ((0,),), (tuple(sorted(colors)),))
    raw, vaut = canonical_form(*start)
    found = {raw: vaut}
    level = [raw]
    while level:
        nxt = []
        for r in level:
            for cand in _splits(r):
                c, va = canonical_form(*cand)
                if c not in found:
                    found[c] = va
                    nxt.append(c)
        level = nxt
    graphs = [_make(r, va) for r, va in found.items()]
    graphs.sort(key=lambda G: (G.n_vertices, G.n_edges, (G.genera, G.vertex_legs, G.matrix)))
    return tuple(graphs)


def enumerate_graphs(g: int, n: int) -> tuple[StableGraph, ...]:
    """Isomorphism classes of genus-g stable graphs with n labeled legs 1..n."""
    return enumerate_colored(g, tuple(range(1, n + 1)))


def dump(graphs: Sequence[StableGraph]) -> str:
    return "\n".join(G.encode() for G in graphs) + "\n"
