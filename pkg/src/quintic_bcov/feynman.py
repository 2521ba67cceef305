"""Feynman graph sums over stable graphs with gauge-dependent propagators.

Every graph sum is first reduced to a table of *terms*: a rational
coefficient times a monomial in the three edge propagators, the leg
propagator E_psi and the vertex series P_{g,m}. The table depends only on
(g, m, n) and the rule, so it is cached and then evaluated in any
coefficient ring (q-series or the symbolic generator ring).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .errors import MissingVertexData
from .graphs import StableGraph, enumerate_colored
from .series import ONE, ZERO, falling, mpq, rat
from .xpoly import XPoly

CHI = -200
GENUS1_CORRECTED = mpq(CHI, 24) - 1  # chi/24 - 1 = -28/3

PHI, PSI = 0, 1


@dataclass(frozen=True)
class Gauge:
    c1a: XPoly
    c1b: XPoly
    c2: XPoly
    c3: XPoly

    def __post_init__(self):
        bounds = {"c1a": 1, "c1b": 1, "c2": 2, "c3": 3}
        for name, bound in bounds.items():
            p = getattr(self, name)
            if not isinstance(p, XPoly):
                object.__setattr__(self, name, p := XPoly(p))
            if p.degree > bound:
                raise ValueError(f"gauge component {name} has degree {p.degree} > {bound}")

    @classmethod
    def zero(cls) -> "Gauge":
        return cls(XPoly(), XPoly(), XPoly(), XPoly())

    @classmethod
    def original(cls, c1a=()) -> "Gauge":
        """The propagators (T^phiphi, T^phi, T) used in the B-model literature."""
        return cls(XPoly(c1a), XPoly([mpq(3, 5)]), XPoly([mpq(-2, 25)]), XPoly([mpq(-4, 125)]))

    @classmethod
    def parse(cls, text: str) -> "Gauge":
        """Parse ``c1a=..;c1b=..;c2=..;c3=..`` with comma-separated X-coefficients."""
        parts = {"c1a": (), "c1b": (), "c2": (), "c3": ()}
        for item in filter(None, (s.strip() for s in text.split(";"))):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in parts:
                raise ValueError(f"unknown gauge component {key!r}")
            parts[key] = [rat(v) for v in val.split(",") if v.strip()]
        return cls(**{k: XPoly(v) for k, v in parts.items()})

    def as_dict(self) -> dict[str, list[str]]:
        return {k: getattr(self, k).as_strings() for k in ("c1a", "c1b", "c2", "c3")}

    def __str__(self) -> str:
        return ";".join(f"{k}={','.join(v)}" for k, v in self.as_dict().items())


@dataclass(frozen=True)
class PropagatorSet:
    E_psi: object
    E_phiphi: object
    E_phipsi: object
    E_psipsi: object

    def modified(self) -> "PropagatorSet":
        """Propagators after absorbing E_psi into the vertices (E_psi -> 0)."""
        e, ff, fp, pp = self.E_psi, self.E_phiphi, self.E_phipsi, self.E_psipsi
        return PropagatorSet(
            E_psi=e * 0,
            E_phiphi=ff,
            E_phipsi=e * ff + fp,
            E_psipsi=e * e * ff + e * fp * 2 + pp,
        )


def propagators(gauge: Gauge, ctx) -> PropagatorSet:
    X, one = ctx.X, ctx.one
    c1a, c1b, c2, c3 = (p.evaluate(X, one) for p in (gauge.c1a, gauge.c1b, gauge.c2, gauge.c3))
    A, B, B2, B3 = ctx.A, ctx.B, ctx.B2, ctx.B3
    return PropagatorSet(
        E_psi=B + c1a,
        E_phiphi=A + B * 2 + c1b,
        E_phipsi=-B2 - c1b * B + c2,
        E_psipsi=-B3 + (B - X) * B2 - B * X * mpq(2, 5) + c1b * B * B - c2 * B * 2 + c3,
    )


def vertex_scalar(g: int, m: int, n: int) -> tuple[object, tuple[int, int] | None]:
    """Split P_{g,m,n} into (rational factor, (g, m) or None for a pure constant)."""
    if 2 * g - 2 + m > 0:
        return falling(2 * g + m + n - 3, n), (g, m)
    if (g, m) == (1, 0) and n >= 1:
        return factorial(n - 1) * GENUS1_CORRECTED, None
    return ZERO, None


def vertex_weight(g: int, m: int, n: int, table):
    """P_{g,m,n}: falling factorial times P_{g,m}, or the genus-one constant."""
    c, key = vertex_scalar(g, m, n)
    if key is None or not c:
        return c
    return table.get(*key) * c


@lru_cache(maxsize=None)
def _vertex_options(g: int, m: int, n: int, rule: str, exclude_genus: int | None):
    """[(rational factor, psi power, vertex key or None)] for one vertex."""
    if rule == "B":
        raw = [(ONE, 0, m, n)]
    else:
        raw = [(mpq((-1) ** j * comb(m, j)), j, m - j, n + j) for j in range(m + 1)]
    out = []
    for c, j, vm, vn in raw:
        sc, key = vertex_scalar(g, vm, vn)
        if not sc:
            continue
        if key is not None and key[0] == exclude_genus:
            continue
        out.append((c * sc, j, key))
    return tuple(out)


def _graph_contributions(graph: StableGraph, rule: str, exclude_genus: int | None) -> dict:
    """Sum over phi/psi placements at all half-edges of one graph.

    Returns {(n_ff, n_fp, n_pp, psi_power, vertex keys): coefficient}.
    Vertices are folded in as soon as all their half-edges are placed,
    which merges states and discards zero vertex weights early.
    """
    nv = graph.n_vertices
    genera = graph.genera
    valence = [graph.valence(v) for v in range(nv)]
    edges = graph.edges
    remaining = [0] * nv
    for u, v in edges:
        remaining[u] += 1
        remaining[v] += 1
    # state: (phis, ff, fp, pp, lp, keys) -> coefficient
    states: dict = {((0,) * nv, 0, 0, 0, 0, ()): ONE}
    for v, cs in enumerate(graph.vertex_legs):
        for c in cs:
            if c != PHI:
                continue
            nxt: dict = defaultdict(lambda: ZERO)
            for (phis, ff, fp, pp, lp, keys), coeff in states.items():
                p = list(phis)
                p[v] += 1
                nxt[(tuple(p), ff, fp, pp, lp, keys)] += coeff
                if rule == "B":
                    nxt[(phis, ff, fp, pp, lp + 1, keys)] -= coeff
            states = nxt
    done = [False] * nv

    def fold(states, v):
        nxt: dict = defaultdict(lambda: ZERO)
        for (phis, ff, fp, pp, lp, keys), coeff in states.items():
            mv = phis[v]
            opts = _vertex_options(genera[v], mv, valence[v] - mv, rule, exclude_genus)
            if not opts:
                continue
            p = list(phis)
            p[v] = 0
            p = tuple(p)
            for oc, oj, key in opts:
                nk = keys if key is None else tuple(sorted(keys + (key,)))
                nxt[(p, ff, fp, pp, lp + oj, nk)] += coeff * oc
        return {k: c for k, c in nxt.items() if c}

    for v in range(nv):
        if remaining[v] == 0:
            states = fold(states, v)
            done[v] = True
    for u, v in edges:
        nxt: dict = defaultdict(lambda: ZERO)
        for (phis, ff, fp, pp, lp, keys), coeff in states.items():
            p = list(phis)
            p[u] += 1
            p[v] += 1
            nxt[(tuple(p), ff + 1, fp, pp, lp, keys)] += coeff
            if u == v:
                p = list(phis)
                p[u] += 1
                nxt[(tuple(p), ff, fp + 1, pp, lp, keys)] += 2 * coeff
            else:
                for w in (u, v):
                    p = list(phis)
                    p[w] += 1
                    nxt[(tuple(p), ff, fp + 1, pp, lp, keys)] += coeff
            nxt[(phis, ff, fp, pp + 1, lp, keys)] += coeff
        states = nxt
        for w in {u, v}:
            remaining[w] -= 2 if u == v else 1
            if remaining[w] == 0 and not done[w]:
                states = fold(states, w)
                done[w] = True
        if not states:
            return {}
    out: dict = defaultdict(lambda: ZERO)
    for (_, ff, fp, pp, lp, keys), coeff in states.items():
        out[(ff, fp, pp, lp, keys)] += coeff
    return out


@lru_cache(maxsize=None)
def graph_terms(g: int, m: int, n: int, rule: str = "B", exclude_top: bool = False):
    """Term table for f_{g,m,n} under ``rule`` ("B" or "modified").

    Keys are (n_ff, n_fp, n_pp, psi_power, vertex keys) where psi_power is
    the power of E_psi (signs are folded into the coefficient) and vertex
    keys is the sorted tuple of (g_v, m_v) for non-constant vertex weights.
    With ``exclude_top`` every term containing a genus-g vertex series is
    dropped, leaving the part determined by lower genus.
    """
    if rule not in ("B", "modified"):
        raise ValueError(f"unknown rule {rule!r}")
    colors = (PHI,) * m + (PSI,) * n
    weight = mpq(factorial(m) * factorial(n))
    terms: dict = defaultdict(lambda: ZERO)
    for graph in enumerate_colored(g, colors):
        gw = weight / graph.aut_order
        for key, coeff in _graph_contributions(graph, rule, g if exclude_top else None).items():
            terms[key] += coeff * gw
    return {k: v for k, v in terms.items() if v}


def evaluate_terms(terms: dict, props: PropagatorSet, table, one):
    """Evaluate a term table in the ring of ``one``."""
    powers: dict = {}

    def pw(name, base, k):
        key = (name, k)
        if key not in powers:
            powers[key] = one if k == 0 else pw(name, base, k - 1) * base
        return powers[key]

    total = one * 0
    for (ff, fp, pp, lp, keys), coeff in sorted(terms.items()):
        val = one * coeff
        if ff:
            val = val * pw("ff", props.E_phiphi, ff)
        if fp:
            val = val * pw("fp", props.E_phipsi, fp)
        if pp:
            val = val * pw("pp", props.E_psipsi, pp)
        if lp:
            val = val * pw("psi", props.E_psi, lp)
        for key in keys:
            val = val * table.get(*key)
        total = total + val
    return total


def graph_sum_B(g: int, m: int, n: int, gauge: Gauge, ctx, table, exclude_top: bool = False):
    """f^{B,G}_{g,m,n}: legs phi - E_psi psi (first m) and psi (last n)."""
    _check_stable(g, m + n)
    props = propagators(gauge, ctx)
    return evaluate_terms(graph_terms(g, m, n, "B", exclude_top), props, table, ctx.one)


def graph_sum_modified(g: int, m: int, n: int, gauge: Gauge, ctx, table, exclude_top: bool = False):
    """Same sum with modified propagators and y-shifted vertex weights."""
    _check_stable(g, m + n)
    props = propagators(gauge, ctx)
    mod = props.modified()
    mixed = PropagatorSet(props.E_psi, mod.E_phiphi, mod.E_phipsi, mod.E_psipsi)
    return evaluate_terms(graph_terms(g, m, n, "modified", exclude_top), mixed, table, ctx.one)


def graph_sum_A(g: int, m: int, n: int, gauge: Gauge, ctx, table):
    """f^{A,G}_{g,m,n}, obtained from the B-side through the ln(1-y) shift."""
    value = graph_sum_B(g, m, n, gauge, ctx, table)
    if g == 1 and m == 0:
        value = value + factorial(n - 1)
    return value


def _check_stable(g: int, legs: int) -> None:
    if 2 * g - 2 + legs <= 0:
        from .errors import Unstable

        raise Unstable(f"(g, m+n) = ({g}, {legs}) is not stable")


__all__ = [
    "CHI", "Gauge", "PropagatorSet", "propagators", "vertex_weight", "graph_terms",
    "evaluate_terms", "graph_sum_B", "graph_sum_modified", "graph_sum_A", "MissingVertexData",
]
