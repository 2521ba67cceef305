"""Operator form of the graph sum: f = log(exp(hbar V) exp(P~)).

Series in (hbar, x, y) are stored as dictionaries keyed by (k, a, b) for
the monomial hbar^k x^a y^b. Truncation is by the weight 2k + a + b and by
a maximal hbar-exponent; both are preserved by the operations used here
(derivatives lower the weight by one, products add weights, hbar*V keeps
it), so no truncation heuristics are needed.

The logarithm is computed through the heat flow
d/dt f = hbar (V f + 1/2 a f_x^2 + b f_x f_y + 1/2 c f_y^2), f(0) = F,
whose Taylor coefficients in t terminate at a fixed weight.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb, factorial

from .errors import TruncationOverflow
from .feynman import (
    GENUS1_CORRECTED, Gauge, PropagatorSet, graph_sum_B, propagators, vertex_weight,
)
from .series import mpq


@dataclass
class MultiSeries:
    """Truncated series in hbar, x, y; coefficients live in any ring."""

    weight: int
    kmax: int
    terms: dict = field(default_factory=dict)

    def admits(self, k: int, a: int, b: int) -> bool:
        return 2 * k + a + b <= self.weight and k <= self.kmax

    def like(self) -> "MultiSeries":
        return MultiSeries(self.weight, self.kmax)

    def add_term(self, key, value) -> None:
        if not self.admits(*key):
            return
        if key in self.terms:
            self.terms[key] = self.terms[key] + value
        else:
            self.terms[key] = value

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        out = MultiSeries(self.weight, self.kmax, dict(self.terms))
        for key, v in other.terms.items():
            out.add_term(key, v)
        return out

    def scale(self, c) -> "MultiSeries":
        return MultiSeries(self.weight, self.kmax, {k: v * c for k, v in self.terms.items()})

    def dx(self) -> "MultiSeries":
        return MultiSeries(self.weight, self.kmax,
                           {(k, a - 1, b): v * a for (k, a, b), v in self.terms.items() if a})

    def dy(self) -> "MultiSeries":
        return MultiSeries(self.weight, self.kmax,
                           {(k, a, b - 1): v * b for (k, a, b), v in self.terms.items() if b})

    def mul(self, other: "MultiSeries", hbar_shift: int = 0) -> "MultiSeries":
        """Product times hbar^hbar_shift, truncated."""
        out = self.like()
        acc: dict = {}
        for (k1, a1, b1), u in self.terms.items():
            w1 = 2 * k1 + a1 + b1
            for (k2, a2, b2), v in other.terms.items():
                k = k1 + k2 + hbar_shift
                if k > self.kmax or w1 + 2 * k2 + a2 + b2 + 2 * hbar_shift > self.weight:
                    continue
                key = (k, a1 + a2, b1 + b2)
                acc[key] = acc[key] + u * v if key in acc else u * v
        out.terms = acc
        return out

    def coefficient(self, k: int, a: int, b: int, zero=0):
        if not self.admits(k, a, b):
            raise TruncationOverflow(
                f"coefficient hbar^{k} x^{a} y^{b} lies beyond weight {self.weight} / hbar^{self.kmax}"
            )
        return self.terms.get((k, a, b), zero)

    def is_zero(self) -> bool:
        return all(_is_zero(v) for v in self.terms.values())


def _is_zero(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return not v


# -- generating functions -------------------------------------------------

def vertex_generating_function(g_max: int, n_max: int, table, one) -> MultiSeries:
    """P^B = sum hbar^{g-1} x^m y^n / (m! n!) P_{g,m,n} up to weight 2(g_max-1)+n_max."""
    W = 2 * (g_max - 1) + n_max
    out = MultiSeries(W, g_max - 1)
    for g in range(0, g_max + 1):
        for total in range(0, W - 2 * (g - 1) + 1):
            if 2 * g - 2 + total <= 0:
                continue
            for m in range(total + 1):
                n = total - m
                w = vertex_weight(g, m, n, table)
                if _is_zero(w):
                    continue
                out.add_term((g - 1, m, n), one * w * mpq(1, factorial(m) * factorial(n)))
    return out


build_PB = vertex_generating_function


def shift_y(F: MultiSeries, e) -> MultiSeries:
    """F(hbar, x, y - e x)."""
    out = F.like()
    for (k, a, b), v in F.terms.items():
        epow = None
        for j in range(b + 1):
            epow = 1 if j == 0 else epow * e
            c = comb(b, j) * (-1) ** j
            out.add_term((k, a + j, b - j), v * epow * c)
    return out


def apply_V(F: MultiSeries, a, b, c) -> MultiSeries:
    """hbar (1/2 a d_x^2 + b d_x d_y + 1/2 c d_y^2) F."""
    out = F.like()
    half = mpq(1, 2)
    for (k, i, j), v in F.terms.items():
        if i >= 2:
            out.add_term((k + 1, i - 2, j), v * a * (half * i * (i - 1)))
        if i >= 1 and j >= 1:
            out.add_term((k + 1, i - 1, j - 1), v * b * (i * j))
        if j >= 2:
            out.add_term((k + 1, i, j - 2), v * c * (half * j * (j - 1)))
    return out


def heat_flow_log(F: MultiSeries, a, b, c) -> MultiSeries:
    """log(exp(hbar V) exp(F)) with V = 1/2 a dx^2 + b dx dy + 1/2 c dy^2."""
    fs = [F]
    dxs = [F.dx()]
    dys = [F.dy()]
    half = mpq(1, 2)
    j = 0
    while True:
        nxt = apply_V(fs[j], a, b, c)
        for i in range(j + 1):
            l = j - i
            nxt = nxt + dxs[i].mul(dxs[l], 1).scale(a * half)
            nxt = nxt + dxs[i].mul(dys[l], 1).scale(b)
            nxt = nxt + dys[i].mul(dys[l], 1).scale(c * half)
        nxt = nxt.scale(mpq(1, j + 1))
        nxt.terms = {k: v for k, v in nxt.terms.items() if not _is_zero(v)}
        if not nxt.terms:
            break
        fs.append(nxt)
        dxs.append(nxt.dx())
        dys.append(nxt.dy())
        j += 1
        if j > 4 * (F.weight + F.kmax + 4):
            raise RuntimeError("heat flow did not terminate")
    total = fs[0]
    for f in fs[1:]:
        total = total + f
    return total


def apply_VB_exp(F: MultiSeries, props: PropagatorSet) -> MultiSeries:
    """f = log(exp(hbar V~) exp(F(hbar, x, y - E_psi x))).

    After the y-shift the leg weight E_psi has been absorbed, so the
    operator uses the modified propagators.
    """
    shifted = shift_y(F, props.E_psi)
    mod = props.modified()
    return heat_flow_log(shifted, mod.E_phiphi, mod.E_phipsi, mod.E_psipsi)


# -- literal operator route (used to cross-check the heat flow) ------------

def _exp(F: MultiSeries, one) -> MultiSeries:
    out = F.like()
    out.add_term((0, 0, 0), one)
    power = out
    k = 1
    while True:
        power = power.mul(F).scale(mpq(1, k))
        power.terms = {key: v for key, v in power.terms.items() if not _is_zero(v)}
        if not power.terms:
            return out
        out = out + power
        k += 1


def _log1p(G: MultiSeries) -> MultiSeries:
    """log(1 + G) for G without weight-zero part."""
    out = G.like()
    power = None
    k = 1
    while True:
        power = G if power is None else power.mul(G)
        power.terms = {key: v for key, v in power.terms.items() if not _is_zero(v)}
        if not power.terms:
            return out
        out = out + power.scale(mpq((-1) ** (k + 1), k))
        k += 1


def literal_log(F: MultiSeries, a, b, c, one) -> MultiSeries:
    """log(exp(hbar V) exp(F)) by expanding both exponentials directly.

    The exponential of F carries unbounded negative hbar powers, so the
    truncation here is by weight only; this is practical for small weights
    and scalar coefficients.
    """
    E = _exp(MultiSeries(F.weight, 10 ** 6, dict(F.terms)), one)
    out = E
    term = E
    j = 1
    while True:
        term = apply_V(term, a, b, c).scale(mpq(1, j))
        term.terms = {k: v for k, v in term.terms.items() if not _is_zero(v)}
        if not term.terms:
            break
        out = out + term
        j += 1
    G = out
    G.terms = dict(G.terms)
    G.terms.pop((0, 0, 0), None)
    const = out.terms.get((0, 0, 0))
    if const is not None and not _is_zero(const - one):
        raise ValueError("unexpected constant term in exp")
    L = _log1p(G)
    res = MultiSeries(F.weight, F.kmax)
    for key, v in L.terms.items():
        res.add_term(key, v)
    return res


# -- comparison with the graph sum ----------------------------------------

CONVENTIONS = {
    "factorial": lambda m, n: factorial(m) * factorial(n),
    "plain": lambda m, n: 1,
}


def extract(f: MultiSeries, g: int, m: int, n: int, convention: str, zero):
    return f.coefficient(g - 1, m, n, zero) * CONVENTIONS[convention](m, n)


def calibrate_convention(f: MultiSeries, gauge: Gauge, md, table) -> str:
    """Pick the symmetrization factor that matches the graph sum at (0,3,0) and (1,1,0)."""
    zero = md.one * 0
    matches = []
    for name in CONVENTIONS:
        ok = all(
            extract(f, g, m, n, name, zero) == graph_sum_B(g, m, n, gauge, md, table)
            for g, m, n in ((0, 3, 0), (1, 1, 0))
        )
        if ok:
            matches.append(name)
    if len(matches) != 1:
        raise ValueError(f"convention calibration is ambiguous or failed: {matches}")
    return matches[0]


@dataclass
class OracleReport:
    convention: str
    checked: list
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_oracle(g_max: int, legs_max: int, gauge: Gauge, md, table) -> OracleReport:
    """Compare f^B_{g,m,n} from the operator form with the graph sum."""
    PB = vertex_generating_function(g_max, legs_max, table, md.one)
    props = propagators(gauge, md)
    f = apply_VB_exp(PB, props)
    convention = calibrate_convention(f, gauge, md, table)
    zero = md.one * 0
    checked, bad = [], []
    for g in range(0, g_max + 1):
        for total in range(0, legs_max + 1):
            if 2 * g - 2 + total <= 0:
                continue
            for m in range(total + 1):
                n = total - m
                lhs = extract(f, g, m, n, convention, zero)
                rhs = graph_sum_B(g, m, n, gauge, md, table)
                checked.append((g, m, n))
                if lhs != rhs:
                    diff = lhs - rhs
                    bad.append(((g, m, n), diff.valuation() if hasattr(diff, "valuation") else None))
    return OracleReport(convention, checked, bad)


__all__ = [
    "MultiSeries", "vertex_generating_function", "build_PB", "shift_y", "apply_V",
    "heat_flow_log", "apply_VB_exp", "literal_log", "calibrate_convention", "compare_oracle",
    "OracleReport", "GENUS1_CORRECTED",
]
