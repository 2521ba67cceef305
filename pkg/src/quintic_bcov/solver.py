"""Genus-by-genus solution of the graph-sum recursion.

For g >= 2 the graph sum at m = n = 0 reads P_g + R_g = f_g(X), where R_g
collects every term without a genus-g vertex. Given the low-degree
invariants N_{g,0..3g-3}, the first 3g-2 coefficients of P_g are known, which
fixes f_g; then P_g = f_g - R_g to any order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from pathlib import Path

from .errors import InsufficientInitialData, NotPolynomial
from .feynman import CHI, Gauge, graph_sum_B, graph_sum_modified
from .mirror import MirrorData, genus0_potential
from .series import ONE, ZERO, QSeries, bernoulli, mpq, rat
from .xpoly import XPoly

GENUS1_LOG = mpq(-25, 12)


# -- classical input -----------------------------------------------------

def bernoulli_from_generating_function(n: int) -> mpq:
    """B_n read off t/(e^t - 1), independent of the recurrence in ``series``."""
    # (e^t - 1)/t = sum t^k/(k+1)!
    s = QSeries([mpq(1, factorial(k + 1)) for k in range(n + 1)], n)
    return s.inv()[n] * factorial(n)


def classical_Ng0(g: int) -> mpq:
    """Degree-zero invariant N_{g,0} for g >= 2."""
    if g < 2:
        raise ValueError("N_{g,0} is given by this formula only for g >= 2")
    b1 = abs(bernoulli(2 * g))
    b2 = abs(bernoulli(2 * g - 2))
    return (-1) ** g * CHI * b1 * b2 / (2 * (2 * g) * (2 * g - 2) * factorial(2 * g - 2))


def _inverse_sinc_squared(h: int) -> list:
    """Coefficients of t^{2k}, k <= h, in (sin(t/2)/(t/2))^{-2}."""
    s = QSeries([mpq((-1) ** k, 4 ** k * factorial(2 * k + 1)) for k in range(h + 1)], h)
    # variable u = t^2
    return list((s * s).inv().coeffs)


def multiple_cover(h: int, d: int) -> mpq:
    """Genus-h contribution C_0(h, d) of a degree-d cover of a rigid rational curve."""
    if h < 0 or d < 1:
        raise ValueError("need h >= 0 and d >= 1")
    c = _inverse_sinc_squared(h)[h]
    return c * mpq(d) ** (2 * h - 3)


@dataclass
class ClassicalData:
    """Low-degree invariants available as initial data."""

    genus0_gv: dict = field(default_factory=lambda: {1: 2875, 2: 609250, 3: 317206375})
    invariants: dict = field(default_factory=dict)  # (g, d) -> rational

    @classmethod
    def default(cls) -> "ClassicalData":
        data = cls()
        data.invariants[(1, 1)] = mpq(2875, 12)
        for d in (1, 2, 3):
            data.invariants[(2, d)] = data.genus0_only(2, d)
        return data

    def genus0_only(self, g: int, d: int) -> mpq:
        """N_{g,d} assuming only rational curves contribute (true for g=2, d<=3)."""
        total = ZERO
        for k in range(1, d + 1):
            if d % k == 0 and d // k in self.genus0_gv:
                total += self.genus0_gv[d // k] * multiple_cover(g, k)
            elif d % k == 0:
                raise InsufficientInitialData(f"genus-0 count n_{d // k} unknown")
        return total

    def N(self, g: int, d: int) -> mpq:
        if d == 0 and g >= 2:
            return self.invariants.get((g, 0), classical_Ng0(g))
        try:
            return self.invariants[(g, d)]
        except KeyError:
            raise InsufficientInitialData(f"initial datum N_{{{g},{d}}} is missing") from None

    def update_from_file(self, path: str | Path) -> None:
        self.invariants.update(read_initial_data(path))


def read_initial_data(path: str | Path) -> dict:
    """Parse lines ``g, d, num/den``; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'g, d, value'")
        out[(int(parts[0]), int(parts[1]))] = rat(parts[2])
    return out


# -- polynomial fits -----------------------------------------------------

def fit_X_polynomial(s: QSeries, md: MirrorData, maxdeg: int, margin: int) -> XPoly:
    """Write ``s`` as a polynomial of degree <= maxdeg in X.

    The coefficients q^0..q^maxdeg determine the polynomial (X = -5^5 q +
    O(q^2) makes the system triangular); q^{maxdeg+1}..q^{maxdeg+margin}
    must then vanish in the residual.
    """
    if s.order < maxdeg + margin:
        raise ValueError(f"series order {s.order} < maxdeg + margin = {maxdeg + margin}")
    lead = -md.X[1]
    residual = s
    coeffs = []
    power = md.one
    for k in range(maxdeg + 1):
        c = residual[k] / lead ** k * (-1) ** k
        coeffs.append(c)
        residual = residual - power * c
        power = power * md.X
    for k in range(maxdeg + 1, maxdeg + margin + 1):
        if residual[k]:
            raise NotPolynomial(
                f"series is not a polynomial of degree <= {maxdeg} in X (mismatch at q^{k})", k
            )
    return XPoly(coeffs)


# -- solving -----------------------------------------------------------

@dataclass(frozen=True)
class SolveReport:
    genus: int
    gauge: Gauge
    ambiguity: XPoly
    P: QSeries
    invariants: dict
    margin: int
    rule: str = "B"

    def as_dict(self) -> dict:
        from .series import rat_str

        return {
            "genus": self.genus,
            "gauge": self.gauge.as_dict(),
            "rule": self.rule,
            "ambiguity": self.ambiguity.as_strings(),
            "invariants": [{"d": d, "value": rat_str(v)} for d, v in sorted(self.invariants.items())],
            "residual_margin": self.margin,
        }


def _graph_sum(rule: str):
    if rule == "B":
        return graph_sum_B
    if rule == "modified":
        return graph_sum_modified
    raise ValueError(f"unknown rule {rule!r}")


def _low_P(g: int, m: int, Ns: list, md: MirrorData) -> QSeries:
    """P_{g,m} to order len(Ns)-1 from the Q-series sum_d N_{g,d} Q^d (m derivatives)."""
    K = len(Ns) - 1
    FQ = QSeries(Ns, K)
    s = FQ.compose(md.mirror_map.truncate(K))
    inv11 = md.I11.truncate(K).inv()
    for _ in range(m):
        s = s.D() * inv11
    if g == 1 and m == 1:
        s = s + GENUS1_LOG
    factor = (md.Y.truncate(K) * 5) ** (g - 1) * md.I11.truncate(K) ** m * md.I0.truncate(K) ** (2 - 2 * g)
    return factor * s


def solve_genus(g: int, gauge: Gauge, md: MirrorData, table, classical: ClassicalData,
                margin: int = 10, rule: str = "B") -> SolveReport:
    """Solve for P_g (P_{1,1} when g = 1), store it in ``table`` and report."""
    if g == 0:
        F0 = genus0_potential(md)
        inv = {d: F0[d] for d in range(1, md.order + 1)}
        return SolveReport(0, gauge, XPoly(), table.get(0, 3), inv, 0, rule)
    gsum = _graph_sum(rule)
    m = 1 if g == 1 else 0
    K = 3 * g - 3 + m
    d0 = 1 if g == 1 else 0
    Ns = [ZERO] * (K + 1)
    for d in range(d0, K + 1):
        Ns[d] = classical.N(g, d)
    P_low = _low_P(g, m, Ns, md)
    R = gsum(g, m, 0, gauge, md, table, exclude_top=True)
    ambiguity = fit_X_polynomial(P_low + R.truncate(K), md, K, 0)
    P = ambiguity.evaluate(md.X, md.one) - R
    table.set(g, m, P)
    # margin check: the one-insertion sums must be polynomials of degree
    # 3g-3+m' on every remaining coefficient (the ambiguity fit itself has no
    # spare equations, so this is where polynomiality is actually tested)
    usable = min(margin, md.order - (K + 1))
    fit_X_polynomial(gsum(g, m + 1, 0, gauge, md, table), md, K + 1, usable)
    fit_X_polynomial(gsum(g, m, 1, gauge, md, table), md, K, min(margin, md.order - K))
    return SolveReport(g, gauge, ambiguity, P, invariants_from_P(g, P, md), usable, rule)


def assemble_genus(g: int, ambiguity: XPoly, gauge: Gauge, ctx, table, rule: str = "B"):
    """Set P_g := ambiguity(X) - R_g in ``table`` and return it.

    Works over q-series or the symbolic generator ring. Useful when the
    ambiguity is known (or only partly known) rather than fitted.
    """
    if g < 2:
        raise ValueError("assemble_genus handles g >= 2")
    R = _graph_sum(rule)(g, 0, 0, gauge, ctx, table, exclude_top=True)
    P = ambiguity.evaluate(ctx.X, ctx.one) - R
    table.set(g, 0, P)
    return P


def invariants_from_P(g: int, P: QSeries, md: MirrorData) -> dict:
    """N_{g,d} from P_g (or from P_{1,1} when g = 1)."""
    if g == 1:
        s = md.to_Q(P * md.I11.inv())
        if s[0] != GENUS1_LOG:
            raise ValueError("genus-one potential has the wrong log coefficient")
        return {d: s[d] / d for d in range(1, md.order + 1)}
    F = md.I0 ** (2 * g - 2) * (md.Y * 5).inv() ** (g - 1) * P
    FQ = md.to_Q(F)
    return {d: FQ[d] for d in range(0, md.order + 1)}


def solve_all(genus_max: int, gauge: Gauge, md: MirrorData, table, classical: ClassicalData,
              margin: int = 10, rule: str = "B") -> list[SolveReport]:
    reports = []
    for g in range(0, genus_max + 1):
        reports.append(solve_genus(g, gauge, md, table, classical, margin, rule))
    return reports


# -- Gopakumar-Vafa extraction -------------------------------------------

def genus0_gv(N0: dict) -> dict:
    """n_{0,d} from N_{0,d} = sum_{k|d} n_{0,d/k} / k^3."""
    n = {}
    for d in sorted(N0):
        if d < 1:
            continue
        val = N0[d]
        for k in range(2, d + 1):
            if d % k == 0:
                val -= n[d // k] * mpq(1, k ** 3)
        n[d] = val
    return n


def genus2_gv(N2: dict, n0: dict) -> dict:
    """n_{2,d} from N_{2,d} = sum_{k|d} (n_{0,d/k} C_0(2,k) + n_{2,d/k} k)."""
    n = {}
    for d in sorted(N2):
        if d < 1:
            continue
        val = N2[d]
        for k in range(1, d + 1):
            if d % k:
                continue
            val -= n0[d // k] * multiple_cover(2, k)
            if k > 1:
                val -= n[d // k] * k
        n[d] = val
    return n


def symbolic_table(ambiguities: dict, gauge: Gauge, basis: str = "E", rule: str = "B"):
    """Vertex table over the generator ring, built from known ambiguities.

    ``ambiguities`` maps g >= 1 to the XPoly f_g (f_{1,1} for g = 1) in the
    given gauge. The result holds P_{1,1} and P_g as exact polynomials.
    """
    from .mirror import VertexTable
    from .ring import GenRing

    ring = GenRing(basis)
    table = VertexTable(ring)
    table.set(0, 3, ring.one)
    for g in sorted(ambiguities):
        if g == 1:
            R = _graph_sum(rule)(1, 1, 0, gauge, ring, table, exclude_top=True)
            table.set(1, 1, ambiguities[1].evaluate(ring.X, ring.one) - R)
        else:
            assemble_genus(g, ambiguities[g], gauge, ring, table, rule)
    return table
