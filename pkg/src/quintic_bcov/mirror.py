"""Quintic I-function, mirror map, Yamaguchi-Yau generators and vertex series."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import MirrorIdentityViolation, MissingVertexData
from .series import ONE, ZERO, QSeries, geometric, mpq

FIVE5 = 5**5


def _ifunction_coefficients(order: int) -> list[list]:
    """Coefficients of H^0..H^3 (z = 1) of the degree-d summand, d = 0..order.

    The summand prod_{m<=5d}(5H+m) / prod_{m<=d}(H+m)^5 is expanded
    modulo H^4.
    """
    out = []
    num = [ONE, ZERO, ZERO, ZERO]
    den_inv = [ONE, ZERO, ZERO, ZERO]

    def mul(p, r):
        return [sum((p[i] * r[k - i] for i in range(k + 1)), ZERO) for k in range(4)]

    for d in range(order + 1):
        if d > 0:
            for m in range(5 * d - 4, 5 * d + 1):
                num = mul(num, [mpq(m), mpq(5), ZERO, ZERO])
            # 1/(H+d) = (1/d) sum_j (-H/d)^j
            inv = [mpq((-1) ** j, d ** (j + 1)) for j in range(4)]
            for _ in range(5):
                den_inv = mul(den_inv, inv)
        out.append(mul(num, den_inv))
    return out


@dataclass(frozen=True)
class MirrorData:
    """All q-series attached to the quintic mirror at a fixed truncation order."""

    order: int
    I0: QSeries
    I1: QSeries
    I2: QSeries
    I3: QSeries
    J1: QSeries
    J2: QSeries
    J3: QSeries
    I11: QSeries
    I22: QSeries
    X: QSeries
    Y: QSeries
    A: QSeries
    A2: QSeries
    B1: QSeries
    B2: QSeries
    B3: QSeries
    B4: QSeries
    mirror_map: QSeries
    inverse_map: QSeries

    # generator-context protocol shared with the symbolic ring
    @property
    def B(self) -> QSeries:
        return self.B1

    @property
    def one(self) -> QSeries:
        return QSeries.one(self.order)

    def D(self, s: QSeries) -> QSeries:
        return s.D()

    def const(self, c) -> QSeries:
        return QSeries.const(c, self.order)

    def to_Q(self, s: QSeries) -> QSeries:
        """Re-expand a q-series in the Kaehler coordinate Q."""
        return s.compose(self.inverse_map)


def build_mirror(order: int) -> MirrorData:
    if order < 1:
        raise ValueError("order must be at least 1")
    rows = _ifunction_coefficients(order)
    I0, I1, I2, I3 = (QSeries([row[i] for row in rows], order) for i in range(4))
    inv0 = I0.inv()
    J1, J2, J3 = I1 * inv0, I2 * inv0, I3 * inv0
    I11 = J1.D() + 1
    Y = geometric(FIVE5, order)
    X = 1 - Y
    I22 = Y / (I0 * I0 * I11 * I11)
    A = I11.D() / I11
    A2 = I11.D().D() / I11
    D1 = I0.D()
    D2 = D1.D()
    D3 = D2.D()
    D4 = D3.D()
    B1, B2, B3, B4 = D1 * inv0, D2 * inv0, D3 * inv0, D4 * inv0
    mirror_map = QSeries.q(order) * J1.exp()
    return MirrorData(
        order=order, I0=I0, I1=I1, I2=I2, I3=I3, J1=J1, J2=J2, J3=J3,
        I11=I11, I22=I22, X=X, Y=Y, A=A, A2=A2, B1=B1, B2=B2, B3=B3, B4=B4,
        mirror_map=mirror_map, inverse_map=mirror_map.revert(),
    )


def genus0_log_free(md: MirrorData) -> QSeries:
    """F_0 minus its (5/6) log^3 Q term, as a series in q."""
    J1, J2, J3 = md.J1, md.J2, md.J3
    return J1 * J1 * J1 * mpq(-5, 6) + (J1 * J2 - J3) * mpq(5, 2)


def genus0_potential(md: MirrorData) -> QSeries:
    """sum_{d>=1} N_{0,d} Q^d."""
    return md.to_Q(genus0_log_free(md))


def yukawa(md: MirrorData) -> QSeries:
    """(Q d/dQ)^3 F_0 as a q-series; the log term contributes the constant 5."""
    inv11 = md.I11.inv()
    s = genus0_log_free(md)
    for _ in range(3):
        s = s.D() * inv11
    return s + 5


def vertex_P03(md: MirrorData, check: bool = True) -> QSeries:
    p03 = (md.Y * 5).inv() * md.I0 * md.I0 * md.I11 ** 3 * yukawa(md)
    if check and p03 != 1:
        k = next(i for i, c in enumerate(p03.coeffs) if c != (1 if i == 0 else 0))
        raise MirrorIdentityViolation(f"P_03 differs from 1 at q^{k}")
    return p03


def raise_m(g: int, P_gm, m: int, ctx):
    """P_{g,m+1} from P_{g,m}.

    ``ctx`` supplies the generators A, B, X and the derivation D; it can be
    a MirrorData (q-series) or the symbolic generator ring.
    """
    return ctx.D(P_gm) + P_gm * (ctx.X * (g - 1) + ctx.B * (2 * g - 2) - ctx.A * m)


def P_from_F(g: int, m: int, FQ: QSeries, md: MirrorData) -> QSeries:
    """Normalized potential P_{g,m} from the Q-series of F_g (no log terms).

    Only used as an independent check of the raise_m recursion.
    """
    s = FQ.compose(md.mirror_map)
    inv11 = md.I11.inv()
    for _ in range(m):
        s = s.D() * inv11
    return (md.Y * 5) ** (g - 1) * md.I11 ** m * md.I0 ** (2 - 2 * g) * s


@dataclass
class VertexTable:
    """Lazy table of P_{g,m}; higher m are produced by raise_m on demand."""

    ctx: object
    data: dict = field(default_factory=dict)

    def set(self, g: int, m: int, value) -> None:
        if 2 * g - 2 + m <= 0:
            raise ValueError(f"P_{{{g},{m}}} is undefined (unstable)")
        self.data[(g, m)] = value
        # values above the new base are stale
        for key in [k for k in self.data if k[0] == g and k[1] > m]:
            del self.data[key]

    def has_base(self, g: int) -> bool:
        return any(k[0] == g for k in self.data)

    def get(self, g: int, m: int):
        key = (g, m)
        if key in self.data:
            return self.data[key]
        below = [k[1] for k in self.data if k[0] == g and k[1] < m]
        if not below:
            raise MissingVertexData(f"no vertex data for P_{{{g},{m}}}")
        j = max(below)
        value = self.data[(g, j)]
        while j < m:
            value = raise_m(g, value, j, self.ctx)
            j += 1
            self.data[(g, j)] = value
        return value

    def copy(self) -> "VertexTable":
        return VertexTable(self.ctx, dict(self.data))


def initial_table(md: MirrorData) -> VertexTable:
    t = VertexTable(md)
    t.set(0, 3, vertex_P03(md))
    return t
