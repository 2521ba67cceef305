"""Polynomials in the Yamaguchi-Yau generators and the derivation D on them.

Two coordinate systems are supported on the same five-variable polynomial
ring:

* ``"gen"``: (A, B, B2, B3, X), the logarithmic derivatives of I_11, I_0
  and the algebraic coordinate X;
* ``"E"``: (E1, E2, E3, B, X), where E1 = A + 2B,
  E2 = -B2 + B*E1 and E3 = -B3 - (B + X)*B2 + E1*B^2 - (2/5)*X*B are the
  gauge-zero modified propagators.

The change of variables is polynomial in both directions, so conversion is
plain substitution. Elements of Q[E1, E2, E3, X] are exactly the E-basis
polynomials with no B.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .errors import KernelDetected, NoFit
from .series import ONE, ZERO, QSeries, Rat, mpq, rat, rat_str

BASES = {
    "gen": ("A", "B", "B2", "B3", "X"),
    "E": ("E1", "E2", "E3", "B", "X"),
}
# weights used for degree bounds in fits
WEIGHTS = {
    "gen": (1, 1, 2, 3, 1),
    "E": (1, 2, 3, 1, 1),
}

_SCALARS = (int, Rat)


class GenPoly:
    """Sparse polynomial with exact coefficients in one of the two bases."""

    __slots__ = ("terms", "basis")

    def __init__(self, terms: Mapping[tuple, object] | None = None, basis: str = "gen"):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.terms = {k: rat(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, terms: dict, basis: str) -> "GenPoly":
        p = object.__new__(cls)
        p.terms = terms
        p.basis = basis
        return p

    # -- constructors --------------------------------------------------
    @classmethod
    def const(cls, c, basis: str = "gen") -> "GenPoly":
        return cls({(0, 0, 0, 0, 0): c}, basis)

    @classmethod
    def var(cls, name: str, basis: str | None = None) -> "GenPoly":
        if basis is None:
            basis = next(b for b, names in BASES.items() if name in names)
        idx = BASES[basis].index(name)
        e = [0] * 5
        e[idx] = 1
        return cls({tuple(e): ONE}, basis)

    @classmethod
    def parse(cls, text: str, basis: str = "gen") -> "GenPoly":
        """Parse a sum of terms like ``-31/3*B + 25/6*E1*E2^2 - 1/12``."""
        names = BASES[basis]
        out = cls.const(0, basis)
        s = text.replace(" ", "").replace("-", "+-")
        for term in filter(None, s.split("+")):
            sign = ONE
            if term.startswith("-"):
                sign, term = -ONE, term[1:]
            coeff = ONE
            e = [0] * 5
            for factor in term.split("*"):
                base, _, power = factor.partition("^")
                k = int(power) if power else 1
                if base in names:
                    e[names.index(base)] += k
                else:
                    coeff *= rat(base) ** k
            out = out + cls({tuple(e): sign * coeff}, basis)
        return out

    # -- basic protocol -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = GenPoly.const(other, self.basis)
        if not isinstance(other, GenPoly):
            return NotImplemented
        if other.basis != self.basis:
            other = other.to_basis(self.basis)
        return self.terms == other.terms

    __hash__ = None

    def _check(self, other: "GenPoly") -> None:
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = GenPoly.const(other, self.basis)
        if not isinstance(other, GenPoly):
            return NotImplemented
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            nv = t.get(k, ZERO) + v
            if nv:
                t[k] = nv
            else:
                t.pop(k, None)
        return GenPoly._raw(t, self.basis)

    __radd__ = __add__

    def __neg__(self):
        return GenPoly._raw({k: -v for k, v in self.terms.items()}, self.basis)

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            return self + (-rat(other))
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            r = rat(other)
            if not r:
                return GenPoly._raw({}, self.basis)
            return GenPoly._raw({k: v * r for k, v in self.terms.items()}, self.basis)
        if not isinstance(other, GenPoly):
            return NotImplemented
        self._check(other)
        t: dict = defaultdict(lambda: ZERO)
        for (a0, a1, a2, a3, a4), u in self.terms.items():
            for (b0, b1, b2, b3, b4), v in other.terms.items():
                t[(a0 + b0, a1 + b1, a2 + b2, a3 + b3, a4 + b4)] += u * v
        return GenPoly._raw({k: v for k, v in t.items() if v}, self.basis)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (ONE / rat(other))
        return NotImplemented

    def __pow__(self, n: int):
        result = GenPoly.const(1, self.basis)
        for _ in range(n):
            result = result * self
        return result

    # -- structure ------------------------------------------------------
    def degree_in(self, name: str) -> int:
        idx = BASES[self.basis].index(name)
        return max((k[idx] for k in self.terms), default=-1)

    def weighted_degree(self) -> int:
        w = WEIGHTS[self.basis]
        return max((sum(a * b for a, b in zip(k, w)) for k in self.terms), default=-1)

    def x_polynomial(self):
        """Coefficients in X if only X occurs, else None."""
        if any(any(k[:4]) for k in self.terms):
            return None
        n = max((k[4] for k in self.terms), default=-1)
        return [self.terms.get((0, 0, 0, 0, j), ZERO) for j in range(n + 1)]

    def partial(self, name: str) -> "GenPoly":
        idx = BASES[self.basis].index(name)
        t = {}
        for k, v in self.terms.items():
            if k[idx]:
                nk = list(k)
                nk[idx] -= 1
                t[tuple(nk)] = v * k[idx]
        return GenPoly._raw(t, self.basis)

    def partials(self) -> tuple["GenPoly", ...]:
        """(d/dA, d/dB, d/dB2, d/dB3), computed in the generator basis."""
        p = self.to_basis("gen")
        return tuple(p.partial(n) for n in ("A", "B", "B2", "B3"))

    def substitute(self, images: Iterable, one):
        """Evaluate with the variables replaced by ``images`` (a ring with unit ``one``)."""
        images = list(images)
        cache: dict = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = one if k == 0 else power(i, k - 1) * images[i]
            return cache[(i, k)]

        total = one * 0
        for k, v in sorted(self.terms.items()):
            term = one * v
            for i, e in enumerate(k):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def to_basis(self, basis: str) -> "GenPoly":
        if basis == self.basis:
            return self
        ring = GenRing(basis)
        images = [getattr(ring, name) for name in BASES[self.basis]]
        return self.substitute(images, ring.one)

    def evaluate(self, ctx) -> QSeries:
        """Series value, with generator series taken from a MirrorData."""
        return self.substitute(series_images(ctx, self.basis), ctx.one)

    def D(self) -> "GenPoly":
        ring = GenRing(self.basis)
        out = GenPoly._raw({}, self.basis)
        for name, dv in zip(BASES[self.basis], ring.derivatives):
            dp = self.partial(name)
            if dp:
                out = out + dp * dv
        return out

    # -- printing -------------------------------------------------------
    def sort_key(self, k):
        w = WEIGHTS[self.basis]
        return (-sum(a * b for a, b in zip(k, w)), tuple(-e for e in k))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = BASES[self.basis]
        parts = []
        for k in sorted(self.terms, key=self.sort_key):
            c = self.terms[k]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{rat_str(mag)}*{mono}"
            else:
                body = rat_str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"GenPoly[{self.basis}]({self})"


def series_images(ctx, basis: str) -> list:
    """Series of the five variables of ``basis``."""
    if basis == "gen":
        return [ctx.A, ctx.B, ctx.B2, ctx.B3, ctx.X]
    E1, E2, E3 = E_series(ctx)
    return [E1, E2, E3, ctx.B, ctx.X]


def E_series(ctx):
    A, B, B2, B3, X = ctx.A, ctx.B, ctx.B2, ctx.B3, ctx.X
    E1 = A + B * 2
    E2 = -B2 + B * E1
    E3 = -B3 - (B + X) * B2 + E1 * B * B - X * B * mpq(2, 5)
    return E1, E2, E3


@dataclass(frozen=True)
class _RingData:
    one: GenPoly
    A: GenPoly
    B: GenPoly
    B2: GenPoly
    B3: GenPoly
    X: GenPoly
    E1: GenPoly
    E2: GenPoly
    E3: GenPoly
    derivatives: tuple


_RINGS: dict = {}


class GenRing:
    """Symbolic stand-in for MirrorData: generators as GenPoly, D = D_gen.

    It supports the attributes used by the graph sums and the vertex table
    (A, B, B2, B3, X, one, D, const), so those can run symbolically.
    """

    def __init__(self, basis: str = "gen"):
        if basis not in _RINGS:
            _RINGS[basis] = _build_ring(basis)
        self.basis = basis
        self._d = _RINGS[basis]

    def __getattr__(self, name):
        d = self.__dict__.get("_d")
        if d is None:
            raise AttributeError(name)
        return getattr(d, name)

    def D(self, p: GenPoly) -> GenPoly:
        return p.D()

    def const(self, c) -> GenPoly:
        return GenPoly.const(c, self.basis)

    def var(self, name: str) -> GenPoly:
        return getattr(self._d, name)


def _build_ring(basis: str) -> _RingData:
    v = {n: GenPoly.var(n, basis) for n in BASES[basis]}
    one = GenPoly.const(1, basis)
    two5 = mpq(2, 5)
    if basis == "gen":
        A, B, B2, B3, X = v["A"], v["B"], v["B2"], v["B3"], v["X"]
        E1 = A + B * 2
        E2 = -B2 + B * E1
        E3 = -B3 - (B + X) * B2 + E1 * B * B - X * B * two5
        dA = B * B * 2 - A * B * 2 - B2 * 4 - X * (A + B * 2 + two5) - A * A
        dB = B2 - B * B
        dB2 = B3 - B * B2
        dB3 = -X * (B3 * 2 + B2 * mpq(7, 5) + B * two5 + mpq(24, 625)) - B * B3
        dX = X - X * X
        derivs = (dA, dB, dB2, dB3, dX)
    else:
        E1, E2, E3, B, X = v["E1"], v["E2"], v["E3"], v["B"], v["X"]
        A = E1 - B * 2
        B2 = B * E1 - E2
        B3 = -E3 - (B + X) * B2 + E1 * B * B - X * B * two5
        dE1 = -X * (E1 + two5) - E1 * E1 + E2 * 2
        dE2 = -X * E2 - E1 * E2 + E3
        dE3 = X * mpq(24, 625) - X * E3 - E2 * E2
        dB = B2 - B * B
        dX = X - X * X
        derivs = (dE1, dE2, dE3, dB, dX)
    return _RingData(one, A, B, B2, B3, X, E1, E2, E3, derivs)


# -- fitting -------------------------------------------------------------

def monomials(basis: str, bound: int) -> list[tuple]:
    """Exponent tuples of weighted degree <= bound (B excluded in the E basis)."""
    w = WEIGHTS[basis]
    free = [i for i in range(5) if not (basis == "E" and i == 3)]
    out = []
    ranges = [range(bound // w[i] + 1) if i in free else range(1) for i in range(5)]
    for e in product(*ranges):
        if sum(a * b for a, b in zip(e, w)) <= bound:
            out.append(e)
    out.sort(key=lambda k: (sum(a * b for a, b in zip(k, w)), k))
    return out


def solve_rational(rows: list[list], rhs: list) -> tuple[list | None, int]:
    """Exact least-squares-free solve of an overdetermined system.

    Returns (solution or None if inconsistent, rank). Columns beyond the
    rank are left free and set to zero, so callers must check the rank.
    """
    n = len(rows[0]) if rows else 0
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = ONE / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in M[r:]):
        return None, r
    sol = [ZERO] * n
    for i, c in enumerate(pivots):
        sol[c] = M[i][-1]
    return sol, r


def ringfit(s: QSeries, ctx, bound: int, basis: str = "E", margin: int = 0) -> GenPoly:
    """Write the series ``s`` as a polynomial of weighted degree <= bound.

    Every coefficient of ``s`` up to its truncation order is used as an
    equation; ``margin`` demands that many equations beyond the number of
    unknowns. Raises KernelDetected when the monomial series are linearly
    dependent at this truncation, NoFit when ``s`` is not in their span.
    """
    monos = monomials(basis, bound)
    images = series_images(ctx, basis)
    order = s.order
    if order + 1 < len(monos) + margin:
        raise KernelDetected(
            f"{len(monos)} unknowns need at least {len(monos) + margin} coefficients, have {order + 1}"
        )
    cols = [GenPoly({m: 1}, basis).substitute(images, ctx.one) for m in monos]
    rows = [[col[k] for col in cols] for k in range(order + 1)]
    rhs = [s[k] for k in range(order + 1)]
    sol, rank = solve_rational(rows, rhs)
    if rank < len(monos):
        raise KernelDetected(f"monomials are dependent to order {order} (rank {rank} < {len(monos)})")
    if sol is None:
        raise NoFit(f"series is not a polynomial of weighted degree <= {bound}")
    return GenPoly(dict(zip(monos, sol)), basis)


# -- Yamaguchi-Yau equations -------------------------------------------

@dataclass(frozen=True)
class HAEReport:
    genus: int
    hae1_ok: bool | None
    hae2_ok: bool
    hae1_first_failure: int | None
    hae2_first_failure: int | None
    order: int

    @property
    def ok(self) -> bool:
        return self.hae2_ok and self.hae1_ok is not False


def hae2_operator(P: GenPoly) -> GenPoly:
    """(-2 dA + dB + (A+2B) dB2 + ((B-X)(A+2B) - B2 - 2X/5) dB3) P."""
    p = P.to_basis("gen")
    r = GenRing("gen")
    dA, dB, dB2, dB3 = p.partials()
    E1 = r.A + r.B * 2
    return -dA * 2 + dB + E1 * dB2 + ((r.B - r.X) * E1 - r.B2 - r.X * mpq(2, 5)) * dB3


def hae1_sides(g: int, table) -> tuple[GenPoly, GenPoly]:
    """(-dA P_g, 1/2 P_{g-1,2} + 1/2 sum_{g1+g2=g, g_i>=1} P_{g1,1} P_{g2,1}).

    ``table`` is a VertexTable over GenRing("gen").
    """
    lhs = -table.get(g, 0).to_basis("gen").partial("A")
    rhs = table.get(g - 1, 2).to_basis("gen") * mpq(1, 2)
    for g1 in range(1, g):
        rhs = rhs + table.get(g1, 1).to_basis("gen") * table.get(g - g1, 1).to_basis("gen") * mpq(1, 2)
    return lhs, rhs


def _first_failure(s: QSeries) -> int | None:
    return s.valuation()


def verify_HAE(g: int, table, md, check_hae1: bool = True) -> HAEReport:
    """Check both equations as series identities after evaluation at ``md``."""
    P = table.get(g, 0)
    h2 = hae2_operator(P).evaluate(md)
    f2 = _first_failure(h2)
    f1 = None
    ok1 = None
    if check_hae1:
        lhs, rhs = hae1_sides(g, table)
        f1 = _first_failure((lhs - rhs).evaluate(md))
        ok1 = f1 is None
    return HAEReport(g, ok1, f2 is None, f1, f2, md.order)
