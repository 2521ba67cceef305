"""Exact rationals and truncated power series in one variable q."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import BadConstantTerm, NotMonic, ZeroConstantTerm

Rat = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def rat(x) -> Rat:
    """Coerce an int, Fraction, mpq or "p/q" string to an exact rational."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, int):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_str(x) -> str:
    """Serialize as "num/den" (or "num" when integral), never as a float."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def falling(a, k: int) -> Rat:
    """Falling factorial a(a-1)...(a-k+1); equals 1 for k == 0."""
    out = ONE
    for i in range(k):
        out *= a - i
    return mpq(out)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Rat:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return ONE
    if n > 1 and n % 2:
        return ZERO
    # sum_{k<=n} C(n+1, k) B_k = 0
    s = ZERO
    for k in range(n):
        s += comb(n + 1, k) * bernoulli(k)
    return -s / (n + 1)


_SCALARS = (int, Fraction, Rat)


class QSeries:
    """Truncated power series sum_{k<=order} c_k q^k with exact coefficients.

    Instances are immutable. Binary operations truncate to the smaller of
    the operand orders.
    """

    __slots__ = ("_c", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        c = [rat(x) for x in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(c) <= order:
            c.extend([ZERO] * (order + 1 - len(c)))
        self._c = tuple(c[: order + 1])
        self.order = order

    @classmethod
    def _raw(cls, c: Sequence[Rat], order: int) -> "QSeries":
        s = object.__new__(cls)
        s._c = tuple(c)
        s.order = order
        return s

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value, order: int) -> "QSeries":
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls._raw([ZERO] * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.const(1, order)

    @classmethod
    def q(cls, order: int) -> "QSeries":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "QSeries":
        c = [ZERO] * (order + 1)
        if k <= order:
            c[k] = rat(coeff)
        return cls._raw(c, order)

    # -- access -------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, k: int) -> Rat:
        if k < 0:
            raise IndexError("negative index")
        if k > self.order:
            raise IndexError(f"coefficient q^{k} beyond truncation order {self.order}")
        return self._c[k]

    def __len__(self) -> int:
        return self.order + 1

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return QSeries._raw(self._c[: order + 1], order)

    def is_zero(self) -> bool:
        return not any(self._c)

    def valuation(self) -> int | None:
        for k, c in enumerate(self._c):
            if c:
                return k
        return None

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            terms.append(rat_str(c) if k == 0 else f"{rat_str(c)}*q^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.order + 1}))"

    # -- ring operations ---------------------------------------------
    def _coerce(self, other) -> "QSeries | None":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, _SCALARS):
            return QSeries.const(other, self.order)
        return None

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            c = list(self._c)
            c[0] = c[0] + rat(other)
            return QSeries._raw(c, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self._c, other._c
        return QSeries._raw([a[i] + b[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-x for x in self._c], self.order)

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            return self + (-rat(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self._c, other._c
        return QSeries._raw([a[i] - b[i] for i in range(n + 1)], n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            r = rat(other)
            return QSeries._raw([x * r for x in self._c], self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self._c, other._c
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return QSeries._raw(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            r = rat(other)
            if not r:
                raise ZeroDivisionError("division of series by zero")
            return QSeries._raw([x / r for x in self._c], self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return self.inv() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = QSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return self._c[: n + 1] == o._c[: n + 1]

    __hash__ = None

    # -- analytic operations -----------------------------------------
    def D(self) -> "QSeries":
        """The Euler derivation q d/dq."""
        return QSeries._raw([k * x for k, x in enumerate(self._c)], self.order)

    def inv(self) -> "QSeries":
        a = self._c
        if not a[0]:
            raise ZeroConstantTerm("series with zero constant term is not invertible")
        a0inv = 1 / a[0]
        b = [a0inv]
        for n in range(1, self.order + 1):
            s = ZERO
            for k in range(1, n + 1):
                if a[k]:
                    s += a[k] * b[n - k]
            b.append(-s * a0inv)
        return QSeries._raw(b, self.order)

    def exp(self) -> "QSeries":
        a = self._c
        if a[0]:
            raise BadConstantTerm("exp is only defined for series without constant term")
        b = [ONE]
        for n in range(1, self.order + 1):
            s = ZERO
            for k in range(1, n + 1):
                if a[k]:
                    s += k * a[k] * b[n - k]
            b.append(s / n)
        return QSeries._raw(b, self.order)

    def log(self) -> "QSeries":
        a = self._c
        if a[0] != 1:
            raise BadConstantTerm("log requires constant term 1")
        c = [ZERO]
        for n in range(1, self.order + 1):
            s = ZERO
            for k in range(1, n):
                if c[k] and a[n - k]:
                    s += k * c[k] * a[n - k]
            c.append(a[n] - s / n)
        return QSeries._raw(c, self.order)

    def compose(self, inner: "QSeries") -> "QSeries":
        """Return self(inner(q)); requires inner(0) == 0."""
        if inner._c[0]:
            raise BadConstantTerm("composition requires an inner series with zero constant term")
        n = min(self.order, inner.order)
        result = QSeries.const(self._c[n], n)
        inner = inner.truncate(n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self._c[k]
        return result

    def revert(self) -> "QSeries":
        """Compositional inverse of a series q + O(q^2), via Lagrange inversion."""
        a = self._c
        if self.order < 1 or a[0] or a[1] != 1:
            raise NotMonic("reversion requires a series of the form q + O(q^2)")
        n = self.order
        # h(q) = a(q)/q, so [Q^k] b = (1/k) [q^{k-1}] h^{-k}
        h = QSeries._raw(list(a[1:]) + [ZERO], n)
        log_hinv = -h.log()
        b = [ZERO]
        for k in range(1, n + 1):
            p = (log_hinv * k).exp()
            b.append(p[k - 1] / k)
        return QSeries._raw(b, n)


def revert_monic(a: QSeries) -> QSeries:
    return a.revert()


def geometric(ratio, order: int) -> QSeries:
    """The series 1/(1 - ratio*q)."""
    r = rat(ratio)
    c, p = [], ONE
    for _ in range(order + 1):
        c.append(p)
        p *= r
    return QSeries._raw(c, order)
