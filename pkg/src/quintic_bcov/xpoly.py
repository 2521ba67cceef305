"""Polynomials in X with exact rational coefficients."""
from __future__ import annotations

from typing import Iterable

from .series import ZERO, rat, rat_str


class XPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rat(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "XPoly") -> "XPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "XPoly") -> "XPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self[k] - other[k] for k in range(n))

    def __neg__(self):
        return XPoly(-c for c in self.coeffs)

    def evaluate(self, X, one):
        """Horner evaluation at a ring element X; ``one`` is the ring unit."""
        result = one * 0
        for c in reversed(self.coeffs):
            result = result * X + c
        return result

    def as_strings(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "XPoly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            parts.append(rat_str(c) + ("*" + mono if mono else ""))
        return "XPoly(" + " + ".join(parts) + ")"
