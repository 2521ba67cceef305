"""Closed formulas from the literature, kept verbatim for use as oracles.

Some of these are known to contain misprints; the tests compare against
them literally and, where a corrected form exists, against that as well.
"""
from __future__ import annotations

from .feynman import Gauge, propagators
from .ring import GenPoly
from .series import mpq
from .xpoly import XPoly

# genus one
P11_GEN = "-1/2*A - 31/3*B - 1/12*X - 25/12"
F11_ORIGINAL = XPoly([mpq(-107, 60), mpq(-1, 12)])

# genus two ambiguities: original gauge (3/5, -2/25, -4/125) and gauge zero
F2_ORIGINAL = XPoly([mpq(-11771, 7200), mpq(487, 300), mpq(113, 7200), mpq(-1, 240)])
F2_ZERO = XPoly([mpq(-25, 144), mpq(5759, 3600), mpq(-41, 3600), mpq(-1, 240)])

# -P_2 written in the five generators (original-gauge example)
MINUS_P2_GEN = (
    "-350/9*B3 - 25/6*A*B2 - 425/9*B*B2 - 625/36*B2 + 5/24*A^3 + 65/12*A^2*B"
    " + 1045/18*A*B^2 + 865/9*B^3 + 25/144 + 1/6*A^2*X + 49/36*A*B*X"
    " + 167/720*A*X + 37/18*B^2*X - 1811/120*B*X - 475/12*B2*X - 5759/3600*X"
    " + 25/24*A^2 + 775/36*A*B + 350/9*B^2 + 625/288*A + 625/144*B"
    " + 13/288*A*X^2 + 13/144*B*X^2 + 41/3600*X^2 + 1/240*X^3"
)

# P_2 as displayed in the E-basis (the E-part of this display has the wrong sign)
P2_DISPLAY_E = (
    "350/9*E3 + 25/6*E1*E2 + 5/24*E1^3 + 625/36*E2 + 25/24*E1^2 + 25/36*X*E2"
    " + 1/6*X*E1^2 + 13/288*X^2*E1 + 167/720*X*E1 + 625/288*E1"
)

# explicit part of the displayed P_3, without the D P_2 and D^2 P_2 terms
P3_DISPLAY_BASE_E = (
    "8225/27*E3^2 + 275/3*E1*E2*E3 + 29375/108*E2*E3 + 185/24*E1^3*E3"
    " + 575/24*E1^2*E3 + 29375/864*E1*E3 - 10450/81*E2^3 - 3595/72*E1^2*E2^2"
    " - 3575/54*E1*E2^2 + 14375/288*E2^2 - 35/3*E1^4*E2 - 4075/144*E1^3*E2"
    " - 8125/432*E1^2*E2 + 15625/1728*E1*E2 - 5/4*E1^6 - 25/6*E1^5"
    " - 3125/576*E1^4 - 15625/5184*E1^3"
    " + 1175/108*X*E2*E3 + 39/8*X*E1^2*E3 + 7849/2160*X*E1*E3"
    " - 1397/54*X*E1*E2^2 + 2773/2160*X*E2^2 - 1687/144*X*E1^3*E2"
    " - 16163/1080*X*E1^2*E2 - 21433/8640*X*E1*E2 - 23/12*X*E1^5"
    " - 3107/720*X*E1^4 - 5893/1728*X*E1^3 - 82091/86400*X*E1^2"
    " + 611/864*X^2*E1*E3 - 1603/864*X^2*E2^2 - 1897/432*X^2*E1^2*E2"
    " - 4363/2880*X^2*E1*E2 - 731/576*X^2*E1^4 - 14609/8640*X^2*E1^3"
    " - 51473/86400*X^2*E1^2"
    " - 325/576*X^3*E1*E2 - 2305/5184*X^3*E1^3 - 4337/17280*X^3*E1^2"
    " + 47/3*E3 + E1*E2 + 25/6*E2 + 1/12*X^2*E1 + 13/2*X*E2 + 1/2*X*E1^2"
    " + 19/12*X*E1"
)
F3_CONSTANT = mpq(125, 36288)

# low-degree invariants
GENUS0_GV = {1: 2875, 2: 609250, 3: 317206375}
N11 = mpq(2875, 12)
N2_LOW = {1: mpq(575, 48), 2: mpq(5125, 2), 3: mpq(7930375, 6)}


def p11_gen() -> GenPoly:
    return GenPoly.parse(P11_GEN, "gen")


def p2_gen() -> GenPoly:
    return -GenPoly.parse(MINUS_P2_GEN, "gen")


def p2_display() -> GenPoly:
    """The displayed E-polynomial plus the gauge-zero ambiguity, verbatim."""
    f2 = GenPoly({(0, 0, 0, 0, k): c for k, c in enumerate(F2_ZERO.coeffs)}, "E")
    return GenPoly.parse(P2_DISPLAY_E, "E") + f2


def p2_display_corrected() -> GenPoly:
    """The same display with the sign of its E-part flipped."""
    f2 = GenPoly({(0, 0, 0, 0, k): c for k, c in enumerate(F2_ZERO.coeffs)}, "E")
    return -GenPoly.parse(P2_DISPLAY_E, "E") + f2


def p3_display_explicit(P2: GenPoly) -> GenPoly:
    """Everything in the displayed P_3 except f_3(X), given P_2 in the E-basis."""
    from .ring import GenRing

    r = GenRing("E")
    E1, E2, X = r.E1, r.E2, r.X
    D1 = P2.D()
    D2 = D1.D()
    return (
        GenPoly.parse(P3_DISPLAY_BASE_E, "E")
        - D2 * E1 * mpq(1, 2)
        + D1 * (E2 * mpq(19, 3) + E1 * E1 * mpq(1, 2) + E1 * mpq(25, 12) - X * E1 * mpq(11, 12))
    )


def genus2_closed_form(md):
    """F_2 as a q-series from the closed formula in the original propagators."""
    props = propagators(Gauge.original(), md)
    Tff, Tf, T = props.E_phiphi, props.E_phipsi, props.E_psipsi
    B, X = md.B, md.X
    bracket = (
        T * mpq(350, 9)
        + ((X * 25 + 535) / 36 + B * mpq(700, 9) + Tff * mpq(25, 6)) * Tf
        + Tff ** 3 * mpq(5, 24)
        + (B * 25 + X + 4) / 6 * Tff * Tff
        + ((X * X * 65 + X * 46 + 2129) / 1440 + (X * 25 + 535) / 36 * B + B * B * mpq(350, 9)) * Tff
        + X ** 3 / 240 - X * X * mpq(113, 7200) - X * mpq(487, 300) + mpq(11771, 7200)
    )
    return -(md.I0 * md.I0) * (md.Y * 5).inv() * bracket
