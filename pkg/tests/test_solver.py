from __future__ import annotations

import pytest
from gmpy2 import mpq

from quintic_bcov.errors import InsufficientInitialData, NotPolynomial
from quintic_bcov.feynman import Gauge
from quintic_bcov.mirror import build_mirror, initial_table
from quintic_bcov.reference_formulas import F2_ORIGINAL, F2_ZERO, F11_ORIGINAL, N2_LOW
from quintic_bcov.series import bernoulli
from quintic_bcov.solver import (
    ClassicalData, bernoulli_from_generating_function, classical_Ng0, fit_X_polynomial, genus0_gv,
    genus2_gv, multiple_cover, read_initial_data, solve_genus,
)
from quintic_bcov.xpoly import XPoly


def test_bernoulli_two_ways():
    for n in range(0, 14):
        assert bernoulli_from_generating_function(n) == bernoulli(n)


def test_degree_zero_constants():
    assert classical_Ng0(2) == mpq(-5, 144)
    assert classical_Ng0(3) == mpq(5, 36288)
    with pytest.raises(ValueError):
        classical_Ng0(1)


def test_multiple_cover():
    assert multiple_cover(0, 1) == 1
    assert multiple_cover(1, 1) == mpq(1, 12)
    assert [multiple_cover(2, d) for d in (1, 2, 3)] == [mpq(1, 240), mpq(2, 240), mpq(3, 240)]
    assert multiple_cover(1, 3) == mpq(1, 36)
    assert 2875 * multiple_cover(2, 1) == mpq(575, 48)
    with pytest.raises(ValueError):
        multiple_cover(1, 0)


def test_classical_defaults():
    data = ClassicalData.default()
    assert data.N(1, 1) == mpq(2875, 12)
    assert {d: data.N(2, d) for d in (1, 2, 3)} == N2_LOW
    assert data.N(2, 0) == mpq(-5, 144)
    with pytest.raises(InsufficientInitialData):
        data.N(3, 1)


def test_fit_examples(md12):
    assert fit_X_polynomial(md12.X * md12.X, md12, 2, 10) == XPoly([0, 0, 1])
    with pytest.raises(NotPolynomial) as err:
        fit_X_polynomial(md12.Y.inv(), md12, 5, 5)
    assert err.value.order == 6
    with pytest.raises(ValueError):
        fit_X_polynomial(md12.X, md12, 5, 10)


def test_genus_one(solved_original):
    _, _, reports = solved_original
    r = reports[1]
    assert r.ambiguity == F11_ORIGINAL
    assert r.invariants[1] == mpq(2875, 12)
    assert r.margin == 10


def test_genus_two_both_gauges(solved_original, solved_zero):
    r_orig, r_zero = solved_original[2][2], solved_zero[2][2]
    assert r_orig.ambiguity == F2_ORIGINAL
    assert r_zero.ambiguity == F2_ZERO
    assert r_orig.invariants == r_zero.invariants
    assert solved_original[1].get(2, 0) == solved_zero[1].get(2, 0)
    N = r_orig.invariants
    assert (N[0], N[1], N[2], N[3], N[4]) == (mpq(-5, 144), mpq(575, 48), mpq(5125, 2),
                                              mpq(7930375, 6), mpq(1010821250))


def test_genus_two_stable_under_truncation(solved_original, classical):
    md = build_mirror(12)
    t = initial_table(md)
    solve_genus(1, Gauge.original(), md, t, classical)
    r12 = solve_genus(2, Gauge.original(), md, t, classical)
    r16 = solved_original[2][2]
    assert all(r12.invariants[d] == r16.invariants[d] for d in range(13))
    assert r12.margin == 8


def test_gopakumar_vafa_integrality(solved_original):
    _, _, reports = solved_original
    n0 = genus0_gv(reports[0].invariants)
    n2 = genus2_gv({d: v for d, v in reports[2].invariants.items() if d >= 1}, n0)
    assert all(v.denominator == 1 for v in n2.values())
    assert (n2[1], n2[2], n2[3], n2[4], n2[5]) == (0, 0, 0, 534750, 75478987900)


def test_report_serialization(solved_original):
    d = solved_original[2][2].as_dict()
    assert d["ambiguity"] == ["-11771/7200", "487/300", "113/7200", "-1/240"]
    assert {"d": 1, "value": "575/48"} in d["invariants"]
    assert d["residual_margin"] == 10 and d["gauge"]["c1b"] == ["3/5"]


def test_initial_data_file(tmp_path):
    p = tmp_path / "init.txt"
    p.write_text("# genus two\n2, 1, 575/48\n\n3, 2, -7/3  # comment\n")
    assert read_initial_data(p) == {(2, 1): mpq(575, 48), (3, 2): mpq(-7, 3)}
    p.write_text("2, 1\n")
    with pytest.raises(ValueError):
        read_initial_data(p)


def test_genus_three_needs_data(classical):
    md = build_mirror(8)
    t = initial_table(md)
    for g in (1, 2):
        solve_genus(g, Gauge.original(), md, t, classical)
    with pytest.raises(InsufficientInitialData):
        solve_genus(3, Gauge.original(), md, t, classical)


def test_genus_three_round_trip(classical):
    """Supplied low-degree data is reproduced, whatever its values."""
    md = build_mirror(8)
    t = initial_table(md)
    for g in (1, 2):
        solve_genus(g, Gauge.zero(), md, t, classical)
    data = ClassicalData.default()
    fake = {d: mpq(d * d + 1, 7) for d in range(1, 7)}
    data.invariants.update({(3, d): v for d, v in fake.items()})
    r = solve_genus(3, Gauge.zero(), md, t, data, margin=1)
    assert r.ambiguity.degree <= 6
    assert r.ambiguity[0] == 25 * mpq(5, 36288)
    assert all(r.invariants[d] == fake[d] for d in fake)
    assert r.invariants[0] == mpq(5, 36288)
