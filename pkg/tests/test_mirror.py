from __future__ import annotations

import pytest
from gmpy2 import mpq

from quintic_bcov.errors import MirrorIdentityViolation, MissingVertexData
from quintic_bcov.mirror import (
    P_from_F, VertexTable, build_mirror, genus0_potential, initial_table, raise_m, vertex_P03, yukawa,
)
from quintic_bcov.series import QSeries
from quintic_bcov.solver import genus0_gv


def test_I0_coefficients(md12):
    # (5d)! / (d!)^5
    assert [md12.I0[d] for d in range(4)] == [1, 120, 113400, 168168000]


def test_mirror_map_start(md12):
    assert md12.mirror_map[1] == 1 and md12.mirror_map[2] == 770
    assert md12.inverse_map[2] == -770
    assert md12.mirror_map.compose(md12.inverse_map) == QSeries.q(12)


def test_genus0_counts(md12):
    N0 = genus0_potential(md12)
    n = genus0_gv({d: N0[d] for d in range(1, 13)})
    assert (n[1], n[2], n[3], n[4]) == (2875, 609250, 317206375, 242467530000)
    assert all(n[d].denominator == 1 for d in n)


def test_yukawa_start(md12):
    y = md12.to_Q(yukawa(md12))
    # 5 + sum n_d d^3 Q^d / (1 - Q^d)
    assert y[0] == 5 and y[1] == 2875
    assert y[2] == 2875 + 609250 * 8


def test_P03_is_one(md30):
    assert vertex_P03(md30) == 1


def test_P03_detects_corruption(md12):
    from dataclasses import replace

    bad = replace(md12, I11=md12.I11 + QSeries.monomial(5, 12))
    with pytest.raises(MirrorIdentityViolation):
        vertex_P03(bad)


def test_generator_relations(md30):
    A, B, B2, B3, X = md30.A, md30.B, md30.B2, md30.B3, md30.X
    assert md30.A2 == B * B * 2 - A * B * 2 - B2 * 4 - X * (A + B * 2 + mpq(2, 5))
    assert md30.B4 == -X * (B3 * 2 + B2 * mpq(7, 5) + B * mpq(2, 5) + mpq(24, 625))
    assert md30.D(X) == X - X * X


def test_raise_m_against_direct_derivatives(md12):
    # P_{0,4} from the fourth Q-derivative of F_0 (the log term drops out)
    FQ = genus0_potential(md12)
    P04 = P_from_F(0, 4, FQ, md12)
    assert raise_m(0, md12.one, 3, md12) == P04
    assert P04 == -md12.A * 3 - md12.B * 2 - md12.X


def test_raise_m_genus_two(solved_original):
    md, table, reports = solved_original
    FQ = QSeries([reports[2].invariants[d] for d in range(md.order + 1)], md.order)
    FQ = FQ - FQ[0]  # constant drops out after one derivative
    assert P_from_F(2, 1, FQ, md) == table.get(2, 1)
    assert P_from_F(2, 2, FQ, md) == table.get(2, 2)


def test_vertex_table_behaviour(md12):
    t = initial_table(md12)
    with pytest.raises(MissingVertexData):
        t.get(1, 1)
    with pytest.raises(ValueError):
        t.set(0, 2, md12.one)
    t.get(0, 5)
    assert (0, 4) in t.data and (0, 5) in t.data
    t.set(0, 3, md12.one)
    assert (0, 4) not in t.data
    assert isinstance(t.copy(), VertexTable)


def test_build_mirror_rejects_bad_order():
    with pytest.raises(ValueError):
        build_mirror(0)
