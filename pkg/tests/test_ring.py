from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_bcov.errors import KernelDetected, NoFit
from quintic_bcov.mirror import VertexTable, build_mirror
from quintic_bcov.reference_formulas import p11_gen, p2_gen
from quintic_bcov.ring import (
    BASES, GenPoly, GenRing, hae1_sides, hae2_operator, monomials, ringfit, series_images,
    solve_rational, verify_HAE,
)

small = st.integers(-3, 3)
exps = st.tuples(*(st.integers(0, 2) for _ in range(5)))
polys = st.dictionaries(exps, small, max_size=4)


@settings(max_examples=30, deadline=None)
@given(polys, polys)
def test_basis_change_is_a_ring_isomorphism(a, b):
    p, q = GenPoly(a, "gen"), GenPoly(b, "gen")
    assert (p * q).to_basis("E") == p.to_basis("E") * q.to_basis("E")
    assert p.to_basis("E").to_basis("gen") == p


@settings(max_examples=20, deadline=None)
@given(polys, polys)
def test_D_is_a_derivation_in_both_bases(a, b):
    for basis in ("gen", "E"):
        p, q = GenPoly(a, basis), GenPoly(b, basis)
        assert (p * q).D() == p.D() * q + p * q.D()
    p = GenPoly(a, "gen")
    assert p.D().to_basis("E") == p.to_basis("E").D()


@pytest.mark.parametrize("basis", ["gen", "E"])
def test_D_matches_series_to_order_30(md30, basis):
    ring = GenRing(basis)
    images = series_images(md30, basis)
    for name, img in zip(BASES[basis], images):
        assert ring.D(ring.var(name)).substitute(images, md30.one) == img.D()


def test_parse_print_round_trip():
    text = "-350/9*B3 + 5/24*A^3 - 1/12*X + 25/144"
    p = GenPoly.parse(text, "gen")
    assert GenPoly.parse(str(p), "gen") == p
    assert p.degree_in("A") == 3 and p.weighted_degree() == 3
    assert GenPoly.parse("X^2 - 1/2", "E").x_polynomial() == [mpq(-1, 2), 0, 1]
    assert GenPoly.parse("E1 + X", "E").x_polynomial() is None


def test_p11_matches_series(solved_original):
    md, table, _ = solved_original
    assert p11_gen().evaluate(md) == table.get(1, 1)


def test_ringfit_recovers_P2(md30, solved_original):
    md, table, _ = solved_original
    expected = p2_gen().to_basis("E")
    assert expected.degree_in("B") == 0
    fitted = ringfit(table.get(2, 0), md, 3, "E", margin=2)
    assert fitted == expected


def test_ringfit_errors(md12):
    with pytest.raises(KernelDetected):
        ringfit(md12.X, md12, 6, "E")
    with pytest.raises(NoFit):
        ringfit(md12.I0, md12, 1, "E")


def test_monomials_and_solver():
    assert len(monomials("E", 1)) == 3  # 1, E1, X
    sol, rank = solve_rational([[1, 1], [1, -1], [2, 0]], [3, 1, 4])
    assert sol == [2, 1] and rank == 2
    sol, rank = solve_rational([[1, 1], [2, 2]], [1, 3])
    assert sol is None and rank == 1


def _symbolic_table(P2):
    ring = GenRing("gen")
    t = VertexTable(ring)
    t.set(0, 3, ring.one)
    t.set(1, 1, p11_gen())
    t.set(2, 0, P2)
    return t


def test_HAE_genus_two_symbolic():
    P2 = p2_gen()
    assert hae2_operator(P2).is_zero()
    lhs, rhs = hae1_sides(2, _symbolic_table(P2))
    assert lhs == rhs


def test_HAE_negative_control(md12):
    ring = GenRing("gen")
    # adding A*X breaks HAE1, adding B breaks HAE2
    t = _symbolic_table(p2_gen() + ring.A * ring.X)
    lhs, rhs = hae1_sides(2, t)
    assert lhs != rhs
    assert not hae2_operator(p2_gen() + ring.B).is_zero()
    rep = verify_HAE(2, t, md12)
    assert rep.hae1_ok is False and rep.hae1_first_failure is not None and not rep.ok


def test_HAE_series_report(md12):
    rep = verify_HAE(2, _symbolic_table(p2_gen()), md12)
    assert rep.ok and rep.order == 12
