"""Newton polygons: hull extraction, dominance, join, named polygons."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newton_strata.errors import InvalidPRank, NotAdmissible
from newton_strata.polygon import (
    Comparison,
    NewtonPolygon,
    Slope,
    break_points_tsv,
    dominates,
    is_decomposable,
    join,
    np_from_l,
    nu,
    parse_polygon,
    polygon_from_json_dict,
    polygon_to_json_dict,
    polygon_to_text,
    sigma,
)
from newton_strata.poset import enumerate_symmetric
from newton_strata.zeta import LPolynomial, l_of_curve, l_product

PAPER_L = LPolynomial(q=3, g=4, coeffs=(1, 0, 0, 0, 6, 0, 0, 0, 81))
EMPTY = NewtonPolygon(())


def poly(*pairs):
    return NewtonPolygon.from_pairs([(Fraction(a, b), e) for a, b, e in pairs])


# -- hull construction ------------------------------------------------------------

def test_np_from_l_paper_example():
    np = np_from_l(PAPER_L)
    assert np == poly((1, 4, 4), (3, 4, 4))
    assert np.p_rank == 0


def test_np_from_l_ordinary_elliptic():
    for a, q in ((1, 3), (-1, 2), (2, 5)):
        np = np_from_l(LPolynomial(q=q, g=1, coeffs=(1, -a, q)))
        assert np == poly((0, 1, 1), (1, 1, 1))


def test_np_from_l_supersingular_elliptic():
    for q in (2, 3, 5):
        np = np_from_l(LPolynomial(q=q, g=1, coeffs=(1, 0, q)))
        assert np == poly((1, 2, 2))


def test_np_from_l_prime_power_base_field():
    # same supersingular shape over F_4 = F_{2^2}: valuation normalized by n
    np = np_from_l(LPolynomial(q=4, g=1, coeffs=(1, -2, 4)))
    assert np == poly((1, 2, 2))


# -- invariants -------------------------------------------------------------------

def test_symmetry_violation_rejected():
    with pytest.raises(NotAdmissible):
        poly((0, 1, 1))  # slope 0 without matching slope 1


def test_integrality_violation_rejected():
    with pytest.raises(NotAdmissible):
        NewtonPolygon(((Slope(1, 2), 1),))
    with pytest.raises(NotAdmissible):
        poly((1, 3, 1), (2, 3, 1))  # e = 1 not divisible by b = 3


def test_slope_range_and_reduction_enforced():
    with pytest.raises(NotAdmissible):
        Slope(3, 2)
    with pytest.raises(NotAdmissible):
        Slope(2, 4)
    assert Slope(0, 1).c == 1
    assert Slope(2, 5).dual() == Slope(3, 5)


def test_non_weil_polynomial_rejected_by_hull():
    # over q = 8 the middle valuation 1/3 gives hull slopes {1/3, 2/3} with
    # multiplicity one each, which no p-divisible group can carry
    with pytest.raises(NotAdmissible):
        np_from_l(LPolynomial(q=8, g=1, coeffs=(1, -2, 8)))


# -- named polygons -----------------------------------------------------------------

def test_nu_and_sigma_shapes():
    assert nu(3, 0) == poly((1, 3, 3), (2, 3, 3))
    assert nu(2, 0) == poly((1, 2, 4))
    assert nu(4, 2) == poly((0, 1, 2), (1, 2, 4), (1, 1, 2))
    assert nu(4, 4) == poly((0, 1, 4), (1, 1, 4))
    assert sigma(4) == poly((1, 2, 8))
    assert sigma(1) == nu(1, 0)


def test_nu_p_rank():
    for g in range(1, 6):
        for f in range(g + 1):
            assert nu(g, f).p_rank == f


def test_nu_rejects_bad_p_rank():
    with pytest.raises(InvalidPRank):
        nu(3, 4)
    with pytest.raises(InvalidPRank):
        nu(0, 0)
    with pytest.raises(InvalidPRank):
        sigma(0)


def test_nu_is_unique_maximum_among_fixed_p_rank():
    for g in range(1, 6):
        for f in range(g + 1):
            best = nu(g, f)
            same_rank = [x for x in enumerate_symmetric(g) if x.p_rank == f]
            assert best in same_rank
            for x in same_rank:
                assert dominates(x, best) in (Comparison.LESS_OR_EQUAL, Comparison.EQUAL)


# -- predicates ----------------------------------------------------------------------

def test_supersingular_and_ordinary_flags():
    assert sigma(4).is_supersingular
    assert not sigma(4).is_ordinary
    assert nu(4, 4).is_ordinary
    assert not nu(4, 4).is_supersingular
    middle = nu(5, 0)  # slopes 1/5, 4/5
    assert not middle.is_supersingular
    assert not middle.is_ordinary
    assert middle.p_rank == 0


def test_p_rank_of_join_examples():
    assert join(nu(1, 1), sigma(3)).p_rank == 1
    assert poly((1, 4, 4), (3, 4, 4)).p_rank == 0
    assert nu(4, 4).p_rank == 4


# -- join -----------------------------------------------------------------------------

def test_join_examples():
    assert join(sigma(1), sigma(3)) == sigma(4)
    assert join(nu(1, 1), nu(3, 0)) == poly((0, 1, 1), (1, 3, 3), (2, 3, 3), (1, 1, 1))
    assert join(nu(2, 1), EMPTY) == nu(2, 1)


def test_join_adds_heights_and_p_ranks():
    for x, y in itertools.product(enumerate_symmetric(2), enumerate_symmetric(3)):
        j = join(x, y)
        assert j.height == x.height + y.height
        assert j.p_rank == x.p_rank + y.p_rank
        assert j.e_of(Fraction(1, 2)) == x.e_of(Fraction(1, 2)) + y.e_of(Fraction(1, 2))


# -- break points ---------------------------------------------------------------------

def test_break_points_examples():
    assert nu(4, 0).break_points() == ((0, 0), (4, 1), (8, 4))
    for g in (1, 3, 5):
        assert nu(g, g).break_points() == ((0, 0), (g, 0), (2 * g, g))
    assert sigma(4).break_points() == ((0, 0), (8, 4))


def test_break_points_tsv():
    text = break_points_tsv(nu(4, 0))
    assert text == "0\t0\n4\t1\n8\t4\n"


# -- dominance -------------------------------------------------------------------------

def test_dominance_examples():
    assert dominates(sigma(4), nu(4, 0)) is Comparison.LESS_OR_EQUAL
    assert dominates(nu(4, 0), sigma(4)) is Comparison.GREATER_OR_EQUAL
    assert dominates(nu(4, 2), nu(4, 2)) is Comparison.EQUAL
    assert dominates(nu(4, 0), join(nu(1, 1), sigma(3))) is Comparison.INCOMPARABLE
    assert dominates(sigma(2), sigma(3)) is Comparison.INCOMPARABLE


def test_dominance_is_partial_order_up_to_height_12():
    for g in range(1, 7):
        nodes = enumerate_symmetric(g)
        for x in nodes:
            assert dominates(x, x) is Comparison.EQUAL
        for x, y in itertools.combinations(nodes, 2):
            fwd, bwd = dominates(x, y), dominates(y, x)
            # antisymmetry: distinct nodes never compare equal both ways
            if fwd is Comparison.LESS_OR_EQUAL:
                assert bwd is Comparison.GREATER_OR_EQUAL
            if fwd is Comparison.INCOMPARABLE:
                assert bwd is Comparison.INCOMPARABLE
        le = {
            (i, j)
            for i, x in enumerate(nodes)
            for j, y in enumerate(nodes)
            if dominates(x, y) in (Comparison.LESS_OR_EQUAL, Comparison.EQUAL)
        }
        for (i, j) in le:
            for k in range(len(nodes)):
                if (j, k) in le:
                    assert (i, k) in le  # transitivity


def test_extremes_sandwich_everything():
    for g in range(1, 7):
        for x in enumerate_symmetric(g):
            assert dominates(sigma(g), x) in (Comparison.LESS_OR_EQUAL, Comparison.EQUAL)
            assert dominates(x, nu(g, g)) in (Comparison.LESS_OR_EQUAL, Comparison.EQUAL)


# -- multiplicativity -------------------------------------------------------------------

def elliptic_ls(q):
    """All elliptic L-polynomials over F_q allowed by the Weil bound shape."""
    out = []
    bound = int((4 * q) ** 0.5)
    for a in range(-bound, bound + 1):
        out.append(LPolynomial(q=q, g=1, coeffs=(1, -a, q)))
    return out


def test_product_polygon_is_join_exhaustive_small():
    for q in (2, 3):
        ls = elliptic_ls(q)
        for la, lb in itertools.product(ls, repeat=2):
            product = l_product(la, lb)
            assert np_from_l(product) == join(np_from_l(la), np_from_l(lb))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_product_polygon_is_join_random(data):
    q = data.draw(st.sampled_from([2, 3, 5, 7, 9]))
    ls = elliptic_ls(q)
    la = data.draw(st.sampled_from(ls))
    lb = data.draw(st.sampled_from(ls))
    assert np_from_l(l_product(la, lb)) == join(np_from_l(la), np_from_l(lb))


def test_curve_product_round_trip():
    from newton_strata.curves import make_curve

    la = l_of_curve(make_curve("hyp", 3, [2, 0, 1, 1]))
    lb = l_of_curve(make_curve("hyp", 3, [1, 0, 1, 1]))
    assert np_from_l(l_product(la, lb)) == join(np_from_l(la), np_from_l(lb))


# -- decomposability -----------------------------------------------------------------

def test_decomposability():
    assert is_decomposable(sigma(2))
    assert is_decomposable(sigma(5))
    assert not is_decomposable(sigma(1))
    assert not is_decomposable(nu(1, 1))
    assert is_decomposable(nu(4, 2))  # nu(2,2) + nu(2,0)
    assert not is_decomposable(poly((5, 11, 11), (6, 11, 11)))
    assert not is_decomposable(nu(4, 0))  # slopes 1/4, 3/4 forced together


# -- text / json forms ----------------------------------------------------------------

def test_text_round_trip():
    for np in (sigma(4), nu(4, 2), nu(3, 0), EMPTY, join(nu(1, 1), nu(3, 0))):
        assert parse_polygon(polygon_to_text(np)) == np
    assert polygon_to_text(poly((1, 4, 4), (3, 4, 4))) == "4*(1/4)+4*(3/4)"
    assert parse_polygon("8*(1/2)") == sigma(4)


def test_text_rejects_garbage():
    with pytest.raises(NotAdmissible):
        parse_polygon("4*(1/4)+banana")


def test_json_round_trip():
    np = poly((1, 4, 4), (3, 4, 4))
    data = polygon_to_json_dict(np)
    assert data == {"height": 8, "entries": [{"a": 1, "b": 4, "e": 4}, {"a": 3, "b": 4, "e": 4}]}
    assert polygon_from_json_dict(data) == np
