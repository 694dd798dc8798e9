"""Poset of admissible symmetric polygons: enumeration, covers, codim, reports."""

import pytest

from newton_strata.errors import GenusTooLarge, NodeNotFound
from newton_strata.polygon import (
    Comparison,
    dominates,
    join,
    nu,
    parse_polygon,
    polygon_to_text,
    sigma,
)
from newton_strata.poset import (
    build_poset,
    codim,
    enumerate_symmetric,
    poset_to_json_dict,
    report_to_json_dict,
    stratum_report,
    to_dot,
)


# -- enumeration ---------------------------------------------------------------

def test_node_counts_small_genera():
    assert len(enumerate_symmetric(1)) == 2
    assert len(enumerate_symmetric(2)) == 3
    assert len(enumerate_symmetric(4)) == 8


def test_genus_one_polygons_are_the_elliptic_dichotomy():
    assert set(enumerate_symmetric(1)) == {nu(1, 1), sigma(1)}


def test_genus_two_chain():
    assert set(enumerate_symmetric(2)) == {nu(2, 2), nu(2, 1), sigma(2)}


def test_enumeration_has_no_duplicates_and_valid_entries():
    for g in range(1, 6):
        nodes = enumerate_symmetric(g)
        assert len(set(nodes)) == len(nodes)
        for node in nodes:
            assert node.height == 2 * g
            # construction re-validates all polygon invariants
            assert parse_polygon(polygon_to_text(node)) == node


def test_enumeration_cap():
    with pytest.raises(GenusTooLarge):
        enumerate_symmetric(9)
    assert len(enumerate_symmetric(9, cap=9)) > len(enumerate_symmetric(8))


# -- the genus-4 poset (the reference picture) -----------------------------------

def fig2_expected_covers():
    """The eight directed edges of the height-8 Hasse diagram."""
    s1, s3, s4 = sigma(1), sigma(3), sigma(4)
    n30, n11 = nu(3, 0), nu(1, 1)
    return [
        (s4, join(n30, s1)),
        (join(n30, s1), join(n11, s3)),
        (join(n30, s1), nu(4, 0)),
        (join(n11, s3), join(n11, n30)),
        (nu(4, 0), join(n11, n30)),
        (join(n11, n30), nu(4, 2)),
        (nu(4, 2), nu(4, 3)),
        (nu(4, 3), nu(4, 4)),
    ]


def test_genus_four_cover_relation_matches_reference():
    poset = build_poset(4)
    assert len(poset.nodes) == 8
    expected = {
        (poset.index_of(a), poset.index_of(b)) for a, b in fig2_expected_covers()
    }
    assert set(poset.covers) == expected
    assert len(poset.covers) == 8


def test_genus_four_codims_top_to_bottom():
    poset = build_poset(4)
    assert poset.codim == (0, 1, 2, 3, 4, 4, 5, 6)
    assert codim(poset, nu(4, 4)) == 0
    assert codim(poset, nu(4, 2)) == 2
    assert codim(poset, sigma(4)) == 6
    # longest chain equals dim A_4 - dim (supersingular locus) = 10 - 4
    assert codim(poset, sigma(4)) == 4 * 5 // 2 - 16 // 4


def test_genus_one_poset():
    poset = build_poset(1)
    assert [polygon_to_text(n) for n in poset.nodes] == ["1*(0/1)+1*(1/1)", "2*(1/2)"]
    assert poset.covers == ((1, 0),)


def test_genus_two_poset_is_a_chain():
    poset = build_poset(2)
    assert poset.nodes == (nu(2, 2), nu(2, 1), sigma(2))
    assert poset.covers == ((1, 0), (2, 1))


# -- structural properties ---------------------------------------------------------

@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_unique_top_and_bottom(g):
    poset = build_poset(g)
    assert poset.nodes[poset.top_index] == nu(g, g)
    assert poset.nodes[poset.bottom_index] == sigma(g)
    assert poset.codim[poset.top_index] == 0
    others = [n for n in poset.nodes if n != sigma(g)]
    for n in others:
        assert dominates(sigma(g), n) is Comparison.LESS_OR_EQUAL
    for n in poset.nodes:
        if n != nu(g, g):
            assert dominates(n, nu(g, g)) is Comparison.LESS_OR_EQUAL


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_graded_for_small_genus(g):
    assert build_poset(g).graded


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_covers_are_transitive_reduction(g):
    poset = build_poset(g)
    strict = {
        (i, j)
        for i, x in enumerate(poset.nodes)
        for j, y in enumerate(poset.nodes)
        if i != j and dominates(x, y) is Comparison.LESS_OR_EQUAL
    }
    for edge in poset.covers:
        assert edge in strict
        i, j = edge
        assert not any((i, k) in strict and (k, j) in strict for k in range(len(poset.nodes)))
    # every strict pair is reachable through covers
    reach = {i: {i} for i in range(len(poset.nodes))}
    for i in range(len(poset.nodes)):
        stack = [i]
        while stack:
            cur = stack.pop()
            for (a, b) in poset.covers:
                if a == cur and b not in reach[i]:
                    reach[i].add(b)
                    stack.append(b)
    for (i, j) in strict:
        assert j in reach[i]


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_codim_along_p_rank_chain(g):
    poset = build_poset(g)
    for f in range(1, g + 1):
        assert codim(poset, nu(g, f)) == g - f


def test_codim_rejects_foreign_node():
    poset = build_poset(3)
    with pytest.raises(NodeNotFound):
        codim(poset, sigma(4))
    with pytest.raises(NodeNotFound):
        codim(poset, 99)


# -- stratum reports -----------------------------------------------------------------

def test_report_blache_polygon():
    polygon = parse_polygon("11*(5/11)+11*(6/11)")
    report = stratum_report(11, polygon)
    assert report.p_rank == 0
    assert report.denominators == (11,)
    assert report.decomposable is False
    assert report.codim is None  # beyond the poset cap
    assert report.oort_flag_codim is None
    assert report.dim_ag == 66
    assert report.dim_ss == 30
    assert any("x^23" in note for note in report.notes)


def test_report_supersingular_is_decomposable():
    report = stratum_report(4, sigma(4))
    assert report.decomposable is True
    assert report.codim == 6
    assert report.oort_flag_codim is False  # 6 < 3g-3 = 9
    assert any("tree of supersingular" in note for note in report.notes)


def test_report_nu40():
    report = stratum_report(4, nu(4, 0))
    assert report.codim == 4
    assert report.p_rank == 0
    assert report.oort_flag_codim is False
    assert report.denominators == (4,)
    assert report.decomposable is False
    data = report_to_json_dict(report)
    assert data["polygon"] == "4*(1/4)+4*(3/4)"
    assert data["codim"] == 4


def test_report_rejects_height_mismatch():
    with pytest.raises(ValueError):
        stratum_report(3, sigma(4))


# -- exports ------------------------------------------------------------------------

def test_dot_output_is_deterministic_and_complete():
    a = to_dot(build_poset(4))
    b = to_dot(build_poset(4))
    assert a == b
    assert a.count("[label=") == 8
    assert a.count("->") == 8
    assert a.startswith("digraph newton_poset_g4 {")


def test_dot_genus_one():
    text = to_dot(build_poset(1))
    assert text.count("[label=") == 2
    assert text.count("->") == 1


def test_dot_node_count_matches_enumeration():
    assert to_dot(build_poset(3)).count("[label=") == len(enumerate_symmetric(3))


def test_json_dump_shape():
    data = poset_to_json_dict(build_poset(2))
    assert data["g"] == 2
    assert data["nodes"] == ["2*(0/1)+2*(1/1)", "1*(0/1)+2*(1/2)+1*(1/1)", "4*(1/2)"]
    assert data["covers"] == [[1, 0], [2, 1]]
    assert data["codim"] == [0, 1, 2]
    assert data["graded"] is True
