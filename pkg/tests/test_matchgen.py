import json

import pytest

from holey.grid import Cell, GridError, GridSpec
from holey.matchgen import (
    Domino,
    EnumerationLimitExceeded,
    Matching,
    count_brute,
    enumerate_near_perfect,
    enumerate_perfect,
    parse_matching,
    reflect_matching,
    union_decompose,
    verify_reflection_structure,
)


def D(r1, c1, r2, c2):
    return Domino(Cell(r1, c1), Cell(r2, c2))


def test_domino_canonical_order():
    assert D(1, 3, 1, 2) == D(1, 2, 1, 3)
    assert D(1, 3, 1, 2).a == Cell(1, 2)
    with pytest.raises(GridError):
        D(1, 1, 2, 2)


def test_single_cell_board_has_empty_matching():
    ms = list(enumerate_near_perfect(GridSpec(1, 1), Cell(1, 1)))
    assert ms == [Matching(frozenset(), Cell(1, 1))]


def test_center_hole_of_3x3_is_the_ring():
    ms = list(enumerate_near_perfect(GridSpec(3, 3), Cell(2, 2)))
    # the 8 boundary cells form a cycle, which has exactly two perfect matchings
    assert len(ms) == 2
    assert ms[0].dominoes.isdisjoint(ms[1].dominoes)


def test_black_hole_yields_nothing():
    assert list(enumerate_near_perfect(GridSpec(3, 3), Cell(1, 2))) == []
    assert count_brute(GridSpec(3, 3), Cell(1, 2)) == 0


@pytest.mark.parametrize(
    "r, c, hole, expected",
    [(3, 3, Cell(1, 1), 4), (3, 5, Cell(1, 1), 15), (3, 3, Cell(2, 2), 2), (1, 5, Cell(1, 3), 1)],
)
def test_count_brute(r, c, hole, expected):
    assert count_brute(GridSpec(r, c), hole) == expected


@pytest.mark.parametrize("m, n, expected", [(2, 2, 2), (1, 2, 1), (2, 3, 3), (3, 4, 11), (4, 4, 36)])
def test_count_brute_perfect(m, n, expected):
    assert count_brute(GridSpec(m, n)) == expected
    assert sum(1 for _ in enumerate_perfect(GridSpec(m, n))) == expected


def test_enumeration_is_valid_distinct_and_ordered():
    spec = GridSpec(5, 5)
    ms = list(enumerate_near_perfect(spec, Cell(2, 4)))
    for m in ms:
        m.validate(spec)
    assert len(set(ms)) == len(ms) == count_brute(spec, Cell(2, 4))
    again = list(enumerate_near_perfect(spec, Cell(2, 4)))
    assert again == ms


def test_enumeration_cap():
    with pytest.raises(EnumerationLimitExceeded):
        list(enumerate_near_perfect(GridSpec(5, 5), Cell(1, 1), cap=10))
    with pytest.raises(EnumerationLimitExceeded):
        count_brute(GridSpec(5, 5), Cell(1, 1), cap=10)


def test_reflect_main_diagonal_example():
    spec = GridSpec(3, 3)
    m = Matching(frozenset({D(1, 2, 1, 3), D(2, 1, 3, 1), D(2, 2, 2, 3), D(3, 2, 3, 3)}), Cell(1, 1))
    expected = Matching(frozenset({D(2, 1, 3, 1), D(1, 2, 1, 3), D(2, 2, 3, 2), D(2, 3, 3, 3)}), Cell(1, 1))
    assert reflect_matching(spec, m, "main_diagonal") == expected


def test_reflect_moves_hole():
    spec = GridSpec(3, 3)
    m = next(enumerate_near_perfect(spec, Cell(1, 3)))
    assert reflect_matching(spec, m, "main_diagonal").hole == Cell(3, 1)


@pytest.mark.parametrize("axis", ["main_diagonal", "anti_diagonal", "vertical", "horizontal"])
def test_reflection_is_an_involution(axis):
    spec = GridSpec(5, 5)
    for m in enumerate_near_perfect(spec, Cell(2, 2)):
        image = reflect_matching(spec, m, axis)
        image.validate(spec)
        assert reflect_matching(spec, image, axis) == m


def test_symmetric_matchings_are_fixed_points():
    spec = GridSpec(3, 5)
    fixed = 0
    for m in enumerate_near_perfect(spec, Cell(1, 3)):
        mirrored = {D(d.a.row, 6 - d.a.col, d.b.row, 6 - d.b.col) for d in m.dominoes}
        is_symmetric = mirrored == set(m.dominoes)
        fixed += is_symmetric
        assert (reflect_matching(spec, m, "vertical") == m) == is_symmetric
    # a 3x2 half-board has 3 tilings
    assert fixed == 3


def test_diagonal_reflection_needs_square():
    spec = GridSpec(3, 5)
    m = next(enumerate_near_perfect(spec, Cell(1, 1)))
    with pytest.raises(GridError):
        reflect_matching(spec, m, "main_diagonal")
    reflect_matching(spec, m, "vertical").validate(spec)


def test_union_decomposition_covers_every_cell():
    spec = GridSpec(5, 5)
    h = Cell(1, 3)
    for m in enumerate_near_perfect(spec, h):
        mp = reflect_matching(spec, m, "main_diagonal")
        dec = union_decompose(spec, m, mp, "main_diagonal")
        cells = [x for comp in dec.components for x in comp.cells]
        assert sorted(cells) == sorted(spec.cells())
        assert dec.path.cells[0] == mp.hole and dec.path.cells[-1] == h
        assert sum(1 for comp in dec.components if comp.kind == "path") == 1
        meeting = [cyc for cyc in dec.cycles if cyc.meets_diagonal]
        assert len(meeting) == 2
        assert all(cyc.symmetric and cyc.meets_diagonal == 2 for cyc in meeting)
        assert dec.path.meets_diagonal == 1


def test_union_has_two_cycles_for_shared_dominoes():
    spec = GridSpec(3, 3)
    for m in enumerate_near_perfect(spec, Cell(1, 3)):
        mp = reflect_matching(spec, m, "main_diagonal")
        dec = union_decompose(spec, m, mp, "main_diagonal")
        shared = m.dominoes & mp.dominoes
        two_cycles = [cyc for cyc in dec.cycles if len(cyc.cells) == 2]
        assert len(two_cycles) == len(shared)
        assert sum(1 for cyc in dec.cycles if cyc.meets_diagonal) == 1


def test_union_decompose_rejects_hole_on_axis():
    spec = GridSpec(3, 3)
    m = next(enumerate_near_perfect(spec, Cell(1, 1)))
    with pytest.raises(GridError):
        union_decompose(spec, m, reflect_matching(spec, m, "main_diagonal"), "main_diagonal")


@pytest.mark.parametrize(
    "n, hole, axis, fiber",
    [(3, Cell(1, 3), "main_diagonal", 2), (5, Cell(1, 3), "main_diagonal", 4), (5, Cell(1, 1), "anti_diagonal", 4)],
)
def test_reflection_structure(n, hole, axis, fiber):
    report = verify_reflection_structure(GridSpec(n, n), hole, axis)
    assert report.passed, report.violations
    assert set(report.fiber_histogram) == {fiber}
    assert report.matchings == fiber * report.fiber_histogram[fiber]


def test_reflection_structure_rejects_axis_hole():
    with pytest.raises(GridError):
        verify_reflection_structure(GridSpec(5, 5), Cell(2, 2), "main_diagonal")
    with pytest.raises(GridError):
        verify_reflection_structure(GridSpec(5, 5), Cell(1, 3), "vertical")


def test_matching_text_round_trip():
    spec = GridSpec(3, 5)
    for m in enumerate_near_perfect(spec, Cell(2, 2)):
        assert parse_matching(m.to_text()) == m
        assert parse_matching(json.dumps(m.to_json())) == m


def test_matching_text_format():
    text = "hole: 1,1\n1,2-1,3\n1,4-1,5\n"
    m = parse_matching(text)
    assert m == Matching(frozenset({D(1, 2, 1, 3), D(1, 4, 1, 5)}), Cell(1, 1))
    assert m.to_text() == text


def test_bare_json_array_infers_hole():
    arr = [[{"row": 1, "col": 2}, {"row": 1, "col": 3}], [{"row": 1, "col": 4}, {"row": 1, "col": 5}]]
    m = parse_matching(json.dumps(arr), GridSpec(1, 5))
    assert m.hole == Cell(1, 1)
