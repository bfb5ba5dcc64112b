import csv
import io

import pytest
from hypothesis import given, settings, strategies as st

from holey.grid import Cell, GridError, GridSpec, hole_orbit
from holey.matchgen import count_brute, enumerate_near_perfect, reflect_matching
from holey.profile_dp import (
    ProfileTooLarge,
    count_all_holes,
    count_perfect,
    count_reference,
    count_symmetric_fold,
    count_with_hole,
    heat_csv,
)
from holey.twoadic import decompose


@pytest.mark.parametrize("m, n, expected", [(2, 2, 2), (1, 2, 1), (2, 3, 3), (3, 4, 11), (4, 4, 36), (8, 8, 12988816)])
def test_count_perfect(m, n, expected):
    assert count_perfect(m, n) == expected
    assert count_perfect(n, m) == expected


def test_count_perfect_odd_area_and_empty():
    assert count_perfect(3, 3) == 0
    assert count_perfect(5, 0) == 1


@pytest.mark.parametrize(
    "r, c, hole, expected",
    [(3, 3, Cell(2, 2), 2), (3, 3, Cell(1, 1), 4), (3, 5, Cell(1, 1), 15), (1, 1, Cell(1, 1), 1),
     (3, 3, Cell(1, 2), 0)],
)
def test_count_with_hole(r, c, hole, expected):
    assert count_with_hole(GridSpec(r, c), hole) == expected


def test_center_of_5x5_is_four_times_odd_square():
    value = count_with_hole(GridSpec(5, 5), Cell(3, 3))
    assert value == count_brute(GridSpec(5, 5), Cell(3, 3)) == 196
    assert value == 4 * 7**2


def test_count_with_hole_needs_odd_grid():
    with pytest.raises(GridError):
        count_with_hole(GridSpec(4, 5), Cell(1, 1))
    with pytest.raises(GridError):
        count_with_hole(GridSpec(3, 3), Cell(4, 1))


def test_count_all_holes_small():
    counts, total = count_all_holes(GridSpec(1, 1))
    assert counts == {Cell(1, 1): 1} and total == 1
    counts, total = count_all_holes(GridSpec(3, 3))
    assert counts == {Cell(1, 1): 4, Cell(1, 3): 4, Cell(2, 2): 2, Cell(3, 1): 4, Cell(3, 3): 4}
    assert total == 18


def test_count_all_holes_5x5():
    counts, total = count_all_holes(GridSpec(5, 5))
    brute = sum(count_brute(GridSpec(5, 5), h) for h in GridSpec(5, 5).white_cells())
    assert total == brute == 2180
    t = decompose(total)
    assert t.valuation == 2 and t.odd_part % 2 == 1


def test_count_all_holes_jobs_do_not_change_results():
    assert count_all_holes(GridSpec(7, 9), jobs=3) == count_all_holes(GridSpec(7, 9), jobs=1)


@pytest.mark.parametrize("r, c", [(1, 1), (1, 5), (3, 3), (3, 5), (5, 3), (5, 5), (5, 7), (7, 5)])
def test_matches_brute_force(r, c):
    spec = GridSpec(r, c)
    for h in spec.cells():
        assert count_with_hole(spec, h) == count_brute(spec, h), h


@pytest.mark.parametrize("m", range(1, 7))
def test_count_perfect_matches_brute_force(m):
    for n in range(1, 7):
        assert count_perfect(m, n) == count_brute(GridSpec(m, n))


@pytest.mark.parametrize("r, c", [(5, 5), (5, 9), (7, 7), (9, 9), (3, 9)])
def test_orbit_invariance(r, c):
    spec = GridSpec(r, c)
    for h in spec.white_cells():
        value = count_with_hole(spec, h)
        for g in hole_orbit(spec, h):
            assert count_with_hole(spec, g) == value


@pytest.mark.parametrize("backend", ["numba", "numpy"])
@pytest.mark.parametrize("r, c, hole", [(9, 11, Cell(4, 6)), (11, 5, Cell(3, 3)), (13, 13, Cell(7, 7)), (7, 15, Cell(1, 1))])
def test_backends_match_reference(backend, r, c, hole):
    assert count_with_hole(GridSpec(r, c), hole, backend=backend) == count_reference(r, c, hole)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 12), st.data())
def test_reference_and_kernel_agree(r2, c2, data):
    r, c = 2 * (r2 // 2) + 1, 2 * (c2 // 2) + 1
    spec = GridSpec(r, c)
    h = data.draw(st.sampled_from(list(spec.cells())))
    expected = count_reference(r, c, h) if h.is_white else 0
    assert count_with_hole(spec, h) == expected


@pytest.mark.parametrize("r, c, expected", [(3, 5, 3), (1, 5, 1), (7, 5, 21)])
def test_symmetric_fold(r, c, expected):
    spec = GridSpec(r, c)
    h = Cell(1, (c + 1) // 2)
    assert count_symmetric_fold(spec, h) == expected
    symmetric = sum(1 for m in enumerate_near_perfect(spec, h) if reflect_matching(spec, m, "vertical") == m)
    assert symmetric == expected
    assert count_with_hole(spec, h) % 2 == expected % 2


def test_symmetric_fold_rejects_other_holes():
    with pytest.raises(GridError):
        count_symmetric_fold(GridSpec(3, 5), Cell(1, 1))


def test_profile_guard(monkeypatch):
    monkeypatch.setenv("HOLEY_MAX_PROFILE", "4")
    with pytest.raises(ProfileTooLarge, match="profile"):
        count_with_hole(GridSpec(5, 5), Cell(1, 1))
    assert count_with_hole(GridSpec(3, 9), Cell(1, 1)) == count_brute(GridSpec(3, 9), Cell(1, 1))


def test_determinism():
    first = count_all_holes(GridSpec(9, 9))
    assert count_all_holes(GridSpec(9, 9)) == first


def test_heat_csv():
    counts, _ = count_all_holes(GridSpec(3, 3))
    rows = list(csv.DictReader(io.StringIO(heat_csv(counts))))
    assert list(rows[0]) == ["row", "col", "count", "v2", "odd_part"]
    assert rows[2] == {"row": "2", "col": "2", "count": "2", "v2": "1", "odd_part": "1"}
    assert heat_csv({Cell(1, 2): 0}).splitlines()[1] == "1,2,0,inf,0"
