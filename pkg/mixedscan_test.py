import csv
import io

import numpy as np
import pytest

from errors import DomainError
from gamedef import HawkDoveParams, hawk_dove_game
from mixedscan import (Surface, exact_region_boundary, grid_argmax, grid_max, grid_scan, grid_to_csv,
                       hd_mixed_payoff, lattice, pd_mixed_payoff, region_above, region_to_csv)
from qscheme import BELL_PLUS, mw_mixed_payoff, payoff_operators


def test_lattice_is_exact():
    axis = lattice(11)
    assert axis[8] == 0.8
    assert axis[0] == 0.0 and axis[-1] == 1.0
    with pytest.raises(DomainError):
        lattice(1)


def test_hawk_dove_surface_corners():
    assert hd_mixed_payoff(1, 1) == -5
    assert hd_mixed_payoff(1, 0) == 25
    assert hd_mixed_payoff(0, 1) == 25
    assert hd_mixed_payoff(0, 0) == -5
    assert hd_mixed_payoff(0.8, 0.1) == pytest.approx(17.2)


def test_prisoners_dilemma_surface_corners():
    assert pd_mixed_payoff(1, 1) == 2
    assert pd_mixed_payoff(1, 0) == 2.5
    assert pd_mixed_payoff(0, 0) == 2


@pytest.mark.parametrize("p,q", [(-0.1, 0.5), (0.5, 1.1)])
def test_probabilities_out_of_range(p, q):
    with pytest.raises(DomainError):
        hd_mixed_payoff(p, q)
    with pytest.raises(DomainError):
        pd_mixed_payoff(p, q)


def test_general_hawk_dove_uses_density_oracle():
    params = HawkDoveParams(v=4, i=6, d=1)
    ops = payoff_operators(hawk_dove_game(params))
    surface = Surface.hawk_dove(params)
    grid = grid_scan(surface, 5)
    for p, q, a, b in grid.rows():
        expected = mw_mixed_payoff(ops, BELL_PLUS, p, q)
        assert (a, b) == pytest.approx(expected, abs=1e-12)
    assert surface.payoff(0.25, 0.5) == pytest.approx(mw_mixed_payoff(ops, BELL_PLUS, 0.25, 0.5))


def test_grid_scan_order_and_max():
    grid = grid_scan(Surface.hawk_dove(), 101)
    assert len(grid.cells) == 101 * 101
    assert grid.at(0, 1)[:2] == (0.0, 0.01)
    assert grid.at(1, 0)[:2] == (0.01, 0.0)
    assert grid_max(grid) == 25
    assert sorted(grid_argmax(grid)) == [(0.0, 1.0), (1.0, 0.0)]


def test_prisoners_dilemma_maximum():
    grid = grid_scan(Surface.prisoners_dilemma(), 101)
    assert grid_max(grid) == pytest.approx(2.5)
    assert sorted(grid_argmax(grid)) == [(0.0, 1.0), (1.0, 0.0)]


def test_region_has_two_mirror_lobes():
    region = region_above(Surface.hawk_dove(), 15, 201)
    lower = region.lobe("p>q")
    upper = region.lobe("q>p")
    assert len(lower) + len(upper) == len(region)
    assert sorted(lower.members) == sorted((q, p) for p, q in upper.members)
    with pytest.raises(DomainError):
        region.lobe("diagonal")


def test_region_lobe_fits_box_at_full_resolution():
    region = region_above(Surface.hawk_dove(), 15, 1001)
    lobe = region.lobe("p>q")
    p_min, p_max, q_min, q_max = lobe.bounding_box()
    assert p_min > 0.6656
    assert p_max == 1.0
    assert q_min == 0.0
    assert q_max < 0.34
    assert all(p > 0.6656 for p, _ in lobe.members)
    assert region.contains(0.8, 0.1)
    assert not region.contains(0.5, 0.5)


def test_region_boundary_matches_lattice():
    region = region_above(Surface.hawk_dove(), 15, 101)
    for p, q in region.lobe("p>q").members:
        assert q < exact_region_boundary(p) + 1e-12


def test_empty_region():
    region = region_above(Surface.hawk_dove(), 1000, 11)
    assert len(region) == 0
    assert region.bounding_box() is None
    assert not region.contains(0.5, 0.5)
    assert region_to_csv(region) == "p,q,payoff_a,payoff_b\n"


def test_grid_csv():
    text = grid_to_csv(grid_scan(Surface.hawk_dove(), 2))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["p", "q", "payoff_a", "payoff_b"]
    assert rows[1:] == [["0", "0", "-5", "-5"], ["0", "1", "25", "25"],
                        ["1", "0", "25", "25"], ["1", "1", "-5", "-5"]]
    assert text == grid_to_csv(grid_scan(Surface.hawk_dove(), 2))


def test_csv_keeps_shortest_round_trip():
    text = grid_to_csv(grid_scan(Surface.prisoners_dilemma(), 11))
    row = text.splitlines()[1 + 8 * 11 + 1]
    assert row.startswith("0.8,0.1,")
    assert np.isclose(float(row.split(",")[2]), 0.5 * (4 - 2 * 0.08 + 0.9))


@pytest.mark.parametrize("surface", [Surface.hawk_dove(), Surface.prisoners_dilemma(),
                                     Surface.hawk_dove(HawkDoveParams(v=4, i=6, d=1))])
def test_surface_is_symmetric_under_swapping_players(surface):
    grid = grid_scan(surface, 21)
    for i in range(21):
        for j in range(21):
            _, _, a, b = grid.at(i, j)
            _, _, a_t, _ = grid.at(j, i)
            assert a == pytest.approx(a_t, abs=1e-12)
            assert a == pytest.approx(b, abs=1e-12)


def test_region_shrinks_as_threshold_rises():
    surface = Surface.hawk_dove()
    previous = None
    for threshold in (-10, 0, 10, 15, 20, 24.9):
        members = set(region_above(surface, threshold, 51).members)
        if previous is not None:
            assert members <= previous
        previous = members
