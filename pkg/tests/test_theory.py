import csv

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from svqaoa.errors import InvalidArgumentError
from svqaoa.theory import (
    CURVE_HEADER,
    dephasing_sum,
    ratio_curves,
    ratio,
    ratio_dephasing,
    ratio_depolarizing,
    ratio_single_depol_bitflip,
    ratio_single_depol_swap,
    script_f_printed,
    script_f_sum,
    write_curves_csv,
)


def test_single_error_examples():
    assert ratio_single_depol_bitflip(0.3) == pytest.approx(1.25)
    assert ratio_single_depol_bitflip(0.75) == pytest.approx(2.0)
    assert ratio_single_depol_swap(0.3) == pytest.approx(1 / 0.9)
    assert ratio_dephasing(1, 1, 0.1) == pytest.approx(2 / 1.8)
    assert script_f_sum(1, 0.3) == pytest.approx(1 - 0.2)


@pytest.mark.parametrize("n", range(1, 12))
@pytest.mark.parametrize("p", [0.0, 0.02, 0.3, 0.75, 1.0])
def test_sums_match_closed_forms(n, p):
    assert script_f_sum(n, p) == pytest.approx(0.5 * (1 + (1 - 4 * p / 3) ** n), abs=1e-13)
    assert dephasing_sum(n, p) == pytest.approx(0.5 * (1 + (1 - 2 * p) ** n), abs=1e-13)


@pytest.mark.parametrize("n", [2, 4, 6, 10, 20])
@pytest.mark.parametrize("p", [0.01, 0.1, 0.4])
def test_printed_form_agrees_for_even_n(n, p):
    assert script_f_printed(n, p) == pytest.approx(script_f_sum(n, p), abs=1e-12)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_printed_form_deviates_for_odd_n(n):
    p = 0.3
    expected = 0.5 * ((1 - 2 * p) ** n + (1 - 4 * p / 3) ** n)
    assert script_f_printed(n, p) == pytest.approx(expected, abs=1e-12)
    assert abs(script_f_printed(n, p) - script_f_sum(n, p)) > 0.1


def test_large_n_is_finite():
    assert script_f_sum(600, 0.05) == pytest.approx(0.5, abs=1e-12)
    assert ratio_depolarizing(60, 6, 0.1) == pytest.approx(2.0)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6), st.floats(0, 0.75))
def test_depolarizing_bounds(n, d, p):
    r = ratio_depolarizing(n, d, p)
    assert 1 - 1e-12 <= r <= 2 + 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6), st.floats(0, 0.5))
def test_dephasing_bounds(n, d, p):
    r = ratio_dephasing(n, d, p)
    assert 1 - 1e-12 <= r <= 2 + 1e-12


def test_bound_fails_beyond_threshold_for_odd_weight():
    # (1 - 4p/3)^{Nd} < 0 for odd Nd once p > 3/4
    assert ratio_depolarizing(1, 1, 0.9) > 2
    assert ratio_dephasing(3, 1, 0.8) > 2


def test_monotone_in_depth_and_rate():
    ps = np.linspace(0, 0.5, 26)
    for channel in ("depolarizing", "dephasing"):
        for n in (2, 5):
            grid = np.array([[ratio(channel, n, d, p) for p in ps] for d in range(1, 7)])
            assert np.all(np.diff(grid, axis=0) >= -1e-12)
            assert np.all(np.diff(grid, axis=1) >= -1e-12)


def test_argument_checks():
    with pytest.raises(InvalidArgumentError):
        script_f_sum(0, 0.1)
    with pytest.raises(InvalidArgumentError):
        ratio_depolarizing(3, 1, 1.5)
    with pytest.raises(InvalidArgumentError):
        ratio("amplitude", 3, 1, 0.1)


def test_curves(tmp_path):
    pts = ratio_curves()
    assert len(pts) == 6 * 21
    assert [(pt.d, pt.p) for pt in pts] == sorted((pt.d, pt.p) for pt in pts)
    assert all(pt.script_f == pytest.approx(1 / pt.ratio) for pt in pts)
    path = tmp_path / "curves.csv"
    write_curves_csv(pts, path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == CURVE_HEADER and len(rows) == len(pts) + 1
    assert float(rows[-1][4]) == pts[-1].ratio
