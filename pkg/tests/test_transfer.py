"""Energy transfer functions and the half-power cutoff."""

import math

import numpy as np
import pytest

from ekz.window import BoundaryPolicy, FilterSpec, ekz_coefficients
from spectral.transfer import (
    TransferKind,
    closed_form_curve,
    cutoff_half_power,
    etf_closed_form,
    etf_exact,
    exact_curve,
    frequency_grid,
    log_transfer,
)
from utils.errors import DomainError


# ---------------------------------------------------------------------------
# Closed form
# ---------------------------------------------------------------------------

def test_closed_form_is_one_at_zero():
    assert etf_closed_form(7, 3, 0.0) == 1.0
    assert etf_closed_form(math.pi, 2, 0.0) == 1.0


def test_closed_form_scalar_and_array():
    assert isinstance(etf_closed_form(3, 1, 0.1), float)
    values = etf_closed_form(3, 1, np.array([0.0, 0.1, 0.2]))
    assert values.shape == (3,)


@pytest.mark.parametrize("k", range(1, 7))
def test_kz_seven_zero_at_harmonics(k):
    for j in (1, 2, 3):
        assert etf_closed_form(7, k, j / 7) == pytest.approx(0.0, abs=1e-20)


@pytest.mark.parametrize("lam", [-0.01, 0.51, float("nan")])
def test_frequency_outside_range(lam):
    with pytest.raises(DomainError):
        etf_closed_form(3, 1, lam)


def test_closed_form_bounded_and_decreasing_in_k():
    lam = frequency_grid(512)
    previous = np.ones_like(lam)
    for k in range(1, 6):
        values = etf_closed_form(7, k, lam)
        assert np.all(values >= 0) and np.all(values <= 1 + 1e-15)
        assert np.all(values <= previous + 1e-15)
        previous = values


# ---------------------------------------------------------------------------
# Exact ETF
# ---------------------------------------------------------------------------

def test_exact_two_one_zero_at_nyquist():
    curve = etf_exact(ekz_coefficients(2, 1), np.array([0.5]))
    assert abs(curve.values[0]) <= 1e-18
    assert curve.kind is TransferKind.EXACT


def test_exact_four_one_zero_set():
    curve = etf_exact(ekz_coefficients(4, 1), np.array([0.25, 0.5]))
    assert np.all(np.abs(curve.values) <= 1e-18)


def test_exact_identity_is_flat():
    curve = exact_curve(FilterSpec(1, 1), frequency_grid(64))
    np.testing.assert_allclose(curve.values, 1.0)


def test_exact_is_one_at_zero():
    for m_r in (1.5, 2.75, math.pi, 10.25):
        curve = exact_curve(FilterSpec(m_r, 3), np.array([0.0]))
        assert curve.values[0] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [3, 5, 7])
def test_exact_agrees_with_closed_form_for_odd_windows(m, k):
    grid = frequency_grid(2048)
    spec = FilterSpec(m, k)
    gap = np.max(np.abs(exact_curve(spec, grid).values - closed_form_curve(spec, grid).values))
    assert gap < 1e-10


@pytest.mark.parametrize("m_r", [2.5, math.pi, 4.5])
def test_closed_form_is_only_approximate_for_real_windows(m_r):
    grid = frequency_grid(2048)
    spec = FilterSpec(m_r, 1)
    gap = np.max(np.abs(exact_curve(spec, grid).values - closed_form_curve(spec, grid).values))
    assert gap > 1e-4


def test_exact_curve_keeps_boundary_spec():
    spec = FilterSpec(2, 1, BoundaryPolicy.RENORMALIZE)
    assert exact_curve(spec, frequency_grid(8)).spec is spec


def test_large_window_stays_in_range():
    curve = exact_curve(FilterSpec(365.256363004, 3), frequency_grid(257))
    assert np.all(curve.values >= 0)
    assert np.all(curve.values <= 1 + 1e-12)


# ---------------------------------------------------------------------------
# Grid, columns and log scale
# ---------------------------------------------------------------------------

def test_frequency_grid_default_and_extras(isolated_config):
    assert frequency_grid().size == 1024
    grid = frequency_grid(11, extra=[1 / 7, 0.25])
    assert grid[0] == 0.0 and grid[-1] == 0.5
    assert 1 / 7 in grid
    assert np.all(np.diff(grid) > 0)


def test_frequency_grid_needs_two_points():
    with pytest.raises(DomainError):
        frequency_grid(1)


def test_column_names():
    grid = frequency_grid(4)
    assert exact_curve(FilterSpec(2, 1), grid).column_name() == "ekz_m2_k1_exact"
    assert closed_form_curve(FilterSpec(7, 3), grid).column_name() == "kz_m7_k3_closed-form"
    assert log_transfer(exact_curve(FilterSpec(2, 1), grid)).column_name() == "log_ekz_m2_k1_exact"


def test_log_transfer_uses_floor():
    curve = exact_curve(FilterSpec(2, 1), np.array([0.0, 0.5]))
    logged = log_transfer(curve)
    assert logged.values[0] == pytest.approx(0.0, abs=1e-12)
    assert logged.values[1] == pytest.approx(math.log(1e-300))
    assert log_transfer(curve, floor=1e-10).values[1] == pytest.approx(math.log(1e-10))
    with pytest.raises(DomainError):
        log_transfer(curve, floor=0.0)


def test_value_at_nearest():
    curve = closed_form_curve(FilterSpec(3, 1), frequency_grid(101))
    assert curve.value_at(0.0) == 1.0


# ---------------------------------------------------------------------------
# Half-power cutoff
# ---------------------------------------------------------------------------

def test_cutoff_seven_one():
    assert cutoff_half_power(7, 1) == pytest.approx(0.0607, abs=5e-4)


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("m", [5, 7, 15, 51])
def test_cutoff_is_near_half_power(m, k):
    value = etf_closed_form(m, k, cutoff_half_power(m, k))
    assert 0.45 <= value <= 0.55


def test_cutoff_shrinks_with_window():
    values = [cutoff_half_power(m, 2) for m in (1.5, 2, 3, 5.5, 9, 25)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_cutoff_shrinks_with_iterations():
    values = [cutoff_half_power(7, k) for k in range(1, 6)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_identity_has_no_cutoff():
    with pytest.raises(DomainError):
        cutoff_half_power(1, 1)


def test_closed_form_hand_value():
    assert etf_closed_form(3, 1, 0.5) == pytest.approx(1 / 9, rel=1e-14)


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_odd_window_zero_set(m):
    harmonics = np.array([j / m for j in range(1, m // 2 + 1)])
    for k in (1, 2, 3):
        assert np.all(np.abs(exact_curve(FilterSpec(m, k), harmonics).values) <= 1e-18)


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10])
def test_even_window_zero_set(m):
    harmonics = np.array([j / m for j in range(1, m // 2 + 1)])
    for k in (1, 2):
        assert np.all(np.abs(exact_curve(FilterSpec(m, k), harmonics).values) <= 1e-18)


@pytest.mark.parametrize("m_r", [2.5, 2.75, math.pi, 1 / 0.26, 4.5, 6.2, 9.9])
def test_non_integer_window_strong_but_incomplete(m_r):
    lam = np.array([1 / m_r])
    values = [exact_curve(FilterSpec(m_r, k), lam).values[0] for k in (1, 2, 3)]
    assert 0 < values[0] < 0.02
    assert values[0] > values[1] > values[2] > 0


def test_one_over_point_two_six_not_annihilated():
    value = etf_exact(ekz_coefficients(1 / 0.26, 1), np.array([0.26])).values[0]
    assert value > 0


def test_exact_seven_two_zero_at_one_seventh():
    assert etf_exact(ekz_coefficients(7, 2), np.array([1 / 7])).values[0] <= 1e-20


@pytest.mark.parametrize("m_r", [2, 2.75, math.pi, 7])
def test_exact_monotone_in_k_and_unit_dc(m_r):
    grid = frequency_grid(1024)
    previous = None
    for k in range(1, 6):
        values = exact_curve(FilterSpec(m_r, k), grid).values
        assert values[0] == pytest.approx(1.0, abs=1e-12)
        assert np.all(values >= 0) and np.all(values <= 1 + 1e-9)
        if previous is not None:
            assert np.all(values <= previous + 1e-12)
        previous = values
