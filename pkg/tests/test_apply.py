"""Filter application: direct and iterated forms, boundaries and helpers."""

import math

import numpy as np
import pytest

from ekz.apply import apply_direct, apply_filter, apply_iterated, esma, kz, neighbouring_kz, residual
from ekz.timeseries import TimeSeries
from ekz.window import BoundaryPolicy, FilterSpec
from simulate.generators import gen_sinusoid
from spectral.transfer import exact_curve
from utils.errors import DataError, DomainError


def sma_valid(values: np.ndarray, m: int) -> np.ndarray:
    return np.convolve(values, np.ones(m) / m, mode="valid")


# ---------------------------------------------------------------------------
# KZ reduction and direct / iterated agreement
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_odd_window_is_repeated_sma(noise_2000, m, k):
    expected = noise_2000.values
    for _ in range(k):
        expected = sma_valid(expected, m)

    out = apply_direct(noise_2000, FilterSpec(m, k))
    h = k * (m - 1) // 2
    np.testing.assert_allclose(out.values[h:len(out) - h], expected, rtol=0, atol=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("m_r", [1.5, 2, 4, math.pi])
def test_direct_equals_iterated(noise_2000, m_r, k):
    spec = FilterSpec(m_r, k)
    direct = apply_direct(noise_2000, spec)
    iterated = apply_iterated(noise_2000, spec)
    np.testing.assert_array_equal(direct.missing, iterated.missing)
    observed = ~direct.missing
    assert np.max(np.abs(direct.values[observed] - iterated.values[observed])) < 1e-10


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("m_r", [1.5, 2, 4, math.pi])
def test_missing_count_per_side(noise_2000, m_r, k):
    spec = FilterSpec(m_r, k)
    out = apply_direct(noise_2000, spec)
    expected = k * (spec.m_o + 1) // 2 if spec.m_d > 0 else k * (spec.m_o - 1) // 2

    assert out.missing[:expected].all()
    assert out.missing[len(out) - expected:].all()
    assert not out.missing[expected:len(out) - expected].any()
    assert out.n_missing == 2 * expected


def test_identity_filter(noise_2000):
    out = apply_direct(noise_2000, FilterSpec(1, 3))
    np.testing.assert_array_equal(out.values, noise_2000.values)


def test_constant_input_gives_constant_interior():
    x = TimeSeries.from_values(np.full(300, 7.25))
    out = apply_direct(x, FilterSpec(math.pi, 3))
    interior = out.interior().values
    np.testing.assert_allclose(interior, 7.25, rtol=1e-14)


def test_output_keeps_length_and_grid():
    x = TimeSeries.from_values(np.arange(50.0), time_step=6.0, label="raw")
    out = apply_filter(x, FilterSpec(4, 2))
    assert len(out) == 50
    assert out.time_step == 6.0
    assert out.label == "ekz_m4_k2"


def test_linear_trend_passes_through():
    # symmetric windows leave a straight line unchanged
    x = TimeSeries.from_values(2.0 * np.arange(200) + 1.0)
    out = apply_direct(x, FilterSpec(2.75, 3))
    observed = ~out.missing
    np.testing.assert_allclose(out.values[observed], x.values[observed], rtol=1e-12)


# ---------------------------------------------------------------------------
# Exact annihilation at integer periods
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 3])
@pytest.mark.parametrize("p", [2, 4, 7, 12])
def test_integer_period_removed(p, k):
    amplitude = 3.0
    for j in range(1, p // 2 + 1):
        wave = gen_sinusoid(10_000, p / j, amplitude, phase=0.3)
        out = apply_direct(wave, FilterSpec(p, k)).interior().values
        assert out.max() - out.min() < 1e-8 * amplitude, f"period {p}/{j}"


# ---------------------------------------------------------------------------
# Missing data and boundary policies
# ---------------------------------------------------------------------------

def test_gap_spreads_by_half_width():
    values = np.arange(40.0)
    values[20] = np.nan
    x = TimeSeries.from_values(values)
    spec = FilterSpec(3, 2)          # half-width 2
    out = apply_direct(x, spec)
    assert out.missing[18:23].all()
    assert not out.missing[17]
    assert not out.missing[23]


def test_renormalize_fills_edges():
    x = TimeSeries.from_values(np.full(30, 4.0))
    out = apply_direct(x, FilterSpec(2, 2, BoundaryPolicy.RENORMALIZE))
    assert out.fully_observed
    np.testing.assert_allclose(out.values, 4.0, rtol=1e-14)


def test_renormalize_matches_full_window_inside(noise_2000):
    spec = FilterSpec(2.75, 2)
    plain = apply_direct(noise_2000, spec)
    renorm = apply_direct(noise_2000, FilterSpec(2.75, 2, BoundaryPolicy.RENORMALIZE))
    observed = ~plain.missing
    np.testing.assert_allclose(renorm.values[observed], plain.values[observed], atol=1e-12)


def test_renormalize_at_edge_uses_applied_weights():
    x = TimeSeries.from_values([1.0, 2.0, 3.0, 4.0])
    out = apply_direct(x, FilterSpec(3, 1, BoundaryPolicy.RENORMALIZE))
    assert out.values[0] == pytest.approx(1.5)
    assert out.values[1] == pytest.approx(2.0)
    assert out.values[3] == pytest.approx(3.5)


def test_renormalize_keeps_isolated_gap_surrounded():
    values = np.ones(20)
    values[10] = np.nan
    out = apply_direct(TimeSeries.from_values(values), FilterSpec(3, 1, BoundaryPolicy.RENORMALIZE))
    assert out.fully_observed
    np.testing.assert_allclose(out.values, 1.0)


def test_renormalize_leaves_long_gap_missing():
    values = np.ones(30)
    values[10:20] = np.nan
    out = apply_direct(TimeSeries.from_values(values), FilterSpec(3, 1, BoundaryPolicy.RENORMALIZE))
    assert out.missing[12:18].all()
    assert not out.missing[10]


def test_series_shorter_than_window_is_all_missing():
    x = TimeSeries.from_values(np.ones(5))
    out = apply_direct(x, FilterSpec(7, 2))
    assert out.n_missing == 5


# ---------------------------------------------------------------------------
# Convenience wrappers
# ---------------------------------------------------------------------------

def test_esma_is_single_pass(noise_2000):
    np.testing.assert_array_equal(esma(noise_2000, 2.5).values,
                                  apply_direct(noise_2000, FilterSpec(2.5, 1)).values)


def test_kz_requires_odd_integer(noise_2000):
    assert kz(noise_2000, 5, 2).label == "kz_m5_k2"
    for bad in (4, 4.5, 0):
        with pytest.raises(DomainError):
            kz(noise_2000, bad, 1)


def test_residual_adds_back_to_input(noise_2000):
    spec = FilterSpec(4, 2)
    smooth = apply_direct(noise_2000, spec)
    rest = residual(noise_2000, spec)
    assert rest.label == "residual_ekz_m4_k2"
    observed = ~rest.missing
    np.testing.assert_allclose(smooth.values[observed] + rest.values[observed],
                               noise_2000.values[observed], atol=1e-12)


def test_residual_keeps_period_four_cycle():
    wave = gen_sinusoid(400, 4.0, 2.0)
    rest = residual(wave, FilterSpec(4, 1))
    observed = ~rest.missing
    np.testing.assert_allclose(rest.values[observed], wave.values[observed], atol=1e-12)


@pytest.mark.parametrize("m_r, expected", [
    (2, [1, 3]),
    (4, [3, 5]),
    (1.5, [1, 3]),
    (365.256363004, [365, 367]),
    (5, [3, 7]),
    (1, [3]),
])
def test_neighbouring_kz(m_r, expected):
    specs = neighbouring_kz(FilterSpec(m_r, 2, BoundaryPolicy.RENORMALIZE))
    assert [s.m_r for s in specs] == expected
    assert all(s.k == 2 and s.boundary is BoundaryPolicy.RENORMALIZE for s in specs)


# ---------------------------------------------------------------------------
# TimeSeries
# ---------------------------------------------------------------------------

def test_timeseries_validation():
    with pytest.raises(DataError):
        TimeSeries(np.array([1.0, 2.0]), np.array([False]))
    with pytest.raises(DataError):
        TimeSeries(np.array([1.0, np.inf]), np.array([False, False]))
    with pytest.raises(DataError):
        TimeSeries(np.array([]), np.array([], dtype=bool))
    with pytest.raises(DomainError):
        TimeSeries.from_values([1.0], time_step=0.0)


def test_timeseries_is_read_only():
    x = TimeSeries.from_values([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        x.values[0] = 5.0


def test_longest_observed_run():
    x = TimeSeries.from_values([np.nan, 1, 2, np.nan, 3, 4, 5, np.nan])
    assert x.longest_observed_run() == (4, 7)
    interior = x.interior()
    assert interior.values.tolist() == [3.0, 4.0, 5.0]
    assert interior.origin == 4


def test_interior_of_all_missing():
    x = TimeSeries.from_values([np.nan, np.nan])
    assert x.longest_observed_run() == (0, 0)
    with pytest.raises(DataError):
        x.interior()


# ---------------------------------------------------------------------------
# Impulse responses, linearity and near-annihilation
# ---------------------------------------------------------------------------

def impulse(n=11, at=5):
    values = np.zeros(n)
    values[at] = 1.0
    return TimeSeries.from_values(values)


def test_impulse_response_one_and_a_half():
    out = apply_direct(impulse(), FilterSpec(1.5, 1)).values
    np.testing.assert_allclose(out[4:7], [1 / 6, 2 / 3, 1 / 6], rtol=1e-12)
    np.testing.assert_array_equal(out[1:4], 0.0)


def test_esma_impulse_even_window():
    out = esma(impulse(), 2).values
    np.testing.assert_allclose(out[4:7], [0.25, 0.5, 0.25], rtol=1e-12)


def test_single_pass_iterated_equals_direct(noise_2000):
    spec = FilterSpec(2.75, 1, BoundaryPolicy.RENORMALIZE)
    np.testing.assert_array_equal(apply_iterated(noise_2000, spec).values, apply_direct(noise_2000, spec).values)


def test_period_four_three_passes():
    wave = gen_sinusoid(400, 4.0, 5.0, phase=0.7)
    shifted = wave.with_values(wave.values + 2.0)
    out = apply_iterated(shifted, FilterSpec(4, 3)).interior().values
    np.testing.assert_allclose(out, 2.0, atol=1e-12)


def test_linearity(noise_2000):
    other = gen_sinusoid(len(noise_2000), 17.3, 2.0)
    spec = FilterSpec(5.5, 2)
    combined = noise_2000.with_values(1.5 * noise_2000.values - 0.25 * other.values)
    left = apply_direct(combined, spec).values
    right = 1.5 * apply_direct(noise_2000, spec).values - 0.25 * apply_direct(other, spec).values
    observed = ~np.isnan(left)
    np.testing.assert_allclose(left[observed], right[observed], rtol=0, atol=1e-10)


def test_near_annihilation_off_integer():
    m_r = 1 / 0.26
    amplitude = 4.0
    wave = gen_sinusoid(20_000, m_r, amplitude)
    out = apply_direct(wave, FilterSpec(m_r, 1)).interior().values
    reduction = (np.max(np.abs(out)) / amplitude) ** 2
    etf = exact_curve(FilterSpec(m_r, 1), np.array([0.26])).values[0]
    assert 0 < reduction <= etf + 1e-6
    assert reduction > 0.5 * etf
