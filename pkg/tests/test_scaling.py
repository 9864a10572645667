import numpy as np
import pytest

from filterwave.filters import builtin_filter, laurent_filter
from filterwave.scaling import (
    ExtentError,
    LineFunction,
    LineGrid,
    format_line_function,
    normalization_residual,
    parse_line_function,
    recursion_residual,
    scaling_product,
    truncated_product,
)


def viete(x):
    """Oracle: prod_n (1 + e^{2 pi i x / 2^n}) / 2 = e^{pi i x} sin(pi x) / (pi x)."""
    x = np.asarray(x, dtype=float)
    return np.exp(1j * np.pi * x) * np.sinc(x)


def test_grid_layout():
    g = LineGrid(1 / 4, 2)
    assert g.size == 16
    np.testing.assert_array_equal(g.points, np.arange(-8, 8) / 4)
    assert list(g.index([-2, 0, 0.125, 1.75, 2])) == [0, 8, -1, 15, 16]


@pytest.mark.parametrize("step,extent", [(0.3, 3), (3 / 4, 3), (2.0, 4), (1 / 4, 1 / 8)])
def test_grid_rejects_non_dyadic(step, extent):
    with pytest.raises(ValueError):
        LineGrid(step, extent)


def test_line_function_inner_is_rectangle_rule():
    g = LineGrid(1 / 8, 1)
    f = LineFunction(g, np.ones(g.size))
    assert f.norm() == pytest.approx(np.sqrt(2))
    assert f.inner(f) == pytest.approx(2)
    with pytest.raises(ValueError):
        f.inner(LineFunction(LineGrid(1 / 4, 1), np.ones(8)))


def test_sample_off_grid_without_evaluator():
    g = LineGrid(1 / 8, 1)
    f = LineFunction(g, np.arange(g.size))
    assert f.at(-1.0) == 0 and f.at(0.875) == 15
    with pytest.raises(ExtentError):
        f.at(0.0625)
    with pytest.raises(ExtentError):
        f.at(1.0)


def test_phi_at_zero_is_one():
    for name in ("haar", "db4", "shannon"):
        for depth in (1, 7, 20, 30):
            phi = scaling_product(builtin_filter(name), LineGrid(1 / 16, 4), depth)
            assert phi.at(0.0) == 1


def test_haar_examples(haar):
    phi = scaling_product(haar, LineGrid(1 / 64, 8), 20)
    assert abs(phi.at(0.5) - 2j / np.pi) <= 1e-6
    assert abs(phi.at(0.5) - viete(0.5)) <= 1e-6


def test_haar_closed_form_depth_30(haar):
    g = LineGrid(1 / 64, 64)
    phi = scaling_product(haar, g, 30)
    assert np.max(np.abs(phi.values - viete(g.points))) <= 1e-6


def test_shannon_is_indicator(shannon):
    g = LineGrid(1 / 64, 8)
    phi = scaling_product(shannon, g, 20)
    assert phi.at(0.25) == 1 and phi.at(0.75) == 0
    x = g.points
    off_boundary = np.abs(np.abs(x) - 0.5) > 0
    target = (np.abs(x) < 0.5).astype(float)
    assert np.array_equal(phi.values[off_boundary], target[off_boundary])


def test_off_grid_samples_recomputed(db4):
    phi = scaling_product(db4, LineGrid(1 / 8, 4), 25)
    x = np.array([0.0625, -1.3125, 3.96875])
    np.testing.assert_array_equal(phi.sample(x), truncated_product(db4, x, 25))


def test_depth_and_dc_validation():
    with pytest.raises(ValueError):
        scaling_product(laurent_filter([0.5, 0.25], 0), LineGrid(1 / 8, 1), 5)
    with pytest.raises(ValueError):
        scaling_product(builtin_filter("haar"), LineGrid(1 / 8, 1), 0)


@pytest.mark.parametrize("name,tol", [("haar", 1e-13), ("db4", 1e-12), ("shannon", 0.0)])
def test_recursion_residual(name, tol):
    assert recursion_residual(builtin_filter(name), LineGrid(1 / 64, 64), 20) <= tol


@pytest.mark.parametrize("depth", [2, 3, 10, 25])
def test_recursion_residual_every_depth(depth):
    for name in ("haar", "db4", "shannon"):
        assert recursion_residual(builtin_filter(name), LineGrid(1 / 32, 16), depth) <= 1e-12


def test_recursion_residual_needs_depth_two(haar):
    with pytest.raises(ValueError):
        recursion_residual(haar, LineGrid(1 / 8, 4), 1)


def test_haar_periodization_against_viete_oracle(haar):
    g = LineGrid(1 / 64, 512)
    phi = scaling_product(haar, g, 20)
    res = normalization_residual(phi, 512)
    assert res <= 2e-3
    # the same truncated sum of the closed form, and the tail bound 2/(pi^2 K)
    t = np.arange(64) / 64
    oracle = sum(np.abs(viete(t + k)) ** 2 for k in range(-512, 512))
    assert res == pytest.approx(np.max(np.abs(oracle - 1)), abs=1e-5)
    assert res <= 2 / (np.pi**2 * 512) * 1.01


def test_periodization_monotone_in_K(haar):
    phi = scaling_product(haar, LineGrid(1 / 64, 256), 20)
    values = [normalization_residual(phi, K) for K in (1, 2, 4, 16, 64, 256)]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_shannon_periodization_exact(shannon):
    phi = scaling_product(shannon, LineGrid(1 / 64, 8), 20)
    assert normalization_residual(phi, 2) == 0.0


def test_scaled_phi_fails_periodization(haar):
    phi = scaling_product(haar, LineGrid(1 / 64, 64), 20)
    doubled = phi.with_values(2 * phi.values)
    assert normalization_residual(doubled, 64) >= 3 * (1 - 1e-2)


def test_periodization_K_beyond_extent(haar):
    phi = scaling_product(haar, LineGrid(1 / 64, 8), 20)
    with pytest.raises(ValueError):
        normalization_residual(phi, 9)


@pytest.mark.parametrize(
    "name",
    [
        "haar",
        pytest.param(
            "db4",
            marks=pytest.mark.xfail(
                strict=True, reason="db4 tail at depth 20 is 1.31e-6: mean delay 0.634 enlarges the phase error"
            ),
        ),
    ],
)
def test_depth_beyond_twenty_changes_little(name):
    m0 = builtin_filter(name)
    x = LineGrid(1 / 64, 64).points
    reference = truncated_product(m0, x, 60)
    assert np.max(np.abs(truncated_product(m0, x, 20) - reference)) <= 1e-6


@pytest.mark.parametrize("name", ["haar", "db4"])
def test_product_tail_halves_per_factor(name):
    m0 = builtin_filter(name)
    x = LineGrid(1 / 64, 64).points
    reference = truncated_product(m0, x, 60)
    errs = [np.max(np.abs(truncated_product(m0, x, d) - reference)) for d in (20, 21, 22)]
    assert errs[1] <= 1e-6 and errs[2] <= 1e-6
    assert errs[1] / errs[0] == pytest.approx(0.5, rel=1e-3)


def test_line_csv_round_trip(db4):
    phi = scaling_product(db4, LineGrid(1 / 8, 2), 12)
    text = format_line_function(phi)
    assert text.splitlines()[0] == "x,re,im"
    back = parse_line_function(text)
    assert back.grid == phi.grid
    np.testing.assert_array_equal(back.values, phi.values)
    assert format_line_function(back) == text


def test_line_csv_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_line_function("x,y\n0,1\n")
    with pytest.raises(ValueError):
        parse_line_function("x,re,im\n0,1,0\n0.3,1,0\n")
