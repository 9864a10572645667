import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from filterwave.filters import (
    FilterError,
    FilterParseError,
    INDICATOR,
    LAURENT,
    builtin_filter,
    conjugate_filter,
    evaluate,
    indicator_filter,
    laurent_filter,
    parse_filter,
    qmf_residual,
    serialize_filter,
)

SQ3 = math.sqrt(3)
DB4 = [(1 + SQ3) / 8, (3 + SQ3) / 8, (3 - SQ3) / 8, (1 - SQ3) / 8]


def poly_on_circle(coeffs, offset, x):
    # oracle: plain powers of z, no argument reduction
    z = np.exp(2j * np.pi * np.asarray(x, dtype=float))
    return sum(c * z ** (offset + i) for i, c in enumerate(coeffs))


def test_haar_is_one_plus_z_over_two():
    f = laurent_filter([0.5, 0.5], 0)
    x = np.linspace(-1, 1, 37)
    z = np.exp(2j * np.pi * x)
    np.testing.assert_allclose(evaluate(f, x), (1 + z) / 2, atol=1e-15)


def test_zero_trimming_moves_offset():
    f = laurent_filter([0, 1, 0], -1)
    assert f.coefficients == (1 + 0j,)
    assert f.offset == 0


def test_db4_coefficients_sum_to_one():
    f = laurent_filter(DB4, 0)
    assert sum(f.coefficients) == pytest.approx(1, abs=1e-15)
    assert f == builtin_filter("db4")


def test_empty_and_all_zero_rejected():
    with pytest.raises(FilterError):
        laurent_filter([], 0)
    with pytest.raises(FilterError):
        laurent_filter([0, 0], 3)


def test_builtins():
    haar, db4, shannon = (builtin_filter(n) for n in ("haar", "db4", "shannon"))
    assert haar.kind == LAURENT and haar.coefficients == (0.5, 0.5) and haar.offset == 0
    assert shannon.kind == INDICATOR and shannon.arcs == ((0.0, 0.25), (0.75, 1.0))
    assert evaluate(haar, 0.0) == 1
    assert evaluate(shannon, 0.0) == 1
    assert evaluate(shannon, 0.5) == 0
    # sum (-1)^k h_k = 0
    assert abs(evaluate(db4, 0.5)) < 1e-15
    assert abs(sum((-1) ** k * h for k, h in enumerate(DB4))) < 1e-15
    with pytest.raises(KeyError):
        builtin_filter("db8")


@pytest.mark.parametrize(
    "name,x,expected",
    [("haar", 0.5, 0.0), ("haar", 0.0, 1.0), ("shannon", 0.3, 0.0), ("shannon", 0.25, 0.0), ("shannon", 0.75, 1.0)],
)
def test_evaluate_points(name, x, expected):
    assert evaluate(builtin_filter(name), x) == pytest.approx(expected, abs=1e-15)


def test_evaluate_matches_power_oracle(db4):
    x = np.linspace(-3, 3, 301)
    np.testing.assert_allclose(evaluate(db4, x), poly_on_circle(DB4, 0, x), atol=1e-13)


def test_laurent_periodicity_is_exact(db4):
    x = np.arange(-256, 256) / 64
    assert np.array_equal(evaluate(db4, x + 1), evaluate(db4, x))


def test_shannon_negative_arguments_wrap(shannon):
    # -0.1 -> 0.9 inside [3/4, 1); -0.3 -> 0.7 outside
    assert evaluate(shannon, -0.1) == 1
    assert evaluate(shannon, -0.3) == 0
    assert evaluate(shannon, -2.0**-40) == 1


def test_qmf_residuals(haar, db4, shannon):
    assert qmf_residual(haar, 4096) <= 1e-12
    assert qmf_residual(db4, 4096) <= 1e-12
    assert qmf_residual(shannon, 4096) == 0.0
    assert qmf_residual(laurent_filter([1], 0), 4096) == 1.0


def test_qmf_residual_dense_oracle(db4):
    x = np.arange(8192) / 8192
    total = np.abs(poly_on_circle(DB4, 0, x)) ** 2 + np.abs(poly_on_circle(DB4, 0, x + 0.5)) ** 2
    assert np.max(np.abs(total - 1)) <= 1e-12


def test_qmf_residual_rejects_odd_grid(haar):
    with pytest.raises(ValueError):
        qmf_residual(haar, 4095)


def test_haar_conjugate(haar):
    m1 = conjugate_filter(haar)
    assert m1.offset == 0
    assert m1.coefficients == (-0.5, 0.5)
    assert evaluate(m1, 0.5) == pytest.approx(-1, abs=1e-15)


def test_conjugate_matches_definition(db4):
    m1 = conjugate_filter(db4)
    x = np.linspace(-2, 2, 193)
    z = np.exp(2j * np.pi * x)
    expected = z * np.conj(poly_on_circle(DB4, 0, x + 0.5))
    np.testing.assert_allclose(evaluate(m1, x), expected, atol=1e-13)


def test_shannon_conjugate(shannon):
    m1 = conjugate_filter(shannon)
    assert evaluate(m1, 0.0) == 0
    x = np.arange(-512, 512) / 128
    expected = np.exp(2j * np.pi * x) * np.conj(evaluate(shannon, x + 0.5))
    np.testing.assert_allclose(evaluate(m1, x), expected, atol=1e-14)


def test_double_conjugate_is_minus_identity(db4, shannon):
    # z conj(m1(-z)) = -m0(z)
    for m0 in (db4, shannon):
        back = conjugate_filter(conjugate_filter(m0))
        x = np.linspace(-1, 1, 101)
        np.testing.assert_allclose(evaluate(back, x), -evaluate(m0, x), atol=1e-14)


@pytest.mark.parametrize("name", ["haar", "db4"])
def test_qmf_symmetry_under_conjugation(name):
    m0 = builtin_filter(name)
    m1 = conjugate_filter(m0)
    assert qmf_residual(m1) <= 1e-12
    assert abs(qmf_residual(m0) - qmf_residual(m1)) <= 1e-12


@pytest.mark.parametrize("name", ["haar", "db4", "shannon"])
def test_polyphase_matrix_is_unitary(name):
    m0 = builtin_filter(name)
    m1 = conjugate_filter(m0)
    x = np.arange(2048) / 2048
    a, b = evaluate(m0, x), evaluate(m0, x + 0.5)
    c, d = evaluate(m1, x), evaluate(m1, x + 0.5)
    assert np.max(np.abs(np.abs(a) ** 2 + np.abs(b) ** 2 - 1)) <= 1e-12
    assert np.max(np.abs(np.abs(c) ** 2 + np.abs(d) ** 2 - 1)) <= 1e-12
    assert np.max(np.abs(a * np.conj(c) + b * np.conj(d))) <= 1e-12


def test_indicator_validation():
    with pytest.raises(FilterError):
        indicator_filter([(0.2, 0.5), (0.4, 0.6)])
    with pytest.raises(FilterError):
        indicator_filter([(0.5, 1.5)])
    assert indicator_filter([(0.25, 0.5), (0.5, 0.75)]).arcs == ((0.25, 0.75),)


def test_parse_examples():
    assert parse_filter("offset 0\n0.5 0.0\n0.5 0.0\n") == builtin_filter("haar")
    f = parse_filter("offset -1\n1.0 0.0\n")
    assert f.offset == -1 and f.coefficients == (1,)
    assert parse_filter("arcs\n0 0.25\n0.75 1\n") == builtin_filter("shannon")


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("offset 0\nabc\n", 2),
        ("offset 0\n0.5 0.0\n0.5\n", 3),
        ("0.5 0.0\n", 1),
        ("offset x\n1 0\n", 1),
        ("", 1),
        ("arcs\n0.5 0.2\n", 2),
    ],
)
def test_parse_errors_carry_line(text, lineno):
    with pytest.raises(FilterParseError) as exc:
        parse_filter(text)
    assert exc.value.lineno == lineno


def test_serialize_precision():
    f = builtin_filter("db4")
    text = serialize_filter(f)
    assert parse_filter(text) == f
    assert text.splitlines()[0] == "offset 0"


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_subnormal=False)


@given(
    st.lists(st.tuples(finite, finite), min_size=1, max_size=32).filter(lambda c: any(a or b for a, b in c)),
    st.integers(-50, 50),
)
def test_round_trip_laurent(pairs, offset):
    f = laurent_filter([complex(a, b) for a, b in pairs], offset)
    assert parse_filter(serialize_filter(f)) == f
