import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cgkit.core import (
    CountingObjective,
    DimensionError,
    EvaluationError,
    Objective,
    as_vector,
    axpy,
    dot,
    fd_gradient,
    norm2,
)
from cgkit.problems import get_problem

from conftest import square

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 0), (0, 1), 0.0), ((2, 0), (2, -1), 4.0), ((1, 2, 3), (1, 2, 3), 14.0)],
)
def test_dot(a, b, expected):
    assert dot(np.array(a, float), np.array(b, float)) == expected


def test_dot_length_mismatch():
    with pytest.raises(DimensionError):
        dot(np.ones(2), np.ones(3))


@pytest.mark.parametrize("a, expected", [((0, 0, 0), 0.0), ((3, 4), 5.0), ((1, 0), 1.0)])
def test_norm2(a, expected):
    assert norm2(np.array(a, float)) == expected


def test_axpy():
    np.testing.assert_array_equal(axpy(1.0, np.ones(2), np.zeros(2)), [1.0, 1.0])
    y = np.array([0.3, -7.0])
    np.testing.assert_array_equal(axpy(0.0, np.array([5.0, 9.0]), y), y)
    np.testing.assert_array_equal(axpy(2.0, np.array([1.0, -1.0]), np.ones(2)), [3.0, -1.0])
    with pytest.raises(DimensionError):
        axpy(1.0, np.ones(2), np.ones(3))


def test_axpy_does_not_modify_inputs():
    x, y = np.ones(3), np.zeros(3)
    axpy(2.0, x, y)
    assert np.all(x == 1) and np.all(y == 0)


@given(arrays(np.float64, 5, elements=finite), arrays(np.float64, 5, elements=finite))
def test_dot_symmetric_and_norm_consistent(a, b):
    assert dot(a, b) == dot(b, a)
    nn = dot(a, a)
    assert math.isclose(norm2(a) ** 2, nn, rel_tol=1e-12, abs_tol=1e-300)


def test_as_vector_rejects_non_finite_and_empty():
    with pytest.raises(ValueError):
        as_vector([1.0, math.nan])
    with pytest.raises(ValueError):
        as_vector([math.inf])
    with pytest.raises(ValueError):
        as_vector([])
    with pytest.raises(DimensionError):
        as_vector([1.0, 2.0], n=3)


def test_fd_gradient_of_square():
    g = fd_gradient(square(), [3.0], 1e-6)
    assert abs(g[0] - 6.0) <= 1e-6


def test_fd_gradient_of_constant():
    const = Objective("c", 3, lambda x: 4.2, lambda x: np.zeros(3))
    g = fd_gradient(const, [1.0, -5.0, 100.0], 1e-6)
    assert np.max(np.abs(g)) <= 1e-9


def test_fd_gradient_rosenbrock_minimizer():
    g = fd_gradient(get_problem("ROSENBR").objective, [1.0, 1.0], 1e-6)
    assert np.max(np.abs(g)) <= 1e-5


def test_fd_gradient_reports_non_finite_values():
    bad = Objective("log", 1, lambda x: math.log(x[0]) if x[0] > 0 else math.nan, lambda x: 1 / x)
    with pytest.raises(EvaluationError):
        fd_gradient(bad, [0.0])
    with pytest.raises(ValueError):
        fd_gradient(square(), [1.0], h=0.0)


def test_counting_objective_counts_each_kind():
    obj = CountingObjective(square())
    obj.eval(np.ones(1))
    obj.grad(np.ones(1))
    obj.eval_grad(np.ones(1))
    assert (obj.counter.fevals, obj.counter.gevals) == (2, 2)
