import math, unittest

import numpy as np
from numpy.testing import assert_array_equal, assert_allclose

from sdcam.common import ExtendedReal
from sdcam.core import (MapOracle, Problem, SmoothOracle, check_gradient,
                        check_vjp, objective)
from sdcam.errors import DimensionError

from tests.fixtures import (half_squared_norm, identity_map, nonpositive_indicator,
                            zero_function)

class TestExtendedReal(unittest.TestCase):

    def test_infinity(self):
        self.assertIs(ExtendedReal.of(math.inf), ExtendedReal.infinity)
        self.assertIs(ExtendedReal.of(1.0) + ExtendedReal.infinity, ExtendedReal.infinity)
        self.assertFalse(ExtendedReal.infinity.finite)
        self.assertEqual(float(ExtendedReal.infinity), math.inf)
        with self.assertRaises(ValueError):
            ExtendedReal.infinity.value

    def test_ordering(self):
        one, two = ExtendedReal.of(1.0), ExtendedReal.of(2.0)
        self.assertLess(one, two)
        self.assertLess(two, ExtendedReal.infinity)
        self.assertLessEqual(ExtendedReal.infinity, ExtendedReal.infinity)
        self.assertEqual(one + 1.0, two)

    def test_rejects_nan_and_minus_infinity(self):
        for v in (math.nan, -math.inf):
            with self.assertRaises(ValueError):
                ExtendedReal.of(v)

class TestCheckGradient(unittest.TestCase):

    def test_quadratic(self):
        f = half_squared_norm()
        x = np.array([1.0, 2.0])
        assert_array_equal(f.grad(x), [1.0, 2.0])
        report = check_gradient(f, x, h_step=1e-5)
        self.assertTrue(report.passed)
        self.assertLess(report.max_error, 1e-9)

    def test_constant(self):
        f = SmoothOracle(lambda x: 3.0, lambda x: np.zeros_like(x))
        self.assertTrue(check_gradient(f, [0.5, -2.0, 7.0]).passed)

    def test_many_coordinates_use_random_directions(self):
        A = np.random.default_rng(0).standard_normal((40, 40))
        Q = A @ A.T / 40.0
        f = SmoothOracle(lambda x: 0.5 * x @ Q @ x, lambda x: Q @ x)
        self.assertTrue(check_gradient(f, np.ones(40)).passed)

    def test_wrong_gradient_reports_location(self):
        f = SmoothOracle(lambda x: 0.5 * float(x @ x), lambda x: x + np.array([0.0, 0.0, 1.0]))
        report = check_gradient(f, [1.0, 2.0, 3.0])
        self.assertFalse(report.passed)
        self.assertEqual(report.location, 2)

    def test_non_finite_value(self):
        f = SmoothOracle(lambda x: math.inf if x[0] > 1.0 else 0.0, lambda x: np.zeros_like(x))
        report = check_gradient(f, [1.0])
        self.assertFalse(report.passed)
        self.assertEqual(report.location, 0)

    def test_step_range(self):
        with self.assertRaises(ValueError):
            check_gradient(half_squared_norm(), [1.0], h_step=0.1)

class TestCheckVjp(unittest.TestCase):

    def test_linear_map(self):
        A = np.random.default_rng(1).standard_normal((3, 4))
        c = MapOracle(lambda x: A @ x, lambda x, w: A.T @ w)
        report = check_vjp(c, np.ones(4))
        self.assertTrue(report.passed)
        self.assertLess(report.max_error, 1e-8)
        self.assertLess(report.linearity_error, 1e-12)

    def test_squares(self):
        c = MapOracle(lambda x: x ** 2, lambda x, w: 2.0 * x * w)
        x = np.array([1.0, 2.0])
        self.assertEqual(float(c.vjp(x, np.array([1.0, 1.0])) @ np.array([1.0, 0.0])), 2.0)
        self.assertTrue(check_vjp(c, x).passed)

    def test_wrong_transpose(self):
        A = np.arange(6.0).reshape(2, 3)
        c = MapOracle(lambda x: A @ x, lambda x, w: A[:, ::-1].T @ w)
        self.assertFalse(check_vjp(c, np.ones(3)).passed)

    def test_shape_mismatch(self):
        c = MapOracle(lambda x: x, lambda x, w: np.zeros(x.size + 1))
        with self.assertRaises(DimensionError):
            check_vjp(c, np.ones(2))

class TestObjective(unittest.TestCase):

    def setUp(self):
        f = SmoothOracle(lambda x: 0.0, lambda x: np.zeros_like(x))
        self.p = Problem(f, zero_function(), nonpositive_indicator(), identity_map(), 1, 1)

    def test_feasible(self):
        self.assertEqual(objective(self.p, [-1.0]), ExtendedReal.of(0.0))

    def test_infeasible(self):
        self.assertIs(objective(self.p, [1.0]), ExtendedReal.infinity)

    def test_dimension(self):
        with self.assertRaises(DimensionError):
            objective(self.p, [1.0, 2.0])

    def test_fg(self):
        p = Problem(half_squared_norm(), zero_function(), nonpositive_indicator(), identity_map(), 2, 2)
        self.assertEqual(p.fg(np.array([1.0, 1.0])).value, 1.0)
        assert_allclose(p.L, 1.0)

class TestProblem(unittest.TestCase):

    def test_empty_dimensions(self):
        for n, m in ((0, 1), (1, 0)):
            with self.assertRaises(DimensionError):
                Problem(half_squared_norm(), zero_function(), zero_function(), identity_map(), n, m)

    def test_constants_default_to_none(self):
        p = Problem(half_squared_norm(), zero_function(), zero_function(),
                    MapOracle(lambda x: x, lambda x, w: w), 1, 1)
        self.assertIsNone(p.L_c)
        self.assertIsNone(p.M_h)
        self.assertIsNone(p.inf_fg_lower_bound)

if __name__ == '__main__':
    unittest.main()
