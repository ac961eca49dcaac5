import math, unittest

import numpy as np
from numpy.testing import assert_array_equal, assert_allclose

from sdcam.common import Regime
from sdcam.core import check_gradient, check_vjp
from sdcam.errors import ConfigError
from sdcam.mimo import (MimoInstance, MimoParams, barrier, barrier_grad, mimo_constants,
                        mimo_generate, polar)

class TestHelpers(unittest.TestCase):

    def test_polar(self):
        assert_array_equal(polar(np.ones(1), np.zeros(1)), [1.0, 0.0])
        assert_allclose(polar(np.array([2.0]), np.array([math.pi / 2])), [0.0, 2.0], atol=1e-15)

    def test_barrier_is_continuously_differentiable(self):
        r_lo = 0.5
        self.assertEqual(float(barrier(r_lo, r_lo)), 1.0 / r_lo)
        below = float(barrier(r_lo - 1e-9, r_lo))
        self.assertAlmostEqual(below, 1.0 / r_lo, places=7)
        self.assertEqual(float(barrier_grad(r_lo, r_lo)), -1.0 / r_lo ** 2)
        self.assertEqual(float(barrier_grad(r_lo - 1e-3, r_lo)), -1.0 / r_lo ** 2)
        self.assertAlmostEqual(float(barrier(0.25, r_lo)), 2.0 + 0.25 / 0.25)

class TestGenerate(unittest.TestCase):

    def test_shapes(self):
        inst = mimo_generate(2, n=8, m=16)
        self.assertEqual(inst.A.shape, (32, 16))
        self.assertEqual(inst.yhat.shape, (32,))
        self.assertEqual(inst.n, 8)
        self.assertEqual(MimoInstance.regime, Regime.lipschitz_h)

    def test_truth_on_psk_grid(self):
        inst = mimo_generate(1, p_psk=8)
        k = inst.theta_true * 8 / (2 * math.pi)
        assert_allclose(k, np.round(k), atol=1e-12)
        self.assertTrue(np.all((k >= 0) & (k < 8)))

    def test_deterministic(self):
        self.assertEqual(mimo_generate(4), mimo_generate(4))

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            MimoParams(p_psk=1)
        with self.assertRaises(ConfigError):
            MimoParams(r_lo=0.0)
        with self.assertRaises(ConfigError):
            MimoParams(lambda2=0.0)

class TestProblem(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.inst = mimo_generate(0)
        cls.p = cls.inst.problem()

    def test_dimensions(self):
        self.assertEqual((self.p.n, self.p.m), (16, 8))

    def test_phase_map_vanishes_at_zero(self):
        x = np.concatenate([np.ones(8), np.zeros(8)])
        assert_array_equal(self.p.c(x), np.zeros(8))
        self.assertEqual(self.p.h(self.p.c(x)), 0.0)

    def test_phase_map_vanishes_on_grid(self):
        x = np.concatenate([np.ones(8), self.inst.theta_true])
        assert_allclose(self.p.c(x), np.zeros(8), atol=1e-12)

    def test_oracles(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            x = np.concatenate([rng.uniform(0.5, 1.0, 8), rng.uniform(0.0, 2 * math.pi, 8)])
            g = check_gradient(self.p.f, x)
            self.assertTrue(g.passed, g)
            self.assertLessEqual(g.max_error, 1e-5)
            self.assertTrue(check_vjp(self.p.c, x).passed)

    def test_gradient_below_r_lo(self):
        x = np.concatenate([np.full(8, 0.3), np.linspace(0.0, 3.0, 8)])
        self.assertTrue(check_gradient(self.p.f, x).passed)

    def test_g_is_box(self):
        lo, hi = self.inst.bounds()
        z = np.concatenate([np.linspace(0.0, 2.0, 8), np.full(8, 100.0)])
        x = self.p.g.prox(z, 1.0)
        assert_array_equal(x[:8], np.clip(z[:8], 0.5, 1.0))
        assert_array_equal(x[8:], z[8:])
        self.assertFalse(self.p.g.value(z).finite)

    def test_h_prox(self):
        assert_allclose(self.p.h.prox(np.array([1.0, -0.05] + [0.0] * 6), 1.0),
                        [0.9, 0.0] + [0.0] * 6)

    def test_start(self):
        x0, y0 = self.inst.start()
        assert_array_equal(x0[:8], np.ones(8))
        self.assertTrue(np.all((x0[8:] >= 0) & (x0[8:] < 2 * math.pi)))
        assert_array_equal(y0, np.zeros(8))

    def test_constants(self):
        consts = mimo_constants(self.inst)
        self.assertAlmostEqual(self.p.M_h, 0.1 * math.sqrt(8))
        self.assertEqual(self.p.L_c, 4.0)
        self.assertEqual(self.p.M_c, 2.0)
        rng = np.random.default_rng(2)
        for _ in range(20):
            x = np.concatenate([rng.uniform(0.5, 1.0, 8), rng.uniform(0.0, 2 * math.pi, 8)])
            self.assertGreaterEqual(self.p.f(x), consts['inf_fg'])
            self.assertLessEqual(self.p.f(x), consts['fg_abs_sup'])

if __name__ == '__main__':
    unittest.main()
