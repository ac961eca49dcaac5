import os, shutil, struct, tempfile, unittest

import numpy as np
from numpy.testing import assert_array_equal, assert_allclose

from sdcam.common import Activation, Regime
from sdcam.core import MapOracle, check_vjp
from sdcam.errors import ConfigError
from sdcam.mlp import (MlpInstance, MlpParams, backward, forward, m3_bound, mlp_constants,
                       mlp_generate, num_weights, unpack, xavier)

def write_idx(path, dims, payload):
    with open(path, 'wb') as stream:
        stream.write(struct.pack('>HBB', 0, 0x08, len(dims)))
        stream.write(struct.pack('>%dI'%len(dims), *dims))
        stream.write(bytes(payload))

class TestNetwork(unittest.TestCase):

    def test_num_weights(self):
        self.assertEqual(num_weights([4, 3, 2, 1]), 15 + 8 + 3)
        self.assertEqual(num_weights([784, 128, 64, 1]), 784 * 128 + 128 + 128 * 64 + 64 + 65)

    def test_unpack_layout(self):
        v = np.arange(num_weights([2, 2, 1]), dtype=np.float64)
        (W1, b1), (W2, b2) = unpack(v, [2, 2, 1])
        assert_array_equal(W1, [[0, 1], [2, 3]])
        assert_array_equal(b1, [4, 5])
        assert_array_equal(W2, [[6, 7]])
        assert_array_equal(b2, [8])
        with self.assertRaises(ConfigError):
            unpack(np.zeros(3), [2, 2, 1])

    def test_forward_by_hand(self):
        v = np.array([1.0, -1.0, 0.5, 2.0, -3.0])
        out, _ = forward(v, [2, 1, 1], np.array([[0.2, 0.4]]), Activation.tanh)
        assert_allclose(out, [2.0 * np.tanh(0.2 - 0.4 + 0.5) - 3.0])

    def test_zero_weights(self):
        features = np.random.default_rng(0).uniform(size=(5, 4))
        out, _ = forward(np.zeros(num_weights([4, 3, 1])), [4, 3, 1], features, Activation.sigmoid)
        assert_array_equal(out, np.zeros(5))

    def test_vjp(self):
        features = np.random.default_rng(1).uniform(size=(7, 4))
        dims = [4, 3, 2, 1]
        for activation in (Activation.tanh, Activation.sigmoid):
            v = xavier(0, dims) + 0.1
            fwd = lambda x: forward(x, dims, features, activation)[0]
            c = MapOracle(fwd, lambda x, w: backward(x, dims, features, activation, w))
            self.assertTrue(check_vjp(c, v).passed, activation)

class TestGenerate(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.inst = mlp_generate(0)
        cls.p = cls.inst.problem()

    def test_defaults(self):
        params = MlpParams()
        self.assertEqual(params.layer_dims, [20, 8, 4, 1])
        self.assertEqual((params.p, params.lam, params.n_samples), (0.5, 0.05, 100))
        self.assertEqual(MlpInstance.regime, Regime.full_domain_h)

    def test_synthetic_data(self):
        self.assertEqual(self.inst.features.shape, (100, 20))
        self.assertTrue(np.all((self.inst.features >= 0) & (self.inst.features <= 1)))
        self.assertTrue(np.all(np.abs(self.inst.targets) <= 1))

    def test_residual_at_zero(self):
        assert_array_equal(self.p.c(np.zeros(self.p.n)), -self.inst.targets)
        expected = np.sum(np.abs(self.inst.targets) ** 0.5) / 0.5 / (0.05 * 100)
        self.assertAlmostEqual(self.inst.C_radius, expected, places=12)

    def test_oracles(self):
        rng = np.random.default_rng(3)
        R = self.inst.C_radius
        for _ in range(10):
            v = np.clip(rng.normal(0.0, 0.5, self.p.n), -R, R)
            self.assertTrue(check_vjp(self.p.c, v).passed)

    def test_start_in_box(self):
        x0, y0 = self.inst.start()
        self.assertLessEqual(np.max(np.abs(x0)), self.inst.C_radius)
        self.assertTrue(self.p.g.value(x0).finite)
        assert_array_equal(y0, np.zeros(100))

    def test_h(self):
        u = np.array([4.0] + [0.0] * 99)
        self.assertAlmostEqual(self.p.h(u), 2.0 / (0.5 * 100))
        self.assertEqual(self.p.h.prox(np.zeros(100), 1.0).tolist(), [0.0] * 100)

    def test_bounds(self):
        consts = mlp_constants(self.inst)
        self.assertEqual(self.p.L, 0.0)
        self.assertEqual(m3_bound(self.inst), 2.0 * consts['fg_abs_sup'] + consts['h_sup'])
        rng = np.random.default_rng(4)
        R = self.inst.C_radius
        for _ in range(20):
            v = rng.uniform(-R, R, self.p.n)
            self.assertLessEqual(self.p.h(self.p.c(v)), consts['h_sup'])
            self.assertLessEqual(self.p.fg(v).value, consts['fg_abs_sup'])

    def test_lambda_alias(self):
        self.assertEqual(MlpParams(**{'lambda': 0.1}).lam, 0.1)
        self.assertEqual(MlpParams()(**{'lambda': 0.2}), MlpParams(lam=0.2))
        with self.assertRaises(ConfigError) as ctx:
            MlpParams(**{'lambda': 0.1, 'lam': 0.1})
        self.assertEqual(str(ctx.exception), "MlpParams got both 'lam' and its alias 'lambda'")
        with self.assertRaises(ConfigError):
            MlpParams(**{'lambda': -1.0})

    def test_invalid(self):
        for kwargs in ({'layer_dims': [20, 8, 2]}, {'layer_dims': [20]}, {'p': 1.0},
                       {'source': 'idx_files'}, {'activation': 'relu'}, {'layer_dims': 'abc'}):
            with self.assertRaises(ConfigError):
                MlpParams(**kwargs)

class TestIdxSource(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.images = os.path.join(self.tmp, 'images-idx3-ubyte')
        self.labels = os.path.join(self.tmp, 'labels-idx1-ubyte')
        write_idx(self.images, [5, 28, 28], [255] * (5 * 784))
        write_idx(self.labels, [5], [9, 0, 9, 0, 9])

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_reads_and_normalizes(self):
        inst = mlp_generate(0, layer_dims=[784, 2, 1], n_samples=3, source='idx_files',
                            image_path=self.images, label_path=self.labels)
        self.assertEqual(inst.features.shape, (3, 784))
        assert_array_equal(inst.features, np.ones((3, 784)))
        self.assertTrue(set(inst.targets.tolist()) <= {1.0, -1.0})

    def test_too_many_samples(self):
        with self.assertRaises(ConfigError):
            mlp_generate(0, layer_dims=[784, 2, 1], n_samples=6, source='idx_files',
                         image_path=self.images, label_path=self.labels)

    def test_wrong_input_layer(self):
        with self.assertRaises(ConfigError):
            MlpParams(layer_dims=[20, 1], source='idx_files', image_path=self.images,
                      label_path=self.labels)

if __name__ == '__main__':
    unittest.main()
