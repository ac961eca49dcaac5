import json, os, shutil, tempfile, unittest

import numpy as np

import sdcam
from sdcam.errors import ConfigError
from sdcam.instances import (FAMILIES, FORMAT_VERSION, family, generate, load_instance,
                             read_instance, write_instance)
from sdcam.rng import STREAMS, stream
from sdcam.utils import file_digest, to_json

class TestInstanceFiles(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_registry(self):
        self.assertEqual(set(FAMILIES), {'qcqp', 'mimo', 'mlp'})
        self.assertIs(family('mimo'), sdcam.MimoInstance)
        with self.assertRaises(ConfigError):
            family('lasso')

    def test_write_read(self):
        for name, params in (('qcqp', {'n': 4, 'm': 2}), ('mimo', {'n': 3, 'm': 5}),
                             ('mlp', {'layer_dims': [3, 2, 1], 'n_samples': 6})):
            inst = generate(name, 11, **params)
            path = os.path.join(self.tmp, name + '.json')
            digest = write_instance(inst, path)
            self.assertEqual(digest, file_digest(path))
            self.assertEqual(read_instance(path), inst, name)

    def test_same_seed_same_file(self):
        a, b = os.path.join(self.tmp, 'a.json'), os.path.join(self.tmp, 'b.json')
        self.assertEqual(write_instance(generate("qcqp", 5, n=4, m=2), a),
                         write_instance(generate("qcqp", 5, n=4, m=2), b))

    def test_load_errors(self):
        data = json.loads(to_json(generate("qcqp", 1, n=4, m=2)))
        self.assertEqual(data['format_version'], FORMAT_VERSION)
        load_instance(data)
        for broken in (dict(data, format_version=2), dict(data, family='lasso')):
            with self.assertRaises(ConfigError):
                load_instance(broken)
        for key in ('family', 'seed', 'params', 'arrays'):
            partial = dict(data)
            del partial[key]
            with self.assertRaises(ConfigError):
                load_instance(partial)
        with self.assertRaises(ConfigError):
            load_instance([])

    def test_not_json(self):
        path = os.path.join(self.tmp, 'bad.json')
        with open(path, 'w') as f:
            f.write('{"format_version": ')
        with self.assertRaises(ConfigError):
            read_instance(path)

class TestStreams(unittest.TestCase):

    def test_deterministic(self):
        np.testing.assert_array_equal(stream(3, 'U').standard_normal(5),
                                      stream(3, 'U').standard_normal(5))

    def test_independent(self):
        draws = [stream(3, 'U').standard_normal(5), stream(3, 'U', 1).standard_normal(5),
                 stream(3, 'D').standard_normal(5), stream(4, 'U').standard_normal(5)]
        for i in range(len(draws)):
            for j in range(i):
                self.assertFalse(np.array_equal(draws[i], draws[j]))

    def test_ids_unique(self):
        self.assertEqual(len(set(STREAMS.values())), len(STREAMS))

    def test_unknown(self):
        with self.assertRaises(KeyError):
            stream(0, 'weights')

if __name__ == '__main__':
    unittest.main()
