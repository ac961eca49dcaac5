# Copyright 2026 The sdcam Developers
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Generated problem instances and their versioned JSON files.

An instance file is

    {"format_version": 1, "family": ..., "seed": ..., "params": {...},
     "arrays": {name: nested lists}}

Floats are written with their shortest round-trip repr, so reading a file
back reproduces every array exactly.

"""

import json, logging

from collections import OrderedDict as odict

import numpy as np

from sdcam.errors import ConfigError
from sdcam.utils import class_name, file_digest, to_json

log = logging.getLogger(__name__)

FORMAT_VERSION = 1

FAMILIES = odict()

def register(name):
    """Class decorator that makes an Instance subclass loadable by family
    name.

    """
    def decorate(cls):
        cls.family = name
        FAMILIES[name] = cls
        return cls
    return decorate

def family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise ConfigError("unknown problem family '%s' (expected one of %s)"%(name, ', '.join(FAMILIES)))

class Instance(object):
    """Base class of generated instances: a seed, a params record and a
    fixed set of named arrays.

    Subclasses declare params_type (a ConfigObject), array_names, and
    implement problem(), start() and the classmethod generate(seed, params).

    """
    family = None
    params_type = None
    array_names = ()
    regime = None

    @classmethod
    def generate(cls, seed, params):
        raise NotImplementedError("%s does not implement generate()"%cls.__name__)

    def problem(self):
        raise NotImplementedError("%s does not implement problem()"%class_name(self))

    def start(self):
        """Returns the default (x0, y0).
        """
        raise NotImplementedError("%s does not implement start()"%class_name(self))

    @classmethod
    def solver_defaults(cls):
        """SolverConfig keys (a nested 'schedule' dict included) that
        replace the library defaults for this family.

        """
        return {}

    def __init__(self, seed, params, **arrays):
        missing = [k for k in self.array_names if k not in arrays]
        unknown = [k for k in arrays if k not in self.array_names]
        if missing or unknown:
            raise ConfigError("%s: missing arrays %s, unexpected arrays %s"%(class_name(self), missing, unknown))
        self.seed = int(seed)
        self.params = params
        for k in self.array_names:
            setattr(self, k, np.asarray(arrays[k], dtype=np.float64))

    def arrays(self):
        return odict((k, getattr(self, k)) for k in self.array_names)

    def __json__(self):
        return odict([('format_version', FORMAT_VERSION),
                      ('family', self.family),
                      ('seed', self.seed),
                      ('params', self.params),
                      ('arrays', self.arrays())])

    def __eq__(self, other):
        return type(self) is type(other) and self.seed == other.seed \
            and self.params == other.params \
            and all(np.array_equal(getattr(self, k), getattr(other, k)) for k in self.array_names)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "%s(seed=%d, %r)"%(class_name(self), self.seed, self.params)

    @classmethod
    def from_json(cls, data):
        params = cls.params_type.from_json(data.get('params', {}))
        return cls(data['seed'], params, **data.get('arrays', {}))

def generate(name, seed, **params):
    cls = family(name)
    return cls.generate(seed, cls.params_type(**params))

def load_instance(data):
    if not isinstance(data, dict):
        raise ConfigError("instance document must be an object")
    version = data.get('format_version')
    if version != FORMAT_VERSION:
        raise ConfigError("unsupported instance format_version %r (expected %d)"%(version, FORMAT_VERSION))
    for key in ('family', 'seed', 'params', 'arrays'):
        if key not in data:
            raise ConfigError("instance document is missing '%s'"%key)
    return family(data['family']).from_json(data)

def write_instance(inst, path):
    """Writes the instance and returns the sha256 digest of the file.
    """
    with open(path, 'w') as stream:
        stream.write(to_json(inst, indent=None))
        stream.write('\n')
    digest = file_digest(path)
    log.info("wrote %s instance (seed %d) to %s, sha256 %s", inst.family, inst.seed, path, digest)
    return digest

def read_instance(path):
    with open(path) as stream:
        try:
            data = json.load(stream)
        except ValueError as e:
            raise ConfigError("%s: not a JSON document: %s"%(path, e))
    return load_instance(data)

#### Public API ####
__all__ = ['FORMAT_VERSION', 'FAMILIES', 'register', 'family', 'Instance',
           'generate', 'load_instance', 'write_instance', 'read_instance']
