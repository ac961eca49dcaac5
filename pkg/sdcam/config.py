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

"""Run configurations.

A run config is a JSON document

    {"schema_version": 1,
     "problem":  {"family": "qcqp", "seed": 1, "params": {"n": 20, "m": 5}},
     "solver":   {"max_successful_iters": 3000},
     "schedule": {"beta0": 1e-4},
     "output":   {"trace": "qcqp.csv"},
     "seed": 0, "assert_level": "cheap"}

The problem section names a family and either generation params or an
instance file. Solver and schedule keys are layered over the family
defaults, which are layered over the library defaults. Everything is
validated when the config is built, before any computation.

"""

import json, os

from collections import OrderedDict as odict

from sdcam.base import ConfigObject, prop
from sdcam.common import AssertLevel
from sdcam.errors import ConfigError
from sdcam.instances import FAMILIES, family, generate, read_instance
from sdcam.solver import SolverConfig

SCHEMA_VERSION = 1

class ProblemSection(ConfigObject):
    @staticmethod
    def props():
        return [prop('family', str, required=True),
                prop('seed', int, 0),
                prop('params', dict, {}),
                prop('instance', str)]

    def validate(self):
        cls = family(self.family)
        cls.params_type(**self.params)

    def family_type(self):
        return FAMILIES[self.family]

    def load(self):
        """Reads the instance file, or generates the instance from the seed
        and params.

        """
        if self.instance is not None:
            inst = read_instance(self.instance)
            if inst.family != self.family:
                raise ConfigError("instance file %s holds a %s instance, config names %s"
                                  %(self.instance, inst.family, self.family))
            return inst
        return generate(self.family, self.seed, **self.params)

class OutputSection(ConfigObject):
    @staticmethod
    def props():
        return [prop('trace', str, 'trace.csv'),
                prop('summary', str),
                prop('check_rates', bool, True)]

    @property
    def summary_path(self):
        if self.summary is not None:
            return self.summary
        return os.path.splitext(self.trace)[0] + '.summary.json'

class RunConfig(ConfigObject):
    @staticmethod
    def props():
        return [prop('schema_version', int, required=True),
                prop('problem', ProblemSection, required=True),
                prop('solver', dict, {}),
                prop('schedule', dict, {}),
                prop('output', OutputSection, OutputSection()),
                prop('seed', int),
                prop('assert_level', AssertLevel)]

    def validate(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError("RunConfig: unsupported schema_version %r (expected %d)"
                              %(self.schema_version, SCHEMA_VERSION))
        if 'schedule' in self.solver:
            raise ConfigError("RunConfig: schedule keys belong in the top-level 'schedule' section")
        self.solver_config()

    def solver_config(self):
        """Library defaults, then family defaults, then this config.
        """
        keys = dict(self.problem.family_type().solver_defaults())
        schedule = dict(keys.pop('schedule', {}))
        keys.update(self.solver)
        schedule.update(self.schedule)
        keys['schedule'] = schedule
        if self.seed is not None:
            keys['seed'] = self.seed
        if self.assert_level is not None:
            keys['assert_level'] = self.assert_level
        return SolverConfig(**keys)

    def with_override(self, key, value):
        """Returns a copy with one dotted key ('schedule.beta0',
        'problem.seed', 'solver.eta', 'seed', ...) replaced.

        """
        section, _, name = key.partition('.')
        if not name:
            return self(**{section: value})
        if section in ('solver', 'schedule'):
            updated = dict(getattr(self, section))
            updated[name] = value
            return self(**{section: updated})
        if section == 'problem' and name not in ('family', 'seed', 'instance'):
            params = dict(self.problem.params)
            params[name] = value
            return self(problem=self.problem(params=params))
        if section in ('problem', 'output'):
            return self(**{section: getattr(self, section)(**{name: value})})
        raise ConfigError("RunConfig: cannot override '%s'"%key)

    def with_outputs(self, suffix):
        """Returns a copy whose trace and summary paths carry suffix
        before the extension.

        """
        stem, ext = os.path.splitext(self.output.trace)
        sstem, sext = os.path.splitext(self.output.summary_path)
        return self(output=self.output(trace=stem + suffix + ext, summary=sstem + suffix + sext))

def load_run_config(path):
    try:
        with open(path) as stream:
            data = json.load(stream, object_pairs_hook=odict)
    except ValueError as e:
        raise ConfigError("%s: not a JSON document: %s"%(path, e))
    except OSError as e:
        raise ConfigError("%s: %s"%(path, e.strerror or e))
    return RunConfig.from_json(data)

#### Public API ####
run_config = RunConfig

__all__ = ['SCHEMA_VERSION', 'ProblemSection', 'OutputSection', 'RunConfig',
           'run_config', 'load_run_config']
