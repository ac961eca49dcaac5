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

import numbers

from collections import OrderedDict as odict
from copy import copy

from sdcam.dispatchers import typed_dispatch
from sdcam.errors import ConfigError
from sdcam.utils import Wrapper, class_name, super_copy

class Property(object):
    """Declares one key of a ConfigObject: its name, the type values are
    coerced to, a default, and an optional range check.

    """
    def __init__(self, name, type=None, default=None, required=False, check=None, expect=None):
        self.name = name
        self.type = type
        self.default = default
        self.required = required
        self.check = check
        self.expect = expect

    def __repr__(self):
        return "Property(%s, %r, %r)"%(self.name, self.type, self.default)

    def coerce(self, owner, value):
        if value is None:
            if self.required:
                raise ConfigError("%s: '%s' is required"%(class_name(owner), self.name))
            return None
        t = self.type
        try:
            if t is None:
                pass
            elif isinstance(t, type) and issubclass(t, ConfigObject):
                if isinstance(value, dict):
                    value = t.from_json(value)
                elif not isinstance(value, t):
                    raise TypeError("expected %s"%t.__name__)
            elif isinstance(t, type) and issubclass(t, Wrapper):
                value = t.parse(value)
            elif t is bool:
                if not isinstance(value, bool):
                    raise TypeError("expected true or false")
            elif t is float:
                if isinstance(value, bool) or not isinstance(value, numbers.Real):
                    raise TypeError("expected a number")
                value = float(value)
            elif t is int:
                if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                    raise TypeError("expected an integer")
                value = int(value)
            elif t is str:
                if not isinstance(value, str):
                    raise TypeError("expected a string")
            elif t is list:
                if isinstance(value, (str, dict)):
                    raise TypeError("expected a list")
                value = list(value)
            elif t is dict:
                if not isinstance(value, dict):
                    raise TypeError("expected an object")
                value = dict(value)
        except (TypeError, ValueError) as e:
            raise ConfigError("%s: bad value %r for '%s': %s"%(class_name(owner), value, self.name, e))
        if self.check is not None and not self.check(value):
            raise ConfigError("%s: '%s' must be %s (got %r)"%(class_name(owner), self.name,
                                                              self.expect or 'valid', value))
        return value

class ConfigObject(object):
    """Super class for all schema-validated configuration records.

    Subclasses declare their keys through a static props() method.
    Unknown keys are rejected, values are coerced to the declared
    types, and calling an instance with keyword arguments returns a
    modified copy.

    """

    @typed_dispatch
    def __init__(self, **kwargs):
        for p in self.props():
            setattr(self, p.name, copy(p.default))
        self.__set_attrs__(**kwargs)
        for p in self.props():
            if p.required and getattr(self, p.name) is None:
                raise ConfigError("%s: '%s' is required"%(class_name(self), p.name))
        self.validate()

    @typed_dispatch
    def __call__(self, **kwargs):
        result = copy(self)
        result.__set_attrs__(**kwargs)
        result.validate()
        return result

    def __copy__(self):
        return super_copy(ConfigObject, self)

    @staticmethod
    def aliases():
        """Alternate spellings of keys, mapped to prop names.
        """
        return {}

    def __set_attrs__(self, **kwargs):
        by_name = dict((p.name, p) for p in self.props())
        aliases = self.aliases()
        for k, v in kwargs.items():
            name = aliases.get(k, k)
            if name != k and name in kwargs:
                raise ConfigError("%s got both '%s' and its alias '%s'"%(class_name(self), name, k))
            if name not in by_name:
                err_msg = "%s got unexpected key '%s'"
                raise ConfigError(err_msg%(class_name(self), k))
            setattr(self, name, by_name[name].coerce(self, v))

    def validate(self):
        """Cross-field checks. Called after every construction or update.
        """
        pass

    def arg_names(self):
        return [p.name for p in self.props() if _is_config_type(p.type)]

    def arg_types(self):
        return [p.type for p in self.props() if _is_config_type(p.type)]

    def __repr__(self):
        args = ', '.join('%s=%r'%(p.name, getattr(self, p.name)) for p in self.props())
        return '%s(%s)'%(class_name(self), args)

    def __eq__(self, other):
        return type(self) is type(other) and \
            all(getattr(self, p.name) == getattr(other, p.name) for p in self.props())

    def __ne__(self, other):
        return not self == other

    def __json__(self):
        data = odict()
        for p in self.props():
            v = getattr(self, p.name)
            if v is not None:
                data[p.name] = v
        return data

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("%s: expected an object, got %r"%(cls.__name__, data))
        return cls(**data)

def _is_config_type(t):
    return isinstance(t, type) and issubclass(t, ConfigObject)

def positive(v):
    return v > 0

def nonnegative(v):
    return v >= 0

def unit_open(v):
    return 0 < v < 1

#### Public API ####
prop = Property

__all__ = ['prop', 'Property', 'ConfigObject']
