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

import copy, hashlib, json

import numpy as np

class JSONEncoder(json.JSONEncoder):
    """A JSONEncoder that calls the __json__() method, if it exists, to
       obtain a serializable form of the object. Numpy arrays and
       scalars are emitted as (nested) lists and python numbers.

    """
    def default(self, obj):
        if hasattr(obj, '__json__'):
            return obj.__json__()
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        return super(JSONEncoder, self).default(obj)

def to_json(obj, indent=2):
    return json.dumps(obj, cls=JSONEncoder, indent=indent, separators=(',', ': '))

class Wrapper(object):
    """Base class for wrapping a single object. This is used to refine
    the type of a wrapped object, while proxying the __str__() and
    __json__() through to the wrapped object.

    """
    def __init__(self, wrapped):
        self.wrapped = wrapped

    def __str__(self):
        return str(self.wrapped)

    def __repr__(self):
        return "%s(%r)"%(class_name(self), self.wrapped)

    def __eq__(self, other):
        return type(self) is type(other) and self.wrapped == other.wrapped

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self), self.wrapped))

    def __json__(self):
        return self.wrapped

    @classmethod
    def parse(cls, value):
        """Returns the registered constant of this type whose wrapped value
        equals value. Raises ValueError for anything else.

        """
        if isinstance(value, cls):
            return value
        for v in vars(cls).values():
            if isinstance(v, cls) and v.wrapped == value:
                return v
        choices = sorted(str(v.wrapped) for v in vars(cls).values() if isinstance(v, cls))
        raise ValueError("%r is not a valid %s (expected one of %s)"%(value, cls.__name__, ', '.join(choices)))

def class_name(obj):
    """Returns the class name of the specified object.

    """
    return obj.__class__.__name__

def shallow_copy(obj):
    """Returns a standard shallow copy of the object.
    """
    cls = obj.__class__
    result = cls.__new__(cls)
    result.__dict__.update(obj.__dict__)
    return result

def super_copy(klass, obj):
    """Returns a copy of obj by invoking __copy__ on the super class, if
    it is defined. Otherwise, returns a standard shallow copy.

    """
    sup = super(klass, obj)
    if hasattr(sup, '__copy__'):
        return sup.__copy__()
    else:
        return shallow_copy(obj)

def file_digest(path):
    """Returns the hex sha256 of the file at path.

    """
    sha = hashlib.sha256()
    with open(path, 'rb') as stream:
        for chunk in iter(lambda: stream.read(1 << 16), b''):
            sha.update(chunk)
    return sha.hexdigest()

def norm(v):
    return float(np.linalg.norm(v))

def rel_error(a, b):
    """Relative discrepancy of two scalars with a unit floor on the scale.

    """
    return abs(a - b) / max(abs(a), abs(b), 1.0)

# API

__all__ = ['JSONEncoder', 'to_json', 'Wrapper', 'class_name',
           'shallow_copy', 'super_copy', 'file_digest', 'norm', 'rel_error']
