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

"""Reader for the IDX files the MNIST digits are distributed in.

A file is a 4-byte big-endian magic 0x000008NN, where NN is the number of
dimensions, then NN big-endian 32-bit sizes, then the unsigned bytes in
row-major order. Files ending in .gz are decompressed transparently.

"""

import gzip, struct

from collections import namedtuple

import numpy as np

from sdcam.errors import IdxFormatError

UBYTE = 0x08

IdxData = namedtuple('IdxData', ['dims', 'data'])

def _open(path):
    if str(path).endswith('.gz'):
        return gzip.open(path, 'rb')
    return open(path, 'rb')

def parse_idx(raw):
    if len(raw) < 4:
        raise IdxFormatError("truncated header", 0)
    zero, dtype, ndim = struct.unpack('>HBB', raw[:4])
    if zero != 0 or dtype != UBYTE or ndim == 0:
        raise IdxFormatError("bad magic 0x%08x"%struct.unpack('>I', raw[:4])[0], 0)
    end = 4 + 4 * ndim
    if len(raw) < end:
        raise IdxFormatError("truncated header", len(raw))
    dims = list(struct.unpack('>%dI'%ndim, raw[4:end]))
    size = int(np.prod(dims, dtype=np.int64))
    if len(raw) < end + size:
        raise IdxFormatError("truncated payload (%d of %d bytes)"%(len(raw) - end, size), len(raw))
    data = np.frombuffer(raw, dtype=np.uint8, count=size, offset=end).reshape(dims)
    return IdxData(dims, data)

def read_idx(path):
    """Returns IdxData(dims, data) with data a uint8 array of shape dims.
    """
    with _open(path) as stream:
        raw = stream.read()
    return parse_idx(raw)

__all__ = ['IdxData', 'parse_idx', 'read_idx']
