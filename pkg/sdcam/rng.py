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

"""Named random streams.

Every random quantity is drawn from a Philox counter-based generator whose
key is derived from (seed, stream id, index) through SeedSequence spawn
keys. Draws for one field never shift the draws of another, and the ids
below are part of the instance-file format: never renumber them.

"""

import numpy as np

STREAMS = {
    'b0':       0,
    'U':        1,
    'D':        2,
    'noise':    3,
    'A':        4,
    'truth':    5,
    'init':     6,
    'features': 7,
    'planted':  8,
    'sample':   9,
    'regen':   10,
    'probe':   11,
}

def stream(seed, name, index=0):
    """Returns a fresh numpy Generator for the named stream.
    """
    if name not in STREAMS:
        raise KeyError("unknown random stream '%s' (known: %s)"%(name, ', '.join(sorted(STREAMS))))
    ss = np.random.SeedSequence(int(seed), spawn_key=(STREAMS[name], int(index)))
    return np.random.Generator(np.random.Philox(ss))

__all__ = ['STREAMS', 'stream']
