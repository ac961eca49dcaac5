"""Small hand-built problems shared by the tests.
"""

import math

import numpy as np

from sdcam.core import MapOracle, Problem, ProxOracle, SmoothOracle
from sdcam.prox import project_box

def zero_function():
    return ProxOracle(lambda u: 0.0, lambda z, gamma: z)

def box_indicator(lo, hi):
    def value(u):
        return 0.0 if np.all(u >= lo) and np.all(u <= hi) else math.inf
    return ProxOracle(value, lambda z, gamma: project_box(z, lo, hi), "[%g, %g]"%(lo, hi))

def singleton_indicator(b):
    b = np.asarray(b, dtype=np.float64)
    return ProxOracle(lambda u: 0.0 if np.array_equal(u, b) else math.inf,
                      lambda z, gamma: b.copy(), '{b}')

def nonpositive_indicator():
    return ProxOracle(lambda u: 0.0 if np.all(u <= 0) else math.inf,
                      lambda z, gamma: np.minimum(z, 0.0), 'R^m_-')

def identity_map():
    return MapOracle(lambda x: x.copy(), lambda x, w: w.copy(), 0.0, 1.0)

def half_squared_norm(center=0.0):
    return SmoothOracle(lambda x: 0.5 * float((x - center) @ (x - center)),
                        lambda x: x - center, 1.0)

def contraction_problem():
    """f = ||x||^2 / 2, g = 0, h the indicator of {0}, c(x) = x.
    """
    return Problem(half_squared_norm(), zero_function(), singleton_indicator([0.0]),
                   identity_map(), 1, 1, inf_fg_lower_bound=0.0, name='contraction')
