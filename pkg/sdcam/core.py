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

"""Oracle abstractions for composite problems f(x) + g(x) + h(c(x)).

f is smooth, g and h are proper closed functions with cheap proximal
maps, and c is a smooth map whose Jacobian is only ever touched through
vector-Jacobian products. Oracles must be pure: the same inputs give the
same outputs, and no mutable state is shared between calls.

"""

import logging, math

from dataclasses import dataclass
from typing import Optional

import numpy as np

from sdcam.common import ExtendedReal
from sdcam.dispatchers import as_vectors
from sdcam.errors import DimensionError
from sdcam.rng import stream
from sdcam.utils import rel_error

log = logging.getLogger(__name__)

FD_RTOL = 1e-5
LINEARITY_RTOL = 1e-10
MAX_FD_DIRECTIONS = 32

################################ Oracles ################################
class SmoothOracle(object):
    """A continuously differentiable f with an optional user-supplied
    Lipschitz constant L of its gradient.

    """
    def __init__(self, eval, grad, lipschitz_bound=None):
        self._eval = eval
        self._grad = grad
        self.lipschitz_bound = lipschitz_bound

    def __call__(self, x):
        return float(self._eval(x))

    def grad(self, x):
        return np.asarray(self._grad(x), dtype=np.float64)

class ProxOracle(object):
    """A proper closed function phi together with its proximal map

        prox(z, gamma) in argmin_u  phi(u) + ||z - u||^2 / (2 gamma).

    eval may return +inf (as a float or ExtendedReal.infinity) outside the
    domain; value() always returns an ExtendedReal.

    """
    def __init__(self, eval, prox, domain_description='R^d'):
        self._eval = eval
        self._prox = prox
        self.domain_description = domain_description

    def value(self, u):
        return ExtendedReal.of(self._eval(u))

    def __call__(self, u):
        return float(self.value(u))

    def prox(self, z, gamma):
        return np.asarray(self._prox(z, gamma), dtype=np.float64)

class MapOracle(object):
    """A smooth map c: R^n -> R^m exposing c(x) and J_c(x)^T w.

    jac_lipschitz_bound is L_c and jac_norm_bound is M_c, both optional
    and never estimated.

    """
    def __init__(self, eval, vjp, jac_lipschitz_bound=None, jac_norm_bound=None):
        self._eval = eval
        self._vjp = vjp
        self.jac_lipschitz_bound = jac_lipschitz_bound
        self.jac_norm_bound = jac_norm_bound

    def __call__(self, x):
        return np.asarray(self._eval(x), dtype=np.float64)

    def vjp(self, x, w):
        return np.asarray(self._vjp(x, w), dtype=np.float64)

class Problem(object):
    """The composite problem min f(x) + g(x) + h(c(x)) over x in R^n.

    Optional constants are user inputs consumed by the diagnostics:
    inf_fg_lower_bound bounds inf{f+g} from below, h_lipschitz_bound is
    M_h, h_sup_on_image_bound bounds sup{h(c(x)) : x in dom g} and
    fg_abs_sup_bound bounds sup{|f(x)+g(x)| : x in dom g}. The last two
    make up M3.

    """
    def __init__(self, f, g, h, c, n, m, inf_fg_lower_bound=None,
                 h_lipschitz_bound=None, h_sup_on_image_bound=None,
                 fg_abs_sup_bound=None, name=None, relative_feasibility=None):
        if n <= 0 or m <= 0:
            raise DimensionError("problem dimensions must be positive (n=%d, m=%d)"%(n, m))
        self.f = f
        self.g = g
        self.h = h
        self.c = c
        self.n = int(n)
        self.m = int(m)
        self.inf_fg_lower_bound = inf_fg_lower_bound
        self.h_lipschitz_bound = h_lipschitz_bound
        self.h_sup_on_image_bound = h_sup_on_image_bound
        self.fg_abs_sup_bound = fg_abs_sup_bound
        self.name = name or 'problem'
        self.relative_feasibility = relative_feasibility

    @property
    def L(self):
        return self.f.lipschitz_bound

    @property
    def L_c(self):
        return self.c.jac_lipschitz_bound

    @property
    def M_c(self):
        return self.c.jac_norm_bound

    @property
    def M_h(self):
        return self.h_lipschitz_bound

    def check_x(self, x):
        if x.shape != (self.n,):
            raise DimensionError("%s: expected x of length %d, got shape %s"%(self.name, self.n, x.shape))

    def check_y(self, y):
        if y.shape != (self.m,):
            raise DimensionError("%s: expected y of length %d, got shape %s"%(self.name, self.m, y.shape))

    def fg(self, x):
        """f(x) + g(x) as an ExtendedReal.
        """
        return self.g.value(x) + self.f(x)

    def __repr__(self):
        return "Problem(%s, n=%d, m=%d)"%(self.name, self.n, self.m)

@as_vectors('x')
def objective(p, x):
    """F(x) = f(x) + g(x) + h(c(x)), +inf when x is outside dom g or c(x)
    is outside dom h.

    """
    p.check_x(x)
    gx = p.g.value(x)
    if not gx.finite:
        return ExtendedReal.infinity
    hc = p.h.value(p.c(x))
    if not hc.finite:
        return ExtendedReal.infinity
    return gx + hc + p.f(x)

################################ Verifiers ################################
@dataclass
class CheckReport:
    """Outcome of a finite-difference comparison.
    """
    max_error: float
    passed: bool
    location: Optional[int] = None
    message: str = ''
    linearity_error: Optional[float] = None

    def __json__(self):
        return {'max_error': self.max_error, 'passed': self.passed,
                'location': self.location, 'message': self.message,
                'linearity_error': self.linearity_error}

def default_step(x):
    return 1e-6 * (1.0 + float(np.max(np.abs(x))))

def _directions(n, rng):
    if n <= MAX_FD_DIRECTIONS:
        return np.eye(n)
    d = rng.standard_normal((MAX_FD_DIRECTIONS, n))
    return d / np.linalg.norm(d, axis=1)[:, None]

@as_vectors('x')
def check_gradient(f, x, h_step=None, seed=0):
    """Compares f.grad(x) against central differences of f along each
    coordinate, or along 32 random unit directions when n > 32.

    """
    h_step = default_step(x) if h_step is None else h_step
    if not 1e-8 <= h_step <= 1e-2:
        raise ValueError("h_step must lie in [1e-8, 1e-2], got %g"%h_step)
    grad = f.grad(x)
    if grad.shape != x.shape:
        raise DimensionError("gradient has shape %s, expected %s"%(grad.shape, x.shape))
    worst, where = 0.0, None
    for k, d in enumerate(_directions(x.size, stream(seed, 'probe'))):
        fp, fm = f(x + h_step * d), f(x - h_step * d)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            return CheckReport(math.inf, False, k, "non-finite value along direction %d"%k)
        err = rel_error((fp - fm) / (2 * h_step), float(grad @ d))
        if err > worst:
            worst, where = err, k
    passed = worst <= FD_RTOL
    if not passed:
        log.info("gradient check failed: error %.3g along direction %d", worst, where)
    return CheckReport(worst, passed, where if not passed else None)

@as_vectors('x')
def check_vjp(c, x, trials=10, h_step=None, seed=0):
    """Compares <vjp(x, w), d> with the central difference of <w, c(.)>
    along d for random w, d, and checks that vjp is linear in w.

    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    h_step = default_step(x) if h_step is None else h_step
    rng = stream(seed, 'probe')
    cx = c(x)
    m = cx.size
    worst, where = 0.0, None
    for k in range(trials):
        w = rng.standard_normal(m)
        d = rng.standard_normal(x.size)
        d /= np.linalg.norm(d)
        jtw = c.vjp(x, w)
        if jtw.shape != x.shape:
            raise DimensionError("vjp returned shape %s, expected %s"%(jtw.shape, x.shape))
        cp, cm = c(x + h_step * d), c(x - h_step * d)
        if cp.shape != (m,) or cm.shape != (m,):
            raise DimensionError("map output changed shape near x")
        if not (np.all(np.isfinite(cp)) and np.all(np.isfinite(cm))):
            return CheckReport(math.inf, False, k, "non-finite map value in trial %d"%k)
        err = rel_error(float(w @ (cp - cm)) / (2 * h_step), float(jtw @ d))
        if err > worst:
            worst, where = err, k

    w1, w2 = rng.standard_normal(m), rng.standard_normal(m)
    a, b = rng.standard_normal(2)
    lhs = c.vjp(x, a * w1 + b * w2)
    rhs = a * c.vjp(x, w1) + b * c.vjp(x, w2)
    lin = float(np.linalg.norm(lhs - rhs)) / max(float(np.linalg.norm(rhs)), 1.0)

    passed = worst <= FD_RTOL and lin <= LINEARITY_RTOL
    message = '' if lin <= LINEARITY_RTOL else "vjp is not linear in w (%.3g)"%lin
    return CheckReport(worst, passed, where if not passed else None, message, lin)

#### Public API ####
smooth_oracle = SmoothOracle
prox_oracle   = ProxOracle
map_oracle    = MapOracle
problem       = Problem

__all__ = ['SmoothOracle', 'ProxOracle', 'MapOracle', 'Problem',
           'smooth_oracle', 'prox_oracle', 'map_oracle', 'problem',
           'objective', 'check_gradient', 'check_vjp', 'CheckReport']
