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

"""PSK signal detection in polar coordinates.

The unknown is x = (r, theta) with r in [r_lo, 1]^n. The signal
phi(r, theta) = [r cos(theta); r sin(theta)] is fitted to yhat through A,
a barrier-like term lambda1 sum gamma(r_i) pushes r towards 1, and
lambda2 ||sin(p theta / 2)||_1 pulls every phase onto the p-PSK grid.

"""

import logging, math

import numpy as np

from sdcam.base import ConfigObject, prop, positive
from sdcam.common import Regime
from sdcam.core import MapOracle, Problem, ProxOracle, SmoothOracle
from sdcam.errors import ConfigError
from sdcam.instances import Instance, register
from sdcam.prox import project_box, soft_threshold
from sdcam.rng import stream

log = logging.getLogger(__name__)

NOISE_LEVEL = 0.05
GOLDEN = 0.5 * (1.0 + math.sqrt(5.0))

################################ Parameters ################################
class MimoParams(ConfigObject):
    @staticmethod
    def props():
        return [prop('n', int, 8, check=positive, expect='positive'),
                prop('m', int, 16, check=positive, expect='positive'),
                prop('p_psk', int, 4),
                prop('lambda1', float, 0.01, check=lambda v: v >= 0, expect='nonnegative'),
                prop('lambda2', float, 0.1, check=positive, expect='positive'),
                prop('r_lo', float, 0.5, check=lambda v: 0 < v <= 1, expect='in (0, 1]')]

    def validate(self):
        if self.p_psk < 2:
            raise ConfigError("p_psk ≥ 2 required (got %d)"%self.p_psk)

################################ Barrier ################################
def barrier(t, r_lo):
    """gamma(t) = 1/t for t >= r_lo, continued linearly below r_lo.
    """
    t = np.asarray(t, dtype=np.float64)
    lin = -(t - r_lo) / r_lo ** 2 + 1.0 / r_lo
    return np.where(t >= r_lo, 1.0 / np.maximum(t, r_lo), lin)

def barrier_grad(t, r_lo):
    t = np.asarray(t, dtype=np.float64)
    return np.where(t >= r_lo, -1.0 / np.maximum(t, r_lo) ** 2, -1.0 / r_lo ** 2)

def polar(r, theta):
    return np.concatenate([r * np.cos(theta), r * np.sin(theta)])

################################ Instance ################################
@register('mimo')
class MimoInstance(Instance):
    """A (2m x 2n), yhat (2m) and the ground truth (r*, theta*) used to
    synthesize yhat.

    """
    params_type = MimoParams
    array_names = ('A', 'yhat', 'theta_true')
    regime = Regime.lipschitz_h

    @property
    def n(self):
        return self.theta_true.size

    @classmethod
    def generate(cls, seed, params):
        n, m, k = params.n, params.m, params.p_psk
        A = stream(seed, 'A').standard_normal((2 * m, 2 * n)) / math.sqrt(2 * m)
        theta = 2.0 * math.pi * stream(seed, 'truth').integers(0, k, n) / k
        yhat = A @ polar(np.ones(n), theta) + NOISE_LEVEL * stream(seed, 'noise').standard_normal(2 * m)
        log.info("generated mimo instance: seed %d, n=%d, m=%d, %d-PSK", seed, n, m, k)
        return cls(seed, params, A=A, yhat=yhat, theta_true=theta)

    def split(self, x):
        return x[:self.n], x[self.n:]

    def residual(self, x):
        r, theta = self.split(x)
        return self.A @ polar(r, theta) - self.yhat

    def smooth_value(self, x):
        res = self.residual(x)
        r = x[:self.n]
        return 0.5 * float(res @ res) + self.params.lambda1 * float(np.sum(barrier(r, self.params.r_lo)))

    def smooth_grad(self, x):
        n = self.n
        r, theta = self.split(x)
        gphi = self.A.T @ self.residual(x)
        gc, gs = gphi[:n], gphi[n:]
        cos, sin = np.cos(theta), np.sin(theta)
        dr = gc * cos + gs * sin + self.params.lambda1 * barrier_grad(r, self.params.r_lo)
        dtheta = r * (gs * cos - gc * sin)
        return np.concatenate([dr, dtheta])

    def phase_map(self, x):
        return np.sin(0.5 * self.params.p_psk * x[self.n:])

    def phase_vjp(self, x, w):
        k = self.params.p_psk
        return np.concatenate([np.zeros(self.n), w * 0.5 * k * np.cos(0.5 * k * x[self.n:])])

    def bounds(self):
        n = self.n
        lo = np.concatenate([np.full(n, self.params.r_lo), np.full(n, -np.inf)])
        hi = np.concatenate([np.ones(n), np.full(n, np.inf)])
        return lo, hi

    def start(self):
        """r = 1 and theta uniform on [0, 2 pi); y = 0.
        """
        theta = stream(self.seed, 'init').uniform(0.0, 2.0 * math.pi, self.n)
        return np.concatenate([np.ones(self.n), theta]), np.zeros(self.n)

    @classmethod
    def solver_defaults(cls):
        return {'schedule': {'delta': 1.0 / 3.0}}

    def problem(self):
        return mimo_problem(self)

################################ Bounds ################################
def mimo_constants(inst):
    n, pr = inst.n, inst.params
    A = float(np.linalg.norm(inst.A, 2))
    ynorm = float(np.linalg.norm(inst.yhat))
    k = pr.p_psk
    # ||phi|| <= sqrt(n) on the box; the Hessian of phi is bounded by the golden ratio
    return {
        'L': A ** 2 + GOLDEN * math.sqrt(2.0) * A * (A * math.sqrt(n) + ynorm) + 2.0 * pr.lambda1 / pr.r_lo ** 3,
        'L_c': 0.25 * k ** 2,
        'M_c': 0.5 * k,
        'M_h': pr.lambda2 * math.sqrt(n),
        'inf_fg': pr.lambda1 * n,
        'fg_abs_sup': 0.5 * (A * math.sqrt(n) + ynorm) ** 2 + pr.lambda1 * n / pr.r_lo,
        'h_sup': pr.lambda2 * n,
    }

################################ Problem ################################
def mimo_problem(inst):
    lo, hi = inst.bounds()
    lam2 = inst.params.lambda2

    def g_eval(x):
        return 0.0 if np.all(x >= lo) and np.all(x <= hi) else math.inf

    consts = mimo_constants(inst)
    f = SmoothOracle(inst.smooth_value, inst.smooth_grad, consts['L'])
    g = ProxOracle(g_eval, lambda z, gamma: project_box(z, lo, hi),
                   "[%g, 1]^n x R^n"%inst.params.r_lo)
    h = ProxOracle(lambda u: lam2 * float(np.sum(np.abs(u))),
                   lambda z, gamma: soft_threshold(z, gamma * lam2), 'R^n')
    c = MapOracle(inst.phase_map, inst.phase_vjp, consts['L_c'], consts['M_c'])
    return Problem(f, g, h, c, 2 * inst.n, inst.n,
                   inf_fg_lower_bound=consts['inf_fg'],
                   h_lipschitz_bound=consts['M_h'],
                   h_sup_on_image_bound=consts['h_sup'],
                   fg_abs_sup_bound=consts['fg_abs_sup'],
                   name='mimo(seed=%d)'%inst.seed)

#### Public API ####
def mimo_generate(seed, n=8, m=16, p_psk=4, lambda1=0.01, lambda2=0.1, r_lo=0.5):
    return MimoInstance.generate(seed, MimoParams(n=n, m=m, p_psk=p_psk, lambda1=lambda1,
                                                  lambda2=lambda2, r_lo=r_lo))

mimo_params = MimoParams

__all__ = ['MimoParams', 'MimoInstance', 'mimo_params', 'mimo_generate', 'mimo_problem',
           'mimo_constants', 'barrier', 'barrier_grad', 'polar']
