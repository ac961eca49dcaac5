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

"""Penalized quadratically constrained quadratic programs

    min  1/2 x'Q0 x + b0'x + alpha ||x||_p^p
    s.t. 1/2 x'Qi x + bi'x + ri <= 0,   ||x||_inf <= r,

written as f + g + h(c) with h the indicator of the nonpositive orthant.

"""

import logging, math

import numpy as np

from sdcam.base import ConfigObject, prop, positive, unit_open
from sdcam.common import Regime
from sdcam.core import MapOracle, Problem, ProxOracle, SmoothOracle
from sdcam.dispatchers import as_vectors
from sdcam.errors import ConfigError, NumericalError
from sdcam.instances import Instance, register
from sdcam.prox import LpProxParams, lp_value, project_nonpositive, prox_lp, prox_lp_box
from sdcam.rng import stream

log = logging.getLogger(__name__)

MAX_REGENERATIONS = 10
EIGEN_MAX = 5.0

################################ Parameters ################################
class QcqpParams(ConfigObject):
    @staticmethod
    def props():
        return [prop('n', int, 20, check=positive, expect='positive'),
                prop('m', int, 5, check=positive, expect='positive'),
                prop('alpha', float, 0.05, check=positive, expect='positive'),
                prop('p', float, 0.8, check=unit_open, expect='in (0, 1)'),
                prop('scale0', float, 5.0, check=positive, expect='positive')]

    def validate(self):
        if self.n < 2:
            raise ConfigError("n ≥ 2 required (got n=%d)"%self.n)

################################ Instance ################################
@register('qcqp')
class QcqpInstance(Instance):
    """Q0 (n x n), b0 (n), Qi (m x n x n), bi (m x n), ri (m) and the
    reference point xbar that fixes ri and the box radius r.

    """
    params_type = QcqpParams
    array_names = ('Q0', 'b0', 'Qi', 'bi', 'ri', 'xbar')
    regime = Regime.bounded_domains

    @property
    def n(self):
        return self.b0.size

    @property
    def m(self):
        return self.ri.size

    @property
    def r(self):
        return float(np.max(np.abs(self.xbar)))

    @classmethod
    def generate(cls, seed, params):
        n, m = params.n, params.m
        lp = LpProxParams(p=params.p, alpha=params.alpha)
        for attempt in range(MAX_REGENERATIONS + 1):
            rng = stream(seed, 'b0') if attempt == 0 else stream(seed, 'regen', attempt)
            b0 = params.scale0 * rng.standard_normal(n)
            # separable at unit step, so one prox per coordinate is the exact minimizer
            xbar = prox_lp(-b0, lp)
            if np.any(xbar != 0):
                break
            log.info("qcqp seed %d: reference point thresholded to zero, regenerating b0 (%d/%d)",
                     seed, attempt + 1, MAX_REGENERATIONS)
        else:
            raise NumericalError("qcqp seed %d: reference point stayed zero after %d regenerations"
                                 %(seed, MAX_REGENERATIONS))

        Qi = np.empty((m, n, n))
        for i in range(m):
            U, _ = np.linalg.qr(stream(seed, 'U', i).standard_normal((n, n)))
            D = stream(seed, 'D', i).uniform(0.0, EIGEN_MAX, n)
            Q = (U * D) @ U.T
            Qi[i] = 0.5 * (Q + Q.T)
        ri = -0.25 * np.einsum('j,ijk,k->i', xbar, Qi, xbar)
        log.info("generated qcqp instance: seed %d, n=%d, m=%d, r=%.6g", seed, n, m, np.max(np.abs(xbar)))
        return cls(seed, params, Q0=np.eye(n), b0=b0, Qi=Qi, bi=np.zeros((m, n)), ri=ri, xbar=xbar)

    def constraints(self, x):
        Qx = self.Qi @ x
        return 0.5 * (Qx @ x) + self.bi @ x + self.ri

    def constraints_vjp(self, x, w):
        return w @ (self.Qi @ x + self.bi)

    def start(self):
        """Projection of -b0 onto the box, and y = 0.
        """
        r = self.r
        return np.clip(-self.b0, -r, r), np.zeros(self.m)

    @classmethod
    def solver_defaults(cls):
        return {'mu_max': 1e7, 'mu_init': 1.0, 'rho': 0.8, 'eta': 1.2,
                'schedule': {'beta0': 1.0, 'delta': 0.3}}

    def problem(self):
        return qcqp_problem(self)

################################ Bounds ################################
def _box_quadratic_min(q, b, r):
    """Lower bound of 1/2 q |t|^2 + b t over |t| <= r, coordinate-wise and
    summed. q is the smallest eigenvalue of Q0.

    """
    cands = [np.full_like(b, -r), np.full_like(b, r)]
    if q > 0:
        cands.append(np.clip(-b / q, -r, r))
    vals = np.min([0.5 * q * t ** 2 + b * t for t in cands], axis=0)
    return float(np.sum(vals))

def qcqp_constants(inst):
    n, r, p, alpha = inst.n, inst.r, inst.params.p, inst.params.alpha
    Qnorm = np.array([np.linalg.norm(Q, 2) for Q in inst.Qi])
    bnorm = np.linalg.norm(inst.bi, axis=1)
    q0 = float(np.linalg.norm(inst.Q0, 2))
    qmin = float(np.linalg.eigvalsh(0.5 * (inst.Q0 + inst.Q0.T))[0])
    g_sup = alpha * n * r ** p
    return {
        'L': q0,
        'L_c': float(np.sqrt(np.sum(Qnorm ** 2))),
        'M_c': float(np.sqrt(np.sum((Qnorm * r * math.sqrt(n) + bnorm) ** 2))),
        'inf_fg': _box_quadratic_min(qmin, inst.b0, r) - g_sup,
        'fg_abs_sup': 0.5 * q0 * n * r ** 2 + float(np.sum(np.abs(inst.b0))) * r + g_sup,
    }

################################ Problem ################################
def feasibility_ratio(cx, r_ref):
    """|| max(c, 0) / max(r_ref, 1) || with element-wise max and division.
    """
    cx, r_ref = np.asarray(cx, dtype=np.float64), np.asarray(r_ref, dtype=np.float64)
    return float(np.linalg.norm(np.maximum(cx, 0.0) / np.maximum(np.abs(r_ref), 1.0)))

@as_vectors('x')
def relative_feasibility(inst, x):
    return feasibility_ratio(inst.constraints(x), np.abs(inst.ri))

def qcqp_problem(inst):
    Q0, b0 = inst.Q0, inst.b0
    r, alpha, p = inst.r, inst.params.alpha, inst.params.p
    lp = LpProxParams(p=p, alpha=alpha)

    def g_eval(x):
        if np.max(np.abs(x)) > r:
            return math.inf
        return lp_value(x, alpha, p)

    def h_eval(y):
        return 0.0 if np.all(y <= 0) else math.inf

    consts = qcqp_constants(inst)
    f = SmoothOracle(lambda x: 0.5 * x @ Q0 @ x + b0 @ x, lambda x: Q0 @ x + b0, consts['L'])
    g = ProxOracle(g_eval, lambda z, gamma: prox_lp_box(z, lp(gamma=gamma), r),
                   "alpha*||x||_p^p on [-%g, %g]^n"%(r, r))
    h = ProxOracle(h_eval, lambda z, gamma: project_nonpositive(z), 'R^m_-')
    c = MapOracle(inst.constraints, inst.constraints_vjp, consts['L_c'], consts['M_c'])
    return Problem(f, g, h, c, inst.n, inst.m,
                   inf_fg_lower_bound=consts['inf_fg'],
                   fg_abs_sup_bound=consts['fg_abs_sup'],
                   name='qcqp(seed=%d)'%inst.seed,
                   relative_feasibility=lambda x: relative_feasibility(inst, x))

#### Public API ####
def qcqp_generate(seed, n=20, m=5, alpha=0.05, p=0.8, scale0=5.0):
    return QcqpInstance.generate(seed, QcqpParams(n=n, m=m, alpha=alpha, p=p, scale0=scale0))

qcqp_params = QcqpParams

__all__ = ['QcqpParams', 'QcqpInstance', 'qcqp_params', 'qcqp_generate', 'qcqp_problem',
           'qcqp_constants', 'relative_feasibility', 'feasibility_ratio']
