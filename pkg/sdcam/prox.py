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

"""Proximal operators and projections for the built-in problem families.

Every operator is a pure function of numpy arrays. Separable operators act
coordinate-wise, and the scalar versions are thin wrappers around the
vector ones.

"""

import logging

import numpy as np
from scipy.optimize import minimize_scalar

from sdcam.base import ConfigObject, prop, positive
from sdcam.dispatchers import as_vectors
from sdcam.errors import ConfigError, DimensionError
from sdcam.utils import Wrapper

log = logging.getLogger(__name__)

TIE_TOL = 1e-12

################################ Custom Types ################################
class ProxPath(Wrapper):
    pass
ProxPath.threshold = ProxPath('threshold')
ProxPath.newton    = ProxPath('newton')
ProxPath.bounded   = ProxPath('bounded')

class LpProxParams(ConfigObject):
    """Parameters of the prox of u -> alpha*|u|^p with step gamma.
    """
    @staticmethod
    def props():
        return [prop('p', float, required=True, check=lambda v: 0 < v < 1, expect='in (0, 1)'),
                prop('alpha', float, required=True, check=positive, expect='positive'),
                prop('gamma', float, 1.0, check=positive, expect='positive'),
                prop('newton_tol', float, 1e-12, check=positive, expect='positive'),
                prop('newton_max_iter', int, 100, check=positive, expect='positive')]

    @property
    def weight(self):
        return self.alpha * self.gamma

################################ Convex operators ################################
@as_vectors('z')
def soft_threshold(z, tau):
    if tau < 0:
        raise ConfigError("soft_threshold: tau must be nonnegative, got %r"%tau)
    return np.sign(z) * np.maximum(np.abs(z) - tau, 0.0)

@as_vectors('z')
def prox_l1_box(z, gamma_lambda, R):
    """Prox of lambda*||.||_1 plus the indicator of the box [-R, R]^n.
    """
    if R <= 0:
        raise ConfigError("prox_l1_box: R must be positive, got %r"%R)
    return np.clip(soft_threshold(z, gamma_lambda), -R, R)

@as_vectors('z', 'lo', 'hi')
def project_box(z, lo, hi):
    lo = np.broadcast_to(lo, z.shape)
    hi = np.broadcast_to(hi, z.shape)
    bad = np.flatnonzero(lo > hi)
    if bad.size:
        i = bad[0]
        raise ConfigError("project_box: lo[%d]=%r exceeds hi[%d]=%r"%(i, lo[i], i, hi[i]))
    return np.minimum(np.maximum(z, lo), hi)

@as_vectors('y')
def project_nonpositive(y):
    return np.minimum(y, 0.0)

@as_vectors('y', 'b')
def prox_singleton(y, b):
    if y.shape != b.shape:
        raise DimensionError("prox_singleton: y has shape %s, b has shape %s"%(y.shape, b.shape))
    return b.copy()

################################ l_p quasi-norm ################################
def lp_threshold(weight, p):
    """Smallest |z| for which the prox of weight*|u|^p (unit step) is
    nonzero.

    """
    u = (2.0 * weight * (1.0 - p)) ** (1.0 / (2.0 - p))
    return u + weight * p * u ** (p - 1.0)

def lp_value(u, alpha, p):
    return alpha * float(np.sum(np.abs(u) ** p))

def _lp_objective(u, a, weight, p):
    # gamma * q(u) for q(u) = (u - a)^2 / (2 gamma) + alpha |u|^p
    return 0.5 * (u - a) ** 2 + weight * np.abs(u) ** p

def _newton(a, weight, p, tol, max_iter):
    """Largest root of u - a + weight*p*u^(p-1) on (0, a] for every entry
    of a. The left side is convex in u, so Newton from u = a decreases
    monotonically to the root. Returns the roots and a mask of entries
    that did not converge.

    """
    u = a.copy()
    done = np.zeros(a.shape, dtype=bool)
    for _ in range(max_iter):
        phi = u - a + weight * p * u ** (p - 1.0)
        done |= np.abs(phi) <= tol * (1.0 + a)
        if done.all():
            break
        dphi = 1.0 + weight * p * (p - 1.0) * u ** (p - 2.0)
        ok = (dphi > 0) & ~done
        step = np.where(ok, phi / np.where(ok, dphi, 1.0), 0.0)
        u = np.where(ok, u - step, u)
        done |= ok & (np.abs(step) <= np.finfo(float).eps * u)
        if not ok[~done].all():
            break
    bad = ~done | ~np.isfinite(u) | (u <= 0) | (u > a)
    return u, bad

def _bounded_search(a, weight, p, tol):
    res = minimize_scalar(lambda u: _lp_objective(u, a, weight, p), bounds=(0.0, a),
                          method='bounded', options={'xatol': max(tol, 1e-14) * (1.0 + a)})
    return float(res.x)

@as_vectors('z')
def prox_lp(z, params, with_paths=False):
    """Coordinate-wise global minimizer of

        (1/(2 gamma)) (u - z)^2 + alpha |u|^p,

    with ties between zero and a nonzero local minimizer resolved to zero.
    With with_paths, also returns a boolean mask of the coordinates that
    needed the bounded-search fallback.

    """
    w, p = params.weight, params.p
    a = np.abs(z)
    out = np.zeros_like(a)
    fallback = np.zeros(a.shape, dtype=bool)
    active = np.flatnonzero(a > lp_threshold(w, p))
    if active.size:
        aa = a[active]
        u, bad = _newton(aa, w, p, params.newton_tol, params.newton_max_iter)
        for k in np.flatnonzero(bad):
            log.debug("newton did not converge for |z|=%.17g, weight=%.17g; using bounded search", aa[k], w)
            u[k] = _bounded_search(aa[k], w, p, params.newton_tol)
        fallback[active] = bad
        zero_wins = _lp_objective(u, aa, w, p) >= 0.5 * aa ** 2 - TIE_TOL * (1.0 + 0.5 * aa ** 2)
        out[active] = np.where(zero_wins, 0.0, u)
    out = np.sign(z) * out
    if with_paths:
        return out, fallback
    return out

def prox_lp_power(z, params, with_path=False):
    """Scalar prox of u -> alpha*|u|^p. With with_path, also returns the
    ProxPath that produced the value.

    """
    u, fallback = prox_lp(np.array([float(z)]), params, with_paths=True)
    value = float(u[0])
    if not with_path:
        return value
    if fallback[0]:
        path = ProxPath.bounded
    elif abs(float(z)) <= lp_threshold(params.weight, params.p):
        path = ProxPath.threshold
    else:
        path = ProxPath.newton
    return value, path

@as_vectors('z')
def prox_lp_box(z, params, r):
    """Coordinate-wise minimizer of (1/(2 gamma))(u - z)^2 + alpha |u|^p
    over [-r, r], chosen among zero, the boundary point on the side of z
    and the clamped unconstrained prox. r may be +inf.

    """
    if not r > 0:
        raise ConfigError("prox_lp_box: r must be positive, got %r"%r)
    w, p = params.weight, params.p
    inner = np.clip(prox_lp(z, params), -r, r)
    cands = np.stack([np.zeros_like(z), np.copysign(np.full_like(z, r), z), inner])
    with np.errstate(invalid='ignore', over='ignore'):
        vals = _lp_objective(cands, z[None, :], w, p)
    vals = np.where(np.isfinite(vals), vals, np.inf)
    # zero is first, so exact ties keep the sparse candidate
    best = np.argmin(vals, axis=0)
    return cands[best, np.arange(z.size)]

#### Public API ####
threshold_path = ProxPath.threshold
newton_path    = ProxPath.newton
bounded_path   = ProxPath.bounded

__all__ = ['ProxPath', 'LpProxParams', 'soft_threshold', 'prox_l1_box',
           'project_box', 'project_nonpositive', 'prox_singleton',
           'lp_threshold', 'lp_value', 'prox_lp', 'prox_lp_power', 'prox_lp_box']
