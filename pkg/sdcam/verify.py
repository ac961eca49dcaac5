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

"""Verification suite: finite-difference checks of the problem oracles,
brute-force grid oracles for the proximal maps, the schedule sandwich,
and the structural properties of each generated family.

"""

import logging, math

from collections import OrderedDict as odict
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from sdcam import prox as px
from sdcam.common import ScheduleFamily
from sdcam.core import MapOracle, Problem, SmoothOracle, check_gradient, check_vjp
from sdcam.rng import stream
from sdcam.schedules import ScheduleSpec, beta_at
from sdcam.utils import class_name

log = logging.getLogger(__name__)

GRID_POINTS = 20001
PROX_TOL = 1e-8
PSD_TOL = 1e-10
SANDWICH_RTOL = 1e-12
CONSTANT_RTOL = 1e-6

################################ Reports ################################
@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: dict = field(default_factory=odict)

    def __json__(self):
        return odict([('name', self.name), ('passed', self.passed), ('detail', self.detail)])

@dataclass
class VerificationReport:
    items: list = field(default_factory=list)

    def add(self, name, passed, **detail):
        item = CheckItem(name, bool(passed), odict(sorted(detail.items())))
        self.items.append(item)
        log.log(logging.INFO if item.passed else logging.WARNING, "%s: %s", name,
                'pass' if item.passed else 'FAIL %s'%dict(item.detail))
        return item

    @property
    def passed(self):
        return all(i.passed for i in self.items)

    def failures(self):
        return [i for i in self.items if not i.passed]

    def __json__(self):
        return odict([('passed', self.passed), ('checks', self.items)])

################################ Grid oracle ################################
def grid_minimize(q, lo, hi, num=GRID_POINTS):
    """Brute-force minimizer of the scalar function q on [lo, hi]: the best
    point of a uniform grid, refined by a bounded scalar search between
    its neighbours. q must accept arrays.

    """
    grid = np.linspace(lo, hi, num)
    vals = q(grid)
    k = int(np.argmin(vals))
    best_u, best_q = float(grid[k]), float(vals[k])
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, num - 1)]
    if b > a:
        res = minimize_scalar(lambda u: float(q(np.array([u]))[0]), bounds=(a, b),
                              method='bounded', options={'xatol': 1e-14 * (1.0 + abs(b))})
        if res.fun < best_q:
            best_u, best_q = float(res.x), float(res.fun)
    return best_u, best_q

def _lp_scalar(alpha, p, gamma, z):
    return lambda u: (u - z) ** 2 / (2.0 * gamma) + alpha * np.abs(u) ** p

def _random_lp_params(rng):
    p = float(rng.choice([0.5, 0.8]))
    gamma = float(10.0 ** rng.uniform(-3.0, 3.0))
    alpha = float(10.0 ** rng.uniform(-2.0, 1.0))
    return px.LpProxParams(p=p, alpha=alpha, gamma=gamma)

def _beats_grid(name, report, trials, worst, where):
    return report.add(name, worst <= 0.0, trials=trials, worst_excess=worst, location=where)

def check_prox_lp(report, rng, trials=1000, tol=PROX_TOL):
    """prox_lp_power against the grid oracle on [-|z| - 1, |z| + 1].
    """
    worst, where = -math.inf, None
    for k in range(trials):
        params = _random_lp_params(rng)
        z = float(rng.normal(0.0, 3.0))
        q = _lp_scalar(params.alpha, params.p, params.gamma, z)
        u = px.prox_lp_power(z, params)
        _, best = grid_minimize(q, -abs(z) - 1.0, abs(z) + 1.0)
        excess = float(q(np.array([u]))[0]) - best - tol * (1.0 + abs(best))
        if excess > worst:
            worst, where = excess, k
    return _beats_grid('prox_lp_power', report, trials, worst, where)

def check_prox_lp_box(report, rng, trials=1000, tol=PROX_TOL):
    worst, where = -math.inf, None
    for k in range(trials):
        params = _random_lp_params(rng)
        z = float(rng.normal(0.0, 3.0))
        r = float(rng.uniform(0.1, 3.0))
        q = _lp_scalar(params.alpha, params.p, params.gamma, z)
        u = float(px.prox_lp_box(np.array([z]), params, r)[0])
        _, best = grid_minimize(q, -r, r)
        excess = float(q(np.array([u]))[0]) - best - tol * (1.0 + abs(best))
        if abs(u) > r:
            excess = math.inf
        if excess > worst:
            worst, where = excess, k
    return _beats_grid('prox_lp_box', report, trials, worst, where)

def check_convex_prox(report, rng, trials=1000, tol=PROX_TOL):
    """soft_threshold and prox_l1_box against the grid oracle, plus
    nonexpansiveness on random pairs.

    """
    worst, where, expand = -math.inf, None, 0.0
    for k in range(trials):
        gamma, lam = float(10.0 ** rng.uniform(-3.0, 3.0)), float(10.0 ** rng.uniform(-2.0, 1.0))
        R = float(rng.uniform(0.1, 3.0))
        z = float(rng.normal(0.0, 3.0))
        q = lambda u: (u - z) ** 2 / (2.0 * gamma) + lam * np.abs(u)
        u1 = float(px.soft_threshold(np.array([z]), gamma * lam)[0])
        u2 = float(px.prox_l1_box(np.array([z]), gamma * lam, R)[0])
        _, b1 = grid_minimize(q, -abs(z) - 1.0, abs(z) + 1.0)
        _, b2 = grid_minimize(q, -R, R)
        excess = max(float(q(np.array([u1]))[0]) - b1 - tol * (1.0 + abs(b1)),
                     float(q(np.array([u2]))[0]) - b2 - tol * (1.0 + abs(b2)))
        if excess > worst:
            worst, where = excess, k
        z1, z2 = rng.normal(0.0, 3.0, 5), rng.normal(0.0, 3.0, 5)
        d = np.linalg.norm(z1 - z2)
        for P in (lambda v: px.soft_threshold(v, gamma * lam),
                  lambda v: px.prox_l1_box(v, gamma * lam, R),
                  lambda v: px.project_box(v, -R, R),
                  px.project_nonpositive):
            expand = max(expand, float(np.linalg.norm(P(z1) - P(z2))) - d)
    _beats_grid('convex_prox', report, trials, worst, where)
    return report.add('nonexpansive', expand <= 1e-12, worst_expansion=expand)

################################ Schedules ################################
def sandwich_violation(s, t_max=100000):
    """Largest relative violation of alpha0 (t+1)^delta <= beta_t <=
    gamma0 (t+1)^delta and beta_t - beta_{t-1} <= eta0 t^(delta-1) for
    t <= t_max. Nonpositive means the schedule satisfies both.

    """
    alpha0, gamma0, eta0 = s.constants()
    t = np.arange(t_max + 1, dtype=np.float64)
    beta = np.array([beta_at(s, k) for k in range(t_max + 1)])
    env = (t + 1.0) ** s.delta
    lower = alpha0 * env - beta
    upper = beta - gamma0 * env
    inc = np.diff(beta) - eta0 * t[1:] ** (s.delta - 1.0)
    worst = max(float(np.max(lower / beta)), float(np.max(upper / beta)),
                float(np.max(inc / beta[1:])))
    return worst

def check_schedule(report, s, t_max=100000):
    worst = sandwich_violation(s, t_max)
    return report.add('schedule_sandwich[%s,K=%d]'%(s.family, s.K), worst <= SANDWICH_RTOL,
                      worst_violation=worst, t_max=t_max)

################################ Problem oracles ################################
def sample_points(p, x0, count, rng):
    """Points of dom g near x0: Gaussian perturbations mapped back into
    dom g by the prox of g at a negligible step.

    """
    scale = 0.5 * max(1.0, float(np.max(np.abs(x0))))
    return [p.g.prox(x0 + scale * rng.standard_normal(p.n), 1e-12) for _ in range(count)]

def check_oracles(report, p, points, seed=0):
    worst_g, worst_v, bad = 0.0, 0.0, []
    for k, x in enumerate(points):
        g = check_gradient(p.f, x, seed=seed + k)
        v = check_vjp(p.c, x, seed=seed + k)
        worst_g, worst_v = max(worst_g, g.max_error), max(worst_v, v.max_error)
        if not g.passed:
            bad.append(('gradient', k, g.location, g.message))
        if not v.passed:
            bad.append(('vjp', k, v.location, v.message))
    report.add('gradient[%s]'%p.name, not any(b[0] == 'gradient' for b in bad),
               points=len(points), max_error=worst_g,
               failures=[b for b in bad if b[0] == 'gradient'])
    return report.add('vjp[%s]'%p.name, not any(b[0] == 'vjp' for b in bad),
                      points=len(points), max_error=worst_v,
                      failures=[b for b in bad if b[0] == 'vjp'])

def spectral_norm(A, rng, iters=5000, rtol=1e-15):
    """Largest singular value of A by power iteration on A^T A. Never
    exceeds the true value, up to rounding.

    """
    A = np.asarray(A, dtype=np.float64)
    v = rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    s = 0.0
    for _ in range(iters):
        w = A.T @ (A @ v)
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0
        v = w / nw
        s_next = math.sqrt(nw)
        if abs(s_next - s) <= rtol * s_next:
            break
        s = s_next
    return float(np.linalg.norm(A @ v))

def structure_box(inst, x0, free_width=2.0 * math.pi):
    """The box dom g lives in, with unbounded sides cut to x0 +- free_width.
    """
    family = inst.family
    if family == 'qcqp':
        lo, hi = np.full(inst.n, -inst.r), np.full(inst.n, inst.r)
    elif family == 'mlp':
        lo, hi = np.full(inst.n, -inst.C_radius), np.full(inst.n, inst.C_radius)
    else:
        lo, hi = inst.bounds()
    lo = np.where(np.isfinite(lo), lo, x0 - free_width)
    hi = np.where(np.isfinite(hi), hi, x0 + free_width)
    return lo, hi

def _agrees(estimate, claimed, rtol=CONSTANT_RTOL):
    return claimed is not None and abs(estimate - claimed) <= rtol * max(1.0, abs(claimed))

def check_constants(report, inst, p, x0, rng, samples=20, tol=1e-9):
    """Cross-checks the constants attached to p: spectral norms by power
    iteration where they are closed-form, and sup ||J_c(x)^T w|| / ||w||
    over box corners and interior points against M_c.

    """
    detail = dict(L=p.L, L_c=p.L_c, M_c=p.M_c, M_h=p.M_h, inf_fg=p.inf_fg_lower_bound,
                  fg_abs_sup=p.fg_abs_sup_bound, h_sup=p.h_sup_on_image_bound)
    checked, passed = [], True
    if inst.family == 'qcqp':
        L_power = spectral_norm(inst.Q0, rng)
        L_c_power = math.sqrt(sum(spectral_norm(Q, rng) ** 2 for Q in inst.Qi))
        passed = _agrees(L_power, p.L) and _agrees(L_c_power, p.L_c)
        detail.update(L_power=L_power, L_c_power=L_c_power)
        checked += ['L', 'L_c']
    if p.M_c is not None:
        lo, hi = structure_box(inst, x0)
        worst = 0.0
        for k in range(samples):
            if k % 2:
                x = lo + (hi - lo) * rng.random(p.n)
            else:
                x = np.where(rng.random(p.n) < 0.5, lo, hi)
            w = rng.standard_normal(p.m)
            worst = max(worst, float(np.linalg.norm(p.c.vjp(x, w)) / np.linalg.norm(w)))
        passed = passed and worst <= p.M_c * (1.0 + tol)
        detail.update(M_c_sampled=worst, samples=samples)
        checked.append('M_c')
    return report.add('constants[%s]'%p.name, passed, checked=checked, **detail)

def check_structure(report, inst, p, x0, rng, samples=20):
    family = inst.family
    if family == 'qcqp':
        eigs = [float(np.linalg.eigvalsh(0.5 * (Q + Q.T))[0]) for Q in inst.Qi]
        report.add('qcqp_psd', min(eigs) >= -PSD_TOL, min_eigenvalue=min(eigs))
        report.add('qcqp_q0_identity', np.array_equal(inst.Q0, np.eye(inst.n)))
        report.add('qcqp_constraints', bool(np.all(inst.ri < 0)) and inst.r > 0,
                   max_ri=float(np.max(inst.ri)), r=inst.r,
                   c_at_zero_feasible=bool(np.all(p.c(np.zeros(p.n)) < 0)))
    elif family == 'mlp':
        R = inst.C_radius
        report.add('mlp_box', R > 0 and float(np.max(np.abs(x0))) <= R, C_radius=R)
    elif family == 'mimo':
        lo, hi = inst.bounds()
        report.add('mimo_start', bool(np.all(x0 >= lo) and np.all(x0 <= hi)),
                   r_lo=inst.params.r_lo)
    check_constants(report, inst, p, x0, rng, samples)

def understate_jac_norm(p, factor=0.1):
    """A copy of p claiming M_c scaled by factor. Used as a negative
    control for the constants check.

    """
    c = MapOracle(p.c, p.c.vjp, p.L_c, p.M_c * factor)
    return Problem(p.f, p.g, p.h, c, p.n, p.m,
                   inf_fg_lower_bound=p.inf_fg_lower_bound,
                   h_lipschitz_bound=p.h_lipschitz_bound,
                   h_sup_on_image_bound=p.h_sup_on_image_bound,
                   fg_abs_sup_bound=p.fg_abs_sup_bound,
                   name=p.name + '+understated',
                   relative_feasibility=p.relative_feasibility)

def corrupt_gradient(p, coordinate=0, offset=1.0):
    """A copy of p whose gradient is off by offset in one coordinate. Used
    as a negative control for the gradient check.

    """
    e = np.zeros(p.n)
    e[coordinate] = offset
    f = SmoothOracle(p.f, lambda x: p.f.grad(x) + e, p.L)
    return Problem(f, p.g, p.h, p.c, p.n, p.m,
                   inf_fg_lower_bound=p.inf_fg_lower_bound,
                   h_lipschitz_bound=p.h_lipschitz_bound,
                   h_sup_on_image_bound=p.h_sup_on_image_bound,
                   fg_abs_sup_bound=p.fg_abs_sup_bound,
                   name=p.name + '+corrupted',
                   relative_feasibility=p.relative_feasibility)

def run_checks(inst, seed=0, points=10, prox_trials=1000, schedule=None, p=None):
    """The full suite for one instance. p overrides the problem built
    from the instance (for negative controls).

    """
    report = VerificationReport()
    p = inst.problem() if p is None else p
    x0, _ = inst.start()
    rng = stream(seed, 'probe')
    check_oracles(report, p, sample_points(p, x0, points, rng), seed)
    check_structure(report, inst, p, x0, rng)
    check_prox_lp(report, rng, prox_trials)
    check_prox_lp_box(report, rng, prox_trials)
    check_convex_prox(report, rng, prox_trials)
    specs = [schedule] if schedule is not None else \
        [ScheduleSpec(family=ScheduleFamily.blocked, K=K, delta=inst.solver_defaults().get('schedule', {}).get('delta', 0.5))
         for K in (1, 3, 10)]
    for s in specs:
        check_schedule(report, s)
    log.info("%s: %d checks, %d failed", class_name(inst), len(report.items), len(report.failures()))
    return report

__all__ = ['CheckItem', 'VerificationReport', 'grid_minimize', 'check_prox_lp',
           'check_prox_lp_box', 'check_convex_prox', 'sandwich_violation',
           'check_schedule', 'sample_points', 'check_oracles', 'spectral_norm', 'structure_box',
           'check_constants', 'check_structure', 'understate_jac_norm', 'corrupt_gradient',
           'run_checks']
