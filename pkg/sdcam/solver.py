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

"""The single-loop successive DC approximation method.

Each trial solves one prox subproblem at the current iterate. A trial is
accepted when both inequalities of the acceptance test hold; the auxiliary
point y is then refreshed by the prox of h and the schedule index advances.
Rejected trials only shrink mu.

"""

import logging, math

from collections import OrderedDict as odict
from copy import copy
from dataclasses import dataclass, fields
from typing import List, Optional

from sdcam import diagnostics
from sdcam.base import ConfigObject, prop, positive, unit_open
from sdcam.common import AssertLevel, Status
from sdcam.dispatchers import as_vectors
from sdcam.errors import (ConfigError, InfeasibleStartError, InvariantViolation,
                          ProxContractError)
from sdcam.rng import stream
from sdcam.schedules import ScheduleSpec, beta_at
from sdcam.utils import norm

log = logging.getLogger(__name__)

COND_RTOL = 1e-12
HPROX_RTOL = 1e-9

################################ Configuration ################################
class SolverConfig(ConfigObject):
    @staticmethod
    def props():
        return [prop('mu_max', float, 1e7, check=positive, expect='positive'),
                prop('mu_init', float, 1.0, check=positive, expect='positive'),
                prop('rho', float, 0.5, check=unit_open, expect='in (0, 1)'),
                prop('eta', float, 2.0, check=lambda v: v >= 1, expect='>= 1'),
                prop('schedule', ScheduleSpec, ScheduleSpec()),
                prop('max_successful_iters', int, 1000, check=positive, expect='positive'),
                prop('max_total_trials', int, 100000, check=positive, expect='positive'),
                prop('stop_residual', float, check=positive, expect='positive'),
                prop('stop_gap', float, check=positive, expect='positive'),
                prop('assert_level', AssertLevel, AssertLevel.cheap),
                prop('seed', int, 0)]

    def validate(self):
        if not self.mu_init < self.mu_max:
            raise ConfigError("SolverConfig: 'mu_init' (%r) must be smaller than 'mu_max' (%r)"
                              %(self.mu_init, self.mu_max))

################################ State ################################
class SolverState(object):
    """Iterate x^t, auxiliary y^t, the current trial step mu and the
    quantities cached at x^t, which unsuccessful trials reuse.

    """
    def __init__(self, p, x, y, mu):
        self.t = 0
        self.x = x
        self.y = y
        self.mu = mu
        self.trial_count = 0
        self.unsuccessful_count = 0
        self.unsuccessful_since_accept = 0
        self.beta_prev = None
        self.refresh(p)

    def refresh(self, p):
        self.cx = p.c(self.x)
        self.grad = p.f.grad(self.x)
        self.u = self.cx - self.y
        self.jtu = p.c.vjp(self.x, self.u)
        self.fg = float(p.fg(self.x))
        self.hy = float(p.h.value(self.y))

    def __copy__(self):
        result = SolverState.__new__(SolverState)
        result.__dict__.update(self.__dict__)
        return result

    def __repr__(self):
        return "SolverState(t=%d, mu=%.6g, trials=%d, unsuccessful=%d)"%(
            self.t, self.mu, self.trial_count, self.unsuccessful_count)

@dataclass
class TraceRow:
    """One accepted step from x^t to x^{t+1}.
    """
    t: int
    mu_t: float
    beta_t: float
    step_norm: float
    scaled_step: float
    gap: float
    prev_gap: float
    residual: float
    fg_value: float
    h_at_y: float
    H_value: float
    Theta_value: Optional[float]
    unsuccessful_this_iter: int
    rel_feas: Optional[float] = None
    beta_prev: Optional[float] = None
    anchor_gap: Optional[float] = None
    h_at_prev_y: Optional[float] = None
    margin_i: Optional[float] = None
    margin_ii: Optional[float] = None
    tol_cond: Optional[float] = None
    residual_next: Optional[float] = None

    def __json__(self):
        return odict((f.name, getattr(self, f.name)) for f in fields(self))

CSV_FIELDS = ['t', 'mu_t', 'beta_t', 'step_norm', 'scaled_step', 'gap', 'prev_gap',
              'residual', 'fg_value', 'h_at_y', 'H_value', 'Theta_value',
              'unsuccessful_this_iter', 'rel_feas']

@dataclass
class ConditionResult:
    passed: bool
    margin_i: float
    margin_ii: float
    tol_cond: float
    message: str = ''

@dataclass
class SolveResult:
    state: SolverState
    trace: List[TraceRow]
    status: Status

    @property
    def total_trials(self):
        return self.state.trial_count

    @property
    def total_unsuccessful(self):
        return self.state.unsuccessful_count

################################ Algorithm ################################
def trial_step(p, st, beta_t, mu):
    """argmin_x <v, x> + ||x - x^t||^2 / mu + g(x) with
    v = grad f(x^t) + beta_t J_c(x^t)^T (c(x^t) - y^t).

    """
    v = st.grad + beta_t * st.jtu
    return p.g.prox(st.x - 0.5 * mu * v, 0.5 * mu)

def condition_check(p, x, x_trial, y, beta_t, mu, cx=None, fgx=None):
    """Both acceptance inequalities as margins; the trial passes iff both
    margins are >= -tol_cond.

    """
    cx = p.c(x) if cx is None else cx
    fgx = float(p.fg(x)) if fgx is None else fgx
    tol = COND_RTOL * (1.0 + abs(fgx))
    dx = norm(x_trial - x)
    fg_trial = p.fg(x_trial)
    if not fg_trial.finite:
        return ConditionResult(False, -math.inf, -math.inf, tol, "prox of g returned a point outside dom g")
    c_trial = p.c(x_trial)
    margin_i = math.sqrt(1.0 / (mu * beta_t)) * dx - norm(c_trial - cx)
    margin_ii = (fgx + 0.5 * beta_t * norm(cx - y) ** 2) \
        - (fg_trial.value + 0.5 * beta_t * norm(c_trial - y) ** 2) - dx ** 2 / (2.0 * mu)
    return ConditionResult(margin_i >= -tol and margin_ii >= -tol, margin_i, margin_ii, tol)

def _check_hprox(p, st, c_next, y_next, beta_t, h_next, probe):
    # y^{t+1} must beat y^t and one random point of dom h on the y-subproblem
    def obj(u, hu):
        return 0.5 * beta_t * norm(c_next - u) ** 2 + hu
    lhs = obj(y_next, h_next)
    u = p.h.prox(probe.standard_normal(p.m), 1.0)
    for cand, hc in ((st.y, st.hy), (u, float(p.h.value(u)))):
        rhs = obj(cand, hc)
        if lhs > rhs + HPROX_RTOL * (1.0 + abs(rhs)):
            raise InvariantViolation('h_prox_optimality', st.t, lhs, rhs)

def step(p, st, cfg, probe=None):
    """One trial. Returns the next state and a TraceRow when the trial is
    accepted, or the next state and None when it is rejected.

    """
    beta_t = beta_at(cfg.schedule, st.t)
    beta_prev = st.beta_prev if st.beta_prev is not None else beta_t
    mu = st.mu
    x_trial = trial_step(p, st, beta_t, mu)
    cond = condition_check(p, st.x, x_trial, st.y, beta_t, mu, cx=st.cx, fgx=st.fg)
    if cond.message:
        raise ProxContractError("t=%d, mu=%.17g: %s"%(st.t, mu, cond.message))

    nxt = copy(st)
    nxt.trial_count += 1
    if not cond.passed:
        nxt.mu = cfg.rho * mu
        nxt.unsuccessful_count += 1
        nxt.unsuccessful_since_accept += 1
        log.debug("t=%d rejected mu=%.6g margins=(%.3g, %.3g)", st.t, mu, cond.margin_i, cond.margin_ii)
        return nxt, None

    c_next = p.c(x_trial)
    y_next = p.h.prox(c_next, 1.0 / beta_t)
    h_next = p.h.value(y_next)
    if not h_next.finite:
        raise ProxContractError("t=%d: prox of h returned a point outside dom h"%st.t)
    if probe is not None:
        _check_hprox(p, st, c_next, y_next, beta_t, h_next.value, probe)

    grad_next = p.f.grad(x_trial)
    psi, xi = diagnostics.subgradient_witnesses(p, st.x, x_trial, st.y, mu, beta_t, beta_prev,
                                                grad=st.grad, jtu=st.jtu)
    residual = norm(grad_next + psi + p.c.vjp(st.x, xi))
    residual_next = norm(grad_next + psi + p.c.vjp(x_trial, xi))

    dx = norm(x_trial - st.x)
    fg_next = float(p.fg(x_trial))
    prev_gap = norm(c_next - st.y)
    inf_fg = p.inf_fg_lower_bound
    theta = None if inf_fg is None else \
        diagnostics.theta_from_parts(fg_next, beta_t, prev_gap, st.hy, inf_fg)
    rel = p.relative_feasibility(x_trial) if p.relative_feasibility is not None else None
    row = TraceRow(t=st.t, mu_t=mu, beta_t=beta_t, step_norm=dx, scaled_step=dx / mu,
                   gap=norm(c_next - y_next), prev_gap=prev_gap, residual=residual,
                   fg_value=fg_next, h_at_y=h_next.value,
                   H_value=diagnostics.H_from_parts(fg_next, beta_t, prev_gap, st.hy),
                   Theta_value=theta, unsuccessful_this_iter=st.unsuccessful_since_accept,
                   rel_feas=rel, beta_prev=beta_prev, anchor_gap=norm(st.u),
                   h_at_prev_y=st.hy, margin_i=cond.margin_i, margin_ii=cond.margin_ii,
                   tol_cond=cond.tol_cond, residual_next=residual_next)

    nxt.x = x_trial
    nxt.y = y_next
    nxt.t = st.t + 1
    nxt.beta_prev = beta_t
    nxt.mu = min(cfg.mu_max, cfg.eta * mu)
    nxt.unsuccessful_since_accept = 0
    nxt.cx = c_next
    nxt.grad = grad_next
    nxt.u = c_next - y_next
    nxt.jtu = p.c.vjp(x_trial, nxt.u)
    nxt.fg = fg_next
    nxt.hy = h_next.value
    log.debug("t=%d accepted mu=%.6g beta=%.6g step=%.3g gap=%.3g", st.t, mu, beta_t, dx, row.gap)
    return nxt, row

def _assert_row(prev, row, theta_first, level):
    violations = diagnostics.condition_violations(row)
    if level == AssertLevel.full:
        violations += diagnostics.theta_violations(prev, row, theta_first)
        violations += diagnostics.descent_violations(prev, row)
    if violations:
        v = violations[0]
        raise InvariantViolation(v.name, v.T, v.lhs, v.rhs)

def _stopped(cfg, row):
    if cfg.stop_residual is None and cfg.stop_gap is None:
        return False
    return (cfg.stop_residual is None or row.scaled_step <= cfg.stop_residual) \
        and (cfg.stop_gap is None or row.gap <= cfg.stop_gap)

@as_vectors('x0', 'y0')
def solve(p, cfg, x0, y0, callback=None):
    """Runs trials until max_successful_iters accepted steps, the trial
    budget, or every stop threshold that is set is met.

    """
    p.check_x(x0)
    p.check_y(y0)
    if not p.g.value(x0).finite:
        raise InfeasibleStartError("%s: x0 lies outside dom g"%p.name)
    if not p.h.value(y0).finite:
        raise InfeasibleStartError("%s: y0 lies outside dom h"%p.name)

    level = cfg.assert_level
    probe = stream(cfg.seed, 'probe') if level == AssertLevel.full else None
    st = SolverState(p, x0.copy(), y0.copy(), cfg.mu_init)
    trace = []
    status = Status.iteration_budget
    log.info("solving %s (n=%d, m=%d) with %s", p.name, p.n, p.m, cfg.schedule)

    while st.t < cfg.max_successful_iters:
        if st.trial_count >= cfg.max_total_trials:
            status = Status.trial_budget
            break
        st, row = step(p, st, cfg, probe)
        if row is None:
            continue
        if level != AssertLevel.off:
            _assert_row(trace[-1] if trace else None, row,
                        trace[0].Theta_value if trace else row.Theta_value, level)
        trace.append(row)
        if callback is not None:
            callback(st, row)
        if _stopped(cfg, row):
            status = Status.converged
            break

    log.info("%s: %s after %d accepted steps, %d trials (%d unsuccessful)",
             p.name, status, st.t, st.trial_count, st.unsuccessful_count)
    return SolveResult(st, trace, status)

#### Public API ####
solver_config = SolverConfig

__all__ = ['SolverConfig', 'solver_config', 'SolverState', 'TraceRow', 'CSV_FIELDS',
           'ConditionResult', 'SolveResult', 'trial_step', 'condition_check',
           'step', 'solve']
