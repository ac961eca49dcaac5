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

"""Stationarity residuals, merit functions, rate constants and the
checks of the descent and rate inequalities against a solver trace.

Trace rows are read by attribute. Row t holds the accepted step from x^t
to x^{t+1}: mu_t, beta_t, beta_prev (beta_{t-1}, with beta_{-1} = beta_0),
step_norm, gap = ||c(x^{t+1}) - y^{t+1}||, prev_gap = ||c(x^{t+1}) - y^t||,
anchor_gap = ||c(x^t) - y^t||, residual (Jacobian at x^t), residual_next
(Jacobian at x^{t+1}), fg_value = f(x^{t+1}) + g(x^{t+1}), h_at_prev_y = h(y^t)
and unsuccessful_this_iter.

"""

import logging, math

from collections import OrderedDict as odict, namedtuple
from dataclasses import dataclass, field
from typing import List

import numpy as np

from sdcam.common import Provenance, Regime
from sdcam.dispatchers import as_vectors
from sdcam.errors import ConfigError, NumericalError
from sdcam.utils import norm

log = logging.getLogger(__name__)

RATE_TOL = 1e-9

################################ Merit functions ################################
def H_from_parts(fg, beta, gap, h):
    return fg + 0.5 * beta * gap ** 2 + h

def theta_from_parts(fg, beta, gap, h, inf_fg):
    return (fg - inf_fg) / beta + 0.5 * gap ** 2 + h / beta

def _finite_parts(p, x, y):
    fg = p.fg(x)
    if not fg.finite:
        raise NumericalError("%s: x lies outside dom g"%p.name)
    h = p.h.value(y)
    if not h.finite:
        raise NumericalError("%s: y lies outside dom h"%p.name)
    return fg.value, h.value, norm(p.c(x) - y)

@as_vectors('x', 'y')
def H_value(p, x, beta, y):
    """H(x, beta, y) = f(x) + g(x) + (beta/2)||c(x) - y||^2 + h(y).
    """
    fg, h, gap = _finite_parts(p, x, y)
    return H_from_parts(fg, beta, gap, h)

@as_vectors('x', 'y')
def theta_value(p, x, beta, y, inf_fg):
    """Theta(x, beta, y) = (f(x) + g(x) - inf_fg)/beta + ||c(x) - y||^2/2 + h(y)/beta.
    """
    fg, h, gap = _finite_parts(p, x, y)
    return theta_from_parts(fg, beta, gap, h, inf_fg)

################################ Residuals ################################
@as_vectors('x', 'x_next', 'y')
def subgradient_witnesses(p, x, x_next, y, mu, beta, beta_prev, grad=None, jtu=None):
    """Exact elements psi of dg(x_next) and xi of dh(y) read off the
    optimality conditions of the x- and y-subproblems.

    """
    u = p.c(x) - y
    grad = p.f.grad(x) if grad is None else grad
    jtu = p.c.vjp(x, u) if jtu is None else jtu
    psi = -grad - beta * jtu - (2.0 / mu) * (x_next - x)
    xi = beta_prev * u
    return psi, xi

@as_vectors('x', 'x_next', 'y')
def stationarity_residual(p, x, x_next, y, mu, beta, beta_prev, grad=None, grad_next=None, jtu=None):
    """||grad f(x_next) + psi + J_c(x)^T xi|| for the witnesses above; an
    upper bound on dist(0, grad f(x_next) + dg(x_next) + J_c(x)^T dh(y)).

    """
    psi, xi = subgradient_witnesses(p, x, x_next, y, mu, beta, beta_prev, grad=grad, jtu=jtu)
    grad_next = p.f.grad(x_next) if grad_next is None else grad_next
    return norm(grad_next + psi + p.c.vjp(x, xi))

@dataclass
class Certificate:
    passed: bool
    d1: float
    d2: float
    d3: float

    def __json__(self):
        return odict([('passed', self.passed), ('d1', self.d1), ('d2', self.d2), ('d3', self.d3)])

@as_vectors('x', 'y', 'z', 'psi', 'xi')
def certificate(p, x, y, z, psi, xi, eps1, eps2, eps3, grad=None):
    """Tests whether x is an (eps1, eps2, eps3)-stationary point with the
    given witnesses psi in dg(x) and xi in dh(y), Jacobian taken at z.

    """
    grad = p.f.grad(x) if grad is None else grad
    d1 = norm(grad + psi + p.c.vjp(z, xi))
    d2 = norm(p.c(x) - y)
    d3 = norm(x - z)
    return Certificate(d1 <= eps1 and d2 <= eps2 and d3 <= eps3, d1, d2, d3)

################################ Subsequences ################################
Subsequence = namedtuple('Subsequence', ['indices', 'a_values', 'b_prev_values'])

def select_subsequence(a):
    """All 1-based T > 1 with b_T <= b_{T-1}, where b_T is the running
    average of a_1..a_T. Equivalently a_T <= b_{T-1}; the certified pairs
    (a_T, b_{T-1}) are returned alongside the indices.

    """
    a = np.asarray(a, dtype=np.float64).ravel()
    if a.size == 0:
        raise ValueError("select_subsequence: empty sequence")
    if np.any(a < 0) or not np.all(np.isfinite(a)):
        raise ValueError("select_subsequence: entries must be finite and nonnegative")
    b = np.cumsum(a) / np.arange(1, a.size + 1)
    T = np.arange(2, a.size + 1)
    keep = a[1:] <= b[:-1]
    return Subsequence([int(k) for k in T[keep]], a[1:][keep].tolist(), b[:-1][keep].tolist())

def suggest_delta(eps1, eps2):
    """delta balancing the eps1 and eps2 complexity terms under a
    Lipschitz h.

    """
    for name, e in (('eps1', eps1), ('eps2', eps2)):
        if not 0 < e < 1:
            raise ConfigError("suggest_delta: %s must lie in (0, 1), got %r"%(name, e))
    l1, l2 = math.log(1.0 / eps1), math.log(1.0 / eps2)
    return 1.0 / (2.0 * l1 / l2 + 1.0)

################################ Constants ################################
Constant = namedtuple('Constant', ['value', 'provenance'])

_unavailable = Constant(None, Provenance.unavailable)

class RateConstants(object):
    """A table of named constants, each a value with a provenance tag.
    Reading an absent constant yields None.

    """
    def __init__(self):
        self._table = odict()

    def __setitem__(self, name, constant):
        self._table[name] = constant

    def __getitem__(self, name):
        return self._table.get(name, _unavailable)

    def __getattr__(self, name):
        if name.startswith('_'):
            raise AttributeError(name)
        return self[name].value

    def __contains__(self, name):
        return self[name].value is not None

    def missing(self, names):
        return [n for n in names if n not in self]

    def names(self):
        return list(self._table)

    def __json__(self):
        return odict((k, odict([('value', c.value), ('provenance', c.provenance)]))
                     for k, c in self._table.items())

def _put(consts, name, value, provenance):
    consts[name] = Constant(None, Provenance.unavailable) if value is None \
        else Constant(float(value), provenance)

def _derive(consts, name, needs, fn):
    if consts.missing(needs):
        _put(consts, name, None, Provenance.unavailable)
    else:
        _put(consts, name, fn(*[consts[n].value for n in needs]), Provenance.computed)

def rate_constants(p, s, first_rows, solver=None, **bounds):
    """Fills every constant whose inputs are available.

    first_rows are the leading trace rows (row 0 must carry anchor_gap and
    h_at_prev_y). solver supplies mu_max, mu_init, rho and eta. Keyword
    bounds (L, L_c, M_c, M_h, inf_fg, fg_abs_sup, h_sup) override the
    constants attached to the problem.

    """
    unknown = set(bounds) - {'L', 'L_c', 'M_c', 'M_h', 'inf_fg', 'fg_abs_sup', 'h_sup'}
    if unknown:
        raise ConfigError("rate_constants got unexpected bound(s) %s"%', '.join(sorted(unknown)))
    attached = {'L': p.L, 'L_c': p.L_c, 'M_c': p.M_c, 'M_h': p.M_h,
                'inf_fg': p.inf_fg_lower_bound, 'fg_abs_sup': p.fg_abs_sup_bound,
                'h_sup': p.h_sup_on_image_bound}
    attached.update((k, v) for k, v in bounds.items() if v is not None)

    c = RateConstants()
    for k, v in attached.items():
        _put(c, k, v, Provenance.user_supplied)
    alpha0, gamma0, eta0 = s.constants()
    for k, v in (('alpha0', alpha0), ('gamma0', gamma0), ('eta0', eta0),
                 ('delta', s.delta), ('beta0', s.beta0)):
        _put(c, k, v, Provenance.computed)
    if solver is not None:
        for k in ('mu_max', 'mu_init', 'rho', 'eta'):
            _put(c, k, getattr(solver, k), Provenance.user_supplied)

    row0 = first_rows[0] if len(first_rows) else None
    if row0 is not None:
        _put(c, 'fg1', row0.fg_value, Provenance.computed)
        _put(c, 'pg0', row0.prev_gap, Provenance.computed)
        _put(c, 'h0', getattr(row0, 'h_at_prev_y', None), Provenance.computed)
        _put(c, 'g0', getattr(row0, 'anchor_gap', None), Provenance.computed)

    # M0 bounds ||c(x^t) - y^t|| for every t
    _derive(c, 'M0', ['g0', 'fg1', 'pg0', 'h0', 'inf_fg', 'beta0'],
            lambda g0, fg1, pg0, h0, inf, b0:
                max(g0, math.sqrt(max(0.0, 4.0 / b0 * (fg1 - inf) + 2.0 * pg0 ** 2 + 4.0 / b0 * h0))))
    _derive(c, 'K0', ['fg1', 'beta0', 'pg0', 'h0', 'gamma0', 'delta', 'M_h', 'alpha0', 'inf_fg'],
            lambda fg1, b0, pg0, h0, g0, d, mh, a0, inf:
                fg1 + 0.5 * b0 * pg0 ** 2 + h0 + g0 * (1 + d) * mh ** 2 / (2 * a0 * b0) - inf)
    _derive(c, 'M1', ['fg1', 'beta0', 'pg0', 'h0', 'inf_fg'],
            lambda fg1, b0, pg0, h0, inf: fg1 + 0.5 * b0 * pg0 ** 2 + h0 - inf)
    _derive(c, 'M3', ['fg_abs_sup', 'h_sup'], lambda fs, hs: 2.0 * fs + hs)
    _derive(c, 'M2', ['M3', 'eta0', 'alpha0'], lambda m3, e0, a0: m3 * e0 / a0)
    _derive(c, 'lambda1', ['L', 'delta', 'gamma0', 'alpha0', 'M_h', 'L_c'],
            lambda L, d, g0, a0, mh, lc: L + 2 ** d * g0 / a0 * mh * lc)
    _derive(c, 'lambda2', ['rho', 'L', 'M1', 'mu_max', 'eta0', 'M_c', 'M2', 'delta'],
            lambda r, L, m1, mm, e0, mc, m2, d:
                32 / r * L * m1 + 32 * m1 + 8 * mm * m1 * L ** 2 + 16 * e0 * mc ** 2 * m2 / (1 - d) + 4 * mm * m1)
    _derive(c, 'lambda3', ['rho', 'L', 'M2', 'mu_max'],
            lambda r, L, m2, mm: 32 / r * L * m2 + 32 * m2 + 8 * mm * m2 * L ** 2 + 4 * mm * m2)
    _derive(c, 'lambda4', ['rho', 'L_c', 'M0', 'M_c', 'gamma0'],
            lambda r, lc, m0, mc, g0: 32 / r * (lc * m0 + mc ** 2) * g0)
    _derive(c, 'lambda5', ['rho', 'L', 'L_c', 'M0', 'M_c', 'gamma0'],
            lambda r, L, lc, m0, mc, g0: L / r + (lc * m0 + mc ** 2) * g0 / r)
    if c.delta < 0.5:
        _derive(c, 'lambda6', ['L', 'mu_max', 'M1', 'eta0', 'M_c', 'M0', 'delta'],
                lambda L, mm, m1, e0, mc, m0, d:
                    (8 * L ** 2 + 4) * mm * m1 + 32 * m1 + 8 * e0 ** 2 * mc ** 2 * m0 ** 2 / (1 - 2 * d))
    else:
        _put(c, 'lambda6', None, Provenance.unavailable)
    _derive(c, 'lambda7', ['L', 'mu_max', 'M0', 'gamma0', 'lambda5', 'M1'],
            lambda L, mm, m0, g0, l5, m1: (8 * L ** 2 + 4) * mm * m0 ** 2 * g0 + 32 * m0 ** 2 * g0 + 32 * l5 * m1)
    _derive(c, 'lambda8', ['lambda5', 'M0', 'gamma0'], lambda l5, m0, g0: 32 * l5 * m0 ** 2 * g0)
    return c

def omega(consts, T):
    return consts.M1 + consts.M2 * (math.log(T) + 1.0)

def mu_lower_bound(consts, beta_t):
    """rho / (L + (L_c M0 + M_c^2) beta_t), or None when unavailable.
    """
    if consts.missing(['rho', 'L', 'L_c', 'M0', 'M_c']):
        return None
    return consts.rho / (consts.L + (consts.L_c * consts.M0 + consts.M_c ** 2) * beta_t)

def unsuccessful_bound(t, consts, beta_t):
    """Upper bound on the number of unsuccessful trials before the t-th
    successful one, or None when unavailable.

    """
    if consts.missing(['rho', 'L', 'L_c', 'M0', 'M_c', 'mu_init', 'eta']):
        return None
    logr = lambda v: math.log(v) / math.log(1.0 / consts.rho)
    a = consts.L + (consts.L_c * consts.M0 + consts.M_c ** 2) * beta_t
    return 1 + math.ceil(logr(a) + logr(consts.mu_init) + t * logr(consts.eta))

################################ Bound checks ################################
@dataclass
class Violation:
    name: str
    T: int
    lhs: float
    rhs: float

    @property
    def slack(self):
        return self.rhs - self.lhs

    def __json__(self):
        return odict([('name', self.name), ('T', self.T), ('lhs', self.lhs),
                      ('rhs', self.rhs), ('slack', self.slack)])

@dataclass
class RateReport:
    regime: Regime
    checked: List[str] = field(default_factory=list)
    unchecked: dict = field(default_factory=odict)
    violations: List[Violation] = field(default_factory=list)

    @property
    def checkable(self):
        return bool(self.checked)

    @property
    def ok(self):
        return not self.violations

    def __json__(self):
        return odict([('regime', self.regime), ('checkable', self.checkable),
                      ('ok', self.ok), ('checked', self.checked),
                      ('not_checkable', self.unchecked),
                      ('violations', self.violations)])

def _columns(rows, *names):
    return [np.array([getattr(r, n) for r in rows], dtype=np.float64) for n in names]

def _inequalities(trace, c, regime):
    """Yields (name, required constants, thunk) where thunk returns the
    index, lhs and rhs arrays of one inequality.

    """
    rows = list(trace)
    t_all, mu_all, beta_all, gap_all, unsucc_all = _columns(rows, 't', 'mu_t', 'beta_t', 'gap',
                                                            'unsuccessful_this_iter')
    tail = rows[1:]
    step, mu, pgap, res = _columns(tail, 'step_norm', 'mu_t', 'prev_gap', 'residual')
    T = np.arange(1, len(tail) + 1, dtype=np.float64)
    d2 = step ** 2
    avg = lambda v: np.cumsum(v) / T
    run_min = lambda v: np.minimum.accumulate(v)
    om = lambda: c.M1 + c.M2 * (np.log(T) + 1.0)
    d = c.delta

    common = ['L', 'L_c', 'M_c', 'M0', 'rho']
    yield ('mu_lower_bound', common,
           lambda: (t_all, mu_all, c.rho / (c.L + (c.L_c * c.M0 + c.M_c ** 2) * beta_all)))

    def unsuccessful():
        cum = np.cumsum(unsucc_all)
        bound = np.array([unsuccessful_bound(int(t), c, b) for t, b in zip(t_all, beta_all)])
        return t_all, cum, bound
    yield ('unsuccessful_bound', common + ['mu_init', 'eta'], unsuccessful)

    if regime == Regime.lipschitz_h:
        yield ('avg_step_over_mu_sq', common + ['K0', 'gamma0'],
               lambda: (T, avg(d2 / mu ** 2),
                        4 / c.rho * c.L * c.K0 / (T + 1)
                        + 4 / c.rho * (c.L_c * c.M0 + c.M_c ** 2) * c.K0 * c.gamma0 / (T + 1) ** (1 - d)))
        yield ('avg_step_sq_over_mu', ['K0'], lambda: (T, avg(d2 / mu), 2 * c.K0 / T))
        yield ('avg_step_sq', ['K0', 'mu_max'], lambda: (T, avg(d2), 2 * c.mu_max * c.K0 / T))
        gap_bound = lambda: 2 * c.M_h / (c.alpha0 * (1 - d) * (T + 1) ** d) \
            + np.sqrt(8 * c.K0 / (c.alpha0 * (1 - d) * (T + 1) ** (1 + d)))
        yield ('avg_prev_gap', ['M_h', 'K0', 'alpha0'], lambda: (T, avg(pgap), gap_bound()))

        # residual_next takes J_c at x^{t+1}; traces read back from CSV lack it
        upsilon = lambda: 6 * c.mu_max * c.K0 * c.lambda1 ** 2 / T \
            + 48 / c.rho * c.L * c.K0 / (T + 1) \
            + 48 / c.rho * (c.L_c * c.M0 + c.M_c ** 2) * c.K0 * c.gamma0 / (T + 1) ** (1 - d) \
            + 12 * c.M_h ** 2 * c.M_c ** 2 * c.eta0 ** 2 / (c.alpha0 ** 2 * (T + 1))
        need = common + ['K0', 'lambda1', 'mu_max', 'gamma0', 'M_h', 'eta0', 'alpha0']
        if any(getattr(r, 'residual_next', None) is None for r in tail):
            need = need + ['residual_next']
        res_next = lambda: np.array([r.residual_next for r in tail], dtype=np.float64)
        yield ('avg_residual_next_sq', need, lambda: (T, avg(res_next() ** 2), upsilon()))
        yield ('min_residual_next_gap', need,
               lambda: (T, run_min(res_next() ** 2 + pgap), upsilon() + gap_bound()))

    elif regime == Regime.full_domain_h:
        yield ('avg_step_over_mu_sq', common + ['M1', 'M2', 'gamma0'],
               lambda: (T, avg(d2 / mu ** 2),
                        4 / c.rho * c.L * om() / (T + 1)
                        + 4 / c.rho * (c.L_c * c.M0 + c.M_c ** 2) * c.gamma0 * om() / (T + 1) ** (1 - d)))
        yield ('avg_step_sq_over_mu', ['M1', 'M2'], lambda: (T, avg(d2 / mu), 4 * om() / (T + 1)))
        yield ('avg_step_sq', ['M1', 'M2', 'mu_max'],
               lambda: (T, avg(d2), 4 * c.mu_max * om() / (T + 1)))
        yield ('bounded_prev_gap', ['M3', 'M0', 'alpha0', 'eta0'],
               lambda: (T, pgap ** 2,
                        c.M3 / (c.alpha0 * (T + 1) ** d) + 2 * c.M0 ** 2 * c.eta0 / (c.alpha0 * (T + 1))))
        # row t holds ||c(x^{t+1}) - y^{t+1}||, bounded by 2 M3 / beta_t
        yield ('bounded_gap', ['M3'], lambda: (t_all + 1, gap_all ** 2, 2 * c.M3 / beta_all))
        yield ('bounded_gap_alpha0', ['M3', 'alpha0'],
               lambda: (t_all + 1, gap_all ** 2, 2 * c.M3 / (c.alpha0 * (t_all + 1) ** d)))
        yield ('avg_residual_sq', common + ['M1', 'M2', 'mu_max', 'gamma0', 'eta0'],
               lambda: (T, avg(res ** 2),
                        (32 * (c.L / c.rho + 1) + 8 * c.mu_max * c.L ** 2) * om() / (T + 1)
                        + 32 / c.rho * (c.L_c * c.M0 + c.M_c ** 2) * c.gamma0 * om() / (T + 1) ** (1 - d)
                        + 16 * c.eta0 * c.M_c ** 2 * c.M2 / ((1 - d) * (T + 1))))
        yield ('min_residual_step_gap', ['lambda2', 'lambda3', 'lambda4', 'M1', 'M2', 'M3', 'M0', 'alpha0', 'eta0'],
               lambda: (T, run_min(res ** 2 + d2 + pgap ** 2),
                        (c.lambda2 + c.lambda3 * (np.log(T) + 1)) / (T + 1)
                        + c.lambda4 * om() / (T + 1) ** (1 - d)
                        + c.M3 / (c.alpha0 * (T + 1) ** d)
                        + 2 * c.M0 ** 2 * c.eta0 / (c.alpha0 * (T + 1))))

    elif regime == Regime.bounded_domains:
        small = [] if d < 0.5 else ['delta<1/2']
        yield ('avg_step_over_mu_sq', ['lambda5', 'M1', 'M0', 'gamma0'] + small,
               lambda: (T, avg(d2 / mu ** 2),
                        4 * c.lambda5 * c.M1 / (T + 1) ** (1 - d)
                        + 4 * c.lambda5 * c.M0 ** 2 * c.gamma0 / (T + 1) ** (1 - 2 * d)))
        yield ('avg_step_sq_over_mu', ['M1', 'M0', 'gamma0'] + small,
               lambda: (T, avg(d2 / mu), 4 * c.M1 / (T + 1) + 4 * c.M0 ** 2 * c.gamma0 / (T + 1) ** (1 - d)))
        yield ('avg_step_sq', ['M1', 'M0', 'gamma0', 'mu_max'] + small,
               lambda: (T, avg(d2),
                        4 * c.mu_max * c.M1 / (T + 1) + 4 * c.mu_max * c.M0 ** 2 * c.gamma0 / (T + 1) ** (1 - d)))
        yield ('min_residual_step', ['lambda6', 'lambda7', 'lambda8'] + small,
               lambda: (T, run_min(res ** 2 + d2),
                        c.lambda6 / (T + 1) + c.lambda7 / (T + 1) ** (1 - d) + c.lambda8 / (T + 1) ** (1 - 2 * d)))
    else:
        raise ConfigError("unknown regime %r"%regime)

def rate_bound_check(trace, consts, regime, tol=RATE_TOL):
    """Evaluates every inequality of the regime for every T covered by the
    trace. Inequalities whose constants are unavailable are listed under
    'not checkable' with the missing inputs. The mu lower bound is an
    inequality of the form lhs >= rhs and is checked with the sides
    swapped.

    """
    regime = Regime.parse(regime)
    report = RateReport(regime)
    if not len(trace):
        report.unchecked['trace'] = ['at least one row']
        return report
    for name, needs, thunk in _inequalities(trace, consts, regime):
        missing = [n for n in needs if n == 'delta<1/2' or n not in consts]
        if missing:
            report.unchecked[name] = missing
            continue
        index, lhs, rhs = thunk()
        if name == 'mu_lower_bound':
            lhs, rhs = rhs, lhs
        bad = np.flatnonzero(lhs > rhs + tol * (1.0 + np.abs(rhs)))
        report.checked.append(name)
        for k in bad:
            report.violations.append(Violation(name, int(index[k]), float(lhs[k]), float(rhs[k])))
        if bad.size:
            log.info("%s: %d violation(s), first at T=%d", name, bad.size, int(index[bad[0]]))
    return report

################################ Step invariants ################################
def condition_violations(row):
    out = []
    for name in ('margin_i', 'margin_ii'):
        v = getattr(row, name)
        if v < -row.tol_cond:
            out.append(Violation('condition_' + name, row.t, -v, row.tol_cond))
    return out

def theta_violations(prev, row, theta_first, rtol=1e-7):
    """Theta(x^{t+1}, beta_t, y^t) <= Theta(x^t, beta_{t-1}, y^{t-1}).
    """
    if prev is None or row.Theta_value is None or prev.Theta_value is None:
        return []
    bound = prev.Theta_value + rtol * (1.0 + abs(theta_first))
    if row.Theta_value > bound:
        return [Violation('theta_monotone', row.t, row.Theta_value, bound)]
    return []

def descent_violations(prev, row, rtol=1e-9):
    """Pseudo-descent of H with y held at y^t:

        H(x^{t+1}, beta_t, y^t) <= H(x^t, beta_{t-1}, y^t)
                                   - ||x^{t+1} - x^t||^2 / (2 mu_t)
                                   + (beta_t - beta_{t-1}) ||c(x^t) - y^t||^2 / 2

    """
    if prev is None:
        return []
    lhs = row.H_value
    rhs = H_from_parts(prev.fg_value, row.beta_prev, row.anchor_gap, row.h_at_prev_y) \
        - row.step_norm ** 2 / (2.0 * row.mu_t) \
        + 0.5 * (row.beta_t - row.beta_prev) * row.anchor_gap ** 2
    if lhs > rhs + rtol * (1.0 + abs(rhs)):
        return [Violation('pseudo_descent', row.t, lhs, rhs)]
    return []

#### Public API ####
__all__ = ['H_value', 'theta_value', 'H_from_parts', 'theta_from_parts',
           'subgradient_witnesses', 'stationarity_residual', 'Certificate',
           'certificate', 'Subsequence', 'select_subsequence', 'suggest_delta',
           'Constant', 'RateConstants', 'rate_constants', 'omega',
           'mu_lower_bound', 'unsuccessful_bound', 'Violation', 'RateReport',
           'rate_bound_check', 'condition_violations', 'theta_violations',
           'descent_violations']
