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

"""Sparse multilayer perceptron regression with an l_p loss

    min  lambda ||v||_1 + delta_C(v) + 1/(p N) sum_i |MLP(a_i; v) - y_i|^p

with hidden layers sigma(W z + b), a linear output layer, and C the box
||v||_inf <= R that contains every minimizer. The residual map
c(v)_i = MLP(a_i; v) - y_i is differentiated by reverse accumulation.

The parameter vector stacks W_1, b_1, ..., W_L, b_L, each weight matrix
in row-major order.

"""

import logging, math

import numpy as np
from scipy.special import expit

from sdcam.base import ConfigObject, prop, positive, unit_open
from sdcam.common import Activation, Regime
from sdcam.core import MapOracle, Problem, ProxOracle, SmoothOracle
from sdcam.errors import ConfigError, NumericalError
from sdcam.idx import read_idx
from sdcam.instances import Instance, register
from sdcam.prox import LpProxParams, lp_value, prox_l1_box, prox_lp
from sdcam.rng import stream

log = logging.getLogger(__name__)

SOURCES = ('synthetic', 'idx_files')
MNIST_PIXELS = 784

################################ Parameters ################################
class MlpParams(ConfigObject):
    @staticmethod
    def props():
        return [prop('layer_dims', list, [20, 8, 4, 1]),
                prop('activation', Activation, Activation.tanh),
                prop('n_samples', int, 100, check=positive, expect='positive'),
                prop('p', float, 0.5, check=unit_open, expect='in (0, 1)'),
                prop('lam', float, 0.05, check=positive, expect='positive'),
                prop('source', str, 'synthetic', check=lambda v: v in SOURCES,
                     expect='one of %s'%', '.join(SOURCES)),
                prop('image_path', str),
                prop('label_path', str),
                prop('noise', float, 0.05, check=lambda v: v >= 0, expect='nonnegative')]

    @staticmethod
    def aliases():
        return {'lambda': 'lam'}

    def validate(self):
        dims = self.layer_dims
        if len(dims) < 2 or any(isinstance(d, bool) or not isinstance(d, int) or d < 1 for d in dims):
            raise ConfigError("MlpParams: layer_dims must be at least two positive integers (got %r)"%dims)
        if dims[-1] != 1:
            raise ConfigError("MlpParams: layer_dims must end in 1 (got %r)"%dims)
        if self.source == 'idx_files':
            if not (self.image_path and self.label_path):
                raise ConfigError("MlpParams: source idx_files needs image_path and label_path")
            if dims[0] != MNIST_PIXELS:
                raise ConfigError("MlpParams: idx_files needs layer_dims[0] = %d (got %d)"%(MNIST_PIXELS, dims[0]))

################################ Network ################################
def _act(activation):
    if activation == Activation.tanh:
        return np.tanh, lambda z: 1.0 - z ** 2
    return expit, lambda z: z * (1.0 - z)

def num_weights(dims):
    return sum(dims[l + 1] * (dims[l] + 1) for l in range(len(dims) - 1))

def unpack(v, dims):
    """Splits the parameter vector into [(W_1, b_1), ..., (W_L, b_L)].
    """
    if v.size != num_weights(dims):
        raise ConfigError("parameter vector has %d entries, layers %r need %d"%(v.size, dims, num_weights(dims)))
    layers, k = [], 0
    for l in range(len(dims) - 1):
        rows, cols = dims[l + 1], dims[l]
        W = v[k:k + rows * cols].reshape(rows, cols)
        k += rows * cols
        layers.append((W, v[k:k + rows]))
        k += rows
    return layers

def pack(layers):
    return np.concatenate([np.concatenate([W.ravel(), b]) for W, b in layers])

def forward(v, dims, features, activation):
    """Returns the network outputs (one per row of features) and the
    input of every layer.

    """
    sigma, _ = _act(activation)
    layers = unpack(v, dims)
    z, inputs = features, []
    for W, b in layers[:-1]:
        inputs.append(z)
        z = sigma(z @ W.T + b)
    inputs.append(z)
    W, b = layers[-1]
    return (z @ W.T + b)[:, 0], inputs

def backward(v, dims, features, activation, w):
    """J(v)^T w for the map v -> (MLP(a_i; v))_i.
    """
    _, dsigma = _act(activation)
    layers = unpack(v, dims)
    _, inputs = forward(v, dims, features, activation)
    G = w[:, None]
    grads = [None] * len(layers)
    for l in reversed(range(len(layers))):
        z = inputs[l]
        grads[l] = (G.T @ z, G.sum(axis=0))
        if l > 0:
            G = (G @ layers[l][0]) * dsigma(z)
    return pack(grads)

def xavier(seed, dims):
    rng = stream(seed, 'init')
    layers = []
    for l in range(len(dims) - 1):
        limit = math.sqrt(6.0 / (dims[l] + dims[l + 1]))
        layers.append((rng.uniform(-limit, limit, (dims[l + 1], dims[l])), np.zeros(dims[l + 1])))
    return pack(layers)

################################ Data ################################
def _synthetic(seed, params):
    dims, N = params.layer_dims, params.n_samples
    features = stream(seed, 'features').uniform(0.0, 1.0, (N, dims[0]))
    rng = stream(seed, 'planted')
    planted = []
    for l in range(len(dims) - 1):
        scale = math.sqrt(2.0 / (dims[l] + dims[l + 1]))
        planted.append((scale * rng.standard_normal((dims[l + 1], dims[l])), scale * rng.standard_normal(dims[l + 1])))
    out, _ = forward(pack(planted), dims, features, params.activation)
    targets = np.tanh(out + params.noise * stream(seed, 'noise').standard_normal(N))
    return features, targets

def _idx_files(seed, params):
    images = read_idx(params.image_path).data
    labels = read_idx(params.label_path).data
    if images.ndim < 2 or labels.ndim != 1 or images.shape[0] != labels.shape[0]:
        raise ConfigError("image file %s and label file %s do not match"%(params.image_path, params.label_path))
    total = labels.shape[0]
    if params.n_samples > total:
        raise ConfigError("n_samples=%d exceeds the %d available samples"%(params.n_samples, total))
    pick = np.sort(stream(seed, 'sample').choice(total, params.n_samples, replace=False))
    features = images[pick].reshape(params.n_samples, -1).astype(np.float64) / 255.0
    if features.shape[1] != params.layer_dims[0]:
        raise ConfigError("images have %d pixels, layer_dims[0] is %d"%(features.shape[1], params.layer_dims[0]))
    targets = (labels[pick].astype(np.float64) - 4.5) / 4.5
    return features, targets

################################ Instance ################################
@register('mlp')
class MlpInstance(Instance):
    """Samples (features, targets); the network shape lives in params.
    """
    params_type = MlpParams
    array_names = ('features', 'targets')
    regime = Regime.full_domain_h

    @property
    def dims(self):
        return self.params.layer_dims

    @property
    def n(self):
        return num_weights(self.dims)

    @property
    def m(self):
        return self.targets.size

    @property
    def C_radius(self):
        """(lambda N)^-1 sum_i |MLP(a_i; 0) - y_i|^p / p.
        """
        p = self.params.p
        out, _ = forward(np.zeros(self.n), self.dims, self.features, self.params.activation)
        return float(np.sum(np.abs(out - self.targets) ** p) / p / (self.params.lam * self.m))

    @classmethod
    def generate(cls, seed, params):
        if params.source == 'idx_files':
            features, targets = _idx_files(seed, params)
        else:
            features, targets = _synthetic(seed, params)
        log.info("generated mlp instance: seed %d, layers %s, %d samples from %s",
                 seed, params.layer_dims, params.n_samples, params.source)
        return cls(seed, params, features=features, targets=targets)

    def residuals(self, v):
        out, _ = forward(v, self.dims, self.features, self.params.activation)
        return out - self.targets

    def residuals_vjp(self, v, w):
        return backward(v, self.dims, self.features, self.params.activation, w)

    def start(self):
        """Xavier-uniform weights and zero biases projected onto the box
        C, and y = 0.

        """
        R = self.C_radius
        return np.clip(xavier(self.seed, self.dims), -R, R), np.zeros(self.m)

    @classmethod
    def solver_defaults(cls):
        return {'mu_max': 1e7, 'mu_init': 0.01, 'rho': 0.5, 'eta': 2.0,
                'schedule': {'delta': 0.5}}

    def problem(self):
        return mlp_problem(self)

################################ Bounds ################################
def mlp_constants(inst):
    """Only the bounds that hold without Lipschitz information on h: f is
    zero, f + g is nonnegative and bounded on C, and every output is
    bounded because hidden units lie in [-1, 1].

    """
    R, p, N = inst.C_radius, inst.params.p, inst.m
    out_bound = R * (inst.dims[-2] + 1)
    return {
        'L': 0.0,
        'inf_fg': 0.0,
        'fg_abs_sup': inst.params.lam * inst.n * R,
        'h_sup': float(np.sum((out_bound + np.abs(inst.targets)) ** p)) / (p * N),
    }

################################ Problem ################################
def mlp_problem(inst):
    R = inst.C_radius
    if not R > 0:
        raise NumericalError("mlp seed %d: every target is zero, the box C collapses"%inst.seed)
    lam, p, N = inst.params.lam, inst.params.p, inst.m
    h_params = LpProxParams(p=p, alpha=1.0 / (p * N))

    def g_eval(v):
        if np.max(np.abs(v)) > R:
            return math.inf
        return lam * float(np.sum(np.abs(v)))

    consts = mlp_constants(inst)
    f = SmoothOracle(lambda v: 0.0, lambda v: np.zeros_like(v), consts['L'])
    g = ProxOracle(g_eval, lambda z, gamma: prox_l1_box(z, gamma * lam, R),
                   "lambda*||v||_1 on [-%g, %g]^n"%(R, R))
    h = ProxOracle(lambda u: lp_value(u, h_params.alpha, p),
                   lambda z, gamma: prox_lp(z, h_params(gamma=gamma)), 'R^m')
    c = MapOracle(inst.residuals, inst.residuals_vjp)
    return Problem(f, g, h, c, inst.n, N,
                   inf_fg_lower_bound=consts['inf_fg'],
                   h_sup_on_image_bound=consts['h_sup'],
                   fg_abs_sup_bound=consts['fg_abs_sup'],
                   name='mlp(seed=%d)'%inst.seed)

def m3_bound(inst):
    consts = mlp_constants(inst)
    return 2.0 * consts['fg_abs_sup'] + consts['h_sup']

#### Public API ####
def mlp_generate(seed, layer_dims=(20, 8, 4, 1), n_samples=100, p=0.5, lam=0.05,
                 source='synthetic', **kwargs):
    params = MlpParams(layer_dims=list(layer_dims), n_samples=n_samples, p=p, lam=lam,
                       source=source, **kwargs)
    return MlpInstance.generate(seed, params)

mlp_params = MlpParams

__all__ = ['MlpParams', 'MlpInstance', 'mlp_params', 'mlp_generate', 'mlp_problem',
           'mlp_constants', 'm3_bound', 'num_weights', 'unpack', 'pack', 'forward',
           'backward', 'xavier']
