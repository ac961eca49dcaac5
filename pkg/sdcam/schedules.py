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

from sdcam.base import ConfigObject, prop, positive, unit_open
from sdcam.common import ScheduleFamily
from sdcam.errors import ConfigError

class ScheduleSpec(ConfigObject):
    """Penalty schedule beta_t, indexed by the successful-iteration count.

    power:   beta_t = beta0 (t+1)^delta
    blocked: beta_t = beta0 (nK+1)^delta for nK <= t < (n+1)K

    """
    @staticmethod
    def props():
        return [prop('family', ScheduleFamily, ScheduleFamily.power),
                prop('beta0', float, 1.0, check=positive, expect='positive'),
                prop('delta', float, 0.5, check=unit_open, expect='in (0, 1)'),
                prop('K', int, 1, check=positive, expect='a positive integer')]

    def validate(self):
        if self.family == ScheduleFamily.power and self.K != 1:
            raise ConfigError("ScheduleSpec: 'K' only applies to the blocked family")

    def constants(self):
        """(alpha0, gamma0, eta0) with alpha0 (t+1)^delta <= beta_t <=
        gamma0 (t+1)^delta and beta_t - beta_{t-1} <= eta0 t^(delta-1).

        """
        b, d = self.beta0, self.delta
        if self.family == ScheduleFamily.blocked:
            return b * self.K ** (-d), b, b * d * self.K ** (2.0 - d)
        return b, b, b * d

    @property
    def alpha0(self):
        return self.constants()[0]

    @property
    def gamma0(self):
        return self.constants()[1]

    @property
    def eta0(self):
        return self.constants()[2]

def beta_at(s, t):
    if t < 0:
        raise ValueError("beta_at: t must be nonnegative, got %d"%t)
    if s.family == ScheduleFamily.blocked:
        t = (t // s.K) * s.K
    return s.beta0 * (t + 1) ** s.delta

def power_schedule(beta0, delta):
    return ScheduleSpec(family=ScheduleFamily.power, beta0=beta0, delta=delta)

def blocked_schedule(beta0, delta, K):
    return ScheduleSpec(family=ScheduleFamily.blocked, beta0=beta0, delta=delta, K=K)

#### Public API ####
power   = ScheduleFamily.power
blocked = ScheduleFamily.blocked

__all__ = ['ScheduleSpec', 'beta_at', 'power_schedule', 'blocked_schedule',
           'power', 'blocked']
