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

import math

from sdcam.utils import Wrapper

class ExtendedReal(Wrapper):
    """A value in (-inf, +inf]. Finite values wrap a python float; +inf is
    the single tagged instance ExtendedReal.infinity, so comparisons
    against it never go through float arithmetic.

    """
    def __init__(self, value, finite=True):
        if finite:
            value = float(value)
            if not math.isfinite(value):
                raise ValueError("finite ExtendedReal from non-finite %r"%value)
        super(ExtendedReal, self).__init__(value if finite else None)
        self.finite = finite

    @classmethod
    def of(cls, value):
        """Converts an oracle result to an ExtendedReal; +inf floats map
        to ExtendedReal.infinity.

        """
        if isinstance(value, ExtendedReal):
            return value
        value = float(value)
        if value == math.inf:
            return cls.infinity
        if math.isnan(value) or value == -math.inf:
            raise ValueError("oracle returned %r"%value)
        return cls(value)

    @property
    def value(self):
        if not self.finite:
            raise ValueError("value of +inf requested")
        return self.wrapped

    def __float__(self):
        return self.wrapped if self.finite else math.inf

    def __add__(self, other):
        other = ExtendedReal.of(other)
        if not (self.finite and other.finite):
            return ExtendedReal.infinity
        return ExtendedReal(self.wrapped + other.wrapped)

    __radd__ = __add__

    def __lt__(self, other):
        other = ExtendedReal.of(other)
        if not self.finite:
            return False
        return (not other.finite) or self.wrapped < other.wrapped

    def __le__(self, other):
        other = ExtendedReal.of(other)
        if not other.finite:
            return True
        return self.finite and self.wrapped <= other.wrapped

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __eq__(self, other):
        if not isinstance(other, (ExtendedReal, int, float)):
            return NotImplemented
        other = ExtendedReal.of(other)
        return self.finite == other.finite and self.wrapped == other.wrapped

    def __hash__(self):
        return hash((self.finite, self.wrapped))

    def __str__(self):
        return repr(self.wrapped) if self.finite else 'inf'

    def __repr__(self):
        return "ExtendedReal(%s)"%self

    def __json__(self):
        return self.wrapped if self.finite else 'inf'

ExtendedReal.infinity = ExtendedReal(None, finite=False)
ExtendedReal.zero = ExtendedReal(0.0)

class AssertLevel(Wrapper):
    pass
AssertLevel.off   = AssertLevel('off')
AssertLevel.cheap = AssertLevel('cheap')
AssertLevel.full  = AssertLevel('full')

class Regime(Wrapper):
    pass
Regime.lipschitz_h     = Regime('lipschitz_h')
Regime.full_domain_h   = Regime('full_domain_h')
Regime.bounded_domains = Regime('bounded_domains')

class Status(Wrapper):
    pass
Status.iteration_budget = Status('iteration budget')
Status.trial_budget     = Status('trial budget')
Status.converged        = Status('converged')

class Provenance(Wrapper):
    pass
Provenance.user_supplied = Provenance('user_supplied')
Provenance.computed      = Provenance('computed')
Provenance.unavailable   = Provenance('unavailable')

class ScheduleFamily(Wrapper):
    pass
ScheduleFamily.power   = ScheduleFamily('power')
ScheduleFamily.blocked = ScheduleFamily('blocked')

class Activation(Wrapper):
    pass
Activation.tanh    = Activation('tanh')
Activation.sigmoid = Activation('sigmoid')

#### Public API ####
extended     = ExtendedReal.of
infinity     = ExtendedReal.infinity

assert_off   = AssertLevel.off
assert_cheap = AssertLevel.cheap
assert_full  = AssertLevel.full

lipschitz_h     = Regime.lipschitz_h
full_domain_h   = Regime.full_domain_h
bounded_domains = Regime.bounded_domains

__all__ = ['ExtendedReal', 'AssertLevel', 'Regime', 'Status', 'Provenance',
           'ScheduleFamily', 'Activation', 'extended', 'infinity',
           'assert_off', 'assert_cheap', 'assert_full', 'lipschitz_h',
           'full_domain_h', 'bounded_domains']
