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

class SdcamError(Exception):
    """Base class for all errors raised by sdcam.
    """
    pass

class ConfigError(SdcamError, ValueError):
    """A configuration or parameter value is invalid.
    """
    pass

class DimensionError(SdcamError, ValueError):
    """Array shapes are inconsistent with the problem dimensions.
    """
    pass

class NumericalError(SdcamError):
    """Base class for failures detected while iterating.
    """
    pass

class InfeasibleStartError(NumericalError):
    pass

class ProxContractError(NumericalError):
    """A proximal oracle returned a point outside its function's domain.
    """
    pass

class InvariantViolation(NumericalError):
    """A runtime assertion on an accepted step failed.
    """
    def __init__(self, name, t, lhs, rhs):
        self.name = name
        self.t = t
        self.lhs = lhs
        self.rhs = rhs
        msg = "%s violated at t=%d: %.17g > %.17g"
        super(InvariantViolation, self).__init__(msg%(name, t, lhs, rhs))

class TrialBudgetExhausted(NumericalError):
    pass

class IdxFormatError(SdcamError, ValueError):
    def __init__(self, what, offset):
        self.offset = offset
        super(IdxFormatError, self).__init__("%s at offset %d"%(what, offset))

class VerificationFailure(SdcamError):
    pass

#### Public API ####
__all__ = ['SdcamError', 'ConfigError', 'DimensionError', 'NumericalError',
           'InfeasibleStartError', 'ProxContractError', 'InvariantViolation',
           'TrialBudgetExhausted', 'IdxFormatError', 'VerificationFailure']
