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


__version_info__ = ('0', '1', '0')
__version__ = '.'.join(__version_info__)

from sdcam.common import *
from sdcam.errors import *

from sdcam.core import *
from sdcam.prox import *
from sdcam.schedules import *
from sdcam.solver import *
from sdcam.diagnostics import *

from sdcam.instances import *
from sdcam.qcqp import *
from sdcam.mimo import *
from sdcam.mlp import *

from sdcam.config import *
from sdcam.trace import *
from sdcam.verify import *
