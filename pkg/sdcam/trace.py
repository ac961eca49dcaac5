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

"""CSV traces and run summaries.

Trace files carry exactly the CSV_FIELDS columns, one row per accepted
step, with every float written to 17 significant digits so a trace is
byte-for-byte reproducible. Missing values are empty cells.

"""

import csv, logging

from collections import OrderedDict as odict

from sdcam.core import objective
from sdcam.errors import ConfigError
from sdcam.solver import CSV_FIELDS, TraceRow
from sdcam.utils import to_json

log = logging.getLogger(__name__)

INT_FIELDS = ('t', 'unsuccessful_this_iter')

def format_value(v):
    if v is None:
        return ''
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return '%.17g'%v

def write_trace(rows, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([format_value(getattr(row, k)) for k in CSV_FIELDS])

def save_trace(rows, path):
    with open(path, 'w', newline='') as stream:
        write_trace(rows, stream)
    log.info("wrote %d trace rows to %s", len(rows), path)

def _parse(name, cell):
    if cell == '':
        return None
    return int(cell) if name in INT_FIELDS else float(cell)

def read_trace(stream):
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ConfigError("trace is empty (no header)")
    missing = [k for k in CSV_FIELDS if k not in header]
    if missing:
        raise ConfigError("trace is missing column(s) %s"%', '.join(missing))
    rows = []
    for lineno, cells in enumerate(reader, 2):
        if len(cells) != len(header):
            raise ConfigError("trace line %d has %d cells, expected %d"%(lineno, len(cells), len(header)))
        values = dict(zip(header, cells))
        try:
            rows.append(TraceRow(**dict((k, _parse(k, values[k])) for k in CSV_FIELDS)))
        except ValueError as e:
            raise ConfigError("trace line %d: %s"%(lineno, e))
    return rows

def load_trace(path):
    with open(path, newline='') as stream:
        return read_trace(stream)

################################ Summary ################################
def summarize(p, result, cfg, consts=None, report=None):
    """The summary document of one run: status, totals, the last row,
    the objective at the final iterate, and the rate constants and bound
    report when they were computed.

    """
    st = result.state
    last = result.trace[-1] if result.trace else None
    final = odict()
    if last is not None:
        final.update((k, getattr(last, k)) for k in CSV_FIELDS)
    final['objective'] = objective(p, st.x)
    out = odict([('problem', p.name),
                 ('status', result.status),
                 ('successful', st.t),
                 ('total_trials', result.total_trials),
                 ('total_unsuccessful', result.total_unsuccessful),
                 ('final', final),
                 ('solver', cfg)])
    if consts is not None:
        out['rate_constants'] = consts
    if report is not None:
        out['rate_bound_check'] = report
    return out

def save_summary(summary, path):
    with open(path, 'w') as stream:
        stream.write(to_json(summary))
        stream.write('\n')
    log.info("wrote summary to %s", path)

__all__ = ['format_value', 'write_trace', 'save_trace', 'read_trace', 'load_trace',
           'summarize', 'save_summary']
