import io, json, os, shutil, tempfile, unittest

import numpy as np

from sdcam.errors import ConfigError
from sdcam.schedules import ScheduleSpec
from sdcam.solver import CSV_FIELDS, SolverConfig, TraceRow, solve
from sdcam.trace import (format_value, load_trace, read_trace, save_summary, save_trace,
                         summarize, write_trace)
from sdcam.utils import to_json
from tests.fixtures import contraction_problem

HEADER = ('t,mu_t,beta_t,step_norm,scaled_step,gap,prev_gap,residual,fg_value,'
          'h_at_y,H_value,Theta_value,unsuccessful_this_iter,rel_feas')

def row(t, **kwargs):
    values = dict(mu_t=1.0, beta_t=1.0, step_norm=0.1, scaled_step=0.01, gap=0.0,
                  prev_gap=0.0, residual=0.5, fg_value=2.0, h_at_y=0.0, H_value=2.0,
                  Theta_value=None, unsuccessful_this_iter=0)
    values.update(kwargs)
    return TraceRow(t=t, **values)

class TestFormat(unittest.TestCase):

    def test_format_value(self):
        self.assertEqual(format_value(None), '')
        self.assertEqual(format_value(3), '3')
        self.assertEqual(format_value(0.1), '0.10000000000000001')
        self.assertEqual(format_value(2.0), '2')
        self.assertEqual(format_value(np.float64(0.5)), '0.5')
        self.assertEqual(format_value(float('inf')), 'inf')

    def test_header(self):
        stream = io.StringIO()
        write_trace([], stream)
        self.assertEqual(stream.getvalue(), HEADER + '\n')
        self.assertEqual(','.join(CSV_FIELDS), HEADER)

    def test_write_read(self):
        rows = [row(0, step_norm=1.0 / 3.0, Theta_value=np.pi),
                row(1, mu_t=2.0 ** -40, rel_feas=0.7, unsuccessful_this_iter=4)]
        stream = io.StringIO()
        write_trace(rows, stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(len(lines), 3)
        self.assertEqual(lines[1].split(',')[3], '0.33333333333333331')
        stream.seek(0)
        back = read_trace(stream)
        for a, b in zip(rows, back):
            for k in CSV_FIELDS:
                self.assertEqual(getattr(a, k), getattr(b, k), k)
        self.assertIsNone(back[0].rel_feas)
        self.assertIsInstance(back[1].unsuccessful_this_iter, int)

    def test_extra_columns_ignored(self):
        stream = io.StringIO()
        write_trace([row(0)], stream)
        lines = stream.getvalue().splitlines()
        text = '\n'.join(['note,' + lines[0], 'x,' + lines[1]]) + '\n'
        self.assertEqual(read_trace(io.StringIO(text))[0].residual, 0.5)

    def test_errors(self):
        with self.assertRaises(ConfigError):
            read_trace(io.StringIO(''))
        with self.assertRaises(ConfigError) as ctx:
            read_trace(io.StringIO('t,mu_t\n0,1\n'))
        self.assertIn('beta_t', str(ctx.exception))
        good = io.StringIO()
        write_trace([row(0)], good)
        header, line = good.getvalue().splitlines()
        with self.assertRaises(ConfigError):
            read_trace(io.StringIO(header + '\n' + line.replace('0.5', 'half') + '\n'))
        with self.assertRaises(ConfigError):
            read_trace(io.StringIO(header + '\n' + line + ',7\n'))

class TestFiles(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        p = contraction_problem()
        self.p = p
        self.cfg = SolverConfig(max_successful_iters=5, schedule=ScheduleSpec(beta0=1.0))
        self.result = solve(p, self.cfg, np.array([1.0]), np.array([0.0]))

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_trace_file(self):
        path = os.path.join(self.tmp, 'trace.csv')
        save_trace(self.result.trace, path)
        with open(path) as f:
            self.assertEqual(f.readline().rstrip('\n'), HEADER)
        back = load_trace(path)
        self.assertEqual([r.t for r in back], [0, 1, 2, 3, 4])
        self.assertEqual([r.gap for r in back], [r.gap for r in self.result.trace])

    def test_summary(self):
        summary = summarize(self.p, self.result, self.cfg)
        self.assertEqual(summary['successful'], 5)
        self.assertEqual(summary['total_trials'],
                         5 + summary['total_unsuccessful'])
        self.assertEqual(summary['final']['t'], 4)
        self.assertNotIn('rate_constants', summary)
        path = os.path.join(self.tmp, 'summary.json')
        save_summary(summary, path)
        with open(path) as f:
            data = json.load(f)
        self.assertEqual(data['status'], 'iteration budget')
        self.assertEqual(data['problem'], 'contraction')
        self.assertEqual(data['solver']['max_successful_iters'], 5)
        self.assertEqual(json.loads(to_json(summary)), data)

if __name__ == '__main__':
    unittest.main()
