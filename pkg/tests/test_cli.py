import contextlib, io, json, os, shutil, tempfile, unittest

from unittest import mock

from sdcam.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, main
from sdcam.solver import TraceRow
from sdcam.trace import save_trace
from sdcam.utils import file_digest

QUIET = {'SDCAM_LOG_LEVEL': 'error'}

def trace_row(t, step_norm):
    return TraceRow(t=t, mu_t=1.0, beta_t=1.0, step_norm=step_norm, scaled_step=step_norm,
                    gap=0.0, prev_gap=0.0, residual=0.0, fg_value=0.0, h_at_y=0.0,
                    H_value=0.0, Theta_value=None, unsuccessful_this_iter=0)

@mock.patch.dict(os.environ, QUIET)
class TestCli(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def sdcam(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def write_config(self, name, **sections):
        data = {'schema_version': 1,
                'problem': {'family': 'qcqp', 'instance': self.path('qcqp.json')},
                'solver': {'max_successful_iters': 30},
                'output': {'trace': self.path(name + '.csv')}}
        data.update(sections)
        with open(self.path(name + '.json'), 'w') as f:
            json.dump(data, f)
        return self.path(name + '.json')

    def gen_qcqp(self):
        return self.sdcam('gen', 'qcqp', '--n', '4', '--m', '2', '--seed', '7',
                          '--out', self.path('qcqp.json'))

    def test_gen(self):
        code, out, _ = self.gen_qcqp()
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, '%s  %s\n'%(file_digest(self.path('qcqp.json')), self.path('qcqp.json')))
        with open(self.path('qcqp.json')) as f:
            data = json.load(f)
        self.assertEqual(data['params']['n'], 4)
        self.assertEqual(data['seed'], 7)

    def test_gen_rejects_params(self):
        code, _, err = self.sdcam('gen', 'qcqp', '--n', '1', '--out', self.path('x.json'))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('n ≥ 2 required', err)
        self.assertFalse(os.path.exists(self.path('x.json')))
        self.assertEqual(self.sdcam('gen', 'lasso', '--out', self.path('x.json'))[0], EXIT_USAGE)

    def test_gen_mlp_layers(self):
        code, _, _ = self.sdcam('gen', 'mlp', '--layer-dims', '3,2,1', '--n-samples', '5',
                                '--activation', 'sigmoid', '--out', self.path('mlp.json'))
        self.assertEqual(code, EXIT_OK)
        with open(self.path('mlp.json')) as f:
            params = json.load(f)['params']
        self.assertEqual(params['layer_dims'], [3, 2, 1])
        self.assertEqual(params['activation'], 'sigmoid')

    def test_run(self):
        self.gen_qcqp()
        code, _, err = self.sdcam('run', self.write_config('run'))
        self.assertEqual(code, EXIT_OK, err)
        with open(self.path('run.csv')) as f:
            lines = f.read().splitlines()
        self.assertTrue(lines[0].startswith('t,mu_t,beta_t,step_norm,'))
        self.assertEqual(len(lines), 31)
        with open(self.path('run.summary.json')) as f:
            summary = json.load(f)
        self.assertEqual(summary['status'], 'iteration budget')
        self.assertEqual(summary['successful'], 30)
        self.assertEqual(summary['total_trials'], 30 + summary['total_unsuccessful'])
        self.assertIn('rate_bound_check', summary)

    def test_run_trial_budget(self):
        self.gen_qcqp()
        config = self.write_config('budget', solver={'mu_init': 1e6, 'max_total_trials': 1})
        code, _, _ = self.sdcam('run', config)
        self.assertEqual(code, EXIT_NUMERICAL)
        with open(self.path('budget.summary.json')) as f:
            self.assertEqual(json.load(f)['status'], 'trial budget')

    def test_run_bad_config(self):
        self.gen_qcqp()
        self.assertEqual(self.sdcam('run', self.write_config('bad', solver={'rho': 2.0}))[0], EXIT_USAGE)
        self.assertEqual(self.sdcam('run', self.path('missing.json'))[0], EXIT_USAGE)

    def test_sweep(self):
        self.gen_qcqp()
        config = self.write_config('sweep', solver={'max_successful_iters': 10})
        code, _, err = self.sdcam('run', config, '--sweep', 'schedule.beta0=1e-4,1e-2,1')
        self.assertEqual(code, EXIT_OK, err)
        for v in ('1e-4', '1e-2', '1'):
            self.assertTrue(os.path.exists(self.path('sweep.beta0=%s.csv'%v)), v)
            self.assertTrue(os.path.exists(self.path('sweep.summary.beta0=%s.json'%v)), v)
        with open(self.path('sweep.summary.beta0=1e-4.json')) as f:
            self.assertEqual(json.load(f)['solver']['schedule']['beta0'], 1e-4)
        self.assertEqual(self.sdcam('run', config, '--sweep', 'schedule.beta0')[0], EXIT_USAGE)

    def test_subseq(self):
        save_trace([trace_row(t, s) for t, s in enumerate([2.0, 1.0, 1.5, 0.5])], self.path('t.csv'))
        code, _, _ = self.sdcam('subseq', self.path('t.csv'), '--column', 'step_norm_sq',
                                '--out', self.path('s.csv'))
        self.assertEqual(code, EXIT_OK)
        with open(self.path('s.csv')) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'T,a_T,b_T_minus_1')
        self.assertEqual([l.split(',')[0] for l in lines[1:]], ['2', '3', '4'])
        self.assertEqual(lines[1], '2,1,4')
        code, _, _ = self.sdcam('subseq', self.path('t.csv'), '--column', 'gap',
                                '--out', self.path('s.csv'))
        self.assertEqual(code, EXIT_USAGE)

    def test_check(self):
        argv = ('check', 'mimo', '--seed', '1', '--points', '3', '--prox-trials', '20')
        code, out, _ = self.sdcam(*argv, '--report', self.path('report.json'))
        self.assertEqual(code, EXIT_OK)
        self.assertIn('checks passed', out)
        with open(self.path('report.json')) as f:
            self.assertTrue(json.load(f)['passed'])
        code, out, _ = self.sdcam(*argv, '--corrupt-gradient', '0')
        self.assertEqual(code, EXIT_VERIFICATION)
        self.assertIn('FAIL gradient[', out)
        self.assertEqual(self.sdcam('check', 'nowhere.json')[0], EXIT_USAGE)

    def test_log_level(self):
        with mock.patch.dict(os.environ, {'SDCAM_LOG_LEVEL': 'loud'}):
            code, _, err = self.sdcam('check', 'mimo')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('SDCAM_LOG_LEVEL', err)

if __name__ == '__main__':
    unittest.main()
