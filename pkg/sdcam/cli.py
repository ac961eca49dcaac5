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

"""The sdcam command line.

    sdcam gen qcqp --n 20 --m 5 --seed 1 --out qcqp.json
    sdcam run example/qcqp.json --sweep schedule.beta0=1e-4,1e-2,1 --workers 3
    sdcam check mimo --seed 0
    sdcam subseq qcqp.csv --column scaled_step_sq --out qcqp.subseq.csv

Exit codes: 0 success, 1 usage or configuration error, 2 numerical
failure, 3 verification failure.

"""

import argparse, csv, json, logging, os, sys

from collections import OrderedDict as odict
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from sdcam.common import Status
from sdcam.config import RunConfig, load_run_config
from sdcam.diagnostics import rate_bound_check, rate_constants, select_subsequence
from sdcam.errors import (ConfigError, DimensionError, IdxFormatError, NumericalError,
                          SdcamError, TrialBudgetExhausted, VerificationFailure)
from sdcam.instances import FAMILIES, family, generate, read_instance, write_instance
from sdcam.solver import solve
from sdcam.trace import format_value, load_trace, save_summary, save_trace, summarize
from sdcam.utils import Wrapper, to_json
from sdcam.verify import corrupt_gradient, run_checks

log = logging.getLogger(__name__)

EXIT_OK           = 0
EXIT_USAGE        = 1
EXIT_NUMERICAL    = 2
EXIT_VERIFICATION = 3

LOG_LEVELS = odict([('error', logging.ERROR), ('info', logging.INFO), ('debug', logging.DEBUG)])

SUBSEQ_COLUMNS = odict([('step_norm_sq', 'step_norm'), ('scaled_step_sq', 'scaled_step')])

class UsageError(SdcamError):
    pass

class ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting, so every failure maps to the
    documented exit codes.

    """
    def error(self, message):
        raise UsageError("%s: %s"%(self.prog, message))

################################ Commands ################################
def cmd_gen(family_name, params, seed, out_path):
    inst = generate(family_name, seed, **params)
    try:
        digest = write_instance(inst, out_path)
    except OSError as e:
        raise ConfigError("cannot write %s: %s"%(out_path, e.strerror or e))
    print("%s  %s"%(digest, out_path))
    return inst, digest

def cmd_run(cfg):
    """Solves one configured run, writes its trace and summary, and
    returns the summary.

    """
    inst = cfg.problem.load()
    p = inst.problem()
    scfg = cfg.solver_config()
    x0, y0 = inst.start()
    result = solve(p, scfg, x0, y0)
    save_trace(result.trace, cfg.output.trace)
    consts = report = None
    if cfg.output.check_rates and result.trace:
        consts = rate_constants(p, scfg.schedule, result.trace[:1], scfg)
        report = rate_bound_check(result.trace, consts, inst.regime)
    summary = summarize(p, result, scfg, consts, report)
    save_summary(summary, cfg.output.summary_path)
    if result.status == Status.trial_budget:
        raise TrialBudgetExhausted("%s: trial budget of %d exhausted after %d accepted steps"
                                   %(p.name, scfg.max_total_trials, result.state.t))
    return summary

def cmd_check(target, seed=0, points=10, prox_trials=1000, corrupt=None):
    """Runs the verification suite on a family (generated from seed with
    default params) or on an instance file.

    """
    if target in FAMILIES:
        inst = generate(target, seed)
    elif os.path.exists(target):
        inst = read_instance(target)
    else:
        raise ConfigError("'%s' is neither a problem family (%s) nor an instance file"
                          %(target, ', '.join(FAMILIES)))
    p = inst.problem()
    if corrupt is not None:
        if not 0 <= corrupt < p.n:
            raise ConfigError("--corrupt-gradient coordinate must lie in [0, %d)"%p.n)
        p = corrupt_gradient(p, corrupt)
    return run_checks(inst, seed=seed, points=points, prox_trials=prox_trials, p=p)

def cmd_subseq(trace_path, column, out_path):
    if column not in SUBSEQ_COLUMNS:
        raise ConfigError("unknown column '%s' (valid columns: %s)"%(column, ', '.join(SUBSEQ_COLUMNS)))
    rows = load_trace(trace_path)
    if not rows:
        raise ConfigError("%s: trace has no rows"%trace_path)
    a = np.array([getattr(r, SUBSEQ_COLUMNS[column]) for r in rows]) ** 2
    try:
        sub = select_subsequence(a)
    except ValueError as e:
        raise ConfigError("%s: %s"%(trace_path, e))
    with open(out_path, 'w', newline='') as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['T', 'a_T', 'b_T_minus_1'])
        for T, aT, bT in zip(*sub):
            writer.writerow([T, format_value(aT), format_value(bT)])
    log.info("selected %d of %d indices from %s", len(sub.indices), len(rows), trace_path)
    return sub

################################ Sweeps ################################
def _parse_value(text):
    try:
        return json.loads(text)
    except ValueError:
        return text

def sweep_configs(cfg, spec):
    """Expands 'section.key=v1,v2,...' into one config per value, each
    writing to its own trace and summary.

    """
    key, sep, values = spec.partition('=')
    if not sep or not values:
        raise ConfigError("--sweep expects KEY=V1,V2,... (got '%s')"%spec)
    name = key.rpartition('.')[2]
    out = []
    for text in values.split(','):
        v = _parse_value(text.strip())
        out.append(cfg.with_override(key, v).with_outputs('.%s=%s'%(name, text.strip())))
    return out

def _run_document(doc):
    """Worker entry point: runs one config given as a JSON document and
    returns (trace path, exit code, message).

    """
    data = json.loads(doc)
    path = data.get("output", {}).get("trace")
    try:
        summary = cmd_run(RunConfig.from_json(data))
        return path, EXIT_OK, str(summary["status"])
    except (ConfigError, DimensionError, IdxFormatError, OSError) as e:
        return path, EXIT_USAGE, str(e)
    except NumericalError as e:
        return path, EXIT_NUMERICAL, str(e)

def run_many(configs, workers=1):
    docs = [to_json(c, indent=None) for c in configs]
    if workers > 1 and len(docs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_document, docs))
    else:
        results = [_run_document(d) for d in docs]
    for path, code, message in results:
        log.log(logging.INFO if code == EXIT_OK else logging.ERROR, "%s: %s", path, message)
    return results

################################ Parser ################################
def _dashed(name):
    return '--' + name.replace('_', '-')

def _param_type(p):
    if p.type is list:
        return lambda s: [int(v) for v in s.split(',')]
    if isinstance(p.type, type) and issubclass(p.type, Wrapper):
        return str
    return p.type

def _family_params(args, params_type):
    return dict((p.name, getattr(args, p.name)) for p in params_type.props()
                if getattr(args, p.name, None) is not None)

def build_parser():
    parser = ArgumentParser(prog='sdcam', description='Single-loop successive DC approximation solver')
    sub = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    sub.required = True

    gen = sub.add_parser('gen', help='generate a problem instance file')
    fams = gen.add_subparsers(dest='family', parser_class=ArgumentParser)
    fams.required = True
    for name, cls in FAMILIES.items():
        fp = fams.add_parser(name, help='generate a %s instance'%name)
        for p in cls.params_type.props():
            fp.add_argument(_dashed(p.name), dest=p.name, type=_param_type(p), default=None,
                            help='default: %s'%(p.default,))
        fp.add_argument('--seed', type=int, default=0)
        fp.add_argument('--out', required=True, help='instance file to write')

    run = sub.add_parser('run', help='solve one or more run configs')
    run.add_argument('configs', nargs='+', metavar='CONFIG')
    run.add_argument('--sweep', action='append', default=[], metavar='KEY=V1,V2,...',
                     help="one run per value, e.g. schedule.beta0=1e-4,1e-2,1")
    run.add_argument('--workers', type=int, default=1)

    check = sub.add_parser('check', help='verify oracles, prox maps and schedules')
    check.add_argument('target', help='problem family or instance file')
    check.add_argument('--seed', type=int, default=0)
    check.add_argument('--points', type=int, default=10)
    check.add_argument('--prox-trials', type=int, default=1000)
    check.add_argument('--corrupt-gradient', type=int, default=None, metavar='COORDINATE',
                       help='negative control: offset one gradient coordinate')
    check.add_argument('--report', default=None, help='write the report as JSON')

    subseq = sub.add_parser('subseq', help='select the certified subsequence of a trace')
    subseq.add_argument('trace')
    subseq.add_argument('--column', required=True, choices=list(SUBSEQ_COLUMNS))
    subseq.add_argument('--out', required=True)
    return parser

def configure_logging():
    level = os.environ.get('SDCAM_LOG_LEVEL', 'info').lower()
    if level not in LOG_LEVELS:
        raise UsageError("SDCAM_LOG_LEVEL must be one of %s (got '%s')"%(', '.join(LOG_LEVELS), level))
    logging.basicConfig(level=LOG_LEVELS[level], format='%(asctime)s %(levelname)s %(name)s: %(message)s')

def _dispatch(args):
    if args.command == 'gen':
        params = _family_params(args, family(args.family).params_type)
        cmd_gen(args.family, params, args.seed, args.out)
        return EXIT_OK

    if args.command == 'run':
        configs = [load_run_config(path) for path in args.configs]
        for spec in args.sweep:
            configs = [c2 for c in configs for c2 in sweep_configs(c, spec)]
        results = run_many(configs, args.workers)
        return max(code for _, code, _ in results)

    if args.command == 'check':
        report = cmd_check(args.target, args.seed, args.points, args.prox_trials, args.corrupt_gradient)
        if args.report:
            with open(args.report, 'w') as stream:
                stream.write(to_json(report))
                stream.write('\n')
        for item in report.failures():
            print("FAIL %s %s"%(item.name, json.dumps(item.detail, default=str)))
        if not report.passed:
            raise VerificationFailure("%d of %d checks failed"%(len(report.failures()), len(report.items)))
        print("all %d checks passed"%len(report.items))
        return EXIT_OK

    cmd_subseq(args.trace, args.column, args.out)
    return EXIT_OK

def main(argv=None):
    try:
        configure_logging()
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except (UsageError, ConfigError, DimensionError, IdxFormatError, OSError) as e:
        sys.stderr.write("sdcam: %s\n"%e)
        return EXIT_USAGE
    except NumericalError as e:
        sys.stderr.write("sdcam: numerical failure: %s\n"%e)
        return EXIT_NUMERICAL
    except VerificationFailure as e:
        sys.stderr.write("sdcam: verification failed: %s\n"%e)
        return EXIT_VERIFICATION

if __name__ == '__main__':
    sys.exit(main())
