import json, logging, os, sys

from sdcam import *
from sdcam.cli import EXIT_OK, configure_logging, run_many

configure_logging()
log = logging.getLogger('example')

################ Constants ################
HERE    = os.path.dirname(os.path.abspath(__file__))
SEEDS   = [1, 2, 3]
WORKERS = int(os.environ.get('SDCAM_WORKERS', '3'))

################ Helpers ################
def config(name):
    return load_run_config(os.path.join(HERE, name))

def variant(cfg, seed, beta0):
    return cfg.with_override('problem.seed', seed) \
              .with_override('schedule.beta0', beta0) \
              .with_outputs('.seed=%d.beta0=%g'%(seed, beta0))

def final_rows(configs):
    """Runs the configs on the worker pool and returns the final trace
    row of each, read back from its summary.

    """
    for path, code, message in run_many(configs, WORKERS):
        if code != EXIT_OK:
            sys.exit("%s failed: %s"%(path, message))
    rows = []
    for cfg in configs:
        with open(cfg.output.summary_path) as stream:
            rows.append(json.load(stream)['final'])
    return rows

def verdict(name, holds):
    """Prints the per-seed outcome; the finding is reproduced when it
    holds for at least two seeds.

    """
    for seed, ok in zip(SEEDS, holds):
        print("%-28s seed %d: %s"%(name, seed, 'holds' if ok else 'does not hold'))
    passed = sum(holds) >= 2
    print("%s: %s (%d of %d seeds)"%(name, 'REPRODUCED' if passed else 'NOT REPRODUCED', sum(holds), len(holds)))
    return passed
