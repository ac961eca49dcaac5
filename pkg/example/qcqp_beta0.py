from common import *

######################## Setup ########################
# 200 variables, 20 quadratic constraints, 3000 accepted steps, the
# family defaults mu_max=1e7, mu_init=1, rho=0.8, eta=1.2, delta=0.3.
SMALL, LARGE = 1e-4, 1.0

def main():
    base = config('qcqp.json').with_override('problem.n', 200) \
                              .with_override('problem.m', 20)

    ######################## Runs ########################
    configs = [variant(base, seed, b) for seed in SEEDS for b in (SMALL, LARGE)]
    rows = final_rows(configs)

    ######################## Findings ########################
    feasibility, steps = [], []
    for k, seed in enumerate(SEEDS):
        small, large = rows[2 * k], rows[2 * k + 1]
        for b, row in ((SMALL, small), (LARGE, large)):
            print("seed %d  beta0=%-6g rel_feas=%.3e scaled_step=%.3e"
                  %(seed, b, row['rel_feas'], row['scaled_step']))
        feasibility.append(large['rel_feas'] < small['rel_feas'])
        steps.append(small['scaled_step'] < large['scaled_step'])

    reproduced = [verdict('larger beta0, smaller violation', feasibility),
                  verdict('smaller beta0, smaller step', steps)]
    return 0 if all(reproduced) else 1

# Workers re-import this module.
if __name__ == '__main__':
    sys.exit(main())
