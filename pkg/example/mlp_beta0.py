from common import *

######################## Setup ########################
# Synthetic 20-8-4-1 network on 100 samples, delta=0.5, 3000 accepted
# steps; beta0 at half, one and one and a half times the base.
RATIOS = [0.5, 1.0, 1.5]

def main():
    base = config('mlp.json')
    beta0 = base.schedule.get('beta0', 1.0)

    ######################## Runs ########################
    configs = [variant(base, seed, r * beta0) for seed in SEEDS for r in RATIOS]
    rows = final_rows(configs)

    ######################## Findings ########################
    holds = []
    for k, seed in enumerate(SEEDS):
        steps = [rows[len(RATIOS) * k + j]['scaled_step'] for j in range(len(RATIOS))]
        for r, s in zip(RATIOS, steps):
            print("seed %d  beta0=%-6g scaled_step=%.3e"%(seed, r * beta0, s))
        holds.append(steps[0] == min(steps))

    return 0 if verdict('smaller beta0, smaller step', holds) else 1

# Workers re-import this module.
if __name__ == '__main__':
    sys.exit(main())
