"""Compare discriminant-sign ESS verdicts with replicator-dynamics behaviour.

Draws random 2x2 games with a well-separated interior equilibrium, evaluates the
quantum game for a random symmetric state, and tallies agreement.
"""
import argparse

import numpy as np

from quantum_ess.ess_analyzer import analyze
from quantum_ess.quantum_state import StateWeights
from quantum_ess.replicator import StabilityClass, classify_stability


def random_symmetric_state(rng):
    w00, w11, off = rng.dirichlet(np.ones(3))
    return StateWeights.symmetric_2x2(w00, w11, off)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--games", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--steps", type=int, default=5000)
    ap.add_argument("--dt", type=float, default=0.01)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    tally = {"agree": 0, "disagree": 0, "inconclusive": 0, "skipped": 0}
    while sum(tally.values()) - tally["skipped"] < args.games:
        r = analyze(rng.uniform(-5, 5, (2, 2)), random_symmetric_state(rng))
        x = r.mixed_ne_quantum
        # the sampler has no control over conditioning here, so skip slow or edge cases
        if r.ne_status_quantum != "interior" or not 0.1 < x < 0.9 or abs(r.quantum_discriminant) < 1.0:
            tally["skipped"] += 1
            continue
        verdict = classify_stability(np.array(r.omega), x, dt=args.dt, steps=args.steps)
        if verdict is StabilityClass.INCONCLUSIVE:
            tally["inconclusive"] += 1
        elif (verdict is StabilityClass.ATTRACTING) == r.quantum_mixed_is_ess:
            tally["agree"] += 1
        else:
            tally["disagree"] += 1
    for key, value in tally.items():
        print(f"{key:>12}: {value}")


if __name__ == "__main__":
    main()
