"""Survey random quantum games: how often is the mixed equilibrium an ESS, and
does a mixed ESS ever coexist with a pure one?"""
import argparse
from collections import Counter

import numpy as np

from quantum_ess.ess_analyzer import analyze
from quantum_ess.quantum_state import StateWeights


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    counts = Counter()
    for _ in range(args.samples):
        w00, w11, off = rng.dirichlet(np.ones(3))
        r = analyze(rng.uniform(-10, 10, (2, 2)), StateWeights.symmetric_2x2(w00, w11, off))
        counts[f"pure ESS count {len(r.pure_ess_quantum)}"] += 1
        if r.quantum_mixed_is_ess:
            counts["mixed ESS"] += 1
            counts["mixed ESS with a pure ESS"] += bool(r.pure_ess_quantum)
        counts["flip"] += r.flip
        counts["classical ESS verdict changed"] += r.classical_mixed_is_ess != r.quantum_mixed_is_ess
    for key in sorted(counts):
        print(f"{key:>32}: {counts[key]}")


if __name__ == "__main__":
    main()
