"""Per-rule rewrite soundness on random instances.

    python scripts/soundness_sweep.py --n 1000 --seed 3
"""
import argparse
import time

from objeval.combinators import RULES
from objeval.sweeps import soundness_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, default=200)
    args = ap.parse_args()
    bad = 0
    for rule in RULES:
        t0 = time.perf_counter()
        res = soundness_sweep(rule, args.seed, args.n)
        print(f"{res.line()}  ({res.attempts} attempts, {time.perf_counter() - t0:.2f}s)")
        bad += len(res.failures)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
