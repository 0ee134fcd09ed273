"""Differential run of eval . compile against the substitution oracle.

    python scripts/oracle_sweep.py --seeds 0 1 2 --n 2000
"""
import argparse
import time

from objeval.sweeps import oracle_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--n", type=int, default=1000)
    args = ap.parse_args()
    total_bad = 0
    for seed in args.seeds:
        t0 = time.perf_counter()
        res = oracle_sweep(seed, args.n)
        print(f"{res.line()}  ({time.perf_counter() - t0:.2f}s)")
        for f in res.failures[:10]:
            print("   ", f)
        total_bad += len(res.failures)
    raise SystemExit(1 if total_bad else 0)


if __name__ == "__main__":
    main()
