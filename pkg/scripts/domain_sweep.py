"""Exhaustive variable-domain checks at a chosen scale.

    python scripts/domain_sweep.py --stages 3 --size 3 --type-size 3
"""
import argparse
import time

from objeval import sweeps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--stages", type=int, default=3)
    ap.add_argument("--size", type=int, default=3)
    ap.add_argument("--type-size", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    runs = [
        lambda: sweeps.law_sweep(args.stages, args.size, args.type_size),
        lambda: sweeps.naturality_sweep(args.stages, args.size, args.type_size),
        lambda: sweeps.correspondence_sweep(3, 3),
        lambda: sweeps.concept_sweep(args.seed, 200),
        sweeps.description_sweep,
    ]
    bad = 0
    for run in runs:
        t0 = time.perf_counter()
        res = run()
        print(f"{res.line()}  ({time.perf_counter() - t0:.2f}s)")
        bad += len(res.failures)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
