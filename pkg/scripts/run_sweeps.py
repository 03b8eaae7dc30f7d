"""Run the randomized verification sweeps and write one JSON summary per mode.

    python scripts/run_sweeps.py --out results/ --scale 0.1
"""

import argparse
import time
from pathlib import Path

from hollow_helly.io import dump_json
from hollow_helly.sampling import SweepConfig, sweep

PLAN = [
    dict(mode="theorem1", d=2, trials=100_000, size_max=8),
    dict(mode="theorem1", d=2, trials=20_000, size_max=8, style="enclosing"),
    dict(mode="theorem2", d=3, trials=10_000, size_max=9),
    dict(mode="theorem2", d=3, trials=5_000, size_max=9, style="enclosing"),
    dict(mode="lemma4", d=1, trials=10_000),
    dict(mode="lemma4", d=2, trials=10_000),
    dict(mode="lemma4", d=3, trials=10_000),
    dict(mode="lemma4", d=4, trials=10_000),
    dict(mode="oracle_agreement", d=4, trials=10_000, size_min=1),
    dict(mode="solid", d=3, trials=1_000),
    dict(mode="onedim", d=1, trials=10_000, grid=3, size_max=6),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every trial count")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bad = 0
    for job in PLAN:
        job = dict(job, trials=max(1, int(job["trials"] * args.scale)), seed=args.seed, workers=args.workers)
        t = time.perf_counter()
        rep = sweep(SweepConfig(**job))
        dt = time.perf_counter() - t
        name = f"{job['mode']}-d{job['d']}-{job.get('style', 'uniform')}.json"
        dump_json(rep, out / name)
        bad += rep["failed"]
        print(f"{name:<40} {rep['trials']:>7} trials  {rep['failed']} failed  {dt:7.1f}s  {rep['tags']}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
