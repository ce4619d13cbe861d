"""Perturb-project experiments around cusp configurations.

Cube groups in dimension 4 are rigid: every projected perturbation is
again a cusp group, in hyperbolic, AdS and half-pipe geometry alike.
The rectangle group in H^3 is flexible and splits into one intersecting
and one disjoint pair of opposite walls.
"""

import argparse

from coxvar.cusp import base_cube, base_rect_ads, base_rect_hp, base_rect_hyp, rigidity_experiment

BASES = {
    ("hyp", "cube"): lambda: base_cube("hyp"),
    ("ads", "cube"): lambda: base_cube("ads"),
    ("hp", "cube"): lambda: base_cube("hp"),
    ("hyp", "rect"): base_rect_hyp,
    ("ads", "rect"): base_rect_ads,
    ("hp", "rect"): base_rect_hp,
}


def run(trials, noise, seed):
    for (geometry, group), make in BASES.items():
        stats = rigidity_experiment(geometry, group, make(), trials, noise=noise, seed=seed)
        hist = ", ".join(f"{k}={v}" for k, v in sorted(stats.counts.items()))
        print(f"{geometry:4s} {group:4s}  base={stats.base_class:10s}  {hist}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--noise", type=float, default=1e-3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(args.trials, args.noise, args.seed)
