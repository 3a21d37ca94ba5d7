"""Sizes of every pipeline stage on seeded random plants, as CSV."""
import argparse
import csv
import random
import sys

from ordsynth.random_instances import DENSE_PLANT, LevelTwoConfig, PlantConfig, plant_instance
from ordsynth.synthesis import synthesize

CONFIGS = {
    "sparse": PlantConfig(),
    "dense": DENSE_PLANT,
    "wide": PlantConfig(plant=LevelTwoConfig(n_succ=3, n_lim=2, step_prob=0.4, lim_prob=0.6, final_limits=3)),
}
FIELDS = ["config", "seed", "product_states", "summary_triples", "awin", "buchi", "rabin",
          "rabin_pairs", "parity", "game_vertices", "controller_states", "verified", "seconds"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", choices=sorted(CONFIGS), default="dense")
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = csv.DictWriter(sys.stdout, FIELDS, restval="")
    out.writeheader()
    for i in range(args.count):
        spec, neg = plant_instance(rng, CONFIGS[args.config])
        res = synthesize(spec, neg)
        out.writerow({"config": args.config, "seed": i, "verified": res.verified, **res.stats})


if __name__ == "__main__":
    main()
