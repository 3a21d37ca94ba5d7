"""Run the bouncing-ball synthesis end to end and print the controller."""
import argparse
import json

from ordsynth.bouncing_ball import not_bouncing_automaton
from ordsynth.fixtures import ball_spec
from ordsynth.io import automaton_to_json
from ordsynth.summary import format_triples, summary
from ordsynth.synthesis import controller_moves, plant_product, synthesize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--summary", action="store_true", help="also print the summary triples S_1")
    args = ap.parse_args()
    spec, neg = ball_spec(), not_bouncing_automaton()
    if args.summary:
        for t in format_triples(summary(plant_product(spec, neg), 1).triples):
            print(f"  {t['from']:8} {t['visited']} -> {t['to']}")
    res = synthesize(spec, neg)
    print("stats:", json.dumps(res.stats))
    if not res.exists:
        print("no controller")
        return
    print(f"verified={res.verified} obs={res.obs_ok} unc={res.unc_ok}")
    print("moves at c0:", [sorted(m) for m in controller_moves(res.controller, "c0")])
    print(json.dumps(automaton_to_json(res.controller), indent=2))


if __name__ == "__main__":
    main()
