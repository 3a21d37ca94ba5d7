"""Command-line front end: one subcommand per pipeline stage.

Exit codes: 0 success (or a controller exists), 2 no controller, 1 input error.
JSON goes to stdout or to ``--out``; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import random
import sys

from .automaton import AutomatonError, level_violations, membership
from .constructions import lift, product
from .fologic import FoError, format_fo, free_vars, ltl_to_fo, parse_ltl, size
from .games import build_game, dump_game, solve
from .io import (
    FormatError,
    automaton_from_json,
    automaton_to_json,
    dumps,
    load_automaton,
    load_json,
    load_plant,
    load_word,
)
from .ordinals import OrdinalError
from .summary import format_triples, summary
from .synthesis import SpecError, check_obs, check_unc, plant_product, synthesize, verify
from .winning import (
    PartitionError,
    WinPipeline,
    build_awin,
    cross_check,
    dump_awin,
    dump_buchi,
    dump_parity,
    dump_rabin,
    iar,
    muller_to_buchi,
    parity_to_hoa,
    safra,
)

EXIT_OK, EXIT_INPUT, EXIT_NO_CONTROLLER = 0, 1, 2


class InputError(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plant_and_product(args):
    spec = load_plant(args.plant)
    neg = load_automaton(args.negspec)
    return spec, neg, plant_product(spec, neg)


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args) -> int:
    A = load_automaton(args.automaton)
    report = {"states": len(A.states), "steps": len(A.step), "limits": len(A.limits)}
    code = EXIT_OK
    if args.level is not None:
        bad = level_violations(A, args.level)
        report["level"] = args.level
        report["valid"] = not bad
        report["violations"] = bad
        for msg in bad:
            print(f"{args.automaton}: {msg}", file=sys.stderr)
        code = EXIT_INPUT if bad else EXIT_OK
    _emit(args, dumps(report))
    return code


def cmd_product(args) -> int:
    A = product(load_automaton(args.left), load_automaton(args.right))
    _emit(args, dumps(automaton_to_json(A)))
    return EXIT_OK


def cmd_lift(args) -> int:
    C = load_automaton(args.controller)
    if args.level is None or args.level < 2:
        raise InputError("lift needs --level k with k >= 2")
    bad = level_violations(C, 1) if C.level is not None else ["controller has no level map"]
    if bad:
        raise InputError("controller is not of level 1: " + "; ".join(bad))
    _emit(args, dumps(automaton_to_json(lift(C, args.level))))
    return EXIT_OK


def cmd_summarize(args) -> int:
    if args.automaton:
        A = load_automaton(args.automaton)
        if args.level is None:
            raise InputError("summarize --automaton needs --level i")
        i = args.level
    else:
        if not (args.plant and args.negspec):
            raise InputError("summarize needs --automaton, or --plant and --negspec")
        spec, _, A = _plant_and_product(args)
        i = spec.level - 1 if args.level is None else args.level
    R = summary(A, i)
    _emit(args, dumps({"level": i, "triples": format_triples(R.triples)}))
    return EXIT_OK


def cmd_membership(args) -> int:
    A = load_automaton(args.automaton)
    w = load_word(args.word)
    _emit(args, dumps({"member": membership(A, w)}))
    return EXIT_OK


def _stages(args):
    spec, _, A = _plant_and_product(args)
    R = summary(A, spec.level - 1)
    W = build_awin(A, spec.parts, R)
    return spec, W


def cmd_awin(args) -> int:
    _, W = _stages(args)
    _emit(args, dumps(dump_awin(W)))
    return EXIT_OK


def cmd_determinize(args) -> int:
    _, W = _stages(args)
    B = muller_to_buchi(W)
    Rb = safra(B) if args.stage in ("rabin", "parity") or args.samples else None
    D = iar(Rb) if args.stage == "parity" or args.samples else None
    if args.stage == "parity" and args.hoa:
        _emit(args, parity_to_hoa(D))
        return EXIT_OK
    if args.stage == "awin":
        out = dump_awin(W)
    elif args.stage == "buchi":
        out = dump_buchi(B)
    elif args.stage == "rabin":
        out = dump_rabin(Rb)
    else:
        out = dump_parity(D)
        out["complete"] = D.is_complete()
    if args.samples:
        bad = cross_check(WinPipeline(W, B, Rb, D), random.Random(args.seed), args.samples)
        out["cross_check"] = {"seed": args.seed, "samples": args.samples, "mismatches": len(bad)}
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_game(args) -> int:
    spec, W = _stages(args)
    D = iar(safra(muller_to_buchi(W)))
    G = build_game(D, spec.parts)
    sol = solve(G)
    out = dump_game(G, sol)
    out["cont_wins"] = G.initial in sol.win_even
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_synthesize(args) -> int:
    spec = load_plant(args.plant)
    neg = load_automaton(args.negspec)
    res = synthesize(spec, neg, check=not args.no_verify)
    stats = {k: v for k, v in res.stats.items() if k != "seconds"}
    if not res.exists:
        _emit(args, dumps({"controller": None, "stats": stats}))
        print("no controller: Env wins the game from the initial vertex", file=sys.stderr)
        return EXIT_NO_CONTROLLER
    out = {
        "controller": automaton_to_json(res.controller),
        "verified": res.verified,
        "check_obs": res.obs_ok,
        "check_unc": res.unc_ok,
        "stats": stats,
        "diagnostics": res.diagnostics,
    }
    for msg in res.diagnostics:
        print(msg, file=sys.stderr)
    _emit(args, dumps(out))
    return EXIT_OK


def _controller_from(path: str):
    data = load_json(path)
    # accept either a bare automaton or a synthesize report
    if isinstance(data, dict) and "controller" in data:
        if data["controller"] is None:
            raise InputError(f"{path}: report contains no controller")
        return automaton_from_json(data["controller"], f"{path}.controller")
    return automaton_from_json(data, path)


def cmd_verify(args) -> int:
    spec = load_plant(args.plant)
    neg = load_automaton(args.negspec)
    C = _controller_from(args.controller)
    if C.level is None or level_violations(C, 1):
        raise InputError("controller must carry a level map of level 1")
    out = {
        "verified": verify(C, spec, neg),
        "check_obs": check_obs(C, spec.parts),
        "check_unc": check_unc(C, spec.parts),
    }
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_translate_fo(args) -> int:
    phi = parse_ltl(args.formula)
    f = ltl_to_fo(phi, args.var)
    if args.json:
        text = dumps({"formula": format_fo(f), "size": size(f), "free": sorted(free_vars(f))})
    else:
        text = format_fo(f) + "\n"
    _emit(args, text)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordsynth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output here instead of stdout")
        return sp

    sp = add("validate", cmd_validate, "parse an automaton and optionally check its level")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--level", type=int)

    sp = add("product", cmd_product, "synchronized product of two automata")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)

    sp = add("lift", cmd_lift, "embed a level-1 controller at level k")
    sp.add_argument("--controller", required=True)
    sp.add_argument("--level", type=int)

    sp = add("summarize", cmd_summarize, "summary triples reach(Any^(w^i))")
    sp.add_argument("--automaton")
    sp.add_argument("--plant")
    sp.add_argument("--negspec")
    sp.add_argument("--level", type=int)

    sp = add("membership", cmd_membership, "decide whether an automaton accepts a regular word")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--word", required=True, help="compact syntax, inline JSON, or a JSON file")

    for name, func, text in (
        ("awin", cmd_awin, "dump the Muller automaton of plays won by Env"),
        ("determinize", cmd_determinize, "dump one stage of the determinization chain"),
        ("game", cmd_game, "build and solve the parity game"),
        ("synthesize", cmd_synthesize, "synthesize and verify a controller"),
    ):
        sp = add(name, func, text)
        sp.add_argument("--plant", required=True)
        sp.add_argument("--negspec", required=True)
        if name == "determinize":
            sp.add_argument("--stage", choices=["awin", "buchi", "rabin", "parity"], default="parity")
            sp.add_argument("--hoa", action="store_true", help="plain-text dump of the parity stage")
            sp.add_argument("--samples", type=int, default=0, help="cross-check stages on sampled words")
            sp.add_argument("--seed", type=int, default=0)
        if name == "synthesize":
            sp.add_argument("--no-verify", action="store_true")
            sp.add_argument("--level", type=int, help="must match the plant level when given")

    sp = add("verify", cmd_verify, "check a controller against plant and negated specification")
    sp.add_argument("--controller", required=True)
    sp.add_argument("--plant", required=True)
    sp.add_argument("--negspec", required=True)

    sp = add("translate-fo", cmd_translate_fo, "translate a temporal formula to first-order logic")
    sp.add_argument("--formula", required=True, help="prefix syntax, e.g. '(U w^2 (p) (q))'")
    sp.add_argument("--var", default="x0")
    sp.add_argument("--json", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "synthesize" and args.level is not None:
        try:
            level = load_plant(args.plant).level
        except FormatError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        if level != args.level:
            print(f"error: --level {args.level} does not match plant level {level}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (FormatError, SpecError, PartitionError, AutomatonError, OrdinalError, FoError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
