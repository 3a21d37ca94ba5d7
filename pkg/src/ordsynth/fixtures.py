"""Shipped example inputs and the code that regenerates them.

The JSON files under ``fixtures/`` are produced by ``write_fixtures``; tests
check that the files on disk still match what this module builds.
"""
from __future__ import annotations

import os

from . import bouncing_ball as bb
from .automaton import OrdinalAutomaton
from .io import automaton_to_json, dumps, plant_to_json
from .synthesis import PlantSpec, synthesize
from .winning import ActionPartition

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


def example_automaton() -> OrdinalAutomaton:
    """Accepts (a^w b)^w: an a-loop on 0, limits {0} -> 1 and {0,1} -> 2."""
    return OrdinalAutomaton(
        actions=frozenset({"a", "b"}),
        states=frozenset({"0", "1", "2"}),
        step=frozenset({("0", frozenset({"a"}), "0"), ("1", frozenset({"b"}), "0")}),
        limits=frozenset({(frozenset({"0"}), "1"), (frozenset({"0", "1"}), "2")}),
        initial=frozenset({"0"}),
        final=frozenset({"2"}),
        level={"0": 0, "1": 1, "2": 2},
    )


def ball_spec() -> PlantSpec:
    parts = ActionPartition(bb.ACTIONS, bb.OBSERVABLE, bb.CONTROLLABLE)
    return PlantSpec(bb.ball_automaton(), parts, bb.LEVEL)


def fixture_texts() -> dict:
    spec = ball_spec()
    neg = bb.not_bouncing_automaton()
    res = synthesize(spec, neg)
    return {
        "ex1.json": dumps(automaton_to_json(example_automaton())),
        "ball.json": dumps(plant_to_json(spec)),
        "notpsi.json": dumps(automaton_to_json(neg)),
        "expected-controller.json": dumps(automaton_to_json(res.controller)),
    }


def write_fixtures(directory: str = FIXTURE_DIR) -> list:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, text in fixture_texts().items():
        path = os.path.join(directory, name)
        with open(path, "w") as fh:
            fh.write(text)
        written.append(path)
    return written
