"""The bouncing-ball plant and the automaton for "not almost always bouncing".

Actions: ``lift-up`` (controllable, observable), ``stop`` (observable),
``bounce`` (neither).  Both automata have level 2.
"""
from __future__ import annotations

from .automaton import OrdinalAutomaton, powerset

ACTIONS = frozenset({"lift-up", "bounce", "stop"})
OBSERVABLE = frozenset({"stop", "lift-up"})
CONTROLLABLE = frozenset({"lift-up"})
LEVEL = 2


def _f(*xs):
    return frozenset(xs)


def ball_automaton() -> OrdinalAutomaton:
    """s: at rest after a limit; 0: stopped; b: bouncing; f: end of the run."""
    steps = {
        ("s", _f("stop"), "0"),
        ("s", _f("stop", "lift-up"), "b"),
        ("0", _f("stop"), "0"),
        ("0", _f("lift-up"), "b"),
        ("b", _f("bounce"), "b"),
        ("b", _f("bounce", "lift-up"), "b"),
    }
    limits = {
        (_f("b"), "s"),
        (_f("0"), "s"),
        (_f("s", "b"), "f"),
        (_f("s", "0", "b"), "f"),
        (_f("s", "0"), "f"),
    }
    return OrdinalAutomaton(
        actions=ACTIONS,
        states=_f("s", "0", "b", "f"),
        step=frozenset(steps),
        limits=frozenset(limits),
        initial=_f("s"),
        final=_f("f"),
        level={"s": 1, "0": 0, "b": 0, "f": 2},
    )


def not_bouncing_automaton() -> OrdinalAutomaton:
    """Accepts the w^2-words in which some successor position lacks ``bounce``.

    ``y*`` states: no violation seen yet; ``n*`` states: a violation was seen.
    Suffixes 1 / w / w2 give the position kind (successor, limit, end).
    """
    sigma = powerset(ACTIONS)
    steps = set()
    for a in sigma:
        steps.add(("yw", a, "y1"))
        steps.add(("nw", a, "n1"))
        steps.add(("n1", a, "n1"))
        steps.add(("y1", a, "y1" if "bounce" in a else "n1"))
    limits = {
        (_f("y1"), "yw"),
        (_f("n1"), "nw"),
        (_f("y1", "yw"), "yw2"),
        (_f("n1", "nw"), "nw2"),
    }
    return OrdinalAutomaton(
        actions=ACTIONS,
        states=_f("yw", "y1", "n1", "nw", "yw2", "nw2"),
        step=frozenset(steps),
        limits=frozenset(limits),
        initial=_f("yw"),
        final=_f("nw2"),
        level={"yw": 1, "nw": 1, "y1": 0, "n1": 0, "yw2": 2, "nw2": 2},
    )
