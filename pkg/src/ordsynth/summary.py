"""Summaries S_i: which states a path of length w^i + 1 can visit between two states.

``S_i = reach(A, Any^(w^i))``.  Synthesis uses ``S_(k-1)`` to compress a whole
block of uncontrolled environment steps into one move of the game.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import OrdinalAutomaton, Reacher, any_power

_reachers: dict = {}


@dataclass(frozen=True)
class SummaryRelation:
    level: int
    triples: frozenset  # of (q, frozenset P, q2), P start-inclusive

    def from_state(self, q) -> list:
        return [(P, q2) for q1, P, q2 in self.triples if q1 == q]


def summary(A: OrdinalAutomaton, i: int) -> SummaryRelation:
    if i < 0:
        raise ValueError("summary level must be >= 0")
    reacher = _reachers.get(A)
    if reacher is None:
        if len(_reachers) > 64:
            _reachers.clear()
        reacher = _reachers[A] = Reacher(A)
    return SummaryRelation(i, reacher(any_power(i)))


def format_triples(triples) -> list:
    return [
        {"from": q, "visited": sorted(P, key=str), "to": q2}
        for q, P, q2 in sorted(triples, key=lambda t: (str(t[0]), sorted(map(str, t[1])), str(t[2])))
    ]
