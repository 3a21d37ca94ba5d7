"""Seeded generators of small automata, plants and parity games.

Used by the property tests and by ``scripts/size_report.py``.  Every
generator takes a ``random.Random`` so results are reproducible from a seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .automaton import ANY, Concat, OmegaPower, OrdinalAutomaton, Sym, powerset
from .games import EVEN, ODD, ParityGame
from .synthesis import PlantSpec, plant_product
from .winning import ActionPartition

ACTION_NAMES = ("a", "b", "c", "d")


@dataclass(frozen=True)
class LevelTwoConfig:
    """Shape of a random automaton of level 2."""

    n_actions: int = 2
    n_succ: int = 2  # level-0 states
    n_lim: int = 1  # level-1 states
    step_prob: float = 0.35
    lim_prob: float = 0.5
    final_limits: int = 2


@dataclass(frozen=True)
class PlantConfig:
    plant: LevelTwoConfig = LevelTwoConfig()
    negspec: LevelTwoConfig = LevelTwoConfig(n_succ=1, n_lim=1, step_prob=0.6, final_limits=1)
    n_observable: int = 2
    n_controllable: int = 1


@dataclass(frozen=True)
class GameConfig:
    max_vertices: int = 5
    max_priority: int = 3
    edge_prob: float = 0.4
    dead_end_prob: float = 0.1


def _subsets(rng: random.Random, pool: list, prob: float) -> list:
    return [x for x in pool if rng.random() < prob]


def level_two_automaton(rng: random.Random, cfg: LevelTwoConfig = LevelTwoConfig(), prefix: str = "") -> OrdinalAutomaton:
    """Level-0 states s*, level-1 states l*, one final level-2 state f.

    Steps go from level 0 or 1 into level 0; limits go from nonempty sets of
    level-0 states to level 1, and from sets with a level-1 state to f.
    """
    actions = list(ACTION_NAMES[: cfg.n_actions])
    succ = [f"{prefix}s{i}" for i in range(cfg.n_succ)]
    lims = [f"{prefix}l{i}" for i in range(cfg.n_lim)]
    fin = f"{prefix}f"
    letters = powerset(actions)
    steps = set()
    for q in succ + lims:
        for a in letters:
            if rng.random() < cfg.step_prob:
                steps.add((q, a, rng.choice(succ)))
        if not any(t[0] == q for t in steps):
            steps.add((q, rng.choice(letters), rng.choice(succ)))
    limits = set()
    sets0 = [frozenset(S) for S in powerset(succ) if S]
    for P in sets0:
        if rng.random() < cfg.lim_prob:
            limits.add((P, rng.choice(lims)))
    if not limits:
        limits.add((rng.choice(sets0), rng.choice(lims)))
    sets1 = [frozenset(S) for S in powerset(succ + lims) if S & set(lims)]
    for P in rng.sample(sets1, min(cfg.final_limits, len(sets1))):
        limits.add((P, fin))
    level = {q: 0 for q in succ} | {q: 1 for q in lims} | {fin: 2}
    return OrdinalAutomaton(
        actions=frozenset(actions),
        states=frozenset(level),
        step=frozenset(steps),
        limits=frozenset(limits),
        initial=frozenset({lims[0]}),
        final=frozenset({fin}),
        level=level,
    )


def plant_instance(rng: random.Random, cfg: PlantConfig = PlantConfig()):
    """A plant specification together with a negated specification."""
    A = level_two_automaton(rng, cfg.plant, "p")
    neg = level_two_automaton(rng, cfg.negspec, "n")
    actions = sorted(A.actions)
    observable = frozenset(actions[: cfg.n_observable])
    controllable = frozenset(sorted(observable)[: cfg.n_controllable])
    parts = ActionPartition(frozenset(actions), observable, controllable)
    return PlantSpec(A, parts, 2), neg


# richer plants for the determinization cross-checks
DENSE_PLANT = PlantConfig(plant=LevelTwoConfig(n_succ=2, n_lim=1, step_prob=0.5, lim_prob=0.7, final_limits=3))


def small_products(rng: random.Random, count: int, cfg: PlantConfig = DENSE_PLANT, min_states: int = 3, max_states: int = 5):
    """``count`` (spec, negspec, product) triples whose product size lies in the bounds."""
    out = []
    while len(out) < count:
        spec, neg = plant_instance(rng, cfg)
        A = plant_product(spec, neg)
        if min_states <= len(A.states) <= max_states:
            out.append((spec, neg, A))
    return out


def universal_negspec(actions) -> OrdinalAutomaton:
    """Accepts every word of length w^2."""
    letters = powerset(actions)
    steps = {("u1", a, "u0") for a in letters} | {("u0", a, "u0") for a in letters}
    return OrdinalAutomaton(
        actions=frozenset(actions),
        states=frozenset({"u0", "u1", "u2"}),
        step=frozenset(steps),
        limits=frozenset({(frozenset({"u0"}), "u1"), (frozenset({"u0", "u1"}), "u2")}),
        initial=frozenset({"u1"}),
        final=frozenset({"u2"}),
        level={"u0": 0, "u1": 1, "u2": 2},
    )


def empty_negspec(actions) -> OrdinalAutomaton:
    """Accepts nothing: no final state is reachable."""
    return OrdinalAutomaton(
        actions=frozenset(actions),
        states=frozenset({"e1", "e2"}),
        step=frozenset(),
        limits=frozenset(),
        initial=frozenset({"e1"}),
        final=frozenset({"e2"}),
        level={"e1": 1, "e2": 2},
    )


def level_one_automaton(rng: random.Random, n_states: int = 3, n_actions: int = 2, step_prob: float = 0.4) -> OrdinalAutomaton:
    """States c* of level 0 and one final state f of level 1."""
    actions = list(ACTION_NAMES[:n_actions])
    states = [f"c{i}" for i in range(n_states)]
    steps = set()
    for q in states:
        for a in powerset(actions):
            if rng.random() < step_prob:
                steps.add((q, a, rng.choice(states)))
    limits = {
        (frozenset(P), "f")
        for P in powerset(states)
        if P and rng.random() < 0.3
    }
    level = {q: 0 for q in states} | {"f": 1}
    return OrdinalAutomaton(
        actions=frozenset(actions),
        states=frozenset(level),
        step=frozenset(steps),
        limits=frozenset(limits),
        initial=frozenset({states[0]}),
        final=frozenset({"f"}),
        level=level,
    )


def filler(rng: random.Random, actions, e: int):
    """A random word of length exactly w^e (e >= 1)."""
    letters = [Sym(a) for a in powerset(actions)] + [ANY]
    body = Concat(tuple(rng.choice(letters) for _ in range(rng.randint(1, 2))))
    w = OmegaPower(body)
    for _ in range(e - 1):
        head = rng.choice(letters)
        w = OmegaPower(Concat((head, w)) if rng.random() < 0.5 else w)
    return w


def block_word(rng: random.Random, actions, k: int, max_prefix: int = 2, max_period: int = 3):
    """A word of length w^k whose letters at positions w^(k-1)*i form c_0 c_1 ...

    Returns (w, prefix letters, period letters).
    """
    letters = powerset(actions)

    def block(c):
        return Concat((Sym(c), filler(rng, actions, k - 1)))

    pre = [rng.choice(letters) for _ in range(rng.randint(0, max_prefix))]
    per = [rng.choice(letters) for _ in range(rng.randint(1, max_period))]
    loop = OmegaPower(Concat(tuple(block(c) for c in per)))
    w = Concat(tuple(block(c) for c in pre) + (loop,)) if pre else loop
    return w, pre, per


def parity_game(rng: random.Random, cfg: GameConfig = GameConfig()) -> ParityGame:
    n = rng.randint(1, cfg.max_vertices)
    owner = [rng.choice((EVEN, ODD)) for _ in range(n)]
    priority = [rng.randint(0, cfg.max_priority) for _ in range(n)]
    succ = []
    for _ in range(n):
        if rng.random() < cfg.dead_end_prob:
            succ.append(())
            continue
        ss = [w for w in range(n) if rng.random() < cfg.edge_prob]
        succ.append(tuple(ss) or (rng.randrange(n),))
    return ParityGame(owner=owner, priority=priority, succ=succ, initial=0)
