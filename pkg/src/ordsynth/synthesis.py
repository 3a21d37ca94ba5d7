"""End-to-end controller synthesis and independent verification.

Pipeline: product -> summary S_(k-1) -> A_Win -> B_Win -> Safra -> IAR ->
parity game -> Zielonka.  When Cont wins, its positional strategy becomes a
level-1 controller over the observable actions; the controller is then
checked by emptiness of ``lift_k(C) x A_S x A_notpsi`` at length w^k.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .automaton import (
    AutomatonError,
    OrdinalAutomaton,
    emptiness_at_length,
    letter_key,
    level_violations,
    powerset,
)
from .constructions import lift, product
from .games import EVEN, ParityGame, Solution, build_game, solve
from .summary import summary
from .winning import ActionPartition, WinPipeline, run_pipeline

DONE = "done"


class SpecError(ValueError):
    """The plant or the negated specification does not meet the preconditions."""


@dataclass(frozen=True)
class PlantSpec:
    plant: OrdinalAutomaton
    parts: ActionPartition
    level: int

    def __post_init__(self):
        if self.level < 2:
            raise SpecError("plants of level 1 are not supported; the level must be >= 2")
        if not self.plant.actions <= self.parts.actions:
            raise SpecError("plant uses actions outside the declared action set")


@dataclass(frozen=True)
class StronglyConnectedLimits:
    """Limit rule of an emitted controller: every strongly connected set of
    level-0 states (the possible cofinal sets of its runs) leads to ``done``."""

    graph: tuple  # sorted (state, successors) items over level-0 states
    target: str = DONE

    def _succ(self) -> dict:
        return {q: set(ss) for q, ss in self.graph}

    def targets(self, P):
        succ = self._succ()
        if not P or any(q not in succ for q in P):
            return ()
        return [self.target] if _strongly_connected(P, succ) else ()

    def enumerate(self):
        succ = self._succ()
        states = sorted(succ)
        if len(states) > 16:
            raise AutomatonError("too many controller states to list strongly connected subsets")
        out = []
        for mask in range(1, 1 << len(states)):
            P = frozenset(q for i, q in enumerate(states) if mask >> i & 1)
            if _strongly_connected(P, succ):
                out.append((P, self.target))
        return out


def _strongly_connected(P, succ) -> bool:
    P = set(P)
    start = next(iter(P))

    def closure(nbrs):
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in nbrs(v):
                if w in P and w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    if closure(lambda v: succ[v]) != P:
        return False
    pred: dict = {q: set() for q in P}
    for q in P:
        for w in succ[q]:
            if w in P:
                pred[w].add(q)
    if closure(lambda v: pred[v]) != P:
        return False
    # a singleton needs a self-loop to be a cofinal set
    return len(P) > 1 or start in succ[start]


@dataclass
class SynthesisResult:
    controller: OrdinalAutomaton | None
    verified: bool | None
    obs_ok: bool | None
    unc_ok: bool | None
    stats: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    pipeline: WinPipeline | None = None
    game: ParityGame | None = None
    solution: Solution | None = None

    @property
    def exists(self) -> bool:
        return self.controller is not None


def plant_product(spec: PlantSpec, negspec: OrdinalAutomaton) -> OrdinalAutomaton:
    A = product(spec.plant, negspec)
    if A.level is None:
        raise SpecError("plant and negated specification both need level maps")
    bad = level_violations(A, spec.level)
    if bad:
        raise SpecError("product is not of level %d:\n  %s" % (spec.level, "\n  ".join(bad)))
    return A


def synthesize(spec: PlantSpec, negspec: OrdinalAutomaton, check: bool = True) -> SynthesisResult:
    t0 = time.perf_counter()
    parts = spec.parts
    A = plant_product(spec, negspec)
    R = summary(A, spec.level - 1)
    pipe = run_pipeline(A, parts, R)
    G = build_game(pipe.parity, parts)
    sol = solve(G)
    stats = {
        "product_states": len(A.states),
        "summary_triples": len(R.triples),
        **pipe.sizes(),
        "game_vertices": G.n,
    }
    if G.initial not in sol.win_even:
        stats["seconds"] = round(time.perf_counter() - t0, 3)
        return SynthesisResult(None, None, None, None, stats, [], pipe, G, sol)
    C = extract_controller(pipe, G, sol, parts)
    stats["controller_states"] = len(C.states) - 1
    result = SynthesisResult(C, None, None, None, stats, [], pipe, G, sol)
    if check:
        result.obs_ok = check_obs(C, parts)
        result.unc_ok = check_unc(C, parts)
        result.verified = verify(C, spec, negspec)
        if not result.verified:
            result.diagnostics.append(
                "verification failed: lift(C) x A_S x A_notpsi accepts a run; the idle "
                "loops required for unobservable rounds add behaviour the strategy did not plan"
            )
        if not result.obs_ok:
            result.diagnostics.append("controller violates the observability condition")
        if not result.unc_ok:
            result.diagnostics.append("controller blocks an uncontrollable observable action")
    stats["seconds"] = round(time.perf_counter() - t0, 3)
    return result


def _choose_control(cs: list) -> frozenset:
    """Among controllable sets with the same effect, prefer the largest."""
    return max(cs, key=lambda c: (len(c), [-ord(ch) for ch in ",".join(sorted(c))]))


def extract_controller(pipe: WinPipeline, G: ParityGame, sol: Solution, parts: ActionPartition) -> OrdinalAutomaton:
    """States: parity states reachable under Cont's strategy; one step per round."""
    D = pipe.parity
    obs_env = powerset(parts.env_observable)
    m = len(obs_env)
    order = [D.initial]
    names = {D.initial: "c0"}
    steps = set()
    i = 0
    while i < len(order):
        d = order[i]
        for j, o in enumerate(obs_env):
            v = D.n_states + d * m + j
            if not G.succ[v]:
                # o is empty and there is nothing to control: only silent rounds
                continue
            t = sol.strategy_even.get(v)
            if t is None:
                # every Cont vertex reachable inside the winning region has a move
                raise AssertionError(f"no strategy at vertex {G.labels[v]}")
            c = _choose_control(G.moves[(v, t)])
            if t not in names:
                names[t] = f"c{len(order)}"
                order.append(t)
            steps.add((names[d], o | c, names[t]))
        i += 1
    for d in order:
        steps.add((names[d], frozenset(), names[d]))
    succ: dict = {names[d]: set() for d in order}
    for q, _, q2 in steps:
        succ[q].add(q2)
    graph = tuple(sorted((q, tuple(sorted(ss))) for q, ss in succ.items()))
    level = {names[d]: 0 for d in order}
    level[DONE] = 1
    return OrdinalAutomaton(
        actions=parts.observable,
        states=frozenset(level),
        step=frozenset(steps),
        limits=frozenset(),
        initial=frozenset({"c0"}),
        final=frozenset({DONE}),
        level=level,
        origin={names[d]: (d,) for d in order},
        lazy_limits=StronglyConnectedLimits(graph),
    )


def _round_states(C: OrdinalAutomaton):
    return sorted(q for q in C.states if q not in C.final)


def check_obs(C: OrdinalAutomaton, parts: ActionPartition) -> bool:
    """Only observable actions occur, and every round state has an idle loop."""
    if not C.actions <= parts.observable:
        return False
    if any(not a <= parts.observable for _, a, _ in C.step):
        return False
    return all((q, frozenset(), q) in C.step for q in _round_states(C))


def check_unc(C: OrdinalAutomaton, parts: ActionPartition) -> bool:
    """Every observed uncontrollable set can happen in every round state."""
    nc = parts.actions - parts.controllable
    for q in _round_states(C):
        seen = {a & nc for a, _ in C.successors[q]}
        for a in powerset(parts.observable - parts.controllable):
            if a not in seen:
                return False
    return True


def verify(C: OrdinalAutomaton, spec: PlantSpec, negspec: OrdinalAutomaton) -> bool:
    """True iff no run of lift_k(C) x A_S x A_notpsi of length w^k is accepting."""
    if C.level is None or level_violations(C, 1):
        raise SpecError("controller must be an automaton of level 1")
    controlled = product(lift(C, spec.level), product(spec.plant, negspec))
    return emptiness_at_length(controlled, spec.level)


def controller_moves(C: OrdinalAutomaton, state: str) -> list:
    """Non-idle step labels leaving ``state``, sorted."""
    return sorted({a for q, a, _ in C.step if q == state and a}, key=letter_key)
