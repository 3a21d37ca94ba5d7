"""Parity games between Cont (even) and Env (odd), solved with Zielonka's recursion.

A play is won by Cont iff the largest priority seen infinitely often is even.
A player who owns a vertex without successors loses when the play gets there.
Vertices are integers; ``labels`` carries readable names for dumps.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import product as cartesian

from .automaton import letter_key, powerset
from .winning import ActionPartition, ParityAutomaton

EVEN, ODD = 0, 1  # Cont, Env


@dataclass(eq=False)
class ParityGame:
    owner: list  # vertex -> EVEN or ODD
    priority: list
    succ: list  # vertex -> tuple of successors
    initial: int = 0
    labels: list = field(default_factory=list)
    # for Cont vertices of a synthesis game: (vertex, successor) -> controllable sets
    moves: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.owner)
        if len(self.priority) != n or len(self.succ) != n:
            raise ValueError("owner, priority and succ must have the same length")
        self.succ = [tuple(sorted(set(s))) for s in self.succ]
        for v, ss in enumerate(self.succ):
            for w in ss:
                if not 0 <= w < n:
                    raise ValueError(f"edge {v} -> {w} leaves the game")
        if not self.labels:
            self.labels = [str(v) for v in range(n)]

    @property
    def n(self) -> int:
        return len(self.owner)


@dataclass
class Solution:
    win_even: frozenset
    win_odd: frozenset
    strategy_even: dict  # vertex -> successor, on Even vertices of win_even
    strategy_odd: dict

    def winner(self, v: int) -> int:
        return EVEN if v in self.win_even else ODD


# ---------------------------------------------------------------------------
# Zielonka

def _attractor(player, target, V, owner, succ, pred):
    """Vertices of V from which ``player`` forces a visit to target, with a strategy.

    The strategy of a vertex added in round r points to the least successor
    already attracted before round r, so following it decreases the rank.
    """
    attr = set(target)
    strat = {}
    frontier = sorted(target)
    while frontier:
        added = []
        cand = set()
        for w in frontier:
            for v in pred[w]:
                if v in V and v not in attr:
                    cand.add(v)
        for v in sorted(cand):
            inside = [w for w in succ[v] if w in V]
            if owner[v] == player:
                good = [w for w in inside if w in attr]
                if good:
                    strat[v] = min(good)
                    added.append(v)
            elif all(w in attr for w in inside):
                added.append(v)
        attr.update(added)
        frontier = added
    return attr, strat


def _zielonka(V, owner, priority, succ, pred):
    if not V:
        return set(), set(), {}, {}
    p = max(priority[v] for v in V)
    i = p % 2
    U = {v for v in V if priority[v] == p}
    A, attr_strat = _attractor(i, U, V, owner, succ, pred)
    W0, W1, s0, s1 = _zielonka(V - A, owner, priority, succ, pred)
    W = [W0, W1]
    S = [s0, s1]
    if not W[1 - i]:
        strat = dict(S[i])
        strat.update(attr_strat)
        for v in sorted(U):
            if owner[v] == i:
                strat[v] = min(w for w in succ[v] if w in V)
        res_w = [set(), set()]
        res_w[i] = set(V)
        res_s = [{}, {}]
        res_s[i] = strat
        return res_w[0], res_w[1], res_s[0], res_s[1]
    B, b_strat = _attractor(1 - i, W[1 - i], V, owner, succ, pred)
    X0, X1, t0, t1 = _zielonka(V - B, owner, priority, succ, pred)
    X = [X0, X1]
    T = [t0, t1]
    opp = dict(T[1 - i])
    opp.update(S[1 - i])
    opp.update(b_strat)
    res_w = [set(), set()]
    res_w[1 - i] = X[1 - i] | B
    res_w[i] = X[i]
    res_s = [{}, {}]
    res_s[1 - i] = opp
    res_s[i] = dict(T[i])
    return res_w[0], res_w[1], res_s[0], res_s[1]


def solve(G: ParityGame) -> Solution:
    """Winning regions and positional winning strategies for both players.

    Dead ends are redirected to two fresh sinks (one winning for each player)
    so the recursion only sees total games.  Recursion depth is at most the
    number of vertices.
    """
    n = G.n
    sink_even, sink_odd = n, n + 1
    owner = list(G.owner) + [EVEN, ODD]
    priority = list(G.priority) + [0, 1]
    succ = [list(s) for s in G.succ] + [[sink_even], [sink_odd]]
    for v in range(n):
        if not succ[v]:
            succ[v] = [sink_odd if owner[v] == EVEN else sink_even]
    pred = [[] for _ in range(n + 2)]
    for v, ss in enumerate(succ):
        for w in ss:
            pred[w].append(v)
    limit = sys.getrecursionlimit()
    if limit < 4 * n + 100:
        sys.setrecursionlimit(4 * n + 100)
    try:
        W0, W1, s0, s1 = _zielonka(set(range(n + 2)), owner, priority, succ, pred)
    finally:
        sys.setrecursionlimit(limit)
    real = set(range(n))
    win_even = frozenset(W0 & real)
    win_odd = frozenset(W1 & real)
    se = {v: w for v, w in s0.items() if v in win_even and owner[v] == EVEN and w < n}
    so = {v: w for v, w in s1.items() if v in win_odd and owner[v] == ODD and w < n}
    return Solution(win_even, win_odd, se, so)


# ---------------------------------------------------------------------------
# brute force

def _play_winner(start, owner, priority, succ, sigma_even, sigma_odd) -> int:
    """Winner of the unique play from ``start`` under two positional strategies."""
    seen = {}
    path = []
    v = start
    while v not in seen:
        if not succ[v]:
            return 1 - owner[v]
        seen[v] = len(path)
        path.append(v)
        v = sigma_even[v] if owner[v] == EVEN else sigma_odd[v]
    return max(priority[w] for w in path[seen[v]:]) % 2


def _strategies(G: ParityGame, player: int):
    vs = [v for v in range(G.n) if G.owner[v] == player and G.succ[v]]
    for choice in cartesian(*(G.succ[v] for v in vs)):
        yield dict(zip(vs, choice))


def brute_force_winners(G: ParityGame) -> frozenset:
    """Even's winning region by enumerating all pairs of positional strategies."""
    odd_strats = list(_strategies(G, ODD))
    out = set()
    for v in range(G.n):
        for se in _strategies(G, EVEN):
            if all(_play_winner(v, G.owner, G.priority, G.succ, se, so) == EVEN for so in odd_strats):
                out.add(v)
                break
    return frozenset(out)


def odd_can_beat(G: ParityGame, sigma_even: dict, start: int) -> bool:
    """Whether Odd wins from ``start`` once Even is fixed to ``sigma_even``.

    Odd wins iff it can reach an Even dead end, or a cycle of the restricted
    graph whose largest priority is odd.
    """
    def nxt(v):
        if G.owner[v] == EVEN:
            return (sigma_even[v],) if G.succ[v] else ()
        return G.succ[v]

    reach = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in nxt(v):
            if w not in reach:
                reach.add(w)
                todo.append(w)
    if any(G.owner[v] == EVEN and not G.succ[v] for v in reach):
        return True
    # odd cycle with max priority p: a cycle through some vertex of priority p
    # inside the subgraph of vertices with priority <= p
    for p in sorted({G.priority[v] for v in reach if G.priority[v] % 2 == 1}):
        sub = {v for v in reach if G.priority[v] <= p and (G.owner[v] == EVEN or G.succ[v])}
        for top in (v for v in sub if G.priority[v] == p):
            stack = [w for w in nxt(top) if w in sub]
            seen = set()
            while stack:
                w = stack.pop()
                if w == top:
                    return True
                if w in seen:
                    continue
                seen.add(w)
                stack.extend(x for x in nxt(w) if x in sub)
    return False


def brute_force_even_wins(G: ParityGame, start: int) -> bool:
    """Enumerate Even's positional strategies; check each by cycle analysis."""
    return any(not odd_can_beat(G, se, start) for se in _strategies(G, EVEN))


# ---------------------------------------------------------------------------
# synthesis game

def build_game(D: ParityAutomaton, parts: ActionPartition) -> ParityGame:
    """Env picks the observed uncontrollable set o, then Cont picks c.

    Env vertices are the states of D (priority + 2); Cont vertices are pairs
    (d, o) with priority 0 and move to the successor of d on ``o | c``.  When
    o is empty Cont must issue a non-empty c: an empty round is silent and
    the controller's idle loop admits it anyway.  Instead Env may go silent
    for good: Env vertex d then enters a chain of silent vertices that follows
    D on the empty letter.

    Layout: Env vertices 0..n-1, Cont vertices n + d*m + j (j indexes the
    subsets of the Env-observable actions), silent vertices n*(m+1) + d.
    """
    obs_env = powerset(parts.env_observable)
    ctrl = powerset(parts.controllable)
    nD = D.n_states
    m = len(obs_env)
    base = nD * (m + 1)
    empty = frozenset()
    owner = [ODD] * nD + [EVEN] * (nD * m) + [ODD] * nD
    priority = [D.priority[d] + 2 for d in range(nD)] + [0] * (nD * m)
    priority += [D.priority[d] + 2 for d in range(nD)]
    succ: list = [() for _ in range(base + nD)]
    labels = [f"e{d}" for d in range(nD)] + [""] * (nD * m) + [f"s{d}" for d in range(nD)]
    moves: dict = {}
    for d in range(nD):
        silent = base + D.delta[(d, empty)]
        succ[base + d] = (silent,)
        env_succ = [silent]
        for j, o in enumerate(obs_env):
            v = nD + d * m + j
            labels[v] = f"c{d}/{{{','.join(sorted(o))}}}"
            targets = set()
            for c in ctrl:
                if not (o | c):
                    continue
                t = D.delta[(d, o | c)]
                targets.add(t)
                moves.setdefault((v, t), []).append(c)
            succ[v] = tuple(sorted(targets))
            if targets:
                env_succ.append(v)
        succ[d] = tuple(env_succ)
    for key in moves:
        moves[key].sort(key=letter_key)
    return ParityGame(owner=owner, priority=priority, succ=succ, initial=D.initial, labels=labels, moves=moves)


def cont_vertex(D: ParityAutomaton, parts: ActionPartition, d: int, o: frozenset) -> int:
    obs_env = powerset(parts.env_observable)
    return D.n_states + d * len(obs_env) + obs_env.index(o)


def silent_vertex(D: ParityAutomaton, parts: ActionPartition, d: int) -> int:
    return D.n_states * (len(powerset(parts.env_observable)) + 1) + d


def dump_game(G: ParityGame, sol: Solution | None = None) -> dict:
    out = {
        "initial": G.initial,
        "vertices": [
            {
                "id": v,
                "label": G.labels[v],
                "owner": "Cont" if G.owner[v] == EVEN else "Env",
                "priority": G.priority[v],
                "successors": list(G.succ[v]),
            }
            for v in range(G.n)
        ],
    }
    if sol is not None:
        out["win_cont"] = sorted(sol.win_even)
        out["win_env"] = sorted(sol.win_odd)
        out["strategy_cont"] = {str(v): w for v, w in sorted(sol.strategy_even.items())}
        out["strategy_env"] = {str(v): w for v, w in sorted(sol.strategy_odd.items())}
    return out
