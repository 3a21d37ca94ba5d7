"""Synchronous product and the lift of a level-1 automaton to level k."""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import AutomatonError, OrdinalAutomaton, powerset, validate_level

# Enumerating product limit transitions is exponential in the source sets;
# refuse beyond this many candidate pairs per component transition pair.
MAX_COVER_CANDIDATES = 20


def pair_name(q1: str, q2: str) -> str:
    return f"<{q1},{q2}>"


@dataclass(frozen=True, eq=False)
class ProductLimits:
    """Limit transitions of a product, decided from the components on demand.

    ``P -> (q1, q2)`` holds iff the two projections of ``P`` are sources of
    limit transitions to ``q1`` and ``q2`` in the respective components.
    """

    A1: OrdinalAutomaton
    A2: OrdinalAutomaton
    pairs: tuple  # product state name -> (q1, q2), as sorted items

    def __post_init__(self):
        object.__setattr__(self, "_origin", dict(self.pairs))
        object.__setattr__(self, "_names", {v: k for k, v in self.pairs})

    def __eq__(self, other):
        return (
            isinstance(other, ProductLimits)
            and self.A1 == other.A1
            and self.A2 == other.A2
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash(self.pairs)

    def targets(self, P):
        origin = self._origin
        try:
            comps = [origin[p] for p in P]
        except KeyError:
            return ()
        t1 = self.A1.targets_for(frozenset(c[0] for c in comps))
        if not t1:
            return ()
        t2 = self.A2.targets_for(frozenset(c[1] for c in comps))
        names = self._names
        return [names[(a, b)] for a in t1 for b in t2 if (a, b) in names]

    def enumerate(self):
        names = self._names
        out = []
        for P1, q1 in self.A1.all_limits:
            for P2, q2 in self.A2.all_limits:
                if (q1, q2) not in names:
                    continue
                cand = [p for p in names if p[0] in P1 and p[1] in P2]
                for chosen in _covering_subsets(sorted(cand, key=str), P1, P2):
                    out.append((frozenset(names[p] for p in chosen), names[(q1, q2)]))
        return out


def _covering_subsets(cand, P1, P2):
    """Subsets of candidate pairs whose projections are exactly P1 and P2."""
    n = len(cand)
    if n > MAX_COVER_CANDIDATES:
        raise AutomatonError(f"limit transition source too large to enumerate ({n} pairs)")
    for mask in range(1, 1 << n):
        chosen = [cand[i] for i in range(n) if mask >> i & 1]
        if {p[0] for p in chosen} == P1 and {p[1] for p in chosen} == P2:
            yield chosen


def product(A1: OrdinalAutomaton, A2: OrdinalAutomaton) -> OrdinalAutomaton:
    """Product synchronising on the shared actions, restricted to reachable states.

    Letters come from pairs of component transitions that agree on the shared
    actions, never from the full powerset alphabet.  A limit target is added
    to the reachable part once its component limit sources are both covered
    by reachable pairs.
    """
    shared = A1.actions & A2.actions
    succ1, succ2 = A1.successors, A2.successors
    start = [(q1, q2) for q1 in sorted(A1.initial, key=str) for q2 in sorted(A2.initial, key=str)]
    seen = set(start)
    frontier = list(start)
    steps = set()

    lim1: dict = {}
    for P1, q1 in A1.all_limits:
        lim1.setdefault(P1, set()).add(q1)
    lim2: dict = {}
    for P2, q2 in A2.all_limits:
        lim2.setdefault(P2, set()).add(q2)

    while True:
        while frontier:
            q1, q2 = frontier.pop()
            for a1, t1 in succ1[q1]:
                for a2, t2 in succ2[q2]:
                    if a1 & shared != a2 & shared:
                        continue
                    target = (t1, t2)
                    steps.add(((q1, q2), a1 | a2, target))
                    if target not in seen:
                        seen.add(target)
                        frontier.append(target)
        for P1, T1 in lim1.items():
            for P2, T2 in lim2.items():
                cand = [p for p in seen if p[0] in P1 and p[1] in P2]
                if {p[0] for p in cand} != P1 or {p[1] for p in cand} != P2:
                    continue
                for target in ((t1, t2) for t1 in T1 for t2 in T2):
                    if target not in seen:
                        seen.add(target)
                        frontier.append(target)
        if not frontier:
            break

    names = {p: pair_name(*p) for p in seen}
    level = None
    if A1.level is not None and A2.level is not None:
        level = {names[p]: max(A1.level[p[0]], A2.level[p[1]]) for p in seen}
    pairs = tuple(sorted((names[p], p) for p in seen))
    return OrdinalAutomaton(
        actions=A1.actions | A2.actions,
        states=frozenset(names.values()),
        step=frozenset((names[s], a, names[t]) for s, a, t in steps),
        limits=frozenset(),
        initial=frozenset(names[p] for p in start),
        final=frozenset(names[p] for p in seen if p[0] in A1.final and p[1] in A2.final),
        level=level,
        origin={names[p]: p for p in seen},
        lazy_limits=ProductLimits(A1, A2, pairs),
    )


def lift_name(i: int, q: str) -> str:
    return f"<{i},{q}>"


@dataclass(frozen=True)
class LiftLimits:
    """Top-level limits of a lift: copies of a source set of C, all levels below k."""

    C: OrdinalAutomaton
    k: int

    def targets(self, P):
        base = set()
        levels: dict = {}
        for name in P:
            if not (name.startswith("<") and "," in name):
                return ()
            i, q = name[1:-1].split(",", 1)
            if not i.isdigit() or int(i) >= self.k:
                return ()
            levels.setdefault(q, set()).add(int(i))
            base.add(q)
        if any(len(v) != self.k for v in levels.values()):
            return ()
        return [lift_name(self.k, q) for q in self.C.targets_for(frozenset(base))]

    def enumerate(self):
        out = []
        for P, q in self.C.all_limits:
            src = frozenset(lift_name(j, p) for p in P for j in range(self.k))
            out.append((src, lift_name(self.k, q)))
        return out


def lift(C: OrdinalAutomaton, k: int) -> OrdinalAutomaton:
    """Embed a level-1 automaton so that it only constrains positions w^(k-1) * n."""
    if k < 2:
        raise AutomatonError("lift requires k >= 2")
    if C.level is None or not validate_level(C, 1):
        raise AutomatonError("lift requires an automaton of level 1")
    sigma = powerset(C.actions)
    states = [(i, q) for i in range(k + 1) for q in C.sorted_states()]
    name = {s: lift_name(*s) for s in states}
    steps = set()
    for q, a, q2 in C.step:
        steps.add((name[k - 1, q], a, name[0, q2]))
    for i in range(k - 1):
        for q in C.states:
            if q in C.final:
                continue
            for a in sigma:
                steps.add((name[i, q], a, name[0, q]))
    limits = set()
    for i in range(1, k):
        for q in C.states:
            limits.add((frozenset(name[j, q] for j in range(i)), name[i, q]))
    return OrdinalAutomaton(
        actions=C.actions,
        states=frozenset(name.values()),
        step=frozenset(steps),
        limits=frozenset(limits),
        initial=frozenset(name[k - 1, q] for q in C.initial),
        final=frozenset(name[k, q] for q in C.final),
        level={name[i, q]: i for i, q in states},
        origin={name[s]: s for s in states},
        lazy_limits=LiftLimits(C, k),
    )
