"""Ordinal automata, regular ordinal words, and compositional reachability.

Letters are sets of action names (``frozenset[str]``).  A step transition is a
triple ``(source, letter, target)``; a limit transition is a pair
``(source_set, target)`` fired at limit positions whose cofinal set of states
is exactly ``source_set``.

The central operation is :func:`reach`, which maps a word term to the set of
triples ``(q, P, q2)`` such that some path labelled by the word leads from
``q`` to ``q2`` and visits exactly the states ``P`` at positions strictly
before the end (the start position counts, the end position does not).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Union

from .ordinals import (
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    add,
    nat_scale,
    omega_times,
    subtract,
)

Letter = frozenset  # frozenset[str]
Triple = tuple  # (state, frozenset[state], state)


class AutomatonError(ValueError):
    pass


def letter(*actions: str) -> frozenset:
    return frozenset(actions)


def letter_key(a: frozenset) -> tuple:
    return (len(a), tuple(sorted(a)))


def powerset(actions: Iterable[str]) -> list[frozenset]:
    """All subsets of ``actions`` in a deterministic order."""
    items = sorted(set(actions))
    out = []
    for mask in range(1 << len(items)):
        out.append(frozenset(x for i, x in enumerate(items) if mask >> i & 1))
    return sorted(out, key=letter_key)


@dataclass(frozen=True)
class OrdinalAutomaton:
    actions: frozenset
    states: frozenset
    step: frozenset  # of (q, letter, q2)
    limits: frozenset  # of (frozenset P, q)
    initial: frozenset
    final: frozenset
    level: Mapping[str, int] | None = field(default=None, compare=False, hash=False)
    # provenance of constructed states, e.g. product pairs; informational only
    origin: Mapping[str, tuple] | None = field(default=None, compare=False, hash=False, repr=False)
    # limit transitions given by a rule (see constructions.ProductLimits)
    # instead of by enumeration; combined with ``limits``
    lazy_limits: object = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("actions", "states", "step", "limits", "initial", "final"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))
        states = self.states
        for q, a, q2 in self.step:
            if q not in states or q2 not in states:
                raise AutomatonError(f"step {q!r} -> {q2!r} uses unknown state")
            if not isinstance(a, frozenset):
                raise AutomatonError(f"step label {a!r} is not a frozenset")
            if not a <= self.actions:
                raise AutomatonError(f"step label {sorted(a)} uses unknown actions")
        for src, q in self.limits:
            if not src or not src <= states or q not in states:
                raise AutomatonError(f"bad limit transition {sorted(src)} -> {q!r}")
        if not self.initial <= states:
            raise AutomatonError("initial states must be states")
        if not self.final <= states:
            raise AutomatonError("final states must be states")
        if self.level is not None:
            missing = states - set(self.level)
            if missing:
                raise AutomatonError(f"level map misses states {sorted(missing)}")

    @cached_property
    def successors(self) -> dict:
        """state -> list of (letter, target)."""
        out: dict = {q: [] for q in self.states}
        for q, a, q2 in sorted(self.step, key=_step_key):
            out[q].append((a, q2))
        return out

    @cached_property
    def limit_targets(self) -> dict:
        """source set -> set of targets, for the explicit limit transitions."""
        out: dict = {}
        for src, q in self.limits:
            out.setdefault(src, set()).add(q)
        return out

    def targets_for(self, P: frozenset) -> frozenset:
        """States reachable by a limit transition whose cofinal set is exactly P."""
        out = self.limit_targets.get(P, ())
        if self.lazy_limits is None:
            return frozenset(out)
        extra = self.lazy_limits.targets(P)
        return frozenset(out).union(q for q in extra if q in self.states)

    @cached_property
    def all_limits(self) -> frozenset:
        """Every limit transition, enumerating rule-based ones (may be large)."""
        if self.lazy_limits is None:
            return self.limits
        extra = self.lazy_limits.enumerate()
        return self.limits | frozenset(
            (P, q) for P, q in extra if q in self.states and P <= self.states
        )

    @cached_property
    def letters(self) -> list:
        return sorted({a for _, a, _ in self.step}, key=letter_key)

    def sorted_states(self) -> list:
        return sorted(self.states, key=str)


def _step_key(t):
    q, a, q2 = t
    return (str(q), letter_key(a), str(q2))


# ---------------------------------------------------------------------------
# levels

def level_violations(A: OrdinalAutomaton, k: int) -> list[str]:
    """Human-readable list of violated level clauses; empty when the map is valid."""
    if A.level is None:
        raise AutomatonError("automaton has no level map")
    lv = A.level
    out = []
    for q in sorted(A.states, key=str):
        if not 0 <= lv[q] <= k:
            out.append(f"level: l({q}) = {lv[q]} not in 0..{k}")
    for q in sorted(A.final, key=str):
        if lv[q] != k:
            out.append(f"(i) final state {q} has level {lv[q]}, expected {k}")
    for q, a, q2 in sorted(A.step, key=_step_key):
        if lv[q2] != 0:
            out.append(f"(ii) step {q} -{sorted(a)}-> {q2}: target level {lv[q2]} != 0")
        if not lv[q] < k:
            out.append(f"(ii) step {q} -{sorted(a)}-> {q2}: source level {lv[q]} not < {k}")
    for src, q in sorted(A.all_limits, key=lambda t: (sorted(map(str, t[0])), str(t[1]))):
        lq = lv[q]
        label = f"{sorted(map(str, src))} -> {q}"
        if lq < 1:
            out.append(f"(iii) limit {label}: target level {lq} < 1")
        if any(lv[p] >= lq for p in src):
            out.append(f"(iii) limit {label}: some source level >= target level {lq}")
        if not any(lv[p] == lq - 1 for p in src):
            out.append(f"(iii) limit {label}: no source of level {lq - 1}")
    return out


def validate_level(A: OrdinalAutomaton, k: int) -> bool:
    return not level_violations(A, k)


# ---------------------------------------------------------------------------
# regular ordinal words

@dataclass(frozen=True)
class Sym:
    """A single concrete letter."""

    letter: frozenset

    def __post_init__(self):
        if not isinstance(self.letter, frozenset):
            object.__setattr__(self, "letter", frozenset(self.letter))


@dataclass(frozen=True)
class AnySym:
    """A single position carrying an arbitrary letter."""


@dataclass(frozen=True)
class Concat:
    items: tuple

    def __post_init__(self):
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise AutomatonError("Concat needs at least one item")


@dataclass(frozen=True)
class OmegaPower:
    body: "Word"


Word = Union[Sym, AnySym, Concat, OmegaPower]
ANY = AnySym()


def any_power(i: int) -> Word:
    """The word of i nested omega powers around an arbitrary letter (length w^i)."""
    w: Word = ANY
    for _ in range(i):
        w = OmegaPower(w)
    return w


@lru_cache(maxsize=None)
def length(w: Word) -> Ordinal:
    if isinstance(w, (Sym, AnySym)):
        return ONE
    if isinstance(w, Concat):
        total = ZERO
        for item in w.items:
            total = add(total, length(item))
        return total
    if isinstance(w, OmegaPower):
        return omega_times(length(w.body))
    raise TypeError(f"not a word term: {w!r}")


def depth(w: Word) -> int:
    """Nesting depth of omega powers."""
    if isinstance(w, (Sym, AnySym)):
        return 0
    if isinstance(w, Concat):
        return max(depth(x) for x in w.items)
    return 1 + depth(w.body)


def letter_at(w: Word, pos: Ordinal):
    """The letter at position ``pos``; returns ``ANY`` for wildcard positions."""
    if not pos < length(w):
        raise AutomatonError(f"position {pos} out of range for word of length {length(w)}")
    while True:
        if isinstance(w, Sym):
            return w.letter
        if isinstance(w, AnySym):
            return ANY
        if isinstance(w, Concat):
            for item in w.items:
                n = length(item)
                if pos < n:
                    w = item
                    break
                pos = subtract(n, pos)
            continue
        # OmegaPower: block m covers [L*m, L*(m+1)).
        block = length(w.body)
        e, c = block.terms[0]
        m = pos.coefficient(e) // c + 1
        while m > 0 and nat_scale(block, m) > pos:
            m -= 1
        pos = subtract(nat_scale(block, m), pos)
        w = w.body


# ---------------------------------------------------------------------------
# reachability with exact visit sets

def compose(left: Iterable[Triple], right: Iterable[Triple]) -> frozenset:
    by_src: dict = {}
    for q, P, q2 in right:
        by_src.setdefault(q, []).append((P, q2))
    out = set()
    for q, P, q1 in left:
        for P2, q2 in by_src.get(q1, ()):
            out.add((q, P | P2, q2))
    return frozenset(out)


def closure(base: Iterable[Triple]) -> frozenset:
    """All compositions of one or more triples from ``base``."""
    base = frozenset(base)
    by_src: dict = {}
    for q, P, q2 in base:
        by_src.setdefault(q, []).append((P, q2))
    seen = set(base)
    todo = list(base)
    while todo:
        q, P, q1 = todo.pop()
        for P2, q2 in by_src.get(q1, ()):
            t = (q, P | P2, q2)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return frozenset(seen)


def omega_iterate(A: OrdinalAutomaton, base: Iterable[Triple]) -> frozenset:
    """Triples for the omega power of a word whose reach relation is ``base``.

    A run of ``t^w`` factors (Ramsey) into a prefix of finitely many blocks and
    an idempotent loop repeated forever; the loop's visit set is the cofinal
    set at the limit.  Loops over triples are idempotent under composition.
    """
    C = closure(base)
    loops: dict = {}
    for q, P, q2 in C:
        if q == q2:
            loops.setdefault(q, set()).add(P)
    if not loops:
        return frozenset()
    targets: dict = {}
    ends: dict = {}
    for q1, Ps in loops.items():
        for P2 in Ps:
            if P2 not in targets:
                targets[P2] = A.targets_for(P2)
            for q_lim in targets[P2]:
                ends.setdefault(q1, []).append((P2, q_lim))
    if not ends:
        return frozenset()
    out = set()
    for q1, tails in ends.items():
        for P2, q_lim in tails:
            out.add((q1, P2, q_lim))
    for q, P1, q1 in C:
        for P2, q_lim in ends.get(q1, ()):
            out.add((q, P1 | P2, q_lim))
    return frozenset(out)


class Reacher:
    """Memoizing evaluator of :func:`reach` for one automaton."""

    def __init__(self, A: OrdinalAutomaton):
        self.A = A
        self._memo: dict = {}

    def __call__(self, w: Word) -> frozenset:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        A = self.A
        if isinstance(w, Sym):
            res = frozenset((q, frozenset((q,)), q2) for q, a, q2 in A.step if a == w.letter)
        elif isinstance(w, AnySym):
            res = frozenset((q, frozenset((q,)), q2) for q, _, q2 in A.step)
        elif isinstance(w, Concat):
            res = self(w.items[0])
            for item in w.items[1:]:
                if not res:
                    break
                res = compose(res, self(item))
        elif isinstance(w, OmegaPower):
            res = omega_iterate(A, self(w.body))
        else:
            raise TypeError(f"not a word term: {w!r}")
        self._memo[w] = res
        return res


def reach(A: OrdinalAutomaton, w: Word) -> frozenset:
    return Reacher(A)(w)


def membership(A: OrdinalAutomaton, w: Word) -> bool:
    return any(q in A.initial and q2 in A.final for q, _, q2 in reach(A, w))


def emptiness_at_length(A: OrdinalAutomaton, k: int) -> bool:
    """True when no run of length w^k ends in a final state."""
    if k < 1:
        raise AutomatonError("emptiness is checked at lengths w^k with k >= 1")
    if not A.final or not A.initial:
        return True
    return not membership(A, any_power(k))


def trim(A: OrdinalAutomaton) -> OrdinalAutomaton:
    """Restrict to states reachable from the initial ones (limits need a reachable source set)."""
    seen = set(A.initial)
    changed = True
    while changed:
        changed = False
        for q, _, q2 in A.step:
            if q in seen and q2 not in seen:
                seen.add(q2)
                changed = True
        for src, q in A.all_limits:
            if q not in seen and src <= seen:
                seen.add(q)
                changed = True
    if len(seen) == len(A.states):
        return A
    return restrict(A, seen)


def restrict(A: OrdinalAutomaton, keep) -> OrdinalAutomaton:
    keep = frozenset(keep)
    return OrdinalAutomaton(
        actions=A.actions,
        states=keep,
        step=frozenset(t for t in A.step if t[0] in keep and t[2] in keep),
        limits=frozenset(t for t in A.limits if t[0] <= keep and t[1] in keep),
        initial=A.initial & keep,
        final=A.final & keep,
        level=None if A.level is None else {q: A.level[q] for q in keep},
        origin=None if A.origin is None else {q: A.origin[q] for q in keep if q in A.origin},
        lazy_limits=A.lazy_limits,
    )
