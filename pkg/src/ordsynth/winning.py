"""Automata over rounds of the game that accept the plays Env wins.

Stages::

    build_awin       nondeterministic Muller automaton over pairs (q, P)
    muller_to_buchi  guess the cofinal set, check it with a round-robin pointer
    safra            deterministic Rabin automaton (classical Safra trees)
    iar              deterministic parity automaton (index appearance record)

A round letter is a subset of the observable actions.  Every stage exposes
``accepts_lasso(u, v)`` deciding acceptance of the ultimately periodic word
``u v v v ...``; these deciders are written directly from each acceptance
condition so the stages can be cross-checked against each other.

Parity convention: a run is accepted (Env wins) iff the largest priority seen
infinitely often is odd.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .automaton import OrdinalAutomaton, letter_key, powerset
from .summary import SummaryRelation


# Fixed factor c of the size check |B_Win| <= c * |Q|^2 * 2^|Q| run on every
# test instance (Q: states of the plant product).
BUCHI_SIZE_FACTOR = 2


class PartitionError(ValueError):
    """The action sets violate Act_c <= Act_o <= Act."""


@dataclass(frozen=True)
class ActionPartition:
    actions: frozenset
    observable: frozenset
    controllable: frozenset

    def __post_init__(self):
        for name in ("actions", "observable", "controllable"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not self.controllable <= self.observable:
            raise PartitionError(
                f"controllable actions {sorted(self.controllable - self.observable)} are not observable"
            )
        if not self.observable <= self.actions:
            raise PartitionError(
                f"observable actions {sorted(self.observable - self.actions)} are not actions"
            )

    @property
    def unobservable(self) -> frozenset:
        return self.actions - self.observable

    @property
    def env_observable(self) -> frozenset:
        """Observable actions Env chooses (observable and not controllable)."""
        return self.observable - self.controllable

    def round_letters(self) -> list:
        return powerset(self.observable)


# ---------------------------------------------------------------------------
# graph helpers shared by the lasso deciders

def _sccs(nodes, succ: Callable) -> list:
    """Tarjan's algorithm, iterative; returns a list of node lists."""
    index: dict = {}
    low: dict = {}
    on_stack = set()
    stack: list = []
    out = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _nontrivial(comp, succ) -> bool:
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in succ(v)


def _reachable(starts, succ) -> set:
    seen = set(starts)
    todo = list(starts)
    while todo:
        v = todo.pop()
        for w in succ(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _lasso_graph(initial, step: Callable, u: Sequence, v: Sequence):
    """Nodes (state, i) of the run graph on u v^w; positions >= len(u) cycle through v."""
    if not v:
        raise ValueError("the periodic part of a lasso word must be non-empty")
    word = list(u) + list(v)
    n_u, n = len(u), len(u) + len(v)

    def nxt(i):
        return i + 1 if i + 1 < n else n_u

    def succ(node):
        s, i = node
        return [(t, nxt(i)) for t in step(s, word[i])]

    nodes = _reachable([(s, 0) for s in initial], succ)
    return nodes, succ, n_u


# ---------------------------------------------------------------------------
# A_Win

def pair_label(pair) -> str:
    q, P = pair
    return f"{q}|{{{','.join(sorted(map(str, P)))}}}"


def cover(pair) -> frozenset:
    """Plant states occupied during the block that ends in this pair."""
    q, P = pair
    return P | {q}


@dataclass(eq=False)
class WinAutomaton:
    """Nondeterministic Muller automaton; states are pairs (plant state, visit set)."""

    plant: OrdinalAutomaton
    parts: ActionPartition
    alphabet: list
    states: list
    initial: frozenset
    delta: dict  # (plant state, letter) -> tuple of pairs; depends on q only

    def successors(self, pair, a) -> tuple:
        return self.delta.get((pair[0], a), ())

    def cof(self, pairs) -> frozenset:
        out = set()
        for p in pairs:
            out |= cover(p)
        return frozenset(out)

    def accepting_cof(self, C: frozenset) -> bool:
        return bool(self.plant.targets_for(C) & self.plant.final)

    def candidate_cofinals(self) -> list:
        """Sets C with a limit transition C -> final, using only states seen in pairs."""
        seen = set()
        for p in self.states:
            seen |= cover(p)
        out = {
            P
            for P, q in self.plant.all_limits
            if q in self.plant.final and P <= seen
        }
        return sorted(out, key=lambda P: (len(P), sorted(map(str, P))))

    def accepts_lasso(self, u: Sequence, v: Sequence) -> bool:
        """Emerson-Lei check of the Muller condition on the run graph of u v^w.

        For each candidate cofinal set C, a run whose recurring pairs cover
        exactly C exists iff the graph restricted to pairs inside C has a
        reachable non-trivial strongly connected component covering C.
        """
        nodes, succ, n_u = _lasso_graph(self.initial, self.successors, u, v)
        for C in self.candidate_cofinals():
            inside = [x for x in nodes if x[1] >= n_u and cover(x[0]) <= C]
            keep = set(inside)

            def rsucc(x, keep=keep):
                return [y for y in succ(x) if y in keep]

            for comp in _sccs(sorted(inside, key=repr), rsucc):
                if _nontrivial(comp, rsucc) and self.cof(x[0] for x in comp) == C:
                    return True
        return False

    def size(self) -> int:
        return len(self.states)


def build_awin(
    A: OrdinalAutomaton, parts: ActionPartition, R: SummaryRelation, fold_silent: bool = True
) -> WinAutomaton:
    """Fuse one controlled step with the following summarized block.

    ``(q, .) --a--> (q1, P)`` iff ``q --(a | u)--> q2`` for some unobservable
    ``u`` and ``(q2, P, q1)`` is in the summary relation.

    A round whose observable part is empty is silent: the controller cannot
    see it and its idle loop cannot refuse it.  With ``fold_silent`` every
    non-empty letter first absorbs any number of silent rounds (their visited
    states are added to P), so the controller's view advances only on what it
    observes.  The empty letter keeps its one-round meaning; the game reads it
    only as an endless silent suffix.
    """
    if not A.actions <= parts.actions:
        raise PartitionError(f"plant uses actions {sorted(A.actions - parts.actions)} outside the partition")
    alphabet = parts.round_letters()
    jumps: dict = {}
    for q2, P, q1 in R.triples:
        jumps.setdefault(q2, []).append((q1, P))
    obs = parts.observable
    empty = frozenset()
    raw_cache: dict = {}

    def raw(q) -> dict:
        hit = raw_cache.get(q)
        if hit is None:
            hit = {}
            # a step letter splits uniquely into its observable part and u
            for a, q2 in A.successors[q]:
                for q1, P in jumps.get(q2, ()):
                    hit.setdefault(a & obs, set()).add((q1, P))
            raw_cache[q] = hit
        return hit

    def silent_prefixes(q) -> set:
        """(q', X): q reaches q' by silent rounds whose pairs cover X."""
        seen = {(q, empty)}
        todo = [(q, empty)]
        while todo:
            qc, X = todo.pop()
            for pair in raw(qc).get(empty, ()):
                nxt = (pair[0], X | cover(pair))
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    start = [(q, frozenset((q,))) for q in sorted(A.initial, key=str)]
    delta: dict = {}
    seen_q = set()
    todo = [q for q, _ in start]
    states = set(start)
    while todo:
        q = todo.pop()
        if q in seen_q:
            continue
        seen_q.add(q)
        by_letter: dict = {a: set(ps) for a, ps in raw(q).items()}
        if fold_silent:
            for qc, X in silent_prefixes(q):
                if not X:
                    continue
                for a, ps in raw(qc).items():
                    if a:
                        by_letter.setdefault(a, set()).update((q1, P | X) for q1, P in ps)
        for a, succs in by_letter.items():
            delta[(q, a)] = tuple(sorted(succs, key=pair_label))
            for pair in succs:
                states.add(pair)
                if pair[0] not in seen_q:
                    todo.append(pair[0])
    return WinAutomaton(
        plant=A,
        parts=parts,
        alphabet=alphabet,
        states=sorted(states, key=pair_label),
        initial=frozenset(start),
        delta=delta,
    )


# ---------------------------------------------------------------------------
# Buchi

@dataclass(eq=False)
class BuchiAutomaton:
    alphabet: list
    states: list
    initial: frozenset
    delta: dict  # (state, letter) -> tuple of states
    accepting: frozenset
    names: dict = field(default_factory=dict)  # state -> display label

    def successors(self, s, a) -> tuple:
        return self.delta.get((s, a), ())

    def accepts_lasso(self, u: Sequence, v: Sequence) -> bool:
        nodes, succ, n_u = _lasso_graph(self.initial, self.successors, u, v)
        cyc = sorted((x for x in nodes if x[1] >= n_u), key=repr)
        keep = set(cyc)

        def rsucc(x):
            return [y for y in succ(x) if y in keep]

        for comp in _sccs(cyc, rsucc):
            if _nontrivial(comp, rsucc) and any(x[0] in self.accepting for x in comp):
                return True
        return False

    def size(self) -> int:
        return len(self.states)


def muller_to_buchi(W: WinAutomaton, trim_result: bool = True) -> BuchiAutomaton:
    """Phase 1 simulates W; at any transition it may commit to a cofinal set C.

    Phase-2 states ``(pair, C, j)`` only allow pairs covered by C; the pointer
    j walks through the sorted elements of C and the state is accepting when
    it has passed all of them.
    """
    cands = [tuple(sorted(C, key=str)) for C in W.candidate_cofinals()]
    init = [("1", p) for p in sorted(W.initial, key=pair_label)]
    delta: dict = {}
    seen = set(init)
    todo = list(init)

    def advance(Cs, j, pair):
        m = len(Cs)
        j = 0 if j == m else j
        cv = cover(pair)
        while j < m and Cs[j] in cv:
            j += 1
        return j

    while todo:
        s = todo.pop()
        for a in W.alphabet:
            out = []
            if s[0] == "1":
                pair = s[1]
                for t in W.successors(pair, a):
                    out.append(("1", t))
                    cv = cover(t)
                    for Cs in cands:
                        if cv <= frozenset(Cs):
                            out.append(("2", t, Cs, advance(Cs, 0, t)))
            else:
                _, pair, Cs, j = s
                C = frozenset(Cs)
                for t in W.successors(pair, a):
                    if cover(t) <= C:
                        out.append(("2", t, Cs, advance(Cs, j, t)))
            if out:
                delta[(s, a)] = tuple(out)
                for t in out:
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
    accepting = frozenset(s for s in seen if s[0] == "2" and s[3] == len(s[2]))
    B = BuchiAutomaton(
        alphabet=list(W.alphabet),
        states=sorted(seen, key=_buchi_key),
        initial=frozenset(init),
        delta=delta,
        accepting=accepting,
    )
    B.names = {s: buchi_label(s) for s in B.states}
    return trim_buchi(B) if trim_result else B


def _buchi_key(s):
    return buchi_label(s)


def buchi_label(s) -> str:
    if s[0] == "1":
        return pair_label(s[1])
    _, pair, Cs, j = s
    return f"{pair_label(pair)}/{{{','.join(map(str, Cs))}}}#{j}"


def trim_buchi(B: BuchiAutomaton) -> BuchiAutomaton:
    """Drop states from which no accepting cycle is reachable (language preserving)."""
    def succ(s):
        out = []
        for a in B.alphabet:
            out.extend(B.delta.get((s, a), ()))
        return out

    good = set()
    for comp in _sccs(B.states, succ):
        if _nontrivial(comp, succ) and any(s in B.accepting for s in comp):
            good.update(comp)
    # backward closure
    pred: dict = {}
    for (s, _), ts in B.delta.items():
        for t in ts:
            pred.setdefault(t, set()).add(s)
    todo = list(good)
    while todo:
        t = todo.pop()
        for s in pred.get(t, ()):
            if s not in good:
                good.add(s)
                todo.append(s)
    delta = {}
    for (s, a), ts in B.delta.items():
        if s in good:
            kept = tuple(t for t in ts if t in good)
            if kept:
                delta[(s, a)] = kept
    states = [s for s in B.states if s in good]
    return BuchiAutomaton(
        alphabet=B.alphabet,
        states=states,
        initial=B.initial & good,
        delta=delta,
        accepting=B.accepting & good,
        names={s: B.names.get(s, str(s)) for s in states},
    )


# ---------------------------------------------------------------------------
# Safra

@dataclass(eq=False)
class RabinAutomaton:
    """Deterministic and complete; states are 0..n-1, state 0 is initial."""

    alphabet: list
    n_states: int
    delta: dict  # (state, letter) -> state
    pairs: list  # of (E_j, F_j) frozensets; accept iff some E_j finite and F_j infinite
    names: list  # state -> display label

    initial: int = 0

    def accepts_lasso(self, u: Sequence, v: Sequence) -> bool:
        inf = _deterministic_cycle(self.initial, self.delta, u, v)
        return any(not (inf & E) and inf & F for E, F in self.pairs)

    def size(self) -> int:
        return self.n_states


def _deterministic_cycle(initial, delta, u, v) -> frozenset:
    """States visited infinitely often by the unique run on u v^w."""
    if not v:
        raise ValueError("the periodic part of a lasso word must be non-empty")
    s = initial
    for a in u:
        s = delta[(s, a)]
    seen: dict = {}
    trace = []
    while s not in seen:
        seen[s] = len(trace)
        trace.append(s)
        for a in v:
            s = delta[(s, a)]
    # states at block boundaries repeat from seen[s]; collect all states in between
    inf = set()
    t = trace[seen[s]]
    for _ in range(len(trace) - seen[s]):
        for a in v:
            inf.add(t)
            t = delta[(t, a)]
    return frozenset(inf)


# A Safra tree node: (name, label, marked, children); label is a frozenset of
# Buchi state indices and children are ordered oldest first.

def _safra_step(tree, a, delta_idx, final_idx, n_names):
    if tree is None:
        return None
    used = set()

    def names_of(node):
        used.add(node[0])
        for c in node[3]:
            names_of(c)

    names_of(tree)
    free = (x for x in range(1, n_names + 1) if x not in used)

    # 1-2: unmark, spawn children holding the accepting states
    def spawn(node):
        name, label, _, children = node
        children = [spawn(c) for c in children]
        acc = label & final_idx
        if acc:
            children.append([next(free), acc, False, []])
        return [name, label, False, children]

    t = spawn(tree)

    # 3: powerset transition on every label
    def move(node):
        out = set()
        for s in node[1]:
            out.update(delta_idx.get((s, a), ()))
        node[1] = frozenset(out)
        for c in node[3]:
            move(c)

    move(t)

    # 4: a state stays only in the oldest sibling that holds it
    def restrict(node, allowed):
        node[1] = node[1] & allowed
        for c in node[3]:
            restrict(c, node[1])

    def horizontal(node):
        taken = set()
        for c in node[3]:
            restrict(c, c[1] - taken)
            taken |= c[1]
            horizontal(c)

    horizontal(t)

    # 5: drop empty nodes
    def prune(node):
        node[3] = [prune(c) for c in node[3] if c[1]]
        return node

    if not t[1]:
        return None
    prune(t)

    # 6: collapse nodes whose children cover their label, and mark them
    def vertical(node):
        if node[3]:
            union = frozenset().union(*(c[1] for c in node[3]))
            if union == node[1]:
                node[3] = []
                node[2] = True
                return
        for c in node[3]:
            vertical(c)

    vertical(t)

    def freeze(node):
        return (node[0], node[1], node[2], tuple(freeze(c) for c in node[3]))

    return freeze(t)


def _tree_nodes(tree):
    if tree is None:
        return
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node[3])


def safra_label(tree, names: Sequence) -> str:
    if tree is None:
        return "()"
    name, label, marked, children = tree
    inner = ",".join(sorted(str(names[i]) for i in label))
    mark = "!" if marked else ""
    kids = "".join(safra_label(c, names) for c in children)
    return f"({name}{mark}:{{{inner}}}{kids})"


def safra(B: BuchiAutomaton, max_states: int = 200_000) -> RabinAutomaton:
    index = {s: i for i, s in enumerate(B.states)}
    labels = [B.names.get(s, str(s)) for s in B.states]
    delta_idx = {
        (index[s], a): tuple(index[t] for t in ts)
        for (s, a), ts in B.delta.items()
        if s in index
    }
    final_idx = frozenset(index[s] for s in B.accepting if s in index)
    n_names = max(1, 2 * len(B.states))
    init_label = frozenset(index[s] for s in B.initial if s in index)
    t0 = (1, init_label, False, ()) if init_label else None

    ids = {t0: 0}
    order = [t0]
    delta = {}
    i = 0
    while i < len(order):
        t = order[i]
        for a in B.alphabet:
            t2 = _safra_step(t, a, delta_idx, final_idx, n_names)
            j = ids.get(t2)
            if j is None:
                j = ids[t2] = len(order)
                order.append(t2)
                if len(order) > max_states:
                    raise RuntimeError(f"Safra construction exceeded {max_states} states")
            delta[(i, a)] = j
        i += 1

    present: dict = {}
    marked: dict = {}
    for sid, t in enumerate(order):
        for node in _tree_nodes(t):
            present.setdefault(node[0], set()).add(sid)
            if node[2]:
                marked.setdefault(node[0], set()).add(sid)
    everything = frozenset(range(len(order)))
    pairs = []
    for name in sorted(marked):
        E = everything - frozenset(present[name])
        pairs.append((E, frozenset(marked[name])))
    return RabinAutomaton(
        alphabet=list(B.alphabet),
        n_states=len(order),
        delta=delta,
        pairs=pairs,
        names=[safra_label(t, labels) for t in order],
    )


# ---------------------------------------------------------------------------
# Index appearance record

@dataclass(eq=False)
class ParityAutomaton:
    """Deterministic, complete; odd maximal recurring priority means accept."""

    alphabet: list
    n_states: int
    delta: dict  # (state, letter) -> state
    priority: list
    names: list
    initial: int = 0

    def accepts_lasso(self, u: Sequence, v: Sequence) -> bool:
        inf = _deterministic_cycle(self.initial, self.delta, u, v)
        return max(self.priority[s] for s in inf) % 2 == 1

    def size(self) -> int:
        return self.n_states

    def is_complete(self) -> bool:
        return all(
            (s, a) in self.delta and 0 <= self.delta[(s, a)] < self.n_states
            for s in range(self.n_states)
            for a in self.alphabet
        )


def _iar_entry(perm: tuple, r: int, in_E: list, in_F: list):
    """Move the indices whose E-set contains r to the front; return (perm, priority).

    An E-hit of the index at position p scores 2p + 2 and an F-hit scores
    2p + 1, positions taken before the move; the priority is the largest score
    (0 when nothing is hit).
    """
    best = 0
    moved = []
    for pos, j in enumerate(perm):
        if r in in_E[j]:
            best = max(best, 2 * pos + 2)
            moved.append(j)
        elif r in in_F[j]:
            best = max(best, 2 * pos + 1)
    if moved:
        perm = tuple(moved) + tuple(j for j in perm if j not in moved)
    return perm, best


def iar(Rb: RabinAutomaton, max_states: int = 500_000) -> ParityAutomaton:
    m = len(Rb.pairs)
    in_E = [E for E, _ in Rb.pairs]
    in_F = [F for _, F in Rb.pairs]
    perm0, p0 = _iar_entry(tuple(range(m)), Rb.initial, in_E, in_F)
    start = (Rb.initial, perm0, p0)
    ids = {start: 0}
    order = [start]
    delta = {}
    i = 0
    while i < len(order):
        r, perm, _ = order[i]
        for a in Rb.alphabet:
            r2 = Rb.delta[(r, a)]
            perm2, p2 = _iar_entry(perm, r2, in_E, in_F)
            key = (r2, perm2, p2)
            j = ids.get(key)
            if j is None:
                j = ids[key] = len(order)
                order.append(key)
                if len(order) > max_states:
                    raise RuntimeError(f"appearance record exceeded {max_states} states")
            delta[(i, a)] = j
        i += 1
    return ParityAutomaton(
        alphabet=list(Rb.alphabet),
        n_states=len(order),
        delta=delta,
        priority=[p for _, _, p in order],
        names=[f"{r}[{' '.join(map(str, perm))}]" for r, perm, _ in order],
    )


# ---------------------------------------------------------------------------
# pipeline and dumps

@dataclass
class WinPipeline:
    awin: WinAutomaton
    buchi: BuchiAutomaton
    rabin: RabinAutomaton
    parity: ParityAutomaton

    def sizes(self) -> dict:
        return {
            "awin": self.awin.size(),
            "buchi": self.buchi.size(),
            "rabin": self.rabin.size(),
            "rabin_pairs": len(self.rabin.pairs),
            "parity": self.parity.size(),
        }


def run_pipeline(A: OrdinalAutomaton, parts: ActionPartition, R: SummaryRelation) -> WinPipeline:
    W = build_awin(A, parts, R)
    B = muller_to_buchi(W)
    Rb = safra(B)
    D = iar(Rb)
    return WinPipeline(W, B, Rb, D)


def _letter_str(a) -> list:
    return sorted(a)


def dump_awin(W: WinAutomaton) -> dict:
    return {
        "stage": "awin",
        "alphabet": [_letter_str(a) for a in W.alphabet],
        "states": [pair_label(p) for p in W.states],
        "initial": sorted(pair_label(p) for p in W.initial),
        "transitions": [
            {"from": pair_label(p), "letter": _letter_str(a), "to": pair_label(t)}
            for p in W.states
            for a in W.alphabet
            for t in W.successors(p, a)
        ],
        "accepting_cofinal_sets": [sorted(map(str, C)) for C in W.candidate_cofinals()],
    }


def dump_buchi(B: BuchiAutomaton) -> dict:
    name = B.names.get
    return {
        "stage": "buchi",
        "alphabet": [_letter_str(a) for a in B.alphabet],
        "states": [name(s, str(s)) for s in B.states],
        "initial": sorted(name(s, str(s)) for s in B.initial),
        "accepting": sorted(name(s, str(s)) for s in B.accepting),
        "transitions": [
            {"from": name(s, str(s)), "letter": _letter_str(a), "to": name(t, str(t))}
            for s in B.states
            for a in B.alphabet
            for t in B.delta.get((s, a), ())
        ],
    }


def dump_rabin(Rb: RabinAutomaton) -> dict:
    return {
        "stage": "rabin",
        "alphabet": [_letter_str(a) for a in Rb.alphabet],
        "states": [{"id": i, "tree": Rb.names[i]} for i in range(Rb.n_states)],
        "initial": Rb.initial,
        "transitions": [
            {"from": i, "letter": _letter_str(a), "to": Rb.delta[(i, a)]}
            for i in range(Rb.n_states)
            for a in Rb.alphabet
        ],
        "pairs": [{"avoid": sorted(E), "meet": sorted(F)} for E, F in Rb.pairs],
    }


def dump_parity(D: ParityAutomaton) -> dict:
    return {
        "stage": "parity",
        "alphabet": [_letter_str(a) for a in D.alphabet],
        "states": [
            {"id": i, "record": D.names[i], "priority": D.priority[i]} for i in range(D.n_states)
        ],
        "initial": D.initial,
        "transitions": [
            {"from": i, "letter": _letter_str(a), "to": D.delta[(i, a)]}
            for i in range(D.n_states)
            for a in D.alphabet
        ],
        "acceptance": "max priority seen infinitely often is odd",
    }


def parity_to_hoa(D: ParityAutomaton) -> str:
    """Plain-text listing in the spirit of the HOA format (explicit letters)."""
    lines = [
        "HOA: v1",
        f"States: {D.n_states}",
        f"Start: {D.initial}",
        "Acceptance: max-odd",
        "AP-letters: " + " ".join("{" + ",".join(sorted(a)) + "}" for a in D.alphabet),
        "--BODY--",
    ]
    for i in range(D.n_states):
        lines.append(f"State: {i} {{{D.priority[i]}}}")
        for a in D.alphabet:
            lines.append(f"  [{','.join(sorted(a))}] {D.delta[(i, a)]}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


def sorted_letters(letters) -> list:
    return sorted(letters, key=letter_key)


# ---------------------------------------------------------------------------
# sampled cross-check of the stages

def sample_lasso(alphabet: Sequence, rng, max_u: int = 6, max_v: int = 6) -> tuple:
    """A random ultimately periodic word u v^w with |u| <= max_u, 1 <= |v| <= max_v."""
    u = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_u)))
    v = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_v)))
    return u, v


def stage_verdicts(pipe: WinPipeline, u: Sequence, v: Sequence) -> dict:
    return {
        "awin": pipe.awin.accepts_lasso(u, v),
        "buchi": pipe.buchi.accepts_lasso(u, v),
        "rabin": pipe.rabin.accepts_lasso(u, v),
        "parity": pipe.parity.accepts_lasso(u, v),
    }


def cross_check(pipe: WinPipeline, rng, samples: int, max_len: int = 6) -> list:
    """Sampled words on which the four stages disagree, as (u, v, verdicts)."""
    alphabet = sorted_letters(pipe.awin.alphabet)
    bad = []
    for _ in range(samples):
        u, v = sample_lasso(alphabet, rng, max_len, max_len)
        verdicts = stage_verdicts(pipe, u, v)
        if len(set(verdicts.values())) > 1:
            bad.append((u, v, verdicts))
    return bad
