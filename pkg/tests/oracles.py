"""Brute-force oracles, written independently of the code they check."""
from __future__ import annotations

from ordsynth.automaton import AnySym, Concat, OmegaPower, Sym
from ordsynth.ordinals import Ordinal

# ---------------------------------------------------------------------------
# ordinals as coefficient vectors (index e holds the coefficient of w^e)

DIM = 6


def to_vec(a: Ordinal) -> list:
    v = [0] * DIM
    for e, c in a.terms:
        v[e] = c
    return v


def from_vec(v) -> Ordinal:
    return Ordinal(tuple((e, c) for e, c in reversed(list(enumerate(v))) if c))


def vec_less(u, v) -> bool:
    for e in reversed(range(DIM)):
        if u[e] != v[e]:
            return u[e] < v[e]
    return False


def vec_add(u, v) -> list:
    """Order type of u followed by v: v's leading power swallows u's lower part."""
    if not any(v):
        return list(u)
    top = max(e for e in range(DIM) if v[e])
    out = [0] * DIM
    for e in range(DIM):
        if e > top:
            out[e] = u[e]
        elif e == top:
            out[e] = u[e] + v[e]
        else:
            out[e] = v[e]
    return out


# ---------------------------------------------------------------------------
# reachability by bounded lasso enumeration over explicit blocks


def letter_triples(A, w) -> set:
    if isinstance(w, Sym):
        return {(q, frozenset({q}), q2) for q, a, q2 in A.step if a == w.letter}
    return {(q, frozenset({q}), q2) for q, a, q2 in A.step}


def block_paths(blocks, bound: int) -> set:
    """(q, P, q2) for every sequence of 1..bound blocks from q to q2."""
    out = set(blocks)
    layer = set(blocks)
    for _ in range(bound - 1):
        nxt = set()
        for q, P, q1 in layer:
            for r, P2, q2 in blocks:
                if r == q1:
                    nxt.add((q, P | P2, q2))
        layer = nxt - out
        out |= nxt
        if not layer:
            break
    return out


def lasso_reach(A, w, bound: int) -> set:
    """Triples of ``w`` found by unfolding the term.

    OmegaPower: runs made of a prefix of at most ``bound`` blocks followed by
    a cycle of at most ``bound`` blocks repeated forever; the cofinal set is
    the union of the cycle's visit sets.
    """
    if isinstance(w, (Sym, AnySym)):
        return letter_triples(A, w)
    if isinstance(w, Concat):
        res = lasso_reach(A, w.items[0], bound)
        for item in w.items[1:]:
            nxt = lasso_reach(A, item, bound)
            res = {(q, P | P2, q2) for q, P, q1 in res for r, P2, q2 in nxt if r == q1}
        return res
    assert isinstance(w, OmegaPower)
    blocks = lasso_reach(A, w.body, bound)
    paths = block_paths(blocks, bound)
    cycles = {(q, P) for q, P, q2 in paths if q == q2}
    out = set()
    for q1, C in cycles:
        for tgt in A.targets_for(C):
            out.add((q1, C, tgt))
            for q, P, r in paths:
                if r == q1:
                    out.add((q, P | C, tgt))
    return out


# ---------------------------------------------------------------------------
# positions of regular words by explicit unrolling


def unroll(w, start: Ordinal, add, limit_blocks: int = 4, finite_reps: int = 4):
    """Yield (position, letter) pairs of w placed at ``start``.

    OmegaPower bodies are repeated ``limit_blocks`` times (or ``finite_reps``
    for finite bodies); only a prefix of each infinite word is listed.
    """
    from ordsynth.automaton import length

    if isinstance(w, Sym):
        yield start, w.letter
        return
    if isinstance(w, AnySym):
        yield start, "*"
        return
    if isinstance(w, Concat):
        pos = start
        for item in w.items:
            yield from unroll(item, pos, add, limit_blocks, finite_reps)
            pos = add(pos, length(item))
        return
    pos = start
    L = length(w.body)
    for _ in range(finite_reps if L.terms and L.terms[0][0] == 0 else limit_blocks):
        yield from unroll(w.body, pos, add, limit_blocks, finite_reps)
        pos = add(pos, L)


# ---------------------------------------------------------------------------
# referee search for the plays won by Env


def referee_accepts(A, parts, R, u, v) -> bool:
    """Is there a concrete run of the plant conforming to the rounds u v^w?

    A non-empty letter may be preceded by any number of silent rounds (rounds
    whose observable part is empty); the empty letter is one silent round.
    The run wins for Env when the states covered by the recurring rounds have
    a limit transition into a final state.
    """
    word = list(u) + list(v)
    n_u, n = len(u), len(u) + len(v)
    obs = parts.observable
    jumps = {}
    for q2, P, q1 in R.triples:
        jumps.setdefault(q2, []).append((q1, P))

    def rounds(q, letter):
        for a, q2 in A.successors[q]:
            if a & obs == letter:
                for q1, P in jumps.get(q2, ()):
                    yield q1, P | {q1}

    def nxt(i):
        return i + 1 if i + 1 < n else n_u

    # edges: (src node, dst node, cover, progress)
    edges = []
    nodes = set()
    todo = [(q, 0) for q in A.initial]
    seen = set(todo)
    while todo:
        q, i = todo.pop()
        nodes.add((q, i))
        letter = word[i]
        out = [((q1, nxt(i)), cv, True) for q1, cv in rounds(q, letter)]
        if letter:
            out += [((q1, i), cv, False) for q1, cv in rounds(q, frozenset())]
        for dst, cv, prog in out:
            edges.append(((q, i), dst, cv, prog))
            if dst not in seen:
                seen.add(dst)
                todo.append(dst)
    candidates = {P for P, q in A.all_limits if q in A.final}
    for C in candidates:
        sub = [e for e in edges if e[2] <= C and e[0][1] >= n_u and e[1][1] >= n_u]
        for comp in _components(sub):
            inner = [e for e in sub if e[0] in comp and e[1] in comp]
            covered = frozenset().union(*(e[2] for e in inner)) if inner else frozenset()
            if covered == C and any(e[3] for e in inner) and _reachable_from(edges, A.initial, comp):
                return True
    return False


def _components(edges):
    succ = {}
    for s, d, _, _ in edges:
        succ.setdefault(s, set()).add(d)
        succ.setdefault(d, set())
    comps = []
    done = set()
    for x in succ:
        if x in done:
            continue
        fwd = _closure(x, succ)
        pred = {}
        for s, ds in succ.items():
            for d in ds:
                pred.setdefault(d, set()).add(s)
        bwd = _closure(x, pred)
        comp = fwd & bwd
        done |= comp
        if any(d in comp for s in comp for d in succ[s]):
            comps.append(comp)
    return comps


def _closure(x, succ):
    seen = {x}
    todo = [x]
    while todo:
        y = todo.pop()
        for z in succ.get(y, ()):
            if z not in seen:
                seen.add(z)
                todo.append(z)
    return seen


def _reachable_from(edges, initial, comp) -> bool:
    succ = {}
    for s, d, _, _ in edges:
        succ.setdefault(s, set()).add(d)
    reach = set()
    for q in initial:
        reach |= _closure((q, 0), succ)
    return bool(reach & comp)
