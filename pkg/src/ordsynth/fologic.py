"""Temporal formulas with ordinal subscripts and their first-order translation.

``defplus(beta)`` builds a first-order formula over ``<`` and ``=`` with free
variables x, y that holds iff y = x + beta.  ``ltl_to_fo`` translates a
temporal formula into a first-order formula with one free position variable.

``eval_fo`` evaluates first-order formulas over the finite window
``D(k, N)`` = ordinals below w^k whose CNF coefficients are all < N, with
quantifiers ranging over the window.  Every subformula becomes a boolean
array with one axis per free variable, so nested quantifiers cost one array
operation each instead of a nested loop.
"""
from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .ordinals import (
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    UntilBound,
    format_ordinal,
    parse_bound,
    parse_ordinal,
)


class FoError(ValueError):
    pass


class DomainError(FoError):
    """A valuation or predicate mentions an ordinal outside the window."""


class MarginError(FoError):
    """The query lies outside the region where the window is trusted."""


# ---------------------------------------------------------------------------
# first-order formulas

@dataclass(frozen=True)
class Lt:
    x: str
    y: str


@dataclass(frozen=True)
class Eq:
    x: str
    y: str


@dataclass(frozen=True)
class Pred:
    name: str
    x: str


@dataclass(frozen=True)
class Not:
    body: "Fo"


@dataclass(frozen=True)
class And:
    left: "Fo"
    right: "Fo"


@dataclass(frozen=True)
class Or:
    left: "Fo"
    right: "Fo"


@dataclass(frozen=True)
class Implies:
    left: "Fo"
    right: "Fo"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Fo"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Fo"


Fo = Lt | Eq | Pred | Not | And | Or | Implies | Exists | Forall


def Le(x: str, y: str) -> Fo:
    return Or(Lt(x, y), Eq(x, y))


def conj(*parts: Fo) -> Fo:
    return reduce(And, parts)


def free_vars(f: Fo) -> frozenset:
    if isinstance(f, (Lt, Eq)):
        return frozenset((f.x, f.y))
    if isinstance(f, Pred):
        return frozenset((f.x,))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def size(f: Fo) -> int:
    if isinstance(f, (Lt, Eq, Pred)):
        return 1
    if isinstance(f, Not):
        return 1 + size(f.body)
    if isinstance(f, (And, Or, Implies)):
        return 1 + size(f.left) + size(f.right)
    return 1 + size(f.body)


def hygiene_violations(f: Fo, outer: frozenset = frozenset()) -> list:
    """Binders that shadow an enclosing binder or a free variable."""
    out = []
    top = free_vars(f) if not outer else frozenset()

    def walk(g, bound):
        if isinstance(g, (Exists, Forall)):
            if g.var in bound or g.var in top:
                out.append(g.var)
            walk(g.body, bound | {g.var})
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.left, bound)
            walk(g.right, bound)

    walk(f, outer)
    return out


_OPS = {And: "&", Or: "|", Implies: "->"}


def format_fo(f: Fo) -> str:
    if isinstance(f, Lt):
        return f"{f.x} < {f.y}"
    if isinstance(f, Eq):
        return f"{f.x} = {f.y}"
    if isinstance(f, Pred):
        return f"{f.name}({f.x})"
    if isinstance(f, Not):
        return f"~({format_fo(f.body)})"
    if isinstance(f, (And, Or, Implies)):
        return f"({format_fo(f.left)} {_OPS[type(f)]} {format_fo(f.right)})"
    q = "exists" if isinstance(f, Exists) else "forall"
    return f"{q} {f.var}. {format_fo(f.body)}"


class Fresh:
    """Supply of variable names z1, z2, ... that never repeat."""

    def __init__(self, prefix: str = "z"):
        self.prefix = prefix
        self.count = 0

    def __call__(self) -> str:
        self.count += 1
        return f"{self.prefix}{self.count}"


# ---------------------------------------------------------------------------
# x + beta = y

def plus_power(k: int, x: str, y: str, fresh: Fresh) -> Fo:
    """y = x + w^k; for k = 0 this is the successor formula."""
    if k == 0:
        z = fresh()
        return And(Lt(x, y), Forall(z, Implies(Lt(x, z), Le(y, z))))

    def covers(bound: str) -> Fo:
        z, z2 = fresh(), fresh()
        return Forall(
            z,
            Implies(
                And(Le(x, z), Lt(z, bound)),
                Exists(z2, And(plus_power(k - 1, z, z2, fresh), Lt(z2, bound))),
            ),
        )

    y2 = fresh()
    return conj(
        Lt(x, y),
        covers(y),
        Forall(y2, Implies(And(Lt(x, y2), covers(y2)), Le(y, y2))),
    )


def defplus(beta: Ordinal, x: str = "x", y: str = "y", fresh: Fresh | None = None) -> Fo:
    fresh = fresh or Fresh()
    if beta == ZERO:
        return Eq(x, y)
    if beta == ONE:
        return plus_power(0, x, y, fresh)
    (e, n), rest = beta.terms[0], beta.terms[1:]
    remainder = Ordinal((((e, n - 1),) if n > 1 else ()) + rest)
    z = fresh()
    return Exists(z, And(plus_power(e, x, z, fresh), defplus(remainder, z, y, fresh)))


# ---------------------------------------------------------------------------
# temporal formulas

@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class LTrue:
    pass


@dataclass(frozen=True)
class LNot:
    body: "Ltl"


@dataclass(frozen=True)
class LAnd:
    left: "Ltl"
    right: "Ltl"


@dataclass(frozen=True)
class Next:
    beta: Ordinal
    body: "Ltl"


@dataclass(frozen=True)
class Until:
    bound: UntilBound
    left: "Ltl"
    right: "Ltl"


Ltl = Prop | LTrue | LNot | LAnd | Next | Until


def eventually(bound: UntilBound, body: Ltl) -> Ltl:
    return Until(bound, LTrue(), body)


def always(bound: UntilBound, body: Ltl) -> Ltl:
    return LNot(eventually(bound, LNot(body)))


def ltl_to_fo(phi: Ltl, x: str = "x0", fresh: Fresh | None = None) -> Fo:
    fresh = fresh or Fresh()
    if isinstance(phi, Prop):
        return Pred(phi.name, x)
    if isinstance(phi, LTrue):
        return Eq(x, x)
    if isinstance(phi, LNot):
        return Not(ltl_to_fo(phi.body, x, fresh))
    if isinstance(phi, LAnd):
        return And(ltl_to_fo(phi.left, x, fresh), ltl_to_fo(phi.right, x, fresh))
    if isinstance(phi, Next):
        y = fresh()
        return Exists(y, And(defplus(phi.beta, x, y, fresh), ltl_to_fo(phi.body, y, fresh)))
    if isinstance(phi, Until):
        y, z = fresh(), fresh()
        before = Forall(z, Implies(And(Le(x, z), Lt(z, y)), ltl_to_fo(phi.left, z, fresh)))
        if phi.bound.is_omega_omega:
            return Exists(y, conj(Le(x, y), ltl_to_fo(phi.right, y, fresh), before))
        y2 = fresh()
        return Exists(
            y,
            Exists(
                y2,
                conj(
                    defplus(phi.bound.value, x, y2, fresh),
                    And(Le(x, y), Lt(y, y2)),
                    ltl_to_fo(phi.right, y, fresh),
                    before,
                ),
            ),
        )
    raise TypeError(f"not a temporal formula: {phi!r}")


def ltl_size(phi: Ltl) -> int:
    if isinstance(phi, (Prop, LTrue)):
        return 1
    if isinstance(phi, (LNot, Next)):
        return 1 + ltl_size(phi.body)
    return 1 + ltl_size(phi.left) + ltl_size(phi.right)


def subscripts(phi: Ltl) -> list:
    if isinstance(phi, (Prop, LTrue)):
        return []
    if isinstance(phi, LNot):
        return subscripts(phi.body)
    if isinstance(phi, Next):
        return [phi.beta] + subscripts(phi.body)
    if isinstance(phi, LAnd):
        return subscripts(phi.left) + subscripts(phi.right)
    own = [] if phi.bound.is_omega_omega else [phi.bound.value]
    return own + subscripts(phi.left) + subscripts(phi.right)


def format_ltl(phi: Ltl) -> str:
    if isinstance(phi, Prop):
        return phi.name
    if isinstance(phi, LTrue):
        return "true"
    if isinstance(phi, LNot):
        return f"(! {format_ltl(phi.body)})"
    if isinstance(phi, LAnd):
        return f"(& {format_ltl(phi.left)} {format_ltl(phi.right)})"
    if isinstance(phi, Next):
        return f"(X {format_ordinal(phi.beta)} {format_ltl(phi.body)})"
    return f"(U {phi.bound} {format_ltl(phi.left)} {format_ltl(phi.right)})"


_LTL_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def parse_ltl(text: str) -> Ltl:
    """Prefix syntax: ``p``, ``(p)``, ``true``, ``(! f)``, ``(& f g)``, ``(| f g)``,
    ``(X beta f)``, ``(U beta f g)``, ``(F beta f)``, ``(G beta f)``.

    Subscripts use the ordinal text syntax (``w^2*3+1``); ``w^w`` is allowed
    for U, F and G.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _LTL_TOKEN.match(text, pos)
        if not m:
            raise FoError(f"formula syntax error at offset {pos}")
        toks.append(m.group(1))
        pos = m.end()
    if not toks:
        raise FoError("empty formula")
    phi, i = _parse_ltl(toks, 0)
    if i != len(toks):
        raise FoError(f"trailing input: {' '.join(toks[i:])}")
    return phi


def _parse_ltl(toks, i):
    if i >= len(toks):
        raise FoError("unexpected end of formula")
    tok = toks[i]
    if tok == ")":
        raise FoError("unexpected ')'")
    if tok != "(":
        return _atom(tok), i + 1
    if i + 1 >= len(toks):
        raise FoError("unexpected end of formula")
    head = toks[i + 1]
    i += 2
    if head in ("!", "not"):
        body, i = _parse_ltl(toks, i)
        return LNot(body), _close(toks, i)
    if head in ("&", "and", "|", "or"):
        a, i = _parse_ltl(toks, i)
        b, i = _parse_ltl(toks, i)
        phi = LAnd(a, b) if head in ("&", "and") else LNot(LAnd(LNot(a), LNot(b)))
        return phi, _close(toks, i)
    if head in ("X", "U", "F", "G"):
        if i >= len(toks):
            raise FoError("missing subscript")
        sub = toks[i]
        i += 1
        try:
            if head == "X":
                beta = parse_ordinal(sub)
            else:
                bound = parse_bound(sub)
        except OrdinalError as exc:
            raise FoError(str(exc)) from None
        a, i = _parse_ltl(toks, i)
        if head == "X":
            return Next(beta, a), _close(toks, i)
        if head == "U":
            b, i = _parse_ltl(toks, i)
            return Until(bound, a, b), _close(toks, i)
        phi = eventually(bound, a) if head == "F" else always(bound, a)
        return phi, _close(toks, i)
    # parenthesised atom
    return _atom(head), _close(toks, i)


def _atom(tok: str) -> Ltl:
    if tok == "true":
        return LTrue()
    if not re.fullmatch(r"[A-Za-z_][\w-]*", tok):
        raise FoError(f"bad proposition name {tok!r}")
    return Prop(tok)


def _close(toks, i):
    if i >= len(toks) or toks[i] != ")":
        raise FoError("missing ')'")
    return i + 1


# ---------------------------------------------------------------------------
# evaluation over a finite window

def window(k: int, N: int) -> list:
    """D(k, N) in increasing order."""
    if k < 0 or N < 1:
        raise FoError("window needs k >= 0 and N >= 1")
    return [Ordinal.from_coefficients(c) for c in itertools.product(range(N), repeat=k)] if k else [ZERO]


@dataclass
class Window:
    k: int
    N: int

    def __post_init__(self):
        self.elements = window(self.k, self.N)
        self.index = {a: i for i, a in enumerate(self.elements)}
        idx = np.arange(len(self.elements))
        self.less = idx[:, None] < idx[None, :]
        self.equal = idx[:, None] == idx[None, :]

    def position(self, a: Ordinal) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise DomainError(f"{format_ordinal(a)} is outside D({self.k}, {self.N})") from None


def _align(vs: tuple, arr: np.ndarray, target: tuple) -> np.ndarray:
    """View ``arr`` (axes ``vs``) with one axis per variable of ``target``."""
    order = sorted(range(len(vs)), key=lambda i: target.index(vs[i]))
    arr = np.transpose(arr, order) if order != list(range(len(vs))) else arr
    shape = []
    present = {vs[i] for i in order}
    it = iter(arr.shape)
    for v in target:
        shape.append(next(it) if v in present else 1)
    return arr.reshape(shape)


def _letters(vs: Iterable[str], table: dict) -> str:
    out = []
    for v in vs:
        if v not in table:
            table[v] = string.ascii_letters[len(table)]
        out.append(table[v])
    return "".join(out)


class Evaluator:
    def __init__(self, W: Window, preds: Mapping[str, Iterable[Ordinal]] | None = None):
        self.W = W
        n = len(W.elements)
        self.preds = {}
        for name, members in (preds or {}).items():
            mask = np.zeros(n, dtype=bool)
            for a in members:
                mask[W.position(a)] = True
            self.preds[name] = mask

    def table(self, f: Fo):
        """(variables, boolean array with one axis per variable)."""
        W = self.W
        if isinstance(f, (Lt, Eq)):
            base = W.less if isinstance(f, Lt) else W.equal
            if f.x == f.y:
                return (f.x,), np.diagonal(base).copy()
            return (f.x, f.y), base
        if isinstance(f, Pred):
            if f.name not in self.preds:
                raise FoError(f"no interpretation for predicate {f.name!r}")
            return (f.x,), self.preds[f.name]
        if isinstance(f, Not):
            vs, arr = self.table(f.body)
            return vs, ~arr
        if isinstance(f, (And, Or, Implies)):
            lv, la = self.table(f.left)
            rv, ra = self.table(f.right)
            vs = tuple(sorted(set(lv) | set(rv)))
            a, b = _align(lv, la, vs), _align(rv, ra, vs)
            if isinstance(f, And):
                res = a & b
            elif isinstance(f, Or):
                res = a | b
            else:
                res = ~a | b
            return vs, np.broadcast_to(res, tuple(len(W.elements) for _ in vs)).copy()
        if isinstance(f, Exists):
            return self._exists(f.var, f.body)
        if isinstance(f, Forall):
            vs, arr = self._exists(f.var, Not(f.body))
            return vs, ~arr
        raise TypeError(f"not a formula: {f!r}")

    def _exists(self, var: str, body: Fo):
        # push the quantifier through conjunctions as a contraction, which
        # avoids building an array over all variables of both conjuncts
        body = _strip_double_negation(body)
        if isinstance(body, And) or (isinstance(body, Not) and isinstance(body.body, Implies)):
            if isinstance(body, And):
                left, right = body.left, body.right
            else:
                left, right = body.body.left, Not(body.body.right)
            lv, la = self.table(left)
            rv, ra = self.table(right)
            if var in lv or var in rv:
                out = tuple(sorted((set(lv) | set(rv)) - {var}))
                names: dict = {}
                spec = f"{_letters(lv, names)},{_letters(rv, names)}->{_letters(out, names)}"
                counts = np.einsum(spec, la.astype(np.int32), ra.astype(np.int32), optimize=True)
                return out, counts > 0
        vs, arr = self.table(body)
        if var not in vs:
            return vs, arr
        axis = vs.index(var)
        return vs[:axis] + vs[axis + 1:], arr.any(axis=axis)


def _strip_double_negation(f: Fo) -> Fo:
    while isinstance(f, Not) and isinstance(f.body, Not):
        f = f.body.body
    return f


def eval_fo(
    f: Fo,
    k: int,
    N: int,
    valuation: Mapping[str, Ordinal],
    preds: Mapping[str, Iterable[Ordinal]] | None = None,
) -> bool:
    W = Window(k, N)
    missing = free_vars(f) - set(valuation)
    if missing:
        raise FoError(f"free variables without a value: {sorted(missing)}")
    pos = {v: W.position(a) for v, a in valuation.items()}
    vs, arr = Evaluator(W, preds).table(f)
    return bool(arr[tuple(pos[v] for v in vs)])


def defplus_relation(beta: Ordinal, k: int, N: int) -> np.ndarray:
    """Boolean matrix over D(k, N): entry [i, j] says defplus(beta)(x_i, y_j) holds."""
    W = Window(k, N)
    vs, arr = Evaluator(W).table(defplus(beta))
    if vs == ("x", "y"):
        return arr
    if vs == ("y", "x"):
        return arr.T
    return _align(vs, arr, ("x", "y")) | np.zeros((len(W.elements),) * 2, dtype=bool)


def margin_ok(beta: Ordinal, x: Ordinal, N: int) -> bool:
    """x's coefficients leave room for beta: all <= N - c - 2, c = beta's largest coefficient."""
    c = max((cf for _, cf in beta.terms), default=0)
    return all(cf <= N - c - 2 for _, cf in x.terms)


def defplus_query(beta: Ordinal, x: Ordinal, k: int, N: int) -> list:
    """The y in D(k, N) with defplus(beta)(x, y); refuses queries outside the margin."""
    if not margin_ok(beta, x, N):
        raise MarginError(f"x = {format_ordinal(x)} is too close to the window edge for {format_ordinal(beta)}")
    W = Window(k, N)
    rel = defplus_relation(beta, k, N)
    row = rel[W.position(x)]
    return [W.elements[j] for j in np.flatnonzero(row)]
