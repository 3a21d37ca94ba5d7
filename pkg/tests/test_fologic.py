import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordsynth.fologic import (
    And,
    DomainError,
    Eq,
    Exists,
    FoError,
    Forall,
    Fresh,
    Implies,
    LAnd,
    LNot,
    LTrue,
    Lt,
    MarginError,
    Next,
    Or,
    Pred,
    Prop,
    Until,
    Window,
    defplus,
    defplus_query,
    defplus_relation,
    eval_fo,
    format_fo,
    format_ltl,
    free_vars,
    hygiene_violations,
    ltl_size,
    ltl_to_fo,
    margin_ok,
    parse_ltl,
    plus_power,
    size,
    subscripts,
    window,
)
from ordsynth.ordinals import ONE, OMEGA, ZERO, UntilBound, add, natural, omega_power, parse_ordinal

# ---------------------------------------------------------------------------
# syntax


def test_defplus_zero_and_one_cases():
    assert defplus(ZERO) == Eq("x", "y")
    assert defplus(ONE) == And(Lt("x", "y"), Forall("z1", Implies(Lt("x", "z1"), Or(Lt("y", "z1"), Eq("y", "z1")))))


def test_defplus_omega_times_two_unfolds():
    f = defplus(parse_ordinal("w*2"))
    assert isinstance(f, Exists)
    z = f.var
    assert size(f.body.left) == size(plus_power(1, "x", z, Fresh()))
    inner = f.body.right
    assert isinstance(inner, Exists)
    assert inner.body.right == Eq(inner.var, "y")
    assert free_vars(f.body.left) == {"x", z}
    assert free_vars(inner.body.left) == {z, inner.var}


def test_plus_power_size_recurrence():
    sizes = [size(plus_power(k, "x", "y", Fresh())) for k in range(5)]
    assert sizes[0] == 8
    assert all(sizes[k] == 2 * sizes[k - 1] + 30 for k in range(1, 5))


def test_format_fo():
    assert format_fo(Exists("z", And(Lt("x", "z"), Pred("p", "z")))) == "exists z. (x < z & p(z))"


def test_parser_round_trip():
    for text in ["p", "(U w^2 (p) (q))", "(X w (p))", "(! (& p q))", "(U w^w true p)", "(X w^2*3+1 p)"]:
        phi = parse_ltl(text)
        assert parse_ltl(format_ltl(phi)) == phi
    assert parse_ltl("(F w p)") == Until(UntilBound(OMEGA), LTrue(), Prop("p"))
    assert parse_ltl("(G w p)") == LNot(Until(UntilBound(OMEGA), LTrue(), LNot(Prop("p"))))


@pytest.mark.parametrize("text", ["", "(", "(U w p)", "(X w^w p)", "(& p)", "p q", "(X x p)", "(1p)"])
def test_parser_errors(text):
    with pytest.raises(FoError):
        parse_ltl(text)


def test_atomic_translation():
    assert ltl_to_fo(Prop("p")) == Pred("p", "x0")


def test_next_omega_translation():
    f = ltl_to_fo(Next(OMEGA, Prop("p")))
    assert isinstance(f, Exists)
    assert f.body.right == Pred("p", f.var)
    assert free_vars(f) == {"x0"}


# ---------------------------------------------------------------------------
# random temporal formulas

small_ordinals = st.sampled_from(["0", "1", "2", "w", "w+1", "w*2", "w^2", "w^2+w*2+1"]).map(parse_ordinal)
bounds = st.one_of(small_ordinals.map(UntilBound), st.just(UntilBound(None)))


def ltl_formulas(depth: int = 4):
    base = st.one_of(st.sampled_from([Prop("p"), Prop("q"), LTrue()]))

    def extend(inner):
        return st.one_of(
            inner.map(LNot),
            st.tuples(inner, inner).map(lambda t: LAnd(*t)),
            st.tuples(small_ordinals, inner).map(lambda t: Next(*t)),
            st.tuples(bounds, inner, inner).map(lambda t: Until(*t)),
        )

    return st.recursive(base, extend, max_leaves=depth + 1)


def size_bound(phi) -> int:
    """20 per temporal node, plus 38 * 2^e + 3 per unit of coefficient of every subscript term w^e."""
    cost = 20 * ltl_size(phi)
    for beta in subscripts(phi):
        cost += 1 + sum(n * (38 * 2**e + 3) for e, n in beta.terms)
    return cost


@settings(max_examples=200, deadline=None)
@given(ltl_formulas())
def test_translation_closure_and_hygiene(phi):
    f = ltl_to_fo(phi, "x0")
    assert free_vars(f) == {"x0"}
    assert hygiene_violations(f, frozenset({"x0"})) == []
    assert size(f) <= size_bound(phi)
    assert parse_ltl(format_ltl(phi)) == phi


def test_hygiene_detects_capture():
    bad = Exists("z", And(Lt("x", "z"), Exists("z", Lt("z", "x"))))
    assert hygiene_violations(bad, frozenset({"x"}))


# ---------------------------------------------------------------------------
# evaluation


def test_eval_order_example():
    assert eval_fo(Lt("x", "y"), 2, 4, {"x": ZERO, "y": OMEGA})


def test_eval_successor_example():
    rel = defplus_relation(ONE, 1, 5)
    pairs = {(int(i), int(j)) for i, j in zip(*np.nonzero(rel))}
    assert pairs == {(n, n + 1) for n in range(4)}


def test_eval_rejects_outside_values():
    with pytest.raises(DomainError):
        eval_fo(Lt("x", "y"), 1, 4, {"x": ZERO, "y": natural(4)})
    with pytest.raises(FoError):
        eval_fo(Lt("x", "y"), 1, 4, {"x": ZERO})
    with pytest.raises(FoError):
        eval_fo(Pred("p", "x"), 1, 4, {"x": ZERO})


def test_window_is_sorted():
    W = window(2, 3)
    assert len(W) == 9
    assert W == sorted(W)
    assert W[3] == OMEGA
    assert Window(0, 3).elements == [ZERO]


@pytest.mark.parametrize("k,N", [(1, 5), (2, 4), (2, 5), (3, 4)])
@pytest.mark.parametrize("b", [0, 1, 2])
def test_finite_steps_are_adequate_inside_margin(k, N, b):
    beta = natural(b)
    for x in window(k, N):
        if margin_ok(beta, x, N):
            assert defplus_query(beta, x, k, N) == [add(x, beta)]


def test_limit_step_has_no_witness_in_a_finite_window():
    # the last finite element of a window has its successor at w, so no
    # candidate below w covers all finite steps from x
    assert defplus_query(OMEGA, natural(2), 2, 8) == []
    assert not eval_fo(defplus(OMEGA), 2, 8, {"x": natural(2), "y": OMEGA})


def test_margin_rejects_edge_queries():
    with pytest.raises(MarginError):
        defplus_query(ONE, natural(4), 1, 5)
    assert margin_ok(ONE, natural(2), 5)
    assert not margin_ok(natural(2), natural(2), 5)


def test_next_and_until_semantics_on_finite_window():
    preds = {"p": [natural(i) for i in range(4)], "q": [natural(3)]}
    at = {"x0": natural(1)}
    assert eval_fo(ltl_to_fo(parse_ltl("(X 2 q)")), 1, 8, at, preds)
    assert not eval_fo(ltl_to_fo(parse_ltl("(X 1 q)")), 1, 8, at, preds)
    assert eval_fo(ltl_to_fo(parse_ltl("(U 3 p q)")), 1, 8, at, preds)
    assert not eval_fo(ltl_to_fo(parse_ltl("(U 2 p q)")), 1, 8, at, preds)
    assert eval_fo(ltl_to_fo(parse_ltl("(U w^w p q)")), 1, 8, at, preds)
    assert not eval_fo(ltl_to_fo(parse_ltl("(U w^w (! p) q)")), 1, 8, at, preds)
