import pytest

from ordsynth.automaton import any_power, reach
from ordsynth.bouncing_ball import ball_automaton, not_bouncing_automaton
from ordsynth.constructions import pair_name as pn
from ordsynth.constructions import product
from ordsynth.fixtures import example_automaton
from ordsynth.summary import format_triples, summary

# the relevant triples of the bouncing-ball product, as listed with the example
BALL_TRIPLES = [
    (pn("b", "y1"), {pn("b", "y1")}, pn("s", "yw")),
    (pn("0", "y1"), {pn("0", "n1")}, pn("s", "nw")),
    (pn("b", "n1"), {pn("b", "n1")}, pn("s", "nw")),
    (pn("0", "n1"), {pn("0", "n1")}, pn("s", "nw")),
    (pn("0", "n1"), {pn("0", "n1"), pn("b", "n1")}, pn("s", "nw")),
]


def matches_modulo_start(golden, triples) -> bool:
    q, P, q2 = golden
    return any(t[0] == q and t[2] == q2 and set(t[1]) - {q} == set(P) - {q} for t in triples)


@pytest.fixture(scope="module")
def ball_product():
    return product(ball_automaton(), not_bouncing_automaton())


def test_ball_summary_contains_listed_triples(ball_product):
    R = summary(ball_product, 1)
    missing = [t for t in BALL_TRIPLES if not matches_modulo_start(t, R.triples)]
    assert missing == []


def test_visit_sets_are_start_inclusive(ball_product):
    R = summary(ball_product, 1)
    assert all(q in P for q, P, _ in R.triples)
    # listed without its start state; present with it
    assert (pn("0", "y1"), frozenset({pn("0", "y1"), pn("0", "n1")}), pn("s", "nw")) in R.triples


def test_no_triple_returns_to_yes_after_a_stop(ball_product):
    R = summary(ball_product, 1)
    assert not any(q2 == pn("s", "yw") and pn("0", "y1") in P for _, P, q2 in R.triples)


def test_level_zero_is_single_steps():
    A = example_automaton()
    assert summary(A, 0).triples == {("0", frozenset({"0"}), "0"), ("1", frozenset({"1"}), "0")}


def test_summary_is_reach_of_any_power():
    A = example_automaton()
    for i in range(3):
        assert summary(A, i).triples == reach(A, any_power(i))


def test_negative_level_rejected():
    with pytest.raises(ValueError):
        summary(example_automaton(), -1)


def test_format_is_sorted():
    out = format_triples(summary(example_automaton(), 1).triples)
    assert out == sorted(out, key=lambda d: (d["from"], d["visited"], d["to"]))
