import itertools
import random

import pytest

from ordsynth.games import (
    EVEN,
    ODD,
    ParityGame,
    brute_force_even_wins,
    brute_force_winners,
    build_game,
    cont_vertex,
    dump_game,
    odd_can_beat,
    silent_vertex,
    solve,
)
from ordsynth.random_instances import GameConfig, parity_game
from ordsynth.winning import ActionPartition, ParityAutomaton


def dual(G: ParityGame) -> ParityGame:
    """Swap the roles of the players."""
    return ParityGame([1 - o for o in G.owner], [p + 1 for p in G.priority], list(G.succ), G.initial)


def check_solution(G: ParityGame):
    sol = solve(G)
    assert sol.win_even | sol.win_odd == frozenset(range(G.n))
    assert not sol.win_even & sol.win_odd
    assert sol.win_even == brute_force_winners(G)
    for v in sol.win_even:
        assert not odd_can_beat(G, sol.strategy_even, v)
    D = dual(G)
    for v in sol.win_odd:
        assert not odd_can_beat(D, sol.strategy_odd, v)
    return sol


def test_single_even_loop():
    G = ParityGame([ODD], [2], [(0,)])
    assert check_solution(G).win_even == {0}


def test_single_odd_loop():
    G = ParityGame([EVEN], [3], [(0,)])
    assert check_solution(G).win_odd == {0}


def test_dead_end_loses_for_its_owner():
    assert check_solution(ParityGame([EVEN], [0], [()])).win_odd == {0}
    assert check_solution(ParityGame([ODD], [1], [()])).win_even == {0}


def test_choice_between_loops():
    # Even at 0 picks the even loop at 1 over the odd loop at 2
    G = ParityGame([EVEN, ODD, ODD], [0, 2, 1], [(1, 2), (1,), (2,)])
    sol = check_solution(G)
    assert sol.win_even == {0, 1}
    assert sol.strategy_even[0] == 1


def test_bad_edges_rejected():
    with pytest.raises(ValueError):
        ParityGame([EVEN], [0], [(1,)])
    with pytest.raises(ValueError):
        ParityGame([EVEN, ODD], [0], [(), ()])


def all_games(n: int, max_priority: int = 3):
    succ_sets = [tuple(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)]
    for owner in itertools.product((EVEN, ODD), repeat=n):
        for prio in itertools.product(range(max_priority + 1), repeat=n):
            for succ in itertools.product(succ_sets, repeat=n):
                yield ParityGame(list(owner), list(prio), list(succ))


def test_exhaustive_two_vertices():
    count = 0
    for G in all_games(2):
        check_solution(G)
        count += 1
    assert count == 4 * 16 * 16


def test_random_games_up_to_five():
    rng = random.Random(2024)
    for _ in range(400):
        G = parity_game(rng, GameConfig())
        check_solution(G)
        for v in range(G.n):
            assert brute_force_even_wins(G, v) == (v in brute_force_winners(G))


def test_synthesis_game_layout():
    a, b = frozenset({"a"}), frozenset({"b"})
    alphabet = [frozenset(), a, b, a | b]
    # one-state automaton: priority 1 (Env accepts everything)
    D = ParityAutomaton(alphabet, 1, {(0, x): 0 for x in alphabet}, [1], ["d"])
    parts = ActionPartition({"a", "b"}, {"a", "b"}, {"a"})
    G = build_game(D, parts)
    assert G.n == 1 * (2 + 1) + 1
    v_empty = cont_vertex(D, parts, 0, frozenset())
    v_b = cont_vertex(D, parts, 0, b)
    assert G.owner[v_empty] == EVEN and G.priority[v_empty] == 0
    assert G.moves[(v_empty, 0)] == [a]
    assert G.moves[(v_b, 0)] == [frozenset(), a]
    assert silent_vertex(D, parts, 0) in G.succ[0]
    assert G.priority[0] == 3
    assert solve(G).win_odd == frozenset(range(G.n))


def test_cont_vertex_without_moves_is_dropped():
    alphabet = [frozenset(), frozenset({"a"})]
    D = ParityAutomaton(alphabet, 1, {(0, x): 0 for x in alphabet}, [0], ["d"])
    parts = ActionPartition({"a"}, {"a"}, set())
    G = build_game(D, parts)
    v = cont_vertex(D, parts, 0, frozenset())
    assert G.succ[v] == ()
    assert v not in G.succ[0]
    assert solve(G).win_even == frozenset(range(G.n)) - {v}


def test_dump_game_lists_regions():
    G = ParityGame([EVEN, ODD], [0, 1], [(1,), (0,)])
    out = dump_game(G, solve(G))
    assert out["win_env"] == [0, 1]
    assert [x["owner"] for x in out["vertices"]] == ["Cont", "Env"]
