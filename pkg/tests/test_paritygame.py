import random

from muaut import paritygame as pg


def test_stuck_owner_loses():
    g = pg.ParityGame((pg.EXISTS,), ((),), (0,))
    sol = pg.solve(g)
    assert sol.win_forall == frozenset({0})
    g2 = pg.ParityGame((pg.FORALL,), ((),), (1,))
    assert pg.solve(g2).win_exists == frozenset({0})


def test_single_cycles():
    even = pg.ParityGame((pg.EXISTS,), ((0,),), (0,))
    assert pg.solve(even).win_exists == frozenset({0})
    odd = pg.ParityGame((pg.EXISTS,), ((0,),), (1,))
    assert pg.solve(odd).win_forall == frozenset({0})


def test_empty_game():
    g = pg.ParityGame((), (), ())
    sol = pg.solve(g)
    assert sol.win_exists == sol.win_forall == frozenset()
    assert pg.check_strategy(g, sol)


def _rand_game(rng, n):
    owner = tuple(rng.randint(0, 1) for _ in range(n))
    moves = tuple(tuple(sorted(rng.sample(range(n), rng.randint(0, min(2, n)))))
                  for _ in range(n))
    prio = tuple(rng.randint(0, 4) for _ in range(n))
    return pg.ParityGame(owner, moves, prio)


def test_determinacy_and_verifier_on_random_games():
    rng = random.Random(0)
    for _ in range(150):
        g = _rand_game(rng, rng.randint(1, 12))
        sol = pg.solve(g)
        assert sol.win_exists | sol.win_forall == frozenset(range(g.n))
        assert not sol.win_exists & sol.win_forall
        assert pg.check_strategy(g, sol)


def test_solver_matches_strategy_enumeration():
    rng = random.Random(1)
    for _ in range(120):
        g = _rand_game(rng, rng.randint(1, 6))
        assert pg.solve(g).win_exists == pg.solve_by_enumeration(g)


def test_sabotaged_strategy_rejected():
    rng = random.Random(2)
    found = 0
    for _ in range(200):
        g = _rand_game(rng, rng.randint(2, 8))
        sol = pg.solve(g)
        for v in sorted(sol.strategy_exists):
            alts = [t for t in g.moves[v] if t in sol.win_forall]
            if alts:
                bad = dict(sol.strategy_exists)
                bad[v] = alts[0]
                wrong = pg.Solution(sol.win_exists, sol.win_forall, bad, sol.strategy_forall)
                assert not pg.check_strategy(g, wrong)
                found += 1
                break
        if found >= 10:
            break
    assert found >= 10


def test_json_round_trip():
    g = _rand_game(random.Random(3), 5)
    assert pg.game_from_json(g.to_json()) == g
