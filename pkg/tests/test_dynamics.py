"""Best-response dynamics: convergence, scenarios, seeded experiments."""

import math

import numpy as np
import pytest

from prorata import (
    BoundedUpdate,
    Budgeted,
    CfmmArbitragePayoff,
    GameConfig,
    StrategyProfile,
    Unconstrained,
    convergence_study,
    diagnostics,
    draw_initial_profile,
    pro_rata_payoff,
    simulate,
    solve_symmetric,
    whale_fish_experiment,
)

CFMM = CfmmArbitragePayoff(gamma=0.99, r1=200.0, r2=250.0, c=1.0)


# ------------------------------------------------------------- config


def test_config_validation(cfmm):
    with pytest.raises(ValueError):
        GameConfig(family=cfmm, n=0)
    with pytest.raises(ValueError):
        GameConfig(family=cfmm, n=2, convergence_threshold=0.0)
    with pytest.raises(ValueError):
        GameConfig(family=cfmm, n=2, update_order="diagonal")
    with pytest.raises(ValueError):
        GameConfig(family=cfmm, n=3, scenario=Budgeted(budgets=(1.0, 2.0)))
    with pytest.raises(ValueError):
        BoundedUpdate(delta=0.0)
    with pytest.raises(ValueError):
        Budgeted(budgets=(1.0, -2.0))


def test_profile_is_immutable_and_validated():
    p = StrategyProfile(np.array([1.0, 2.0]))
    assert p.total == 3.0
    with pytest.raises(ValueError):
        p.actions[0] = 5.0
    with pytest.raises(ValueError):
        StrategyProfile(np.array([-1.0, 2.0]))
    with pytest.raises(ValueError):
        StrategyProfile(np.array([[1.0], [2.0]]))


def test_profile_payoffs_match_allocation_rule(cfmm):
    p = StrategyProfile(np.array([4.0, 6.0, 0.0]))
    got = p.payoffs(cfmm)
    want = [pro_rata_payoff(cfmm, x, 10.0 - x) for x in (4.0, 6.0, 0.0)]
    assert np.allclose(got, want, rtol=1e-15)


# ----------------------------------------------------------- simulate


def test_two_player_run_converges(cfmm):
    trace = simulate(GameConfig(family=cfmm, n=2, seed=1))
    assert trace.stop_reason == "converged"
    assert trace.converged_at is not None
    eq = trace.equilibrium
    final = trace.profiles[-1].actions
    assert np.max(np.abs(final - eq.per_player)) < 0.1
    assert trace.history().shape == (len(trace.profiles), 2)
    assert np.allclose(trace.final_payoffs, trace.profiles[-1].payoffs(cfmm))


def test_starting_at_equilibrium_counts_zero_rounds(cfmm):
    eq = solve_symmetric(cfmm, 3)
    trace = simulate(
        GameConfig(family=cfmm, n=3), initial=np.full(3, eq.per_player)
    )
    assert trace.converged_at == 0
    assert len(trace.profiles) == 1


def test_lone_player_jumps_to_argmax(cfmm):
    trace = simulate(GameConfig(family=cfmm, n=1), initial=[1.0])
    assert trace.converged_at == 1
    assert trace.profiles[-1].actions[0] == pytest.approx(
        diagnostics(cfmm).argmax, rel=1e-8
    )


def test_same_seed_reruns_are_bit_identical(cfmm):
    config = GameConfig(family=cfmm, n=4, seed=7)
    h1 = simulate(config).history()
    h2 = simulate(config).history()
    assert h1.shape == h2.shape
    assert np.array_equal(h1, h2)


def test_multi_start_runs_agree_on_the_rest_point(cfmm):
    # 20 random starts, one shared attractor
    eq = solve_symmetric(cfmm, 5)
    finals = []
    for seed in range(20):
        trace = simulate(GameConfig(family=cfmm, n=5, seed=seed))
        assert trace.stop_reason == "converged"
        finals.append(trace.profiles[-1].actions)
    assert all(np.max(np.abs(f - eq.per_player)) < 0.1 for f in finals)


def test_initial_profile_scale(cfmm):
    w = diagnostics(cfmm).root
    for n in (1, 3, 10):
        x0 = draw_initial_profile(cfmm, n, np.random.default_rng(0))
        assert x0.shape == (n,)
        assert np.all(x0 > 0.0) and np.all(x0 < w / n)


def test_bad_initial_profiles_rejected(cfmm):
    with pytest.raises(ValueError):
        simulate(GameConfig(family=cfmm, n=2), initial=[1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        simulate(GameConfig(family=cfmm, n=2), initial=[-1.0, 2.0])


def test_synchronous_order_is_available_and_unstable_for_crowds(cfmm):
    # two players flip-flop but settle; eight never do — the round map's
    # eigenvalue (n-1)*BR' leaves the unit disk around n = 4
    ok = simulate(GameConfig(family=cfmm, n=2, seed=0, update_order="synchronous"))
    assert ok.stop_reason == "converged"
    stuck = simulate(
        GameConfig(
            family=cfmm, n=8, seed=0, update_order="synchronous", max_iterations=500
        )
    )
    assert stuck.stop_reason == "iteration-cap"


# ---------------------------------------------------------- scenarios


def test_bounded_updates_respect_the_cap(cfmm):
    delta = 0.7
    trace = simulate(
        GameConfig(family=cfmm, n=3, seed=2, scenario=BoundedUpdate(delta=delta))
    )
    h = trace.history()
    assert np.max(np.abs(np.diff(h, axis=0))) <= delta + 1e-12
    assert trace.stop_reason == "converged"


def test_budgets_are_hard_caps(cfmm):
    budgets = (5.0, 7.0, math.inf)
    trace = simulate(
        GameConfig(family=cfmm, n=3, seed=3, scenario=Budgeted(budgets=budgets))
    )
    h = trace.history()[1:]  # the random start is not budget-projected
    assert np.all(h <= np.array([5.0, 7.0, np.inf]) + 1e-12)


def test_zero_budgets_leave_one_player_alone(cfmm):
    # everyone else pinned at zero: the free player walks to argmax f
    trace = simulate(
        GameConfig(
            family=cfmm,
            n=3,
            scenario=Budgeted(budgets=(math.inf, 0.0, 0.0)),
            max_iterations=3,
        ),
        initial=[1.0, 0.0, 0.0],
    )
    final = trace.profiles[-1].actions
    assert final[0] == pytest.approx(diagnostics(cfmm).argmax, rel=1e-8)
    assert final[1] == final[2] == 0.0


# -------------------------------------------------------- experiments


def test_convergence_study_shape_and_reproducibility(cfmm):
    a = convergence_study(cfmm, n_values=(2, 3), trials=4, seed=11)
    b = convergence_study(cfmm, n_values=(2, 3), trials=4, seed=11)
    assert a == b
    assert len(a.records) == 8
    assert set(a.mean_iterations()) == {2, 3}
    assert a.non_converged() == {}


def test_study_subsets_reproduce_exactly(cfmm):
    # trial (n, k) is seeded by [seed, n, k]: slicing the grid changes nothing
    full = convergence_study(cfmm, n_values=(2, 3, 4), trials=3, seed=5)
    part = convergence_study(cfmm, n_values=(3,), trials=3, seed=5)
    assert part.records == tuple(r for r in full.records if r.n == 3)


def test_whale_fish_frozen_point(cfmm):
    rep = whale_fish_experiment(cfmm, n_fish=1, trials=5, seed=0)
    assert rep.whale_strategy == pytest.approx(17.43277886525688, rel=1e-12)
    assert rep.whale_profit == pytest.approx(1.4453501716112847, rel=1e-12)
    assert rep.pct_strategy_increase == pytest.approx(11.608336978976078, rel=1e-12)
    assert rep.pct_profit_increase == pytest.approx(28.935181994113258, rel=1e-12)
    assert rep.converged_trials == 5
    assert rep.fish_saturated_trials == 5


def test_whale_outplays_the_symmetric_split(cfmm):
    rep = whale_fish_experiment(cfmm, n_fish=4, trials=10, seed=1)
    eq = solve_symmetric(cfmm, 5)
    assert rep.fair_strategy == pytest.approx(eq.per_player, rel=1e-12)
    assert rep.fair_payoff == pytest.approx(eq.equilibrium_payoff, rel=1e-12)
    assert rep.whale_strategy > rep.fair_strategy
    assert rep.whale_profit > rep.fair_payoff
    assert rep.pct_strategy_increase > 0.0
    assert rep.pct_profit_increase > 0.0
