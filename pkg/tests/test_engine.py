"""Test the round state machine of the game."""

from dataclasses import replace

import numpy as np
import pytest
from scipy import stats

from pyswbnet.const import (
    Action,
    Condition,
    Phase,
    PolicyKind,
    Reputation,
    SwbAnswer,
    TieDecision,
    TieRole,
    TieState,
)
from pyswbnet.exceptions import (
    InvalidArgument,
    InvalidConfig,
    ProtocolError,
    ReplayMismatch,
)
from pyswbnet.game import (
    GameEngine,
    SessionState,
    init_session,
    payout,
    replay_session,
    run_session,
)
from pyswbnet.harness import dump_log
from pyswbnet.metrics import gini
from pyswbnet.models import AgentPolicy, PayoffRecord, SessionConfig, TieContext
from pyswbnet.network import Network, random_network

C = Action.COOPERATE
D = Action.DEFECT


def make_engine(
    network: Network,
    wealth: list[int] | None = None,
    condition: Condition = Condition.INVISIBLE,
    seed: int = 0,
    **parameters: float,
) -> GameEngine:
    """Wrap a hand-built state in an engine."""
    config = SessionConfig(
        n_players=network.n, condition=condition, seed=seed, **parameters
    )
    state = SessionState(
        config=config,
        network=network,
        wealth=list(wealth) if wealth is not None else [1000] * network.n,
        last_action=[None] * network.n,
        last_swb=[None] * network.n,
        rng=np.random.default_rng(seed),
    )
    return GameEngine(state)


def star(leaves: int, isolated: int = 0) -> Network:
    """Return a star with center 0 plus isolated nodes."""
    return Network(1 + leaves + isolated, [(0, leaf) for leaf in range(1, leaves + 1)])


class TestInitSession:
    """Test session initialization."""

    def test_forced_wealth_gini(self) -> None:
        """Three rich and seven poor players give a Gini of 0.41134."""
        config = SessionConfig(n_players=10)
        state = init_session(config, wealth=[1150] * 3 + [200] * 7)
        assert gini(state.wealth) == pytest.approx(39900 / 97000, abs=1e-12)
        assert state.round == 0
        assert state.phase is Phase.DECIDE
        assert state.last_action == [None] * 10

    def test_all_rich(self) -> None:
        """A rich fraction of 1 gives everybody the rich endowment."""
        state = init_session(SessionConfig(rich_fraction=1.0, seed=3))
        assert state.wealth == [1150] * 13
        assert gini(state.wealth) == 0

    def test_wrong_wealth_length(self) -> None:
        """A forced endowment must cover every player."""
        with pytest.raises(InvalidArgument):
            init_session(SessionConfig(n_players=4), wealth=[200, 200])

    def test_invalid_config(self) -> None:
        """Invalid protocol parameters name the field."""
        with pytest.raises(InvalidConfig, match="rounds"):
            SessionConfig(rounds=0)
        with pytest.raises(InvalidConfig, match="rich_fraction"):
            SessionConfig(rich_fraction=1.5)

    def test_initialization_targets(self) -> None:
        """Defaults give 30% density and the Gini expected from binomial endowments."""
        densities, ginis = [], []
        for seed in range(10_000):
            state = init_session(SessionConfig(seed=seed))
            densities.append(state.network.edge_count / 78)
            ginis.append(gini(state.wealth))
        assert np.mean(densities) == pytest.approx(0.30, abs=0.01)

        # expected Gini over the binomial number of rich players
        n, rich, poor = 13, 1150, 200
        expected = sum(
            stats.binom.pmf(k, n, 0.3)
            * k * (n - k) * (rich - poor) / (n * (k * rich + (n - k) * poor))
            for k in range(n + 1)
        )
        assert np.mean(ginis) == pytest.approx(expected, abs=0.01)

    def test_large_group_gini_near_target(self) -> None:
        """For large groups the mean initial Gini approaches 0.4."""
        ginis = [
            gini(init_session(SessionConfig(n_players=200, seed=seed)).wealth)
            for seed in range(1000)
        ]
        assert np.mean(ginis) == pytest.approx(0.40, abs=0.02)


class TestPublicGoodsRound:
    """Test the payoff phase."""

    @pytest.mark.parametrize(
        ("center_action", "expected"),
        [(C, -50), (D, 200)],
    )
    def test_center_payoff(self, center_action: Action, expected: int) -> None:
        """A degree-5 player with 2 cooperating neighbors."""
        engine = make_engine(star(5))
        deltas = engine.apply_pgg_round([center_action, C, C, D, D, D])
        assert deltas[0] == expected
        assert engine.state.wealth[0] == 1000 + expected

    def test_isolated_cooperator(self) -> None:
        """An isolated cooperator neither pays nor receives."""
        engine = make_engine(star(2, isolated=1))
        deltas = engine.apply_pgg_round([C, C, C, C])
        assert deltas[3] == 0

    def test_payoff_identity(self, rng: np.random.Generator) -> None:
        """Total wealth grows by 50 per cooperator-edge endpoint."""
        for _ in range(1000):
            n = int(rng.integers(2, 14))
            network = random_network(n, float(rng.random()), rng)
            actions = [C if rng.random() < 0.5 else D for _ in range(n)]
            deltas = make_engine(network).apply_pgg_round(actions)
            cooperator_degree = sum(
                network.degree(u) for u in range(n) if actions[u] is C
            )
            assert sum(deltas) == 50 * cooperator_degree

    def test_missing_decision(self) -> None:
        """A missing decision names the player."""
        engine = make_engine(star(3))
        with pytest.raises(ProtocolError, match="player 3"):
            engine.apply_pgg_round([C, D, C])
        with pytest.raises(ProtocolError, match="player 1"):
            engine.apply_pgg_round({0: C, 2: C, 3: C})

    def test_invalid_decision(self) -> None:
        """An unknown action names the round and the player."""
        engine = make_engine(star(3))
        with pytest.raises(
            ProtocolError, match="Round 1: invalid decision 'X' for player 2"
        ):
            engine.apply_pgg_round([C, D, "X", C])
        assert engine.state.round == 0

    def test_state_advances(self) -> None:
        """The round counter and last actions are updated."""
        engine = make_engine(star(2))
        engine.apply_pgg_round([C, D, C])
        assert engine.state.round == 1
        assert engine.state.phase is Phase.RATE
        assert engine.state.last_action == [C, D, C]

    def test_wrong_phase(self) -> None:
        """Deciding twice without rating is a protocol error."""
        engine = make_engine(star(2))
        engine.apply_pgg_round([C, D, C])
        with pytest.raises(ProtocolError, match="Round 1"):
            engine.apply_pgg_round([C, D, C])


class TestSwbPhase:
    """Test the well-being phase."""

    def test_answers_map_to_levels(self) -> None:
        """Answers convert to integer levels from 2 to -2."""
        engine = make_engine(star(2))
        engine.apply_pgg_round([C, C, C])
        engine.apply_swb_phase(
            [
                (SwbAnswer.VERY_GOOD, SwbAnswer.VERY_BAD),
                (SwbAnswer.NEUTRAL, SwbAnswer.GOOD),
                (-1, 0),
            ]
        )
        assert engine.state.last_swb == [(2, -2), (0, 1), (-1, 0)]
        assert engine.state.phase is Phase.REWIRE

    def test_out_of_scale(self) -> None:
        """A rating of 3 is outside the scale."""
        engine = make_engine(star(1))
        engine.apply_pgg_round([C, C])
        with pytest.raises(InvalidArgument, match="outside"):
            engine.apply_swb_phase([(3, 0), (0, 0)])

    def test_rating_before_deciding(self) -> None:
        """Rating before the payoff phase is a protocol error."""
        engine = make_engine(star(1))
        with pytest.raises(ProtocolError):
            engine.apply_swb_phase([(0, 0), (0, 0)])


def _play_to_rewiring(engine: GameEngine, actions: list[Action]) -> None:
    engine.apply_pgg_round(actions)
    engine.apply_swb_phase([(1, 2)] * engine.state.n)


class TestRewiringPhase:
    """Test the rewiring phase."""

    def test_no_selection(self) -> None:
        """With selection probability 0 nothing happens."""
        network = Network(4, [(0, 1), (2, 3)])
        engine = make_engine(network.copy(), rewiring_pair_probability=0.0)
        _play_to_rewiring(engine, [C] * 4)
        assert engine.rewiring_phase(lambda context: False) == []
        assert engine.state.network == network

    def test_all_pairs_selected(self) -> None:
        """With selection probability 1 every pair yields one event."""
        engine = make_engine(Network(3, [(0, 1)]), rewiring_pair_probability=1.0)
        _play_to_rewiring(engine, [C, D, C])
        events = engine.rewiring_phase(lambda context: True)
        assert [event.pair for event in events] == [(0, 1), (0, 2), (1, 2)]
        assert engine.state.network.edge_count == 3
        assert events[0].decision is TieDecision.KEEP
        assert {event.decision for event in events[1:]} == {TieDecision.PROPOSE_ACCEPT}

    def test_cut_and_reject(self) -> None:
        """Unilateral cuts and rejected proposals remove or leave out ties."""
        engine = make_engine(
            Network(3, [(0, 1), (1, 2)]), rewiring_pair_probability=1.0
        )
        _play_to_rewiring(engine, [C, C, C])
        events = engine.rewiring_phase(lambda context: context.role is TieRole.PROPOSE)
        decisions = {event.pair: event.decision for event in events}
        assert decisions == {
            (0, 1): TieDecision.CUT,
            (0, 2): TieDecision.PROPOSE_REJECT,
            (1, 2): TieDecision.CUT,
        }
        assert engine.state.network.edge_count == 0

    def test_events_are_consistent(self) -> None:
        """Deciders belong to their pair and decisions match the prior state."""
        engine = make_engine(
            random_network(10, 0.4, np.random.default_rng(5)),
            rewiring_pair_probability=0.5,
            seed=5,
        )
        _play_to_rewiring(engine, [C, D] * 5)
        before = engine.state.network.copy()
        events = engine.rewiring_phase(lambda context: context.decider % 2 == 0)
        for event in events:
            assert event.decider in event.pair
            was_connected = event.pre_state is TieState.CONNECTED
            assert was_connected == before.has_edge(*event.pair)
            if event.pre_state is TieState.CONNECTED:
                assert event.decision in (TieDecision.KEEP, TieDecision.CUT)
            else:
                assert event.decision in (
                    TieDecision.PROPOSE_ACCEPT,
                    TieDecision.PROPOSE_REJECT,
                    TieDecision.NO_TIE,
                )
            assert event.connected_after == engine.state.network.has_edge(*event.pair)

    def test_selected_pair_count(self) -> None:
        """Selected pairs per round follow Binomial(78, 0.3)."""
        engine = make_engine(
            random_network(13, 0.3, np.random.default_rng(1)), rounds=10_000, seed=1
        )
        counts = []
        for _ in range(10_000):
            _play_to_rewiring(engine, [D] * 13)
            counts.append(len(engine.rewiring_phase(lambda context: True)))
        standard_error = np.sqrt(78 * 0.3 * 0.7 / len(counts))
        assert abs(np.mean(counts) - 23.4) < 3 * standard_error

    def test_callback_failure(self) -> None:
        """A failing tie decider aborts with round and phase context."""
        engine = make_engine(Network(3), rewiring_pair_probability=1.0)
        _play_to_rewiring(engine, [C, C, C])

        def broken(context: TieContext) -> bool:
            raise RuntimeError("boom")

        with pytest.raises(ProtocolError, match="Round 1, phase rewire"):
            engine.rewiring_phase(broken)

    def test_callback_library_error(self) -> None:
        """Library errors raised by a tie decider also get round and phase."""
        engine = make_engine(Network(3), rewiring_pair_probability=1.0)
        _play_to_rewiring(engine, [C, C, C])

        def strict(context: TieContext) -> bool:
            raise InvalidArgument(f"no answer for player {context.decider}")

        with pytest.raises(ProtocolError, match="Round 1, phase rewire") as err:
            engine.rewiring_phase(strict)
        assert isinstance(err.value.__cause__, InvalidArgument)

    def test_round_closes(self) -> None:
        """The last rewiring phase finishes the session."""
        engine = make_engine(Network(2), rounds=1)
        _play_to_rewiring(engine, [C, C])
        engine.rewiring_phase(lambda context: False)
        assert engine.state.phase is Phase.FINISHED
        with pytest.raises(ProtocolError):
            engine.apply_pgg_round([C, C])


class TestVisibility:
    """Test what players see of their peers."""

    def test_invisible_hides_emoji(self) -> None:
        """No emoji is shown in the invisible condition."""
        engine = make_engine(star(2), condition=Condition.INVISIBLE)
        _play_to_rewiring(engine, [C, D, C])
        views = engine.visibility_view(0)
        assert [view.peer for view in views] == [1, 2]
        assert all(view.swb_emoji is None for view in views)
        assert [view.reputation for view in views] == [
            Reputation.DEFECT,
            Reputation.COOPERATE,
        ]

    def test_visible_shows_second_answer(self) -> None:
        """The visible emoji is the answer to the second question."""
        engine = make_engine(star(2), condition=Condition.VISIBLE)
        _play_to_rewiring(engine, [C, D, C])
        views = engine.visibility_view(0)
        assert [view.swb_emoji for view in views] == [2, 2]
        assert [view.wealth for view in views] == engine.state.wealth[1:]

    def test_round_one_reputation_unknown(self) -> None:
        """Before any decision the reputation is unknown."""
        engine = make_engine(star(1), condition=Condition.VISIBLE)
        (view,) = engine.visibility_view(0)
        assert view.reputation is Reputation.UNKNOWN
        assert view.swb_emoji is None

    def test_isolated_viewer(self) -> None:
        """A player without neighbors sees nobody."""
        engine = make_engine(star(1, isolated=1))
        assert engine.visibility_view(2) == []
        with pytest.raises(InvalidArgument):
            engine.visibility_view(3)

    def test_invisible_session_never_shows_emoji(self) -> None:
        """No view of a whole invisible session carries an emoji."""
        engine = make_engine(
            random_network(8, 0.5, np.random.default_rng(3)), rounds=5, seed=3
        )
        contexts: list[TieContext] = []
        while engine.state.phase is not Phase.FINISHED:
            assert all(
                view.swb_emoji is None
                for player in range(8)
                for view in engine.visibility_view(player)
            )
            _play_to_rewiring(engine, [C, D, C, D, C, D, C, D])
            engine.rewiring_phase(lambda context: contexts.append(context) or True)
        assert contexts
        assert all(context.partner.swb_emoji is None for context in contexts)


class TestSession:
    """Test whole sessions."""

    @pytest.mark.parametrize(
        ("kind", "change"),
        [(PolicyKind.ALWAYS_DEFECT, 0), (PolicyKind.ALWAYS_COOPERATE, 50)],
    )
    def test_two_player_session(self, kind: PolicyKind, change: int) -> None:
        """Two connected players over one round."""
        config = SessionConfig(n_players=2, rounds=1, initial_density=1.0, seed=4)
        log = run_session(config, AgentPolicy(kind=kind))
        initial = log.header.initial_wealth
        assert log.final_wealth == [wealth + change for wealth in initial]

    def test_determinism(self, session_config: SessionConfig) -> None:
        """The same config and seed give byte-identical logs."""
        policy = AgentPolicy()
        assert dump_log(run_session(session_config, policy)) == dump_log(
            run_session(session_config, policy)
        )

    def test_different_seed_differs(self, session_config: SessionConfig) -> None:
        """Another seed gives another log."""
        policy = AgentPolicy()
        other = replace(session_config, seed=session_config.seed + 1)
        assert dump_log(run_session(session_config, policy)) != dump_log(
            run_session(other, policy)
        )

    def test_log_is_complete(self, session_config: SessionConfig) -> None:
        """Every phase of every round is logged."""
        log = run_session(session_config, AgentPolicy(), "visible-000")
        n, rounds = session_config.n_players, session_config.rounds
        assert len(log.decisions) == len(log.payoffs) == len(log.ratings) == n * rounds
        assert [record.round for record in log.snapshots] == list(range(rounds + 1))
        assert len(log.payouts) == n
        assert log.network_id == "visible-000"

    @pytest.mark.parametrize(
        ("points", "usd"), [(2000, 1.0), (1558, 0.779), (-100, 0.0)]
    )
    def test_payout(self, points: int, usd: float) -> None:
        """Points convert to USD, negative wealth pays nothing."""
        assert payout(points) == pytest.approx(usd)


class TestReplay:
    """Test replaying logs through the engine."""

    def test_replay_reproduces_final_state(self) -> None:
        """Replay ends with the logged wealth and network."""
        config = SessionConfig(condition=Condition.VISIBLE, seed=8)
        log = run_session(config, AgentPolicy())
        state = replay_session(log)
        assert state.wealth == log.final_wealth
        assert state.network.edges == log.snapshot(config.rounds).edges
        assert state.phase is Phase.FINISHED

    def test_tampered_payoff(self, session_config: SessionConfig) -> None:
        """A changed wealth value is detected."""
        log = run_session(session_config, AgentPolicy())
        record = log.payoffs[3]
        log.payoffs[3] = PayoffRecord(
            round=record.round,
            player=record.player,
            delta=record.delta + 1,
            wealth=record.wealth + 1,
        )
        with pytest.raises(ReplayMismatch, match="Round 1"):
            replay_session(log)

    def test_missing_snapshot(self, session_config: SessionConfig) -> None:
        """A log without its initial network cannot be replayed."""
        log = run_session(session_config, AgentPolicy())
        log.snapshots.pop(0)
        with pytest.raises(ReplayMismatch):
            replay_session(log)
