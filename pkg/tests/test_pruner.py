import numpy as np
import pytest

from prunerep import (
    DomainError,
    EmptySequence,
    OracleFailure,
    PrunedSet,
    PrunerState,
    Schedule,
    ShortestPathOracle,
    SolveOutcome,
    pruner_step,
    run_trial,
    run_trial_detailed,
    summarize,
)
from prunerep.generators import tight_construction


def tight_setup(k=5, rounds=20, seed=3):
    rng = np.random.default_rng(seed)
    graph, seq = tight_construction(k, rounds, rng)
    return ShortestPathOracle(graph), seq


class TestDeterminism:
    def test_same_seed_same_records(self):
        oracle, seq = tight_setup()
        a = run_trial(oracle, seq, Schedule.constant(0.4), np.random.SeedSequence(12))
        b = run_trial(oracle, seq, Schedule.constant(0.4), np.random.SeedSequence(12))
        assert a == b

    def test_different_seed_differs(self):
        oracle, seq = tight_setup()
        a = run_trial(oracle, seq, Schedule.constant(0.4), np.random.SeedSequence(12))
        b = run_trial(oracle, seq, Schedule.constant(0.4), np.random.SeedSequence(13))
        assert a != b


class TestAlwaysExplore:
    def test_no_mistakes_and_full_witness_union(self):
        oracle, seq = tight_setup(k=4, rounds=30)
        detail = run_trial_detailed(oracle, seq, Schedule.constant(1.0), np.random.SeedSequence(7))
        assert all(r.explored for r in detail.records)
        assert not any(r.mistake for r in detail.records)
        # every round's zero edge ends up in the union
        zero_edges = {int(np.argmin(w.values)) for w in seq}
        assert set(detail.final_pruned.members) == zero_edges

    def test_explore_records_look_right(self):
        oracle, seq = tight_setup(k=4)
        records = run_trial(oracle, seq, Schedule.constant(1.0), np.random.SeedSequence(7))
        for r in records:
            assert r.set_size == oracle.universe_size
            assert r.witness_size == 1


class TestMonotonicity:
    def test_pruned_set_only_grows(self):
        oracle, seq = tight_setup(k=6, rounds=40)
        state = PrunerState.fresh(oracle.universe_size, Schedule.constant(0.5), 5)
        previous = state.pruned
        for inst in seq:
            pruner_step(state, inst, oracle)
            assert state.pruned.issuperset(previous)
            previous = state.pruned

    def test_exploit_never_changes_set(self):
        oracle, seq = tight_setup(k=6, rounds=40)
        state = PrunerState.fresh(oracle.universe_size, Schedule.constant(0.5), 5)
        for inst in seq:
            before = state.pruned
            _, record, _ = pruner_step(state, inst, oracle)
            if not record.explored:
                assert state.pruned == before


class TestMistakeSemantics:
    def test_mistake_iff_exploit_output_differs(self):
        oracle, seq = tight_setup(k=5, rounds=50, seed=11)
        state = PrunerState.fresh(oracle.universe_size, Schedule.constant(0.3), 9)
        for inst in seq:
            used = state.pruned
            output, record, _ = pruner_step(state, inst, oracle)
            full = oracle.solve(inst)
            if record.explored:
                assert not record.mistake
                assert oracle.equal(output, full.solution)
            else:
                restricted = oracle.solve(inst, used)
                assert oracle.equal(output, restricted.solution)
                assert record.mistake == (not oracle.equal(output, full.solution))

    def test_first_round_exploit_on_empty_set_is_a_mistake(self):
        oracle, seq = tight_setup(k=3)
        state = PrunerState.fresh(oracle.universe_size, Schedule.custom([0.001] * 5), 1)
        # probability 0.001 practically never explores round 1
        output, record, _ = pruner_step(state, seq[0], oracle)
        if not record.explored:
            assert output is None
            assert record.mistake
            assert record.set_size == 0


class TestRecords:
    def test_exactly_one_record_per_round(self):
        oracle, seq = tight_setup(rounds=17)
        records = run_trial(oracle, seq, Schedule.inverse_sqrt(), np.random.SeedSequence(0))
        assert len(records) == 17
        assert [r.round for r in records] == list(range(1, 18))

    def test_witness_size_only_on_explore(self):
        oracle, seq = tight_setup(rounds=60)
        records = run_trial(oracle, seq, Schedule.constant(0.5), np.random.SeedSequence(2))
        for r in records:
            assert (r.witness_size is not None) == r.explored

    def test_empty_sequence_rejected(self):
        oracle, _ = tight_setup()
        with pytest.raises(EmptySequence):
            run_trial(oracle, [], Schedule.constant(0.5), np.random.SeedSequence(0))


class TestOracleFailurePropagation:
    class FlakyOracle:
        """Duck-typed oracle that rejects its third instance."""

        universe_size = 4

        def __init__(self):
            self.calls = 0

        def solve(self, instance, allowed=None):
            if instance == "bad":
                raise DomainError("instance rejected")
            return SolveOutcome(
                solution=0,
                witness=PrunedSet.of([0], 4) if allowed is None else None,
                work=1,
            )

        def equal(self, a, b):
            return a == b

    def test_round_index_attached(self):
        oracle = self.FlakyOracle()
        with pytest.raises(OracleFailure) as err:
            run_trial(oracle, ["ok", "ok", "bad"], Schedule.constant(1.0), np.random.SeedSequence(1))
        assert err.value.round_index == 3

    def test_round_not_consumed_on_failure(self):
        oracle = self.FlakyOracle()
        state = PrunerState.fresh(4, Schedule.constant(1.0), 0)
        pruner_step(state, "ok", oracle)
        assert state.round == 2  # next round to run
        with pytest.raises(OracleFailure):
            pruner_step(state, "bad", oracle)
        assert state.round == 2  # the failed round stays pending
        assert len(state.history) == 1


class TestSummarize:
    def test_recount_matches_records(self):
        oracle, seq = tight_setup(k=5, rounds=40)
        records = run_trial(oracle, seq, Schedule.constant(0.3), np.random.SeedSequence(8))
        summary = summarize(records, s_star_size=5, universe_size=5)
        assert summary.total_mistakes == sum(1 for r in records if r.mistake)
        assert summary.mistake_fraction == pytest.approx(summary.total_mistakes / 40)
        assert summary.mean_work == pytest.approx(sum(r.work for r in records) / 40)
        exploit = [r.set_size for r in records if not r.explored]
        assert summary.mean_exploit_set_size == pytest.approx(sum(exploit) / len(exploit))

    def test_all_explore_summary(self):
        oracle, seq = tight_setup(k=3, rounds=10)
        records = run_trial(oracle, seq, Schedule.constant(1.0), np.random.SeedSequence(8))
        summary = summarize(records, s_star_size=None, universe_size=3)
        assert summary.mistake_fraction == 0.0
        assert summary.mean_set_size == 3.0
        assert summary.mean_exploit_set_size == 0.0
        assert summary.s_star_size is None

    def test_empty_records_rejected(self):
        with pytest.raises(EmptySequence):
            summarize([], s_star_size=1, universe_size=2)
