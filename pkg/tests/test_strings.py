import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prunerep import (
    DNA,
    BotWitness,
    MalformedInstance,
    PrunedSet,
    SearchInstance,
    StringSearchOracle,
    load_stream,
    match_full,
    match_restricted,
    search_witness,
    write_stream,
)
from prunerep.reference import full_scan_match
from prunerep.verify import check_string_assumption, check_string_oracle


class TestMatchFull:
    def test_first_occurrence_and_work(self):
        inst = SearchInstance(text="ACGTACGT", pattern="GTA")
        # candidates 1..6; the scan stops at position 3
        assert match_full(inst) == (3, 3)

    def test_match_at_position_one(self):
        assert match_full(SearchInstance(text="AAAA", pattern="AA")) == (1, 1)

    def test_match_at_last_candidate(self):
        inst = SearchInstance(text="CCCA", pattern="A")
        assert match_full(inst) == (4, 4)

    def test_no_match_scans_everything(self):
        inst = SearchInstance(text="ACGTACGT", pattern="TTT")
        assert match_full(inst) == (None, 6)


class TestMatchRestricted:
    def test_subset_skips_earlier_match(self):
        inst = SearchInstance(text="ACGTACGT", pattern="ACG")
        # full answer is position 1; ids {4, 5} allow only positions 5 and 6
        allowed = PrunedSet.of([4, 5], inst.universe_size)
        assert match_restricted(inst, allowed) == (5, 1)

    def test_one_based_iterable_means_positions(self):
        inst = SearchInstance(text="ACGTACGT", pattern="ACG")
        assert match_restricted(inst, [5, 6]) == (5, 1)
        with pytest.raises(MalformedInstance):
            match_restricted(inst, [0])

    def test_empty_set_is_bottom_for_free(self):
        inst = SearchInstance(text="ACGTACGT", pattern="ACG")
        allowed = PrunedSet.empty(inst.universe_size)
        assert match_restricted(inst, allowed) == (None, 0)

    def test_work_counts_only_allowed_positions(self):
        inst = SearchInstance(text="ACGTACGT", pattern="GTA")
        # ids {0, 2, 5}: tries position 1 (miss), then 3 (hit)
        allowed = PrunedSet.of([0, 2, 5], inst.universe_size)
        assert match_restricted(inst, allowed) == (3, 2)

    def test_universe_mismatch_rejected(self):
        inst = SearchInstance(text="ACGTACGT", pattern="GTA")
        with pytest.raises(MalformedInstance):
            match_restricted(inst, PrunedSet.empty(3))


class TestWitness:
    def test_witness_is_the_match_position(self):
        # position 3 stores as id 2
        assert sorted(search_witness(3, 6)) == [2]

    def test_bottom_has_no_witness(self):
        with pytest.raises(BotWitness):
            search_witness(None, 6)


class TestOracle:
    def test_shapes_are_enforced(self):
        oracle = StringSearchOracle(text_length=8, pattern_length=3)
        with pytest.raises(MalformedInstance):
            oracle.solve(SearchInstance(text="ACGT", pattern="GTA"))
        with pytest.raises(MalformedInstance):
            oracle.solve(SearchInstance(text="ACGTACGT", pattern="GT"))

    def test_full_solve_produces_witness(self):
        oracle = StringSearchOracle(text_length=8, pattern_length=3)
        out = oracle.solve(SearchInstance(text="ACGTACGT", pattern="GTA"))
        assert out.solution == 3
        assert sorted(out.witness) == [2]
        assert out.work == 3

    def test_bottom_propagates_through_restriction(self):
        # no-match full answer stays no-match on every subset
        oracle = StringSearchOracle(text_length=8, pattern_length=3)
        inst = SearchInstance(text="ACGTACGT", pattern="TTT")
        full = oracle.solve(inst)
        assert full.solution is None
        for members in ([], [0], [0, 3, 5], range(6)):
            allowed = PrunedSet.of(members, oracle.universe_size)
            assert oracle.solve(inst, allowed).solution is None

    def test_equality_is_exact(self):
        oracle = StringSearchOracle(text_length=8, pattern_length=3)
        assert oracle.equal(None, None)
        assert oracle.equal(4, 4)
        assert not oracle.equal(4, 5)
        assert not oracle.equal(None, 4)


class TestReferenceAgreement:
    def test_kernel_matches_full_scan(self):
        result = check_string_oracle(seed=20260805, cases=400)
        assert result.passed, result.detail

    def test_witness_iff_holds_exhaustively(self):
        result = check_string_assumption(seed=20260806, instances=20)
        assert result.passed, result.detail


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_restricted_matches_reference_on_random_subsets(data):
    n = data.draw(st.integers(4, 14), label="text_length")
    m = data.draw(st.integers(1, min(4, n)), label="pattern_length")
    text = data.draw(st.text(alphabet=list(DNA), min_size=n, max_size=n), label="text")
    pattern = data.draw(
        st.text(alphabet=list(DNA), min_size=m, max_size=m), label="pattern"
    )
    inst = SearchInstance(text=text, pattern=pattern)
    u = inst.universe_size
    members = data.draw(
        st.sets(st.integers(0, u - 1), max_size=u), label="allowed_ids"
    )
    allowed = PrunedSet.of(members, u)
    got = match_restricted(inst, allowed)
    want = full_scan_match(inst, positions=[j + 1 for j in sorted(members)])
    assert got == want
    assert match_full(inst) == full_scan_match(inst)


class TestStreamFiles:
    def test_round_trip(self, tmp_path):
        instances = [
            SearchInstance(text="ACGTACGT", pattern="GTA"),
            SearchInstance(text="TTTTACGT", pattern="ACG"),
        ]
        p = tmp_path / "stream.txt"
        write_stream(instances, p)
        again = load_stream(p)
        assert [(i.text, i.pattern) for i in again] == [
            (i.text, i.pattern) for i in instances
        ]

    def test_empty_stream_refused(self, tmp_path):
        with pytest.raises(MalformedInstance):
            write_stream([], tmp_path / "empty.txt")

    @pytest.mark.parametrize(
        "content",
        [
            "",
            "ACGT\n",  # alphabet only
            "ACGT\nACGTACGT\n",  # text without its pattern
            "ACGT\nACGTACGT\nGTA\nACGT\nGT\n",  # shape changes mid-stream
            "ACGT\nACGTACGT\nGTX\n",  # character outside the alphabet
        ],
    )
    def test_malformed_stream_rejected(self, tmp_path, content):
        p = tmp_path / "bad.txt"
        p.write_text(content)
        with pytest.raises(MalformedInstance):
            load_stream(p)


class TestInstanceValidation:
    def test_pattern_longer_than_text(self):
        with pytest.raises(MalformedInstance):
            SearchInstance(text="ACG", pattern="ACGT")

    def test_empty_pattern(self):
        with pytest.raises(MalformedInstance):
            SearchInstance(text="ACG", pattern="")

    def test_stray_characters(self):
        with pytest.raises(MalformedInstance):
            SearchInstance(text="ACGZ", pattern="AC")
