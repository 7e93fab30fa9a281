import math

import pytest

from prunerep import DomainError, Schedule


class TestConstant:
    def test_every_round_same(self):
        s = Schedule.constant(0.3)
        assert [s.probability(i) for i in (1, 2, 10, 999)] == [0.3] * 4

    def test_rejects_out_of_range(self):
        for bad in (0.0, -0.1, 1.0001, float("nan")):
            with pytest.raises(DomainError):
                Schedule.constant(bad)

    def test_one_is_allowed(self):
        assert Schedule.constant(1.0).probability(5) == 1.0


class TestInverseSqrt:
    def test_first_round_exactly_one(self):
        assert Schedule.inverse_sqrt().probability(1) == 1.0

    def test_formula(self):
        s = Schedule.inverse_sqrt()
        for i in (2, 3, 9, 100):
            assert s.probability(i) == 1.0 / math.sqrt(i)

    def test_rejects_round_zero(self):
        with pytest.raises(DomainError):
            Schedule.inverse_sqrt().probability(0)


class TestCustom:
    def test_uses_given_values(self):
        s = Schedule.custom([1.0, 0.5, 0.25])
        assert s.probability(2) == 0.5

    def test_beyond_length_raises(self):
        with pytest.raises(DomainError):
            Schedule.custom([1.0, 0.5]).probability(3)

    def test_rejects_empty_and_bad_values(self):
        with pytest.raises(DomainError):
            Schedule.custom([])
        with pytest.raises(DomainError):
            Schedule.custom([0.5, 0.0])


class TestAggregates:
    def test_prob_sum_constant(self):
        assert Schedule.constant(0.25).prob_sum(8) == pytest.approx(2.0)

    def test_prob_sum_inverse_sqrt(self):
        want = sum(1.0 / math.sqrt(i) for i in range(1, 11))
        assert Schedule.inverse_sqrt().prob_sum(10) == pytest.approx(want)

    def test_min_probability(self):
        assert Schedule.inverse_sqrt().min_probability(9) == pytest.approx(1.0 / 3.0)
        assert Schedule.custom([0.7, 0.2, 0.4]).min_probability(2) == 0.2


class TestSerialization:
    @pytest.mark.parametrize(
        "schedule",
        [
            Schedule.constant(0.42),
            Schedule.inverse_sqrt(),
            Schedule.custom([1.0, 0.125, 0.5]),
        ],
    )
    def test_json_round_trip(self, schedule):
        assert Schedule.from_json(schedule.to_json()) == schedule

    def test_parse_spellings(self):
        assert Schedule.parse("invsqrt") == Schedule.inverse_sqrt()
        assert Schedule.parse("const:0.5") == Schedule.constant(0.5)
        assert Schedule.parse("custom:1,0.5,0.25") == Schedule.custom([1.0, 0.5, 0.25])

    def test_parse_rejects_garbage(self):
        for bad in ("", "const:", "const:2", "linear:0.5"):
            with pytest.raises(DomainError):
                Schedule.parse(bad)

    def test_labels_distinguish(self):
        labels = {
            Schedule.constant(0.5).label(),
            Schedule.inverse_sqrt().label(),
            Schedule.custom([0.5]).label(),
        }
        assert len(labels) == 3
