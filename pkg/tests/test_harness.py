import csv
import json
import math

import numpy as np
import pytest

from prunerep import ConfigError, IoError, Schedule
from prunerep.core.bounds import mistake_bound, tight_construction_expectations
from prunerep.generators import synth_search_sequence
from prunerep.harness import (
    CSV_COLUMNS,
    ExperimentConfig,
    build_problem,
    effective_workers,
    run_experiment,
)
from prunerep.lp import write_lp, write_objectives
from prunerep.strings import write_stream


def tight_config(**overrides):
    base = dict(
        domain="shortest-path",
        generator="tight",
        params={"k": 4},
        rounds=10,
        trials=12,
        schedule=Schedule.constant(0.5),
        root_seed=7,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfig:
    def test_json_round_trip(self):
        config = tight_config(csv_path="x.csv", parallelism=3)
        again = ExperimentConfig.from_json(config.to_json())
        assert again == config
        # and through an actual json encoder
        again2 = ExperimentConfig.from_json(json.loads(json.dumps(config.to_json())))
        assert again2 == config

    def test_unknown_domain_rejected(self):
        with pytest.raises(ConfigError):
            tight_config(domain="sorting")

    def test_unknown_generator_rejected(self):
        with pytest.raises(ConfigError):
            tight_config(generator="torus")

    def test_nonpositive_counts_rejected(self):
        with pytest.raises(ConfigError):
            tight_config(rounds=0)
        with pytest.raises(ConfigError):
            tight_config(trials=0)
        with pytest.raises(ConfigError):
            tight_config(parallelism=0)

    def test_missing_required_param_rejected(self):
        config = tight_config(params={})
        with pytest.raises(ConfigError):
            build_problem(config)

    def test_unknown_param_rejected(self):
        config = tight_config(params={"k": 4, "frobnicate": 1})
        with pytest.raises(ConfigError):
            build_problem(config)


class TestRunExperiment:
    def test_row_counts_and_order(self, tmp_path):
        p = tmp_path / "rounds.csv"
        config = tight_config(csv_path=str(p))
        result = run_experiment(config)
        assert len(result.trials) == 12
        with open(p) as fh:
            rows = list(csv.reader(fh))
        assert tuple(rows[0]) == CSV_COLUMNS
        body = rows[1:]
        assert len(body) == 12 * 10
        keys = [(int(r[0]), int(r[1])) for r in body]
        assert keys == sorted(keys)
        assert {int(r[1]) for r in body} == set(range(1, 11))

    def test_csv_cell_conventions(self, tmp_path):
        p = tmp_path / "rounds.csv"
        run_experiment(tight_config(csv_path=str(p)))
        with open(p) as fh:
            body = list(csv.DictReader(fh))
        for row in body:
            assert row["explored"] in ("0", "1")
            assert row["mistake"] in ("0", "1")
            if row["explored"] == "1":
                assert row["witness_size"] != ""
                assert row["mistake"] == "0"
            else:
                assert row["witness_size"] == ""

    def test_csv_recount_matches_summary(self, tmp_path):
        p = tmp_path / "rounds.csv"
        result = run_experiment(tight_config(csv_path=str(p)))
        with open(p) as fh:
            body = list(csv.DictReader(fh))
        recount = sum(int(r["mistake"]) for r in body)
        assert recount == result.summary["mistakes"]["total"]
        frac = recount / len(body)
        assert result.summary["mistakes"]["fraction"] == pytest.approx(frac)

    def test_json_summary_written(self, tmp_path):
        p = tmp_path / "summary.json"
        result = run_experiment(tight_config(json_path=str(p)))
        on_disk = json.loads(p.read_text())
        assert on_disk == json.loads(json.dumps(result.summary))

    def test_single_round_single_trial_explores(self):
        config = tight_config(rounds=1, trials=1, schedule=Schedule.constant(1.0))
        result = run_experiment(config)
        (td,) = result.trials
        (record,) = td.records
        assert record.explored
        assert not record.mistake
        assert record.set_size == 4

    def test_summary_is_deterministic(self):
        a = run_experiment(tight_config())
        b = run_experiment(tight_config())
        assert a.summary == b.summary


class TestParallelism:
    def test_worker_count_does_not_change_results(self, tmp_path):
        p1 = tmp_path / "w1.csv"
        p4 = tmp_path / "w4.csv"
        run_experiment(tight_config(csv_path=str(p1), parallelism=1))
        run_experiment(tight_config(csv_path=str(p4), parallelism=4))
        assert p1.read_bytes() == p4.read_bytes()

    def test_env_override(self, monkeypatch):
        config = tight_config(parallelism=2)
        assert effective_workers(config) == 2
        monkeypatch.setenv("PRUNEREP_WORKERS", "5")
        assert effective_workers(config) == 5
        monkeypatch.setenv("PRUNEREP_WORKERS", "zero")
        with pytest.raises(ConfigError):
            effective_workers(config)
        monkeypatch.setenv("PRUNEREP_WORKERS", "0")
        with pytest.raises(ConfigError):
            effective_workers(config)


class TestTightAgainstClosedForms:
    def test_summary_lines_up_with_expectations(self):
        k, p, T, n = 4, 0.5, 10, 400
        config = tight_config(
            params={"k": k},
            rounds=T,
            trials=n,
            schedule=Schedule.constant(p),
            root_seed=11,
            parallelism=4,
        )
        result = run_experiment(config)
        s = result.summary
        es, em = tight_construction_expectations(k, p, T)
        assert s["bounds"]["tight_expected_s_star"] == pytest.approx(es)
        assert s["bounds"]["tight_expected_mistakes"] == pytest.approx(em)

        mean_mistakes = s["mistakes"]["per_trial_mean"]
        stderr = s["mistakes"]["per_trial_stderr"]
        assert abs(mean_mistakes - em) < 3 * stderr

        s_star_mean = s["s_star"]["mean"]
        assert abs(s_star_mean - es) < 3 * s["s_star"]["stderr"]

        # the realized mean stays under the closed-form guarantee
        bound = mistake_bound(s_star_mean, Schedule.constant(p), T)
        assert mean_mistakes <= bound + 3 * stderr


class TestFileBackedProblems:
    def test_lp_file_base_plus_sigma(self, tmp_path):
        from prunerep.generators import synth_auction_lp

        rng = np.random.default_rng(3)
        program, base = synth_auction_lp(2, 3, 2, rng)
        lp_path = tmp_path / "prog.lp"
        obj_path = tmp_path / "objs.txt"
        write_lp(program, lp_path)
        write_objectives([base], obj_path)
        config = ExperimentConfig(
            domain="lp",
            generator="lp-file",
            params={"path": str(lp_path), "objectives_path": str(obj_path), "sigma": 0.3},
            rounds=5,
            trials=3,
            schedule=Schedule.constant(0.5),
            root_seed=1,
        )
        result = run_experiment(config)
        assert len(result.trials) == 3

    def test_lp_file_fixed_sequence(self, tmp_path):
        from prunerep.generators import objective_sequence, synth_auction_lp

        rng = np.random.default_rng(4)
        program, base = synth_auction_lp(2, 3, 2, rng)
        objs = objective_sequence(program, base, 0.3, 4, rng)
        lp_path = tmp_path / "prog.lp"
        obj_path = tmp_path / "objs.txt"
        write_lp(program, lp_path)
        write_objectives(objs, obj_path)
        config = ExperimentConfig(
            domain="lp",
            generator="lp-file",
            params={"path": str(lp_path), "objectives_path": str(obj_path)},
            rounds=4,
            trials=2,
            schedule=Schedule.constant(0.5),
            root_seed=1,
        )
        result = run_experiment(config)
        # a fixed shared sequence: every trial sees identical instances,
        # so |S*| agrees across trials
        assert len({td.s_star_size for td in result.trials}) == 1

    def test_lp_file_base_without_sigma_rejected(self, tmp_path):
        from prunerep.generators import synth_auction_lp

        rng = np.random.default_rng(5)
        program, base = synth_auction_lp(2, 3, 2, rng)
        lp_path = tmp_path / "prog.lp"
        obj_path = tmp_path / "objs.txt"
        write_lp(program, lp_path)
        write_objectives([base], obj_path)
        config = ExperimentConfig(
            domain="lp",
            generator="lp-file",
            params={"path": str(lp_path), "objectives_path": str(obj_path)},
            rounds=5,
            trials=2,
        )
        with pytest.raises(ConfigError):
            build_problem(config)

    def test_lp_file_wrong_count_rejected(self, tmp_path):
        from prunerep.generators import objective_sequence, synth_auction_lp

        rng = np.random.default_rng(6)
        program, base = synth_auction_lp(2, 3, 2, rng)
        objs = objective_sequence(program, base, 0.3, 3, rng)
        lp_path = tmp_path / "prog.lp"
        obj_path = tmp_path / "objs.txt"
        write_lp(program, lp_path)
        write_objectives(objs, obj_path)
        config = ExperimentConfig(
            domain="lp",
            generator="lp-file",
            params={"path": str(lp_path), "objectives_path": str(obj_path)},
            rounds=7,
            trials=2,
        )
        with pytest.raises(ConfigError):
            build_problem(config)

    def test_stream_file_runs(self, tmp_path):
        instances = synth_search_sequence(20, 3, 6, np.random.default_rng(7))
        path = tmp_path / "stream.txt"
        write_stream(instances, path)
        config = ExperimentConfig(
            domain="string-search",
            generator="stream-file",
            params={"path": str(path)},
            rounds=6,
            trials=2,
            schedule=Schedule.constant(0.5),
        )
        result = run_experiment(config)
        assert len(result.trials) == 2
        # fixed stream: identical instances for both trials
        assert len({td.s_star_size for td in result.trials}) == 1

    def test_stream_file_length_mismatch_rejected(self, tmp_path):
        instances = synth_search_sequence(20, 3, 6, np.random.default_rng(8))
        path = tmp_path / "stream.txt"
        write_stream(instances, path)
        config = ExperimentConfig(
            domain="string-search",
            generator="stream-file",
            params={"path": str(path)},
            rounds=9,
            trials=2,
        )
        with pytest.raises(ConfigError):
            build_problem(config)

    def test_missing_file_is_io_error(self, tmp_path):
        config = ExperimentConfig(
            domain="string-search",
            generator="stream-file",
            params={"path": str(tmp_path / "nope.txt")},
            rounds=3,
            trials=1,
        )
        with pytest.raises(IoError):
            build_problem(config)

    def test_unwritable_csv_is_io_error(self, tmp_path):
        config = tight_config(csv_path=str(tmp_path / "no" / "such" / "dir.csv"))
        with pytest.raises(IoError):
            run_experiment(config)


class TestGridAndAuctionProblems:
    def test_grid_smoke(self):
        config = ExperimentConfig(
            domain="shortest-path",
            generator="grid",
            params={"width": 4, "height": 3, "perturb": "gaussian:0.2"},
            rounds=6,
            trials=4,
            schedule=Schedule.inverse_sqrt(),
            root_seed=2,
        )
        result = run_experiment(config)
        s = result.summary
        assert s["universe_size"] == 34
        assert s["bounds"]["corollary_mistake_bound"] == pytest.approx(
            s["s_star"]["mean"] * math.sqrt(6)
        )

    def test_auction_smoke(self):
        config = ExperimentConfig(
            domain="lp",
            generator="auction",
            params={"bidders": 3, "goods": 4, "bids_per_bidder": 2, "sigma": 0.4},
            rounds=5,
            trials=4,
            schedule=Schedule.constant(0.6),
            root_seed=3,
        )
        result = run_experiment(config)
        # rows = goods + bidders + 2*bids
        assert result.summary["universe_size"] == 4 + 3 + 2 * 6
        assert result.summary["work"]["baseline_mean"] > 0
