import csv
import json

from prunerep.cli import main


class TestBounds:
    def test_full_explore_never_mistakes(self, capsys):
        assert main(["bounds", "--mistake", "5", "1.0", "100"]) == 0
        assert "= 0.0" in capsys.readouterr().out

    def test_lower_bound_product(self, capsys):
        assert main(["bounds", "--lower", "100", "30"]) == 0
        assert "= 375.0" in capsys.readouterr().out

    def test_tight_pair(self, capsys):
        assert main(["bounds", "--tight", "3", "0.5", "10"]) == 0
        out = capsys.readouterr().out
        assert "2.947975410252502" in out
        assert "2.515483251330463" in out

    def test_invsqrt_spelling(self, capsys):
        assert main(["bounds", "--pruned", "5", "110", "invsqrt", "25"]) == 0
        out = capsys.readouterr().out
        # exact schedule sum, strictly tighter than the 2(U-s*)/sqrt(T)
        # simplification (which gives 47 here)
        assert "= 41.28511120291585" in out

    def test_no_flags_is_config_error(self, capsys):
        assert main(["bounds"]) == 2

    def test_bad_probability_is_config_error(self):
        assert main(["bounds", "--mistake", "5", "half", "100"]) == 2


class TestVerify:
    def test_quick_suite_passes_and_is_deterministic(self, capsys):
        assert main(["verify", "--seed", "20260819"]) == 0
        first = capsys.readouterr().out
        assert main(["verify", "--seed", "20260819"]) == 0
        second = capsys.readouterr().out
        assert first == second
        assert "FAIL" not in first
        assert "6/6 checks passed" in first
        # the report names each property with its case count and seed
        for needle in ("vs path enumeration", "vs vertex enumeration",
                       "witness iff", "cases, seed"):
            assert needle in first

    def test_injected_fault_is_caught(self, capsys):
        assert main(["verify", "--seed", "20260819", "--inject-fault"]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out


class TestGenRoundTrips:
    def test_grid_gen_then_run(self, tmp_path, capsys):
        graph_path = tmp_path / "grid.edges"
        assert main([
            "gen", "grid", "--width", "3", "--height", "3",
            "--seed", "5", "--out", str(graph_path),
        ]) == 0
        assert graph_path.exists()
        csv_path = tmp_path / "rounds.csv"
        code = main([
            "run", "--domain", "shortest-path", "--generator", "edge-file",
            "--graph-file", str(graph_path),
            "--source", "0", "--terminal", "8",
            "--perturb", "gaussian:0.2",
            "--trials", "3", "--rounds", "4",
            "--schedule", "const:0.5", "--seed", "1",
            "--csv", str(csv_path),
        ])
        assert code == 0
        with open(csv_path) as fh:
            assert len(list(csv.reader(fh))) == 1 + 3 * 4

    def test_tight_gen_then_run(self, tmp_path, capsys):
        out = tmp_path / "tight.edges"
        assert main(["gen", "tight", "--k", "4", "--seed", "2", "--out", str(out)]) == 0
        code = main([
            "run", "--domain", "shortest-path", "--generator", "tight", "--k", "4",
            "--trials", "2", "--rounds", "3", "--schedule", "const:1.0",
        ])
        assert code == 0
        text = capsys.readouterr().out
        assert "mistake fraction 0.0" in text

    def test_auction_gen_then_run(self, tmp_path, capsys):
        lp_path = tmp_path / "prog.lp"
        obj_path = tmp_path / "objs.txt"
        assert main([
            "gen", "auction", "--bidders", "2", "--goods", "3",
            "--bids-per-bidder", "2", "--seed", "3",
            "--out", str(lp_path), "--objectives-out", str(obj_path),
        ]) == 0
        json_path = tmp_path / "summary.json"
        code = main([
            "run", "--domain", "lp", "--generator", "lp-file",
            "--lp-file", str(lp_path), "--objectives-file", str(obj_path),
            "--sigma", "0.3", "--trials", "2", "--rounds", "3",
            "--schedule", "invsqrt", "--seed", "4", "--json", str(json_path),
        ])
        assert code == 0
        summary = json.loads(json_path.read_text())
        assert summary["universe_size"] == 3 + 2 + 2 * 4

    def test_string_gen_then_run(self, tmp_path, capsys):
        stream_path = tmp_path / "stream.txt"
        assert main([
            "gen", "string", "--text-length", "20", "--pattern-length", "3",
            "--rounds", "5", "--seed", "6", "--out", str(stream_path),
        ]) == 0
        code = main([
            "run", "--domain", "string-search", "--generator", "stream-file",
            "--stream-file", str(stream_path),
            "--trials", "2", "--rounds", "5", "--schedule", "const:0.5",
        ])
        assert code == 0

    def test_random_string_run_without_files(self, capsys):
        code = main([
            "run", "--domain", "string-search", "--generator", "random",
            "--text-length", "16", "--pattern-length", "3",
            "--trials", "2", "--rounds", "3", "--schedule", "const:0.5",
        ])
        assert code == 0


class TestExitCodes:
    def test_bad_schedule_exits_2(self, capsys):
        assert main([
            "run", "--domain", "shortest-path", "--generator", "tight", "--k", "3",
            "--trials", "1", "--rounds", "2", "--schedule", "sometimes",
        ]) == 2

    def test_missing_required_param_exits_2(self, capsys):
        assert main([
            "run", "--domain", "shortest-path", "--generator", "grid",
            "--trials", "1", "--rounds", "2",
        ]) == 2

    def test_missing_file_exits_3(self, capsys, tmp_path):
        assert main([
            "run", "--domain", "string-search", "--generator", "stream-file",
            "--stream-file", str(tmp_path / "absent.txt"),
            "--trials", "1", "--rounds", "2",
        ]) == 3

    def test_wrong_domain_generator_pair_exits_2(self, capsys):
        assert main([
            "run", "--domain", "lp", "--generator", "grid", "--width", "3", "--height", "3",
            "--trials", "1", "--rounds", "2",
        ]) == 2


class TestRunOutput:
    def test_headline_lines(self, capsys):
        code = main([
            "run", "--domain", "shortest-path", "--generator", "tight", "--k", "5",
            "--trials", "4", "--rounds", "6",
            "--schedule", "const:0.5", "--seed", "9",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "domain shortest-path / tight" in out
        assert "4 trials x 6 rounds" in out
        assert "mistake fraction" in out
        assert "mean |S*|" in out
