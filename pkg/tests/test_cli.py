import csv
import json
import math
import subprocess
import sys

import pytest

from uentropy.cli import fmt, main

LOG_LAM = math.log((3 + math.sqrt(5)) / 2)


def run(tmp_path, *args, name="out"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


def rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def write_config(tmp_path, text, name="cfg.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


SMALL_CAT = """
[system]
kind = "toral"
matrix = [[2, 1], [1, 1]]

[estimate_entropy]
x_grid = [[0.3, 0.6], [0.7, 0.2]]
"""


class TestEstimateEntropy:
    def test_cat_map(self, tmp_path):
        code, out = run(tmp_path, "estimate-entropy", "--config",
                        write_config(tmp_path, SMALL_CAT))
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        for k in ("bowen", "upper_capacity"):
            assert abs(summary["estimates"][k]["sup_estimate"] - LOG_LAM) < 0.05
        r = rows(out / "estimate.csv")
        assert list(r[0]) == ["x", "delta", "kind", "estimate", "flags"]
        assert summary["config"]["system"]["matrix"] == [[2, 1], [1, 1]]

    def test_empty_predicate(self, tmp_path):
        code, out = run(tmp_path, "estimate-entropy", "--config",
                        write_config(tmp_path, SMALL_CAT), "--predicate", "empty",
                        "--kind", "upper_capacity")
        assert code == 0
        s = json.loads((out / "summary.json").read_text())
        assert s["estimates"]["upper_capacity"]["sup_estimate"] == 0.0
        assert "empty_intersection" in s["estimates"]["upper_capacity"]["flags"]

    def test_bad_matrix(self, tmp_path, capsys):
        cfg = write_config(tmp_path, '[system]\nkind = "toral"\nmatrix = [[2, 1], [1, 2]]\n')
        code, _ = run(tmp_path, "estimate-entropy", "--config", cfg)
        assert code == 2
        assert "det" in capsys.readouterr().err

    def test_strict_mode(self, tmp_path):
        code, _ = run(tmp_path, "estimate-entropy", "--config",
                      write_config(tmp_path, SMALL_CAT), "--kind", "upper_capacity",
                      "--strict")
        assert code == 3

    def test_threads_and_reruns_are_byte_identical(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_CAT)
        _, a = run(tmp_path, "estimate-entropy", "--config", cfg, "--threads", "1", name="a")
        _, b = run(tmp_path, "estimate-entropy", "--config", cfg, "--threads", "3", name="b")
        _, c = run(tmp_path, "estimate-entropy", "--config", cfg, "--threads", "1", name="c")
        assert (a / "estimate.csv").read_bytes() == (b / "estimate.csv").read_bytes()
        assert (a / "estimate.csv").read_bytes() == (c / "estimate.csv").read_bytes()

    def test_full_shift_flag_overrides(self, tmp_path):
        cfg = write_config(tmp_path, '[system]\nkind = "full_shift"\nalphabet = 2\n'
                                     '[estimate_entropy]\nkind = "bowen"\n')
        code, out = run(tmp_path, "estimate-entropy", "--config", cfg,
                        "--kind", "upper_capacity")
        s = json.loads((out / "summary.json").read_text())
        assert code == 0 and list(s["estimates"]) == ["upper_capacity"]
        assert abs(s["estimates"]["upper_capacity"]["sup_estimate"] - math.log(2)) < 0.01


class TestOtherCommands:
    def test_local_entropy(self, tmp_path):
        code, out = run(tmp_path, "local-entropy", "--points", "3")
        assert code == 0
        r = rows(out / "traces.csv")
        assert list(r[0]) == ["x", "eps", "n", "a_n"]
        for row in rows(out / "local_entropy.csv"):
            assert abs(float(row["lower"]) - LOG_LAM) < 0.05

    def test_spectrum_full_shift(self, tmp_path):
        code, out = run(tmp_path, "spectrum")
        r = rows(out / "spectrum.csv")
        assert code == 0 and len(r) == 9
        assert list(r[0]) == ["a", "lhs", "rhs", "gap", "status"]
        assert max(abs(float(x["gap"])) for x in r) <= 0.05

    def test_spectrum_constant(self, tmp_path):
        cfg = write_config(tmp_path, '[spectrum]\npotential = {kind = "constant", value = 0.5}\n')
        code, out = run(tmp_path, "spectrum", "--config", cfg)
        r = rows(out / "spectrum.csv")
        assert code == 0
        assert sum(x["status"] != "level_unreachable" for x in r) == 1

    def test_spectrum_golden(self, tmp_path):
        cfg = write_config(tmp_path, '[system]\nkind = "sft"\nforbidden = ["11"]\n')
        code, out = run(tmp_path, "spectrum", "--config", cfg)
        for x in rows(out / "spectrum.csv"):
            if x["status"] != "level_unreachable":
                assert float(x["lhs"]) <= float(x["rhs"]) + 0.03

    def test_separated_count_words(self, tmp_path):
        words = tmp_path / "w.txt"
        words.write_text("\n".join(format(i, "03b") for i in range(8)) + "\n")
        code, out = run(tmp_path, "separated-count", "--words", str(words),
                        "--threshold", "2")
        assert code == 0
        assert (out / "separated_words.txt").read_text().split() == ["000", "111"]
        assert json.loads((out / "summary.json").read_text())["exact_max"] == 2

    def test_separated_count_rho(self, tmp_path):
        code, out = run(tmp_path, "separated-count", "--rho", "0.5", "--n", "4")
        assert code == 0
        assert json.loads((out / "summary.json").read_text())["count"] == 8

    def test_glue_demo(self, tmp_path):
        code, out = run(tmp_path, "glue-demo")
        s = json.loads((out / "summary.json").read_text())
        assert code == 0 and s["cardinality"] == 8 and s["separation_ok"]
        assert len((out / "glued_words.txt").read_text().split()) == 8

    def test_glue_golden(self, tmp_path):
        cfg = write_config(tmp_path, '[system]\nkind = "sft"\nforbidden = ["11"]\n'
                                     '[glue_demo]\nblocks = [["01"], ["10"]]\n')
        code, out = run(tmp_path, "glue-demo", "--config", cfg)
        assert code == 0
        assert (out / "glued_words.txt").read_text().split() == ["01010"]

    def test_uniform_separation(self, tmp_path):
        code, out = run(tmp_path, "uniform-separation", "--kappa", "0.3", "--n", "14")
        r = rows(out / "uniform_separation.csv")
        assert code == 0 and len(r) == 1 and r[0]["passed"] == "true"

    def test_irregular_demo(self, tmp_path):
        code, out = run(tmp_path, "irregular-demo")
        s = json.loads((out / "summary.json").read_text())
        assert code == 0 and s["classification"] == "oscillating"
        assert list(rows(out / "averages.csv")[0]) == ["n", "average"]


class TestCheck:
    def test_check_d2(self, tmp_path):
        code, out = run(tmp_path, "check", "d2")
        r = rows(out / "verdicts.csv")
        assert code == 0 and all(x["status"] == "PASS" for x in r)
        assert list(r[0]) == ["theorem", "instance", "status", "lhs", "rhs", "tolerance"]

    def test_check_b(self, tmp_path):
        code, _ = run(tmp_path, "check", "b")
        assert code == 0

    def test_unknown_theorem(self, tmp_path):
        code, _ = run(tmp_path, "check", "zz")
        assert code == 2

    def test_unknown_instance(self, tmp_path):
        cfg = write_config(tmp_path, '[check]\ninstances = ["nope"]\n')
        code, _ = run(tmp_path, "check", "d2", "--config", cfg)
        assert code == 2


class TestFormatting:
    def test_seventeen_digits(self):
        assert fmt(0.1) == "0.10000000000000001"
        assert float(fmt(math.pi)) == math.pi
        assert fmt(True) == "true" and fmt(3) == "3"

    def test_csv_cells_round_trip(self, tmp_path):
        _, out = run(tmp_path, "spectrum", "--grid-levels", "0.3")
        r = rows(out / "spectrum.csv")[0]
        lhs = float(r["lhs"])
        assert format(lhs, ".17g") == r["lhs"]

    def test_missing_config_file(self, tmp_path):
        code, _ = run(tmp_path, "spectrum", "--config", str(tmp_path / "none.toml"))
        assert code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "uentropy", "check", "d2", "--out",
                           str(tmp_path / "m")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


@pytest.mark.parametrize("cmd", ["estimate-entropy", "local-entropy", "spectrum",
                                 "separated-count", "glue-demo", "uniform-separation",
                                 "irregular-demo", "check", "check-theorem-a"])
def test_subcommands_registered(cmd):
    from uentropy.cli import build_parser
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([cmd, "--help"])
    assert exc.value.code == 0
