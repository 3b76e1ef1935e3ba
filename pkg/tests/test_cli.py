"""CLI surface: argument parsing, JSON reports, exit codes, config files."""

import json
import subprocess
import sys

import pytest

from lacunalab import ParameterError
from lacunalab.cli import ExperimentConfig, main, parse_config_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


# ---------------------------------------------------------------------------
# lacunary subcommands


def test_check_thin_set(capsys):
    code, doc, _ = run(capsys, "lacunary", "check", "--set", "1,2,4,8", "--q", "2")
    assert code == 0
    assert doc == {"set": [1, 2, 4, 8], "q": "2", "q_thin": True}


def test_check_thin_set_fails(capsys):
    code, doc, _ = run(capsys, "lacunary", "check", "--set", "1,2,3", "--q", "2")
    assert code == 1
    assert doc["q_thin"] is False


def test_check_lacunary_with_cutoff(capsys):
    # {2,3,12,24} is not 2-thin but its tails beyond 4 are
    code, doc, _ = run(capsys, "lacunary", "check", "--set", "2,3,12,24", "--q", "2")
    assert code == 1
    code, doc, _ = run(capsys, "lacunary", "check", "--set", "2,3,12,24", "--q", "2", "--n", "4")
    assert code == 0
    assert doc["lacunary"] is True and doc["n"] == 4


def test_cover_two_parts(capsys):
    code, doc, _ = run(
        capsys, "lacunary", "cover", "--set", "2,3,4,6,8,12,16,24", "--q", "2", "--n", "1"
    )
    assert code == 0
    assert doc["part_count"] == 2


def test_cover_with_budget(capsys):
    args = ("lacunary", "cover", "--set", "2,3,4,6,8,12,16,24", "--q", "2", "--n", "1")
    code, doc, _ = run(capsys, *args, "--r", "1")
    assert code == 1
    assert doc["max_parts"] == 1 and doc["within"] is False
    code, doc, _ = run(capsys, *args, "--r", "2")
    assert code == 0
    assert doc["within"] is True


def test_condition1_u2_example(capsys):
    code, doc, _ = run(
        capsys,
        "lacunary", "condition1",
        "--group", "u2",
        "--set", "(1,2);(2,4)",
        "--q", "2",
        "--n", "1",
        "--r", "1",
    )
    assert code == 0
    assert doc["holds"] is True


def test_condition1_dense_fails(capsys):
    code, doc, _ = run(
        capsys,
        "lacunary", "condition1",
        "--group", "su2",
        "--set", "1,2,3,4,5,6",
        "--q", "2",
        "--n", "1",
        "--r", "1",
    )
    assert code == 1
    assert doc["holds"] is False


def test_bad_rational_is_usage_error(capsys):
    code, doc, err = run(capsys, "lacunary", "check", "--set", "1,2", "--q", "two")
    assert code == 2
    assert doc is None
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# character subcommand


def test_character_su2_weight_two(capsys):
    code, doc, _ = run(capsys, "character", "--group", "su2", "--weight", "2")
    assert code == 0
    assert doc["dimension"] == 3
    assert [r["exponent"] for r in doc["series"]] == [[-4], [0], [4]]
    assert all(r["re"] == 1.0 and r["im"] == 0.0 for r in doc["series"])


def test_character_u2_eval_at_identity(capsys):
    code, doc, _ = run(
        capsys, "character", "--group", "u2", "--weight", "2,0", "--eval", "0,0"
    )
    assert code == 0
    assert doc["dimension"] == 3
    assert doc["eval"]["re"] == pytest.approx(3.0, abs=1e-12)
    assert doc["eval"]["im"] == pytest.approx(0.0, abs=1e-12)


def test_character_trivial_weight(capsys):
    code, doc, _ = run(capsys, "character", "--group", "su2", "--weight", "0")
    assert code == 0
    assert doc["dimension"] == 1
    assert doc["series"] == [{"exponent": [0], "re": 1.0, "im": 0.0}]


def test_character_orthonormality_flag(capsys):
    code, doc, _ = run(
        capsys, "character", "--group", "su2", "--verify-orthogonality", "--count", "4"
    )
    assert code == 0
    ortho = doc["orthonormality"]
    assert ortho["ok"] is True and ortho["count"] == 4
    assert ortho["max_defect"] < 1e-9


def test_character_requires_some_work(capsys):
    code, doc, err = run(capsys, "character", "--group", "su2")
    assert code == 2
    assert "weight" in err


def test_character_non_dominant_weight(capsys):
    code, _, err = run(capsys, "character", "--group", "u2", "--weight", "0,2")
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# config parsing


def test_config_round_trip():
    cfg = ExperimentConfig(spectrum=(1, 2, 4, 8), coeff_mode="random", seed=7)
    back = ExperimentConfig.from_mapping(cfg.to_mapping())
    assert back == cfg


def test_config_text_comments_and_spacing():
    cfg = parse_config_text(
        """
        # comment line
        spectrum = 1, 2, 4   # trailing comment
        coeff_mode = identity
        q = 3/2
        """
    )
    assert cfg.spectrum == (1, 2, 4)
    assert cfg.q == "3/2"
    assert cfg.group == "su2"  # default survives


def test_config_rejections():
    with pytest.raises(ParameterError):
        parse_config_text("spectrum: 1,2\n")  # not key = value
    with pytest.raises(ParameterError):
        parse_config_text("volume = 11\n")  # unknown key
    with pytest.raises(ParameterError):
        parse_config_text("torus_points = many\n")
    with pytest.raises(ParameterError):
        parse_config_text("group = so3\n")
    with pytest.raises(ParameterError):
        parse_config_text("coeff_mode = fancy\n")


# ---------------------------------------------------------------------------
# experiment subcommand


def write_config(tmp_path, **overrides):
    base = {
        "spectrum": "1,2",
        "coeff_mode": "identity",
        "q": "2",
        "n": "1",
        "r": "1",
        "torus_points": "2048",
        "box_side": "0.05",
        "delta_rel": "1e-3",
        "g_box_side": "1.0",
        "output_dir": str(tmp_path / "out"),
    }
    base.update(overrides)
    path = tmp_path / "exp.cfg"
    path.write_text("".join(f"{k} = {v}\n" for k, v in base.items()))
    return path


def test_experiment_runs_and_reports(tmp_path, capsys):
    path = write_config(tmp_path)
    code, doc, _ = run(capsys, "experiment", str(path))
    assert code == 0
    assert doc["passed"] is True
    assert doc["condition"]["holds"] is True
    assert doc["config"]["spectrum"] == "1,2"
    assert set(doc["outputs"]) == {"report", "Ff_abs", "product_abs", "f_abs"}
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["passed"] is True


def test_experiment_failing_pipeline_exit_one(tmp_path, capsys):
    # a threshold far above the signal turns every box into a vanishing box
    path = write_config(tmp_path, delta_rel="1e6")
    code, doc, _ = run(capsys, "experiment", str(path))
    assert code == 1
    assert doc["passed"] is False
    assert doc["assertions"]["ff_no_vanishing_box"] is False


def test_experiment_grid_override(tmp_path, capsys):
    path = write_config(tmp_path, grid_phi="16", grid_theta="10", grid_psi="16")
    code, doc, _ = run(capsys, "experiment", str(path))
    assert code == 0
    assert doc["parameters"]["haar_grid"] == [16, 10, 16]


def test_experiment_bad_config_exit_two(tmp_path, capsys):
    path = write_config(tmp_path, q="1")  # ratio bound must exceed 1
    code, doc, err = run(capsys, "experiment", str(path))
    assert code == 2
    assert err.startswith("error:")


def test_experiment_missing_config(capsys):
    code, _, err = run(capsys, "experiment", "/nonexistent/path.cfg")
    assert code == 2
    assert "not found" in err


def test_experiment_deterministic_stdout(tmp_path, capsys):
    path = write_config(tmp_path, coeff_mode="random", seed="5")
    main(["experiment", str(path)])
    first = capsys.readouterr().out
    main(["experiment", str(path)])
    second = capsys.readouterr().out
    assert first == second


# ---------------------------------------------------------------------------
# parser plumbing


def test_usage_error_exit_two(capsys):
    assert main(["lacunary", "check", "--set", "1,2"]) == 2  # missing --q
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_installed_script():
    proc = subprocess.run(
        [sys.executable, "-m", "lacunalab", "lacunary", "check", "--set", "1,2,4", "--q", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["q_thin"] is True
