"""End-to-end command-line runs: config validation, determinism, exits."""

import json
import os

import pytest

from ellflag import cli


def write_config(tmp_path, body, name="job.toml"):
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return str(path)


G2_JOB = """
type = "G2"
coefficients = ["1", "-2"]
involution_coweight = [0, 1]
tasks = ["grade", "stratify", "criterion"]
"""


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_composite_g2_job(tmp_path, capsys):
    cfg = write_config(tmp_path, G2_JOB)
    code, out, err = run_cli(["--config", cfg], capsys)
    assert code == 0
    assert err == ""
    report = json.loads(out)
    assert report["toolkit"]["name"] == "ellflag"
    assert report["config"]["type"] == "G2"
    assert report["config"]["cartan"] == [[2, -1], [-3, 2]]
    assert report["config"]["coefficients"] == ["1", "-2"]

    g = report["results"]["grade"]
    assert g["vanishing_roots"] == [[-2, -1], [2, 1]]
    assert g["dimensions"] == {
        "levi": 4,
        "unipotent_radical": 5,
        "parabolic": 9,
        "group": 14,
        "flag_manifold": 5,
    }
    assert [e["level"] for e in g["levels"]] == ["-2", "-1", "1", "2"]

    s = report["results"]["stratify"]
    assert s["cell_count"] == 6
    assert s["frame"]["dominant_coefficients"] == ["0", "1"]
    assert s["frame"]["conjugator_word"] == [1, 0, 1]
    assert s["dense_cell_words"] == [[], [1]]
    assert s["codimension_histogram"] == {str(k): 1 for k in range(6)}

    c = report["results"]["criterion"]
    assert c["holds"] is True
    assert c["witness"]["roots"] == [[2, 1], [-3, -2]]
    assert [d["value"] for d in c["witness"]["details"]] == ["0", "1"]
    assert "type G2" in c["annotation"]


def test_output_is_byte_identical(tmp_path, capsys):
    cfg = write_config(tmp_path, G2_JOB)
    _, first, _ = run_cli(["--config", cfg], capsys)
    _, second, _ = run_cli(["--config", cfg], capsys)
    assert first == second
    assert first.endswith("\n")


def test_config_echo_round_trip(tmp_path, capsys):
    cfg = write_config(tmp_path, G2_JOB)
    _, out, _ = run_cli(["--config", cfg], capsys)
    echo = json.loads(out)["config"]
    rebuilt = "\n".join(
        [
            f'type = "{echo["type"]}"',
            "coefficients = [" + ", ".join(f'"{c}"' for c in echo["coefficients"]) + "]",
            f"involution_coweight = {echo['involution_coweight']}",
            "tasks = [" + ", ".join(f'"{t}"' for t in echo["tasks"]) + "]",
            f"weyl_cap = {echo['weyl_cap']}",
            f"seed = {echo['seed']}",
        ]
    )
    cfg2 = write_config(tmp_path, rebuilt, name="rebuilt.toml")
    _, out2, _ = run_cli(["--config", cfg2], capsys)
    assert out2 == out


def test_out_file_atomic(tmp_path, capsys):
    cfg = write_config(tmp_path, G2_JOB)
    dest = tmp_path / "report.json"
    code, out, _ = run_cli(["--config", cfg, "--out", str(dest)], capsys)
    assert code == 0
    assert out == ""
    _, stdout_version, _ = run_cli(["--config", cfg], capsys)
    assert dest.read_text(encoding="utf-8") == stdout_version
    leftovers = [n for n in os.listdir(tmp_path) if n.startswith(".ellflag-tmp-")]
    assert leftovers == []


def test_text_rendering(tmp_path, capsys):
    cfg = write_config(tmp_path, G2_JOB)
    code, out, _ = run_cli(["--config", cfg, "--text"], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("ellflag ")
    assert "stratify: 6 cells" in out
    assert "criterion: holds" in out


def test_task_override(tmp_path, capsys):
    cfg = write_config(tmp_path, G2_JOB)
    code, out, _ = run_cli(["--config", cfg, "--task", "criterion"], capsys)
    assert code == 0
    report = json.loads(out)
    assert list(report["results"]) == ["criterion"]
    assert report["config"]["tasks"] == ["criterion"]


def test_seed_override_echo(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        """
type = "A2"
coefficients = ["1", "0"]
tasks = ["lowrank_suite"]
""",
    )
    code, out, _ = run_cli(["--config", cfg, "--seed", "99"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["config"]["seed"] == 99
    suite = report["results"]["lowrank_suite"]
    assert suite["sl2"]["sample_check"] == {"per_class": 50, "seed": 99, "ok": True}
    assert [
        (m["negatives"], m["positives"]) for m in suite["su21"]["metrics"]
    ] == [(2, 4), (4, 2), (4, 2), (2, 4), (6, 0), (0, 6)]
    assert suite["sl2"]["adT_eigenvalues"] == ["0+2i", "0-2i", "0+0i"]


def test_hermitian_fast_fail_via_cli(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        """
type = "A2"
coefficients = ["0", "1"]
involution_coweight = [0, 1]
tasks = ["criterion"]
""",
    )
    code, out, _ = run_cli(["--config", cfg], capsys)
    assert code == 0
    c = json.loads(out)["results"]["criterion"]
    assert c["holds"] is False
    assert c["failure_reason"] == "hermitian_fast_fail"
    assert c["witness"] is None


def test_identities_task(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        """
type = "G2"
coefficients = ["1", "-2"]
tasks = ["identities"]
""",
    )
    code, out, _ = run_cli(["--config", cfg], capsys)
    assert code == 0
    idn = json.loads(out)["results"]["identities"]
    assert idn["ok"] is True
    assert idn["checked"] == 6
    assert idn["failures"] == []


def test_cartan_matrix_input(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        """
cartan = [[2, -1], [-1, 2]]
coefficients = ["1", "0"]
tasks = ["grade"]
""",
    )
    code, out, _ = run_cli(["--config", cfg], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["config"]["type"] is None
    assert report["config"]["cartan"] == [[2, -1], [-1, 2]]
    assert report["results"]["grade"]["dimensions"]["flag_manifold"] == 2


VALIDATION_CASES = [
    # empty task list
    'type = "A2"\ncoefficients = ["1", "0"]\ntasks = []\n',
    # unknown task
    'type = "A2"\ncoefficients = ["1", "0"]\ntasks = ["dance"]\n',
    # unknown key
    'type = "A2"\ncoefficients = ["1", "0"]\ntasks = ["grade"]\nextra = 1\n',
    # criterion without involution
    'type = "A2"\ncoefficients = ["1", "0"]\ntasks = ["criterion"]\n',
    # bad rational
    'type = "A2"\ncoefficients = ["1", "nope"]\ntasks = ["grade"]\n',
    # zero denominator
    'type = "A2"\ncoefficients = ["1", "1/0"]\ntasks = ["grade"]\n',
    # wrong coefficient length
    'type = "A2"\ncoefficients = ["1"]\ntasks = ["grade"]\n',
    # wrong involution length
    'type = "A2"\ncoefficients = ["1", "0"]\ninvolution_coweight = [1]\ntasks = ["criterion"]\n',
    # both sources
    'type = "A2"\ncartan = [[2]]\ncoefficients = ["1", "0"]\ntasks = ["grade"]\n',
    # neither source
    'coefficients = ["1", "0"]\ntasks = ["grade"]\n',
    # unknown label
    'type = "Z9"\ncoefficients = ["1", "0"]\ntasks = ["grade"]\n',
    # non-integer cartan rows
    'cartan = [[2.0, -1.0], [-1.0, 2.0]]\ncoefficients = ["1", "0"]\ntasks = ["grade"]\n',
    # bad cap
    'type = "A2"\ncoefficients = ["1", "0"]\ntasks = ["grade"]\nweyl_cap = 0\n',
]


@pytest.mark.parametrize("body", VALIDATION_CASES)
def test_validation_failures_exit_2(tmp_path, capsys, body):
    cfg = write_config(tmp_path, body)
    code, out, err = run_cli(["--config", cfg], capsys)
    assert code == 2
    assert out == ""
    assert json.loads(err)["error"]["kind"] == "validation"


def test_missing_config_file(tmp_path, capsys):
    code, _, err = run_cli(["--config", str(tmp_path / "absent.toml")], capsys)
    assert code == 2
    assert "cannot read config" in json.loads(err)["error"]["message"]


def test_malformed_toml(tmp_path, capsys):
    cfg = write_config(tmp_path, "tasks = [\n")
    code, _, err = run_cli(["--config", cfg], capsys)
    assert code == 2
    assert "malformed config" in json.loads(err)["error"]["message"]


def test_cap_exceeded_exit_3(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        """
type = "B3"
coefficients = ["1", "0", "0"]
tasks = ["stratify"]
""",
    )
    code, _, err = run_cli(["--config", cfg, "--weyl-cap", "7"], capsys)
    assert code == 3
    assert json.loads(err)["error"]["kind"] == "cap_exceeded"


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert out.strip().startswith("ellflag ")
