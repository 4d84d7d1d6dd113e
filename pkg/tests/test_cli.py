import pathlib

from click.testing import CliRunner

from fcn.cli import main

DEMO = str(pathlib.Path(__file__).resolve().parent.parent / "demos" / "bakery.fcn")


def run(*args, **kw):
    return CliRunner().invoke(main, list(args), **kw)


def test_check_ok():
    r = run("check", DEMO)
    assert r.exit_code == 0
    lines = r.output.strip().splitlines()
    assert all(line.startswith("OK ") for line in lines)
    assert any(line.startswith("OK bakery :") for line in lines)


def test_check_reports_first_error(tmp_path):
    bad = tmp_path / "bad.fcn"
    bad.write_text(
        "object a;\ncarrier a = { a0 };\n"
        "cell k : [ I | a -> a | I ] = putR a | putR a;\n"
    )
    r = run("check", str(bad))
    assert r.exit_code != 0
    assert "mismatch" in r.output


def test_check_empty_file(tmp_path):
    empty = tmp_path / "empty.fcn"
    empty.write_text("")
    r = run("check", str(empty))
    assert r.exit_code == 0
    assert r.output.strip() == ""


def test_normalize_fuses_bakery():
    r = run("normalize", DEMO, "--cell", "bakery", "--trace-rules")
    assert r.exit_code == 0
    assert "[((knead * id(oven)) ; bake)]" in r.output
    assert "snap-send-around" in r.output


def test_normalize_already_normal():
    r = run("normalize", DEMO, "--cell", "memory")
    assert r.exit_code == 0
    assert "0 steps" in r.output


def test_normalize_budget_zero():
    r = run("normalize", DEMO, "--cell", "bakery", "--budget", "0")
    assert r.exit_code == 0
    assert "budget exhausted" in r.output


def test_normalize_unknown_cell():
    r = run("normalize", DEMO, "--cell", "nope")
    assert r.exit_code != 0
    assert "nope" in r.output


def test_eval_closed_cell():
    r = run("eval", DEMO, "--cell", "bakery", "--input", "(rye, hot)")
    assert r.exit_code == 0
    assert r.output.strip() == "result (ryeloaf, hot)"


def test_eval_with_script(tmp_path):
    script = tmp_path / "moves"
    script.write_text("continue\nrecv wheatdough\nstop\n")
    r = run(
        "eval", DEMO, "--cell", "memory", "--input", "ryedough",
        "--script", str(script),
    )
    assert r.exit_code == 0
    assert r.output.strip().splitlines() == [
        "sent ryedough",
        "result wheatdough",
    ]


def test_eval_script_errors():
    r = run("eval", DEMO, "--cell", "memory", "--input", "ryedough")
    assert r.exit_code != 0


def test_laws_skipped_when_samples_zero():
    r = run("laws", DEMO, "--samples", "0")
    assert r.exit_code == 0
    assert "skipped" in r.output
    assert "fail" not in r.output
    # enumerable-only laws still run
    assert any(
        "pass" in line for line in r.output.splitlines()
    )


def test_laws_seed_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("FCN_SEED", "not-a-number")
    r = run("laws", DEMO, "--samples", "0")
    assert r.exit_code != 0
    assert "FCN_SEED" in r.output
