import io
import json
import shlex
from pathlib import Path

import pytest

from mumu.cli import main

GOLDEN = sorted(Path(__file__).parent.joinpath("golden").glob("*.case"))


def run(argv, capsys, monkeypatch, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def load_case(path):
    text = path.read_text()
    head, rest = text.split("--- input\n", 1)
    stdin, expected = rest.split("--- output\n", 1)
    fields = dict(line.split(": ", 1) for line in head.splitlines())
    return shlex.split(fields["args"]), int(fields["exit"]), stdin, expected


@pytest.mark.parametrize("path", GOLDEN, ids=[p.stem for p in GOLDEN])
def test_golden(path, capsys, monkeypatch):
    argv, exit_code, stdin, expected = load_case(path)
    code, out, err = run(argv, capsys, monkeypatch, stdin)
    assert code == exit_code
    assert out + err == expected


def test_reduce_reads_file(tmp_path, capsys, monkeypatch):
    src = tmp_path / "t.lm"
    src.write_text("(\\x.x) y\n")
    code, out, _ = run(["reduce", "--strategy", "cbn", str(src)], capsys, monkeypatch)
    assert code == 0 and out.startswith("result: y")


def test_missing_file_is_an_error(capsys, monkeypatch):
    code, _, err = run(["parse", "/nonexistent/file"], capsys, monkeypatch)
    assert code == 2 and err.startswith("mumu:")


def test_reduce_step_bound(capsys, monkeypatch):
    omega = "(\\x.x x) (\\x.x x)"
    code, out, _ = run(["reduce", "--max-steps", "3"], capsys, monkeypatch, omega)
    assert code == 0 and "(3 steps, step bound reached)" in out


def test_wrong_sort_flag(capsys, monkeypatch):
    code, _, err = run(["parse", "--sort", "command"], capsys, monkeypatch, "x")
    assert code == 2 and "parse error" in err


def test_typecheck_expect_mismatch_exits_one(capsys, monkeypatch):
    code, out, _ = run(["typecheck", "--expect", "|- _ : A->B |"], capsys, monkeypatch, "\\x.x")
    assert code == 1 and "not derivable" in out


def test_invalid_strategy_rejected(capsys, monkeypatch):
    with pytest.raises(SystemExit) as info:
        run(["reduce", "--strategy", "bogus"], capsys, monkeypatch, "x")
    assert info.value.code == 2


def test_unknown_check_name(capsys, monkeypatch):
    with pytest.raises(SystemExit) as info:
        run(["check", "thm3"], capsys, monkeypatch)
    assert info.value.code == 2


def test_check_json_lines(capsys, monkeypatch):
    code, out, _ = run(["check", "thm1", "--count", "3", "--size", "6", "--seed", "1", "--output", "json"],
                       capsys, monkeypatch)
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 3
    assert all(d["status"] == "holds" for d in lines)
    assert {"name", "status", "subject", "witness", "bound_used"} <= set(lines[0])


def test_check_is_byte_identical(capsys, monkeypatch):
    argv = ["check", "thm4", "--count", "4", "--size", "8", "--seed", "7", "--strategy", "cbv"]
    first = run(argv, capsys, monkeypatch)
    second = run(argv, capsys, monkeypatch)
    assert first == second


def test_seed_from_environment(capsys, monkeypatch):
    argv = ["check", "thm2", "--count", "2", "--size", "6", "--output", "json"]
    monkeypatch.setenv("MUMU_SEED", "5")
    from_env = run(argv, capsys, monkeypatch)
    explicit = run(argv + ["--seed", "5"], capsys, monkeypatch)
    monkeypatch.setenv("MUMU_SEED", "6")
    other = run(argv, capsys, monkeypatch)
    assert from_env == explicit and from_env != other


def test_bad_seed_environment(capsys, monkeypatch):
    monkeypatch.setenv("MUMU_SEED", "abc")
    code, _, err = run(["check", "nonconfluence"], capsys, monkeypatch)
    assert code == 2 and "MUMU_SEED" in err


def test_lemma2_cbn_reports_expected_failure(capsys, monkeypatch):
    code, out, _ = run(["check", "lemma2", "--count", "2", "--size", "6", "--strategy", "cbn"],
                       capsys, monkeypatch)
    assert code == 0 and "lemma2-cbn-fails: holds" in out
