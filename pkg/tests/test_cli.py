import io
import json
from contextlib import redirect_stderr, redirect_stdout

from msproots.cli import main


def run_cli(argv):
    buf_out, buf_err = io.StringIO(), io.StringIO()
    with redirect_stdout(buf_out), redirect_stderr(buf_err):
        code = main(argv)
    return code, buf_out.getvalue(), buf_err.getvalue()


def test_eval_golden():
    code, out, err = run_cli(["eval", "--n", "3", "--k", "1", "--lambda", "1,2,3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == -3
    assert payload["lambda"] == "1,2,3"
    assert err == ""


def test_eval_accepts_any_order_and_canonicalizes():
    code, out, err = run_cli(["eval", "--n", "3", "--lambda", "4,0,2"])
    assert code == 0
    payload = json.loads(out)
    assert payload["lambda"] == "1,2,3" and payload["value"] == -3
    assert "canonicalized" in err


def test_eval_methods_agree():
    values = {}
    for method in ("dp", "naive", "closed", "auto"):
        code, out, _ = run_cli(["eval", "--n", "2", "--k", "2",
                                "--lambda", "1,1,2,2", "--method", method])
        assert code == 0
        payload = json.loads(out)
        values[method] = payload["value"]
        if method in ("naive", "dp"):
            assert payload["method_used"] == method
    assert set(values.values()) == {-2}


def test_eval_plain_and_tsv_formats():
    code, out, _ = run_cli(["eval", "--n", "3", "--lambda", "1,2,3", "--format", "plain"])
    assert code == 0 and "value=-3" in out
    code, out, _ = run_cli(["eval", "--n", "3", "--lambda", "1,2,3", "--format", "tsv"])
    assert code == 0 and out.split("\t")[3] == "-3"


def test_eval_usage_errors():
    code, _, err = run_cli(["eval", "--n", "3", "--lambda", "1,2"])
    assert code == 2 and "error" in err
    code, _, err = run_cli(["eval", "--n", "3", "--lambda", "1,x,3"])
    assert code == 2
    code, _, err = run_cli(["eval", "--n", "4", "--lambda", "1,1,2,3", "--method", "closed"])
    assert code == 2 and "closed" in err


def test_expand_golden_example():
    code, out, err = run_cli(["expand", "--n", "3", "--k", "1"])
    assert code == 0
    assert json.loads(out) == [
        {"lambda": "1,1,1", "coefficient": 1},
        {"lambda": "1,2,3", "coefficient": -3},
        {"lambda": "2,2,2", "coefficient": 1},
        {"lambda": "3,3,3", "coefficient": 1},
    ]


def test_expand_tsv():
    code, out, _ = run_cli(["expand", "--n", "2", "--k", "1", "--format", "tsv"])
    assert code == 0
    assert out.splitlines() == ["1,1\t-1", "2,2\t1"]


def test_count_golden():
    code, out, _ = run_cli(["count", "--n", "3", "--k", "1"])
    assert code == 0
    assert json.loads(out) == {"n": 3, "k": 1, "nu": 4, "lambda_tilde": 4, "equal": True}


def test_budget_exhaustion_exit_code():
    code, _, err = run_cli(["expand", "--n", "4", "--k", "4", "--budget", "10"])
    assert code == 3 and "budget" in err


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("MSPROOTS_BUDGET", "10")
    code, _, _ = run_cli(["expand", "--n", "4", "--k", "5"])
    assert code == 3
    monkeypatch.setenv("MSPROOTS_BUDGET", "notanint")
    code, _, err = run_cli(["expand", "--n", "2", "--k", "1"])
    assert code == 2 and "MSPROOTS_BUDGET" in err


def test_verify_single_suite():
    code, out, _ = run_cli(["verify", "--suite", "thm32", "--n", "3", "--k", "1"])
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "thm32" and report["failures"] == []
    assert set(report) >= {"suite", "n", "k", "instances_checked", "failures", "elapsed_ms"}


def test_verify_lemma_with_and_without_lambda():
    code, out, _ = run_cli(["verify", "--suite", "lemma24", "--n", "3",
                            "--lambda", "1,2,3"])
    assert code == 0 and json.loads(out)["instances_checked"] == 4
    code, out, _ = run_cli(["verify", "--suite", "lemma24", "--n", "2"])
    assert code == 0 and json.loads(out)["instances_checked"] == 50 * 3
    code, _, err = run_cli(["verify", "--suite", "lemma24", "--n", "3", "--lambda", "1,1,2"])
    assert code == 2


def test_verify_branching_flag():
    code, out, _ = run_cli(["verify", "--suite", "branching", "--n", "2", "--k", "1", "--l", "2"])
    assert code == 0
    assert json.loads(out)["l"] == 2


def test_verify_all_emits_array_and_skips_over_budget(capsys=None):
    code, out, err = run_cli(["verify", "--suite", "all", "--n", "5", "--k", "2"])
    assert code == 0
    reports = json.loads(out)
    suites = [r["suite"] for r in reports]
    assert "thm11" in suites and "thm32" in suites
    assert "prop21" not in suites  # over its cap at (5, 2), noted on stderr
    assert "skipping prop21" in err


def test_verify_output_stable_across_jobs():
    def normalized(argv):
        code, out, _ = run_cli(argv)
        assert code == 0
        payload = json.loads(out)
        payload.pop("elapsed_ms")
        return payload

    base = ["verify", "--suite", "thm12", "--n", "4", "--k", "1"]
    assert normalized(base + ["--jobs", "1"]) == normalized(base + ["--jobs", "4"])


def test_conjecture_command():
    code, out, _ = run_cli(["conjecture", "--n", "6", "--k", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["total"] == 80 and len(payload["zero_coefficients"]) == 12
    assert payload["is_prime_power"] is False and payload["consistent_with_conjecture"] is True


def test_eval_methods_agree_across_family():
    for lam in ("1,1,1", "1,1,2", "1,2,2", "1,2,3", "2,2,2", "1,3,3", "3,3,3"):
        seen = set()
        for method in ("dp", "naive", "auto"):
            code, out, _ = run_cli(["eval", "--n", "3", "--lambda", lam, "--method", method])
            assert code == 0
            seen.add(json.loads(out)["value"])
        assert len(seen) == 1, lam


def test_verify_failures_exit_one(monkeypatch):
    from msproots import cli
    from msproots.verify import Failure, VerificationReport

    def broken(n, k, jobs=1):
        return VerificationReport("thm11", n, k, 1,
                                  [Failure("lambda=1,1", "0", "1")], 0.0)

    monkeypatch.setattr(cli.checks, "check_thm11", broken)
    code, out, _ = run_cli(["verify", "--suite", "thm11", "--n", "2", "--k", "1"])
    assert code == 1
    assert json.loads(out)["failures"] == [{"lambda": "lambda=1,1", "expected": "0", "actual": "1"}]


def test_usage_exit_codes():
    code, _, _ = run_cli(["nosuchcommand"])
    assert code == 2
    code, _, _ = run_cli([])
    assert code == 2
    code, _, _ = run_cli(["--help"])
    assert code == 0
