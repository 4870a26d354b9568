import json
import subprocess
import sys

import pytest

from sl2ext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def envelope(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


@pytest.mark.parametrize("p, r, q", [(2, 1, 2), (3, 2, 6)])
def test_ext(capsys, p, r, q):
    env = envelope(capsys, "ext", "--p", str(p), "--r", str(r))
    assert env["command"] == "ext"
    assert env["result"]["dim"] == 1
    assert env["parameters"]["q"] == q
    decomposition = env["result"]["decomposition"]
    assert decomposition[-1] == [q, 1] and sum(d for _, d in decomposition) == 1
    assert any("GL2" in note for note in env["notes"])


def test_ext_general_q_is_flagged(capsys):
    env = envelope(capsys, "ext", "--p", "2", "--r", "2", "--q", "3")
    assert "decomposition" not in env["result"]
    assert any("extrapolation" in note for note in env["notes"])


@pytest.mark.parametrize(
    "argv",
    [
        ["ext", "--p", "4", "--r", "1"],
        ["ext", "--p", "2", "--r", "0"],
        ["verify", "--primes", "6", "--r-max", "1"],
        ["trace", "--p", "2", "--n", "1", "--m", "0", "--s", "1", "--format", "svg"],
        ["blocks", "--p", "3", "--lambda", "-1", "--mu", "0"],
        ["blocks", "--p", "3", "--lambda", "40", "--mu", "0", "--oracle", "10"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "n, m, s, p, dim",
    [(4, 0, 1, 2, 1), (2, 2, 1, 2, 0), (2, 0, 0, 5, 1)],
)
def test_ext_dn(capsys, n, m, s, p, dim):
    env = envelope(capsys, "ext-dn", "--p", str(p), "--n", str(n), "--m", str(m), "--s", str(s))
    assert env["result"] == {"dim": dim}


def test_trace_json_chain(capsys):
    env = envelope(capsys, "trace", "--p", "2", "--n", "8", "--m", "0", "--s", "2", "--format", "json")
    nodes = env["result"]["nodes"]
    assert env["result"]["root"] == "0:8:2"
    nonzero = sorted((k for k, v in nodes.items() if v["dim"]), key=lambda k: -int(k.split(":")[2]))
    assert nonzero == ["0:8:2", "0:4:1", "0:2:0"]


def test_trace_dot_single_vertex(capsys):
    code, out, _ = run(capsys, "trace", "--p", "3", "--n", "2", "--m", "0", "--s", "0", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph") and out.count("->") == 0 and out.count("[label=") == 1


def test_trace_pruned_root_only(capsys):
    env = envelope(capsys, "trace", "--p", "2", "--n", "1", "--m", "3", "--s", "1", "--format", "json", "--prune")
    assert list(env["result"]["nodes"]) == ["3:1:1"]
    assert env["result"]["nodes"]["3:1:1"]["dim"] == 0


@pytest.mark.parametrize("p, lam, mu, expected", [(3, 2, 6, False), (2, 2, 4, True), (3, 0, 0, True)])
def test_blocks(capsys, p, lam, mu, expected):
    env = envelope(capsys, "blocks", "--p", str(p), "--lambda", str(lam), "--mu", str(mu))
    assert env["result"]["same_block"] is expected
    assert env["result"]["lambda_split"] == list(divmod(lam, p))


def test_blocks_with_oracle(capsys):
    env = envelope(capsys, "blocks", "--p", "2", "--lambda", "2", "--mu", "6", "--oracle", "50")
    assert env["result"]["orbit_linked"] is True and env["result"]["orbit_bound"] == 50


@pytest.mark.parametrize(
    "p, r, N, coeffs",
    [(2, 1, 4, [1, 0, 4, 0, 10]), (2, 2, 4, [1, 0, 4, 0, 14]), (3, 1, 1, [1, 0])],
)
def test_hilbert(capsys, p, r, N, coeffs):
    env = envelope(capsys, "hilbert", "--p", str(p), "--r", str(r), "--max-degree", str(N))
    assert env["result"]["coefficients"] == coeffs
    assert [e["degree"] for e in env["result"]["ledger"]] == [2 * p**i for i in range(r)]


def test_verify_small_grid(capsys):
    code, out, err = run(capsys, "verify", "--primes", "2", "--r-max", "1")
    assert code == 0
    assert "PASS deficit-grid" in err and "PASS deficit-trace" in err
    env = json.loads(out)
    assert env["result"]["failed"] == 0


def test_verify_exit_1_on_failure(capsys, monkeypatch):
    from sl2ext import ext

    monkeypatch.setattr(ext, "_GL2_WEYL_SECTIONS", {0: 1})
    code, out, err = run(capsys, "verify", "--primes", "2", "--r-max", "1")
    assert code == 1
    assert "FAIL corner           p=2 r=1" in err


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "sl2ext", "ext", "--p", "3", "--r", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.returncode == 0
