import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from keypolys.cli import run
from keypolys.config import chain_to_json, load_config, read_config
from keypolys.errors import ConfigError
from keypolys.algebra.tower import Tower

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
EX22 = str(CONFIGS / "ex22.json")
BAD = str(CONFIGS / "bad_gamma.json")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, data, name="chain.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_eval_example():
    assert call("eval", "--chain", EX22, "--poly", "x^2+y^3") == (0, "10/3\n", "")
    assert call("eval", "--chain", EX22, "--poly", "x^2+y^3", "--step", "0")[1] == "3\n"
    assert call("eval", "--chain", EX22, "--poly", "0")[1] == "inf\n"


def test_bad_gamma_exits_2():
    code, out, err = call("eval", "--chain", BAD, "--poly", "x")
    assert code == 2 and out == ""
    assert "GammaNotGreater at step 1" in err
    assert err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["eval", "--chain", EX22],
        ["eval", "--chain", EX22, "--poly", "x^"],
        ["eval", "--chain", "/nonexistent.json", "--poly", "x"],
        ["example5", "--p", "4", "--depth", "1"],
        ["example5", "--p", "3", "--depth", "0"],
        ["example5", "--p", "3", "--depth", "3"],
        ["check", "same-augment", "--chain", EX22],
    ],
)
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


@pytest.mark.parametrize("extra", [[], ["--nested"], ["--step", "0"]])
def test_expand_verifies(extra):
    code, out, _ = call("expand", "--chain", EX22, "--poly", "x^5 + y*x^3 + y^7", "--verify", *extra)
    assert code == 0
    assert out.splitlines()[-1] == "verify,ok"


def test_expand_output():
    _, out, _ = call("expand", "--chain", EX22, "--poly", "(x^2+y^3)^2 + y")
    assert out.splitlines() == ["pivot,1,x^2 + y^3", "coeff,0,y", "coeff,2,1"]


def test_newton_output():
    code, out, _ = call("newton", "--chain", EX22, "--poly", "x^2 + y*x + y^3")
    assert code == 0
    assert out.splitlines() == ["vertex,3,0", "vertex,1,1", "vertex,0,2", "side,-2,0,1", "side,-1,1,2"]


def test_validate_chain(tmp_path):
    code, out, _ = call("validate-chain", EX22)
    assert code == 0
    assert all(line.startswith("STEP ") and ": CHECK " in line for line in out.splitlines())
    code, out, _ = call("validate-chain", BAD)
    assert code == 1 and "gamma_above: FAIL" in out


def test_example5_rows(tmp_path):
    csv_path = tmp_path / "t.csv"
    code, out, _ = call("example5", "--p", "3", "--depth", "2", "--csv", str(csv_path))
    lines = out.splitlines()
    assert lines[0] == "i,beta_i,mu_i_f,identity_ok,irreducibility_ok,pivot"
    assert lines[1].startswith("1,47/48,47/16,true,true,")
    assert lines[2].startswith("2,191/192,191/64,true,true,")
    assert "Q_2=Q_{x,2}" in lines[2]
    assert code == 0
    assert csv_path.read_text() == out


def test_check_commands():
    code, out, _ = call("check", "prop36", "--chain", EX22, "--samples", "20")
    assert code == 0 and out.startswith("CHECK prop36: PASS samples=20")
    assert call("check", "degree-rule", "--chain", EX22, "--samples", "20")[1] == out
    code, out, _ = call("check", "delta", "--chain", EX22, "--samples", "10")
    assert code == 0
    code, out, _ = call(
        "check", "same-augment", "--chain", EX22, "--step", "0",
        "--phi1", "x^2+y^3", "--phi2", "x^2+y^3+y^4", "--gamma", "10/3", "--samples", "20",
    )
    assert code == 0 and "PASS" in out


def test_output_is_deterministic():
    a = call("check", "prop36", "--chain", EX22, "--samples", "15", "--seed", "4")
    b = call("check", "prop36", "--chain", EX22, "--samples", "15", "--seed", "4")
    assert a == b


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "keypolys", "eval", "--chain", EX22, "--poly", "x"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and res.stdout == "3/2\n"


# ----------------------------------------------------------------------------
# configuration files


def base_config():
    return json.loads((CONFIGS / "ex22.json").read_text())


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(extra=1),
        lambda d: d["base"].update(field="R"),
        lambda d: d["base"].update(p=3),
        lambda d: d["steps"][0].update(gamma=1.5),
        lambda d: d["steps"][0].update(phi="x^2"),
        lambda d: d["steps"][1].update(note="x"),
        lambda d: d.update(steps=[]),
        lambda d: d.update(limit={"builtin": "nope"}),
        lambda d: d.update(limit={"builtin": "tower5-y"}),
        lambda d: d.update(continued=[[1]]),
    ],
)
def test_config_rejections(mutate):
    data = base_config()
    mutate(data)
    with pytest.raises(ConfigError):
        load_config(data)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(ConfigError, match="invalid JSON"):
        read_config(path)


def test_tower5_builtin_config(tmp_path):
    data = {
        "base": {"field": "Fp", "p": 3, "tower": ["z", "y"]},
        "outer_var": "x",
        "steps": [{"phi": "x", "gamma": "11/12"}, {"phi": "x - (y^4 - z*y^2 + z^5*y + z^2)^2/z^11", "gamma": "47/48"}],
        "limit": {"builtin": "tower5-y"},
        "continued": [[0, 1]],
    }
    path = write(tmp_path, data)
    assert call("eval", "--chain", path, "--poly", "x^3 - y^2 - z") == (0, "47/16\n", "")
    assert call("validate-chain", path)[0] == 0


def test_config_round_trip():
    cfg = read_config(EX22)
    data = chain_to_json(cfg.tower, cfg.steps)
    again = load_config(data)
    assert again.steps == cfg.steps
    assert chain_to_json(Tower.prime(5, ("z", "y"), "x"), [])["base"] == {"field": "Fp", "p": 5, "tower": ["z", "y"]}
