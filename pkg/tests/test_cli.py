import json
import subprocess
import sys

import pytest

from conftest import cache_env
from dmct import cache
from dmct.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_class_group_example(capsys):
    code, rep = run_json(capsys, "class-group", "--q", "2", "--p", "T^2+T+1", "--r", "2")
    assert code == 0
    assert rep["result"]["invariant_factors"] == [5]
    assert rep["tool"] == "dmct" and rep["cache"] == "miss"
    assert rep["checks"] and all(c["pass"] for c in rep["checks"])


def test_class_group_grid_csv(capsys):
    code, out, _ = run(capsys, "class-group", "--q", "2", "--p", "T", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "level,invariant_factors,order,M,N"
    assert len(lines) == 6
    assert lines[5].startswith("q=2;p=T;r=5,16 8 8,")


def test_eval_example(capsys):
    code, out, _ = run(capsys, "eval", "--cochain", "delta:i=0", "--edge", "k=3;y=pi^1;eps=1", "--q", "2", "--p", "T", "--r", "2", "--format", "text")
    assert code == 0
    assert out.strip() == "1"


def test_beta_cokernel(capsys):
    _, rep = run_json(capsys, "degeneracy", "--op", "beta-cokernel", "--q", "2", "--p", "T", "--r", "5")
    assert rep["result"]["invariant_factors"] == [2]
    _, rep = run_json(capsys, "degeneracy", "--op", "beta-cokernel", "--q", "3", "--p", "T", "--r", "6")
    assert rep["result"]["invariant_factors"] == [3, 3]


def test_degeneracy_maps(capsys):
    div = json.dumps([{"height_exp": 1, "coeff": "1"}])
    code, rep = run_json(capsys, "degeneracy", "--op", "beta", "--q", "2", "--p", "T^2+T+1", "--r", "2", "--divisor", div)
    assert code == 0
    assert rep["result"]["images"][0]["image"] == [{"height_exp": 0, "coeff": "3"}, {"height_exp": 1, "coeff": "0"}]
    for op in ("alpha", "up", "delta", "standard"):
        code, rep = run_json(capsys, "degeneracy", "--op", op, "--q", "3", "--p", "T", "--r", "3")
        assert code == 0, op


def test_cusps(capsys):
    code, rep = run_json(capsys, "cusps", "--q", "2", "--p", "T", "--r", "4")
    assert code == 0
    assert rep["result"]["counts"] == [1, 1, 2, 1, 1]
    assert rep["result"]["total"] == 6


def test_hecke_and_eisenstein(capsys):
    code, rep = run_json(capsys, "hecke", "--cochain", "delta:i=1", "--op", "U", "--edge", "k=3;y=pi^1;eps=0", "--q", "2", "--p", "T", "--r", "2")
    assert code == 0
    assert rep["result"]["values"][0]["image"] == "-2"
    code, rep = run_json(capsys, "eisenstein", "--q", "3", "--p", "T", "--r", "2")
    assert code == 0 and rep["summary"]["failed"] == 0


def test_verify_single_suite(capsys):
    code, rep = run_json(capsys, "verify", "--suite", "hecke", "--q", "3", "--p", "T", "--r", "2", "--no-cache")
    assert code == 0
    assert rep["summary"]["total"] > 0
    keys = [(c["suite"], c["name"], json.dumps(c["params"], sort_keys=True)) for c in rep["checks"]]
    assert len(keys) == len(set(keys))


@pytest.mark.parametrize("suite", ["structure", "cokernel", "order", "edges"])
def test_expect_fail_flips_exit_code(capsys, suite):
    code, rep = run_json(capsys, "verify", "--suite", suite, "--expect-fail", "--no-cache")
    assert code == 1
    assert rep["summary"]["failed"] > 0


@pytest.mark.parametrize(
    "argv",
    [
        ["class-group", "--q", "2", "--p", "T^2+1", "--r", "2"],
        ["class-group", "--q", "2", "--p", "T", "--r", "0"],
        ["class-group", "--q", "6", "--p", "T", "--r", "2"],
        ["eval", "--q", "2", "--p", "T", "--r", "2", "--cochain", "bogus"],
        ["eval", "--q", "2", "--p", "T", "--r", "2", "--cochain", "En", "--edge", "nonsense"],
        ["verify", "--suite", "nope"],
        ["cusps", "--p", "T", "--r", "2"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv, "--no-cache")
    assert code == 2
    assert err.startswith("error:")


def test_depth_must_be_at_least_4(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--depth", "3"])
    assert exc.value.code == 2


def test_cache_hit_miss_and_corruption(capsys):
    argv = ["class-group", "--q", "3", "--p", "T", "--r", "3"]
    _, first = run_json(capsys, *argv)
    _, second = run_json(capsys, *argv)
    assert (first["cache"], second["cache"]) == ("miss", "hit")
    assert {**first, "cache": None} == {**second, "cache": None}
    _, other = run_json(capsys, *argv[:-1], "4")
    assert other["cache"] == "miss"
    entries = list(cache.cache_dir().glob("*.json"))
    assert len(entries) == 2
    for path in entries:
        path.write_text("{not json")
    code, out, err = run(capsys, *argv)
    assert code == 0 and "corrupted cache file" in err
    assert json.loads(out)["cache"] == "miss"


def test_no_cache_output_is_byte_identical(capsys):
    argv = ["verify", "--suite", "degeneracy", "--q", "2", "--p", "T", "--no-cache"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.loads(a)["cache"] == "off"
    assert not cache.cache_dir().exists()


def test_timing_is_opt_in(capsys):
    _, rep = run_json(capsys, "cusps", "--q", "2", "--p", "T", "--r", "2", "--timing", "--no-cache")
    assert "timing" in rep
    _, rep = run_json(capsys, "cusps", "--q", "2", "--p", "T", "--r", "2", "--no-cache")
    assert "timing" not in rep


def test_text_format_for_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "order", "--format", "text", "--no-cache")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS order:") for line in lines[:-1])
    assert lines[-1].endswith("checks passed")


def test_module_entry_point_exit_codes(tmp_path):
    env = cache_env(tmp_path)
    ok = subprocess.run([sys.executable, "-m", "dmct", "class-group", "--q", "2", "--p", "T^2+T+1", "--r", "2"], capture_output=True, text=True, env=env)
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["result"]["invariant_factors"] == [5]
    fail = subprocess.run([sys.executable, "-m", "dmct", "verify", "--suite", "cusps", "--expect-fail", "--no-cache"], capture_output=True, env=env)
    assert fail.returncode == 1
    bad = subprocess.run([sys.executable, "-m", "dmct", "cusps", "--q", "2", "--p", "T^2+1", "--r", "2"], capture_output=True, text=True, env=env)
    assert bad.returncode == 2 and "not prime" in bad.stderr
