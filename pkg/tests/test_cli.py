"""Command-line interface: subcommands, formats, exit codes and determinism."""

import json
import subprocess
import sys

import pytest

from drinfeld_heights.algebra import FiniteField, parse_ratfunc
from drinfeld_heights.cli import main, run
from drinfeld_heights.config import load_config, read_config_text
from drinfeld_heights.errors import ConfigError

F2 = FiniteField(2)


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_height_table(capsys):
    code, out, _ = call(capsys, "height", "--p", "2", "--beta", "1/t")
    assert code == 0
    assert "value: 1" in out and "certified: True" in out


def test_height_json(capsys):
    code, out, _ = call(capsys, "height", "--p", "2", "--beta", "1/t", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == "1" and data["certified"] is True
    assert [h["place"] for h in data["places"]] == ["t", "inf"]


def test_torsion_order_json(capsys):
    code, out, _ = call(capsys, "torsion-order", "--p", "2", "--beta", "1", "--json")
    assert code == 0 and json.loads(out)["torsion_order"] == "t^2+t"


def test_uncertified_exit_code(capsys):
    code, out, _ = call(capsys, "torsion-order", "--p", "2", "--beta", "1", "--cap", "0")
    assert code == 2 and "undecided" in out
    code, out, _ = call(capsys, "height", "--p", "3", "--coefficients", "t, t+1, 1/t",
                        "--beta", "1", "--n-max", "0")
    assert code == 2 and "certified: False" in out


def test_average_csv(capsys):
    code, out, _ = call(capsys, "average", "--p", "2", "--beta", "1/t", "--deg-max", "1", "--csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("Q,place,average,target,gap")
    assert len(lines) == 1 + 3 * 2   # Q in {1, t, t+1}, places (t) and infinity
    assert all(line.endswith(",0") for line in lines[1:])   # per-Q global sums vanish


def test_siegel_scan(capsys):
    code, out, _ = call(capsys, "siegel-scan", "--p", "2", "--beta", "1/t", "--alpha", "0",
                        "--S", "t, inf", "--deg-max", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["hits"] == [] and data["largest_hit_degree"] is None
    assert "note" in data


def test_siegel_scan_rejects_torsion_beta(capsys):
    code, _, err = call(capsys, "siegel-scan", "--p", "2", "--beta", "t", "--deg-max", "2")
    assert code == 1 and "torsion" in err


def test_schinzel_scan_json_lines(capsys):
    code, out, _ = call(capsys, "schinzel-scan", "--p", "2", "--beta", "1/t",
                        "--qdeg-max", "1", "--json")
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 0
    hits = [r for r in records if not r.get("summary")]
    summary = [r for r in records if r.get("summary")]
    assert [(r["Q"], r["place"]) for r in hits] == [("t", "t+1"), ("t+1", "t^2+t+1")]
    assert summary[0]["mismatches"] == 0 and summary[0]["empirical_N"] == 1


def test_schinzel_scan_normalizes_non_integral_modules(capsys):
    code, out, _ = call(capsys, "schinzel-scan", "--p", "2", "--coefficients", "t, 1/t",
                        "--beta", "1/(t+1)", "--qdeg-max", "1", "--json")
    variants = {json.loads(line)["variant"] for line in out.strip().splitlines()}
    assert code == 0 and len(variants) == 2


def test_reduce_and_factor(capsys):
    code, out, _ = call(capsys, "reduce", "--p", "2", "--place", "t^2+t+1", "--beta", "1/t")
    assert code == 0 and "g*x + x^2" in out and "t+1" in out
    code, out, _ = call(capsys, "factor", "--p", "2", "--poly", "t^4+t^2+1", "--json")
    data = json.loads(out)
    assert code == 0 and data["factors"] == [{"prime": "t^2+t+1", "multiplicity": 2}]


def test_reduce_bad_place_is_an_error(capsys):
    code, _, err = call(capsys, "reduce", "--p", "2", "--coefficients", "t, t", "--place", "t")
    assert code == 1 and "bad reduction" in err


@pytest.mark.parametrize("argv, fragment", [
    (["height", "--p", "4", "--beta", "1"], "not prime"),
    (["height", "--p", "2", "--beta", "1/(t+"], "^"),
    (["height", "--p", "2", "--coefficients", "t+1, 1", "--beta", "1"], "must be t"),
    (["height", "--p", "2"], "beta"),
    (["height", "--p", "2", "--beta", "1", "--set", "colour=red"], "unknown key"),
])
def test_usage_errors(capsys, argv, fragment):
    code, _, err = call(capsys, *argv)
    assert code == 1 and fragment in err


def test_unknown_flag_exits_with_usage_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["height", "--bogus"])
    assert info.value.code == 1


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "carlitz.cfg"
    cfg.write_text("# Carlitz over F_2\np = 2\nmodule = t, 1\nbeta = 1/t\n")
    code, out, _ = call(capsys, "height", "--module", str(cfg))
    assert code == 0 and "value: 1" in out
    code, out, _ = call(capsys, "height", "--module", str(cfg), "--beta", "t")
    assert code == 0 and "value: 0" in out


def test_config_error_points_at_the_value(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("p = 2\nbeta = (t + 1 $\n")
    code, _, err = call(capsys, "height", "--module", str(cfg))
    assert code == 1
    assert ":2:" in err
    lines = err.rstrip("\n").splitlines()
    caret, source = lines[-1], lines[-2]
    assert source.strip() == "beta = (t + 1 $"
    assert source[caret.index("^")] == "$"


def test_config_reader_rejects_malformed_lines():
    with pytest.raises(ConfigError):
        read_config_text("p 2\n")
    with pytest.raises(ConfigError):
        read_config_text("prime = 2\n")
    assert read_config_text("coeffs = t, 1\n")["module"].value == "t, 1"


def test_config_extension_field():
    cfg = load_config(overrides=[("p", "2"), ("e", "2"), ("modulus", "1, 1, 1")])
    F = cfg.field()
    assert F.q == 4
    with pytest.raises(ConfigError):
        load_config(overrides=[("p", "2"), ("e", "2")]).field()


def test_printed_points_reparse(capsys):
    _, out, _ = call(capsys, "siegel-scan", "--p", "2", "--beta", "1/t", "--deg-max", "3",
                     "--S", "t, t+1, inf", "--json")
    data = json.loads(out)
    for report in data["reports"]:
        x = parse_ratfunc(F2, report["point"])
        assert str(x) == report["point"]


def test_output_is_deterministic():
    argv = ["schinzel-scan", "--p", "2", "--beta", "1/t", "--qdeg-max", "3", "--json"]
    assert run(argv) == run(argv)


def test_workers_do_not_change_output():
    base = ["siegel-scan", "--p", "2", "--beta", "1/(t^2+t)", "--S", "t, inf",
            "--deg-max", "4", "--json"]
    assert run(base) == run(base + ["--workers", "2"])


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "drinfeld_heights.cli", "factor", "--p", "3",
                           "--poly", "t^3 + 2*t"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "t+1" in proc.stdout and "t+2" in proc.stdout
