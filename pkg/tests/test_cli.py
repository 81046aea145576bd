import json
from pathlib import Path

import pytest

from lpcompact import __version__
from lpcompact.cli import cmd_audit, cmd_rademacher, cmd_riesz_curve, main
from lpcompact.config import ConfigError, build_run

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(tmp_path, raw, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


def read_rows(path):
    lines = Path(path).read_text().splitlines()
    return lines[0], [l.split(",") for l in lines[2:]]


def test_rademacher_exit_codes(tmp_path):
    out = tmp_path / "r.csv"
    assert cmd_rademacher(4, 4, 2, "0.9", str(out)) == 0
    header, rows = read_rows(out)
    assert header.startswith(f"# lpcompact {__version__} rademacher config_sha256=")
    assert cmd_rademacher(1, 1, 0, 1, str(out)) == 0
    assert cmd_rademacher(5, 3, 1, 1, str(out)) == 2
    assert cmd_rademacher(3, 3, 5, 1, str(out)) == 2
    assert cmd_rademacher(3, 3, 1, 0, str(out)) == 2
    assert cmd_rademacher(3, 3, 1, "abc", str(out)) == 2


def test_rademacher_stdout(capsys):
    assert main(["rademacher", "--N", "2", "--L", "2", "--k", "1"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# lpcompact") and "family L1 exact vs predicted" in text


def test_audit_configs(tmp_path):
    out = tmp_path / "a.csv"
    assert cmd_audit(str(CONFIGS / "rademacher_audit.json"), str(out)) == 0
    _, rows = read_rows(out)
    assert ["summary", "", "", "", "T", "14", "14", "", "", ""] in rows
    assert all(r[-1] != "false" for r in rows)
    assert cmd_audit(str(CONFIGS / "constant_audit.json"), str(out)) == 0
    assert "44" in out.read_text()


def test_audit_frechet_failure(tmp_path, capsys):
    out = tmp_path / "a.csv"
    assert cmd_audit(str(CONFIGS / "frechet_budget.json"), str(out)) == 3
    err = capsys.readouterr().err
    assert "member" in err
    _, rows = read_rows(out)
    members = sorted({int(r[1]) for r in rows if r[0] == "certificate"})
    assert members == [2, 3, 4, 5]


def test_audit_no_feasible_delta(tmp_path):
    raw = {
        "space": {"dyadic_level": 1},
        "values": {"kind": "finite", "norm": "sum", "dim": 1},
        "family": {"members": [{"values": [100, 0]}]},
        "epsilon": "1/4",
        "delta_grid": ["1/8"],
    }
    assert cmd_audit(write(tmp_path, raw), str(tmp_path / "o.csv")) == 3


def test_audit_config_errors(tmp_path):
    assert cmd_audit(str(tmp_path / "missing.json")) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cmd_audit(str(bad)) == 2
    raw = json.loads((CONFIGS / "rademacher_audit.json").read_text())
    assert cmd_audit(write(tmp_path, {**raw, "bogus": 1})) == 2
    assert cmd_audit(write(tmp_path, {**raw, "family": {"members": []}})) == 2
    assert cmd_audit(write(tmp_path, {**raw, "family": {"generator": "rademacher_l1", "N": 5, "L": 2}})) == 2


@pytest.mark.parametrize(
    "patch",
    [
        {"space": {"dyadic_level": 2, "weights": [1]}},
        {"space": {"weights": [1, 0]}},
        {"p": "1/2"},
        {"epsilon": 0},
        {"delta_grid": ["1/2", "1/4"]},
        {"values": {"kind": "sparse", "norm": "euclid"}},
        {"chain": {"dyadic_levels": [0, 9]}},
        {"block_budget": 0},
        {"family": {"generator": "rademacher_l1", "N": 2, "L": 4, "extra": True}},
    ],
)
def test_schema_rejects(patch):
    raw = json.loads((CONFIGS / "rademacher_audit.json").read_text())
    with pytest.raises(ConfigError):
        build_run({**raw, **patch})


def test_riesz_curve(tmp_path):
    out = tmp_path / "c.csv"
    assert cmd_riesz_curve(str(CONFIGS / "riesz_r3.json"), str(out)) == 0
    _, rows = read_rows(out)
    gaps = [r[5] for r in rows if r[0] == "curve"]
    assert gaps == ["1", "1", "1", "0"]
    raw = json.loads((CONFIGS / "riesz_r3.json").read_text())
    assert cmd_riesz_curve(write(tmp_path, {**raw, "chain": {"dyadic_levels": [3, 0]}})) == 2
    del raw["chain"]
    assert cmd_riesz_curve(write(tmp_path, raw)) == 2


def test_unknown_subcommand():
    assert main(["nope"]) == 2
    assert main([]) == 2


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cmd_audit(str(CONFIGS / "rademacher_audit.json"), str(a))
    cmd_audit(str(CONFIGS / "rademacher_audit.json"), str(b))
    assert a.read_bytes() == b.read_bytes()
    cmd_rademacher(6, 7, 5, "0.9", str(a), seed=11)
    cmd_rademacher(6, 7, 5, "0.9", str(b), seed=11)
    assert a.read_bytes() == b.read_bytes()


def test_audit_needs_delta_grid(tmp_path):
    raw = json.loads((CONFIGS / "riesz_r3.json").read_text())
    assert cmd_audit(write(tmp_path, raw)) == 2


def test_audit_reports_profile_and_probes(tmp_path):
    out = tmp_path / "a.csv"
    assert cmd_audit(str(CONFIGS / "rademacher_audit.json"), str(out)) == 0
    _, rows = read_rows(out)
    tails = {r[4]: r[5] for r in rows if r[0] == "tail"}
    assert tails == {"M=1/2": "1", "M=1": "0", "M=2": "0"}
    assert ["covering", "", "", "", "probe sets", "256", "256", "", "", ""] in rows


def test_probe_needs_dyadic_space():
    raw = json.loads((CONFIGS / "constant_audit.json").read_text())
    with pytest.raises(ConfigError):
        build_run({**raw, "probe": {"level": 0}})
