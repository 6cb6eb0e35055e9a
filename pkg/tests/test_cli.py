import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from negtemp import cli
from negtemp.cli import emit_csv, main, parse_args
from negtemp.scan import SweepGrid
from negtemp.spin_ops import NumericalError


def test_parse_thermo():
    cfg = parse_args("thermo --system chain6 --alpha 1 --beta -4:4:801 --out fig2.csv".split())
    assert cfg.command == "thermo"
    assert cfg.system.name == "chain6"
    assert cfg.alphas == [1.0]
    assert cfg.grid == SweepGrid(-4, 4, 801)
    assert cfg.output_path == "fig2.csv" and cfg.format == "csv"
    assert cfg.model == "dipolar"


def test_parse_threshold_alpha_list():
    cfg = parse_args("threshold --system ring4 --alpha 0.5,1,1.5 --out th.json".split())
    assert cfg.alphas == [0.5, 1.0, 1.5]
    assert cfg.format == "json"
    assert [s.name for s in cfg.systems] == ["ring4"]


@pytest.mark.parametrize("argv,needle", [
    ("thermo --system chain99 --alpha 1", "unknown preset"),
    ("thermo --system chain6 --alpha 1 --beta 4:-4:10", "malformed grid"),
    ("thermo --system chain6 --alpha 1 --beta 1:2", "malformed grid"),
    ("thermo --alpha 1", "required: --system"),
    ("thermo --system chain6", "required: --alpha"),
    ("thermo --system chain6 --alpha x", "malformed number list"),
    ("concurrence --system ring4 --alpha 1 --pair 1,9", "out of range"),
    ("thermo --system chain6 --alpha 1,2", "single --alpha"),
    ("thermo --system chain6 --alpha 1 --full-dipolar", "requires --coords"),
    ("units --gamma 4", "exactly one of --r12"),
    ("bogus", "invalid choice"),
])
def test_usage_errors(argv, needle, capsys):
    assert main(argv.split()) == 2
    assert needle in capsys.readouterr().err


def test_emit_csv_headers(tmp_path):
    for command, header in [
        ("thermo", "beta,energy,entropy,heat_capacity"),
        ("concurrence", "beta,alpha,q,concurrence"),
        ("threshold", "system,alpha,beta_star_pos,beta_star_neg"),
    ]:
        out = tmp_path / f"{command}.csv"
        emit_csv([], cli.SCHEMAS[command], out)
        assert out.read_text() == header + "\n"


def test_emit_csv_precision_and_none(tmp_path):
    out = tmp_path / "x.csv"
    emit_csv([{"system": "ring4", "alpha": 1 / 3, "beta_star_pos": None, "beta_star_neg": -0.8}],
             cli.SCHEMAS["threshold"], out)
    assert out.read_text().splitlines()[1] == "ring4,0.333333333333,nan,-0.8"


def test_emit_csv_unwritable(tmp_path):
    with pytest.raises(OSError):
        emit_csv([], ["a"], tmp_path / "missing" / "x.csv")


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_thermo_run_round_trips(tmp_path):
    out = tmp_path / "t.csv"
    assert main(f"thermo --system ring4 --alpha 1 --beta -2:2:21 --out {out}".split()) == 0
    rows = _read_csv(out)
    schema, records = cli.run(parse_args("thermo --system ring4 --alpha 1 --beta -2:2:21".split()))
    assert len(rows) == len(records) == 21
    for row, rec in zip(rows, records):
        for col in schema:
            assert float(row[col]) == pytest.approx(rec[col], rel=1e-11, abs=1e-300)


def test_output_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        main(f"concurrence --system ring4 --alpha 0.5,1 --beta -3:3:31 --out {path}".split())
    assert a.read_bytes() == b.read_bytes()


def test_concurrence_json(tmp_path):
    out = tmp_path / "c.json"
    assert main(f"concurrence --system chain6 --alpha 1,1.5 --beta -1:1:5 --out {out}".split()) == 0
    data = json.loads(out.read_text())
    assert len(data) == 10
    assert list(data[0]) == ["beta", "alpha", "q", "concurrence"]
    assert data[2]["beta"] == 0.0 and data[2]["concurrence"] == 0.0


def test_threshold_run(tmp_path):
    out = tmp_path / "th.csv"
    assert main(f"threshold --system chain6,ring4 --alpha 1 --out {out}".split()) == 0
    rows = _read_csv(out)
    assert [r["system"] for r in rows] == ["chain6", "ring4"]
    pos = [float(r["beta_star_pos"]) for r in rows]
    neg = [float(r["beta_star_neg"]) for r in rows]
    assert all(p > 0 for p in pos) and all(n < 0 for n in neg)


def test_threshold_secular_reports_missing_side(tmp_path):
    out = tmp_path / "th.json"
    assert main(f"threshold --system chain6 --alpha 1 --model secular --out {out}".split()) == 0
    row = json.loads(out.read_text())[0]
    assert row["beta_star_neg"] is None and row["beta_star_pos"] > 0


def test_spectrum_run(capsys):
    assert main("spectrum --system ring4 --alpha 1 --model secular".split()) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "index,energy"
    energies = [float(x.split(",")[1]) for x in lines[1:]]
    assert len(energies) == 16 and energies == sorted(energies)
    assert sum(energies) == pytest.approx(0, abs=1e-9)


def test_units_runs(capsys):
    assert main("units --omega-d 1e5".split()) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "omega_d_hz,temperature_kelvin"
    assert 3e-6 <= float(out[1].split(",")[1]) <= 6e-6
    assert main("units --gamma 4.0025 --local-field 8 --beta 2,-0.8".split()) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "beta,temperature_kelvin"
    assert float(rows[1].split(",")[1]) == pytest.approx(0.77e-6, rel=0.02)
    assert main("units --gamma 4.0025 --r12 2 --field 100 --temperature 1e-6".split()) == 0
    assert capsys.readouterr().out.startswith("alpha,beta\n")


def test_full_dipolar_flag(tmp_path):
    coords = tmp_path / "line.xyz"
    coords.write_text("0 0 0\n1 0 0\n2 0 0\n3 0 0\n")
    out = tmp_path / "full.csv"
    args = f"concurrence --full-dipolar --coords {coords} --alpha 1 --beta -2:2:9 --out {out}"
    assert main(args.split()) == 0
    ref = tmp_path / "ref.csv"
    # a line of spins perpendicular to the field is the uniform dipolar model
    main(f"concurrence --system custom:{coords} --alpha 1 --beta -2:2:9 --out {ref}".split())
    a = np.array([[float(v) for v in r.values()] for r in _read_csv(out)])
    b = np.array([[float(v) for v in r.values()] for r in _read_csv(ref)])
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_missing_custom_file(capsys):
    assert main("thermo --system custom:/nonexistent.xyz --alpha 1".split()) == 2
    assert "cannot read custom geometry" in capsys.readouterr().err


def test_numeric_failure_exit_status(monkeypatch, capsys):
    def boom(cfg):
        raise NumericalError("eigensolver failed")

    monkeypatch.setattr(cli, "run", boom)
    assert main("spectrum --system ring4 --alpha 1".split()) == 1
    assert "numerical failure" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "s.csv"
    proc = subprocess.run([sys.executable, "-m", "negtemp", "spectrum", "--system", "ring4",
                           "--alpha", "1", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith("index,energy\n")
    proc = subprocess.run([sys.executable, "-m", "negtemp", "thermo", "--system", "chain99",
                           "--alpha", "1"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "unknown preset" in proc.stderr
