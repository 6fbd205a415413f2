import json
import os

import numpy as np
import pytest

from pseudoherm.audit import EQUATION_IDS
from pseudoherm.cli import main


def run(args):
    return main(args)


def test_audit_json(tmp_path):
    out = tmp_path / "audit.json"
    assert run(["audit", "--omega", "3", "--alpha", "1", "--z", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [e["equation_id"] for e in doc["entries"]] == list(EQUATION_IDS)
    assert doc["environment"]["model"] == {"omega": 3, "alpha": 1}
    gated = [e for e in doc["entries"] if e["threshold"] is not None]
    assert gated and all(e["status"] == "pass" for e in gated)


def test_audit_byte_deterministic(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(["audit", "--omega", "3", "--alpha", "1", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_audit_infeasible_metric_is_flag_not_failure(tmp_path):
    out = tmp_path / "audit.json"
    assert run(["audit", "--omega", "3", "--alpha", "2", "--z", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    eq17 = next(e for e in doc["entries"] if e["equation_id"] == "Eq17")
    assert eq17["status"] == "flag"
    assert "no-real-metric" in eq17["description"]


def test_spectrum_csv(tmp_path):
    out = tmp_path / "spec.csv"
    assert run(["spectrum", "--omega", "3", "--alpha", "2", "--dim", "128", "--out", str(out)]) == 0
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "n,E_exact,E_numeric,abs_err"
    rows = [l.split(",") for l in lines[1:]]
    assert len(rows) == 8
    for row in rows:
        e_exact, abs_err = float(row[1]), float(row[3])
        assert abs_err < 1e-5 * e_exact


def test_spectrum_alpha_zero(tmp_path):
    out = tmp_path / "spec.csv"
    assert run(["spectrum", "--omega", "2", "--alpha", "0", "--out", str(out)]) == 0
    rows = [l.split(",") for l in out.read_text().splitlines()[2:]]
    for k, row in enumerate(rows):
        assert float(row[2]) == pytest.approx(2.0 * (k + 0.5), abs=1e-10)


def test_malformed_flags_exit_nonzero():
    with pytest.raises(SystemExit) as err:
        main(["spectrum", "--omega", "not-a-number"])
    assert err.value.code != 0
    with pytest.raises(SystemExit):
        main(["not-a-command"])


def test_metric_solve_json(tmp_path, capsys):
    assert run(["metric", "solve", "--omega", "3", "--alpha", "1", "--z", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasible"] is True
    assert doc["eps_metric"] == pytest.approx(0.81049698947675, abs=1e-9)
    assert run(["metric", "solve", "--omega", "3", "--alpha", "2", "--z", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasible"] is False


def test_metric_verify_json(tmp_path, capsys):
    assert run(["metric", "verify", "--omega", "3", "--alpha", "1", "--z", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["defects"]["hermiticity_of_h"] < 1e-8
    assert doc["defects"]["pseudo_hermiticity_of_eta"] < 1e-8
    assert doc["eta_min_eigenvalue"] > 0.0


def test_rm_density_csv(tmp_path):
    out = tmp_path / "dens.csv"
    assert run(
        ["rm", "density", "--omega", "3", "--alpha", "2", "--delta", "10",
         "--eps-energy", "5", "--n", "1", "--out", str(out)]
    ) == 0
    text = out.read_text().splitlines()
    comments = [l for l in text if l.startswith("#")]
    assert any("normalizable=true" in c for c in comments)
    header = [l for l in text if not l.startswith("#")][0]
    assert header == "x,re_phi,im_phi,density"
    rows = [l.split(",") for l in text if not l.startswith("#")][1:]
    dens = np.array([float(r[3]) for r in rows])
    x = np.array([float(r[0]) for r in rows])
    assert np.trapezoid(dens, x) == pytest.approx(1.0, abs=1e-6)


def test_rm_spectrum_csv(tmp_path):
    out = tmp_path / "rm.csv"
    assert run(
        ["rm", "spectrum", "--omega", "3", "--alpha", "2", "--delta", "10",
         "--eps-energy", "5", "--n", "3", "--out", str(out)]
    ) == 0
    rows = [l.split(",") for l in out.read_text().splitlines() if not l.startswith("#")][1:]
    assert [r[2] for r in rows] == ["true", "true", "true"]


def test_figures_emit_and_flags(tmp_path):
    os.makedirs(tmp_path / "figs", exist_ok=True)
    assert run(["figures", "--omega", "3", "--alpha", "1", "--out", str(tmp_path / "figs")]) == 0
    for name in ("fig1.csv", "fig2.csv", "fig3.csv", "sweep.csv"):
        assert (tmp_path / "figs" / name).exists()
    fig3 = (tmp_path / "figs" / "fig3.csv").read_text()
    assert "normalizable=false" in fig3
    assert "warning=" in fig3
    fig2 = (tmp_path / "figs" / "fig2.csv").read_text()
    assert "normalizable=true" in fig2
    sweep = (tmp_path / "figs" / "sweep.csv").read_text().splitlines()
    gaps = [l for l in sweep if l.endswith(",")]
    values = [l for l in sweep if "," in l and not l.endswith(",") and not l.startswith(("#", "z"))]
    assert gaps and values  # infeasible z are gaps, feasible carry eps


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"omega": 3.0, "alpha": 1.0, "z": 2.0}))
    assert run(["metric", "solve", "--config", str(cfg)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasible"] is True
    assert doc["z"] == 2.0
    # CLI flag overrides the file
    assert run(["metric", "solve", "--config", str(cfg), "--z", "1.0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["z"] == 1.0


def test_equation_coverage_pinned():
    assert list(EQUATION_IDS) == [f"Eq{k}" for k in range(1, 56)]
