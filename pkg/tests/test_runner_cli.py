import json
import math
import os

import pytest

import kerropo.cli as cli
from kerropo.errors import ValidationError
from kerropo.presets import preset, preset_names
from kerropo.runner import config_hash, run, sweep


def minimal_config():
    return {
        "name": "vacuumish",
        "initial_state": {"kind": "coherent", "alpha": 0.0, "truncation": 4},
        "observables": {"distribution": True},
    }


def small_shaping_config():
    return {
        "initial_state": {"kind": "uniform", "truncation": 40},
        "shaping": {"xi": [0.0, -1.0], "gamma": math.pi, "n_center": 20,
                    "tau": 0.08},
        "evolve": {"n_steps": 600},
        "observables": {"distribution": True,
                        "peaks": {"min_height_fraction": 0.2}},
    }


def test_minimal_run_vacuum():
    res = run(minimal_config())
    header, rows = res.tables["distribution"]
    assert rows[0][1] == 1.0
    assert sum(r[1] for r in rows) == pytest.approx(1.0)


def test_run_requires_initial_state():
    with pytest.raises(ValidationError):
        run({"observables": {}})


def test_config_hash_stable_under_key_order():
    a = {"x": 1, "y": {"b": 2, "a": 3}}
    b = {"y": {"a": 3, "b": 2}, "x": 1}
    assert config_hash(a) == config_hash(b)


def test_run_writes_deterministic_csv(tmp_path):
    cfg = small_shaping_config()
    run(cfg, str(tmp_path / "a"))
    run(cfg, str(tmp_path / "b"))
    da = (tmp_path / "a" / "distribution.csv").read_bytes()
    db = (tmp_path / "b" / "distribution.csv").read_bytes()
    assert da == db
    meta = json.loads((tmp_path / "a" / "metadata.json").read_text())
    assert "peaks" in meta and meta["config_hash"]


def test_run_replays_from_metadata(tmp_path):
    cfg = small_shaping_config()
    run(cfg, str(tmp_path / "a"))
    meta = json.loads((tmp_path / "a" / "metadata.json").read_text())
    run(meta, str(tmp_path / "b"))
    assert (tmp_path / "a" / "distribution.csv").read_bytes() == \
        (tmp_path / "b" / "distribution.csv").read_bytes()


def test_sweep_single_cell_matches_run(tmp_path):
    cfg = small_shaping_config()
    res = sweep(cfg, {"shaping.gamma": [math.pi]})
    single = run(cfg)
    assert len(res["rows"]) == 1
    row = dict(zip(res["header"], res["rows"][0]))
    assert row["mean_index"] == single.scalar("mean_index")


def test_sweep_parallel_determinism(tmp_path):
    cfg = small_shaping_config()
    axes = {"shaping.gamma": [1.0, 2.0], "shaping.n_center": [10, 20]}
    serial = sweep(cfg, axes, str(tmp_path / "s"), workers=1)
    parallel = sweep(cfg, axes, str(tmp_path / "p"), workers=4)
    assert serial["rows"] == parallel["rows"]
    assert (tmp_path / "s" / "sweep.csv").read_bytes() == \
        (tmp_path / "p" / "sweep.csv").read_bytes()
    assert len(serial["rows"]) == 4


def test_sweep_isolates_failures():
    cfg = small_shaping_config()
    res = sweep(cfg, {"initial_state.truncation": [40, -3]})
    assert len(res["rows"]) == 1
    assert len(res["errors"]) == 1


def test_sweep_unknown_axis():
    with pytest.raises(ValidationError):
        sweep(small_shaping_config(), {"nope.nada": [1]})


def test_preset_names_all_build():
    for name in preset_names():
        cfg = preset(name)
        assert isinstance(cfg, dict)


def test_preset_unknown():
    with pytest.raises(ValidationError):
        preset("fig9-z")


def test_preset_alias():
    assert preset("fig1-phase-minus-i")["name"] == "fig1-a"


def test_loss_preset_shape():
    cfg = preset("loss-curves")
    assert cfg["axes"]["loss.strength_to_loss"] == [30.0, 100.0, 300.0]
    assert cfg["config"]["shaping"]["n_center"] == 4
    assert cfg["config"]["initial_state"]["alpha"] == 2.0


def test_small_loss_run_monotone(tmp_path):
    cfg = {
        "initial_state": {"kind": "coherent", "alpha": 1.0, "truncation": 8},
        "shaping": {"xi": [0.0, -0.3], "gamma": 0.9, "n_center": 1, "tau": 1.0},
        "loss": {"strength_to_loss": 50.0,
                 "checkpoints": [0.3, 0.6, 0.9],
                 "steps_per_tau": 300},
        "observables": {"distribution": True},
    }
    res = run(cfg, str(tmp_path))
    header, rows = res.tables["loss_curve"]
    inf = [r[2] for r in rows]
    assert inf[0] < inf[1] < inf[2]
    assert (tmp_path / "loss_curve.csv").exists()


def test_cli_run_and_exit_codes(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(small_shaping_config()))
    rc = cli.main(["--out", str(tmp_path / "out"), "run", str(cfg_path)])
    assert rc == 0
    assert (tmp_path / "out" / "distribution.csv").exists()
    rc = cli.main(["run", str(tmp_path / "missing.json")])
    assert rc == 1
    bad = dict(small_shaping_config())
    bad["evolve"] = {"n_steps": 600, "boundary_tol": 1e-12}
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad))
    rc = cli.main(["--out", str(tmp_path / "bad"), "run", str(bad_path)])
    assert rc == 2


def test_cli_preset_emit_config(capsys):
    rc = cli.main(["preset", "fig2-a", "--emit-config"])
    assert rc == 0
    cfg = json.loads(capsys.readouterr().out)
    assert cfg["shaping"]["n_center"] == 51


def test_cli_constraints_exit_codes(tmp_path):
    mat = preset("appendix-report")["material"]
    path = tmp_path / "mat.json"
    path.write_text(json.dumps(mat))
    rc = cli.main(["--out", str(tmp_path / "rep"), "constraints", str(path)])
    assert rc == 0
    assert (tmp_path / "rep" / "constraints.json").exists()
    mat["chi2"] = 0.0
    path.write_text(json.dumps(mat))
    rc = cli.main(["constraints", str(path)])
    assert rc == 3


def test_cli_sweep(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(small_shaping_config()))
    rc = cli.main(["--out", str(tmp_path / "sw"), "sweep", str(cfg_path),
                   "--axis", "shaping.gamma=1.0,2.0"])
    assert rc == 0
    lines = (tmp_path / "sw" / "sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 3


def test_json_output_format(tmp_path):
    run(minimal_config(), str(tmp_path), fmt="json")
    payload = json.loads((tmp_path / "distribution.json").read_text())
    assert payload[0]["probability"] == 1.0


def test_mini_loss_sweep_rows_and_monotonicity(tmp_path):
    cfg = {
        "initial_state": {"kind": "coherent", "alpha": 1.0, "truncation": 8},
        "shaping": {"xi": [0.0, -0.3], "gamma": 0.9, "n_center": 1, "tau": 1.0},
        "loss": {"strength_to_loss": 50.0,
                 "checkpoints": [0.3, 0.6, 0.9],
                 "steps_per_tau": 300},
        "observables": {"distribution": True},
    }
    res = sweep(cfg, {"loss.strength_to_loss": [30.0, 100.0]}, str(tmp_path))
    assert len(res["rows"]) == 6
    by_ratio = {}
    for row in res["rows"]:
        d = dict(zip(res["header"], row))
        by_ratio.setdefault(d["loss.strength_to_loss"], []).append(
            (d["gamma_t"], d["infidelity"]))
    for ratio, pts in by_ratio.items():
        pts.sort()
        inf = [p[1] for p in pts]
        assert inf == sorted(inf), f"ratio {ratio}: infidelity not monotone"
    # lossier cavity gives larger infidelity at the same gamma_t
    assert by_ratio[30.0][-1][1] > by_ratio[100.0][-1][1]
