"""Smoke test for the fracmhd_py extension module.

Build the module and run this script with:

    cargo build --release -p fracmhd-python
    cp target/release/libfracmhd_py.so python/fracmhd_py.so
    python3 python/smoke_test.py
"""

import json
import math
import tempfile
from pathlib import Path

import fracmhd_py as fm


def check_region():
    region, detail = fm.classify_region(0.25, 1.25)
    assert region == "theorem1-new", (region, detail)
    assert fm.classify_region(1.0, 1.0)[0] == "prior-tyz"
    assert fm.classify_region(0.0, 1.0)[0] == "open"


def check_simulation(workdir):
    sim = fm.Simulation(32, 0.4, 1.2, ic="orszag-tang-like")
    e0 = sim.invariants()["energy"]
    sim.step(0.01, count=20)
    assert abs(sim.time - 0.2) < 1e-12, sim.time
    inv = sim.invariants()
    assert 0.0 < inv["energy"] <= e0, (inv, e0)
    dt = sim.cfl_dt(courant=0.5, dt_max=0.01)
    assert 0.0 < dt <= 0.01
    diag = sim.diagnostics()
    assert all(v is None or math.isfinite(v) for v in diag.values())
    omega = sim.vorticity()
    assert len(omega) == 32 and len(omega[0]) == 32
    assert abs(sum(map(sum, omega))) < 1e-9

    meta = sim.save(str(Path(workdir) / "snap"))
    restored = fm.Simulation.load(str(meta))
    assert restored.time == sim.time
    assert restored.current() == sim.current()

    try:
        fm.Simulation(15, 0.4, 1.2)
    except ValueError:
        pass
    else:
        raise AssertionError("odd grid accepted")


def check_run(workdir):
    config = {
        "grid_n": 32, "alpha": 0.4, "beta": 1.2, "t_end": 0.1, "dt": 0.01,
        "ic": {"kind": "orszag-tang-like"}, "diag_interval": 0.05,
        "output_dir": str(Path(workdir) / "run"),
    }
    summary = json.loads(fm.run(json.dumps(config)))
    assert summary["status"] == "completed", summary
    assert (Path(workdir) / "run" / "diagnostics.csv").exists()

    spec = {"alpha_values": [0.0, 0.5], "beta_values": [1.5], "base": dict(config, output_dir=str(Path(workdir) / "sweep"))}
    report = json.loads(fm.sweep(json.dumps(spec)))
    assert [e["alpha"] for e in report["entries"]] == [0.0, 0.5]

    passed, text = fm.verify("spectral")
    assert passed, text


def main():
    check_region()
    with tempfile.TemporaryDirectory() as workdir:
        check_simulation(workdir)
        check_run(workdir)
    print("smoke test passed")


if __name__ == "__main__":
    main()
