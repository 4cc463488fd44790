import json
import math

import pytest

import fragsim as fs


def linear_death_model():
    return fs.RateModel(
        decay=fs.RateFamily.constant(1.0),
        death=fs.RateFamily.linear(1.0),
        frag=fs.RateFamily.linear(1.0),
    )


def test_theta_and_dominant_eigenvalue():
    th = fs.theta(linear_death_model(), 64)
    assert th[0] == 2.0  # r_1 + d_1; a_1 is forced to zero
    assert th[1] == 5.0  # r_2 + d_2 + a_2 = 1 + 2 + 2
    lam, n0 = fs.dominant_eigenvalue(th)
    assert lam == -2.0
    assert n0 == 1


def test_generator_and_integration():
    G = fs.TruncatedGenerator.build(
        linear_death_model(), fs.KernelSpec.uniform_binary(), 16
    )
    assert G.size() == 16
    f0 = [0.0] * 16
    f0[7] = 10.0
    cfg = fs.IntegratorConfig()
    cfg.t_end = 1.0
    traj = fs.integrate(G, fs.ClusterState(f0), cfg)
    assert traj.samples[0].t == 0.0
    assert traj.samples[-1].t == pytest.approx(1.0)
    assert fs.total_mass(traj.samples[-1].f) <= fs.total_mass(f0)
    ref = fs.expm_oracle(G, f0, 1.0)
    err = fs.mass_norm([a - b for a, b in zip(traj.accepted[-1].f, ref)])
    assert err <= 1e-5 * fs.mass_norm(f0)


def test_spectral_projection():
    sd = fs.compute_spectral(linear_death_model(), fs.KernelSpec.uniform_binary(), 32)
    assert sd.lambda1 == -2.0
    p1 = fs.project(sd, [1.0] * 32)
    p2 = fs.project(sd, p1)
    assert p2 == pytest.approx(p1, abs=1e-12)


def test_kernel_conservation():
    rep = fs.check_kernel_conservation(fs.KernelSpec.uniform_binary(), 256)
    assert rep.max_abs_deviation <= 1e-12


def test_classify_regime():
    rep = fs.classify_regime(linear_death_model(), 64)
    assert rep.theta_divergent
    assert rep.analytic_domination
    assert rep.strict_min_unique


def test_validation_errors():
    bad = fs.RateModel(
        decay=fs.RateFamily.constant(-1.0),
        death=fs.RateFamily.constant(0.0),
        frag=fs.RateFamily.constant(0.0),
    )
    with pytest.raises(ValueError):
        bad.validate(4)


def test_run_scenario(tmp_path):
    scenario = {
        "name": "smoke",
        "rates": {
            "decay": {"kind": "constant", "c": 1},
            "death": {"kind": "linear", "c": 1},
            "frag": {"kind": "linear", "c": 1},
        },
        "kernel": {"kind": "uniform-binary"},
        "N": 16,
        "initial": {"monodisperse": {"size": 8, "amount": 10}},
        "integrator": {"t_end": 2.0},
    }
    path = tmp_path / "smoke.json"
    path.write_text(json.dumps(scenario))
    out = fs.run_scenario(str(path), out_dir=str(tmp_path / "out"))
    assert out.status == 0
    assert out.lambda1 == -2.0
    assert (tmp_path / "out" / "manifest.json").exists()
    assert (tmp_path / "out" / "mass.csv").exists()
    assert math.isfinite(out.final_mass)
