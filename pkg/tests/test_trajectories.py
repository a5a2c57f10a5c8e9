import numpy as np
import pytest

from svqaoa.errors import UnsupportedChannelError
from svqaoa.graphs import build_instance, random_regular
from svqaoa.noise import NoiseSpec, noisy_gate_run
from svqaoa.qaoa import QaoaParams, decompose, objective
from svqaoa.symmetry import sv_noisy
from svqaoa.trajectories import ratio_estimate, run_trajectories, sample_expectations


@pytest.fixture
def setup():
    inst = build_instance(random_regular(4, 3, 0))
    params = QaoaParams([0.6, 0.3], [0.4, 0.2])
    return inst, params, decompose(inst, params)


def test_noiseless_is_exact(setup):
    inst, params, circ = setup
    est = run_trajectories(circ, NoiseSpec.gate(0.0), inst.cost_diagonal, 100, 0)
    exact = objective(inst, noisy_gate_run(circ, NoiseSpec.gate(0.0)))
    assert est.mean == pytest.approx(exact, abs=1e-12)
    assert est.standard_error == 0


def test_deterministic(setup):
    inst, _, circ = setup
    a = sample_expectations(circ, NoiseSpec.gate(0.05), [inst.cost_diagonal], 3000, 11)
    b = sample_expectations(circ, NoiseSpec.gate(0.05), [inst.cost_diagonal], 3000, 11)
    c = sample_expectations(circ, NoiseSpec.gate(0.05), [inst.cost_diagonal], 3000, 12)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_agrees_with_density_matrix(setup):
    inst, _, circ = setup
    spec = NoiseSpec.gate(0.05)
    est = run_trajectories(circ, spec, inst.cost_diagonal, 20_000, 3)
    exact = objective(inst, noisy_gate_run(circ, spec))
    assert abs(est.mean - exact) < 4 * est.standard_error
    assert est.standard_error > 0


def test_sv_engines_agree(setup):
    inst, params, _ = setup
    spec = NoiseSpec.gate(0.08)
    ex = sv_noisy(inst, params, spec, engine="exact")
    tr = sv_noisy(inst, params, spec, engine="trajectory", shots=20_000, seed=5)
    assert abs(tr.obj_no_sv - ex.obj_no_sv) < 4 * tr.obj_no_sv_se
    assert abs(tr.obj_sv - ex.obj_sv) < 4 * tr.obj_sv_se
    assert abs(tr.postselect_prob - ex.postselect_prob) < 0.01
    assert np.isnan(tr.f_sv) and tr.engine == "trajectory"


def test_ratio_estimate():
    num = np.array([1.0, 2.0, 3.0, 2.0])
    den = np.array([1.0, 1.0, 1.0, 1.0])
    r, se = ratio_estimate(num, den)
    assert r == 2.0
    assert se == pytest.approx(np.std(num, ddof=1) / 2)


def test_local_noise_rejected(setup):
    inst, _, circ = setup
    with pytest.raises(UnsupportedChannelError):
        run_trajectories(circ, NoiseSpec.local_depolarizing(0.1), inst.cost_diagonal, 10, 0)
