import json
import math

import numpy as np
import pytest

from conftest import VECTOR_8, random_complex, random_real
from qdcprep.circuit import Circuit
from qdcprep.dc import dc_prepare
from qdcprep.errors import DimensionError, DistributionError, ResourceError
from qdcprep.statevector import expect_z, simulate
from qdcprep.swap_stats import (_test_stage, covariance_matrix, cyclic_exy, full_circuit,
                                moment_statistics, run_swap_test, swap_test_overlap)

E0, E1 = [1.0, 0.0], [0.0, 1.0]
H2 = [1 / math.sqrt(2)] * 2


def classical_overlap(x, y):
    return float(np.sum(np.abs(x) ** 2 * np.abs(y) ** 2))


def classical_exy(px, x, py, y):
    return float(np.sum(px * py * np.abs(x) ** 2 * np.abs(y) ** 2))


def random_distribution(rng, N):
    p = rng.random(N)
    return p / p.sum()


@pytest.mark.parametrize("x,y,expected", [(H2, H2, 0.5), (E0, E1, 0.0), (E0, E0, 1.0)])
def test_overlap_examples(x, y, expected):
    rep = swap_test_overlap(x, y)
    assert rep.statistic_kind == "overlap"
    assert rep.exact_value == pytest.approx(expected, abs=1e-12)
    assert rep.sampled_value is None


@pytest.mark.parametrize("N", [2, 4, 8])
def test_overlap_identity(rng, N):
    for _ in range(10):
        x, y = random_complex(rng, N), random_complex(rng, N)
        rep = swap_test_overlap(x, y)
        ov = classical_overlap(x, y)
        assert rep.exact_value == pytest.approx(ov, abs=1e-9)
        assert rep.extra["p_plus"] + rep.extra["p_minus"] == pytest.approx(1.0, abs=1e-12)
        assert rep.extra["p_plus"] == pytest.approx((1 + ov) / 2, abs=1e-9)
        assert rep.extra["p_minus"] == pytest.approx((1 - ov) / 2, abs=1e-9)
        assert 0.0 <= rep.exact_value <= 1.0 + 1e-12


@pytest.mark.parametrize("shots", [1024, 16384])
def test_sampling_within_three_sigma(rng, shots):
    for seed in range(10):
        x, y = random_real(rng, 4), random_real(rng, 4)
        rep = swap_test_overlap(x, y, shots=shots, seed=seed)
        assert rep.shots == shots and rep.seed == seed
        assert abs(rep.sampled_value - rep.exact_value) <= 3 * rep.sigma()


def test_sampling_is_seeded():
    a = swap_test_overlap(VECTOR_8, VECTOR_8[::-1], 500, seed=3)
    b = swap_test_overlap(VECTOR_8, VECTOR_8[::-1], 500, seed=3)
    assert a.to_json() == b.to_json()
    assert json.loads(a.to_json())["statistic_kind"] == "overlap"


def test_factored_matches_full_circuit(rng):
    for N in (2, 4):
        for _ in range(3):
            regs = [dc_prepare(random_complex(rng, N), labels=True) for _ in range(2)]
            full = simulate(full_circuit(regs))
            run = run_swap_test(regs)
            np.testing.assert_allclose(run.state.amplitudes, full.amplitudes, atol=1e-12)
            assert expect_z(full, 0) == pytest.approx(run.z, abs=1e-12)
    regs = [dc_prepare(v, labels=True, normalize=True) for v in (E0, H2, [0.6, 0.8], [1.0, -1.0])]
    run = run_swap_test(regs)
    np.testing.assert_allclose(run.state.amplitudes, simulate(full_circuit(regs, cyclic=True)).amplitudes,
                               atol=1e-12)


def test_stage_layout():
    regs = [dc_prepare(VECTOR_8, labels=True)] * 2
    stage = _test_stage(regs, cyclic=False)
    assert stage.width == 1 + 2 * 10
    assert [g.kind for g in stage.gates] == ["H"] + ["CSWAP"] * 3 + ["H"]
    assert [g.qubits for g in stage.gates[1:4]] == [(0, 1, 11), (0, 2, 12), (0, 4, 14)]


def test_cyclic_stage_rotates_registers():
    # four 1-qubit registers; with the control set, contents move (A,B,C,D) -> (B,C,D,A)
    regs = [dc_prepare(E0, labels=False)] * 4
    stage = _test_stage(regs, cyclic=True)
    assert stage.count("CSWAP") == 3
    body = Circuit(5).extend(stage.gates[1:-1])
    for bits in range(16):
        psi = np.zeros(32)
        psi[16 | bits] = 1
        out = int(np.argmax(np.abs(simulate(body, psi).amplitudes)))
        a, b, c, d = (bits >> 3) & 1, (bits >> 2) & 1, (bits >> 1) & 1, bits & 1
        assert out == 16 | (b << 3 | c << 2 | d << 1 | a)


def test_length_mismatch():
    with pytest.raises(DimensionError):
        swap_test_overlap(H2, np.ones(4) / 2)


def test_resource_cap():
    with pytest.raises(ResourceError):
        swap_test_overlap(np.ones(16) / 4, np.ones(16) / 4)


def test_without_labels_differs():
    x = VECTOR_8
    y = np.sqrt([0.2, 0.1, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1])
    labeled = swap_test_overlap(x, y).exact_value
    bare = swap_test_overlap(x, y, labels=False).exact_value
    assert labeled == pytest.approx(classical_overlap(x, y), abs=1e-9)
    assert abs(bare - classical_overlap(x, y)) > 1e-3


# -- moments -----------------------------------------------------------------

@pytest.mark.parametrize("N", [2, 4, 8])
def test_expectation_against_uniform(rng, N):
    rep = moment_statistics(random_real(rng, N), np.ones(N) / math.sqrt(N), "expectation")
    assert rep.exact_value == pytest.approx(1 / N, abs=1e-9)


def test_variance_of_constant_variable():
    x = np.ones(4) / 2
    second = moment_statistics(x, x, "second_moment").exact_value
    rep = moment_statistics(x, x, "variance", ex_squared=second)
    assert rep.statistic_kind == "variance"
    assert rep.exact_value == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        moment_statistics(x, x, "variance")


@pytest.mark.parametrize("N", [2, 4, 8])
def test_covariance_uniform_zero(N):
    u = np.ones(N) / math.sqrt(N)
    rep = moment_statistics(u, u, "covariance_uniform", shots=256, seed=1)
    assert rep.statistic_kind == "covariance"
    assert rep.exact_value == pytest.approx(0.0, abs=1e-12)
    assert rep.sampled_value is not None


def test_unknown_mode():
    with pytest.raises(ValueError):
        moment_statistics(H2, H2, "kurtosis")


# -- cyclic and covariance ---------------------------------------------------

def test_cyclic_examples():
    assert cyclic_exy([1, 0], E0, [1, 0], E0).exact_value == pytest.approx(1.0, abs=1e-12)
    assert cyclic_exy([1, 0], E0, [0, 1], E0).exact_value == pytest.approx(0.0, abs=1e-12)
    rep = cyclic_exy([0.5, 0.5], H2, [0.5, 0.5], H2)
    assert rep.extra["cswaps"] == 3
    assert rep.exact_value == pytest.approx(2 * 0.5**4, abs=1e-12)


def test_cyclic_matches_classical_sum(rng):
    for _ in range(5):
        px, py = random_distribution(rng, 4), random_distribution(rng, 4)
        x, y = random_complex(rng, 4), random_complex(rng, 4)
        rep = cyclic_exy(px, x, py, y)
        assert rep.exact_value == pytest.approx(classical_exy(px, x, py, y), abs=1e-9)
        assert rep.extra["cswaps"] == 3 * 2


@pytest.mark.parametrize("p", [[0.5, 0.6], [1.2, -0.2], [0.5, 0.5, 0.0]])
def test_cyclic_bad_distribution(p):
    with pytest.raises((DistributionError, DimensionError)):
        cyclic_exy(p, E0, [0.5, 0.5], E0)


def test_cyclic_negative_probability_is_distribution_error():
    with pytest.raises(DistributionError):
        cyclic_exy([1.2, -0.2], E0, [0.5, 0.5], E0)


def test_covariance_scalar_case(rng):
    px, py = random_distribution(rng, 2), random_distribution(rng, 2)
    x, y = random_real(rng, 2), random_real(rng, 2)
    res = covariance_matrix([x], [y], px, py)
    expected = classical_exy(px, x, py, y) - np.sum(px * x**2) * np.sum(py * y**2)
    assert res.matrix.shape == (1, 1)
    assert res.matrix[0, 0] == pytest.approx(expected, abs=1e-9)
    assert res.cost == {"m": 1, "N": 2, "quantum_runs": 3, "cyclic_runs": 1, "classical_ops": 2}


def test_covariance_symmetric(rng):
    p = random_distribution(rng, 2)
    X = [random_real(rng, 2) for _ in range(3)]
    res = covariance_matrix(X, X, p, p)
    np.testing.assert_allclose(res.matrix, res.matrix.T, atol=1e-9)


def classical_covariance(X, Y, px, py):
    m = len(X)
    out = np.empty((m, m))
    for a in range(m):
        for b in range(m):
            ex = np.sum(px * np.abs(X[a]) ** 2)
            ey = np.sum(py * np.abs(Y[b]) ** 2)
            out[a, b] = classical_exy(px, X[a], py, Y[b]) - ex * ey
    return out


def test_covariance_m2_against_double_loop(rng):
    px, py = random_distribution(rng, 4), random_distribution(rng, 4)
    X = [random_complex(rng, 4) for _ in range(2)]
    Y = [random_real(rng, 4) for _ in range(2)]
    res = covariance_matrix(X, Y, px, py)
    np.testing.assert_allclose(res.matrix, classical_covariance(X, Y, px, py), atol=1e-9, rtol=0)
    assert res.cost["quantum_runs"] == 8 and res.cost["classical_ops"] == 16
