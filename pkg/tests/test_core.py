import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fluxring.core import (
    ConvergenceError,
    DensityOperator,
    StateVector,
    eig_hermitian,
    is_hermitian,
    kron,
    partial_trace,
    pauli,
    trace_out,
)
from fluxring.hamiltonians import build_two_fluxon

X = np.array([[0, 1], [1, 0]])
Z = np.diag([1, -1])
I2 = np.eye(2)


def random_hermitian(rng, n, real=False):
    a = rng.normal(size=(n, n))
    if not real:
        a = a + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def brute_partial_trace(psi, dims, keep):
    """Reduced density matrix by explicit summation over basis indices."""
    keep = sorted(keep)
    drop = [i for i in range(len(dims)) if i not in keep]
    kd = [dims[i] for i in keep]
    dd = [dims[i] for i in drop]
    dk = int(np.prod(kd))
    rho = np.zeros((dk, dk), dtype=complex)
    for a in itertools.product(*[range(d) for d in kd]):
        for b in itertools.product(*[range(d) for d in kd]):
            total = 0
            for e in itertools.product(*[range(d) for d in dd]):
                ia, ib = [0] * len(dims), [0] * len(dims)
                for pos, i in enumerate(keep):
                    ia[i], ib[i] = a[pos], b[pos]
                for pos, i in enumerate(drop):
                    ia[i] = ib[i] = e[pos]
                total += psi[np.ravel_multi_index(ia, dims)] * np.conj(psi[np.ravel_multi_index(ib, dims)])
            rho[np.ravel_multi_index(a, kd), np.ravel_multi_index(b, kd)] = total
    return rho


# kron ---------------------------------------------------------------------

def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_sigma_z_left_most_significant():
    assert np.array_equal(kron(Z, I2), np.diag([1, 1, -1, -1]))


def test_kron_bit_flip_both():
    e00 = np.array([1, 0, 0, 0])
    assert np.array_equal(kron(X, X) @ e00, [0, 0, 0, 1])


# pauli --------------------------------------------------------------------

def test_pauli_examples():
    assert np.array_equal(pauli("z", 0, 1), np.diag([1, -1]))
    assert np.array_equal(pauli("x", 0, 1) @ [1, 0], [0, 1])
    assert np.array_equal(pauli("z", 1, 2), np.diag([1, -1, 1, -1]))
    assert np.array_equal(pauli("i", 2, 3), np.eye(8))


@pytest.mark.parametrize("site,n", [(2, 2), (-1, 3)])
def test_pauli_site_out_of_range(site, n):
    with pytest.raises(ValueError):
        pauli("x", site, n)


def test_pauli_unknown_kind():
    with pytest.raises(ValueError):
        pauli("w", 0, 1)


# eig_hermitian ------------------------------------------------------------

def test_eig_diagonal():
    vals = eig_hermitian(np.array([[0, 0], [0, 1]])).values
    assert np.array_equal(vals, [0, 1])


def test_eig_single_fluxon_delta5():
    vals = eig_hermitian(np.array([[0, 5], [5, 1]])).values
    expected = 0.5 * (1 + np.array([-1, 1]) * np.sqrt(101))
    assert np.allclose(vals, expected, atol=1e-12)
    assert np.allclose(vals, [-4.5249, 5.5249], atol=1e-4)


def test_eig_two_fluxon_against_closed_forms():
    # closed forms evaluated independently: (m-1)^2, m^2, (1 +- sqrt(17))/2 at m=0, delta=1
    oracle = sorted([1.0, 0.0, (1 + np.sqrt(17)) / 2, (1 - np.sqrt(17)) / 2])
    vals = eig_hermitian(build_two_fluxon(0, 1.0)).values
    assert np.allclose(vals, oracle, atol=1e-12)
    assert np.allclose(vals, [-1.5616, 0, 1, 2.5616], atol=1e-4)


@pytest.mark.parametrize("n,real", [(1, True), (2, False), (5, False), (16, True), (33, False), (64, False)])
def test_eig_invariants_random(n, real):
    rng = np.random.default_rng(n)
    h = random_hermitian(rng, n, real)
    e = eig_hermitian(h)
    assert np.all(np.diff(e.values) >= 0)
    v = e.vectors
    for k in range(n):
        res = np.linalg.norm(h @ v[:, k] - e.values[k] * v[:, k])
        assert res <= 1e-10 * max(1, abs(e.values[k]))
    assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-10
    assert np.abs(e.reconstruct() - h).max() <= 1e-10
    # independent route
    assert np.allclose(e.values, np.linalg.eigvalsh(h), atol=1e-10)


def test_eig_phase_convention():
    rng = np.random.default_rng(7)
    e = eig_hermitian(random_hermitian(rng, 12))
    for k in range(12):
        col = e.vectors[:, k]
        idx = np.argmax(np.abs(col))
        assert abs(col[idx].imag) <= 1e-15 and col[idx].real > 0


def test_eig_deterministic():
    rng = np.random.default_rng(3)
    h = random_hermitian(rng, 20)
    a, b = eig_hermitian(h), eig_hermitian(h.copy())
    assert a.values.tobytes() == b.values.tobytes()
    assert a.vectors.tobytes() == b.vectors.tobytes()


def test_eig_degenerate_tie_break_keeps_block_order():
    # two identical decoupled blocks: ties resolved by original position
    blk = np.array([[0.0, 1.0], [1.0, 1.0]])
    h = np.zeros((4, 4))
    h[:2, :2] = blk
    h[2:, 2:] = blk
    e = eig_hermitian(h)
    assert abs(e.values[0] - e.values[1]) < 1e-12
    assert np.all(e.vectors[2:, 0] == 0) and np.all(e.vectors[:2, 1] == 0)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_convergence_failure_reports_size():
    rng = np.random.default_rng(0)
    h = random_hermitian(rng, 6)
    with pytest.raises(ConvergenceError) as info:
        eig_hermitian(h, method="jacobi", max_sweeps=1)
    assert info.value.size == 6 and info.value.residual > 0


def test_eig_lapack_route_same_conventions():
    rng = np.random.default_rng(11)
    h = random_hermitian(rng, 24)
    a = eig_hermitian(h, method="jacobi")
    b = eig_hermitian(h, method="lapack")
    assert np.allclose(a.values, b.values, atol=1e-10)
    # non-degenerate spectrum + phase fixing makes the vectors agree too
    assert np.allclose(a.vectors, b.vectors, atol=1e-8)


@pytest.mark.slow
def test_eig_reconstruction_large_auto():
    rng = np.random.default_rng(5)
    h = random_hermitian(rng, 1024)
    e = eig_hermitian(h)
    assert np.abs(e.reconstruct() - h).max() <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_eig_reconstruction_property(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    e = eig_hermitian(h)
    assert np.abs(e.reconstruct() - h).max() <= 1e-10


# partial trace ------------------------------------------------------------

def test_partial_trace_product_state():
    rho = partial_trace(StateVector.basis((2, 2), (0, 1)), [1])
    assert np.allclose(rho.matrix, [[0, 0], [0, 1]])


def test_partial_trace_bell():
    bell = StateVector((2, 2), np.array([1, 0, 0, -1]) / np.sqrt(2))
    assert np.allclose(partial_trace(bell, [0]).matrix, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_teleport_state_matches_brute_force():
    # ring window {0, 1} x fluxon 1 x fluxon 2 evolved to t=3 (delta=1, m=0)
    from fluxring.hamiltonians import SystemSpec, build_ring_window
    from fluxring.entanglement import von_neumann_entropy

    h = build_ring_window(SystemSpec(m=0, delta=1.0, n_fluxons=2))
    w, v = np.linalg.eigh(h)
    psi0 = np.zeros(8)
    psi0[0b001] = 1
    psi = v @ (np.exp(-3j * w) * (v.conj().T @ psi0))
    rho = partial_trace(StateVector((2, 2, 2), psi), [1])
    assert np.allclose(rho.matrix, brute_partial_trace(psi, (2, 2, 2), [1]), atol=1e-14)
    s = von_neumann_entropy(rho)
    assert 0 < s < 1


@pytest.mark.parametrize("keep", [[0], [], [0, 1], [3]])
def test_partial_trace_bad_keep(keep):
    state = StateVector.basis((2, 2), (0, 0))
    if keep == [0]:
        partial_trace(state, keep)
        return
    with pytest.raises(ValueError):
        partial_trace(state, keep)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 3), min_size=3, max_size=4), st.integers(0, 2**32 - 1), st.data())
def test_partial_trace_properties(dims, seed, data):
    rng = np.random.default_rng(seed)
    n = int(np.prod(dims))
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi /= np.linalg.norm(psi)
    state = StateVector(tuple(dims), psi)
    keep = sorted(data.draw(st.sets(st.integers(0, len(dims) - 1), min_size=1, max_size=len(dims) - 1)))
    rho = partial_trace(state, keep)
    assert np.allclose(rho.matrix, brute_partial_trace(psi, dims, keep), atol=1e-12)
    rho.validate()
    # density-operator route agrees with the state-vector route
    full = DensityOperator.from_state(state)
    assert np.allclose(partial_trace(full, keep).matrix, rho.matrix, atol=1e-12)
    # tracing out A then B equals tracing out {A, B}
    drop = [i for i in range(len(dims)) if i not in keep]
    if len(drop) >= 2:
        a, b = drop[0], drop[1]
        step = trace_out(trace_out(full, a), b - 1)
        joint = trace_out(full, [a, b])
        assert np.abs(step.matrix - joint.matrix).max() <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_product_state_single_factor_purity(n, seed):
    rng = np.random.default_rng(seed)
    factors = []
    for _ in range(n):
        f = rng.normal(size=2) + 1j * rng.normal(size=2)
        factors.append(f / np.linalg.norm(f))
    state = StateVector.product(*factors)
    for k in range(n):
        rho = partial_trace(state, [k]).matrix
        assert abs(np.trace(rho @ rho).real - 1) <= 1e-10


def test_builders_are_hermitian():
    assert is_hermitian(build_two_fluxon(3, 2.0))


def test_state_vector_is_immutable():
    s = StateVector.basis((2,), (0,))
    with pytest.raises(ValueError):
        s.amplitudes[0] = 2
