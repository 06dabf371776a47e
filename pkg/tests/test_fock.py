import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given
from hypothesis import strategies as st

from spinor_em import fock
from spinor_em.errors import DimensionMismatch, EmptyModeSet, UnknownMode, ZeroNorm

Z = (0, 0, 1)


def basis(cutoff=2, modes=(Z,)):
    return fock.build_basis(fock.ModeSet(modes), cutoff)


@pytest.mark.parametrize("cutoff,dim", [(0, 1), (1, 5), (2, 15), (3, 35)])
def test_basis_dimension(cutoff, dim):
    assert basis(cutoff).dim == dim


def test_two_mode_dimension():
    assert basis(2, (Z, (0, 0, -1))).dim == 45


def test_vacuum_is_first():
    b = basis(2)
    assert b.states[0].sum() == 0 and b.vacuum()[0] == 1


def test_ladder_frozen_entries():
    b = basis(2)
    a = fock.ladder(b, Z, 1)
    one = b.index((1, 0, 0, 0))
    two = b.index((2, 0, 0, 0))
    assert a[0, one] == 1.0
    assert a[one, two] == pytest.approx(np.sqrt(2))
    # n1 >= 1 within total <= 2: (1,0,0,0), three (1,..1..) states and (2,0,0,0)
    assert np.count_nonzero(a) == 5


def test_creation_at_cutoff_gives_zero():
    b = basis(2)
    ad = fock.ladder(b, Z, 2, "create")
    top = b.vector((0, 2, 0, 0))
    assert not np.any(ad @ top)


@pytest.mark.parametrize("cutoff", [1, 2, 3])
def test_ladder_commutators_on_safe_subspace(cutoff):
    rep = fock.commutator_check(basis(cutoff))
    assert rep["ladder_exact"]
    assert rep["max_dev_a_a"] == 0.0


def test_hamiltonian_single_quanta():
    b = basis(1)
    h = np.diag(fock.dense(fock.hamiltonian(b))).real
    assert h[b.index((0, 0, 0, 0))] == 1.0
    assert h[b.index((1, 0, 0, 0))] == 2.0
    assert h[b.index((0, 1, 0, 0))] == 2.0
    assert h[b.index((0, 0, 1, 0))] == 2.0
    assert h[b.index((0, 0, 0, 1))] == 0.0
    assert fock.vacuum_energy(b) == 1.0


def test_momentum_points_along_mode():
    b = basis(1)
    px, py, pz = (np.diag(fock.dense(p)).real for p in fock.momentum(b))
    assert not np.any(px) and not np.any(py)
    assert np.array_equal(pz, np.diag(fock.dense(fock.hamiltonian(b))).real)


@pytest.mark.parametrize("cutoff,dim", [(1, 4), (2, 10), (3, 20)])
def test_physical_subspace_dimension(cutoff, dim):
    b = basis(cutoff)
    phys = fock.physical_states(b)
    assert phys.shape == (b.dim, dim)
    assert np.allclose(phys.conj().T @ phys, np.eye(dim), atol=1e-12)
    assert np.max(np.abs(fock.dense(fock.b_op(b, Z)) @ phys)) < 1e-12
    assert np.allclose(phys[:, 0], b.vacuum())


def test_physical_states_deterministic():
    b = basis(2)
    assert np.array_equal(fock.physical_states(b), fock.physical_states(b))


def test_physical_energy_bounded_below():
    b = basis(3)
    phys = fock.physical_states(b)
    h = fock.dense(fock.hamiltonian(b))
    ev = np.linalg.eigvalsh(phys.conj().T @ h @ phys)
    assert ev.min() - fock.vacuum_energy(b) >= -1e-12


def test_hamiltonian_leaks_out_of_physical_subspace():
    # b does not commute with H: H a_4^+ and H a_3^+ carry different weights
    b = basis(1)
    phys = fock.physical_states(b)
    h = fock.dense(fock.hamiltonian(b))
    proj = phys @ phys.conj().T
    leak = np.max(np.abs((np.eye(b.dim) - proj) @ h @ phys))
    assert leak == pytest.approx(1 / np.sqrt(2), abs=1e-12)


def test_xi_expectation_vanishes_on_physical_states():
    b = basis(2)
    phys = fock.physical_states(b)
    rng = np.random.default_rng(0)
    for _ in range(5):
        psi = phys @ (rng.normal(size=phys.shape[1]) + 1j * rng.normal(size=phys.shape[1]))
        x = rng.uniform(0, 2 * np.pi, 3)
        assert abs(fock.xi_operator_expectation(b, psi, x)) < 1e-12


def test_xi_expectation_nonzero_off_kernel():
    b = basis(2)
    psi = (b.vacuum() + b.vector((0, 0, 1, 0))) / np.sqrt(2)
    val = fock.xi_operator_expectation(b, psi, (0.3, 0.1, 0.2))
    assert abs(val) > 1e-3


@given(st.integers(1, 3), st.integers(1, 4))
def test_number_operator_counts(cutoff, lam):
    b = basis(cutoff)
    a = fock.dense(fock.ladder(b, Z, lam))
    n = fock.dense(fock.number(b, Z, lam))
    assert np.allclose(a.conj().T @ a, n)


def test_error_cases():
    with pytest.raises(EmptyModeSet):
        fock.build_basis(fock.ModeSet(()), 1)
    with pytest.raises(ValueError):
        fock.ModeSet(((0, 0, 0),))
    with pytest.raises(ValueError):
        fock.ModeSet((Z, Z))
    with pytest.raises(ValueError):
        fock.build_basis(fock.ModeSet((Z,)), -1)
    b = basis(1)
    with pytest.raises(UnknownMode):
        fock.ladder(b, (1, 0, 0), 1)
    with pytest.raises(UnknownMode):
        fock.ladder(b, Z, 5)
    with pytest.raises(ValueError):
        fock.ladder(b, Z, 1, "raise")
    with pytest.raises(DimensionMismatch):
        fock.expectation(fock.hamiltonian(b), np.ones(3))
    with pytest.raises(ZeroNorm):
        fock.expectation(fock.hamiltonian(b), np.zeros(b.dim))


def test_sparse_above_threshold():
    small = basis(2)
    big = basis(3, (Z, (0, 0, -1)))
    assert isinstance(fock.hamiltonian(small), np.ndarray)
    assert sp.issparse(fock.hamiltonian(big))
    assert big.dim == 165


def test_operator_dump_format():
    b = basis(1)
    d = fock.operator_dump(fock.ladder(b, Z, 3), b)
    assert d["dim"] == 5 and d["basis_id"] == b.basis_id
    assert d["triplets"] == [[0, 3, 1.0, 0.0]]
    s = fock.state_dump(b.vacuum(), b)
    assert s == [{"occupations": [0, 0, 0, 0], "re": 1.0, "im": 0.0}]


def test_field_commutator_uses_metric():
    ms = fock.ModeSet((Z, (0, 0, -1)))
    b = fock.build_basis(ms, 1)
    rep = fock.commutator_check(b, positions=[((0.1, 0.2, 0.3), (0.0, 0.0, 0.0)),
                                              ((0.0, 0.0, 1.0), (0.5, 0.0, 0.0))])
    fl = rep["field_level"]
    assert fl["mode_set_symmetric"]
    assert fl["operator_vs_mode_sum"] < 1e-14
    assert fl["max_dev_vs_i_eta"] < 1e-14
    assert fl["max_dev_vs_i_delta"] > 1e-3


def test_discrete_delta_at_origin():
    ms = fock.ModeSet((Z, (0, 0, -1)))
    assert fock.discrete_delta(ms, (0, 0, 0)) == pytest.approx(2 / (2 * np.pi) ** 3)
