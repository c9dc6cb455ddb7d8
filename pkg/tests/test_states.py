import numpy as np
import pytest

from realignment import criteria as C
from realignment.bipartite import InvalidStateError, pure_state
from realignment.states import (
    FamilyParams,
    horodecki_a,
    horodecki_mixture,
    isotropic_identity_mixture,
    max_entangled,
    random_pure_coefficients,
    random_separable,
    random_unitary,
    two_qubit_tsr,
)


@pytest.mark.parametrize("a", [0.0, 0.2, 0.5, 1.0])
def test_horodecki_is_valid_and_ppt(a):
    state = horodecki_a(a)
    assert state.dims == (3, 3)
    assert not C.ppt_check(state).violated


def test_horodecki_entries():
    m = horodecki_a(0.5).matrix * (8 * 0.5 + 1)
    assert m[0, 4] == pytest.approx(0.5) and m[4, 8] == pytest.approx(0.5)
    assert m[6, 6] == pytest.approx(0.75)
    assert m[6, 8] == pytest.approx(np.sqrt(0.75) / 2)
    with pytest.raises(ValueError):
        horodecki_a(1.5)


def test_horodecki_mixture_affine_in_p():
    a = 0.37
    one, zero = horodecki_mixture(a, 1.0).matrix, horodecki_mixture(a, 0.0).matrix
    np.testing.assert_allclose(zero, np.eye(9) / 9, atol=1e-15)
    for p in (0.1, 0.5, 0.93):
        np.testing.assert_allclose(horodecki_mixture(a, p).matrix, p * one + (1 - p) * zero, atol=1e-14)
    assert not any(r.violated for r in C.run_all(horodecki_mixture(0.3, 0.0)))


def test_two_qubit_family_domain():
    for t in np.linspace(0, 0.25, 6):
        for s in np.linspace(0, 0.9, 10):
            two_qubit_tsr(t, s, s / 2)
    with pytest.raises(InvalidStateError, match="eigenvalue"):
        two_qubit_tsr(0.1, 0.2, 0.5)


def test_two_qubit_separable_at_t0():
    for s in np.linspace(0, 0.9, 7):
        assert not any(r.violated for r in C.run_all(two_qubit_tsr(0, s, s / 2)))


def test_max_entangled_and_isotropic():
    assert C.rc(max_entangled(3)).lhs == pytest.approx(3.0)
    np.testing.assert_allclose(max_entangled(4).rho_a, np.eye(4) / 4, atol=1e-15)
    with pytest.raises(ValueError):
        max_entangled(1)
    np.testing.assert_allclose(isotropic_identity_mixture(2, 1.0).matrix, max_entangled(2).matrix)
    assert C.rc(isotropic_identity_mixture(3, 0.2)).lhs <= 1


def test_random_separable_determinism_and_decomposition():
    s1, dec = random_separable(2, 3, 4, seed=11)
    s2, _ = random_separable(2, 3, 4, seed=11)
    np.testing.assert_array_equal(s1.matrix, s2.matrix)
    assert len(dec) == 4 and dec.weights.sum() == pytest.approx(1.0)
    rebuilt = sum(w * np.kron(a, b) for w, a, b in zip(dec.weights, dec.locals_a, dec.locals_b))
    np.testing.assert_allclose(s1.matrix, rebuilt, atol=1e-14)
    with pytest.raises(ValueError):
        random_separable(2, 2, 0, seed=0)


def test_single_term_rc_saturates_only_for_pure_factors(rng):
    state, _ = random_separable(2, 2, 1, seed=3)
    assert C.rc(state).lhs < 1 - 1e-6
    psi = random_pure_coefficients(2, 3, rng, rank=1)
    assert C.rc(pure_state(psi)).lhs == pytest.approx(1.0, abs=1e-10)


def test_random_helpers(rng):
    u = random_unitary(4, rng)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-12)
    psi = random_pure_coefficients(3, 4, rng, rank=2)
    assert np.linalg.norm(psi) == pytest.approx(1.0)
    assert np.linalg.matrix_rank(psi) == 2


def test_family_params():
    fp = FamilyParams.parse("two_qubit_tsr", ["t=0.1", "s=0.6", "r=0.5*s"])
    assert fp.resolve() == {"t": 0.1, "s": 0.6, "r": pytest.approx(0.3)}
    np.testing.assert_allclose(fp.build().matrix, two_qubit_tsr(0.1, 0.6, 0.3).matrix)
    assert fp.with_values(s=0.8).resolve()["r"] == pytest.approx(0.4)
    assert FamilyParams.parse("max_entangled", ["dim=3"]).build().dims == (3, 3)
    with pytest.raises(ValueError):
        FamilyParams.parse("max_entangled", ["dim=2.5"]).build()
    with pytest.raises(ValueError):
        FamilyParams("nope")
    with pytest.raises(ValueError):
        FamilyParams.parse("horodecki_a", ["b=1"])
    with pytest.raises(ValueError):
        FamilyParams.parse("horodecki_a", ["a"])
    with pytest.raises(ValueError, match="missing"):
        FamilyParams("horodecki_mixture", {"a": 0.2}).build()
    with pytest.raises(ValueError, match="unset"):
        FamilyParams.parse("two_qubit_tsr", ["r=0.5*q"]).resolve()
