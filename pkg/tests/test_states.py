import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uqtchan.linalg import I4
from uqtchan.states import (
    bell_state,
    concurrence,
    correlation_spectrum,
    from_density,
    hs_recompose,
    profile,
    pure_state,
    pure_state_from_concurrence,
)

from conftest import random_density, random_unitary

S5 = np.sqrt(5.0)


# ---------------------------------------------------------------------------
# construction and decomposition
# ---------------------------------------------------------------------------

def test_from_density_maximally_mixed():
    st_ = from_density(I4 / 4)
    assert np.allclose(st_.hs.r_vec, 0)
    assert np.allclose(st_.hs.s_vec, 0)
    assert np.allclose(st_.hs.t_mat, 0)


def test_from_density_bell1():
    st_ = bell_state(1)
    assert np.allclose(st_.hs.t_mat, np.diag([1.0, -1.0, 1.0]))
    assert np.allclose(st_.hs.r_vec, 0)


def test_from_density_pure_state_09():
    st_ = pure_state(0.9)
    assert np.allclose(st_.hs.t_mat, np.diag([0.6, -0.6, 1.0]), atol=1e-12)
    assert np.allclose(st_.hs.r_vec, [0, 0, 0.8], atol=1e-12)
    assert np.allclose(st_.hs.s_vec, [0, 0, 0.8], atol=1e-12)


def test_from_density_rejects_bad_trace():
    with pytest.raises(ValueError, match="trace"):
        from_density(I4 / 2)


def test_from_density_rejects_negative():
    with pytest.raises(ValueError, match="negative eigenvalue"):
        from_density(np.diag([0.7, 0.5, -0.1, -0.1]).astype(complex))


def test_from_density_rejects_non_hermitian():
    m = np.diag([0.25] * 4).astype(complex)
    m[0, 1] = 1e-3
    with pytest.raises(ValueError, match="Hermitian"):
        from_density(m)


def test_recompose_round_trip(rng):
    for _ in range(20):
        rho = random_density(rng)
        st_ = from_density(rho)
        assert np.max(np.abs(hs_recompose(st_.hs) - st_.rho)) < 1e-12


def test_local_vector_and_singular_value_bounds(rng):
    for _ in range(20):
        st_ = from_density(random_density(rng))
        assert np.linalg.norm(st_.hs.r_vec) <= 1 + 1e-10
        assert np.linalg.norm(st_.hs.s_vec) <= 1 + 1e-10
        assert np.max(np.linalg.svd(st_.hs.t_mat, compute_uv=False)) <= 1 + 1e-10


# ---------------------------------------------------------------------------
# pure and Bell states
# ---------------------------------------------------------------------------

def test_pure_state_half_is_bell():
    assert np.allclose(pure_state(0.5).rho, bell_state(1).rho)


@pytest.mark.parametrize("a,expected", [
    (0.5, 1.0),
    (0.9, 0.6),
    (0.5 + np.sqrt(3.0) / 4.0, 0.5),  # solves 2 sqrt(a(1-a)) = 1/2
])
def test_pure_state_concurrence(a, expected):
    assert concurrence(pure_state(a)) == pytest.approx(expected, abs=1e-12)


def test_pure_state_domain():
    with pytest.raises(ValueError):
        pure_state(0.4)
    with pytest.raises(ValueError):
        pure_state(1.0)


def test_pure_state_from_concurrence_round_trip():
    for c in (0.2, 0.5, 0.9):
        assert concurrence(pure_state_from_concurrence(c)) == pytest.approx(c, abs=1e-12)


@pytest.mark.parametrize("k,tdiag", [
    (1, (1, -1, 1)),
    (2, (1, 1, -1)),
    (3, (-1, -1, -1)),
    (4, (-1, 1, 1)),
])
def test_bell_state_correlations(k, tdiag):
    st_ = bell_state(k)
    assert np.allclose(st_.hs.t_mat, np.diag(tdiag), atol=1e-14)
    assert concurrence(st_) == pytest.approx(1.0, abs=1e-12)


def test_bell_state_bad_index():
    with pytest.raises(ValueError):
        bell_state(5)


# ---------------------------------------------------------------------------
# concurrence
# ---------------------------------------------------------------------------

def test_concurrence_separable():
    assert concurrence(from_density(I4 / 4)) == 0.0


def test_concurrence_werner():
    # Bell mixture with weights (p, q, q, q): the flipped state equals the
    # state itself, so the concurrence reduces to max(0, 2p - 1). Frozen
    # value for p = 0.8 cross-checked against that independent form.
    p = 0.8
    q = (1 - p) / 3
    rho = sum(w * bell_state(k).rho for w, k in zip((p, q, q, q), (1, 2, 3, 4)))
    assert concurrence(from_density(rho)) == pytest.approx(0.6, abs=1e-12)
    assert concurrence(from_density(rho)) == pytest.approx(2 * p - 1, abs=1e-12)


def test_concurrence_dephased_bell():
    rho = 0.75 * bell_state(1).rho + 0.25 * bell_state(4).rho
    assert concurrence(from_density(rho)) == pytest.approx(0.5, abs=1e-12)


def test_concurrence_local_unitary_invariant(rng):
    for _ in range(10):
        st_ = from_density(random_density(rng))
        u = np.kron(random_unitary(rng), random_unitary(rng))
        rotated = from_density(u @ st_.rho @ u.conj().T)
        assert abs(concurrence(rotated) - concurrence(st_)) < 1e-10


@given(st.floats(0.5, 0.999))
def test_concurrence_pure_formula(a):
    assert concurrence(pure_state(a)) == pytest.approx(2 * np.sqrt(a * (1 - a)), abs=1e-10)


# ---------------------------------------------------------------------------
# correlation spectrum
# ---------------------------------------------------------------------------

def test_spectrum_bell():
    spec = correlation_spectrum(bell_state(1))
    assert np.allclose(spec.abs_t, [1, 1, 1])
    assert spec.det_t == pytest.approx(-1.0, abs=1e-12)
    assert spec.signs is not None and np.prod(spec.signs) == -1


def test_spectrum_dephased_bell():
    rho = 0.75 * bell_state(1).rho + 0.25 * bell_state(4).rho
    spec = correlation_spectrum(from_density(rho))
    assert np.allclose(spec.abs_t, [1.0, 0.5, 0.5], atol=1e-12)
    assert spec.det_t == pytest.approx(-0.25, abs=1e-12)


def test_spectrum_pure_09():
    spec = correlation_spectrum(pure_state(0.9))
    assert np.allclose(spec.abs_t, [1.0, 0.6, 0.6], atol=1e-12)
    assert spec.det_t == pytest.approx(-0.36, abs=1e-12)


def test_spectrum_signed_product_matches_det(rng):
    for _ in range(20):
        spec = correlation_spectrum(from_density(random_density(rng)))
        if spec.signs is None:
            continue
        signed = np.prod(np.asarray(spec.signs) * spec.abs_t)
        assert signed == pytest.approx(spec.det_t, abs=1e-10)


def test_spectrum_nonsymmetric_has_no_signs(rng):
    u = np.kron(random_unitary(rng), random_unitary(rng))
    rho = u @ pure_state(0.8).rho @ u.conj().T
    spec = correlation_spectrum(from_density(rho))
    assert spec.signs is None
    assert np.all(np.diff(spec.abs_t) <= 1e-12)  # sorted descending


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------

def test_profile_bell_is_uqt():
    prof = profile(bell_state(1))
    assert prof.f_max == pytest.approx(1.0, abs=1e-12)
    assert prof.delta == pytest.approx(0.0, abs=1e-12)
    assert prof.useful and prof.universal and prof.uqt


def test_profile_dephased_bell():
    rho = 0.75 * bell_state(1).rho + 0.25 * bell_state(4).rho
    prof = profile(from_density(rho))
    assert prof.f_max == pytest.approx(5 / 6, abs=1e-12)
    assert prof.delta == pytest.approx(1 / (6 * S5), abs=1e-12)
    assert prof.useful and not prof.universal and not prof.uqt


def test_profile_werner_08():
    p, q = 0.8, 0.2 / 3
    rho = sum(w * bell_state(k).rho for w, k in zip((p, q, q, q), (1, 2, 3, 4)))
    prof = profile(from_density(rho))
    assert prof.f_max == pytest.approx(13 / 15, abs=1e-12)
    assert prof.delta == pytest.approx(0.0, abs=1e-12)
    assert prof.uqt


def test_profile_det_positive_has_no_formula():
    # Bell mixture with weights (0.3, 0.3, 0.1, 0.3) has T = diag(0.2, 0.2, 0.2)
    rho = sum(w * bell_state(k).rho
              for w, k in zip((0.3, 0.3, 0.1, 0.3), (1, 2, 3, 4)))
    prof = profile(from_density(rho))
    assert prof.det_t > 0
    assert not prof.formula_valid
    assert prof.f_max is None and prof.delta is None
    assert not prof.useful and not prof.uqt


def test_profile_det_zero_uses_formula():
    # dephasing midpoint: T = diag(0, 0, 1), F = 2/3 exactly, not useful
    rho = 0.5 * bell_state(1).rho + 0.5 * bell_state(4).rho
    prof = profile(from_density(rho))
    assert prof.formula_valid
    assert prof.f_max == pytest.approx(2 / 3, abs=1e-12)
    assert prof.delta == pytest.approx(1 / (3 * S5), abs=1e-12)
    assert not prof.useful


def test_profile_pure_fidelity_law(rng):
    # F = (2 + C)/3 and delta = (1 - C)/(3 sqrt5) across 50 random weights
    for a in rng.uniform(0.501, 0.999, size=50):
        prof = profile(pure_state(a))
        c = 2 * np.sqrt(a * (1 - a))
        assert prof.f_max == pytest.approx((2 + c) / 3, abs=1e-12)
        assert prof.delta == pytest.approx((1 - c) / (3 * S5), abs=1e-12)
        assert prof.useful and not prof.universal


def test_profile_delta_range(rng):
    for _ in range(30):
        prof = profile(from_density(random_density(rng)))
        if prof.formula_valid:
            assert 0.0 <= prof.delta <= 0.5
            assert prof.uqt == (prof.useful and prof.universal)
