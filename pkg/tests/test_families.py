import numpy as np
import pytest

from uqtchan import channels, families, linalg, states
from uqtchan.channels import ChannelValidationError
from uqtchan.families import (
    FAMILIES,
    canonical_choi_eigenvalues,
    canonical_nonunital_choi,
    lambda_star_gamma,
    lambda_star_nu,
    lambda_tilde_nu,
    lambda_tilde_p2_max,
    lambda_u4,
    lambda_u4_weights,
    noise_channel,
    pauli_mixture,
    uqt_nonunital_rank3,
    uqt_nonunital_rank4,
    uqt_unital_for_pure,
    werner,
)
from uqtchan.linalg import I2, SZ

S5 = np.sqrt(5.0)


def bell_output_profile(ch):
    return states.profile(channels.apply_to_bob(states.bell_state(1), ch))


def matched_output_profile(ch, c):
    st = states.pure_state_from_concurrence(c)
    return states.profile(channels.apply_to_bob(st, ch))


# ---------------------------------------------------------------------------
# Pauli mixtures
# ---------------------------------------------------------------------------

def test_pauli_mixture_identity():
    ch = pauli_mixture(1, 0, 0, 0)
    assert len(ch.kraus) == 1
    assert np.allclose(ch.kraus[0], I2)


def test_pauli_mixture_werner_is_uqt():
    prof = bell_output_profile(werner(0.8))
    assert prof.uqt and prof.f_max == pytest.approx(13 / 15, abs=1e-12)


def test_pauli_mixture_bell_diagonal_not_uqt():
    prof = bell_output_profile(pauli_mixture(0.5, 0.3, 0.2, 0))
    assert prof.useful is False or prof.universal is False
    assert not prof.uqt


def test_pauli_mixture_rejects_bad_weights():
    with pytest.raises(ValueError, match="non-negative"):
        pauli_mixture(1.2, -0.2, 0, 0)
    with pytest.raises(ValueError, match="sum to 1"):
        pauli_mixture(0.5, 0.2, 0.2, 0.2)


# ---------------------------------------------------------------------------
# unital constructions for pure inputs
# ---------------------------------------------------------------------------

def test_uqt_unital_for_pure_correlation_value():
    # all three correlation magnitudes equal (4 p0 - 1) c / (2 + c)
    c, p0 = 0.8, 0.8
    prof = matched_output_profile(uqt_unital_for_pure(c, p0), c)
    expected = (4 * p0 - 1) * c / (2 + c)
    assert np.allclose(prof.spectrum.abs_t, expected, atol=1e-12)
    assert prof.uqt


def test_uqt_unital_for_pure_boundary_excluded():
    c = 0.6
    with pytest.raises(ValueError, match="p0 must lie in"):
        uqt_unital_for_pure(c, (1 + 2 * c) / (6 * c))


def test_uqt_unital_for_pure_narrow_window():
    ch = uqt_unital_for_pure(0.51, 0.67)  # window is (0.6601, 0.6711]
    assert matched_output_profile(ch, 0.51).uqt
    with pytest.raises(ValueError, match="p0 must lie in"):
        uqt_unital_for_pure(0.51, 0.68)


def test_uqt_unital_for_pure_needs_large_concurrence():
    with pytest.raises(ValueError, match="concurrence"):
        uqt_unital_for_pure(0.45, 0.9)


def test_lambda_u4_weights_and_validity():
    w = lambda_u4_weights(0.7)
    assert sum(w) == pytest.approx(1.0, abs=1e-14)
    ch = lambda_u4(0.7)
    assert channels.report(ch).choi_rank == 4
    prof = matched_output_profile(ch, 0.7)
    assert prof.f_max == pytest.approx((3 + 4 * 0.7) / (6 + 3 * 0.7), abs=1e-12)
    assert prof.delta <= 1e-12


def test_lambda_u4_rejected_below_half():
    with pytest.raises(ChannelValidationError, match="negative"):
        lambda_u4(0.4)


def test_lambda_u4_negative_weight_matrix_not_psd():
    # the would-be Choi matrix of the p = 0.4 operator set has a negative
    # eigenvalue, so the set describes no CPTP map
    w = lambda_u4_weights(0.4)
    assert w[3] < 0
    choi = sum(wi * states.bell_state(k).rho for wi, k in zip(w, (1, 2, 3, 4)))
    assert not linalg.is_psd(choi, tol=1e-10)


def test_lambda_u2_is_dephasing_law():
    # the rank-2 unital family is plain dephasing: deviation never vanishes
    for p in (0.2, 0.5, 0.8):
        for c in (0.3, 0.7, 0.95):
            prof = matched_output_profile(families.dephasing(p), c)
            f_ref = (2 + c * abs(2 * p - 1)) / 3
            d_ref = (1 - c * abs(2 * p - 1)) / (3 * S5)
            assert prof.f_max == pytest.approx(f_ref, abs=1e-12)
            assert prof.delta == pytest.approx(d_ref, abs=1e-12)
            assert not prof.uqt


# ---------------------------------------------------------------------------
# non-unital UQT-preserving families
# ---------------------------------------------------------------------------

def printed_rank4_kraus(s1, s2, s3, t):
    """Literal transcription of the published component formulas (open region)."""
    s = np.sqrt(s1 * s1 + s2 * s2 + s3 * s3)
    r = np.sqrt(s * s + 4 * t * t)
    x0 = ((2 * t - s3 + r) / (2 * np.sqrt(2))) * np.sqrt((1 + t + r) / (s * s + 2 * t * (2 * t + r)))
    x1 = (1 / (2 * np.sqrt(2))) * np.sqrt((s * s - s3 * s3) * (1 + s - t)) / s
    x2 = ((s3 - 2 * t + r) / (2 * np.sqrt(2))) * np.sqrt((1 + t - r) / (s * s + 2 * t * (2 * t - r)))
    x3 = (1 / (2 * np.sqrt(2))) * np.sqrt((s * s - s3 * s3) * (1 - s - t)) / s
    k0 = x0 * np.array([
        [(1j * s1 + s2) / (s3 - 2 * t - r),
         1j * (s * s + s3 * (s3 + 2 * r)) / (s * s - s3 * s3 + 4 * s3 * t)],
        [-1j, (1j * s1 - s2) / (-s3 + 2 * t + r)]])
    k1 = x1 * np.array([
        [-1j * (s + s3) / (s1 + 1j * s2), -1j],
        [-1j, 1j * (s3 - s) / (s1 - 1j * s2)]])
    k2 = x2 * np.array([
        [(1j * s1 + s2) / (s3 - 2 * t + r),
         1j * (s * s + s3 * (s3 - 2 * r)) / (s * s - s3 * s3 + 4 * s3 * t)],
        [-1j, (-1j * s1 + s2) / (s3 - 2 * t + r)]])
    k3 = x3 * np.array([
        [(1j * s1 + s2) / (s + s3), -1j],
        [-1j, 1j * (s + s3) / (s1 - 1j * s2)]])
    return [k0, k1, k2, k3]


def printed_rank3_kraus(theta, phi, t):
    r = 1 - t
    root = np.sqrt(r * r + 4 * t * t)
    ct, st_ = np.cos(theta), np.sin(theta)
    y0 = (2 * t - r * ct + root) / (2 * np.sqrt(2)) * np.sqrt(
        (1 + t + root) / (r * r + 2 * t * (2 * t + root)))
    y1 = st_ * np.sqrt(r) / 2
    y2 = (r * ct - 2 * t + root) / (2 * np.sqrt(2)) * np.sqrt(
        (1 + t - root) / (r * r + 2 * t * (2 * t - root)))
    den = r * r * st_ * st_ + 4 * t * r * ct
    k0 = y0 * np.array([
        [1j * r * st_ * np.exp(-1j * phi) / (r * ct - 2 * t - root),
         1j * (r * r * (1 + ct * ct) + 2 * r * ct * root) / den],
        [-1j, 1j * r * st_ * np.exp(1j * phi) / (-r * ct + 2 * t + root)]])
    k1 = y1 * np.array([
        [-1j * (1 + ct) / (st_ * np.exp(1j * phi)), -1j],
        [-1j, -1j * (1 - ct) / (st_ * np.exp(-1j * phi))]])
    k2 = y2 * np.array([
        [1j * r * st_ * np.exp(-1j * phi) / (r * ct - 2 * t + root),
         1j * (r * r * (1 + ct * ct) - 2 * r * ct * root) / den],
        [-1j, -1j * r * st_ * np.exp(1j * phi) / (r * ct - 2 * t + root)]])
    return [k0, k1, k2]


def test_rank4_family_profile():
    ch = uqt_nonunital_rank4(0.1, 0.1, 0.1, 0.5)
    rep = channels.report(ch)
    prof = states.profile(rep.choi)
    assert not rep.unital and rep.choi_rank == 4
    assert prof.f_max == pytest.approx(0.75, abs=1e-12)
    assert prof.delta <= 1e-12
    assert prof.uqt


@pytest.mark.parametrize("build,args", [
    (uqt_nonunital_rank4, (0.05, -0.1, 0.2, 0.6)),
    (uqt_nonunital_rank3, (0.7, 2.1, 0.5)),
])
def test_uqt_families_orthogonal_and_complete(build, args):
    ch = build(*args)
    assert channels.completeness_residual(ch.kraus) < 1e-10
    for i in range(len(ch.kraus)):
        for j in range(i):
            assert abs(np.trace(ch.kraus[i].conj().T @ ch.kraus[j])) < 1e-10


def test_rank4_family_region_errors():
    with pytest.raises(ValueError, match=r"\|s\| must lie"):
        uqt_nonunital_rank4(0.3, 0.4, 0.0, 0.5)  # |s| = 0.5 = 1 - t
    with pytest.raises(ValueError, match="t must lie"):
        uqt_nonunital_rank4(0.1, 0.0, 0.0, 0.2)
    with pytest.raises(ValueError, match=r"\|s\| must lie"):
        uqt_nonunital_rank4(0.0, 0.0, 0.0, 0.5)  # unital point excluded


def test_rank4_family_axis_degeneracy_is_regular():
    ch = uqt_nonunital_rank4(0.0, 0.0, 0.2, 0.5)  # s1 = s2 = 0 axis
    rep = channels.report(ch)
    assert rep.choi_rank == 4 and not rep.unital
    assert states.profile(rep.choi).uqt


@pytest.mark.parametrize("s1,s2,s3,t", [
    (0.1, 0.1, 0.1, 0.5),
    (0.05, -0.1, 0.2, 0.6),
    (0.2, 0.05, -0.1, 0.4),
])
def test_rank4_family_matches_printed_forms(s1, s2, s3, t):
    printed = printed_rank4_kraus(s1, s2, s3, t)
    ch = uqt_nonunital_rank4(s1, s2, s3, t)
    # per-operator phases differ, the channel (Choi matrix) does not
    diff = np.max(np.abs(channels.choi_matrix(printed) - channels.choi_matrix(ch.kraus)))
    assert diff < 1e-12


def test_rank3_family_profile():
    ch = uqt_nonunital_rank3(np.pi / 3, np.pi / 4, 0.6)
    rep = channels.report(ch)
    prof = states.profile(rep.choi)
    assert not rep.unital and rep.choi_rank == 3
    assert np.allclose(prof.spectrum.abs_t, 0.6, atol=1e-12)
    assert prof.f_max == pytest.approx(0.8, abs=1e-12)
    assert prof.delta <= 1e-12


def test_rank3_family_near_classical_edge():
    prof = states.profile(channels.choi(uqt_nonunital_rank3(1.0, 2.0, 0.34)))
    assert prof.f_max == pytest.approx(0.67, abs=1e-12)
    assert prof.uqt


def test_rank3_family_poles_are_regular():
    for theta in (0.0, np.pi):
        rep = channels.report(uqt_nonunital_rank3(theta, 0.7, 0.5))
        assert rep.choi_rank == 3 and not rep.unital


def test_rank3_family_range_error():
    with pytest.raises(ValueError, match="t must lie"):
        uqt_nonunital_rank3(0.3, 0.3, 1.0)


@pytest.mark.parametrize("theta,phi,t", [
    (np.pi / 3, np.pi / 4, 0.6),
    (0.4, 2.0, 0.5),
    (2.0, 5.5, 0.4),
    (np.pi / 2, 1.0, 0.45),
])
def test_rank3_family_matches_printed_forms(theta, phi, t):
    printed = printed_rank3_kraus(theta, phi, t)
    ch = uqt_nonunital_rank3(theta, phi, t)
    diff = np.max(np.abs(channels.choi_matrix(printed) - channels.choi_matrix(ch.kraus)))
    assert diff < 1e-12


def test_canonical_choi_eigenvalue_ordering(rng):
    # strict ordering q0 > q1 > q2 > q3 across the admissible region
    for _ in range(200):
        t = float(rng.uniform(1 / 3 + 1e-3, 1 - 1e-3))
        s = float(rng.uniform(1e-3, (1 - t) * 0.999))
        q = canonical_choi_eigenvalues(s, t)
        assert q[0] > q[1] > q[2] > q[3] >= -1e-15
        # the three gaps printed for the spectrum
        assert 2 * t + np.sqrt(s * s + 4 * t * t) - s > 0
        assert s + np.sqrt(s * s + 4 * t * t) - 2 * t > 0
        assert s + 2 * t - np.sqrt(s * s + 4 * t * t) > 0


# ---------------------------------------------------------------------------
# named examples
# ---------------------------------------------------------------------------

def test_example_rank4_uqt_values():
    prof = states.profile(channels.choi(families.example_rank4_uqt()))
    assert prof.f_max == pytest.approx(0.75, abs=1e-12)
    assert prof.delta <= 1e-12 and prof.uqt


def test_example_rank3_universal_only_values():
    ch = families.example_rank3_universal_only()
    rep = channels.report(ch)
    prof = states.profile(rep.choi)
    assert rep.choi_rank == 3 and not rep.unital
    assert prof.f_max == pytest.approx(11 / 20, abs=1e-12)
    assert prof.delta <= 1e-12
    assert prof.universal and not prof.useful


def test_example_rank3_universal_only_is_canonical_point():
    # the fixed example sits at s = (0.9, 0, 0), t = 0.1 of the canonical form
    ch = families.example_rank3_universal_only()
    rho = canonical_nonunital_choi((0.9, 0.0, 0.0), 0.1)
    rebuilt = channels.kraus_from_choi(rho, rank=3)
    diff = np.max(np.abs(channels.choi_matrix(ch.kraus) - channels.choi_matrix(rebuilt)))
    assert diff < 1e-12


def test_example_rank3_fidelity_law():
    for p in (0.2, 0.4, 0.6, 0.9):
        prof = states.profile(channels.choi(families.example_rank3(p)))
        assert prof.f_max == pytest.approx((1 + p) / 2, abs=1e-12)
        assert prof.delta <= 1e-12
        assert prof.useful == (p > 1 / 3)


# ---------------------------------------------------------------------------
# lambda_tilde_nu / lambda_star_nu
# ---------------------------------------------------------------------------

def test_lambda_tilde_fidelity_law(rng):
    for _ in range(20):
        p1 = float(rng.uniform(0.05, 0.95))
        p2 = float(rng.uniform(1e-3, lambda_tilde_p2_max(p1) * 0.999))
        prof = matched_output_profile(lambda_tilde_nu(p1, p2), p1)
        assert prof.f_max == pytest.approx((1 + p2 * p1) / 2, abs=1e-10)
        assert prof.delta <= 1e-10


def test_lambda_tilde_nonunital():
    ch = lambda_tilde_nu(0.6, 0.5)
    assert channels.unitality_residual(ch.kraus) > 1e-3


def test_lambda_tilde_region_errors():
    hi = lambda_tilde_p2_max(0.6)
    with pytest.raises(ValueError, match="p2 must lie"):
        lambda_tilde_nu(0.6, hi)
    with pytest.raises(ValueError, match="p1 must lie"):
        lambda_tilde_nu(1.0, 0.1)


def test_lambda_star_gamma_and_law():
    # frozen from the closed forms: gamma(0.6) and the matched fidelity
    g = lambda_star_gamma(0.6)
    assert g == pytest.approx(0.2709385763545744, abs=1e-12)
    ch = lambda_star_nu(0.6)
    prof = matched_output_profile(ch, 0.6)
    u = np.sqrt(1 - 0.36)
    f_ref = (3 - u + np.sqrt(3 * 0.36 - 2 + 2 * u)) / 4
    assert prof.f_max == pytest.approx(f_ref, abs=1e-12)
    assert prof.delta <= 1e-12


def test_lambda_star_deviation_free_for_all_concurrences(rng):
    for _ in range(20):
        c = float(rng.uniform(0.05, 0.95))
        prof = matched_output_profile(lambda_star_nu(c), c)
        assert prof.delta <= 1e-10
        assert prof.uqt == (c > np.sqrt(5 - 2 * np.sqrt(3)) / 3)


# ---------------------------------------------------------------------------
# noise catalog
# ---------------------------------------------------------------------------

def test_unruh_kraus_verbatim():
    r = np.pi / 5
    ch = noise_channel("unruh", r=r)
    assert np.allclose(ch.kraus[0], np.diag([np.cos(r), 1.0]))
    assert np.allclose(ch.kraus[1], [[0, 0], [np.sin(r), 0]])
    assert not channels.report(ch).unital


def test_dephasing_m_kraus_ordering():
    ch = noise_channel("dephasing_m", p=0.3)
    assert np.allclose(ch.kraus[0], np.sqrt(0.7) * I2)  # identity term first
    assert np.allclose(ch.kraus[1], np.sqrt(0.3) * SZ)


def test_rtn_probability_law():
    g, omega, t = 1.0, 0.5, 0.3
    ch = noise_channel("rtn_nm", g=g, omega=omega, t=t)
    expected = np.exp(-g * t) * (np.cos(g * omega * t) + np.sin(g * omega * t) / omega)
    assert ch.params["p"] == pytest.approx(expected, abs=1e-15)


def test_rtn_rejects_unphysical_oscillation():
    # g w t = pi makes the law negative
    with pytest.raises(ValueError, match="outside"):
        noise_channel("rtn_nm", g=0.1, omega=5.0, t=2 * np.pi)


def test_pln_nm_markovian_limit():
    # g -> 0 reproduces the Markovian law exp(-G t)
    ch = noise_channel("pln_nm", G=1.0, g=1e-9, t=0.7)
    assert ch.params["p"] == pytest.approx(np.exp(-0.7), abs=1e-8)


def test_depolarizing_nm_needs_positive_identity_weight():
    with pytest.raises(ValueError, match="3 alpha p"):
        noise_channel("depolarizing_nm", alpha=1.0, p=0.45)


def test_adc_nm_accepts_time_zero():
    ch = noise_channel("adc_nm", R=1.0, gamma=1.0, omega0=2.0, g=1.0, t=0.0)
    assert ch.params["p"] == 0.0


def test_lambda_star_matches_damping_form():
    ch = noise_channel("lambda_star_nu", p1=0.6)
    g = lambda_star_gamma(0.6)
    assert np.allclose(ch.kraus[0], np.diag([np.sqrt(1 - g), 1.0]))
    assert np.allclose(ch.kraus[1], [[0, 0], [np.sqrt(g), 0]])


def test_noise_channel_unknown_family_and_params():
    with pytest.raises(ValueError, match="unknown family"):
        noise_channel("nonexistent", p=0.1)
    with pytest.raises(ValueError, match="unknown parameter"):
        noise_channel("dephasing_m", q=0.1)
    with pytest.raises(ValueError, match="missing parameters"):
        noise_channel("adc_m", gamma=1.0)
    with pytest.raises(ValueError, match="must lie in"):
        noise_channel("dephasing_m", p=1.5)


def test_catalog_listing_covers_noise_rows():
    listed = {row["family"] for row in families.list_families()}
    assert set(families.NOISE_IDS) <= listed


@pytest.mark.parametrize("family_id", sorted(FAMILIES))
def test_family_random_draws_validate(family_id):
    # 200 in-range draws per family: construction must validate and report
    # the advertised unitality and Choi rank
    fam = FAMILIES[family_id]
    rng = np.random.default_rng(abs(hash(family_id)) % 2**32)
    for _ in range(200):
        params = fam.sample_params(rng)
        ch = fam.build(**params)
        assert channels.completeness_residual(ch.kraus) <= channels.EPS_CPTP
        rep = channels.report(ch)
        if fam.expected_unital is not None:
            assert rep.unital == fam.expected_unital, (family_id, params)
        if fam.expected_rank is not None:
            assert rep.choi_rank == fam.expected_rank, (family_id, params)
