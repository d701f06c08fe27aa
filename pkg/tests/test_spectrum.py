import io

import numpy as np
import pytest

from fermisect.bogoliubov import alpha_row, beta_row
from fermisect.field import FieldConfig, Region
from fermisect.fock import QuasiOperator, build_space, random_canonical_transform, vacuum_expectation
from fermisect.spectrum import (
    auto_truncation,
    correlation_matrix,
    cross_correlation,
    cross_correlation_from_rows,
    occupation,
    occupation_spectrum,
    write_correlation_csv,
    write_spectrum_csv,
)

CFG = FieldConfig(mass=1.0, half_length=1.0, time=0.0)


# --- occupation --------------------------------------------------------------

def test_occupation_matches_fock_engine_on_truncated_rows():
    # window |j| <= 2 -> 5 particle + 5 antiparticle modes; the Fock
    # expectation of cdag c must equal the partial row sum exactly
    n_window = 2
    space = build_space(2 * n_window + 1, 2 * n_window + 1)
    for k in (1, 2):
        c = QuasiOperator(
            alpha=alpha_row(k, Region.LEFT, CFG, n_window),
            beta=beta_row(k, Region.LEFT, CFG, n_window),
        )
        fock_val = vacuum_expectation(space, [c.dagger_matrix(space), c.matrix(space)])
        row_sum = float(np.sum(np.abs(c.beta) ** 2))
        assert fock_val.real == pytest.approx(row_sum, rel=1e-12)
        assert abs(fock_val.imag) <= 1e-14


def test_occupation_regression_value():
    assert occupation(1, CFG, 1025) == pytest.approx(0.9255953514567797, abs=1e-12)


def test_antiparticle_occupation_identical():
    # the antiparticle-side quasi-operator has alpha on the anti ladder and
    # -conj(beta) on particle creators; its vacuum occupation is the same
    # beta-row norm
    n_window = 2
    space = build_space(2 * n_window + 1, 2 * n_window + 1)
    k = 1
    alpha = alpha_row(k, Region.LEFT, CFG, n_window)
    beta = beta_row(k, Region.LEFT, CFG, n_window)
    d_mat = None
    for j in range(2 * n_window + 1):
        term = alpha[j] * space.annihilate_anti(j) - np.conj(beta[j]) * space.create_particle[j]
        d_mat = term if d_mat is None else d_mat + term
    val = vacuum_expectation(space, [d_mat.conj().T, d_mat])
    assert val.real == pytest.approx(float(np.sum(np.abs(beta) ** 2)), rel=1e-12)


def test_fermionic_bound():
    for mu_l in (0.1, 1.0, 10.0):
        cfg = FieldConfig.from_mu_l(mu_l)
        spec = occupation_spectrum(24, cfg, 1025)
        assert np.all(spec.values >= 0.0)
        assert np.all(spec.values <= 1.0)


def test_occupation_vanishes_deep_nonrelativistic():
    cfg = FieldConfig.from_mu_l(1e4)
    assert occupation(1, cfg, 513) <= 1e-3


def test_left_right_spectra_coincide():
    # magnitudes of the two halves' coefficients coincide column by column
    for k in (1, 3, 5):
        left = float(np.sum(np.abs(beta_row(k, Region.LEFT, CFG, 257)) ** 2))
        right = float(np.sum(np.abs(beta_row(k, Region.RIGHT, CFG, 257)) ** 2))
        assert abs(left - right) <= 1e-12


def test_truncation_cauchy_and_shrinking_increments():
    vals = [occupation(2, CFG, n) for n in (64, 128, 256, 512, 1024)]
    increments = [abs(vals[i + 1] - vals[i]) for i in range(len(vals) - 1)]
    for i in range(len(increments) - 1):
        assert increments[i + 1] <= increments[i] / 2.0 * 1.05  # factor-2 shrink per doubling


def test_mu_l_ordering_near_origin():
    curves = {
        mu_l: occupation_spectrum(4, FieldConfig.from_mu_l(mu_l), 1025).values
        for mu_l in (0.1, 1.0, 10.0)
    }
    for i in range(4):
        assert curves[0.1][i] > curves[1.0][i] > curves[10.0][i]


def test_occupation_input_validation():
    with pytest.raises(ValueError):
        occupation(0, CFG)
    with pytest.raises(ValueError):
        occupation_spectrum(0, CFG)


# --- cross correlation -------------------------------------------------------

def test_contraction_matches_fock_four_point_synthetic():
    # 2+2-mode synthetic canonical matrices against the explicit expectation
    ops = random_canonical_transform(2, seed=11)
    c, f = ops
    space = build_space(2, 2)
    c_mat, f_mat = c.matrix(space), f.matrix(space)
    four = vacuum_expectation(space, [c_mat.conj().T, c_mat, f_mat.conj().T, f_mat])
    singles = (vacuum_expectation(space, [c_mat.conj().T, c_mat])
               * vacuum_expectation(space, [f_mat.conj().T, f_mat]))
    wick = cross_correlation_from_rows(c.alpha, c.beta, f.alpha, f.beta)
    assert abs((four - singles) - wick) <= 1e-12


def test_contraction_two_mode_hand_value():
    # single-pair mixing rows: c mixes mode 0, f mixes mode 1 -> no shared
    # support, so the connected correlation vanishes; sharing mode 0 gives
    # the product of the overlaps by hand
    c_alpha, c_beta = np.array([0.8, 0.0]), np.array([0.6, 0.0])
    f_alpha, f_beta = np.array([0.0, 0.8], dtype=complex), np.array([0.0, 0.6j])
    assert cross_correlation_from_rows(c_alpha, c_beta, f_alpha, f_beta) == 0
    g_alpha, g_beta = np.array([0.8j, 0.0]), np.array([0.6, 0.0])
    hand = (0.6 * np.conj(0.6)) * (0.8 * np.conj(0.8j))
    assert cross_correlation_from_rows(c_alpha, c_beta, g_alpha, g_beta) == pytest.approx(hand)


def test_cross_correlation_hermitian_structure():
    mat = correlation_matrix(6, CFG, 257).entries
    assert np.allclose(mat, mat.conj().T, atol=1e-14)


def test_cross_correlation_diagonal_real_positive():
    mat = correlation_matrix(8, CFG, 513).entries
    diag = np.diag(mat)
    assert np.max(np.abs(np.imag(diag))) <= 1e-12
    assert np.all(np.real(diag) > 0)


def test_spectrum_monotone_increasing_toward_saturation():
    for mu_l in (0.1, 1.0):
        values = occupation_spectrum(24, FieldConfig.from_mu_l(mu_l), 1025).values
        assert np.all(np.diff(values) > 0)


def test_correlation_matrix_matches_scalar_entries():
    mat = correlation_matrix(4, CFG, 129)
    for k in (1, 3):
        for m in (2, 4):
            assert mat[k, m] == pytest.approx(cross_correlation(k, m, CFG, 129))


def test_near_diagonality_ratio_snapshot():
    # measured ratio recorded for regression; the advertised <= 10% diagonal
    # dominance does not hold for the full coefficient rows (see README)
    mat = correlation_matrix(16, FieldConfig.from_mu_l(1.0), n_max=1025).entries
    diag = np.abs(np.diag(mat))
    off = np.abs(mat[~np.eye(16, dtype=bool)])
    ratio = float(np.median(off) / np.median(diag))
    assert ratio == pytest.approx(1.2013397536004207, abs=1e-6)


# --- plumbing ----------------------------------------------------------------

def test_auto_truncation_converges():
    n = auto_truncation(CFG, 4, rel_tol=1e-3)
    coarse = occupation_spectrum(4, CFG, n).values
    fine = occupation_spectrum(4, CFG, 2 * (n - 1) + 1).values
    assert np.max(np.abs(fine - coarse) / fine) < 1e-3


def test_spectrum_csv_format():
    spectra = {mu_l: occupation_spectrum(3, FieldConfig.from_mu_l(mu_l), 65)
               for mu_l in (0.1, 1.0)}
    buf = io.StringIO()
    write_spectrum_csv(buf, spectra)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "k,n_muL_0.1,n_muL_1.0"
    assert len(lines) == 5
    k, v1, v2 = lines[2].split(",")
    assert k == "1" and 0 < float(v1) < 1 and 0 < float(v2) < 1


def test_correlation_csv_format():
    buf = io.StringIO()
    write_correlation_csv(buf, correlation_matrix(2, CFG, 65))
    lines = buf.getvalue().splitlines()
    assert lines[1] == "k,m,re_d,im_d"
    assert len(lines) == 6
