import math

import numpy as np
import pytest

from slabdiff import (
    CosineModeProfile,
    DomainError,
    GaussianProfile,
    Grid1D,
    InvalidParameterError,
    SpectralCoefficients,
    SurfaceCoshProfile,
    TabulatedProfile,
    UniformProfile,
    compute_coefficients,
    equilibrium_density,
    evaluate_profile,
    surface_cosh_mode_closed_form,
)

# ---------------------------------------------------------------------------
# evaluate_profile
# ---------------------------------------------------------------------------


def test_gaussian_peak_value():
    p = GaussianProfile(sharpness=100.0, amplitude=1.0)
    assert evaluate_profile(p, 0.0) == pytest.approx(math.sqrt(100.0 / math.pi), rel=1e-14)
    assert evaluate_profile(p, 0.0) == pytest.approx(5.641895835477563, rel=1e-13)


def test_surface_profile_wall_value():
    p = SurfaceCoshProfile(sharpness=10.0, amplitude=1.0)
    expected = 0.5 * 10.0 * math.cosh(5.0) / math.sinh(5.0)
    assert evaluate_profile(p, 0.5) == pytest.approx(expected, rel=1e-13)
    assert evaluate_profile(p, 0.5) == pytest.approx(5.000454019910097, rel=1e-13)


def test_surface_profile_large_sharpness_does_not_overflow():
    # cosh(s*u) formed directly overflows for s ~ 1400.
    p = SurfaceCoshProfile(sharpness=9000.0, amplitude=1.0)
    wall = evaluate_profile(p, 0.5)
    assert math.isfinite(wall)
    assert wall == pytest.approx(0.5 * 9000.0, rel=1e-10)
    assert evaluate_profile(p, 0.0) >= 0.0


def test_uniform_profile():
    p = UniformProfile(level=1.0)
    rng = np.random.default_rng(3)
    for u in rng.uniform(-0.5, 0.5, size=10):
        assert evaluate_profile(p, float(u)) == 1.0


def test_cosine_mode_profile_values():
    p = CosineModeProfile(mode=2, offset=1.5, amplitude=-0.5)
    assert evaluate_profile(p, 0.0) == pytest.approx(1.0, rel=1e-15)
    u = np.linspace(-0.5, 0.5, 301)
    vals = evaluate_profile(p, u)
    assert np.all(vals >= 0)


def test_profile_domain_error():
    p = UniformProfile(level=1.0)
    with pytest.raises(DomainError):
        evaluate_profile(p, 0.5001)
    with pytest.raises(DomainError):
        evaluate_profile(p, np.array([0.0, -0.6]))


def test_delta_like_parameters_rejected():
    with pytest.raises(InvalidParameterError, match="Tabulated"):
        GaussianProfile(sharpness=2e6, amplitude=1.0)
    with pytest.raises(InvalidParameterError, match="Tabulated"):
        SurfaceCoshProfile(sharpness=2e4, amplitude=1.0)


def test_profile_parameter_validation():
    with pytest.raises(InvalidParameterError):
        GaussianProfile(sharpness=-1.0, amplitude=1.0)
    with pytest.raises(InvalidParameterError):
        GaussianProfile(sharpness=10.0, amplitude=0.0)
    with pytest.raises(InvalidParameterError):
        UniformProfile(level=-0.1)
    with pytest.raises(InvalidParameterError):
        CosineModeProfile(mode=0, offset=1.0, amplitude=0.5)
    with pytest.raises(InvalidParameterError):
        CosineModeProfile(mode=1, offset=0.4, amplitude=0.5)


def test_tabulated_profile_symmetrized_and_interpolated():
    grid = Grid1D(points=np.array([-0.5, -0.1, 0.2, 0.5]))
    values = np.array([1.0, 0.5, 0.3, 2.0])
    p = TabulatedProfile(grid=grid, values=values)
    u = np.linspace(-0.5, 0.5, 101)
    # evenness is exact by construction (same float negated)
    np.testing.assert_array_equal(evaluate_profile(p, u), evaluate_profile(p, -u))
    assert evaluate_profile(p, 0.5) == pytest.approx(1.5, rel=1e-14)
    with pytest.raises(InvalidParameterError):
        TabulatedProfile(grid=grid, values=np.array([1.0, -0.5, 0.3, 2.0]))


# ---------------------------------------------------------------------------
# compute_coefficients
# ---------------------------------------------------------------------------


def test_uniform_coefficients():
    c = compute_coefficients(UniformProfile(level=1.0), 10)
    assert c.mean == pytest.approx(1.0, abs=1e-13)
    assert np.max(np.abs(c.modes)) < 1e-13
    assert equilibrium_density(c) == c.mean


def test_single_mode_orthogonality():
    c = compute_coefficients(CosineModeProfile(mode=1, offset=1.0, amplitude=1.0), 10)
    assert c.mean == pytest.approx(1.0, abs=1e-12)
    assert c.modes[0] == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(c.modes[1:])) < 1e-12


def test_surface_first_coefficient_matches_closed_form():
    p = SurfaceCoshProfile(sharpness=10.0, amplitude=1.0)
    c = compute_coefficients(p, 5)
    expected = 2.0 * 100.0 * (-1.0) / ((2.0 * math.pi) ** 2 + 100.0)
    assert expected == pytest.approx(-1.4339136006497955, rel=1e-15)
    assert c.modes[0] == pytest.approx(expected, abs=1e-10)
    assert surface_cosh_mode_closed_form(p, 1) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("m", [1, 2, 7, 25, 100])
def test_surface_coefficients_vs_closed_form(surface_profile, m):
    c = compute_coefficients(surface_profile, m)
    assert c.modes[m - 1] == pytest.approx(
        surface_cosh_mode_closed_form(surface_profile, m), abs=1e-10
    )


def test_surface_mass_is_amplitude(surface_profile):
    c = compute_coefficients(surface_profile, 3)
    assert c.mean == pytest.approx(1.0, abs=1e-12)
    c2 = compute_coefficients(SurfaceCoshProfile(sharpness=55.0, amplitude=2.5), 3)
    assert c2.mean == pytest.approx(2.5, abs=1e-11)


def test_gaussian_mass_close_to_one(gaussian_coeffs):
    # Mass escaping past the walls is ~erfc(5); quadrature resolves it.
    assert abs(gaussian_coeffs.mean - 1.0) < 1.6e-12
    assert gaussian_coeffs.mean == pytest.approx(math.erf(5.0), abs=1e-14)


def test_mass_consistency_with_trapezoid(gaussian_profile, surface_profile):
    u = np.linspace(-0.5, 0.5, 10001)
    h = u[1] - u[0]
    for profile in (gaussian_profile, CosineModeProfile(3, 1.0, 0.5)):
        c = compute_coefficients(profile, 5)
        trapz_mass = np.trapezoid(evaluate_profile(profile, u), u)
        assert c.mean == pytest.approx(trapz_mass, abs=1e-8)
    # The boundary-layer profile has nonzero wall slope, so the trapezoid
    # itself is off by h^2/12 * (f'(1/2) - f'(-1/2)) = 8.33e-8 on this grid;
    # subtracting the Euler-Maclaurin correction restores 1e-8 agreement.
    c = compute_coefficients(surface_profile, 5)
    trapz_mass = np.trapezoid(evaluate_profile(surface_profile, u), u)
    s, A = 10.0, 1.0
    wall_slope = 0.5 * A * s * s * math.sinh(s / 2) / math.sinh(s / 2)
    correction = h * h / 12.0 * 2.0 * wall_slope
    assert c.mean == pytest.approx(trapz_mass - correction, abs=1e-8)


def test_reconstruction_is_even(gaussian_coeffs, surface_coeffs):
    rng = np.random.default_rng(11)
    u = rng.uniform(0.0, 0.5, size=40)
    for c in (gaussian_coeffs, surface_coeffs):
        delta = np.abs(c.reconstruct(u) - c.reconstruct(-u))
        assert np.max(delta) < 1e-12


def test_gaussian_reconstruction_converges(gaussian_coeffs):
    u = np.linspace(-0.5, 0.5, 2001)
    profile = GaussianProfile(sharpness=100.0, amplitude=1.0)
    err = np.abs(gaussian_coeffs.reconstruct(u) - evaluate_profile(profile, u))
    assert np.max(err) < 1e-6
    wide = GaussianProfile(sharpness=1000.0, amplitude=1.0)
    cw = compute_coefficients(wide, 500)
    err = np.abs(cw.reconstruct(u) - evaluate_profile(wide, u))
    assert np.max(err) < 1e-6


def test_surface_reconstruction_bounded_by_coefficient_tail(surface_profile, surface_coeffs):
    # The coefficient tail decays like 1/m^2, so the truncated series misses
    # about sum_{m>M} 2 s^2/((2 m pi)^2 + s^2) at the walls; 1e-6 accuracy is
    # not reachable at M=500 and the honest bound is the tail sum itself.
    s, M = 10.0, surface_coeffs.truncation
    tail_sum = 2 * s * s / ((2 * math.pi * (M + 1)) ** 2 + s * s) + 2 * s * s / (
        4 * math.pi**2 * M
    )
    u = np.linspace(-0.5, 0.5, 2001)
    err = np.abs(surface_coeffs.reconstruct(u) - evaluate_profile(surface_profile, u))
    assert np.max(err) <= tail_sum
    # away from the walls the alternating tail nearly cancels
    interior = np.abs(u) <= 0.4
    assert np.max(err[interior]) < 1e-4


def test_tail_diagnostic_reported(gaussian_coeffs, surface_coeffs):
    assert gaussian_coeffs.tail == abs(gaussian_coeffs.modes[-1])
    # smooth profile: true k_500 ~ exp(-2500 pi^2 / 100) underflows, only the
    # quadrature noise floor remains; boundary-layer profile: 1/m^2 tail
    assert gaussian_coeffs.tail < 1e-12
    assert surface_coeffs.tail == pytest.approx(
        abs(surface_cosh_mode_closed_form(SurfaceCoshProfile(10.0, 1.0), 500)), rel=1e-6
    )


def test_coefficients_validation():
    with pytest.raises(InvalidParameterError):
        compute_coefficients(UniformProfile(1.0), 0)
    with pytest.raises(InvalidParameterError):
        SpectralCoefficients(mean=1.0, modes=np.zeros(3), truncation=4)
