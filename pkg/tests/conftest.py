import pytest

from slabdiff import (
    GaussianProfile,
    SurfaceCoshProfile,
    compute_coefficients,
)

# The two reference scenarios share these profiles and eps.
EPS_REF = 0.13
TRUNCATION = 500


@pytest.fixture(scope="session")
def gaussian_profile():
    return GaussianProfile(sharpness=100.0, amplitude=1.0)


@pytest.fixture(scope="session")
def surface_profile():
    return SurfaceCoshProfile(sharpness=10.0, amplitude=1.0)


@pytest.fixture(scope="session")
def gaussian_coeffs(gaussian_profile):
    return compute_coefficients(gaussian_profile, TRUNCATION)


@pytest.fixture(scope="session")
def surface_coeffs(surface_profile):
    return compute_coefficients(surface_profile, TRUNCATION)
