import numpy as np
import pytest

from extsteklov import bie2d, geometry

KITE_PERIMETER = 10.64773717646144  # frozen golden value (40-digit arithmetic)
KITE_AREA = 2.25 * np.pi  # exact for the trig-polynomial boundary
KITE_DIAMETER = 3.8154913103786443


def random_fourier_domain(rng, n_modes=4, scale=0.15):
    """Smooth star-like perturbation of the unit circle, r(t) = 1 + trig poly.

    Coefficients of x = r cos t and y = r sin t are recovered exactly by FFT
    (the product is again a trig polynomial).
    """
    a = rng.uniform(-1.0, 1.0, n_modes) * scale / (1 + np.arange(n_modes)) ** 2
    b = rng.uniform(-1.0, 1.0, n_modes) * scale / (1 + np.arange(n_modes)) ** 2
    M = 64
    t = 2 * np.pi * np.arange(M) / M
    r = 1.0 + sum(a[m] * np.cos((m + 1) * t) + b[m] * np.sin((m + 1) * t)
                  for m in range(n_modes))
    deg = n_modes + 1

    def trig_coeffs(f):
        c = np.fft.rfft(f) / M
        cos_c = np.concatenate([[c[0].real], 2 * c[1:deg + 1].real])
        sin_c = np.concatenate([[0.0], -2 * c[1:deg + 1].imag])
        return cos_c, sin_c

    xc, xs = trig_coeffs(r * np.cos(t))
    yc, ys = trig_coeffs(r * np.sin(t))
    return geometry.fourier(xc, xs, yc, ys)


@pytest.fixture(scope="session")
def kite_spectrum_512():
    """Exterior kite spectrum at N=512, reused by Table-1/Weyl/gap tests."""
    return bie2d.exterior_spectrum(geometry.kite(), 512, 120)


@pytest.fixture(scope="session")
def kite_interior_512():
    return bie2d.interior_spectrum(geometry.kite(), 512, 10)
