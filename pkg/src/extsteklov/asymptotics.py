"""Counting functions, Weyl-law fits, and the 2D eigenvalue pairing.

For a smooth planar boundary the counting function grows like
N(sigma) ~ (|dOmega|/pi) sigma, and the eigenvalues come in pairs whose
gaps sigma_{2k+1} - sigma_{2k} decay super-polynomially; at numerical
scale the decay is certified only as faster than k^-4 on the computed
range.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, MathDomainError, PreconditionError

__all__ = ["CountingFunction", "weyl_fit_2d", "pair_gap_2d"]

MIN_EIGENVALUES_FOR_FIT = 60


@dataclass(frozen=True)
class CountingFunction:
    """N(sigma) = #{k : sigma_k <= sigma} for a sorted eigenvalue list."""

    eigenvalues: np.ndarray

    @classmethod
    def from_values(cls, values):
        vals = np.sort(np.asarray(values, dtype=float))
        return cls(eigenvalues=vals)

    def __call__(self, sigma):
        return np.searchsorted(self.eigenvalues, sigma, side="right")

    def table(self):
        """(sigma, count) rows at the jump points, right-continuous."""
        sig = np.unique(self.eigenvalues)
        return np.column_stack([sig, self(sig)])


def _values(spectrum):
    vals = getattr(spectrum, "values", None)
    if vals is None:
        vals = spectrum.flattened()
    return np.asarray(vals, dtype=float)


def weyl_fit_2d(spectrum, perimeter):
    """Least-squares slope of N(sigma) vs sigma over the upper half range.

    Returns (slope, slope * pi / perimeter - 1), the relative deviation
    from the leading Weyl coefficient |dOmega| / pi. Requires at least 60
    eigenvalues; the lower half of the range is excluded to avoid the
    low-eigenvalue transient.
    """
    if perimeter <= 0:
        raise MathDomainError("perimeter must be positive")
    vals = np.sort(_values(spectrum))
    if len(vals) < MIN_EIGENVALUES_FOR_FIT:
        raise InsufficientDataError(
            f"weyl_fit_2d needs >= {MIN_EIGENVALUES_FOR_FIT} eigenvalues, "
            f"got {len(vals)}"
        )
    counting = CountingFunction(eigenvalues=vals)
    sig = vals
    mask = sig >= 0.5 * sig[-1]
    x = sig[mask]
    y = counting(x).astype(float)
    slope, _ = np.polyfit(x, y, 1)
    return float(slope), float(slope * np.pi / perimeter - 1.0)


def pair_gap_2d(spectrum):
    """Gaps sigma_{2k+1} - sigma_{2k} of a planar spectrum and their decay.

    Indices are 1-based over the sorted eigenvalues, so the pairs are
    (sigma_2, sigma_3), (sigma_4, sigma_5), .... Returns (gaps, exponent)
    where exponent is the least-squares slope of log gap vs log k over the
    gaps that are positive; gaps below machine scale make the exponent
    nan (all-zero gaps: a disk).
    """
    curve = getattr(spectrum, "curve", None)
    if curve is not None and len(curve.components) != 1:
        raise PreconditionError("pairing asymptotics require a simply connected domain")
    vals = np.sort(_values(spectrum))
    n_pairs = (len(vals) - 1) // 2
    gaps = np.array([vals[2 * k] - vals[2 * k - 1] for k in range(1, n_pairs + 1)])
    pos = gaps > 1e-14 * np.maximum(1.0, vals[-1])
    if np.count_nonzero(pos) >= 3:
        k = np.arange(1, n_pairs + 1)[pos]
        exponent, _ = np.polyfit(np.log(k), np.log(gaps[pos]), 1)
        exponent = float(exponent)
    else:
        exponent = float("nan")
    return gaps, exponent
