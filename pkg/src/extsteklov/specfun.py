"""Special functions for the closed forms and curvature bounds.

The k-argument logarithmic mean is evaluated through the divided difference
of f(x) = x^(k-2) log(x): the partial-fraction form

    1/L = (k-1) * sum_j alpha_j^(k-2) log(alpha_j) / prod_{i!=j}(alpha_j - alpha_i)

is exactly (k-1) times the divided difference of f over the nodes alpha_j.
The raw sum cancels catastrophically for close arguments, so clusters of
nearly coincident nodes are handled by a Taylor expansion of the divided
difference about the cluster center.
"""

import math

import numpy as np
from scipy import special as sp

from .errors import MathDomainError

__all__ = [
    "log_mean",
    "geometric_mean",
    "bessel_k",
    "bessel_i",
    "sph_mult",
    "dirichlet_interval_eig",
]

# relative span below which a node set is treated as one Taylor cluster
_CLUSTER_REL_SPAN = 1e-2


def _f_derivatives(p, c, max_order):
    """Derivatives of f(x) = x^p log(x) at c, orders 0..max_order.

    f^(j)(x) = a_j x^(p-j) log x + b_j x^(p-j) with
    a_0 = 1, b_0 = 0, a_{j+1} = a_j (p - j), b_{j+1} = a_j + b_j (p - j).
    """
    logc = math.log(c)
    out = np.empty(max_order + 1)
    a, b = 1.0, 0.0
    for j in range(max_order + 1):
        out[j] = (a * logc + b) * c ** (p - j)
        a, b = a * (p - j), a + b * (p - j)
    return out


def _taylor_divdiff(nodes, p):
    """Divided difference of x^p log x over a tight cluster of nodes.

    Uses f[x_0..x_{k-1}] = sum_{m >= k-1} f^(m)(c)/m! * h_{m-k+1}(delta)
    where h_r is the complete homogeneous symmetric polynomial of the
    node offsets delta_i = x_i - c.
    """
    k = len(nodes)
    c = float(np.mean(nodes))
    delta = nodes - c
    max_extra = 60
    fder = _f_derivatives(p, c, k - 1 + max_extra)
    # H[r] accumulates h_r(delta) via the standard one-variable-at-a-time DP
    H = np.zeros(max_extra + 1)
    H[0] = 1.0
    for d in delta:
        for r in range(1, max_extra + 1):
            H[r] += d * H[r - 1]
    total = 0.0
    factm = math.factorial(k - 1)
    small = 0
    for r in range(max_extra + 1):
        m = k - 1 + r
        term = fder[m] / factm * H[r]
        total += term
        # symmetric clusters have exactly zero odd terms, so require two
        # consecutive negligible terms before truncating
        small = small + 1 if abs(term) < 1e-17 * abs(total) else 0
        if r > 2 and small >= 2:
            break
        factm *= m + 1
    return total


def _divdiff(nodes, p):
    """Divided difference of x^p log x over sorted positive nodes."""
    if len(nodes) == 1:
        return nodes[0] ** p * math.log(nodes[0])
    span = nodes[-1] - nodes[0]
    if span <= _CLUSTER_REL_SPAN * nodes[0]:
        return _taylor_divdiff(nodes, p)
    return (_divdiff(nodes[1:], p) - _divdiff(nodes[:-1], p)) / span


def log_mean(values):
    """Multi-argument logarithmic mean L(alpha_1, ..., alpha_k).

    For distinct positive entries this equals the partial-fraction formula;
    repeated entries are handled as its continuous limit, and any zero entry
    gives 0. Negative entries are a domain error.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or len(vals) < 2:
        raise MathDomainError("log_mean needs at least two arguments")
    if not np.all(np.isfinite(vals)):
        raise MathDomainError("log_mean arguments must be finite")
    if np.any(vals < 0.0):
        raise MathDomainError("log_mean arguments must be nonnegative")
    if np.any(vals == 0.0):
        return 0.0
    vals = np.sort(vals)
    k = len(vals)
    if k == 2:
        a, b = vals
        if a == b:
            return float(a)
        return float((b - a) / math.log1p((b - a) / a))
    dd = _divdiff(vals, k - 2)
    return float(1.0 / ((k - 1) * dd))


def geometric_mean(values):
    """(prod values)^(1/k) for nonnegative entries."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or len(vals) < 1:
        raise MathDomainError("geometric_mean needs at least one argument")
    if np.any(vals < 0.0):
        raise MathDomainError("geometric_mean arguments must be nonnegative")
    if np.any(vals == 0.0):
        return 0.0
    return float(np.exp(np.mean(np.log(vals))))


def bessel_k(order, x):
    """Modified Bessel function K_order(x) for x > 0, order >= 0."""
    if np.any(np.asarray(x) <= 0.0):
        raise MathDomainError("bessel_k requires x > 0")
    if np.any(np.asarray(order) < 0.0):
        raise MathDomainError("bessel_k requires order >= 0")
    return sp.kv(order, x)


def bessel_i(order, x):
    """Modified Bessel function I_order(x) for x > 0, order >= 0."""
    if np.any(np.asarray(x) <= 0.0):
        raise MathDomainError("bessel_i requires x > 0")
    if np.any(np.asarray(order) < 0.0):
        raise MathDomainError("bessel_i requires order >= 0")
    return sp.iv(order, x)


def sph_mult(n, ell):
    """Multiplicity d_{n,ell} of spherical harmonics of degree ell on S^{n-1}."""
    if n < 2 or ell < 0:
        raise MathDomainError("sph_mult requires n >= 2 and ell >= 0")
    if n == 2:
        return 1 if ell == 0 else 2
    return math.comb(ell + n - 1, n - 1) - math.comb(ell + n - 3, n - 1)


def dirichlet_interval_eig(length, k):
    """k-th Dirichlet eigenvalue (k pi / L)^2 of an interval of given length."""
    if length <= 0 or k < 1:
        raise MathDomainError("need length > 0 and k >= 1")
    return (k * math.pi / length) ** 2
