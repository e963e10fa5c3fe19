"""Curvature-based lower bounds and isoperimetric-type margins.

For a convex body in R^n (n >= 3) the first exterior Steklov eigenvalue is
bounded below by (n-2) times the minimum over the boundary of the
logarithmic mean of the principal curvatures. The independent certificate
for that closed form is K_quadrature, which evaluates

    K(kappa) = 1 / int_0^inf prod_j (1 + kappa_j t)^{-1} dt

by adaptive quadrature plus an analytic tail; the identity
K = (n-2) * log_mean(kappa) is what the tests verify.

Also provided: the geometric-mean weakening, the star-shaped bound
(n-2) min <x, nu_out>/|x|^2, spheroid curvature fields and bound-curve
families, the planar Weinstock / Hersch-Payne-Schiffer margins, and the
thin-passage upper bound for the exterior problem.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import MathDomainError, PreconditionError
from .specfun import dirichlet_interval_eig, geometric_mean, log_mean

__all__ = [
    "CurvatureField",
    "SpheroidFamily",
    "BoundReport",
    "escobar_bound",
    "geometric_mean_bound",
    "xiong_bound",
    "xiong_spheroid",
    "K_quadrature",
    "spheroid_curvatures",
    "spheroid_surface",
    "bound_curves",
    "weinstock_margin",
    "passage_bound",
]

PROFILE_GRID = 2048


@dataclass(frozen=True)
class CurvatureField:
    """Principal curvature samples kappa_1..kappa_{n-1} along a boundary."""

    n: int
    labels: np.ndarray  # profile parameter per sample
    kappas: np.ndarray  # shape (samples, n-1)

    def __post_init__(self):
        if self.n < 3:
            raise MathDomainError("curvature bounds require n >= 3")
        if self.kappas.ndim != 2 or self.kappas.shape[1] != self.n - 1:
            raise MathDomainError("kappas must have n-1 columns")


@dataclass(frozen=True)
class SpheroidFamily:
    """Aspect-ratio family of spheroids: prolate/oblate in R^3 or higher(k, n)."""

    kind: str
    a_grid: np.ndarray
    k: int = None
    n: int = 3

    def __post_init__(self):
        if self.kind not in ("prolate", "oblate", "higher"):
            raise MathDomainError(f"unknown spheroid kind {self.kind!r}")
        a = np.asarray(self.a_grid, dtype=float)
        if a.ndim != 1 or len(a) == 0 or np.any(a <= 0) or np.any(a >= 1):
            raise MathDomainError("aspect grid must lie strictly in (0, 1)")
        if np.any(np.diff(a) <= 0):
            raise MathDomainError("aspect grid must be strictly increasing")
        if self.kind == "higher":
            if self.k is None or not (2 <= self.k <= self.n - 1) or self.n < 3:
                raise MathDomainError("higher(k, n) needs 2 <= k <= n-1, n >= 3")


@dataclass(frozen=True)
class BoundReport:
    """Per-aspect bound values for a spheroid family (CSV-ready columns)."""

    family: SpheroidFamily
    a: np.ndarray
    beta: np.ndarray
    beta_gm: np.ndarray
    beta_xiong: np.ndarray
    beta_norm: np.ndarray
    beta_xiong_norm: np.ndarray


def _check_convex(field):
    if np.any(field.kappas < 0):
        raise MathDomainError(
            "negative principal curvature: bound is stated for convex domains"
        )


def escobar_bound(field):
    """(n-2) * min over samples of log_mean(kappa_1..kappa_{n-1})."""
    _check_convex(field)
    return (field.n - 2) * min(log_mean(row) for row in field.kappas)


def geometric_mean_bound(field):
    """(n-2) * min over samples of geometric_mean(kappa_1..kappa_{n-1})."""
    _check_convex(field)
    return (field.n - 2) * min(geometric_mean(row) for row in field.kappas)


def xiong_bound(points, normals, n):
    """Star-shaped lower bound (n-2) * min <x, nu_out> / |x|^2.

    points and normals are (samples, n) arrays with nu_out pointing out of
    the bounded domain (into the exterior); the origin must be interior.
    Returns (value, star_shaped); a nonpositive value means the sampling is
    not star-shaped about the origin, and is returned as-is with the flag
    set to False and a warning.
    """
    pts = np.asarray(points, dtype=float)
    nrm = np.asarray(normals, dtype=float)
    if n < 3:
        raise MathDomainError("xiong_bound requires n >= 3")
    if pts.shape != nrm.shape or pts.ndim != 2 or pts.shape[1] != n:
        raise MathDomainError("points and normals must both be (samples, n)")
    r2 = np.sum(pts**2, axis=1)
    if np.any(r2 == 0):
        raise MathDomainError("boundary sample at the origin")
    value = (n - 2) * float(np.min(np.sum(pts * nrm, axis=1) / r2))
    star = value > 0
    if not star:
        warnings.warn("sampling is not star-shaped about the origin; "
                      "the bound is trivial", stacklevel=2)
    return value, star


def xiong_spheroid(a):
    """Closed-form star-shaped bound for prolate and oblate spheroids (n=3).

    Equal for both families: (3 sqrt(3)/2) a / (1+a^2)^{3/2} for
    a <= 1/sqrt(2), and 1 above.
    """
    if not 0 < a < 1:
        raise MathDomainError("aspect ratio must lie in (0, 1)")
    if a <= 1.0 / math.sqrt(2.0):
        return 1.5 * math.sqrt(3.0) * a / (1.0 + a * a) ** 1.5
    return 1.0


def K_quadrature(kappas, n):
    """1 / int_0^inf prod_j (1+kappa_j t)^{-1} dt for the n-1 curvatures.

    Adaptive quadrature on [0, T] with T chosen so 1 + kappa_j T >= 10 for
    every j, plus the analytic tail: on [T, inf) the integrand expands as
    (prod kappa_j)^{-1} t^{1-n} sum_m (-1)^m h_m(1/kappa) t^{-m} with h_m
    the complete homogeneous symmetric polynomials, summed to convergence.
    """
    kap = np.asarray(kappas, dtype=float)
    if n < 3:
        raise MathDomainError("K_quadrature requires n >= 3")
    if kap.ndim != 1 or len(kap) < 2:
        raise MathDomainError("need at least two curvatures")
    if len(kap) != n - 1:
        raise MathDomainError(f"expected n-1 = {n-1} curvatures, got {len(kap)}")
    if np.any(kap <= 0):
        raise MathDomainError("curvatures must be positive")
    T = 9.0 / np.min(kap)

    def integrand(t):
        return 1.0 / np.prod(1.0 + kap * t)

    head, _ = integrate.quad(integrand, 0.0, T, epsabs=1e-14, epsrel=1e-13, limit=200)
    # tail: sum_m (-1)^m h_m(1/kappa) T^{-(n-2+m)} / (n-2+m), ratios <= ~1/9
    inv = 1.0 / kap
    max_m = 200
    h = np.zeros(max_m + 1)  # complete homogeneous symmetric polynomials of inv
    h[0] = 1.0
    for x in inv:
        for r in range(1, max_m + 1):
            h[r] += x * h[r - 1]
    tail = 0.0
    for m in range(max_m + 1):
        term = ((-1.0) ** m) * h[m] * T ** (-(n - 2 + m)) / (n - 2 + m)
        tail += term
        if m > 2 and abs(term) < 1e-18 * abs(head):
            break
    tail /= np.prod(kap)
    return 1.0 / (head + tail)


def _profile(a, kind, k=None, n=3, grid=PROFILE_GRID):
    """Half-profile parameter grid and D(x) values for a spheroid."""
    s = np.linspace(0.0, 1.0, grid)
    if kind == "oblate":
        x1 = a * s  # s parametrizes x_1 in [0, a]
        D = a**4 + (1.0 - a * a) * x1**2
    else:
        # s = x_3 (prolate) or |x^(2)| (higher), in [0, 1]; the algebraically
        # equal 1 - (1-a^2) s^2 cancels at s = 1 for small a, this form does not
        D = (1.0 - s**2) + (a * s) ** 2
    return s, D


def spheroid_curvatures(a, kind, k=None, n=3, grid=PROFILE_GRID):
    """Principal curvature field of a spheroid on a half-profile grid.

    prolate (n=3): kappa = (a / D^{3/2}, 1/(a sqrt(D))), D = 1-(1-a^2)x_3^2;
    oblate (n=3):  kappa = (a^4 / D^{3/2}, a^2 / sqrt(D)), D = a^4+(1-a^2)x_1^2;
    higher(k, n):  k-1 copies of 1/(a sqrt(D)), n-k-1 copies of a/sqrt(D),
                   and a/D^{3/2}, with D = 1-(1-a^2)|x^(2)|^2.

    The extremal points (equator/pole, |x^(2)| = 0) are grid endpoints, so
    the minima of the means are evaluated exactly.
    """
    if not 0 < a < 1:
        raise MathDomainError("aspect ratio must lie in (0, 1)")
    s, D = _profile(a, kind, k, n, grid)
    if kind == "prolate":
        kap = np.column_stack([a / D**1.5, 1.0 / (a * np.sqrt(D))])
        dim = 3
    elif kind == "oblate":
        kap = np.column_stack([a**4 / D**1.5, a**2 / np.sqrt(D)])
        dim = 3
    elif kind == "higher":
        if k is None or not (2 <= k <= n - 1):
            raise MathDomainError("higher spheroid needs 2 <= k <= n-1")
        cols = (
            [1.0 / (a * np.sqrt(D))] * (k - 1)
            + [a / np.sqrt(D)] * (n - k - 1)
            + [a / D**1.5]
        )
        kap = np.column_stack(cols)
        dim = n
    else:
        raise MathDomainError(f"unknown spheroid kind {kind!r}")
    return CurvatureField(n=dim, labels=s, kappas=kap)


def spheroid_surface(a, kind, grid=PROFILE_GRID):
    """Point and outward-normal samples of a 3D spheroid profile.

    prolate: (x_1^2+x_2^2)/a^2 + x_3^2 = 1; oblate: x_1^2/a^2 + x_2^2+x_3^2 = 1.
    Returns (points, normals) of shape (grid, 3), sampled in the x_1-x_3
    plane (rotational symmetry makes this sufficient for xiong_bound).
    """
    if not 0 < a < 1:
        raise MathDomainError("aspect ratio must lie in (0, 1)")
    phi = np.linspace(0.0, np.pi, grid)
    if kind == "prolate":
        pts = np.column_stack([a * np.sin(phi), np.zeros(grid), np.cos(phi)])
        grad = np.column_stack([pts[:, 0] / a**2, np.zeros(grid), pts[:, 2]])
    elif kind == "oblate":
        pts = np.column_stack([a * np.cos(phi), np.sin(phi), np.zeros(grid)])
        grad = np.column_stack([pts[:, 0] / a**2, pts[:, 1], np.zeros(grid)])
    else:
        raise MathDomainError("spheroid_surface supports prolate and oblate")
    nrm = grad / np.linalg.norm(grad, axis=1, keepdims=True)
    return pts, nrm


def _volume_exponent(family):
    if family.kind == "prolate":
        return 2.0 / 3.0
    if family.kind == "oblate":
        return 1.0 / 3.0
    return family.k / family.n


def bound_curves(family):
    """Bound values along an aspect-ratio family of spheroids.

    beta and beta_gm come from the curvature field (the extremal points lie
    on the grid, so the minima are closed-form exact); beta_xiong is the
    piecewise closed form for n=3 families and the sampled star-shaped
    bound for higher ones. Normalized columns rescale to unit volume:
    beta_norm = a^p beta with p = 2/3 (prolate), 1/3 (oblate), k/n (higher).
    """
    a_grid = np.asarray(family.a_grid, dtype=float)
    p = _volume_exponent(family)
    beta = np.empty(len(a_grid))
    beta_gm = np.empty(len(a_grid))
    beta_x = np.empty(len(a_grid))
    for i, a in enumerate(a_grid):
        field = spheroid_curvatures(a, family.kind, family.k, family.n)
        beta[i] = escobar_bound(field)
        beta_gm[i] = geometric_mean_bound(field)
        if family.kind in ("prolate", "oblate"):
            beta_x[i] = xiong_spheroid(a)
        else:
            pts, nrm = _higher_surface(a, family.k, family.n)
            beta_x[i], _ = xiong_bound(pts, nrm, family.n)
    return BoundReport(
        family=family,
        a=a_grid,
        beta=beta,
        beta_gm=beta_gm,
        beta_xiong=beta_x,
        beta_norm=a_grid**p * beta,
        beta_xiong_norm=a_grid**p * beta_x,
    )


def _higher_surface(a, k, n, grid=PROFILE_GRID):
    """Profile samples of {|x^(1)|^2/a^2 + |x^(2)|^2 = 1} in the (e_1, e_n) plane."""
    phi = np.linspace(0.0, np.pi / 2.0, grid)
    pts = np.zeros((grid, n))
    grad = np.zeros((grid, n))
    pts[:, 0] = a * np.cos(phi)
    pts[:, -1] = np.sin(phi)
    grad[:, 0] = pts[:, 0] / a**2
    grad[:, -1] = pts[:, -1]
    nrm = grad / np.linalg.norm(grad, axis=1, keepdims=True)
    return pts, nrm


def weinstock_margin(spectrum, quantities):
    """Planar isoperimetric margins for an interior Steklov spectrum.

    Returns 2 pi - sigma_2 |dOmega|, the Hersch-Payne-Schiffer margins
    2 pi k - sigma_{k+1} |dOmega| for k <= 5, and the area form
    sqrt(pi) - sigma_2 |Omega|^{1/2}. All are nonnegative for smooth simply
    connected domains, zero exactly for disks (perimeter forms).
    """
    if len(spectrum.curve.components) != 1:
        raise PreconditionError("margins require a simply connected domain")
    L = quantities.perimeter
    A = quantities.area
    vals = spectrum.values
    if len(vals) < 6:
        raise PreconditionError("need at least six eigenvalues for the margins")
    hps = [2.0 * np.pi * k - vals[k] * L for k in range(1, 6)]
    return {
        "weinstock": 2.0 * np.pi - vals[1] * L,
        "hps": hps,
        "area_form": math.sqrt(math.pi) - vals[1] * math.sqrt(A),
    }


def passage_bound(length, eps, k):
    """Thin-passage channel eigenvalue and its upper bound.

    With Lambda_k the k-th Dirichlet eigenvalue of the interval, returns
    (sqrt(Lambda_k) tanh(eps sqrt(Lambda_k)), Lambda_k eps); the channel
    value is strictly below the bound since tanh(x) < x for x > 0.
    """
    if eps <= 0 or k < 1:
        raise MathDomainError("need eps > 0 and k >= 1")
    lam = dirichlet_interval_eig(length, k)
    root = math.sqrt(lam)
    channel = root * math.tanh(eps * root)
    bound = lam * eps
    assert channel < bound
    return channel, bound
