"""Closed-form spectra and identities for disks and balls.

These are the ground-truth oracles for the solver tests: exterior spectra,
mixed Steklov-Dirichlet/Neumann truncations of the exterior problem,
Helmholtz-regularized eigenvalues, the spectral action of the exterior
Dirichlet-to-Neumann map on spheres, and the single/double layer symbols
on the 2-sphere.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MathDomainError
from .specfun import bessel_k, sph_mult

__all__ = [
    "RadialSpectrum",
    "disk_exterior",
    "ball_exterior",
    "disk_trunc",
    "ball_trunc",
    "helmholtz_radial",
    "dtn_apply_sphere",
    "grad_energy_sphere",
    "interlacing_check",
    "sphere_layer_symbols",
]

DEFAULT_ELL_MAX = 40


@dataclass(frozen=True)
class RadialSpectrum:
    """Closed-form (mode, eigenvalue, multiplicity) table for a disk or ball."""

    n: int
    rho: float
    formulation: str
    entries: tuple  # of (ell, value, multiplicity)

    def flattened(self):
        """Eigenvalues repeated with multiplicity, sorted ascending."""
        vals = np.repeat(
            [v for _, v, _ in self.entries], [m for _, _, m in self.entries]
        )
        return np.sort(vals)

    def sigma(self, ell):
        for l, v, _ in self.entries:
            if l == ell:
                return v
        raise KeyError(ell)


def _spectrum(n, rho, formulation, values):
    entries = tuple((ell, float(v), sph_mult(n, ell)) for ell, v in enumerate(values))
    return RadialSpectrum(n, float(rho), formulation, entries)


def disk_exterior(rho, ell_max=DEFAULT_ELL_MAX):
    """Exterior Steklov spectrum of a disk: 0, then ell/rho twice each."""
    if rho <= 0:
        raise MathDomainError("radius must be positive")
    return _spectrum(2, rho, "exterior", [ell / rho for ell in range(ell_max + 1)])


def ball_exterior(n, rho, ell_max=DEFAULT_ELL_MAX):
    """Exterior Steklov spectrum of a ball in R^n, n >= 3: (n+ell-2)/rho."""
    if n < 3:
        raise MathDomainError("ball_exterior requires n >= 3 (use disk_exterior)")
    if rho <= 0:
        raise MathDomainError("radius must be positive")
    return _spectrum(n, rho, "exterior", [(n + ell - 2) / rho for ell in range(ell_max + 1)])


def ball_trunc(n, rho, R, ell_max=DEFAULT_ELL_MAX, bc="D"):
    """Mixed Steklov-Dirichlet/Neumann spectrum on the shell B_R minus B_rho.

    With q = (rho/R)^(n+2*ell-2):
        Dirichlet: (n+ell-2 + ell*q) / (rho*(1-q)), and for n=2, ell=0
                   the limit 1/(rho*log(R/rho));
        Neumann:   0 for ell=0, else ell*(n+ell-2)*(1-q) / (rho*(ell+(n+ell-2)*q)).
    Both follow from the separated radial eigenfunctions.
    """
    if R <= rho or rho <= 0:
        raise MathDomainError("need R > rho > 0")
    if n < 2:
        raise MathDomainError("dimension must be at least 2")
    if bc not in ("D", "N"):
        raise MathDomainError("bc must be 'D' or 'N'")
    vals = []
    for ell in range(ell_max + 1):
        q = (rho / R) ** (n + 2 * ell - 2)
        if bc == "D":
            if n == 2 and ell == 0:
                vals.append(1.0 / (rho * np.log(R / rho)))
            else:
                vals.append((n + ell - 2 + ell * q) / (rho * (1.0 - q)))
        else:
            if ell == 0:
                vals.append(0.0)
            else:
                vals.append(ell * (n + ell - 2) * (1.0 - q) / (rho * (ell + (n + ell - 2) * q)))
    return _spectrum(n, rho, f"trunc{bc}(R={R:g})", vals)


def disk_trunc(rho, R, ell_max=DEFAULT_ELL_MAX, bc="D"):
    """Planar specialization of ball_trunc."""
    return ball_trunc(2, rho, R, ell_max, bc)


def helmholtz_radial(n, rho, lam, ell_max=DEFAULT_ELL_MAX):
    """Helmholtz-regularized exterior eigenvalues for a ball.

    mu_ell = lam * K_{ell+n/2}(lam*rho) / K_{ell+n/2-1}(lam*rho) - ell/rho.
    The lam -> 0 limit (n >= 3: (n+ell-2)/rho) is a convergence check, not an
    evaluation point: lam <= 0 is a domain error.
    """
    if lam <= 0:
        raise MathDomainError("helmholtz parameter must be positive")
    if rho <= 0:
        raise MathDomainError("radius must be positive")
    if n < 2:
        raise MathDomainError("dimension must be at least 2")
    x = lam * rho
    vals = [
        lam * bessel_k(ell + n / 2.0, x) / bessel_k(ell + n / 2.0 - 1.0, x) - ell / rho
        for ell in range(ell_max + 1)
    ]
    return _spectrum(n, rho, f"helmholtz(lam={lam:g})", vals)


def dtn_apply_sphere(n, rho, coefficients):
    """Apply the exterior Dirichlet-to-Neumann map in the spherical basis.

    coefficients maps (ell, i) to the coefficient of the orthonormal basis
    function; each is multiplied by sigma_ell of the exterior ball problem.
    """
    out = {}
    for (ell, i), c in coefficients.items():
        if ell < 0 or not (1 <= i <= sph_mult(n, ell)):
            raise MathDomainError(f"invalid spherical mode ({ell}, {i})")
        sig = 0.0 if (n == 2 and ell == 0) else (n + ell - 2) / rho
        out[(ell, i)] = sig * c
    return out


def grad_energy_sphere(n, rho, coefficients):
    """Exterior Dirichlet energy sum sigma_ell |f_hat_{ell,i}|^2."""
    total = 0.0
    for (ell, i), c in coefficients.items():
        if ell < 0 or not (1 <= i <= sph_mult(n, ell)):
            raise MathDomainError(f"invalid spherical mode ({ell}, {i})")
        sig = 0.0 if (n == 2 and ell == 0) else (n + ell - 2) / rho
        total += sig * abs(c) ** 2
    return total


def interlacing_check(n, rho, k_max=30):
    """Interlacing of the Neumann-limit and Dirichlet-limit ball spectra.

    A^N has eigenvalues {0} union {(n+ell-2)/rho : ell >= 1} and A^D has
    {(n+ell-2)/rho : ell >= 0}, both with multiplicities d_{n,ell}; checks
    lambda_k(A^N) <= lambda_k(A^D) <= lambda_{k+1}(A^N) for k <= k_max.
    """
    if n < 3:
        raise MathDomainError("interlacing_check requires n >= 3")
    ell_max = 2
    while sum(sph_mult(n, l) for l in range(ell_max + 1)) < k_max + 2:
        ell_max += 1
    lam_N = [0.0]
    lam_D = [(n - 2) / rho] * sph_mult(n, 0)
    for ell in range(1, ell_max + 1):
        v = (n + ell - 2) / rho
        lam_N.extend([v] * sph_mult(n, ell))
        lam_D.extend([v] * sph_mult(n, ell))
    lam_N, lam_D = np.sort(lam_N), np.sort(lam_D)
    ok = True
    rows = []
    for k in range(k_max):
        good = lam_N[k] <= lam_D[k] + 1e-15 and lam_D[k] <= lam_N[k + 1] + 1e-15
        ok = ok and good
        rows.append((k + 1, lam_N[k], lam_D[k], lam_N[k + 1], good))
    return {"ok": ok, "rows": rows, "neumann": lam_N, "dirichlet": lam_D}


def sphere_layer_symbols(rho, ell_max=10, quad_nodes=200):
    """Single/double layer symbols on the 2-sphere by kernel quadrature.

    Funk-Hecke reduces both layer operators on a sphere of radius rho in R^3
    to the 1D integrals I_ell = int_{-1}^{1} P_ell(u) / sqrt(2-2u) du, giving
    v_ell = rho I_ell / 2 and k_ell = I_ell / 4. The substitution u = 1 - w^2
    removes the endpoint singularity. Returns per-mode records checking the
    direct boundary integral identity 1/2 + k_ell = tau_ell v_ell with
    tau_ell = (ell+1)/rho.
    """
    if rho <= 0:
        raise MathDomainError("radius must be positive")
    x, w = np.polynomial.legendre.leggauss(quad_nodes)
    # map [-1, 1] to [0, sqrt(2)] for the substituted integrand
    s = np.sqrt(2.0) * (x + 1.0) / 2.0
    ws = np.sqrt(2.0) / 2.0 * w
    u = 1.0 - s**2
    records = []
    for ell in range(ell_max + 1):
        pl = np.polynomial.legendre.Legendre.basis(ell)(u)
        i_ell = np.sqrt(2.0) * np.sum(ws * pl)
        v_ell = rho * i_ell / 2.0
        k_ell = i_ell / 4.0
        tau_ell = (ell + 1) / rho
        resid = abs(0.5 + k_ell - tau_ell * v_ell)
        records.append({"ell": ell, "v": v_ell, "k": k_ell, "tau": tau_ell, "resid": resid})
    return records
