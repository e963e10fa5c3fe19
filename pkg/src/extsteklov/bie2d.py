"""Nystrom solver for the exterior Steklov problem on smooth planar curves.

Discretizes the single and double layer operators with the classical
periodic quadrature that splits off the log(4 sin^2((t-s)/2)) singularity,
computes the logarithmic capacity from the equilibrium density, and solves

    exterior:  (I/2 + K - 1 (K0 row)) u = tau V0 u
    interior:  (I/2 - K) u = tau V u
    conformal: (I/2 - K*) u = xi V* diag(q) u   on the inverted boundary

as dense generalized eigenproblems. All kernels use the normal pointing out
of the bounded domain Omega; with that convention K applied to constants is
1/2 on the boundary and the double layer evaluated at an interior point
integrates to 1 (Gauss), which is asserted at assembly time.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from . import geometry
from .errors import (
    EvaluationError,
    PartialResultError,
    PreconditionError,
    SolverError,
)

__all__ = [
    "LayerSystem",
    "Spectrum",
    "assemble",
    "capacity",
    "exterior_spectrum",
    "interior_spectrum",
    "conformal_exterior_spectrum",
    "evaluate_field",
    "solve_generalized",
]

TARGET_DIAMETER = 0.8
REALITY_TOL = 1e-8
RESIDUAL_TOL = 1e-7
GROUP_TOL = 1e-6


# ---------------------------------------------------------------------------
# Quadrature and assembly
# ---------------------------------------------------------------------------
def kress_log_weights(N):
    """First row R_d of the circulant quadrature for log(4 sin^2((t-s)/2)).

    int_0^{2pi} log(4 sin^2((t_i - s)/2)) g(s) ds ~= sum_j R_{i-j} g(s_j),
    exact for trigonometric polynomials of degree < N/2.
    """
    n = N // 2
    d = 2.0 * np.pi * np.arange(N) / N
    m = np.arange(1, n)
    R = -(2.0 * np.pi / n) * np.sum(np.cos(np.outer(d, m)) / m, axis=1)
    R -= (np.pi / n**2) * np.cos(n * d)
    return R


def _single_layer_block(comp_i, comp_j, same, R=None):
    """V block mapping density values on comp_j to potential values on comp_i."""
    zi, zj = comp_i.z, comp_j.z
    diff = np.abs(zi[:, None] - zj[None, :])
    h = 2.0 * np.pi / comp_j.N
    if not same:
        return -(1.0 / (2.0 * np.pi)) * np.log(diff) * comp_j.weights[None, :]
    N = comp_j.N
    idx = (np.arange(N)[:, None] - np.arange(N)[None, :]) % N
    sin2 = 2.0 * np.abs(np.sin((comp_i.t[:, None] - comp_j.t[None, :]) / 2.0))
    smooth = np.empty((N, N))
    off = ~np.eye(N, dtype=bool)
    smooth[off] = np.log(diff[off] / sin2[off])
    smooth[np.eye(N, dtype=bool)] = np.log(comp_i.speed)
    kern = 0.5 * R[idx] + h * smooth
    return -(1.0 / (2.0 * np.pi)) * kern * comp_j.speed[None, :]


def _double_layer_block(comp_i, comp_j, same, adjoint=False):
    """K (or K') block with the continuous curvature diagonal limit."""
    zi, zj = comp_i.z, comp_j.z
    d = zj[None, :] - zi[:, None]
    r2 = np.abs(d) ** 2
    if same:
        np.fill_diagonal(r2, 1.0)
    if adjoint:
        kern = np.real(np.conj(comp_i.normal)[:, None] * (-d)) / (2.0 * np.pi * r2)
    else:
        kern = np.real(np.conj(comp_j.normal)[None, :] * d) / (2.0 * np.pi * r2)
    if same:
        np.fill_diagonal(kern, comp_i.curvature / (4.0 * np.pi))
    return kern * comp_j.weights[None, :]


def double_layer_at_points(curve, pts):
    """Double layer kernel rows at arbitrary points (density-value form)."""
    pts = np.asarray(pts, dtype=complex)
    d = curve.points[None, :] - pts[:, None]
    r2 = np.abs(d) ** 2
    kern = np.real(np.conj(curve.normals)[None, :] * d) / (2.0 * np.pi * r2)
    return kern * curve.weights[None, :]


def single_layer_at_points(curve, pts):
    """Single layer kernel rows at arbitrary points (density-value form)."""
    pts = np.asarray(pts, dtype=complex)
    d = np.abs(curve.points[None, :] - pts[:, None])
    return -(1.0 / (2.0 * np.pi)) * np.log(d) * curve.weights[None, :]


@dataclass
class LayerSystem:
    """Dense Nystrom matrices for one sampled boundary."""

    curve: object
    weights: np.ndarray
    V: np.ndarray
    K: np.ndarray
    Kp: np.ndarray
    V0: np.ndarray = None
    k0row: np.ndarray = None
    cap_log: float = None


def _assemble_vk(curve):
    comps = curve.components
    Rws = {c.N: kress_log_weights(c.N) for c in comps}
    nblocks = len(comps)
    Vb = [[None] * nblocks for _ in range(nblocks)]
    Kb = [[None] * nblocks for _ in range(nblocks)]
    Kpb = [[None] * nblocks for _ in range(nblocks)]
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            same = i == j
            Vb[i][j] = _single_layer_block(ci, cj, same, Rws.get(cj.N))
            Kb[i][j] = _double_layer_block(ci, cj, same)
            Kpb[i][j] = _double_layer_block(ci, cj, same, adjoint=True)
    return np.block(Vb), np.block(Kb), np.block(Kpb)


def assemble(curve, with_v0=True):
    """Assemble V, K, K' and (optionally) V0, the K0 row, and the capacity.

    V0 requires diameter < 1 (the caller rescales) and the origin strictly
    inside the domain. The identity K 1 = 1/2 is asserted at assembly time to
    pin the orientation convention.
    """
    V, K, Kp = _assemble_vk(curve)
    w = curve.weights
    rowsum = K @ np.ones(curve.n_nodes)
    if np.max(np.abs(rowsum - 0.5)) > 1e-6:
        raise SolverError(
            "double layer row-sum identity K 1 = 1/2 failed; "
            "boundary orientation or resolution is wrong"
        )
    sys = LayerSystem(curve=curve, weights=w, V=V, K=K, Kp=Kp)
    if with_v0:
        diam = geometry.quantities(curve).diameter
        if diam >= 1.0:
            raise PreconditionError(
                f"diameter {diam:.3f} >= 1; rescale the domain before requesting V0"
            )
        if not curve.contains(0.0):
            raise PreconditionError("origin must lie inside the domain for V0/K0")
        cap = _capacity_from_V(V, w)
        absz = np.abs(curve.points)
        sys.V0 = V + np.outer(np.ones(curve.n_nodes), (np.log(absz) - np.log(cap)) * w / (2.0 * np.pi))
        sys.k0row = np.real(np.conj(curve.normals) * curve.points) / (
            2.0 * np.pi * absz**2
        ) * w
        sys.cap_log = cap
    return sys


def _capacity_from_V(V, w):
    try:
        eta = sla.solve(V, np.ones(len(w)))
    except sla.LinAlgError as exc:
        raise SolverError("single layer operator is singular (capacity ~ 1?)") from exc
    total = float(eta @ w)
    if total <= 0:
        raise SolverError("equilibrium density has nonpositive mass")
    return float(np.exp(-2.0 * np.pi / total))


def capacity(curve):
    """Logarithmic capacity via the equilibrium density, Cap = exp(-2 pi / <eta, 1>).

    The curve is rescaled internally to diameter 0.8 and the homogeneity
    Cap(alpha Omega) = alpha Cap(Omega) is applied on return.
    """
    diam = geometry.quantities(curve).diameter
    alpha = TARGET_DIAMETER / diam
    cs = geometry.rescale(curve, alpha)
    V, _, _ = _assemble_vk(cs)
    return _capacity_from_V(V, cs.weights) / alpha


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------
@dataclass
class Spectrum:
    """Sorted eigenvalues with boundary traces, residuals, and grouping."""

    values: np.ndarray
    vectors: np.ndarray  # columns are boundary traces, unit boundary-L2 norm
    residuals: np.ndarray
    groups: np.ndarray  # group index per eigenvalue
    formulation: str
    curve: object  # original (unscaled, untranslated) boundary
    meta: dict = field(default_factory=dict)

    def group_lists(self):
        out = []
        for g in range(int(self.groups.max()) + 1 if len(self.groups) else 0):
            out.append(np.nonzero(self.groups == g)[0].tolist())
        return out


def solve_generalized(A, B):
    """Eigenpairs of B^{-1} A with residuals ||A u - lam B u|| / ||u||."""
    try:
        M = sla.solve(B, A)
    except sla.LinAlgError as exc:
        raise SolverError("generalized eigensolve: B is singular") from exc
    lam, U = sla.eig(M)
    resid = np.linalg.norm(A @ U - B @ (U * lam[None, :]), axis=0) / np.linalg.norm(U, axis=0)
    return lam, U, resid


def _filter_sort(lam, U, resid):
    keep = (np.abs(lam.imag) <= REALITY_TOL * (1.0 + np.abs(lam.real))) & (
        resid <= RESIDUAL_TOL
    )
    lam_r = lam[keep].real
    order = np.argsort(lam_r, kind="stable")
    return lam_r[order], U[:, keep][:, order], resid[keep][order]


def _group(values):
    groups = np.zeros(len(values), dtype=int)
    for i in range(1, len(values)):
        close = abs(values[i] - values[i - 1]) <= GROUP_TOL * max(1.0, abs(values[i]))
        groups[i] = groups[i - 1] + (0 if close else 1)
    return groups


def _orthonormalize(vectors, groups, w):
    """Real boundary-L2 orthonormal traces within each multiplicity group.

    Eigenvectors of a real nonsymmetric pencil arrive as complex multiples of
    real vectors (and conjugate pairs inside degenerate groups), so the real
    basis is extracted from the real+imaginary span of each group via the
    weighted Gram matrix.
    """
    n = vectors.shape[0]
    out = np.empty(vectors.shape, dtype=float)
    for g in range(groups.max() + 1 if len(groups) else 0):
        idx = np.nonzero(groups == g)[0]
        M = np.hstack([vectors[:, idx].real, vectors[:, idx].imag])
        G = M.T @ (M * w[:, None])
        evals, evecs = sla.eigh(G)
        order = np.argsort(evals)[::-1][: len(idx)]
        if evals[order[-1]] <= 1e-12 * max(evals[order[0]], 1e-300):
            raise SolverError("degenerate eigenvector during orthonormalization")
        for col, j in zip(order, idx):
            out[:, j] = (M @ evecs[:, col]) / np.sqrt(evals[col])
    return out


def _make_spectrum(lam, U, resid, k_requested, w_orig, formulation, curve, meta):
    groups = _group(lam)
    U = _orthonormalize(U, groups, w_orig)
    spectrum = Spectrum(
        values=lam[:k_requested],
        vectors=U[:, :k_requested],
        residuals=resid[:k_requested],
        groups=groups[:k_requested],
        formulation=formulation,
        curve=curve,
        meta=meta,
    )
    if len(lam) < k_requested:
        raise PartialResultError(
            f"only {len(lam)} of {k_requested} requested eigenvalues passed the "
            "reality/residual filters",
            spectrum,
        )
    return spectrum


def _interior_point(curve):
    comp = curve.components[0]
    for c in (np.mean(comp.z),
              complex(0.5 * (comp.z.real.min() + comp.z.real.max()),
                      0.5 * (comp.z.imag.min() + comp.z.imag.max()))):
        if comp.winding(c) != 0:
            return complex(c)
    raise PreconditionError("could not locate a point inside the first component")


def exterior_spectrum(spec, N, k_requested):
    """Exterior Steklov eigenvalues via the capacity-corrected layer equation.

    Translates the domain so the origin lies inside its first component,
    rescales to diameter 0.8, solves (I/2 + K - 1 K0row) u = tau V0 u, and
    undoes the dilation on the eigenvalues.
    """
    curve = geometry.build_curve(spec, N)
    shift = _interior_point(curve)
    moved = geometry.translate(curve, -shift)
    diam = geometry.quantities(moved).diameter
    alpha = TARGET_DIAMETER / diam
    cs = geometry.rescale(moved, alpha)
    sys = assemble(cs, with_v0=True)
    n = cs.n_nodes
    A = 0.5 * np.eye(n) + sys.K - np.outer(np.ones(n), sys.k0row)
    lam, U, resid = solve_generalized(A, sys.V0)
    lam, U, resid = _filter_sort(lam, U, resid)
    lam = alpha * lam
    meta = {
        "shift": shift,
        "alpha": alpha,
        "cap_log": sys.cap_log / alpha,
        "N": N,
        "spec": spec,
    }
    return _make_spectrum(lam, U, resid, k_requested, curve.weights,
                          "exterior-bie", curve, meta)


def interior_spectrum(spec, N, k_requested):
    """Interior Steklov eigenvalues via (I/2 - K) u = tau V u."""
    curve = geometry.build_curve(spec, N)
    diam = geometry.quantities(curve).diameter
    alpha = TARGET_DIAMETER / diam
    cs = geometry.rescale(curve, alpha)
    sys = assemble(cs, with_v0=False)
    n = cs.n_nodes
    A = 0.5 * np.eye(n) - sys.K
    lam, U, resid = solve_generalized(A, sys.V)
    lam, U, resid = _filter_sort(lam, U, resid)
    lam = alpha * lam
    meta = {"alpha": alpha, "N": N, "spec": spec}
    return _make_spectrum(lam, U, resid, k_requested, curve.weights,
                          "interior-bie", curve, meta)


def conformal_exterior_spectrum(spec, center, N, k_requested):
    """Exterior eigenvalues via the weighted interior problem on the inversion.

    Builds the image of the boundary under z -> 1/(z - center) together with
    the Jacobian weight q = |z - center|^2 per node, and solves
    (I/2 - K*) u = xi V* diag(q) u on the image rescaled to diameter 0.8.
    The returned xi equal the exterior Steklov eigenvalues of the original
    domain; traces are reported in original node order.
    """
    curve = geometry.build_curve(spec, N)
    star, q = geometry.invert_boundary(curve, center)
    diam = geometry.quantities(star).diameter
    alpha = TARGET_DIAMETER / diam
    ss = geometry.rescale(star, alpha)
    sys = assemble(ss, with_v0=False)
    n = ss.n_nodes
    A = 0.5 * np.eye(n) - sys.K
    B = sys.V * q[None, :]
    lam, U, resid = solve_generalized(A, B)
    lam, U, resid = _filter_sort(lam, U, resid)
    lam = alpha * lam
    back = geometry.source_order(star)  # involution: image node i <-> source node
    U = U[back, :]
    meta = {"center": complex(center), "alpha": alpha, "N": N, "spec": spec}
    return _make_spectrum(lam, U, resid, k_requested, curve.weights,
                          "conformal-exterior", curve, meta)


def evaluate_field(spectrum, index, points):
    """Evaluate the exterior eigenfunction at points via the representation

        U(x) = u_inf + tau (SL u)(x) - (DL u)(x),
        u_inf = K0(u) + tau integral of u (log|y| - log Cap)/(2 pi) dS,

    on the domain translated so the origin is interior. Points must lie in
    the exterior, at least three node spacings away from the boundary.
    """
    curve = spectrum.curve
    shift = spectrum.meta.get("shift", 0.0)
    moved = geometry.translate(curve, -shift) if shift != 0.0 else curve
    pts = np.asarray(points, dtype=complex) - shift
    hmax = max(np.max(c.weights) for c in moved.components)
    for p in pts:
        if moved.contains(p):
            raise EvaluationError(f"point {p + shift} lies inside the domain")
        if np.min(np.abs(moved.points - p)) < 3.0 * hmax:
            raise EvaluationError(f"point {p + shift} is too close to the boundary")
    tau = spectrum.values[index]
    u = spectrum.vectors[:, index]
    w = moved.weights
    cap = spectrum.meta.get("cap_log")
    if cap is None:
        cap = capacity(moved)
    absz = np.abs(moved.points)
    k0row = np.real(np.conj(moved.normals) * moved.points) / (2.0 * np.pi * absz**2) * w
    v0row = (np.log(absz) - np.log(cap)) * w / (2.0 * np.pi)
    u_inf = k0row @ u + tau * (v0row @ u)
    sl = single_layer_at_points(moved, pts) @ u
    dl = double_layer_at_points(moved, pts) @ u
    return u_inf + tau * sl - dl
