"""Command-line front-end: spectra, sweeps, bounds, and fits as CSV/JSON.

Subcommands: spectrum, converge, bounds, weyl, compare, capacity, oracle.
Common flags: --domain --nodes --k --out --format --jobs. Options may also
be supplied in a JSON config file via --config; explicit flags win. Data
goes only to --out (or standard output); diagnostics go to standard error.
Numbers are formatted at 12 significant digits so identical configs give
byte-identical files. Exit codes: 0 success, 2 partial spectrum (some
eigenvalues filtered), 1 error. --plot renders a PNG next to the output.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import asymptotics, bie2d, bounds, geometry, oracle_radial
from .errors import (
    InsufficientDataError,
    PartialResultError,
    SteklovError,
    UnsupportedCombinationError,
)

__all__ = ["main", "format_number", "write_table", "read_table"]


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------
def format_number(x):
    """Fixed 12-significant-digit rendering for deterministic files."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.12g" % float(x)


def write_table(out, header, rows, fmt="csv"):
    """Write rows to a path or stdout as CSV or JSON."""
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(format_number(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        records = [
            {h: (int(v) if isinstance(v, (int, np.integer)) else float(format_number(v)))
             for h, v in zip(header, row)}
            for row in rows
        ]
        text = json.dumps(records, indent=1) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as f:
            f.write(text)


def read_table(path):
    """Parse a CSV written by write_table back into (header, rows)."""
    with open(path) as f:
        lines = [ln for ln in f.read().splitlines() if ln]
    header = lines[0].split(",")
    rows = [[_parse_cell(c) for c in ln.split(",")] for ln in lines[1:]]
    return header, rows


def _parse_cell(cell):
    try:
        return int(cell)
    except ValueError:
        return float(cell)


def _diag(msg):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# Domain parsing
# ---------------------------------------------------------------------------
def _parse_center(text):
    if text is None:
        return (0.0, 0.0)
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2:
        raise SteklovError("--center expects 'x,y'")
    return tuple(parts)


def build_domain(cfg):
    """DomainSpec from config values (domain name plus shape flags)."""
    name = cfg.get("domain")
    if name is None:
        raise SteklovError("--domain is required")
    center = _parse_center(cfg.get("center"))
    if name in ("disk", "circle"):
        return geometry.circle(float(cfg.get("radius", 1.0)), center=center)
    if name == "ellipse":
        return geometry.ellipse(float(cfg.get("a", 1.5)), float(cfg.get("b", 0.7)),
                                center=center)
    if name == "kite":
        return geometry.kite()
    if name in ("three-disks", "three_disks"):
        return geometry.three_disks()
    if name == "fourier":
        coeffs = cfg.get("coeffs")
        if coeffs is None:
            raise SteklovError("fourier domain needs --coeffs JSON "
                               '(object with "xc", "xs", "yc", "ys" arrays)')
        if isinstance(coeffs, str):
            coeffs = json.loads(coeffs)
        return geometry.fourier(coeffs["xc"], coeffs["xs"], coeffs["yc"], coeffs["ys"])
    raise SteklovError(f"unknown domain {name!r}")


def _parse_grid(text):
    """Grid flag: comma list '2,4,8' or range 'lo:hi:count'."""
    if ":" in text:
        lo, hi, count = text.split(":")
        return np.linspace(float(lo), float(hi), int(count))
    return np.array([float(p) for p in text.split(",")])


# ---------------------------------------------------------------------------
# Plot rendering (optional; data artifacts never depend on it)
# ---------------------------------------------------------------------------
def _plot_path(out):
    if out is None:
        raise SteklovError("--plot requires --out to name the figure")
    return str(out) + ".png"


def _render_plot(out, draw):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    draw(ax)
    fig.tight_layout()
    path = _plot_path(out)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    _diag(f"figure written to {path}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------
def _spectrum_rows(values, residuals, groups):
    return [(i, values[i], residuals[i], int(groups[i])) for i in range(len(values))]


def _oracle_spectrum(cfg, k):
    dim = int(cfg.get("dim", 2))
    rho = float(cfg.get("radius", 1.0))
    ell_max = max(k, int(cfg.get("ell_max", 40)))
    if dim == 2:
        rad = oracle_radial.disk_exterior(rho, ell_max)
    else:
        rad = oracle_radial.ball_exterior(dim, rho, ell_max)
    vals = rad.flattened()[:k]
    groups = np.zeros(len(vals), dtype=int)
    for i in range(1, len(vals)):
        groups[i] = groups[i - 1] + (0 if vals[i] - vals[i - 1] <= 1e-12 else 1)
    return vals, np.zeros(len(vals)), groups


def cmd_spectrum(cfg):
    method = cfg.get("method", "bie-exterior")
    k = int(cfg.get("k", 10))
    N = int(cfg.get("nodes", 256))
    exit_code = 0
    spectrum = None
    if method == "oracle":
        values, residuals, groups = _oracle_spectrum(cfg, k)
    else:
        spec = build_domain(cfg)
        try:
            if method == "bie-exterior":
                spectrum = bie2d.exterior_spectrum(spec, N, k)
            elif method == "bie-interior":
                spectrum = bie2d.interior_spectrum(spec, N, k)
            elif method == "conformal":
                center = complex(*_parse_center(cfg.get("inversion_center")))
                spectrum = bie2d.conformal_exterior_spectrum(spec, center, N, k)
            else:
                raise SteklovError(f"unknown method {method!r}")
        except PartialResultError as exc:
            _diag(f"partial spectrum: {exc}")
            spectrum = exc.spectrum
            exit_code = 2
        values, residuals, groups = spectrum.values, spectrum.residuals, spectrum.groups
    write_table(cfg.get("out"), ["index", "eigenvalue", "residual", "group"],
                _spectrum_rows(values, residuals, groups), cfg.get("format", "csv"))
    if spectrum is not None and cfg.get("traces"):
        _write_traces(cfg, spectrum)
    if cfg.get("plot"):
        _render_plot(cfg.get("out"), lambda ax: (
            ax.step(range(len(values)), values, where="post"),
            ax.set_xlabel("index"), ax.set_ylabel("eigenvalue")))
    return exit_code


def _write_traces(cfg, spectrum):
    idx = int(cfg.get("trace_index", 0))
    curve = spectrum.curve
    u = spectrum.vectors[:, idx]
    rows = [
        (int(curve.component_index[i]), curve.params[i],
         curve.points[i].real, curve.points[i].imag, u[i])
        for i in range(curve.n_nodes)
    ]
    write_table(cfg["traces"], ["component", "t", "x", "y", "value"], rows,
                cfg.get("format", "csv"))


def _truncation_sweep(cfg, jobs):
    dim = int(cfg.get("dim", 2))
    rho = float(cfg.get("radius", 1.0))
    ell_max = int(cfg.get("ell_max", 3))
    grid = _parse_grid(cfg.get("grid", "2,4,8,16"))

    def point(R):
        d = oracle_radial.ball_trunc(dim, rho, R, ell_max, "D")
        nn = oracle_radial.ball_trunc(dim, rho, R, ell_max, "N")
        return [(R, ell, d.sigma(ell), nn.sigma(ell)) for ell in range(ell_max + 1)]

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        chunks = list(pool.map(point, grid))
    rows = [r for chunk in chunks for r in chunk]
    # fitted convergence rates toward the exterior values
    limit = oracle_radial.disk_exterior(rho, ell_max) if dim == 2 \
        else oracle_radial.ball_exterior(dim, rho, ell_max)
    for ell in range(ell_max + 1):
        for bc, col in (("D", 2), ("N", 3)):
            err = np.array([abs(r[col] - limit.sigma(ell))
                            for r in rows if r[1] == ell])
            if np.any(err <= 0):
                continue
            if ell == 0 and bc == "D" and dim == 2:
                rate, _ = np.polyfit(np.log(np.log(grid / rho)), np.log(err), 1)
                _diag(f"rate ell=0 D: (log R)^{rate:.3f} (expect -1)")
            else:
                rate, _ = np.polyfit(np.log(grid), np.log(err), 1)
                _diag(f"rate ell={ell} {bc}: R^{rate:.3f} (expect {-2 * ell - dim + 2})")
    return ["R", "ell", "dirichlet", "neumann"], rows


def _helmholtz_sweep(cfg, jobs):
    dim = int(cfg.get("dim", 2))
    rho = float(cfg.get("radius", 1.0))
    ell_max = int(cfg.get("ell_max", 3))
    grid = _parse_grid(cfg.get("grid", "1,0.1,0.01,0.001"))

    def point(lam):
        h = oracle_radial.helmholtz_radial(dim, rho, lam, ell_max)
        return [(lam, ell, h.sigma(ell)) for ell in range(ell_max + 1)]

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        chunks = list(pool.map(point, grid))
    rows = [r for chunk in chunks for r in chunk]
    if dim == 2:
        mu0 = np.array([r[2] for r in rows if r[1] == 0])
        mask = grid < 0.1  # the 1/|log lam| law is a small-lam asymptotic
        if np.count_nonzero(mask) >= 2:
            il = 1.0 / np.abs(np.log(grid[mask]))
            c = float(np.sum(mu0[mask] * il) / np.sum(il**2))
            resid = np.linalg.norm(mu0[mask] - c * il) / np.linalg.norm(mu0[mask])
            _diag(f"ell=0 fit: mu ~ {c:.6g}/|log lam|, relative residual {resid:.3g}")
    return ["lam", "ell", "mu"], rows


def cmd_converge(cfg):
    kind = cfg.get("kind", "truncation")
    domain = cfg.get("domain", "disk")
    if domain not in ("disk", "circle", "ball"):
        raise UnsupportedCombinationError(
            "convergence sweeps use the closed-form disk/ball spectra only; "
            f"domain {domain!r} is not supported"
        )
    jobs = int(cfg.get("jobs", 1))
    if kind == "truncation":
        header, rows = _truncation_sweep(cfg, jobs)
    elif kind == "helmholtz":
        header, rows = _helmholtz_sweep(cfg, jobs)
    else:
        raise SteklovError(f"unknown sweep kind {kind!r}")
    write_table(cfg.get("out"), header, rows, cfg.get("format", "csv"))
    if cfg.get("plot"):
        xcol = np.array([r[0] for r in rows])
        _render_plot(cfg.get("out"), lambda ax: (
            [ax.loglog(xcol[[r[1] == ell for r in rows]],
                       [r[2] for r in rows if r[1] == ell], "o-", label=f"ell={ell}")
             for ell in sorted({r[1] for r in rows})],
            ax.set_xlabel(header[0]), ax.legend()))
    return 0


def cmd_bounds(cfg):
    fmt = cfg.get("format", "csv")
    family = cfg.get("family")
    if family is not None:
        a_grid = _parse_grid(str(cfg.get("a_grid", "0.05:0.95:19")))
        fam = bounds.SpheroidFamily(family, np.sort(a_grid),
                                    k=cfg.get("ksym") and int(cfg["ksym"]),
                                    n=int(cfg.get("dim", 3)))
        jobs = int(cfg.get("jobs", 1))
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(
                lambda a: bounds.bound_curves(
                    bounds.SpheroidFamily(fam.kind, np.array([a]), fam.k, fam.n)),
                fam.a_grid))
        rows = [(r.a[0], r.beta[0], r.beta_gm[0], r.beta_xiong[0],
                 r.beta_norm[0], r.beta_xiong_norm[0]) for r in reports]
        write_table(cfg.get("out"),
                    ["a", "beta", "beta_gm", "beta_xiong", "beta_norm",
                     "beta_xiong_norm"], rows, fmt)
        if cfg.get("plot"):
            a = [r[0] for r in rows]
            _render_plot(cfg.get("out"), lambda ax: (
                ax.plot(a, [r[1] for r in rows], label="beta"),
                ax.plot(a, [r[3] for r in rows], label="beta_xiong"),
                ax.set_xlabel("a"), ax.legend()))
        return 0
    # single spheroid at one aspect ratio
    kind = cfg.get("spheroid", "prolate")
    a = float(cfg.get("a", 0.5))
    field = bounds.spheroid_curvatures(a, kind)
    pts, nrm = bounds.spheroid_surface(a, kind)
    bx, _ = bounds.xiong_bound(pts, nrm, 3)
    name = f"{kind}(a={a:g})"
    lines = [f"{name},{format_number(bounds.escobar_bound(field))},"
             f"{format_number(bounds.geometric_mean_bound(field))},"
             f"{format_number(bx)}"]
    text = "name,beta,beta_gm,beta_xiong\n" + "\n".join(lines) + "\n"
    if cfg.get("out") is None:
        sys.stdout.write(text)
    else:
        with open(cfg["out"], "w") as f:
            f.write(text)
    return 0


def cmd_weyl(cfg):
    spec = build_domain(cfg)
    N = int(cfg.get("nodes", 512))
    k = int(cfg.get("k", 120))
    spectrum = bie2d.exterior_spectrum(spec, N, k)
    q = geometry.quantities(spectrum.curve)
    counting = asymptotics.CountingFunction.from_values(spectrum.values)
    rows = [(sig, int(cnt)) for sig, cnt in counting.table()]
    write_table(cfg.get("out"), ["sigma", "count"], rows, cfg.get("format", "csv"))
    slope, rel = asymptotics.weyl_fit_2d(spectrum, q.perimeter)
    _diag(f"slope={slope:.12g} target={q.perimeter / np.pi:.12g} relerr={rel:.3g}")
    gaps, expo = asymptotics.pair_gap_2d(spectrum)
    _diag(f"pair gaps: first={gaps[0]:.3g} last={gaps[-1]:.3g} decay_exponent={expo:.3g}")
    if cfg.get("plot"):
        _render_plot(cfg.get("out"), lambda ax: (
            ax.step([r[0] for r in rows], [r[1] for r in rows], where="post"),
            ax.plot([0, rows[-1][0]], [0, slope * rows[-1][0]], "--"),
            ax.set_xlabel("sigma"), ax.set_ylabel("count")))
    return 0


def cmd_compare(cfg):
    spec = build_domain(cfg)
    N = int(cfg.get("nodes", 256))
    k = int(cfg.get("k", 10))
    ext = bie2d.exterior_spectrum(spec, N, k)
    curve = geometry.build_curve(spec, N)
    center = complex(np.mean(curve.components[0].z))
    if cfg.get("inversion_center"):
        center = complex(*_parse_center(cfg["inversion_center"]))
    conf = bie2d.conformal_exterior_spectrum(spec, center, N, k)
    rows = [(i, ext.values[i], conf.values[i], ext.values[i] - conf.values[i])
            for i in range(k)]
    write_table(cfg.get("out"), ["index", "exterior", "conformal", "diff"],
                rows, cfg.get("format", "csv"))
    _diag(f"max deviation: {np.max(np.abs(ext.values - conf.values)):.3g}")
    return 0


def cmd_capacity(cfg):
    spec = build_domain(cfg)
    N = int(cfg.get("nodes", 256))
    curve = geometry.build_curve(spec, N)
    print(format_number(bie2d.capacity(curve)))
    return 0


def cmd_oracle(cfg):
    dim = int(cfg.get("dim", 2))
    rho = float(cfg.get("radius", 1.0))
    ell_max = int(cfg.get("ell_max", 40))
    kind = cfg.get("kind", "exterior")
    if kind == "exterior":
        rad = oracle_radial.disk_exterior(rho, ell_max) if dim == 2 \
            else oracle_radial.ball_exterior(dim, rho, ell_max)
    elif kind in ("trunc-D", "trunc-N"):
        rad = oracle_radial.ball_trunc(dim, rho, float(cfg.get("R", 2.0)),
                                       ell_max, kind[-1])
    elif kind == "helmholtz":
        rad = oracle_radial.helmholtz_radial(dim, rho, float(cfg.get("lam", 1.0)),
                                             ell_max)
    else:
        raise SteklovError(f"unknown oracle kind {kind!r}")
    rows = [(ell, v, m) for ell, v, m in rad.entries]
    write_table(cfg.get("out"), ["ell", "eigenvalue", "multiplicity"], rows,
                cfg.get("format", "csv"))
    return 0


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------
COMMANDS = {
    "spectrum": cmd_spectrum,
    "converge": cmd_converge,
    "bounds": cmd_bounds,
    "weyl": cmd_weyl,
    "compare": cmd_compare,
    "capacity": cmd_capacity,
    "oracle": cmd_oracle,
}


def _add_common(p):
    p.add_argument("--domain")
    p.add_argument("--nodes", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--config")
    p.add_argument("--plot", action="store_true", default=None)
    p.add_argument("--radius", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--center")
    p.add_argument("--coeffs")
    p.add_argument("--dim", type=int)
    p.add_argument("--ell-max", dest="ell_max", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="extsteklov",
        description="Exterior Steklov eigenvalues, bounds, and asymptotics",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("spectrum", help="eigenvalues of one domain")
    p.add_argument("--method",
                   choices=["bie-exterior", "bie-interior", "conformal", "oracle"])
    p.add_argument("--inversion-center", dest="inversion_center")
    p.add_argument("--traces")
    p.add_argument("--trace-index", dest="trace_index", type=int)
    _add_common(p)
    p = sub.add_parser("converge", help="truncation/Helmholtz sweeps (closed forms)")
    p.add_argument("--kind", choices=["truncation", "helmholtz"])
    p.add_argument("--grid")
    p.add_argument("--R", type=float)
    _add_common(p)
    p = sub.add_parser("bounds", help="curvature bound curves or single spheroids")
    p.add_argument("--family", choices=["prolate", "oblate", "higher"])
    p.add_argument("--a-grid", dest="a_grid")
    p.add_argument("--spheroid", choices=["prolate", "oblate"])
    p.add_argument("--ksym", type=int, help="axis-group size k for higher spheroids")
    _add_common(p)
    p = sub.add_parser("weyl", help="counting function and Weyl fit")
    _add_common(p)
    p = sub.add_parser("compare", help="exterior BIE vs conformal route")
    p.add_argument("--inversion-center", dest="inversion_center")
    _add_common(p)
    p = sub.add_parser("capacity", help="logarithmic capacity of a domain")
    _add_common(p)
    p = sub.add_parser("oracle", help="closed-form radial spectra")
    p.add_argument("--kind", choices=["exterior", "trunc-D", "trunc-N", "helmholtz"])
    p.add_argument("--R", type=float)
    p.add_argument("--lam", type=float)
    _add_common(p)
    return parser


def merge_config(args):
    """Flags override config-file values; unset options fall back to defaults."""
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as f:
            cfg.update(json.load(f))
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            cfg[key] = value
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = merge_config(args)
        return COMMANDS[args.command](cfg)
    except (InsufficientDataError, UnsupportedCombinationError, SteklovError) as exc:
        _diag(f"error: {exc}")
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _diag(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
