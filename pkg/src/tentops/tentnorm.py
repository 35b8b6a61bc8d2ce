"""Tent-space quasinorms, the Carleson kernel test and decay profiles.

Every supremum over the disk is a maximum over a structured grid and every
area integral inside one call reuses a single quadrature mesh, so the values
for different grid points are computed on equal footing.

Grids
-----
The default point grid (for ``a`` in kernel tests, ``u`` in box averages and
``z`` in growth sweeps) is annular: the origin plus radii ``1 - 2^-m`` for
``m = 1..depth``.  Shallow rings (``m <= 5``) carry 16 uniform angles; every
ring carries angle 0 and the directions of the function's boundary
singularities.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import kernels
from .funcmodel import AnalyticFn, derivative
from .quadrature import (QuadratureSpec, WeightedIntegrand, Cone, angular_breaks,
                         boundary_integral, build_mesh, radial_nodes, ring_nodes)

INF = math.inf
DEFAULT_ETA_SAMPLES = 256


@dataclass(frozen=True)
class SpaceParams:
    """Source ``AT_p(alpha)``, target ``AT_q(beta)`` and operator ``(kind, n, k)``."""

    p: float
    q: float
    alpha: float = 0.0
    beta: float = 0.0
    n: int = 1
    k: int = 0
    op_kind: str = "T"

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise ValueError("p and q must be positive")
        if math.isinf(self.p) or math.isinf(self.q):
            raise ValueError("operator criteria need finite p and q")
        if not (self.alpha > -2 and self.beta > -2):
            raise ValueError("alpha and beta must exceed -2")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        if int(self.k) != self.k or not 0 <= self.k < self.n:
            raise ValueError("k must satisfy 0 <= k < n")
        if self.op_kind not in ("T", "S"):
            raise ValueError("op_kind must be 'T' or 'S'")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", int(self.k))

    @property
    def source_exponent(self):
        return (self.alpha + 2) / self.p

    def to_dict(self):
        return {"p": self.p, "q": self.q, "alpha": self.alpha, "beta": self.beta,
                "n": self.n, "k": self.k, "op_kind": self.op_kind}

    @classmethod
    def from_dict(cls, d):
        return cls(float(d["p"]), float(d["q"]), float(d.get("alpha", 0.0)),
                   float(d.get("beta", 0.0)), int(d.get("n", 1)), int(d.get("k", 0)),
                   str(d.get("op_kind", "T")))


@dataclass(frozen=True)
class DecayProfile:
    radii: tuple
    values: tuple

    def __post_init__(self):
        r = tuple(float(x) for x in self.radii)
        v = tuple(float(x) for x in self.values)
        if len(r) != len(v):
            raise ValueError("radii and values differ in length")
        if any(not 0 <= x < 1 for x in r) or any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("radii must increase inside [0, 1)")
        if any(x < 0 or math.isnan(x) for x in v):
            raise ValueError("profile values must be nonnegative")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "values", v)

    @property
    def final(self):
        return self.values[-1]

    @property
    def peak(self):
        return max(self.values)

    def scaled(self, c):
        return DecayProfile(self.radii, tuple(abs(c) * v for v in self.values))

    def to_dict(self):
        return {"radii": list(self.radii), "values": list(self.values)}

    def rows(self):
        return list(zip(self.radii, self.values))


@dataclass(frozen=True)
class KernelTest:
    value: float
    profile: DecayProfile
    error: float
    argmax: complex


@dataclass(frozen=True)
class DiscreteMeasure:
    """Point masses ``sum_j masses_j delta_{points_j}``."""

    points: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        m = np.asarray(self.masses, dtype=float).ravel()
        if pts.shape != m.shape:
            raise ValueError("points and masses differ in length")
        if np.any(m < 0):
            raise ValueError("masses must be nonnegative")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "masses", m)


# ----------------------------------------------------------------------------
# grids

def default_radii(depth=10):
    return tuple(1 - 2.0 ** -m for m in range(1, depth + 1))


def annular_grid(foci=(), depth=10, n_uniform=16, uniform_depth=5, radii=None,
                 origin=True):
    """Origin plus rings; see the module docstring."""
    radii = default_radii(depth) if radii is None else tuple(radii)
    base = sorted({0.0} | {round(float(f), 12) for f in foci})
    uni = 2 * np.pi * np.arange(n_uniform) / n_uniform
    pts = [np.zeros(1, dtype=complex)] if origin else []
    for rad in radii:
        if rad == 0:
            continue
        ang = np.array(base)
        if 1 - rad >= 2.0 ** -uniform_depth - 1e-15:
            ang = np.union1d(np.round(np.mod(uni, 2 * np.pi), 12),
                             np.round(np.mod(ang, 2 * np.pi), 12))
        pts.append(rad * np.exp(1j * np.unique(np.mod(ang, 2 * np.pi))))
    return np.concatenate(pts)


def _grid_foci(points, threshold=0.9):
    pts = np.asarray(points, dtype=complex).ravel()
    deep = pts[np.abs(pts) >= threshold]
    return tuple(np.unique(np.round(np.mod(np.angle(deep), 2 * np.pi), 12)))


def _annulus_profile(points, values, radii=None, skip_origin=True):
    pts = np.asarray(points, dtype=complex).ravel()
    mod = np.round(np.abs(pts), 13)
    rs = np.unique(mod) if radii is None else np.round(np.asarray(radii, dtype=float), 13)
    rr, vv = [], []
    for r in rs:
        if skip_origin and r == 0:
            continue
        sel = mod == r
        if not np.any(sel):
            continue
        rr.append(float(r))
        vv.append(float(np.max(values[sel])))
    return DecayProfile(tuple(rr), tuple(vv))


# ----------------------------------------------------------------------------
# kernel test

def _kernel_values(F, t, a, spec):
    foci = tuple(F.foci) + _grid_foci(a)
    mesh = build_mesh(spec, F.weight_exponent, foci)
    dens = np.asarray(F.density(mesh.z), dtype=float)
    w = mesh.w * np.broadcast_to(dens, mesh.z.shape)
    return kernels.kernel_sums(mesh.z, w, a, t)


def kernel_test(F, t, a_grid=None, spec=QuadratureSpec(), *, estimate_error=True):
    """Carleson kernel test ``sup_a (1-|a|^2)^t int dmu / |1 - conj(a) z|^(t+1)``.

    ``F`` is a :class:`WeightedIntegrand` (``dmu = density (1-|z|^2)^gamma dA``)
    or a :class:`DiscreteMeasure`.  Returns a :class:`KernelTest` with the grid
    maximum, the per-radius maxima and a refinement error estimate for the
    maximum (zero for discrete measures).
    """
    if not t > 0:
        raise ValueError("t must be positive")
    if a_grid is None:
        foci = F.foci if isinstance(F, WeightedIntegrand) else ()
        a_grid = annular_grid(foci, depth=spec.depth)
    a = np.asarray(a_grid, dtype=complex).ravel()
    if np.any(np.abs(a) >= 1):
        raise ValueError("a-grid must lie in the open disk")
    if isinstance(F, DiscreteMeasure):
        vals = kernels.kernel_sums(F.points, F.masses, a, t) if F.points.size else np.zeros(a.size)
        err = 0.0
    else:
        vals = _kernel_values(F, t, a, spec)
        err = 0.0
        if estimate_error:
            coarse = _kernel_values(F, t, a, spec.coarsened())
            err = float(abs(coarse.max() - vals.max()) + 1e-13 * vals.max())
    i = int(np.argmax(vals))
    return KernelTest(float(vals[i]), _annulus_profile(a, vals), err, complex(a[i]))


# ----------------------------------------------------------------------------
# Littlewood-Paley norm

def default_t(alpha):
    return alpha + 3.0


def lp_measure(f, p, alpha, n):
    """``|f^(n)|^p (1-|z|^2)^(n p + alpha + 1) dA`` as a weighted integrand."""
    fn = derivative(f, n)
    return WeightedIntegrand(lambda z: np.abs(fn(z)) ** p, n * p + alpha + 1, f.foci())


@dataclass(frozen=True)
class LPNorm:
    value: float
    jet: float
    kernel: KernelTest
    p: float = 1.0

    @property
    def error(self):
        """Error estimate for ``value`` propagated from the kernel test."""
        if self.value == 0:
            return 0.0
        return self.value * self.kernel.error / ((self.jet + self.kernel.value) * self.p)


def lp_norm(f, p, alpha, n=1, t=None, spec=QuadratureSpec(), *, a_grid=None,
            full=False, estimate_error=True):
    """Littlewood-Paley norm of ``f`` in ``AT_p^inf(alpha)``.

    ``(sum_{j<n} |f^(j)(0)|^p + K)^(1/p)`` where ``K`` is the kernel test of
    ``|f^(n)|^p (1-|z|^2)^(n p + alpha + 1) dA``.  The jet starts at ``j = 0``
    so that constants have positive norm.
    """
    _check(p, alpha)
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    t = default_t(alpha) if t is None else float(t)
    jet = float(np.sum(np.abs(f.jet(n)) ** p))
    if derivative(f, n).is_zero():
        a = annular_grid(f.foci(), depth=spec.depth) if a_grid is None else np.asarray(a_grid)
        kt = KernelTest(0.0, _annulus_profile(a, np.zeros(a.size)), 0.0, 0j)
    else:
        kt = kernel_test(lp_measure(f, p, alpha, n), t, a_grid, spec,
                         estimate_error=estimate_error)
    val = (jet + kt.value) ** (1 / p)
    if full:
        return LPNorm(val, jet, kt, float(p))
    return val


def little_profile(f, p, alpha, n=1, t=None, radii=None, spec=QuadratureSpec()):
    """Per-annulus maxima of the kernel test of the LP measure (vanishing test)."""
    _check(p, alpha)
    t = default_t(alpha) if t is None else float(t)
    radii = default_radii(spec.depth) if radii is None else tuple(radii)
    a = annular_grid(f.foci(), radii=radii, origin=False)
    if derivative(f, n).is_zero():
        return DecayProfile(tuple(radii), tuple(0.0 for _ in radii))
    vals = _kernel_values(lp_measure(f, p, alpha, n), t, a, spec)
    return _annulus_profile(a, vals, radii)


def growth_ratio(f, p, alpha, n=0, z_samples=None, spec=QuadratureSpec(), *,
                 norm=None, t=None):
    """``max_z |f^(n)(z)| (1-|z|^2)^((alpha+2)/p + n) / lp_norm(f)`` over ``z_samples``."""
    _check(p, alpha)
    if f.is_zero():
        return 0.0
    if z_samples is None:
        z_samples = annular_grid(f.foci(), depth=spec.depth)
    z = np.asarray(z_samples, dtype=complex).ravel()
    if norm is None:
        norm = lp_norm(f, p, alpha, 1, t, spec)
    vals = np.abs(derivative(f, n)(z)) * (1 - np.abs(z) ** 2) ** ((alpha + 2) / p + n)
    return float(vals.max() / norm)


# ----------------------------------------------------------------------------
# tent norms

def tpq_norm(f, p, q, alpha, spec=QuadratureSpec(), *, zeta=1.0,
             eta_samples=DEFAULT_ETA_SAMPLES, full=False):
    """``(int_T (int_{Gamma(eta)} |f|^p (1-|z|^2)^alpha dA)^(q/p) |d eta|)^(1/q)``."""
    _check(p, alpha)
    if not 0 < q < INF or not p < INF:
        raise ValueError("tpq_norm needs finite positive p and q")
    if f.is_zero():
        return 0.0 if not full else (0.0, 0.0)
    foci = f.foci()

    def inner(s):
        psi = 2 * np.pi * np.arange(eta_samples) / eta_samples
        return cone_integrals(lambda z: np.abs(f(z)) ** p, alpha, psi, s, zeta, foci)

    def outer(vals):
        return boundary_integral(lambda eta: vals ** (q / p), eta_samples) ** (1 / q)

    val = outer(inner(spec))
    if full:
        return val, abs(val - outer(inner(spec.coarsened())))
    return val


def _cone_template(spec, gamma, zeta):
    cone = Cone(1.0, zeta)
    rr, wr = radial_nodes(spec, gamma, cone.rmin, cone.rmax,
                          extra=cone.breaks, graded=cone.graded)
    rings = []
    for r, w in zip(rr, wr):
        arcs = cone.arcs(r)
        if not arcs:
            continue
        th, wt = ring_nodes(angular_breaks(r, spec), spec.angular_order, arcs[0])
        rings.append((r, w, arcs[0][1], th, w * wt / (2 * np.pi)))
    return rings


def cone_integrals(density, gamma, psi, spec=QuadratureSpec(), zeta=1.0, foci=()):
    """``int_{Gamma_zeta(e^{i psi})} density (1-|z|^2)^gamma dA`` for every angle in ``psi``.

    Nodes for the cone at 1 are built once and rotated; rings where a focus
    falls inside the arc and focus grading is active are rebuilt per angle.
    """
    rings = _cone_template(spec, gamma, zeta)
    r_all = np.concatenate([np.full(th.size, r) for r, _, _, th, _ in rings])
    th_all = np.concatenate([th for *_, th, _ in rings])
    w_all = np.concatenate([wt for *_, wt in rings])
    ring_id = np.concatenate([np.full(th.size, i) for i, (*_, th, _) in enumerate(rings)])
    # grading only changes a ring's partition when (1-r)/2 is below the background width
    graded = [i for i, (r, *_rest) in enumerate(rings)
              if 0.5 * (1 - r) < 2 * np.pi / min(spec.angular_base,
                                                 max(16, math.ceil(4 * np.pi / (1 - r))))]
    foci = np.asarray(foci, dtype=float)
    out = np.empty(len(psi))
    for j, ps in enumerate(psi):
        z = r_all * np.exp(1j * (th_all + ps))
        w = w_all
        if foci.size and graded:
            redo = [i for i in graded
                    if np.any(np.abs(np.angle(np.exp(1j * (foci - ps)))) < rings[i][2] + 1e-12)]
            if redo:
                keep = ~np.isin(ring_id, redo)
                zs, ws = [z[keep]], [w[keep]]
                for i in redo:
                    r, wr, h, _, _ = rings[i]
                    th, wt = ring_nodes(angular_breaks(r, spec, tuple(foci)),
                                        spec.angular_order, (ps - h, ps + h))
                    zs.append(r * np.exp(1j * th))
                    ws.append(wr * wt / (2 * np.pi))
                z, w = np.concatenate(zs), np.concatenate(ws)
        out[j] = np.dot(w, density(z))
    return out


def cone_samples(zeta=1.0, cap=1 - 2.0 ** -10, n_radii=200, n_angles=41):
    """Template points ``(r, offset)`` covering ``Gamma_zeta(1) cap {|z| <= cap}``."""
    cone = Cone(1.0, zeta)
    r0 = max(cone.rmin, 0.0)
    # geometric in 1 - r between 1 - r0 and 1 - cap, excluding the empty endpoint
    s = np.geomspace(1 - r0, 1 - cap, n_radii + 1)[1:]
    rs, offs, halves = [], [], []
    for r in 1 - s:
        arcs = cone.arcs(r)
        if not arcs:
            continue
        lo, hi = arcs[0]
        h = 0.5 * (hi - lo) * (1 - 1e-12)
        rs.append(np.full(n_angles, r))
        offs.append(np.linspace(-h, h, n_angles))
        halves.append(h)
    return np.concatenate(rs), np.concatenate(offs), (1 - s), np.array(halves)


def tinfq_norm(f, q, eta_samples=DEFAULT_ETA_SAMPLES, spec=QuadratureSpec(), *,
               zeta=1.0, n_radii=200, n_angles=41):
    """``(int_T (sup_{Gamma(eta)} |f|)^q |d eta|)^(1/q)`` with the sup over a dense cone grid."""
    if not 0 < q < INF:
        raise ValueError("q must be positive and finite")
    if f.is_zero():
        return 0.0
    r, off, ring_r, ring_h = cone_samples(zeta, spec.cap, n_radii, n_angles)
    foci = np.array(f.foci())
    psi = 2 * np.pi * np.arange(eta_samples) / eta_samples
    sups = np.empty(eta_samples)
    for i, ps in enumerate(psi):
        z = r * np.exp(1j * (ps + off))
        m = np.abs(f(z)).max()
        if foci.size:
            # the grid may straddle a sharp peak: add the ray toward each focus
            d = np.angle(np.exp(1j * (foci[:, None] - ps)))
            inside = np.abs(d) < ring_h[None, :]
            if np.any(inside):
                fi, ri = np.nonzero(inside)
                zf = ring_r[ri] * np.exp(1j * foci[fi])
                m = max(m, np.abs(f(zf)).max())
        sups[i] = m
    return boundary_integral(lambda eta: sups ** q, eta_samples) ** (1 / q)


def _box_mesh(spec, gamma, foci, u):
    u = np.asarray(u, dtype=complex).ravel()
    nz = u[u != 0]
    h = 0.5 * (1 - np.abs(nz))
    phi = np.angle(nz)
    extra = np.concatenate([np.stack([phi - h, np.abs(nz)], 1),
                            np.stack([phi + h, np.abs(nz)], 1)]) if nz.size else ()
    return build_mesh(spec, gamma, tuple(foci) + _grid_foci(u),
                      radial_extra=tuple(np.unique(np.abs(nz))), angular_extra=extra)


def _box_averages(f, p, alpha, u, spec):
    mesh = _box_mesh(spec, alpha + 1, f.foci(), u)
    w = mesh.w * np.abs(f(mesh.z)) ** p
    return kernels.box_sums(mesh.z, w, u) / (1 - np.abs(u) ** 2)


def tpinf_norm(f, p, alpha, u_grid=None, spec=QuadratureSpec(), *, full=False):
    """``sup_u ((1/(1-|u|^2)) int_{S(u)} |f|^p (1-|z|^2)^(alpha+1) dA)^(1/p)`` over ``u_grid``."""
    _check(p, alpha)
    u = annular_grid(f.foci(), depth=spec.depth) if u_grid is None else np.asarray(u_grid, dtype=complex).ravel()
    if f.is_zero():
        return (0.0, 0.0, 0j) if full else 0.0
    vals = _box_averages(f, p, alpha, u, spec)
    i = int(np.argmax(vals))
    val = float(vals[i]) ** (1 / p)
    if full:
        coarse = _box_averages(f, p, alpha, u, spec.coarsened())
        err = abs(val - float(coarse.max()) ** (1 / p))
        return val, err, complex(u[i])
    return val


def box_average_profile(f, p, alpha, radii=None, spec=QuadratureSpec()):
    """Per-annulus maxima of the box averages of ``|f|^p (1-|z|^2)^(alpha+1) dA``."""
    radii = default_radii(spec.depth) if radii is None else tuple(radii)
    u = annular_grid(f.foci(), radii=radii, origin=False)
    if f.is_zero():
        return DecayProfile(tuple(radii), tuple(0.0 for _ in radii))
    return _annulus_profile(u, _box_averages(f, p, alpha, u, spec), radii)


# ----------------------------------------------------------------------------
# sequence tent spaces

def _seq_check(x, Z):
    x = np.asarray(x, dtype=complex).ravel()
    if x.shape != Z.nodes.shape:
        raise ValueError(f"sequence has {x.size} entries, lattice has {len(Z)} nodes")
    return x


def seq_u_grid(Z, depth=10):
    """Lattice nodes together with the annular grid."""
    return np.concatenate([Z.nodes, annular_grid((), depth=depth)])


def seq_box_sums(x, Z, p, u):
    x = _seq_check(x, Z)
    mass = np.abs(x) ** p * (1 - np.abs(Z.nodes) ** 2)
    u = np.asarray(u, dtype=complex).ravel()
    return kernels.box_sums(Z.nodes, mass, u) / (1 - np.abs(u) ** 2)


def seq_tent_norm(x, Z, p, u_grid=None):
    """``sup_u ((1/(1-|u|^2)) sum_{a_j in S(u)} |x_j|^p (1-|a_j|^2))^(1/p)``."""
    if not p > 0:
        raise ValueError("p must be positive")
    u = seq_u_grid(Z) if u_grid is None else u_grid
    vals = seq_box_sums(x, Z, p, u)
    return float(vals.max()) ** (1 / p) if vals.size else 0.0


def _dense_ring(rho, extra_angles):
    n = int(min(1 << 15, max(16, math.ceil(4 * np.pi / (1 - rho)))))
    ang = np.concatenate([2 * np.pi * np.arange(n) / n, extra_angles])
    return rho * np.exp(1j * ang)


def seq_little_profile(x, Z, p, radii=None):
    """Per-annulus maxima of sequence box averages over ``|u| = radii``.

    Each annulus is sampled at spacing ``(1-|u|)/2`` plus the node directions.
    """
    x = _seq_check(x, Z)
    radii = default_radii() if radii is None else tuple(radii)
    node_ang = np.angle(Z.nodes[np.abs(x) > 0])
    vals = []
    for rho in radii:
        u = _dense_ring(rho, node_ang)
        vals.append(float(seq_box_sums(x, Z, p, u).max()))
    return DecayProfile(tuple(radii), tuple(vals))


def profile_csv_rows(kind, params, profile, meta=None):
    """Rows ``kind, params, radius, value, meta`` for CSV output."""
    ptxt = ";".join(f"{k}={v}" for k, v in sorted(params.items()))
    mtxt = ";".join(f"{k}={v}" for k, v in sorted((meta or {}).items()))
    return [(kind, ptxt, f"{r:.17g}", f"{v:.17g}", mtxt) for r, v in profile.rows()]


def norm_csv_row(kind, params, value, error=0.0, meta=None):
    ptxt = ";".join(f"{k}={v}" for k, v in sorted(params.items()))
    mtxt = ";".join(f"{k}={v}" for k, v in sorted((meta or {}).items()))
    return (kind, ptxt, f"{value:.17g}", mtxt, f"{error:.3g}")


def _check(p, alpha):
    if not p > 0 or math.isinf(p):
        raise ValueError("p must be positive and finite")
    if not alpha > -2:
        raise ValueError("alpha must exceed -2")
