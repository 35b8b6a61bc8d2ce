"""Weighted area integrals over the disk and its standard subregions.

All area integrals use the normalized measure ``dA = dx dy / pi`` and a
weight ``(1 - |z|^2)^gamma`` with ``gamma > -1``.

Meshes are built ring by ring.  Radially, Gauss-Legendre panels are graded
geometrically toward the circle (breakpoints ``1 - 2^-m``) and the last
panel ``[1 - 2^-M, 1]`` uses Gauss-Jacobi nodes so the weight's endpoint
behaviour is integrated exactly.  On a ring of radius ``r`` angular panels
have width about ``(1 - r)/2`` (capped by ``angular_base`` panels per ring)
and are further graded toward *foci*: directions where the integrand has a
boundary singularity or a sharp peak.
"""

from dataclasses import dataclass, field, replace
from functools import lru_cache
import math

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

TWO_PI = 2 * math.pi


class QuadratureError(RuntimeError):
    """Raised when a caller insists on convergence and refinement disagrees."""


@dataclass(frozen=True)
class QuadratureSpec:
    radial_levels: int = 20
    angular_base: int = 256
    boundary_margin: float = 2.0 ** -10
    target_rel_err: float = 1e-3
    radial_order: int = 8
    angular_order: int = 4

    def __post_init__(self):
        if self.radial_levels < 8:
            raise ValueError("radial_levels must be >= 8")
        if not 0 < self.boundary_margin < 0.1:
            raise ValueError("boundary_margin must lie in (0, 0.1)")
        if self.angular_base < 16:
            raise ValueError("angular_base must be >= 16")

    @property
    def cap(self):
        return 1.0 - self.boundary_margin

    @property
    def depth(self):
        """Number of dyadic levels ``m`` with ``1 - 2^-m <= cap``."""
        return int(round(-math.log2(self.boundary_margin)))

    def refined(self):
        return replace(self, radial_levels=self.radial_levels + 4,
                       angular_base=2 * self.angular_base,
                       radial_order=self.radial_order + 4,
                       angular_order=self.angular_order + 2)

    def coarsened(self):
        """Cheaper companion rule; its disagreement with ``self`` is the error estimate."""
        return replace(self, radial_levels=max(8, self.radial_levels - 2),
                       angular_base=max(16, self.angular_base // 2),
                       radial_order=max(4, self.radial_order - 3),
                       angular_order=max(2, self.angular_order - 1))

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class WeightedIntegrand:
    """``density(z) * (1 - |z|^2)^weight_exponent``; ``foci`` are singular directions."""

    density: object
    weight_exponent: float = 0.0
    foci: tuple = ()

    def __post_init__(self):
        if not self.weight_exponent > -1:
            raise ValueError("weight exponent must exceed -1")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    converged: bool

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True, eq=False)
class Mesh:
    """Quadrature nodes with weights for ``(1-|z|^2)^gamma dA``."""

    z: np.ndarray
    w: np.ndarray
    gamma: float
    foci: tuple = field(default=())

    def integrate(self, values):
        return float(np.dot(self.w, values))

    def __len__(self):
        return self.z.size


@lru_cache(maxsize=None)
def _legendre(n):
    x, w = roots_legendre(n)
    return x, w


@lru_cache(maxsize=None)
def _jacobi(n, gamma):
    x, w = roots_jacobi(n, gamma, 0.0)
    return x, w


def _radial_breaks(spec, rmin=0.0, rmax=1.0, extra=(), graded=()):
    pts = {0.0, 0.25, 0.5}
    pts.update(1.0 - 2.0 ** -m for m in range(1, spec.radial_levels + 1))
    pts.update(float(b) for b in extra)
    for b in graded:
        # geometric clustering on both sides of a point where the integrand
        # is only Hoelder continuous in r
        lo = max([p for p in pts if p < b - 1e-15] or [0.0])
        hi = min([p for p in pts if p > b + 1e-15] or [1.0])
        for j in range(1, 12):
            pts.add(b - (b - lo) * 2.0 ** -j)
            pts.add(b + (hi - b) * 2.0 ** -j)
        pts.add(b)
    pts = sorted(p for p in pts if rmin - 1e-15 <= p <= rmax + 1e-15 and p < 1.0)
    pts = [max(p, rmin) for p in pts]
    if not pts or pts[0] > rmin:
        pts.insert(0, rmin)
    out = []
    for p in pts:
        if not out or p - out[-1] > 1e-15:
            out.append(p)
    out.append(rmax)
    return out


def radial_nodes(spec, gamma, rmin=0.0, rmax=1.0, extra=(), graded=()):
    """Radii and weights for ``int_rmin^rmax h(r) (1-r^2)^gamma 2 r dr``.

    The factor ``2 r dr`` turns ``(1/2pi) int dtheta`` into ``dA`` over the disk,
    so with angular weights summing to 2pi the caller divides by 2pi.
    """
    brk = _radial_breaks(spec, rmin, rmax, extra, graded)
    xs, ws = [], []
    xg, wg = _legendre(spec.radial_order)
    for lo, hi in zip(brk[:-1], brk[1:]):
        if hi - lo <= 0:
            continue
        if hi == 1.0:
            xj, wj = _jacobi(spec.radial_order, float(gamma))
            h = hi - lo
            r = lo + h * (xj + 1) / 2
            # (1-r)^gamma is inside the Jacobi weight
            w = wj * (h / 2) ** (gamma + 1) * (1 + r) ** gamma * 2 * r
        else:
            r = lo + (hi - lo) * (xg + 1) / 2
            w = wg * (hi - lo) / 2 * (1 - r * r) ** gamma * 2 * r
        xs.append(r)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def angular_breaks(r, spec, foci=(), extra=()):
    """Sorted panel breakpoints in [0, 2pi) for the ring of radius ``r``."""
    n_bg = int(min(spec.angular_base, max(16, math.ceil(TWO_PI / (0.5 * (1 - r))))))
    width = TWO_PI / n_bg
    pts = [np.arange(n_bg) * width]
    h = 0.5 * (1 - r)
    if foci and h < width:
        steps = []
        s = h
        while s < width:
            steps.append(s)
            s *= 2
        steps = np.array(steps)
        for phi in foci:
            pts.append(np.concatenate(([phi], phi + steps, phi - steps)))
    if len(extra):
        pts.append(np.asarray(extra, dtype=float))
    b = np.mod(np.concatenate(pts), TWO_PI)
    b = np.unique(b)
    if b.size > 1:
        keep = np.concatenate(([True], np.diff(b) > 1e-14))
        b = b[keep]
    return b


def _panel_nodes(lo, hi, order):
    x, w = _legendre(order)
    lo = np.asarray(lo)[:, None]
    hi = np.asarray(hi)[:, None]
    th = lo + (hi - lo) * (x[None, :] + 1) / 2
    wt = (hi - lo) / 2 * w[None, :]
    return th.ravel(), wt.ravel()


def ring_nodes(breaks, order, arc=None):
    """Angular Gauss nodes on the cyclic partition ``breaks``, optionally clipped to ``arc``."""
    breaks = np.asarray(breaks, dtype=float)
    if arc is None:
        lo = breaks
        hi = np.append(breaks[1:], breaks[0] + TWO_PI)
        return _panel_nodes(lo, hi, order)
    a, b = arc
    if b - a >= TWO_PI - 1e-15:
        lo = a + np.mod(breaks - a, TWO_PI)
        lo = np.unique(np.append(lo, a))
        hi = np.append(lo[1:], a + TWO_PI)
        return _panel_nodes(lo, hi, order)
    shifted = a + np.mod(breaks - a, TWO_PI)
    inner = shifted[(shifted > a + 1e-15) & (shifted < b - 1e-15)]
    pts = np.concatenate(([a], np.sort(inner), [b]))
    return _panel_nodes(pts[:-1], pts[1:], order)


def build_mesh(spec, gamma, foci=(), radial_extra=(), angular_extra=()):
    """Fixed mesh of the whole disk for ``(1-|z|^2)^gamma dA``.

    ``angular_extra`` holds ``(angle, rmin)`` pairs: angular breakpoints needed
    only on rings with ``r >= rmin`` (Carleson box edges).
    """
    foci = tuple(sorted(set(float(f) for f in foci)))
    rr, wr = radial_nodes(spec, gamma, extra=radial_extra)
    ang_extra = np.array(angular_extra, dtype=float).reshape(-1, 2)
    zs, ws = [], []
    for r, w in zip(rr, wr):
        extra = ang_extra[ang_extra[:, 1] <= r, 0] if ang_extra.size else ()
        th, wt = ring_nodes(angular_breaks(r, spec, foci, extra), spec.angular_order)
        zs.append(r * np.exp(1j * th))
        ws.append(w * wt / TWO_PI)
    return Mesh(np.concatenate(zs), np.concatenate(ws), float(gamma), foci)


def _integrate_on(F, spec, region=None):
    if region is None:
        mesh = build_mesh(spec, F.weight_exponent, F.foci)
        return mesh.integrate(_density(F, mesh.z))
    return _region_sum(F, region, spec)


def _density(F, z):
    vals = np.asarray(F.density(z), dtype=float)
    if vals.shape != z.shape:
        vals = np.broadcast_to(vals, z.shape)
    return vals


def _result(value, coarse, spec):
    err = abs(value - coarse) + 1e-13 * abs(value)
    ok = err <= spec.target_rel_err * max(abs(value), 1e-300)
    return QuadResult(float(value), float(err), bool(ok))


def disk_integral(F, spec=QuadratureSpec(), *, strict=False):
    """``int_D density(z) (1-|z|^2)^gamma dA(z)`` with a refinement error estimate.

    The estimate is the difference between ``spec`` and ``spec.coarsened()``,
    which overstates the error of the reported (finer) value.
    ``converged`` is False when it exceeds ``target_rel_err`` (relative);
    with ``strict=True`` that raises :class:`QuadratureError` instead.
    """
    res = _result(_integrate_on(F, spec), _integrate_on(F, spec.coarsened()), spec)
    if strict and not res.converged:
        raise QuadratureError(f"disk integral did not converge: {res}")
    return res


# ----------------------------------------------------------------------------
# regions

class Region:
    """A subset of the disk described ring by ring."""

    rmin = 0.0
    rmax = 1.0
    breaks = ()
    graded = ()

    def arcs(self, r):  # pragma: no cover - interface
        raise NotImplementedError

    def contains(self, z):  # pragma: no cover - interface
        raise NotImplementedError

    def focus(self):
        return ()


@dataclass(frozen=True)
class CarlesonBox(Region):
    u: complex

    @property
    def rmin(self):
        return abs(self.u)

    @property
    def breaks(self):
        return (abs(self.u),) if self.u != 0 else ()

    def arcs(self, r):
        if self.u == 0:
            return [(0.0, TWO_PI)]
        if r < abs(self.u):
            return []
        phi = float(np.angle(self.u))
        h = 0.5 * (1 - abs(self.u))
        return [(phi - h, phi + h)]

    def contains(self, z):
        from .geometry import in_carleson_box
        return in_carleson_box(self.u, z)

    def focus(self):
        return (float(np.angle(self.u)),) if self.u != 0 else ()


@dataclass(frozen=True)
class Cone(Region):
    """Gamma_zeta(eta) = {|z - eta| < zeta (1 - |z|^2)}."""

    eta: complex
    zeta: float = 1.0

    def __post_init__(self):
        if self.zeta <= 0.5:
            raise ValueError("aperture must exceed 1/2")

    @property
    def _r_open(self):
        return 1 / self.zeta - 1      # arc is empty below this radius

    @property
    def _r_full(self):
        return 1 - 1 / self.zeta      # arc is the full circle below this radius

    @property
    def rmin(self):
        return max(0.0, self._r_open)

    @property
    def breaks(self):
        return tuple(b for b in (self._r_open, self._r_full) if 0 < b < 1)

    graded = breaks

    def arcs(self, r):
        if r == 0:
            return [(0.0, TWO_PI)] if self.zeta > 1 else []
        c = (1 + r * r - self.zeta ** 2 * (1 - r * r) ** 2) / (2 * r)
        if c >= 1:
            return []
        if c <= -1:
            return [(0.0, TWO_PI)]
        phi = float(np.angle(self.eta))
        h = math.acos(c)
        return [(phi - h, phi + h)]

    def contains(self, z):
        from .geometry import in_nontangential
        return in_nontangential(z, self.eta, self.zeta)

    def focus(self):
        return (float(np.angle(self.eta)),)


@dataclass(frozen=True)
class HypDisk(Region):
    """D(center, radius) in the hyperbolic metric."""

    center: complex
    radius: float

    def _euclid(self):
        from .geometry import hyperbolic_disk_euclidean
        return hyperbolic_disk_euclidean(self.center, self.radius)

    @property
    def rmin(self):
        c, R = self._euclid()
        return max(0.0, abs(c) - R)

    @property
    def rmax(self):
        c, R = self._euclid()
        return min(1.0, abs(c) + R)

    @property
    def breaks(self):
        c, R = self._euclid()
        return tuple(b for b in (abs(c) - R, R - abs(c), abs(c) + R) if 0 < b < 1)

    graded = breaks

    def arcs(self, r):
        c, R = self._euclid()
        d = abs(c)
        if r + d <= R:
            return [(0.0, TWO_PI)]
        if r <= d - R or r >= d + R or d == 0:
            return [] if not (d == 0 and r < R) else [(0.0, TWO_PI)]
        cosang = (r * r + d * d - R * R) / (2 * r * d)
        cosang = min(1.0, max(-1.0, cosang))
        h = math.acos(cosang)
        phi = float(np.angle(c))
        return [(phi - h, phi + h)]

    def contains(self, z):
        from .geometry import in_hyperbolic_disk
        return in_hyperbolic_disk(self.center, self.radius, z)

    def focus(self):
        return (float(np.angle(self.center)),) if self.center != 0 else ()


def region_nodes(region, spec, gamma, foci=()):
    """Nodes and weights for ``(1-|z|^2)^gamma dA`` restricted to ``region``."""
    foci = tuple(foci) + tuple(region.focus())
    rr, wr = radial_nodes(spec, gamma, region.rmin, region.rmax,
                          extra=region.breaks, graded=region.graded)
    zs, ws = [], []
    for r, w in zip(rr, wr):
        arcs = region.arcs(r)
        if not arcs:
            continue
        brk = angular_breaks(r, spec, foci)
        for arc in arcs:
            th, wt = ring_nodes(brk, spec.angular_order, arc)
            zs.append(r * np.exp(1j * th))
            ws.append(w * wt / TWO_PI)
    if not zs:
        return np.zeros(0, dtype=complex), np.zeros(0)
    return np.concatenate(zs), np.concatenate(ws)


def _region_sum(F, region, spec):
    z, w = region_nodes(region, spec, F.weight_exponent, F.foci)
    if z.size == 0:
        return 0.0
    return float(np.dot(w, _density(F, z)))


def region_integral(F, region, spec=QuadratureSpec(), *, strict=False):
    """``int_region density (1-|z|^2)^gamma dA`` for a Carleson box, cone or hyperbolic disk."""
    if not isinstance(region, Region):
        raise TypeError("region must be a CarlesonBox, Cone or HypDisk")
    res = _result(_region_sum(F, region, spec), _region_sum(F, region, spec.coarsened()), spec)
    if strict and not res.converged:
        raise QuadratureError(f"region integral did not converge: {res}")
    return res


def boundary_integral(h, samples=256):
    """Trapezoidal ``int_T h(eta) |d eta|`` on ``samples`` equispaced points (mass 2pi)."""
    if samples < 64:
        raise ValueError("need at least 64 boundary samples")
    eta = np.exp(1j * TWO_PI * np.arange(samples) / samples)
    vals = np.asarray(h(eta), dtype=float)
    return float(TWO_PI * np.mean(np.broadcast_to(vals, eta.shape)))


def forelli_rudin_check(a, b, s, r, t, spec=QuadratureSpec()):
    """Ratio of ``int (1-|z|^2)^s / (|1-conj(a)z|^r |1-conj(b)z|^t) dA``
    to ``1 / (|1-conj(a)b|^r (1-|b|^2)^(t-s-2))``.

    Requires ``s > -1``, ``r, t > 0``, ``r + t - s - 2 > 0`` and ``r < s + 2 < t``.
    """
    if not (s > -1 and r > 0 and t > 0 and r + t - s - 2 > 0 and r < s + 2 < t):
        raise ValueError(
            f"parameters (s={s}, r={r}, t={t}) violate s>-1, r,t>0, r+t-s-2>0, r<s+2<t")
    a = complex(a)
    b = complex(b)
    if abs(a) >= 1 or abs(b) >= 1:
        raise ValueError("a and b must lie in the open disk")

    def density(z):
        return np.abs(1 - np.conj(a) * z) ** -r * np.abs(1 - np.conj(b) * z) ** -t

    foci = tuple(float(np.angle(c)) for c in (a, b) if abs(c) >= 0.5)
    lhs = disk_integral(WeightedIntegrand(density, s, foci), spec)
    rhs = 1.0 / (abs(1 - np.conj(a) * b) ** r * (1 - abs(b) ** 2) ** (t - s - 2))
    return lhs.value / rhs


def monte_carlo_integral(density, gamma=0.0, n=1_000_000, seed=0, batch=250_000):
    """Plain Monte-Carlo estimate of ``int_D density (1-|z|^2)^gamma dA``.

    Uniform area samples; returns ``(estimate, standard_error)``.
    """
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n:
        m = min(batch, n - done)
        rad = np.sqrt(rng.random(m))
        z = rad * np.exp(1j * TWO_PI * rng.random(m))
        v = np.asarray(density(z), dtype=float) * (1 - rad ** 2) ** gamma
        total += v.sum()
        total_sq += (v * v).sum()
        done += m
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    return mean, math.sqrt(var / n)
