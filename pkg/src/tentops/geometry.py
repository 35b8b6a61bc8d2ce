"""Metrics, approach regions, Carleson boxes and lattices on the unit disk.

Points of the disk are plain Python/numpy complex numbers.  Every function
broadcasts over numpy arrays.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from . import kernels

DEFAULT_APERTURE = 1.0


def _wrap(angle):
    """Map angles to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(angle, dtype=float), 2 * np.pi)


def mobius(a, z):
    """The disk automorphism ``z -> (a - z) / (1 - conj(a) z)``."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    return (a - z) / (1 - np.conj(a) * z)


def pseudo_hyperbolic(z, w):
    """rho(z, w) = |z - w| / |1 - conj(w) z|, a value in [0, 1)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = np.abs(z - w) / np.abs(1 - np.conj(w) * z)
    return float(out) if out.ndim == 0 else out


def hyperbolic(z, w):
    """beta(z, w) = atanh(rho(z, w))."""
    rho = np.asarray(pseudo_hyperbolic(z, w))
    out = np.arctanh(rho)
    return float(out) if out.ndim == 0 else out


def in_nontangential(z, eta, zeta=DEFAULT_APERTURE):
    """Membership in Gamma_zeta(eta) = {|z - eta| < zeta (1 - |z|^2)}.

    ``eta`` must lie on the unit circle and ``zeta > 1/2``.
    """
    if zeta <= 0.5:
        raise ValueError(f"aperture must exceed 1/2, got {zeta}")
    z = np.asarray(z, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    if np.any(np.abs(np.abs(eta) - 1.0) > 1e-12):
        raise ValueError("eta must lie on the unit circle")
    out = np.abs(z - eta) < zeta * (1 - np.abs(z) ** 2)
    return bool(out) if out.ndim == 0 else out


def in_carleson_box(u, z):
    """Membership of ``z`` in the Carleson box S(u); S(0) is the whole disk.

    S(r e^{i theta}) = {lam e^{it}: |t - theta| <= (1 - r)/2, lam >= r}.
    """
    u = np.asarray(u, dtype=complex)
    z = np.asarray(z, dtype=complex)
    r = np.abs(u)
    d = _wrap(np.angle(z) - np.angle(u))
    inside = (np.abs(z) >= r) & (np.abs(d) <= 0.5 * (1 - r))
    out = np.where(r == 0, np.abs(z) < 1, inside)
    return bool(out) if out.ndim == 0 else out


def in_hyperbolic_disk(center, r, z):
    """Membership in D(center, r) = {beta(center, z) < r}."""
    if r <= 0:
        raise ValueError("radius must be positive")
    out = np.asarray(hyperbolic(center, z)) < r
    return bool(out) if out.ndim == 0 else out


def hyperbolic_disk_euclidean(center, r):
    """Euclidean center and radius of D(center, r)."""
    c = complex(center)
    s = math.tanh(r)
    den = 1 - s * s * abs(c) ** 2
    return c * (1 - s * s) / den, s * (1 - abs(c) ** 2) / den


def is_separated(nodes, tau):
    """True when beta(a_j, a_k) >= tau for every pair j != k."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    nodes = np.asarray(nodes, dtype=complex).ravel()
    if nodes.size < 2:
        return True
    rho = kernels.min_pairwise_pseudo_hyperbolic(nodes)
    return bool(np.arctanh(min(rho, 1.0)) >= tau)


@dataclass(frozen=True)
class Lattice:
    """A finite piece of an (r, kappa)-lattice, nodes with |a_j| <= cap."""

    nodes: np.ndarray
    r: float
    kappa: float
    cap: float = field(default=1.0)

    def __len__(self):
        return len(self.nodes)

    def to_dict(self, x=None):
        out = {
            "r": self.r,
            "kappa": self.kappa,
            "cap": self.cap,
            "nodes": [[float(a.real), float(a.imag)] for a in self.nodes],
        }
        if x is not None:
            x = np.asarray(x, dtype=complex)
            if x.shape != self.nodes.shape:
                raise ValueError("sequence length does not match the lattice")
            out["x"] = [[float(v.real), float(v.imag)] for v in x]
        return out

    def to_json(self, x=None):
        return json.dumps(self.to_dict(x), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        nodes = np.array([complex(re, im) for re, im in data["nodes"]], dtype=complex)
        return cls(nodes=nodes, r=float(data["r"]), kappa=float(data["kappa"]),
                   cap=float(data.get("cap", 1.0)))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _ring_count(rho, min_rho):
    """Largest N such that N equispaced points on |z| = rho are min_rho apart."""
    if rho == 0:
        return 1
    n = max(1, int(math.ceil(2 * math.pi * rho / max(min_rho * (1 - rho * rho), 1e-300))) + 2)
    while n > 1:
        phi = 2 * math.pi / n
        e = complex(math.cos(phi), math.sin(phi))
        if abs(rho - rho * e) / abs(1 - rho * rho * e) >= min_rho:
            return n
        n -= 1
    return 1


def generate_lattice(r, kappa, radial_cap, *, certify_samples=10_000, seed=0):
    """Annular (r, kappa)-lattice truncated to ``|a_j| <= radial_cap``.

    Rings sit at hyperbolic radii ``m * delta`` with ``delta >= 2 kappa`` chosen
    so that the outermost ring lies exactly at ``radial_cap``; each ring
    carries as many equispaced nodes as the separation allows, alternate rings
    are staggered by half a step.  The result is certified: separation
    exhaustively, covering of ``{|z| <= radial_cap}`` on ``certify_samples``
    uniform samples.  Raises ``ValueError`` if either check fails.
    """
    if not r > kappa > 0:
        raise ValueError(f"need r > kappa > 0, got r={r}, kappa={kappa}")
    if not 0 < radial_cap < 1:
        raise ValueError("radial_cap must lie in (0, 1)")
    sep = 2 * kappa * (1 + 1e-12)
    s_cap = math.atanh(radial_cap)
    rings = int(math.floor(s_cap / sep))
    nodes = [0j]
    if rings > 0:
        delta = s_cap / rings
        min_rho = math.tanh(sep)
        for m in range(1, rings + 1):
            rho = math.tanh(m * delta) if m < rings else radial_cap
            n = _ring_count(rho, min_rho)
            offset = (math.pi / n) * (m % 2)
            ang = offset + 2 * math.pi * np.arange(n) / n
            nodes.extend(rho * np.exp(1j * ang))
    lat = Lattice(nodes=np.asarray(nodes, dtype=complex), r=float(r),
                  kappa=float(kappa), cap=float(radial_cap))
    if not is_separated(lat.nodes, 2 * kappa):
        raise ValueError("constructed nodes are not 2*kappa separated")
    if certify_samples:
        worst = covering_radius(lat, certify_samples, seed=seed)
        if worst >= r:
            raise ValueError(
                f"annular construction does not cover: worst beta {worst:.4f} >= r={r}; "
                "increase r or decrease kappa")
    return lat


def uniform_disk_samples(n, radius=1.0, seed=0):
    """``n`` points uniformly distributed (area measure) in ``{|z| <= radius}``."""
    rng = np.random.default_rng(seed)
    rad = radius * np.sqrt(rng.random(n))
    ang = 2 * np.pi * rng.random(n)
    return rad * np.exp(1j * ang)


def covering_radius(lattice, samples=10_000, seed=0):
    """Largest hyperbolic distance from a sampled point of ``{|z| <= cap}`` to the nodes."""
    z = uniform_disk_samples(samples, lattice.cap, seed=seed)
    rho = kernels.min_pseudo_hyperbolic(z, lattice.nodes)
    return float(np.arctanh(rho.max()))
