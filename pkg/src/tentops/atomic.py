"""Atomic synthesis, discretization, sequence multipliers and measure truncation."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .funcmodel import AnalyticFn, KernelAtom
from .quadrature import QuadratureSpec, build_mesh
from .tentnorm import DecayProfile, annular_grid, default_radii, seq_tent_norm


def default_L(p):
    return max(1.0, 1.0 / p) + 1.0


def _check_len(x, Z):
    x = np.asarray(x, dtype=complex).ravel()
    if x.shape != Z.nodes.shape:
        raise ValueError(f"sequence has {x.size} entries, lattice has {len(Z)} nodes")
    return x


def synthesize(x, Z, L=None, p=2.0, alpha=0.0):
    """``sum_j x_j (1-|a_j|^2)^L / (1 - conj(a_j) z)^(L + (alpha+2)/p)``."""
    if not p > 0 or not alpha > -2:
        raise ValueError("need p > 0 and alpha > -2")
    L = default_L(p) if L is None else float(L)
    if not L > max(1.0, 1.0 / p):
        raise ValueError(f"L = {L} must exceed max(1, 1/p) = {max(1.0, 1.0 / p)}")
    x = _check_len(x, Z)
    s = L + (alpha + 2) / p
    const = 0j
    atoms = []
    for a, xj in zip(Z.nodes, x):
        if xj == 0:
            continue
        c = xj * (1 - abs(a) ** 2) ** L
        if a == 0:
            const += c
        else:
            atoms.append(KernelAtom(complex(a), s, complex(c)))
    return AnalyticFn(tuple(atoms), (), [const])


def discretize(f, Z, p, alpha):
    """``f(a_j) (1-|a_j|^2)^((alpha+2)/p)``."""
    a = Z.nodes
    return np.asarray(f(a), dtype=complex) * (1 - np.abs(a) ** 2) ** ((alpha + 2) / p)


def multiplier_apply(y, x):
    y = np.asarray(y, dtype=complex).ravel()
    x = np.asarray(x, dtype=complex).ravel()
    if y.shape != x.shape:
        raise ValueError("multiplier and sequence differ in length")
    return y * x


@dataclass(frozen=True)
class MultiplierCheck:
    ratio: float            # max over the suite of ||M_y x||_q / ||x||_p
    y_norm: float           # ||y|| in T_{pq/(p-q)}
    ratios: tuple

    def to_dict(self):
        return {"ratio": self.ratio, "y_norm": self.y_norm, "ratios": list(self.ratios)}


def multiplier_bound_check(y, Z, p, q, x_suite, u_grid=None):
    """Compare ``||M_y||`` on ``x_suite`` with the Hoelder bound ``||y||_{T_{pq/(p-q)}}``."""
    if not 0 < q < p:
        raise ValueError("need 0 < q < p")
    y = _check_len(y, Z)
    s = p * q / (p - q)
    ratios = []
    for x in x_suite:
        x = _check_len(x, Z)
        nx = seq_tent_norm(x, Z, p, u_grid)
        if nx == 0:
            continue
        ratios.append(seq_tent_norm(multiplier_apply(y, x), Z, q, u_grid) / nx)
    if not ratios:
        raise ValueError("suite has no nonzero sequence")
    return MultiplierCheck(max(ratios), seq_tent_norm(y, Z, s, u_grid), tuple(ratios))


def truncation_check(F, t, radii=None, spec=QuadratureSpec(), a_grid=None):
    """Kernel-test sup of the tail measure ``chi_{|z| >= r} dmu`` for each ``r``.

    One mesh (with radial breaks at every ``r``) and one a-grid serve all
    radii, so the profile is non-increasing by construction.
    """
    radii = default_radii(spec.depth) if radii is None else tuple(radii)
    if any(not 0 < r < 1 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must increase inside (0, 1)")
    a = annular_grid(F.foci, depth=spec.depth) if a_grid is None else np.asarray(a_grid, dtype=complex)
    mesh = build_mesh(spec, F.weight_exponent, F.foci, radial_extra=radii)
    w = mesh.w * np.broadcast_to(np.asarray(F.density(mesh.z), dtype=float), mesh.z.shape)
    mod = np.abs(mesh.z)
    vals = []
    for r in radii:
        sel = mod >= r
        vals.append(float(kernels.kernel_sums(mesh.z[sel], w[sel], a, t).max()) if np.any(sel) else 0.0)
    return DecayProfile(radii, tuple(vals))
