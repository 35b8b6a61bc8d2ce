"""Pure numpy versions of the compiled loops in ``_core.pyx``.

Same signatures and semantics.  Work is chunked so peak memory stays around
a few tens of megabytes regardless of problem size.
"""

import numpy as np

_CHUNK = 1 << 21


def _rows_per_chunk(n):
    return max(1, _CHUNK // max(n, 1))


def kernel_sums(zr, zi, w, ar, ai, t):
    z = np.asarray(zr) + 1j * np.asarray(zi)
    a = np.asarray(ar) + 1j * np.asarray(ai)
    w = np.asarray(w)
    out = np.zeros(a.shape[0])
    step = _rows_per_chunk(z.shape[0])
    e = -(t + 1.0) / 2.0
    for lo in range(0, a.shape[0], step):
        ab = a[lo:lo + step, None]
        d = 1.0 - np.conj(ab) * z[None, :]
        vals = (d.real ** 2 + d.imag ** 2) ** e
        out[lo:lo + step] = (1.0 - np.abs(ab[:, 0]) ** 2) ** t * (vals @ w)
    return out


def box_sums(zabs, zarg, w, uabs, uarg):
    zabs = np.asarray(zabs)
    zarg = np.asarray(zarg)
    w = np.asarray(w)
    uabs = np.asarray(uabs)
    uarg = np.asarray(uarg)
    out = np.zeros(uabs.shape[0])
    step = _rows_per_chunk(zabs.shape[0])
    for lo in range(0, uabs.shape[0], step):
        rho = uabs[lo:lo + step, None]
        phi = uarg[lo:lo + step, None]
        d = np.fmod(zarg[None, :] - phi, 2 * np.pi)
        d = np.where(d > np.pi, d - 2 * np.pi, d)
        d = np.where(d < -np.pi, d + 2 * np.pi, d)
        inside = (zabs[None, :] >= rho) & (np.abs(d) <= 0.5 * (1.0 - rho))
        inside |= rho == 0.0
        out[lo:lo + step] = inside @ w
    return out


def atom_sum(zr, zi, br, bi, s, cr, ci):
    z = np.asarray(zr) + 1j * np.asarray(zi)
    out = np.zeros(z.shape[0], dtype=complex)
    for bre, bim, sj, cre, cim in zip(br, bi, s, cr, ci):
        base = 1.0 - (bre - 1j * bim) * z
        out += (cre + 1j * cim) * np.exp(-sj * np.log(base))
    return out


def min_pseudo_hyperbolic(zr, zi, nr, ni):
    z = np.asarray(zr) + 1j * np.asarray(zi)
    nodes = np.asarray(nr) + 1j * np.asarray(ni)
    out = np.empty(z.shape[0])
    step = _rows_per_chunk(nodes.shape[0])
    for lo in range(0, z.shape[0], step):
        zb = z[lo:lo + step, None]
        num = np.abs(zb - nodes[None, :]) ** 2
        den = np.abs(1.0 - np.conj(nodes[None, :]) * zb) ** 2
        out[lo:lo + step] = np.sqrt(np.minimum((num / den).min(axis=1), 1.0))
    return out


def min_pairwise_pseudo_hyperbolic(nr, ni):
    nodes = np.asarray(nr) + 1j * np.asarray(ni)
    m = nodes.shape[0]
    best = 1.0
    step = _rows_per_chunk(m)
    for lo in range(0, m, step):
        blk = nodes[lo:lo + step, None]
        num = np.abs(blk - nodes[None, :]) ** 2
        den = np.abs(1.0 - np.conj(nodes[None, :]) * blk) ** 2
        v = num / den
        rows = np.arange(lo, min(lo + step, m))
        # only j > i
        mask = np.arange(m)[None, :] > rows[:, None]
        if mask.any():
            best = min(best, float(v[mask].min()))
    return float(np.sqrt(best))
