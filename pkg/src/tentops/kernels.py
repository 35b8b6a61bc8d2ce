"""Hot loops, compiled when available.

The extension ``tentops._core`` is used unless it failed to build or the
environment variable ``TENTOPS_PURE_PYTHON`` is set to a non-empty value, in
which case the numpy implementations from ``tentops._pycore`` are used.
``BACKEND`` names the active choice.
"""

import os

import numpy as np

from . import _pycore

if os.environ.get("TENTOPS_PURE_PYTHON"):
    _impl = _pycore
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pycore
        BACKEND = "python"


def _f64(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def _split(z):
    z = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    return _f64(z.real), _f64(z.imag)


def kernel_sums(z, w, a, t, impl=None):
    """Weighted Forelli-Rudin kernel sums.

    Returns, for every ``a_k``, the value
    ``(1-|a_k|^2)^t * sum_i w_i / |1 - conj(a_k) z_i|^(t+1)``.
    """
    impl = impl or _impl
    zr, zi = _split(z)
    ar, ai = _split(a)
    return impl.kernel_sums(zr, zi, _f64(w), ar, ai, float(t))


def box_sums(z, w, u, impl=None):
    """Sum of ``w`` over the points of ``z`` in each Carleson box ``S(u_k)``."""
    impl = impl or _impl
    z = np.asarray(z, dtype=complex).ravel()
    u = np.asarray(u, dtype=complex).ravel()
    return impl.box_sums(_f64(np.abs(z)), _f64(np.angle(z)), _f64(w),
                         _f64(np.abs(u)), _f64(np.angle(u)))


def atom_sum(z, bases, exponents, coeffs, impl=None):
    """Evaluate ``sum_j c_j (1 - conj(b_j) z)^(-s_j)`` at every point of ``z``."""
    impl = impl or _impl
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    zr, zi = _split(z)
    br, bi = _split(bases)
    cr, ci = _split(coeffs)
    out = impl.atom_sum(zr, zi, br, bi, _f64(exponents), cr, ci)
    return np.asarray(out).reshape(shape)


def min_pseudo_hyperbolic(z, nodes, impl=None):
    impl = impl or _impl
    zr, zi = _split(z)
    nr, ni = _split(nodes)
    return impl.min_pseudo_hyperbolic(zr, zi, nr, ni)


def min_pairwise_pseudo_hyperbolic(nodes, impl=None):
    impl = impl or _impl
    nr, ni = _split(nodes)
    return float(impl.min_pairwise_pseudo_hyperbolic(nr, ni))
