"""Generalized integration operators and the norms of their images.

``T_g^{n,k} f = I^n(f^(k) g^(n-k))`` and ``S_g^{n,k} f = I^n(f^(n-k) g^(k))``,
where ``I`` is integration from 0.  Image norms never integrate anything
numerically: the image has vanishing jet of order ``n`` and its ``n``-th
derivative is the product of the two factors, which is all the
Littlewood-Paley norm needs.
"""

from dataclasses import dataclass

import numpy as np

from .funcmodel import DEFAULT_DEGREE, derivative, integrate_n, product
from .quadrature import QuadratureSpec, WeightedIntegrand
from .tentnorm import SpaceParams, kernel_test, lp_norm


def _check_nk(n, k):
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if int(k) != k or not 0 <= k < n:
        raise ValueError("k must satisfy 0 <= k < n")


def apply_T(f, g, n, k, degree=DEFAULT_DEGREE):
    _check_nk(n, k)
    return integrate_n(product(derivative(f, k), derivative(g, n - k), degree), n, degree)


def apply_S(f, g, n, k, degree=DEFAULT_DEGREE):
    _check_nk(n, k)
    return integrate_n(product(derivative(f, n - k), derivative(g, k), degree), n, degree)


def apply(f, g, params, degree=DEFAULT_DEGREE):
    op = apply_T if params.op_kind == "T" else apply_S
    return op(f, g, params.n, params.k, degree)


def factor_orders(params):
    """Derivative orders ``(of f, of g)`` in the image's n-th derivative."""
    if params.op_kind == "T":
        return params.k, params.n - params.k
    return params.n - params.k, params.k


def default_image_t(params):
    """Kernel-test exponent for image norms.

    At least ``beta + 3``; raised so that the kernel test still sees the
    concentration of the test functions ``f_u`` near ``u`` (their factor
    ``|f^(j)|^q`` behaves like ``|1 - conj(u) z|^(-q((alpha+2)/p + j))``).
    """
    j = factor_orders(params)[0]
    return max(params.beta + 3, params.q * (params.source_exponent + j) + 1)


def image_measure(f, g, params):
    """``|F G|^q (1-|z|^2)^(n q + beta + 1) dA`` with ``F, G`` the two factors."""
    jf, jg = factor_orders(params)
    F = derivative(f, jf)
    G = derivative(g, jg)
    if F.is_zero() or G.is_zero():
        return None
    q = params.q
    foci = tuple(sorted(set(f.foci()) | set(g.foci())))
    return WeightedIntegrand(lambda z: np.abs(F(z) * G(z)) ** q,
                             params.n * q + params.beta + 1, foci)


def image_lp_norm(f, g, params, t=None, spec=QuadratureSpec(), *, a_grid=None, full=False,
                  estimate_error=True):
    """Littlewood-Paley norm of ``T_g f`` (or ``S_g f``) in ``AT_q^inf(beta)``."""
    t = default_image_t(params) if t is None else float(t)
    mu = image_measure(f, g, params)
    if mu is None:
        return (0.0, 0.0) if full else 0.0
    kt = kernel_test(mu, t, a_grid, spec, estimate_error=estimate_error)
    val = kt.value ** (1 / params.q)
    if full:
        err = val * kt.error / max(kt.value, 1e-300) / params.q
        return val, err
    return val


@dataclass(frozen=True)
class RatioRow:
    f_id: str
    source: float
    image: float

    @property
    def ratio(self):
        return self.image / self.source

    def to_dict(self):
        return {"f": self.f_id, "source": self.source, "image": self.image,
                "ratio": self.ratio}


@dataclass(frozen=True)
class RatioTable:
    value: float
    rows: tuple

    def to_dict(self):
        return {"max_ratio": self.value, "rows": [r.to_dict() for r in self.rows]}

    def csv_rows(self, g_id, params):
        ptxt = ";".join(f"{k}={v}" for k, v in sorted(params.to_dict().items()))
        return [(r.f_id, g_id, ptxt, f"{r.source:.17g}", f"{r.image:.17g}",
                 f"{r.ratio:.17g}") for r in self.rows]


def empirical_ratio(g, params, corpus, t=None, spec=QuadratureSpec(), *,
                    source_t=None, source_norms=None):
    """``max_f image_lp_norm(f, g) / lp_norm(f)`` over ``corpus``.

    ``corpus`` is a sequence of functions or of ``(id, function)`` pairs.
    ``source_norms`` may supply precomputed source norms keyed by id.
    """
    items = list(corpus.items()) if isinstance(corpus, dict) else list(corpus)
    if not items:
        raise ValueError("empty corpus")
    if not isinstance(items[0], tuple):
        items = [(f"f{i}", f) for i, f in enumerate(items)]
    rows = []
    for fid, f in items:
        if source_norms is not None and fid in source_norms:
            src = source_norms[fid]
        else:
            src = lp_norm(f, params.p, params.alpha, 1, source_t, spec,
                          estimate_error=False)
        if not src > 0:
            raise ValueError(f"corpus function {fid} has zero source norm")
        img = image_lp_norm(f, g, params, t, spec, estimate_error=False)
        rows.append(RatioRow(fid, float(src), float(img)))
    return RatioTable(max(r.ratio for r in rows), tuple(rows))


def test_fn_ratio(f, g, params, t=None, spec=QuadratureSpec(), source_t=None):
    """Image-to-source ratio for a single function (used on test families)."""
    src = lp_norm(f, params.p, params.alpha, 1, source_t, spec, estimate_error=False)
    return image_lp_norm(f, g, params, t, spec, estimate_error=False) / src


test_fn_ratio.__test__ = False

