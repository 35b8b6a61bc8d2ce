"""Boundedness and compactness criteria for T_g^{n,k} and S_g^{n,k}.

For ``p <= q`` the governing quantity is the weighted supremum

    U_g = sup |g^(m)(z)| (1 - |z|^2)^e,

and for ``q < p`` it is the membership of ``g^(m)`` in ``AT^inf_s(lambda)`` with
``s = pq/(p-q)`` and ``lambda = (p beta - q alpha)/(p - q)``.  The symbol order
is ``m = n - k`` for T and ``m = k`` for S (so ``S_g^{n,0}`` uses ``g``
itself), and ``e = m + (beta+2)/q - (alpha+2)/p``.

Finiteness and vanishing cannot be decided from samples.  Classification
reads the shape of a profile of annulus maxima at radii ``1 - 2^-m``:

* ``not_bounded``: strictly increasing over the last 4 annuli and the last
  value at least twice the first;
* ``bounded``: non-increasing over the last 4 annuli, up to a relative
  plateau tolerance of 1%;
* ``compact``: final value at most 5% of the maximum; ``not_compact`` at
  least 50%.

Anything else is ``inconclusive``.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from .funcmodel import derivative, test_fn_boundedness, test_fn_compactness
from .operators import empirical_ratio, test_fn_ratio
from .quadrature import QuadratureSpec, WeightedIntegrand
from .tentnorm import DecayProfile, annular_grid, default_radii, kernel_test

PLATEAU_TOL = 0.01
GROWTH_FACTOR = 2.0
COMPACT_FRACTION = 0.05
NOT_COMPACT_FRACTION = 0.5

KINDS = {
    ("T", "le"): ("Ug", "Ug_vanishing"),
    ("T", "gt"): ("tent_membership", "tent_little_membership"),
    ("S", "le"): ("Sg_sup", "Sg_vanishing"),
    ("S", "gt"): ("Sg_membership", "Sg_little"),
}


def symbol_order(params):
    return params.n - params.k if params.op_kind == "T" else params.k


def symbol(g, params):
    """The function whose size governs the operator: ``g^(m)``."""
    return derivative(g, symbol_order(params))


def exponent_e(params):
    return symbol_order(params) + (params.beta + 2) / params.q - (params.alpha + 2) / params.p


def lambda_param(params):
    """``(p beta - q alpha)/(p - q)`` for ``q < p``; rejects values ``<= -2``."""
    p, q = params.p, params.q
    if not q < p:
        raise ValueError("lambda is defined only for q < p")
    lam = (p * params.beta - q * params.alpha) / (p - q)
    if lam <= -2:
        raise ValueError(f"lambda = {lam:g} <= -2 violates the standing hypothesis")
    return lam


def membership_index(params):
    """``s = pq/(p - q)``."""
    p, q = params.p, params.q
    if not q < p:
        raise ValueError("membership index needs q < p")
    return p * q / (p - q)


def critical_exponent(params):
    """``c`` such that ``g^(m) = (1 - z)^(-c)`` sits exactly at the criterion's threshold."""
    if params.p <= params.q:
        return exponent_e(params)
    s = membership_index(params)
    return symbol_order(params) + (lambda_param(params) + 2) / s


# ----------------------------------------------------------------------------
# p <= q: weighted supremum

def _sup_grid(foci, depth=10, n_angles=64):
    radii = [0.0] + [1 - 2.0 ** (-j / 4) for j in range(1, 4 * depth + 1)]
    ang = np.union1d(2 * np.pi * np.arange(n_angles) / n_angles,
                     np.mod(np.asarray(foci, dtype=float), 2 * np.pi))
    pts = [np.zeros(1, dtype=complex)]
    pts += [r * np.exp(1j * ang) for r in radii[1:]]
    return np.concatenate(pts)


def _ring_angles(r, foci):
    n = int(min(8192, max(64, math.ceil(8 * np.pi / (1 - r)))))
    return np.union1d(2 * np.pi * np.arange(n) / n, np.mod(np.asarray(foci, dtype=float), 2 * np.pi))


def _weighted_sup_values(h, e, z):
    return np.abs(h(z)) * (1 - np.abs(z) ** 2) ** e


def _require_le(params):
    if params.p > params.q:
        raise ValueError("U_g applies when p <= q")


def U_g(g, params, z_grid=None, *, depth=10):
    """``max_z |g^(m)(z)| (1-|z|^2)^e`` over ``z_grid`` (default: 40 rings toward 1 - 2^-depth)."""
    _require_le(params)
    h = symbol(g, params)
    if h.is_zero():
        return 0.0
    z = _sup_grid(g.foci(), depth) if z_grid is None else np.asarray(z_grid, dtype=complex).ravel()
    return float(_weighted_sup_values(h, exponent_e(params), z).max())


def U_g_profile(g, params, radii=None):
    """Maxima of ``|g^(m)|(1-|z|^2)^e`` on the circles ``|z| = r``."""
    _require_le(params)
    radii = default_radii() if radii is None else tuple(radii)
    h = symbol(g, params)
    if h.is_zero():
        return DecayProfile(radii, tuple(0.0 for _ in radii))
    e = exponent_e(params)
    vals = [float(_weighted_sup_values(h, e, r * np.exp(1j * _ring_angles(r, g.foci()))).max())
            for r in radii]
    return DecayProfile(radii, tuple(vals))


# ----------------------------------------------------------------------------
# q < p: tent-space membership

def membership_measure(g, params):
    s = membership_index(params)
    lam = lambda_param(params)
    m = symbol_order(params)
    h = derivative(g, m)
    if h.is_zero():
        return None
    return WeightedIntegrand(lambda z: np.abs(h(z)) ** s, m * s + lam + 1, g.foci())


def default_membership_t(params):
    return lambda_param(params) + 3


def membership_value(g, params, t=None, spec=QuadratureSpec(), *, full=False):
    """Kernel test of ``|g^(m)|^s (1-|z|^2)^(m s + lambda + 1)`` to the power ``1/s``."""
    mu = membership_measure(g, params)
    if mu is None:
        return (0.0, 0.0) if full else 0.0
    s = membership_index(params)
    t = default_membership_t(params) if t is None else float(t)
    kt = kernel_test(mu, t, None, spec)
    val = kt.value ** (1 / s)
    if full:
        return val, val * kt.error / max(kt.value, 1e-300) / s
    return val


def membership_profile(g, params, t=None, radii=None, spec=QuadratureSpec()):
    """Per-annulus kernel-test maxima of the membership measure, to the power ``1/s``."""
    radii = default_radii(spec.depth) if radii is None else tuple(radii)
    mu = membership_measure(g, params)
    if mu is None:
        return DecayProfile(radii, tuple(0.0 for _ in radii))
    s = membership_index(params)
    t = default_membership_t(params) if t is None else float(t)
    a = annular_grid(mu.foci, radii=radii, origin=False)
    kt = kernel_test(mu, t, a, spec, estimate_error=False)
    return DecayProfile(kt.profile.radii, tuple(v ** (1 / s) for v in kt.profile.values))


# ----------------------------------------------------------------------------
# classification

def boundedness_from_profile(values):
    v = [float(x) for x in values]
    if len(v) < 4:
        return "inconclusive"
    last = v[-4:]
    if all(b > a for a, b in zip(last, last[1:])) and v[-1] >= GROWTH_FACTOR * v[0]:
        return "not_bounded"
    if all(b <= a * (1 + PLATEAU_TOL) for a, b in zip(last, last[1:])):
        return "bounded"
    return "inconclusive"


def compactness_from_profile(values):
    v = [float(x) for x in values]
    peak = max(v)
    if peak == 0 or v[-1] <= COMPACT_FRACTION * peak:
        return "compact"
    if v[-1] >= NOT_COMPACT_FRACTION * peak:
        return "not_compact"
    return "inconclusive"


@dataclass
class Verdict:
    g: list
    params: dict
    criterion: str
    compactness_criterion: str
    value: float
    profile: DecayProfile
    classification: str
    compactness: str
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return _jsonable({"g": self.g, "params": self.params, "criterion": self.criterion,
                "compactness_criterion": self.compactness_criterion,
                "value": self.value, "profile": self.profile.to_dict(),
                "classification": self.classification, "compactness": self.compactness,
                "evidence": self.evidence, "notes": list(self.notes)})

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)


def _jsonable(x):
    """Non-finite floats become strings so the output is strict JSON."""
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    if isinstance(x, np.integer):
        return int(x)
    return x


def criterion_kinds(params):
    return KINDS[(params.op_kind, "le" if params.p <= params.q else "gt")]


def criterion_value(g, params, t=None, spec=QuadratureSpec()):
    if params.p <= params.q:
        return U_g(g, params, depth=spec.depth)
    return membership_value(g, params, t, spec)


def criterion_profile(g, params, t=None, radii=None, spec=QuadratureSpec()):
    if params.p <= params.q:
        return U_g_profile(g, params, radii)
    return membership_profile(g, params, t, radii, spec)


def singular_direction(g):
    """Direction of the symbol's strongest boundary feature (angle 0 if none)."""
    foci = g.foci()
    return foci[0] if foci else 0.0


def compactness_ratios(g, params, ms=range(1, 9), t=None, spec=QuadratureSpec()):
    """Image ratios on ``f_j`` with ``z_j = (1 - 2^-m) e^{i phi}``."""
    phi = singular_direction(g)
    return [test_fn_ratio(test_fn_compactness((1 - 2.0 ** -m) * np.exp(1j * phi),
                                              params.p, params.alpha), g, params, t, spec)
            for m in ms]


def necessity_ratios(g, params, ms=range(2, 9), t=None, spec=QuadratureSpec()):
    """Image ratios on ``f_u`` with ``u = (1 - 2^-m) e^{i phi}``."""
    phi = singular_direction(g)
    return [test_fn_ratio(test_fn_boundedness((1 - 2.0 ** -m) * np.exp(1j * phi),
                                              params.p, params.alpha), g, params, t, spec)
            for m in ms]


def classify(g, params, corpus=None, *, t=None, spec=QuadratureSpec(), radii=None,
             test_families=True, source_norms=None):
    """Criterion value, profile, classification and supporting evidence.

    ``corpus`` (functions or ``(id, f)`` pairs) adds an empirical ratio table;
    ``test_families`` adds image ratios on ``f_u`` (when not bounded) or
    ``f_j`` (compactness decay).
    """
    kind, vkind = criterion_kinds(params)
    if params.p > params.q:
        lambda_param(params)  # raises on the excluded range
    radii = default_radii(spec.depth) if radii is None else tuple(radii)
    e = exponent_e(params)
    h = symbol(g, params)
    notes = []
    evidence = {"e": e, "symbol_order": symbol_order(params)}
    if params.p > params.q:
        evidence["lambda"] = lambda_param(params)
        evidence["s"] = membership_index(params)
    if h.is_zero():
        prof = DecayProfile(radii, tuple(0.0 for _ in radii))
        return Verdict(g.to_spec(), params.to_dict(), kind, vkind, 0.0, prof,
                       "bounded", "compact", evidence, ["symbol vanishes identically"])
    if e < 0:
        notes.append("e < 0: a finite criterion would force the symbol to vanish, "
                     "so the operator is bounded only when it is zero")
        prof = criterion_profile(g, params, t, radii, spec) if params.p <= params.q else \
            DecayProfile(radii, tuple(math.inf for _ in radii))
        return Verdict(g.to_spec(), params.to_dict(), kind, vkind, math.inf, prof,
                       "not_bounded", "not_compact", evidence, notes)
    value = criterion_value(g, params, t, spec)
    prof = criterion_profile(g, params, t, radii, spec)
    bnd = boundedness_from_profile(prof.values)
    cpt = "not_compact" if bnd == "not_bounded" else compactness_from_profile(prof.values)
    if corpus is not None:
        table = empirical_ratio(g, params, corpus, None, spec, source_norms=source_norms)
        evidence["ratios"] = table.to_dict()
        if value > 0 and math.isfinite(value):
            evidence["ratio_over_criterion"] = table.value / value
    if test_families:
        if bnd == "not_bounded":
            ms = list(range(2, 9))
            evidence["necessity"] = {"m": ms, "ratio": necessity_ratios(g, params, ms, None, spec)}
        else:
            ms = list(range(1, 9))
            evidence["compactness_decay"] = {
                "m": ms, "ratio": compactness_ratios(g, params, ms, None, spec)}
    return Verdict(g.to_spec(), params.to_dict(), kind, vkind, value, prof, bnd, cpt,
                   evidence, notes)
