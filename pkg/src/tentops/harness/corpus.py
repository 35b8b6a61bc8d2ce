"""The standard function corpus and the symbol suites.

Corpus (12 functions, depends on the source space through s0 = (alpha+2)/p):

    const, z, z4                    1, z, z^4
    k0.5, k0.9, k0.99               (1 - a z)^(-s0)
    k0.5_s1, k0.9i_s1               (1 - conj(a) z)^(-s1), s1 = s0 + 1/2
    log0.9, log-0.99                log(1/(1 - conj(a) z))
    syn1, syn2                      atomic syntheses of seeded random
                                    sequences on a 15-node lattice

Symbol suites, for a given parameter set with symbol order m and critical
exponent c (see criteria.critical_exponent):

    polynomial   g with polynomial g^(m), bounded and compact
    critical     g^(m) = (1 - z)^(-c): bounded, not compact
    unbounded    g^(m) = (1 - z)^(-c - 1/2)
"""

import math

import numpy as np

from ..atomic import synthesize
from ..criteria import critical_exponent, symbol_order
from ..funcmodel import AnalyticFn
from ..geometry import generate_lattice

CORPUS_VERSION = 1
SMALL_LATTICE = (0.5, 0.2, 0.6)


def standard_corpus(p, alpha, seed=0):
    s0 = (alpha + 2) / p
    s1 = s0 + 0.5
    out = [
        ("const", AnalyticFn.constant(1.0)),
        ("z", AnalyticFn.poly([0, 1])),
        ("z4", AnalyticFn.poly([0, 0, 0, 0, 1])),
        ("k0.5", AnalyticFn.kernel(0.5, s0)),
        ("k0.9", AnalyticFn.kernel(0.9, s0)),
        ("k0.99", AnalyticFn.kernel(0.99, s0)),
        ("k0.5_s1", AnalyticFn.kernel(0.5, s1)),
        ("k0.9i_s1", AnalyticFn.kernel(0.9j, s1)),
        ("log0.9", AnalyticFn.log(0.9)),
        ("log-0.99", AnalyticFn.log(-0.99)),
    ]
    Z = generate_lattice(*SMALL_LATTICE)
    rng = np.random.default_rng(seed)
    for name in ("syn1", "syn2"):
        x = rng.standard_normal(len(Z)) + 1j * rng.standard_normal(len(Z))
        out.append((name, synthesize(x, Z, p=p, alpha=alpha)))
    return out


def primitive(c, m, a=1.0):
    """A function whose m-th derivative is ``(1 - a z)^(-c)``."""
    if m == 0:
        return AnalyticFn.kernel(a, c)
    if c > m:
        coeff = 1.0 / (a ** m * math.prod(c - i for i in range(1, m + 1)))
        return AnalyticFn.kernel(a, c - m, coeff)
    if c == m == 1:
        return AnalyticFn.log(a, 1.0 / a)
    raise ValueError(f"no closed-form primitive of order {m} for exponent {c}")


def poly_primitive(coeffs, m):
    """Polynomial whose m-th derivative has Taylor coefficients ``coeffs``."""
    out = [0.0] * m + [float(c) for c in coeffs]
    for j in range(m, len(out)):
        out[j] /= math.prod(range(j - m + 1, j + 1))
    return AnalyticFn.poly(out)


def polynomial_suite(params):
    """For m = 1 these are z, z + z^2 and z^2."""
    m = symbol_order(params)
    return [(f"poly{i}", poly_primitive(c, m))
            for i, c in enumerate(([1], [1, 2], [0, 2]), 1)]


def interior_symbol(params):
    m = symbol_order(params)
    return ("inner0.5", primitive(m + 1.5, m, 0.5))


def critical_symbol(params):
    c = critical_exponent(params)
    return (f"crit{c:g}", primitive(c, symbol_order(params)))


def unbounded_symbol(params):
    c = critical_exponent(params) + 0.5
    return (f"unb{c:g}", primitive(c, symbol_order(params)))


def bounded_suite(params):
    return polynomial_suite(params) + [interior_symbol(params), critical_symbol(params)]
