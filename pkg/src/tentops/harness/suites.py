"""Verification suites: one per operator criterion and one per supporting estimate.

Every suite returns a plain report dictionary with the embedded config,
named pass/fail checks, per-case values, ratio tables and decay profiles.
A case that fails numerically is recorded under ``errors`` and the suite
keeps going; any check that depended on it fails.
"""

import math

import numpy as np

from .. import criteria as cr
from ..atomic import (discretize, multiplier_bound_check, synthesize, truncation_check)
from ..funcmodel import AnalyticFn
from ..geometry import generate_lattice
from ..operators import apply_S, apply_T, default_image_t, empirical_ratio, image_measure
from ..quadrature import QuadratureError, WeightedIntegrand, forelli_rudin_check
from ..tentnorm import (DecayProfile, SpaceParams, annular_grid, default_radii, growth_ratio,
                        kernel_test, lp_norm, seq_tent_norm, seq_u_grid, tpinf_norm, tpq_norm)
from .config import Config
from .corpus import (CORPUS_VERSION, bounded_suite, critical_symbol, interior_symbol,
                     polynomial_suite, standard_corpus, unbounded_symbol)

BAND = 100.0            # comparability band C/c
REFINE_TOL = 0.15       # relative drift allowed under quadrature refinement or grid doubling
FR_TOL = 0.10           # Forelli-Rudin grid-refinement drift
GROWTH_MIN = 1.5        # necessity blow-up from m=2 to m=8
DECAY_MAX = 0.2         # compactness decay from m=1 to m=8
HOLDER_TOL = 1e-9

T_LE = SpaceParams(2, 2, 0, 0, 1, 0, "T")
T_LE2 = SpaceParams(2, 4, 0, 2, 2, 1, "T")
# f_j tends to 0 on compacts only like (1-|z_j|^2)^(1/(2p)); p = q = 1 and a heavy
# target weight keep the m = 1..8 decay of the image ratios out of the transient
T_DECAY = SpaceParams(1, 1, 0, 3, 1, 0, "T")
T_GT = (SpaceParams(2, 1, 0, 0, 1, 0, "T"), SpaceParams(4, 2, 0, 0, 1, 0, "T"))
T_GT_NEG = SpaceParams(4, 2, 1, 0, 1, 0, "T")   # lambda = -1; membership decays too slowly
                                                # to resolve compactness within 10 annuli
S_LE = SpaceParams(2, 2, 0, 2, 1, 0, "S")
S_DECAY = SpaceParams(1, 1, 0, 5, 1, 0, "S")
S_GT = (SpaceParams(2, 1, 0, 0, 1, 0, "S"), SpaceParams(4, 2, 0, 1, 1, 0, "S"))

CASE_ERRORS = (QuadratureError, FloatingPointError, ValueError, ZeroDivisionError)


def ptag(params):
    return (f"{params.op_kind}(p={params.p:g},q={params.q:g},a={params.alpha:g},"
            f"b={params.beta:g},n={params.n},k={params.k})")


class Run:
    def __init__(self, theorem_id, title, config):
        self.id = theorem_id
        self.cfg = config
        self.spec = config.spec()
        self.data = {
            "id": theorem_id, "title": title, "config": config.to_dict(),
            "quadrature": self.spec.to_dict(),
            "grids": {"annuli": list(default_radii(self.spec.depth)),
                      "a_grid": "origin + rings 1-2^-m (m<=depth), 16 angles for m<=5, foci",
                      "eta_samples": config.eta_samples},
            "corpus_version": CORPUS_VERSION,
            "checks": [], "cases": [], "profiles": {}, "tables": {}, "errors": [],
        }

    def check(self, name, passed, **detail):
        self.data["checks"].append({"name": name, "passed": bool(passed), **detail})
        return bool(passed)

    def case(self, **fields):
        self.data["cases"].append(fields)

    def profile(self, name, prof, **meta):
        self.data["profiles"][name] = {"radii": list(prof.radii), "values": list(prof.values),
                                       **meta}

    def table(self, name, columns):
        return self.data["tables"].setdefault(name, {"columns": list(columns), "rows": []})["rows"]

    def guard(self, label, fn, *args, **kw):
        try:
            return fn(*args, **kw)
        except CASE_ERRORS as exc:
            self.data["errors"].append({"case": label, "error": f"{type(exc).__name__}: {exc}"})
            return None

    def finish(self):
        checks = self.data["checks"]
        self.data["passed"] = bool(checks) and all(c["passed"] for c in checks) \
            and not self.data["errors"]
        return self.data


# ----------------------------------------------------------------------------
# shared pieces

def _corpus(run, params):
    return standard_corpus(params.p, params.alpha, run.cfg.seed)


def _source_norms(run, params, corpus, spec):
    out = {}
    for fid, f in corpus:
        v = run.guard(f"source {fid}", lp_norm, f, params.p, params.alpha, 1, run.cfg.t, spec,
                      estimate_error=False)
        if v is not None:
            out[fid] = v
    return out


def _coupling_constant(run, params, gsuite, corpus, spec, table=None):
    """``max_g max_f ratio(f, g) / criterion(g)`` and the per-g pieces."""
    src = _source_norms(run, params, corpus, spec)
    per_g = {}
    ok = len(src) == len(corpus)
    for gid, g in gsuite:
        crit = run.guard(f"criterion {gid}", cr.criterion_value, g, params, run.cfg.t, spec)
        tab = run.guard(f"ratios {gid}", empirical_ratio, g, params, corpus, run.cfg.t, spec,
                        source_t=run.cfg.t, source_norms=src)
        if crit is None or tab is None:
            ok = False
            continue
        finite = all(math.isfinite(r.ratio) for r in tab.rows) and math.isfinite(crit) and crit > 0
        ok = ok and finite
        per_g[gid] = {"criterion": crit, "max_ratio": tab.value,
                      "coupling": tab.value / crit if crit > 0 else math.inf}
        if table is not None:
            for r in tab.rows:
                table.append([gid, ptag(params), r.f_id, r.source, r.image, r.ratio, crit])
    C = max((v["coupling"] for v in per_g.values()), default=math.inf)
    return C, per_g, ok


def coupling_checks(run, label, params, gsuite, refine):
    corpus = _corpus(run, params)
    rows = run.table("ratios", ["g", "params", "f", "source", "image", "ratio", "criterion"])
    C, per_g, ok = _coupling_constant(run, params, gsuite, corpus, run.spec, rows)
    for gid, v in per_g.items():
        run.case(suite=label, params=ptag(params), g=gid, **v)
    run.check(f"{label}: criterion finite and all corpus ratios finite", ok and math.isfinite(C),
              params=ptag(params), n_symbols=len(gsuite), n_functions=len(corpus))
    run.check(f"{label}: suite-wide coupling constant", math.isfinite(C), C=C,
              params=ptag(params))
    if refine:
        Cr, _, okr = _coupling_constant(run, params, gsuite, corpus, run.spec.refined())
        drift = abs(Cr / C - 1) if math.isfinite(C) and C > 0 else math.inf
        run.check(f"{label}: coupling constant stable under refinement", okr and drift <= REFINE_TOL,
                  C=C, C_refined=Cr, drift=drift, tol=REFINE_TOL, params=ptag(params))
    return C


def classify_case(run, label, gid, g, params, bounded=None, compact=None):
    v = run.guard(f"classify {gid}", cr.classify, g, params, t=run.cfg.t, spec=run.spec,
                  test_families=False)
    if v is None:
        run.check(f"{label}: classify {gid}", False, params=ptag(params))
        return None
    run.profile(f"{label}/{ptag(params)}/{gid}", v.profile, params=ptag(params), criterion=v.criterion)
    run.case(suite=label, params=ptag(params), g=gid, criterion=v.criterion, value=v.value,
             classification=v.classification, compactness=v.compactness)
    if bounded is not None:
        want = "bounded" if bounded else "not_bounded"
        run.check(f"{label}: {gid} is {want}", v.classification == want,
                  got=v.classification, params=ptag(params))
    if compact is not None:
        want = "compact" if compact else "not_compact"
        run.check(f"{label}: {gid} is {want}", v.compactness == want,
                  got=v.compactness, params=ptag(params))
    return v


def necessity_check(run, label, gid, g, params):
    ms = list(range(2, 9))
    ratios = run.guard(f"necessity {gid}", cr.necessity_ratios, g, params, ms, run.cfg.t, run.spec)
    if ratios is None:
        return run.check(f"{label}: f_u ratios blow up for {gid}", False)
    growth = ratios[-1] / ratios[0]
    run.profile(f"{label}/{ptag(params)}/necessity/{gid}", _m_profile(ms, ratios), params=ptag(params),
                abscissa="1-2^-m")
    return run.check(f"{label}: f_u ratios blow up for {gid}", growth >= GROWTH_MIN,
                     growth=growth, ratios=ratios, threshold=GROWTH_MIN, params=ptag(params))


def decay_check(run, label, gid, g, params, expect_decay=True):
    ms = list(range(1, 9))
    ratios = run.guard(f"decay {gid}", cr.compactness_ratios, g, params, ms, run.cfg.t, run.spec)
    if ratios is None:
        return run.check(f"{label}: f_j ratios for {gid}", False)
    rel = ratios[-1] / ratios[0]
    run.profile(f"{label}/{ptag(params)}/decay/{gid}", _m_profile(ms, ratios), params=ptag(params),
                abscissa="1-2^-m")
    if expect_decay:
        return run.check(f"{label}: f_j ratios decay for {gid}", rel < DECAY_MAX,
                         relative=rel, ratios=ratios, threshold=DECAY_MAX, params=ptag(params))
    return run.check(f"{label}: f_j ratios do not decay for {gid}", rel >= DECAY_MAX,
                     relative=rel, ratios=ratios, threshold=DECAY_MAX, params=ptag(params))


def _m_profile(ms, vals):
    return DecayProfile(tuple(1 - 2.0 ** -m for m in ms), tuple(float(v) for v in vals))


def little_image_check(run, label, fid, f, gid, g, params, vanishing=True):
    """Kernel-test profile of the image measure: vanishing means the image is in the little space."""
    mu = image_measure(f, g, params)
    tag = f"{label}: image of {fid} under {gid} {'is' if vanishing else 'is not'} little"
    if mu is None:
        return run.check(tag, vanishing, note="image vanishes identically")
    t = default_image_t(params) if run.cfg.t is None else run.cfg.t
    kt = run.guard(f"little {fid}/{gid}", kernel_test, mu, t, None, run.spec, estimate_error=False)
    if kt is None:
        return run.check(tag, False)
    verdict = cr.compactness_from_profile(kt.profile.values)
    run.profile(f"{label}/{ptag(params)}/little/{gid}/{fid}", kt.profile, params=ptag(params))
    want = "compact" if vanishing else "not_compact"
    return run.check(tag, verdict == want, got=verdict, final=kt.profile.final,
                     peak=kt.profile.peak, params=ptag(params))


def _not_little(params):
    """A source function in the big space but not in the little one."""
    return "kcrit", AnalyticFn.kernel(1.0, params.source_exponent)


def _bounded_f():
    return [("const", AnalyticFn.constant(1.0)), ("z", AnalyticFn.poly([0, 1])),
            ("z4", AnalyticFn.poly([0, 0, 0, 0, 1]))]


def _compactness_suite(params):
    return polynomial_suite(params) + [interior_symbol(params)]


# ----------------------------------------------------------------------------
# operator-criterion suites

def _boundedness(run, label, params_list, refine_first=True):
    for i, P in enumerate(params_list):
        coupling_checks(run, label, P, bounded_suite(P), refine=refine_first and i == 0)
        for gid, g in bounded_suite(P):
            classify_case(run, label, gid, g, P, bounded=True)
        gid, g = unbounded_symbol(P)
        classify_case(run, label, gid, g, P, bounded=False)
        necessity_check(run, label, gid, g, P)


def _compactness(run, label, params_list):
    for P in params_list:
        for gid, g in _compactness_suite(P):
            classify_case(run, label, gid, g, P, bounded=True, compact=True)
        gid, g = critical_symbol(P)
        classify_case(run, label, gid, g, P, bounded=True, compact=False)
        gid, g = unbounded_symbol(P)
        classify_case(run, label, gid, g, P, compact=False)


def _little_bounded(run, label, params_list):
    """Bounded operators send bounded analytic functions into the little space."""
    for P in params_list:
        for gid, g in bounded_suite(P):
            cr_v = run.guard(f"criterion {gid}", cr.criterion_value, g, P, run.cfg.t, run.spec)
            run.check(f"{label}: criterion for {gid} finite",
                      cr_v is not None and math.isfinite(cr_v), value=cr_v, params=ptag(P))
            for fid, f in _bounded_f():
                little_image_check(run, label, fid, f, gid, g, P, vanishing=True)


def _little_compact(run, label, params_list):
    """Compact operators send a big-space function into the little space; critical ones do not."""
    for P in params_list:
        fid, f = _not_little(P)
        for gid, g in _compactness_suite(P):
            little_image_check(run, label, fid, f, gid, g, P, vanishing=True)
        gid, g = critical_symbol(P)
        little_image_check(run, label, fid, f, gid, g, P, vanishing=False)


def _duality(run, label):
    worst = 0.0
    fs = _bounded_f() + [("k0.5", AnalyticFn.kernel(0.5, 1.0)), ("log0.9", AnalyticFn.log(0.9))]
    gs = [("z+z2", AnalyticFn.poly([0, 1, 1])), ("k-0.6i", AnalyticFn.kernel(-0.6j, 1.5))]
    deg = min(run.cfg.degree, 64)
    for n in (2, 3):
        for k in range(1, n):
            for _, f in fs:
                for _, g in gs:
                    a = apply_S(f, g, n, k, deg).taylor(deg)
                    b = apply_T(f, g, n, n - k, deg).taylor(deg)
                    worst = max(worst, float(np.max(np.abs(a - b))))
    return run.check(f"{label}: S(n,k) equals T(n,n-k) for k >= 1", worst <= 1e-10,
                     max_abs_diff=worst)


def verify_th1(run):
    _boundedness(run, "th1", (T_LE, T_LE2))


def verify_th10(run):
    for gid, g in bounded_suite(T_LE):
        classify_case(run, "th10", gid, g, T_LE, bounded=True)
    _little_bounded(run, "th10", (T_LE, T_LE2))


def verify_th2(run):
    _boundedness(run, "th2", T_GT)
    for gid, g in bounded_suite(T_GT_NEG):
        classify_case(run, "th2", gid, g, T_GT_NEG, bounded=True)
    gid, g = unbounded_symbol(T_GT_NEG)
    classify_case(run, "th2", gid, g, T_GT_NEG, bounded=False)


def verify_th20(run):
    _little_bounded(run, "th20", T_GT)


def verify_th3(run):
    _compactness(run, "th3", (T_LE,))
    for gid, g in polynomial_suite(T_DECAY):
        decay_check(run, "th3", gid, g, T_DECAY)


def verify_th30(run):
    _compactness(run, "th30", (T_LE,))
    _little_compact(run, "th30", (T_LE,))


def verify_th4(run):
    _compactness(run, "th4", T_GT)


def verify_th40(run):
    _compactness(run, "th40", T_GT)
    _little_compact(run, "th40", T_GT)


def verify_sn1(run):
    _boundedness(run, "sn1", (S_LE,), refine_first=False)
    _duality(run, "sn1")


def verify_sn2(run):
    _boundedness(run, "sn2", S_GT, refine_first=False)
    _duality(run, "sn2")


def verify_sn3(run):
    _compactness(run, "sn3", (S_LE,))
    for gid, g in polynomial_suite(S_DECAY):
        decay_check(run, "sn3", gid, g, S_DECAY)
    _duality(run, "sn3")


def verify_sn4(run):
    _compactness(run, "sn4", S_GT)
    _duality(run, "sn4")


# ----------------------------------------------------------------------------
# supporting-estimate suites

def _band(values):
    v = [x for x in values if x is not None]
    if not v or min(v) <= 0:
        return math.inf
    return max(v) / min(v)


LP_PARAMS = ((2.0, 0.0), (1.0, 1.0))


def verify_lp(run):
    cfg = run.cfg
    for p, alpha in LP_PARAMS:
        corpus = standard_corpus(p, alpha, cfg.seed)
        tag = f"p={p:g},alpha={alpha:g}"
        t = (alpha + 3) if cfg.t is None else cfg.t
        rows = run.table("lp_norms", ["params", "f", "lp_t", "lp_2t", "lp_n2", "tpinf",
                                      "tpq_z1", "tpq_z2"])
        r_box, r_t, r_n, r_ap = [], [], [], []
        for fid, f in corpus:
            vals = [run.guard(f"lp {fid}", lp_norm, f, p, alpha, 1, t, run.spec, estimate_error=False),
                    run.guard(f"lp2t {fid}", lp_norm, f, p, alpha, 1, 2 * t, run.spec,
                              estimate_error=False),
                    run.guard(f"lpn2 {fid}", lp_norm, f, p, alpha, 2, t, run.spec,
                              estimate_error=False),
                    run.guard(f"tpinf {fid}", tpinf_norm, f, p, alpha, None, run.spec),
                    run.guard(f"tpq1 {fid}", tpq_norm, f, p, p, alpha, run.spec, zeta=cfg.aperture,
                              eta_samples=cfg.eta_samples),
                    run.guard(f"tpq2 {fid}", tpq_norm, f, p, p, alpha, run.spec,
                              zeta=2 * cfg.aperture, eta_samples=cfg.eta_samples)]
            rows.append([tag, fid] + vals)
            if any(v is None for v in vals):
                continue
            lp1, lp2, lpn2, box, c1, c2 = vals
            r_box.append(box / lp1)
            r_t.append(lp2 / lp1)
            r_n.append(lpn2 / lp1)
            r_ap.append(c2 / c1)
        n = len(corpus)
        for name, r in (("box averages vs LP norm", r_box), ("LP norm t vs 2t", r_t),
                        ("LP norm n=1 vs n=2", r_n), ("cone aperture 1 vs 2", r_ap)):
            b = _band(r)
            run.check(f"lp {tag}: {name} band", len(r) == n and b <= BAND, band=b,
                      min=min(r, default=None), max=max(r, default=None), threshold=BAND)


def _doubled_grid(foci, depth):
    radii = tuple(1 - 2.0 ** (-j / 2) for j in range(1, 2 * depth + 1))
    return annular_grid(foci, radii=radii, n_uniform=32, uniform_depth=6)


def verify_z(run):
    cfg = run.cfg
    for p, alpha in LP_PARAMS:
        tag = f"p={p:g},alpha={alpha:g}"
        rows = run.table("growth", ["params", "f", "n", "norm", "ratio", "ratio_doubled"])
        consts = {0: [], 1: []}
        dconsts = {0: [], 1: []}
        for fid, f in standard_corpus(p, alpha, cfg.seed):
            nrm = run.guard(f"lp {fid}", lp_norm, f, p, alpha, 1, cfg.t, run.spec,
                            estimate_error=False)
            if nrm is None:
                continue
            for n in (0, 1):
                g1 = growth_ratio(f, p, alpha, n, annular_grid(f.foci(), depth=run.spec.depth),
                                  run.spec, norm=nrm)
                g2 = growth_ratio(f, p, alpha, n, _doubled_grid(f.foci(), run.spec.depth),
                                  run.spec, norm=nrm)
                rows.append([tag, fid, n, nrm, g1, g2])
                consts[n].append(g1)
                dconsts[n].append(g2)
        for n in (0, 1):
            C, C2 = max(consts[n], default=math.inf), max(dconsts[n], default=math.inf)
            drift = abs(C2 / C - 1) if math.isfinite(C) and C > 0 else math.inf
            run.check(f"z {tag}: growth constant (n={n}) stable under grid doubling",
                      math.isfinite(C) and drift <= REFINE_TOL, C=C, C_doubled=C2, drift=drift,
                      tol=REFINE_TOL)


FR_PARAMS = ((0.0, 1.0, 3.0), (1.0, 2.0, 4.0), (-0.5, 0.5, 2.0))
FR_INVALID = ((-1.0, 1.0, 3.0), (0.0, 0.0, 3.0), (0.0, 1.0, 0.0), (0.0, 2.0, 3.0),
              (0.0, 1.0, 2.0), (1.0, 0.5, 2.5))


def _fr_grid(run, s, r, t, npts, spec):
    mods = np.linspace(0.0, 0.99, npts)
    vals = np.empty((npts, npts))
    for i, a in enumerate(mods):
        for j, b in enumerate(mods):
            v = run.guard(f"fr a={a:g} b={b:g}", forelli_rudin_check, a, b * np.exp(0.3j),
                          s, r, t, spec)
            vals[i, j] = np.nan if v is None else v
    return mods, vals


def verify_forelli_rudin(run):
    rows = run.table("forelli_rudin", ["s", "r", "t", "grid", "max", "min"])
    for i, (s, r, t) in enumerate(FR_PARAMS):
        _, v7 = _fr_grid(run, s, r, t, 7, run.spec)
        _, v13 = _fr_grid(run, s, r, t, 13, run.spec)
        grids = [("7x7", v7), ("13x13", v13)]
        if i == 0:
            _, v7r = _fr_grid(run, s, r, t, 7, run.spec.refined())
            grids.append(("7x7 refined", v7r))
        for name, v in grids:
            rows.append([s, r, t, name, float(np.nanmax(v)), float(np.nanmin(v))])
        finite = bool(np.all(np.isfinite(v7)) and np.all(np.isfinite(v13)))
        m7, m13 = float(np.nanmax(v7)), float(np.nanmax(v13))
        run.check(f"forelli_rudin (s={s:g},r={r:g},t={t:g}): ratio bounded on the grid", finite,
                  max=m7, min=float(np.nanmin(v7)))
        run.check(f"forelli_rudin (s={s:g},r={r:g},t={t:g}): max stable under grid refinement",
                  finite and abs(m13 / m7 - 1) <= FR_TOL, max_7=m7, max_13=m13, tol=FR_TOL)
        if i:
            continue
        drift = float(np.nanmax(np.abs(v7r / v7 - 1)))
        run.check(f"forelli_rudin (s={s:g},r={r:g},t={t:g}): values stable under quadrature refinement",
                  drift <= FR_TOL, drift=drift, tol=FR_TOL)
    rejected = []
    for s, r, t in FR_INVALID:
        try:
            forelli_rudin_check(0.5, 0.5, s, r, t)
            rejected.append(False)
        except ValueError:
            rejected.append(True)
    accepted = []
    for s, r, t in FR_PARAMS:
        try:
            forelli_rudin_check(0.0, 0.0, s, r, t)
            accepted.append(True)
        except ValueError:
            accepted.append(False)
    run.check("forelli_rudin: invalid parameters rejected", all(rejected),
              cases=[list(x) for x in FR_INVALID], rejected=rejected)
    run.check("forelli_rudin: valid parameters accepted", all(accepted))


def verify_truncation(run):
    radii = default_radii(run.spec.depth)
    measures = [
        ("compact_support", WeightedIntegrand(lambda z: (np.abs(z) < 0.5).astype(float)), 2.0,
         "zero"),
        ("vanishing", WeightedIntegrand(lambda z: np.ones(np.shape(z)), 1.0), 2.0, "compact"),
        ("carleson", WeightedIntegrand(lambda z: 1.0 / np.abs(1 - z) ** 2, 1.0, (0.0,)), 2.0,
         "not_compact"),
    ]
    for name, F, t, want in measures:
        prof = run.guard(f"truncation {name}", truncation_check, F, t, radii, run.spec)
        if prof is None:
            run.check(f"truncation: {name} truncation profile", False)
            continue
        run.profile(f"truncation/{name}", prof, t=t)
        v = np.asarray(prof.values)
        run.check(f"truncation: {name} profile non-increasing", bool(np.all(np.diff(v) <= 1e-12 * v[0])),
                  values=list(prof.values))
        if want == "zero":
            tail = [x for r, x in zip(prof.radii, prof.values) if r >= 0.5]
            run.check(f"truncation: {name} tail vanishes beyond the support",
                      all(x == 0.0 for x in tail), tail=tail)
        else:
            got = cr.compactness_from_profile(prof.values)
            run.check(f"truncation: {name} is {'vanishing' if want == 'compact' else 'not vanishing'}",
                      got == want, got=got, final=prof.final, peak=prof.peak)


def _atomic_lattice(cfg):
    return generate_lattice(cfg.lattice_r, cfg.lattice_kappa, cfg.atomic_cap)


def _draws(cfg, n, size, salt):
    rng = np.random.default_rng([cfg.seed, salt])
    return [rng.standard_normal(size) + 1j * rng.standard_normal(size) for _ in range(n)]


def verify_discretization(run):
    cfg = run.cfg
    Z = generate_lattice(cfg.lattice_r, cfg.lattice_kappa, cfg.cap)
    u = seq_u_grid(Z, run.spec.depth)
    for p, alpha in LP_PARAMS:
        tag = f"p={p:g},alpha={alpha:g}"
        rows = run.table("discretization", ["params", "f", "lp", "seq", "ratio"])
        ratios = []
        for fid, f in standard_corpus(p, alpha, cfg.seed):
            nrm = run.guard(f"lp {fid}", lp_norm, f, p, alpha, 1, cfg.t, run.spec,
                            estimate_error=False)
            if nrm is None:
                continue
            sq = seq_tent_norm(discretize(f, Z, p, alpha), Z, p, u)
            rows.append([tag, fid, nrm, sq, sq / nrm])
            ratios.append(sq / nrm)
        b = _band(ratios)
        run.check(f"discretization {tag}: discretization band on the default lattice",
                  len(ratios) == 12 and b <= BAND, band=b, min=min(ratios), max=max(ratios),
                  lattice_nodes=len(Z), threshold=BAND)


def verify_synthesis(run):
    cfg = run.cfg
    Z = _atomic_lattice(cfg)
    u = seq_u_grid(Z, run.spec.depth)
    p, alpha = 2.0, 0.0
    rows = run.table("synthesis", ["draw", "seq", "lp", "roundtrip", "lp_over_seq",
                                   "roundtrip_over_seq"])
    syn, rt = [], []
    for i, x in enumerate(_draws(cfg, 10, len(Z), 34)):
        f = synthesize(x, Z, p=p, alpha=alpha)
        sx = seq_tent_norm(x, Z, p, u)
        nf = run.guard(f"lp draw {i}", lp_norm, f, p, alpha, 1, cfg.t, run.spec,
                       estimate_error=False)
        back = seq_tent_norm(discretize(f, Z, p, alpha), Z, p, u)
        rows.append([i, sx, nf, back, None if nf is None else nf / sx, back / sx])
        if nf is not None:
            syn.append(nf / sx)
        rt.append(back / sx)
    b1, b2 = _band(syn), _band(rt)
    run.check("synthesis: synthesis bound with a draw-stable constant", len(syn) == 10 and b1 <= BAND,
              C=max(syn, default=None), band=b1, threshold=BAND, lattice_nodes=len(Z))
    run.check("synthesis: round-trip comparability", b2 <= BAND, band=b2, min=min(rt), max=max(rt),
              threshold=BAND)


def verify_multipliers(run):
    cfg = run.cfg
    Z = _atomic_lattice(cfg)
    u = seq_u_grid(Z, run.spec.depth)
    rows = run.table("multiplier", ["p", "q", "y", "ratio", "holder_bound"])
    for p, q in ((2.0, 1.0), (4.0, 2.0), (3.0, 1.5)):
        xs = _draws(cfg, 10, len(Z), 22)
        for yname, y in (("random", _draws(cfg, 1, len(Z), 23)[0]),
                         ("constant", np.full(len(Z), 0.7 - 0.2j))):
            chk = multiplier_bound_check(y, Z, p, q, xs, u)
            rows.append([p, q, yname, chk.ratio, chk.y_norm])
            run.check(f"multipliers (p={p:g},q={q:g},{yname} y): Hoelder bound holds",
                      chk.ratio <= chk.y_norm * (1 + HOLDER_TOL), ratio=chk.ratio,
                      bound=chk.y_norm)
    c = 0.7 - 0.2j
    x = xs[0]
    lhs = seq_tent_norm(c * x, Z, 2.0, u)
    rhs = abs(c) * seq_tent_norm(x, Z, 2.0, u)
    run.check("multipliers: homogeneity under a constant multiplier", abs(lhs - rhs) <= 1e-12 * rhs,
              lhs=lhs, rhs=rhs)


SUITES = {
    "th1": (verify_th1, "boundedness, p <= q: criterion U_g"),
    "th10": (verify_th10, "boundedness into little spaces, p <= q"),
    "th2": (verify_th2, "boundedness, q < p: tent-space membership of the symbol"),
    "th20": (verify_th20, "boundedness into little spaces, q < p"),
    "th3": (verify_th3, "compactness, p <= q: vanishing U_g"),
    "th30": (verify_th30, "compactness into little spaces, p <= q"),
    "th4": (verify_th4, "compactness, q < p"),
    "th40": (verify_th40, "compactness into little spaces, q < p"),
    "sn1": (verify_sn1, "S-operator boundedness, p <= q"),
    "sn2": (verify_sn2, "S-operator boundedness, q < p"),
    "sn3": (verify_sn3, "S-operator compactness, p <= q"),
    "sn4": (verify_sn4, "S-operator compactness, q < p"),
    "lp": (verify_lp, "Littlewood-Paley and box-average comparability"),
    "z": (verify_z, "pointwise growth bound"),
    "forelli_rudin": (verify_forelli_rudin, "Forelli-Rudin integral estimate"),
    "truncation": (verify_truncation, "vanishing Carleson measures via truncation"),
    "discretization": (verify_discretization, "discretization on a lattice"),
    "synthesis": (verify_synthesis, "atomic synthesis bound"),
    "multipliers": (verify_multipliers, "sequence multipliers: Hoelder bound"),
}


def run_verify(theorem_id, config=None):
    """Run one suite and return its report dictionary."""
    if theorem_id not in SUITES:
        raise KeyError(f"unknown theorem id {theorem_id!r}; known: {', '.join(SUITES)}")
    config = Config() if config is None else config
    fn, title = SUITES[theorem_id]
    run = Run(theorem_id, title, config)
    fn(run)
    return run.finish()
