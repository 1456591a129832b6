"""Verification suites run by ``ospq verify``.

Each suite returns a list of :class:`Check` records.  Suites are listed in
dependency order in :data:`SUITES`; ``verify all`` runs them in that order.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import mpmath

from . import afun, cgc, covariant, realize, urep
from .config import load_config, probes
from .expr import format_scalar, format_scalar_kulish, parse_scalar
from .scalar import Scalar, eval_numeric

NUMERIC_TOL = mpmath.mpf("1e-30")
FOCK_TOL = mpmath.mpf("1e-25")


@dataclass(frozen=True)
class Check:
    id: str
    ok: bool
    detail: str = ""

    def as_dict(self) -> dict:
        d = {"id": self.id, "ok": self.ok}
        if self.detail:
            d["detail"] = self.detail
        return d


def _records(prefix: str, records: Iterable[afun.Record]) -> list[Check]:
    out = []
    for r in records:
        ok = r.residual_is_zero
        out.append(Check(f"{prefix}:{r.id}", ok, "" if ok else str(r.residual)))
    return out


def _bools(prefix: str, pairs: Iterable[tuple[str, bool]]) -> list[Check]:
    return [Check(f"{prefix}:{k}", bool(v)) for k, v in pairs]


def _ell_bound() -> int:
    return int(load_config()["ell_bound"])


# ---------------------------------------------------------------------------
# scalar ring and representations

def suite_kulish() -> list[Check]:
    from .scalar import _binomial_sum, _factorial_sum
    out = []
    for n, r, k in itertools.product(range(-6, 0), range(-6, 0), range(0, 9)):
        tag = f"n={n},r={r},k={k}"
        lhs, rhs = _binomial_sum(n, r, k)
        out.append(Check(f"kulish:binomial:{tag}", lhs == rhs))
        lhs, rhs = _factorial_sum(n, r, k)
        out.append(Check(f"kulish:summation:{tag}", lhs == rhs))
    return out


def suite_reps() -> list[Check]:
    out = []
    for ell in range(0, _ell_bound() + 1):
        want = parse_scalar(f"((q^({2 * ell + 1}/2) - q^(-{2 * ell + 1}/2))/(q^4 - q^(-4)))^2")
        for lam in (0, 1):
            tag = f"l={ell},lam={lam}"
            out.append(Check(f"reps:relations:{tag}", urep.verify_defining_relations(ell, lam)))
            out.append(Check(f"reps:grade-star:{tag}", urep.verify_grade_star(ell, lam)))
            got = urep.casimir(ell, lam).scalar_value()
            out.append(Check(f"reps:casimir:{tag}", got is not None and got == want,
                             "" if got is not None else "not a scalar matrix"))
    return out


# ---------------------------------------------------------------------------
# Clebsch-Gordan

def _cgc_domain(bound: int = 3):
    for l1, l2 in itertools.product(range(bound + 1), repeat=2):
        for l in range(abs(l1 - l2), l1 + l2 + 1):
            for m1 in urep.basis(l1):
                for m2 in urep.basis(l2):
                    if cgc.in_domain(l1, l2, l, m1, m2):
                        yield l1, l2, l, m1, m2


def suite_cgc() -> list[Check]:
    bad = []
    n = 0
    for l1, l2, l, m1, m2 in _cgc_domain():
        for lam in (0, 1):
            n += 1
            if cgc.cgc_closed(l1, l2, l, m1, m2, lam) != cgc.cgc_lowering(l1, l2, l, m1, m2, lam):
                bad.append((l1, l2, l, m1, m2, lam))
    return [Check("cgc:closed=lowering", not bad, f"{n} coefficients; mismatches {bad[:5]}" if bad
                  else f"{n} coefficients")]


def suite_orthogonality() -> list[Check]:
    return [Check(f"orthogonality:l1={l1},l2={l2},lam={lam}", cgc.verify_orthogonality(l1, l2, lam))
            for l1, l2 in itertools.product(range(4), repeat=2) for lam in (0, 1)]


def suite_golden() -> list[Check]:
    out = []
    for l1, l2 in ((1, 1), (2, 2)):
        for lam in (0, 1):
            bad = cgc.golden_mismatches(l1, l2, lam)
            detail = ""
            if bad:
                cells = []
                for l, m, m1 in bad:
                    printed, of = cgc.golden_entry(l1, l2, l, m, m1, lam)
                    got = cgc.cgc_closed(l1, l2, l, m1, m - m1, lam) / of
                    ratio = got / printed if not printed.is_zero() else None
                    cells.append(f"(l={l},m={m},m1={m1}) printed {format_scalar_kulish(printed)}, "
                                 + (f"computed/printed = {format_scalar_kulish(ratio)}" if ratio is not None
                                    else f"computed {format_scalar(got)}"))
                detail = "; ".join(cells)
            out.append(Check(f"golden:{l1}x{l2}:lam={lam}", not bad, detail))
    # printed relations carrying the named constants, against their CGC composites
    for label, f in covariant.printed_composite_factors():
        out.append(Check(f"golden:composite:{label}", f is not None and f.is_rational(),
                         "not proportional" if f is None else ""))
    return out


# ---------------------------------------------------------------------------
# function algebra

def suite_afun() -> list[Check]:
    out = []
    out += _bools("confluence", [(f"{w}", ok) for w, ok in afun.critical_pairs()])
    out += _records("rtt", afun.verify_rtt())
    out += _records("orthosymplectic", afun.verify_orthosymplectic())
    out += _records("det-central", afun.verify_det_central())
    out += _records("antipode", afun.verify_antipode())
    out += _records("coproduct", afun.verify_coproduct_relations())
    out += _records("det-grouplike", afun.verify_det_grouplike())
    out += _records("derived", afun.verify_derived_relations())
    return out


def suite_rtt() -> list[Check]:
    return _records("rtt", afun.verify_rtt())


def suite_pairing() -> list[Check]:
    out = _bools("pairing", afun.verify_pairing())
    out += _records("action-left", afun.verify_action_well_defined("left"))
    out += _records("action-right", afun.verify_action_well_defined("right"))
    for ell in (1, 2):
        for lam in (0, 1):
            out += _records(f"closed-actions:l={ell},lam={lam}", afun.verify_closed_actions(ell, lam))
            out += _bools(f"duality:l={ell},lam={lam}", afun.verify_duality(ell, lam))
    return out


def suite_corep() -> list[Check]:
    out = [Check("product-law:T2(0)=printed", not afun.t2_mismatches(), str(afun.t2_mismatches()))]
    for l1, l2 in ((1, 1), (1, 2), (2, 1)):
        for lam in (0, 1):
            for lp in range(0, l1 + l2 + 2):
                out.append(Check(f"product-law:{l1}x{l2}->{lp}:lam={lam}",
                                 afun.verify_product_law(l1, l2, lp, lam)))
    for lam in (0, 1):
        f = afun.fuse(1, 1, 0, 0, lam)
        out.append(Check(f"product-law:fuse-to-0:lam={lam}", f[(0, 0)] == afun.NCPoly.scalar(1)))
    for ell in range(0, 4):
        for lam in (0, 1):
            out += _records(f"corep-hopf:l={ell},lam={lam}", afun.verify_corep_hopf(ell, lam))
    return out


# ---------------------------------------------------------------------------
# covariant algebras

def consistency_findings() -> list[Check]:
    """Pass/fail pattern of the superspace and supersphere presentations."""
    out = []
    odd = covariant.consistency_check(covariant.superspace0(xi="xi_odd"))
    out.append(Check("consistency:superspace0:odd-xi-fails-b", not odd.b_ok,
                     f"{len(odd.failing_diamonds())} failing diamonds"))
    even = covariant.consistency_check(covariant.superspace0(xi=0))
    out.append(Check("consistency:superspace0:xi=0-passes", even.passed))
    for kind in ("L2_only", "with_radius"):
        rep = covariant.consistency_check(covariant.superspace1(kind))
        out.append(Check(f"consistency:superspace1:{kind}-passes", rep.passed))
    raw = covariant.consistency_check(covariant.sphere_raw_presentation((2, 3)))
    out.append(Check("consistency:sphere-raw-L23-fails", not raw.passed,
                     f"{len(raw.failing_diamonds())} failing diamonds"))
    full = covariant.consistency_check(covariant.supersphere())
    detail = ""
    if not full.passed:
        tied = covariant.consistency_check(covariant.supersphere(r=SPHERE_TIED_R))
        detail = (f"condition (a) {'ok' if full.a_ok else 'fails'}, "
                  f"{len(full.failing_diamonds())} failing diamonds with independent r, xi; "
                  f"with r = {SPHERE_TIED_R}: {'passes' if tied.passed else 'fails'}")
    out.append(Check("consistency:supersphere-symbolic-r-xi-passes", full.passed, detail))
    return out


SPHERE_TIED_R = "([3]!/[6])^2*xi^2"


def suite_consistency() -> list[Check]:
    out = consistency_findings()
    tied = covariant.consistency_check(covariant.supersphere(r=SPHERE_TIED_R))
    out.append(Check("consistency:supersphere-tied-r-passes", tied.passed))
    zero = covariant.consistency_check(covariant.supersphere(r=0, xi=0))
    out.append(Check("consistency:supersphere-r=xi=0-passes", zero.passed))
    return out


def suite_certificates() -> list[Check]:
    ok, certs = covariant.verify_linear_combination()
    out = [Check(f"certificate:{c.label}", c.ok) for c in certs]
    out.append(Check("certificate:all-fifteen", ok and len(certs) == 15, f"{len(certs)} certificates"))
    return out


def suite_covariance() -> list[Check]:
    out = []
    for ell, lam in ((1, 0), (1, 1), (2, 0)):
        for L in range(0, 2 * ell + 1):
            out.append(Check(f"coaction:l={ell},lam={lam},L={L}",
                             covariant.verify_coaction_covariance(ell, lam, L)))
    for pres in (covariant.superspace0(), covariant.superspace1("with_radius"), covariant.supersphere()):
        out += _bools(f"classical:{pres.name}", covariant.classical_limit_ok(pres))
    out.append(Check("primed-basis", covariant.verify_primed_basis()))
    return out


# ---------------------------------------------------------------------------
# realizations

def suite_realize() -> list[Check]:
    out = []
    emb = realize.embed_sphere()
    for label, res in emb.residuals.items():
        out.append(Check(f"embedding:{label}", res.is_zero(), "" if res.is_zero() else str(res)))
    out.append(Check("embedding:r", emb.r == parse_scalar("([2]*g2)^2")))
    out.append(Check("embedding:xi", emb.xi == parse_scalar("[6]/[3]*g2")))
    rep = realize.twisted_primitive_annihilation()
    out.append(Check("twisted:coproduct", rep.coproduct_ok))
    for k, v in rep.generators.items():
        out.append(Check(f"twisted:{k}", v.is_zero(), "" if v.is_zero() else str(v)))
    for (j, k), v in rep.products.items():
        out.append(Check(f"twisted:{j}*{k}", v.is_zero(), "" if v.is_zero() else str(v)))
    for k, ok in rep.composition.items():
        out.append(Check(f"twisted:composition:{k}", ok))
    out.append(Check("oscillator:superplane-r", realize.superplane_r() == parse_scalar("-q/varpi")))
    for label, res in realize.superplane_iso_residuals().items():
        out.append(Check(f"oscillator:superplane:{label}", res.is_zero(), str(res)))
    out.append(Check("oscillator:sphere-r", realize.oscillator_r() == parse_scalar("q^2/varpi^2*[4]/[3]!")))
    out.append(Check("oscillator:sphere-xi",
                     realize.oscillator_xi() == parse_scalar("[6]/[3]!") * _sqrt(realize.oscillator_r())))
    for label, res in realize.oscillator_sphere_residuals().items():
        out.append(Check(f"oscillator:sphere:{label}", res.is_zero(), str(res)))
    return out


def _sqrt(x: Scalar) -> Scalar:
    from .scalar import sqrt_scalar
    return sqrt_scalar(x)


def suite_fock(cutoff: int = 40, q=Fraction(1, 2), precision: int | None = None) -> list[Check]:
    precision = precision or int(load_config()["precision"])
    model = realize.fock_representation(cutoff, q, precision)
    out = []
    for label, v in sorted(model.residuals.items()):
        out.append(Check(f"fock:relation:{label}", v < FOCK_TOL, mpmath.nstr(v, 5)))
    for label, v in sorted(realize.fock_sphere_residuals(model).items()):
        out.append(Check(f"fock:sphere:{label}", v < FOCK_TOL, mpmath.nstr(v, 5)))
    lo, hi, off = realize.fock_radius(model)
    exact = model.number(realize.oscillator_r())
    err = max(abs(lo - exact), abs(hi - exact), off)
    out.append(Check("fock:radius=r", err < FOCK_TOL, mpmath.nstr(err, 5)))
    return out


# ---------------------------------------------------------------------------
# numeric oracle

def _bindings(q) -> dict:
    g1, g2 = Fraction(2, 3), Fraction(7, 10)
    ratio = eval_numeric(parse_scalar(realize.G_RATIO), q)
    return {"r": Fraction(2, 7), "xi": Fraction(3, 11), "g1": g1, "g2": g2,
            "g3": ratio * g2 ** 2 / g1, "xi_odd": 0}


def _numeric_gap(a: Scalar, b: Scalar, q) -> mpmath.mpf:
    bind = _bindings(q)
    return abs(eval_numeric(a, q, bind) - eval_numeric(b, q, bind))


def _max_coeff(terms: Mapping, q) -> mpmath.mpf:
    bind = _bindings(q)
    vals = [abs(eval_numeric(c, q, bind)) for c in terms.values()]
    return max(vals) if vals else mpmath.mpf(0)


def _sides_gap(lhs: Mapping, rhs: Mapping, q) -> mpmath.mpf:
    bind = _bindings(q)
    worst = mpmath.mpf(0)
    for w in set(lhs) | set(rhs):
        a = eval_numeric(lhs[w], q, bind) if w in lhs else 0
        b = eval_numeric(rhs[w], q, bind) if w in rhs else 0
        worst = max(worst, abs(a - b))
    return worst


def _numeric_check(label: str, fn: Callable[[object], mpmath.mpf], qs) -> Check:
    worst = max(fn(q) for q in qs)
    return Check(f"numeric:{label}", worst < NUMERIC_TOL, mpmath.nstr(worst, 5))


def _numeric_mat(M: urep.GradedMatrix, q) -> mpmath.matrix:
    n, m = M.shape
    out = mpmath.matrix(n, m)
    for i, j, a in M.nonzero():
        out[i, j] = eval_numeric(a, q)
    return out


def _mat_gap(X: mpmath.matrix, Y: mpmath.matrix) -> mpmath.mpf:
    return max((abs(X[i, j] - Y[i, j]) for i in range(X.rows) for j in range(X.cols)), default=mpmath.mpf(0))


def _rep_gap(ell: int, lam: int, q) -> mpmath.mpf:
    K, Ki, vp, vm = (_numeric_mat(urep.rep_generator(g, ell, lam), q) for g in urep.GENERATORS)
    n = K.rows
    one = mpmath.eye(n)
    s = mpmath.sqrt(mpmath.mpf(Fraction(q).numerator) / Fraction(q).denominator)
    qq = s ** 2
    gaps = [_mat_gap(K * Ki, one), _mat_gap(K * vp, s * vp * K), _mat_gap(K * vm, vm * K / s),
            _mat_gap(vp * vm + vm * vp, -(K * K - Ki * Ki) / (qq ** 4 - qq ** -4))]
    C = _numeric_mat(urep.casimir(ell, lam), q)
    ev = ((qq ** (ell + mpmath.mpf(1) / 2) - qq ** (-ell - mpmath.mpf(1) / 2)) / (qq ** 4 - qq ** -4)) ** 2
    gaps.append(_mat_gap(C, ev * one))
    return max(gaps)


def _orthogonality_gap(l1: int, l2: int, lam: int, q) -> mpmath.mpf:
    from .cgc import _norm_sign_coupled, _norm_sign_uncoupled
    vals = {}
    ls = range(abs(l1 - l2), l1 + l2 + 1)
    for l in ls:
        for m1 in urep.basis(l1):
            for m2 in urep.basis(l2):
                if cgc.in_domain(l1, l2, l, m1, m2):
                    vals[(l, m1, m2)] = eval_numeric(cgc.cgc_closed(l1, l2, l, m1, m2, lam), q)
    worst = mpmath.mpf(0)
    coupled = [(l, m) for l in ls for m in urep.basis(l)]
    for (l, m), (lp, mp) in itertools.product(coupled, repeat=2):
        if m != mp:
            continue
        tot = sum((vals.get((lp, m1, m - m1), 0) * vals.get((l, m1, m - m1), 0)
                   * _norm_sign_uncoupled(l1, l2, m1, m - m1, lam)
                   for m1 in urep.basis(l1) if abs(m - m1) <= l2), mpmath.mpf(0))
        want = _norm_sign_coupled(l1, l2, l, m, lam) if l == lp else 0
        worst = max(worst, abs(tot - want))
    pairs = urep.tensor_basis(l1, l2)
    for (m1, m2), (n1, n2) in itertools.product(pairs, repeat=2):
        if m1 + m2 != n1 + n2:
            continue
        m = m1 + m2
        tot = sum((vals.get((l, n1, n2), 0) * vals.get((l, m1, m2), 0) * _norm_sign_coupled(l1, l2, l, m, lam)
                   for l in ls if abs(m) <= l), mpmath.mpf(0))
        want = _norm_sign_uncoupled(l1, l2, m1, m2, lam) if (m1, m2) == (n1, n2) else 0
        worst = max(worst, abs(tot - want))
    return worst


def suite_numeric(qs=None) -> list[Check]:
    """Every exact identity re-evaluated at the probe points with independent sides where possible."""
    cfg = load_config()
    qs = list(qs or probes(cfg))
    with mpmath.workdps(int(cfg["precision"]) + 10):
        return _numeric_checks(qs)


def _numeric_checks(qs) -> list[Check]:
    out = []
    dom = [(x, lam) for x in _cgc_domain() for lam in (0, 1)]
    out.append(_numeric_check("cgc:closed=lowering", lambda q: max(
        _numeric_gap(cgc.cgc_closed(*x, lam), cgc.cgc_lowering(*x, lam), q) for x, lam in dom), qs))
    for l1, l2 in itertools.product(range(4), repeat=2):
        for lam in (0, 1):
            out.append(_numeric_check(f"orthogonality:{l1}x{l2}:lam={lam}",
                                      lambda q, a=(l1, l2, lam): _orthogonality_gap(*a, q), qs))
    for l1, l2 in ((1, 1), (2, 2)):
        for lam in (0, 1):
            out.append(_numeric_check(f"golden:{l1}x{l2}:lam={lam}",
                                      lambda q, a=(l1, l2, lam): _golden_gap(*a, q), qs))
            bad = set(cgc.golden_mismatches(l1, l2, lam))
            if bad:
                # the exact mismatches must not vanish numerically either
                worst = min(_golden_gap(l1, l2, lam, q, bad) for q in qs)
                out.append(Check(f"numeric:golden-mismatch-confirmed:{l1}x{l2}:lam={lam}",
                                 worst > NUMERIC_TOL, mpmath.nstr(worst, 5)))
    for ell in range(0, _ell_bound() + 1):
        for lam in (0, 1):
            out.append(_numeric_check(f"reps:l={ell},lam={lam}", lambda q, a=(ell, lam): _rep_gap(*a, q), qs))
    from .scalar import _binomial_sum, _factorial_sum
    grid = [(n, r, k) for n in range(-6, 0) for r in range(-6, 0) for k in range(0, 9)]
    out.append(_numeric_check("kulish-sum", lambda q: max(
        max(_numeric_gap(*_binomial_sum(*g), q), _numeric_gap(*_factorial_sum(*g), q)) for g in grid), qs))
    lhs, rhs = afun.rtt_sides()
    keys = set(lhs) | set(rhs)
    out.append(_numeric_check("rtt:sides", lambda q: max(
        _sides_gap(lhs.get(k, afun.NCPoly()).terms, rhs.get(k, afun.NCPoly()).terms, q) for k in keys), qs))
    derived = [(afun.parse_afun(a).terms, afun.parse_afun(b).terms) for _, a, b in afun.DERIVED_RELATIONS]
    out.append(_numeric_check("derived:sides", lambda q: max(_sides_gap(a, b, q) for a, b in derived), qs))
    for label, records in _residual_families():
        polys = [r for r in records]
        out.append(_numeric_check(label, lambda q, ps=polys: max(
            (_max_coeff(p.terms, q) for p in ps), default=mpmath.mpf(0)), qs))
    return out


def _golden_gap(l1: int, l2: int, lam: int, q, cells=None) -> mpmath.mpf:
    """Largest printed-vs-computed gap; ``cells`` restricts to (l, m, m1) keys, else the exact matches."""
    skip = set(cgc.golden_mismatches(l1, l2, lam)) if cells is None else set()
    worst = mpmath.mpf(0)
    for l, rows in cgc.table_values(l1, l2, lam).items():
        for m, row in rows.items():
            for m1, val in row.items():
                if (l, m, m1) in skip or (cells is not None and (l, m, m1) not in cells):
                    continue
                printed, of = cgc.golden_entry(l1, l2, l, m, m1, lam)
                worst = max(worst, _numeric_gap(printed * of, val, q))
    return worst


def _residual_families():
    yield "orthosymplectic", [r.residual for r in afun.verify_orthosymplectic()]
    yield "antipode", [r.residual for r in afun.verify_antipode()]
    yield "coproduct", [r.residual for r in afun.verify_coproduct_relations()]
    yield "det-grouplike", [r.residual for r in afun.verify_det_grouplike()]
    yield "embedding", list(realize.embed_sphere().residuals.values())
    rep = realize.twisted_primitive_annihilation()
    yield "twisted", list(rep.generators.values()) + list(rep.products.values())
    yield "superplane", list(realize.superplane_iso_residuals().values())
    yield "oscillator-sphere", list(realize.oscillator_sphere_residuals().values())


# ---------------------------------------------------------------------------
# registry

SUITES: dict[str, tuple[str, Callable[[], list[Check]]]] = {
    "kulish": ("Kulish summation and binomial identities", suite_kulish),
    "reps": ("representation relations, grade-star, Casimir", suite_reps),
    "cgc": ("closed CGC formula against the lowering oracle", suite_cgc),
    "orthogonality": ("pseudo-orthogonality of the CGCs", suite_orthogonality),
    "golden": ("golden CGC tables", suite_golden),
    "afun": ("function algebra Hopf structure", suite_afun),
    "pairing": ("dual pairing and actions", suite_pairing),
    "corep": ("corepresentation blocks and product law", suite_corep),
    "covariance": ("coaction covariance and classical limits", suite_covariance),
    "consistency": ("consistency of covariant presentations", suite_consistency),
    "certificates": ("linear-combination certificates", suite_certificates),
    "realize": ("sphere realizations", suite_realize),
    "numeric": ("numeric oracle at the probe points", suite_numeric),
    "fock": ("Fock-space matrix model", suite_fock),
}

ALIASES = {"rtt": suite_rtt}


@dataclass
class SuiteResult:
    name: str
    checks: list[Check]
    seconds: float

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)


def run_suite(name: str) -> SuiteResult:
    if name in SUITES:
        fn = SUITES[name][1]
    elif name in ALIASES:
        fn = ALIASES[name]
    else:
        raise KeyError(name)
    t0 = time.perf_counter()
    checks = fn()
    return SuiteResult(name, checks, time.perf_counter() - t0)


def suite_names() -> list[str]:
    return list(SUITES) + list(ALIASES)
