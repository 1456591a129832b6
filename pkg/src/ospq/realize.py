"""Realizations of the quantum supersphere: inside the function algebra, through
the covariant oscillator, and as finite matrices on a truncated Fock space."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple

import mpmath

from . import afun, covariant
from .covariant import FreeGradedPoly
from .expr import format_element, parse_element, parse_scalar
from .scalar import Scalar, eval_numeric, sqrt_scalar

ONE = Scalar.const(1)
ZERO = Scalar()


def evaluate(p: FreeGradedPoly, images: Mapping[str, object], one):
    """Image of a free polynomial under generator -> element; coefficients act on the left."""
    total = None
    for w, c in p.terms.items():
        x = one
        for g in w:
            x = x * images[g]
        x = x.scale(c)
        total = x if total is None else total + x
    return total if total is not None else one.scale(ZERO)


# ---------------------------------------------------------------------------
# embedding into the function algebra

G_RATIO = "[3]!/[4]"  # g1 g3 = G_RATIO * g2^2


def reduce_g(c: Scalar) -> Scalar:
    """Trade each sqrt(g1) sqrt(g3) for sqrt([3]!/[4]) g2 (positive branch)."""
    root = sqrt_scalar(parse_scalar(G_RATIO))
    out = ZERO
    for (rad, (even, odd)), lr in c.terms.items():
        ex = dict(even)
        k = min(ex.get("g1", 0), ex.get("g3", 0))
        if k <= 0:
            out = out + Scalar._raw({(rad, (even, odd)): lr})
            continue
        ex["g1"] -= k
        ex["g3"] -= k
        ex["g2"] = ex.get("g2", 0) + 2 * k  # half-exponents
        ex = {n: h for n, h in ex.items() if h}
        key = (tuple(sorted(ex.items())), odd)
        out = out + Scalar._raw({(rad, key): lr}) * root ** k
    return out


def reduce_g_poly(p: afun.NCPoly) -> afun.NCPoly:
    return p.map_coefficients(reduce_g)


def embedding_r() -> Scalar:
    return parse_scalar("([2]*g2)^2")


def embedding_xi() -> Scalar:
    return parse_scalar("[6]/[3]*g2")


@dataclass
class EmbeddingMap:
    images: dict[str, afun.NCPoly]
    r: Scalar
    xi: Scalar
    residuals: dict[str, afun.NCPoly] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.is_zero() for v in self.residuals.values())


@lru_cache(maxsize=1)
def sphere_images() -> dict[str, afun.NCPoly]:
    """Y_k = g1 T_{2,k} + g2 T_{0,k} + g3 T_{-2,k} with T = T^2(0)."""
    T = afun.corep_matrix(2, 0)
    g = {m: parse_scalar(f"g{i}") for m, i in ((2, 1), (0, 2), (-2, 3))}
    out = {}
    for k in range(2, -3, -1):
        y = afun.NCPoly()
        for m, gm in g.items():
            y = y + T.entries[(m, k)].scale(gm)
        out[covariant.gen_name("Y", k)] = y
    return out


def sphere_suite(r, xi) -> list[covariant.Relation]:
    """Radius relation, twelve commutation relations and three constraints."""
    return [covariant.sphere_radius(r)] + covariant._rels(
        covariant.SPHERE_COMMUTATION + covariant.SPHERE_CONSTRAINTS, covariant._Y, covariant._sphere_subst(r, xi))


def embed_sphere(check: bool = True) -> EmbeddingMap:
    images = sphere_images()
    emb = EmbeddingMap(dict(images), embedding_r(), embedding_xi())
    if check:
        one = afun.NCPoly.scalar(1)
        for rel in sphere_suite(emb.r, emb.xi):
            emb.residuals[rel.label] = reduce_g_poly(evaluate(rel.poly, images, one))
    return emb


# ---------------------------------------------------------------------------
# twisted primitive

def twisted_primitive():
    from .urep import UWord
    return (UWord.gen("v+") * UWord.scalar(-parse_scalar("g3^(1/2)"))
            + UWord.gen("v-") * UWord.scalar(parse_scalar("g1^(1/2)")))


def uword_coproduct(u) -> dict[tuple, Scalar]:
    """Delta on a linear combination of words, as {(left word, right word): coefficient}."""
    from .urep import COPRODUCT, GEN_PARITY
    out: dict[tuple, Scalar] = {}
    for w, c in u.terms.items():
        acc = {((), ()): c}
        for g in w:
            nxt: dict = {}
            for (l, r), x in acc.items():
                pr = sum(GEN_PARITY[h] for h in r) % 2
                for a, b in COPRODUCT[g]:
                    # (l (x) r)(a (x) b) = (-1)^{|r||a|} la (x) rb
                    y = -x if pr and GEN_PARITY[a] else x
                    k = (l + (a,), r + (b,))
                    nxt[k] = nxt[k] + y if k in nxt else y
            acc = nxt
        for k, x in acc.items():
            out[k] = out[k] + x if k in out else x
    return {k: v for k, v in out.items() if not v.is_zero()}


def verify_twisted_coproduct() -> bool:
    p = twisted_primitive()
    want: dict[tuple, Scalar] = {}
    for w, c in p.terms.items():
        for k in ((("K",), w), (w, ("Kinv",))):
            want[k] = want[k] + c if k in want else c
    got = uword_coproduct(p)
    return set(got) == set(want) and all((got[k] - want[k]).is_zero() for k in got)


@dataclass
class AnnihilationReport:
    generators: dict[str, afun.NCPoly]
    products: dict[tuple[str, str], afun.NCPoly]
    coproduct_ok: bool
    composition: dict[str, bool]

    @property
    def ok(self) -> bool:
        return (self.coproduct_ok and all(v.is_zero() for v in self.generators.values())
                and all(v.is_zero() for v in self.products.values()) and all(self.composition.values()))


SAMPLE_PRODUCTS = (("Y2", "Y0"), ("Y1", "Ym1"), ("Y0", "Ym2"), ("Y2", "Ym2"))


def twisted_primitive_annihilation(products=SAMPLE_PRODUCTS) -> AnnihilationReport:
    ys = sphere_images()
    pr = twisted_primitive()
    gens = {k: reduce_g_poly(afun.right_action(y, pr)) for k, y in ys.items()}
    prods = {(j, k): reduce_g_poly(afun.right_action(ys[j] * ys[k], pr)) for j, k in products}
    comp = {}
    for k, y in ys.items():
        a = afun.right_action(y, "v+*v-")
        b = afun.right_action_via_coproduct(y, "v+*v-")
        comp[k] = (a - b).is_zero()
    return AnnihilationReport(gens, prods, verify_twisted_coproduct(), comp)


# ---------------------------------------------------------------------------
# covariant oscillator

class OscMonomial(NamedTuple):
    i: int  # power of abar
    j: int  # power of a
    eps: int  # power of c, 0 or 1

    @property
    def parity(self) -> int:
        return self.eps

    def word(self) -> tuple[str, ...]:
        return ("abar",) * self.i + ("a",) * self.j + ("c",) * self.eps


def _q(k) -> Scalar:
    return parse_scalar(f"q^({k})")


@lru_cache(maxsize=None)
def _ladder(i: int) -> Scalar:
    # a abar^i = q^(-2i) abar^i a + w_i abar^(i-1)
    return sum((_q(-2 * t) for t in range(i)), ZERO)


@lru_cache(maxsize=None)
def _reorder(j: int, i: int) -> tuple:
    """a^j abar^i as a tuple of ((i', j'), coefficient)."""
    if j == 0 or i == 0:
        return (((i, j), ONE),)
    # a^j abar^i = a^(j-1) (q^(-2i) abar^i a + w_i abar^(i-1))
    out = {}
    for (i2, j2), c in _reorder(j - 1, i):
        k = (i2, j2 + 1)
        out[k] = out.get(k, ZERO) + _q(-2 * i) * c
    w = _ladder(i)
    for (i2, j2), c in _reorder(j - 1, i - 1):
        k = (i2, j2)
        out[k] = out.get(k, ZERO) + w * c
    return tuple((k, v) for k, v in out.items() if not v.is_zero())


@lru_cache(maxsize=1)
def _c_square() -> dict:
    return {OscMonomial(1, 1, 0): parse_scalar("q^(-1)*[2]"), OscMonomial(0, 0, 0): parse_scalar("1/varpi")}


class OscPoly:
    """Normal-ordered element sum c * abar^i a^j c^eps."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[OscMonomial, Scalar] | None = None):
        self.terms = {OscMonomial(*m): c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def gen(cls, name: str) -> "OscPoly":
        m = {"abar": (1, 0, 0), "a": (0, 1, 0), "c": (0, 0, 1)}[name]
        return cls({m: ONE})

    @classmethod
    def scalar(cls, c) -> "OscPoly":
        return cls({(0, 0, 0): c if isinstance(c, Scalar) else Scalar.const(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = other if isinstance(other, OscPoly) else OscPoly.scalar(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return OscPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return OscPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-(other if isinstance(other, OscPoly) else OscPoly.scalar(other)))

    def __mul__(self, other):
        if not isinstance(other, OscPoly):
            return self.scale(other if isinstance(other, Scalar) else Scalar.const(other))
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if m1.eps and c2.parity():
                    c = -c
                for m, v in _mono_mul(m1, m2).items():
                    out[m] = out[m] + c * v if m in out else c * v
        return OscPoly(out)

    def __pow__(self, n: int):
        out = OscPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Scalar) -> "OscPoly":
        return OscPoly({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        other = other if isinstance(other, OscPoly) else OscPoly.scalar(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_element({m.word(): c for m, c in self.terms.items()},
                              order=lambda w: (len(w), w))

    __repr__ = __str__


@lru_cache(maxsize=None)
def _mono_mul_cached(m1: OscMonomial, m2: OscMonomial) -> tuple:
    i1, j1, e1 = m1
    i2, j2, e2 = m2
    # c abar = q^-1 abar c and c a = q a c
    pre = _q(e1 * (j2 - i2))
    out: dict = {}
    for (i, j), c in _reorder(j1, i2):
        base = OscMonomial(i1 + i, j + j2, 0)
        coeff = pre * c
        if e1 + e2 < 2:
            m = OscMonomial(base.i, base.j, e1 + e2)
            out[m] = out.get(m, ZERO) + coeff
            continue
        for m, v in (OscPoly({base: coeff}) * OscPoly(_c_square())).terms.items():
            out[m] = out.get(m, ZERO) + v
    return tuple((m, v) for m, v in out.items() if not v.is_zero())


def _mono_mul(m1, m2) -> dict:
    return dict(_mono_mul_cached(OscMonomial(*m1), OscMonomial(*m2)))


def oscillator_normal_form(p) -> OscPoly:
    """Normal form of a word, a list of words, or an OscPoly (already normal)."""
    if isinstance(p, OscPoly):
        return p
    if isinstance(p, str):
        return parse_osc(p)
    out = OscPoly.scalar(1)
    for g in p:
        out = out * OscPoly.gen(g)
    return out


def parse_osc(text: str) -> OscPoly:
    gens = {g: OscPoly.gen(g) for g in ("abar", "a", "c")}
    return parse_element(text, gens, OscPoly.scalar)


OSC_RELATIONS = [
    ("abar c", "abar*c - q*c*abar"),
    ("a c", "a*c - q^(-1)*c*a"),
    ("a abar", "a*abar - q^(-2)*abar*a - 1"),
    ("c c", "c*c - q^(-1)*[2]*abar*a - 1/varpi"),
]


def superplane_r() -> Scalar:
    return parse_scalar("-q/varpi")


def superplane_iso_residuals() -> dict[str, OscPoly]:
    images = {"z1": OscPoly.gen("abar"), "z0": OscPoly.gen("c"), "zm1": -OscPoly.gen("a")}
    rels = covariant._rels(covariant.SUPERSPACE0, covariant._Z, {"r": superplane_r()})
    one = OscPoly.scalar(1)
    return {rel.label: evaluate(rel.poly, images, one) for rel in rels}


def superplane_iso_check() -> bool:
    return all(v.is_zero() for v in superplane_iso_residuals().values())


def oscillator_r() -> Scalar:
    return parse_scalar("q^2/varpi^2*[4]/[3]!")


def oscillator_xi() -> Scalar:
    return parse_scalar("[6]/[3]!*q/varpi*([4]/[3]!)^(1/2)")


OSC_SPHERE = {
    "Y2": "abar^2",
    "Y1": "q^(-1/2)*([4]/[2])^(1/2)*abar*c",
    "Y0": "-sqrt([4]!)/(q*[2])*abar*a - q^(-1/2)/varpi*([4]/[3]!)^(1/2)",
    "Ym1": "-q^(-1/2)*([4]/[2])^(1/2)*c*a",
    "Ym2": "a^2",
}


def oscillator_sphere_images() -> dict[str, OscPoly]:
    return {k: parse_osc(v) for k, v in OSC_SPHERE.items()}


def oscillator_sphere_residuals() -> dict[str, OscPoly]:
    images = oscillator_sphere_images()
    one = OscPoly.scalar(1)
    return {rel.label: evaluate(rel.poly, images, one) for rel in sphere_suite(oscillator_r(), oscillator_xi())}


def oscillator_sphere_check() -> bool:
    return all(v.is_zero() for v in oscillator_sphere_residuals().values())


# ---------------------------------------------------------------------------
# Fock space

class SparseOp:
    """Sparse numeric operator {(row, col): value}."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict | None = None):
        self.n = n
        self.entries = {k: v for k, v in (entries or {}).items() if v != 0}

    @classmethod
    def identity(cls, n: int) -> "SparseOp":
        return cls(n, {(i, i): mpmath.mpf(1) for i in range(n)})

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseOp(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SparseOp":
        return SparseOp(self.n, {k: c * v for k, v in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, SparseOp):
            return self.scale(other)
        cols: dict[int, list] = {}
        for (i, j), v in other.entries.items():
            cols.setdefault(i, []).append((j, v))
        out: dict = {}
        for (i, k), v in self.entries.items():
            for j, w in cols.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + v * w
        return SparseOp(self.n, out)

    def matrix(self) -> mpmath.matrix:
        m = mpmath.matrix(self.n, self.n)
        for (i, j), v in self.entries.items():
            m[i, j] = v
        return m

    def max_on(self, cols) -> mpmath.mpf:
        cols = set(cols)
        vals = [abs(v) for (i, j), v in self.entries.items() if j in cols]
        return max(vals) if vals else mpmath.mpf(0)


@dataclass
class FockModel:
    cutoff: int
    q: object
    precision: int
    abar: SparseOp
    a: SparseOp
    c: SparseOp
    residuals: dict[str, mpmath.mpf] = field(default_factory=dict)

    def index(self, n: int, p: int) -> int:
        return 2 * n + p

    def level_states(self, max_level: int) -> list[int]:
        return [self.index(n, p) for n in range(min(max_level, self.cutoff - 1) + 1) for p in (0, 1)]

    def ops(self) -> dict[str, SparseOp]:
        return {"abar": self.abar, "a": self.a, "c": self.c}

    @property
    def dps(self) -> int:
        return working_dps(self.cutoff, self.q, self.precision)

    def number(self, x: Scalar):
        with mpmath.workdps(self.dps):
            return eval_numeric(x, self.q, precision=self.dps)

    def evaluate_osc(self, p: OscPoly) -> SparseOp:
        n = 2 * self.cutoff
        total = SparseOp(n)
        with mpmath.workdps(self.dps):
            for m, c in p.terms.items():
                op = SparseOp.identity(n)
                for g in m.word():
                    op = op * self.ops()[g]
                total = total + op.scale(self.number(c))
        return total

    def evaluate_free(self, p: FreeGradedPoly, images: Mapping[str, SparseOp]) -> SparseOp:
        n = 2 * self.cutoff
        total = SparseOp(n)
        with mpmath.workdps(self.dps):
            for w, c in p.terms.items():
                op = SparseOp.identity(n)
                for g in w:
                    op = op * images[g]
                total = total + op.scale(self.number(c))
        return total

    def as_dict(self) -> dict:
        return {
            "q": str(self.q), "cutoff": self.cutoff, "precision": self.precision,
            "residuals": {k: mpmath.nstr(v, 5) for k, v in sorted(self.residuals.items())},
        }


def working_dps(cutoff: int, q, precision: int) -> int:
    # matrix entries grow like q^(-2n); products of two sphere generators square that
    import math
    return precision + 10 + int(4 * cutoff * math.log10(1 / float(q))) + 1


def fock_weights(cutoff: int, q, precision: int = 50) -> list:
    """w_n with a abar - q^-2 abar a = 1 and a|0> = 0: w_n = sum_{t<n} q^(-2t)."""
    with mpmath.workdps(precision + 10):
        qq = mpmath.mpf(q.numerator) / q.denominator if isinstance(q, Fraction) else mpmath.mpf(q)
        w = [mpmath.mpf(0)]
        for n in range(1, cutoff):
            w.append(1 + w[-1] / qq ** 2)
        return w


def fock_representation(cutoff: int = 40, q=Fraction(1, 2), precision: int = 50) -> FockModel:
    if cutoff < 8:
        raise ValueError("cutoff must be at least 8")
    q = Fraction(q) if not isinstance(q, mpmath.mpf) else q
    if not (0 < q < 1):
        raise ValueError("q must lie in (0, 1)")
    dim = 2 * cutoff
    dps = working_dps(cutoff, q, precision)
    with mpmath.workdps(dps):
        qq = mpmath.mpf(q.numerator) / q.denominator if isinstance(q, Fraction) else mpmath.mpf(q)
        w = fock_weights(cutoff, q, dps)
        varpi = mpmath.sqrt(qq) + 1 / mpmath.sqrt(qq)
        # c^2 = q^-1 [2] w_n + 1/varpi collapses to q^(-2n)/varpi
        d = [qq ** (-n) / mpmath.sqrt(varpi) for n in range(cutoff)]
        ab, a, c = {}, {}, {}
        for n in range(cutoff):
            for p in (0, 1):
                col = 2 * n + p
                if n + 1 < cutoff:
                    ab[(2 * (n + 1) + p, col)] = mpmath.sqrt(w[n + 1])
                if n > 0:
                    a[(2 * (n - 1) + p, col)] = mpmath.sqrt(w[n])
                c[(2 * n + (1 - p), col)] = d[n]
    model = FockModel(cutoff, q, precision, SparseOp(dim, ab), SparseOp(dim, a), SparseOp(dim, c))
    model.residuals = fock_relation_residuals(model)
    return model


def fock_relation_residuals(model: FockModel, max_level: int | None = None) -> dict[str, mpmath.mpf]:
    lvl = model.cutoff - 2 if max_level is None else max_level
    cols = model.level_states(lvl)
    out = {}
    with mpmath.workdps(model.dps):
        for label, text in OSC_RELATIONS:
            out[label] = model.evaluate_free(_free_osc(text), model.ops()).max_on(cols)
    return out


OSC_PARITY = {"abar": 0, "a": 0, "c": 1}


def _free_osc(text: str) -> FreeGradedPoly:
    # unreduced words: the numeric route never sees the normal form
    return covariant.parse_free(text, OSC_PARITY)


def fock_sphere_residuals(model: FockModel, max_level: int | None = None) -> dict[str, mpmath.mpf]:
    """Sphere suite on the Fock model, away from the truncation edge."""
    lvl = model.cutoff - 5 if max_level is None else max_level
    cols = model.level_states(lvl)
    images = {k: model.evaluate_free(_free_osc(v), model.ops()) for k, v in OSC_SPHERE.items()}
    out = {}
    with mpmath.workdps(model.dps):
        for rel in sphere_suite(oscillator_r(), oscillator_xi()):
            out[rel.label] = model.evaluate_free(rel.poly, images).max_on(cols)
    return out


def fock_radius(model: FockModel, max_level: int | None = None):
    """The radius combination on low levels; returns (min, max) of its diagonal."""
    lvl = model.cutoff - 5 if max_level is None else max_level
    cols = model.level_states(lvl)
    images = {k: model.evaluate_free(_free_osc(v), model.ops()) for k, v in OSC_SPHERE.items()}
    op = model.evaluate_free(covariant.parse_free(covariant.SPHERE_RADIUS, covariant._Y), images)
    diag = [op.entries.get((i, i), mpmath.mpf(0)) for i in cols]
    off = max((abs(v) for (i, j), v in op.entries.items() if i != j and j in cols), default=mpmath.mpf(0))
    return min(diag), max(diag), off


__all__ = [
    "evaluate", "reduce_g", "EmbeddingMap", "embed_sphere", "sphere_images", "sphere_suite", "embedding_r",
    "embedding_xi", "twisted_primitive", "uword_coproduct", "twisted_primitive_annihilation",
    "AnnihilationReport", "OscMonomial", "OscPoly", "oscillator_normal_form", "parse_osc", "superplane_r",
    "superplane_iso_check", "superplane_iso_residuals", "oscillator_r", "oscillator_xi",
    "oscillator_sphere_check", "oscillator_sphere_residuals", "FockModel", "fock_representation",
    "fock_weights", "fock_relation_residuals", "fock_sphere_residuals", "fock_radius", "SparseOp",
]
