"""Covariant quadratic algebras built from CGC, and the rewriting checks that decide
whether a relation set actually defines a consistent algebra."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import afun
from .cgc import cgc, coupled_parity, _registered_factor
from .expr import ParseError, format_element, format_scalar, parse_element, parse_scalar
from .scalar import Scalar, classical_limit

ONE = Scalar.const(1)
ZERO = Scalar()

MAX_STEPS = 200_000


class NonTerminationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# named constants

CONSTANTS: dict[str, str] = {
    "mu11": "q + q^(-1)*[2]/[4]",
    "mu12": "q^(-1) + q*[2]/[4]",
    "mu21": "[2]/[4]*(q^(-2) + q^(3/2)*[2])",
    "mu22": "[2]/[4]*(q^2 - q^(-3/2)*[2])",
    "mu23": "[2]^2/[4]*([8]/[4] + 2*[4]/[2] + 1)",
    "mu31": "-sqrt([4]!)/[2]^2*omega",
    "mu32": "([4]/[3]!)^(1/2)*(q^2 + q^(-1/2)*[2])",
    "mu33": "([4]/[3]!)^(1/2)*(q^(-2) - q^(1/2)*[2])",
    "F1": "varpi*(q^2 + q + 1 + q^(-1) + q^(-2))*[2]^2/[4]",
    "F2": "varpi*(q^2 + 2*q + 2*q^(-1) + q^(-2))*[3]!*[2]/([6]*[4])",
    "K": "sqrt([3]!/[4])",
}


def constant(name: str) -> Scalar:
    if name == "varpi":
        return parse_scalar("varpi")
    if name in ("kappa1", "kappa2", "kappa3"):
        return afun.kappas()[int(name[-1]) - 1]
    return parse_scalar(_expand(CONSTANTS[name]))


def _expand(text: str) -> str:
    # longest names first so mu1 never clobbers mu11
    for name in sorted(CONSTANTS, key=len, reverse=True):
        if name in text:
            text = re.sub(rf"\b{name}\b", f"({CONSTANTS[name]})", text)
    return text


# ---------------------------------------------------------------------------
# free graded polynomials

class FreeGradedPoly:
    """Scalar combination of words over named generators (no relations)."""

    __slots__ = ("terms", "parity_of")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None, parity_of: Mapping[str, int] | None = None):
        self.parity_of = parity_of if parity_of is not None else {}
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def gen(cls, name: str, parity_of: Mapping[str, int]) -> "FreeGradedPoly":
        if name not in parity_of:
            raise KeyError(name)
        return cls({(name,): ONE}, parity_of)

    @classmethod
    def scalar(cls, c, parity_of: Mapping[str, int]) -> "FreeGradedPoly":
        return cls({(): c if isinstance(c, Scalar) else Scalar.const(c)}, parity_of)

    def word_parity(self, w) -> int:
        return sum(self.parity_of[g] for g in w) % 2

    def _lift(self, x) -> "FreeGradedPoly":
        if isinstance(x, FreeGradedPoly):
            return x
        return FreeGradedPoly.scalar(x, self.parity_of)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FreeGradedPoly):
            other = self._lift(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return FreeGradedPoly({w: -c for w, c in self.terms.items()}, self.parity_of)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeGradedPoly(out, self.parity_of or other.parity_of)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            p1 = self.word_parity(w1)
            for w2, c2 in other.terms.items():
                c = c1 * c2
                if p1 and c2.parity():
                    c = -c
                w = w1 + w2
                out[w] = out[w] + c if w in out else c
        return FreeGradedPoly(out, self.parity_of or other.parity_of)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, n: int):
        out = self._lift(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Scalar) -> "FreeGradedPoly":
        """c * self with c on the left (no sign)."""
        return FreeGradedPoly({w: c * v for w, v in self.terms.items()}, self.parity_of)

    def degree_part(self, d: int) -> "FreeGradedPoly":
        return FreeGradedPoly({w: c for w, c in self.terms.items() if len(w) == d}, self.parity_of)

    def coefficient(self, w) -> Scalar:
        return self.terms.get(tuple(w), ZERO)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "FreeGradedPoly":
        return FreeGradedPoly({w: fn(c) for w, c in self.terms.items()}, self.parity_of)

    def to_str(self, order=None) -> str:
        return format_element(self.terms, order=order)

    def __str__(self):
        return self.to_str()

    __repr__ = __str__


def parse_free(text: str, parity_of: Mapping[str, int]) -> FreeGradedPoly:
    gens = {g: FreeGradedPoly.gen(g, parity_of) for g in parity_of}
    return parse_element(_expand(text), gens, lambda c: FreeGradedPoly.scalar(c, parity_of))


# ---------------------------------------------------------------------------
# generator families

def _family(prefix: str, ell: int, lam: int) -> list[tuple[str, int]]:
    """Generators e_m for m = ell..-ell (largest first) with parity ell - m + lam."""
    out = []
    for m in range(ell, -ell - 1, -1):
        out.append((gen_name(prefix, m), (ell - m + lam) % 2))
    return out


def gen_name(prefix: str, m: int) -> str:
    return f"{prefix}{m}" if m >= 0 else f"{prefix}m{-m}"


_PREFIX = {(1, 0): "z", (1, 1): "theta", (2, 0): "Y"}


def family_prefix(ell: int, lam: int) -> str:
    return _PREFIX.get((ell, lam), f"e{ell}_{lam}_")


# ---------------------------------------------------------------------------
# presentations

@dataclass
class Relation:
    label: str
    poly: FreeGradedPoly
    kind: str = "commutation"  # or radius / constraint


@dataclass
class Presentation:
    name: str
    generators: list[tuple[str, int]]  # largest rank first
    params: dict[str, int]
    rules: dict[tuple, FreeGradedPoly]
    constants: list[tuple[str, FreeGradedPoly]] = field(default_factory=list)
    relations: list[Relation] = field(default_factory=list)
    degenerate: list[FreeGradedPoly] = field(default_factory=list)

    def __post_init__(self):
        self.parity_of = dict(self.generators)
        n = len(self.generators)
        self.rank = {g: n - i for i, (g, _) in enumerate(self.generators)}
        self._nf: dict = {}

    # -- words
    def word_key(self, w) -> tuple:
        return (len(w), tuple(self.rank[g] for g in w))

    def gen(self, name: str) -> FreeGradedPoly:
        return FreeGradedPoly.gen(name, self.parity_of)

    def parse(self, text: str) -> FreeGradedPoly:
        return parse_free(text, self.parity_of)

    def lift(self, c) -> FreeGradedPoly:
        return FreeGradedPoly.scalar(c, self.parity_of)

    # -- rewriting
    def _positions(self, w) -> list[tuple[int, tuple]]:
        out = []
        for lhs in self.rules:
            k = len(lhs)
            for i in range(len(w) - k + 1):
                if w[i:i + k] == lhs:
                    out.append((i, lhs))
        out.sort()
        return out

    def rewrite_at(self, w: tuple, i: int, lhs: tuple) -> FreeGradedPoly:
        """One rewrite of the word w at position i."""
        prefix, suffix = w[:i], w[i + len(lhs):]
        pp = sum(self.parity_of[g] for g in prefix) % 2
        out = {}
        for u, c in self.rules[lhs].terms.items():
            if pp and c.parity():
                c = -c
            nw = prefix + u + suffix
            out[nw] = out[nw] + c if nw in out else c
        return FreeGradedPoly(out, self.parity_of)

    def normal_word(self, w: tuple) -> FreeGradedPoly:
        w = tuple(w)
        hit = self._nf.get(w)
        if hit is not None:
            return hit
        steps = [0]
        return self._normal_word(w, steps, set())

    def _normal_word(self, w, steps, active) -> FreeGradedPoly:
        hit = self._nf.get(w)
        if hit is not None:
            return hit
        if w in active:
            raise NonTerminationError(f"rewrite cycle through {' '.join(w)}")
        steps[0] += 1
        if steps[0] > MAX_STEPS:
            raise NonTerminationError("step bound exceeded")
        pos = self._positions(w)
        if not pos:
            res = FreeGradedPoly({w: ONE}, self.parity_of)
        else:
            active.add(w)
            i, lhs = pos[0]
            res = FreeGradedPoly({}, self.parity_of)
            for u, c in self.rewrite_at(w, i, lhs).terms.items():
                res = res + self._normal_word(u, steps, active).scale(c)
            active.discard(w)
        self._nf[w] = res
        return res

    def normal_form(self, p: FreeGradedPoly) -> FreeGradedPoly:
        out = FreeGradedPoly({}, self.parity_of)
        for w, c in p.terms.items():
            out = out + self.normal_word(w).scale(c)
        return out

    def is_normal(self, w) -> bool:
        return not self._positions(tuple(w))

    # -- printing
    def rule_lines(self) -> list[str]:
        key = self.word_key
        out = []
        for lhs in sorted(self.rules, key=key, reverse=True):
            rhs = self.rules[lhs].to_str(order=lambda w: tuple(-x for x in (len(w),) + key(w)[1]))
            out.append(f"{'*'.join(lhs)} -> {rhs}")
        return out

    def __str__(self):
        return "\n".join(self.rule_lines())


def build_presentation(name: str, generators: Sequence[tuple[str, int]], params: Mapping[str, int],
                       relations: Sequence[Relation], constants: Sequence[tuple[str, FreeGradedPoly]] = ()
                       ) -> Presentation:
    """Orient a quadratic relation list into rewrite rules by exact row reduction."""
    pres = Presentation(name, list(generators), dict(params), {}, list(constants), list(relations))
    key = pres.word_key
    rows = [dict(r.poly.terms) for r in relations]
    cols = sorted({w for r in rows for w in r if len(w) >= 2}, key=key, reverse=True)
    pivots: dict[tuple, int] = {}
    used: set[int] = set()
    for col in cols:
        cands = [i for i, r in enumerate(rows) if i not in used and col in r and not r[col].has_params()]
        if not cands:
            continue
        # rational pivots first, then fewest radical terms
        i = min(cands, key=lambda i: (not rows[i][col].is_rational(), len(rows[i][col].terms), i))
        inv = rows[i][col].inverse()
        rows[i] = {w: inv * c for w, c in rows[i].items()}
        for j, r in enumerate(rows):
            if j == i or col not in r:
                continue
            f = r[col]
            new = dict(r)
            for w, c in rows[i].items():
                v = (new[w] - f * c) if w in new else -(f * c)
                if v.is_zero():
                    new.pop(w, None)
                else:
                    new[w] = v
            new.pop(col, None)
            rows[j] = new
        pivots[col] = i
        used.add(i)
    for col, i in pivots.items():
        rhs = {w: -c for w, c in rows[i].items() if w != col}
        pres.rules[col] = FreeGradedPoly(rhs, pres.parity_of)
    for i, r in enumerate(rows):
        if i not in used and r:
            pres.degenerate.append(FreeGradedPoly(r, pres.parity_of))
    return pres


# ---------------------------------------------------------------------------
# consistency

@dataclass
class ConsistencyReport:
    name: str
    condition_a: list[tuple[str, str, FreeGradedPoly]]
    condition_b: list[tuple[tuple, FreeGradedPoly, FreeGradedPoly, bool]]
    degenerate: list[FreeGradedPoly] = field(default_factory=list)

    @property
    def a_ok(self) -> bool:
        return all(r.is_zero() for _, _, r in self.condition_a)

    @property
    def b_ok(self) -> bool:
        return all(eq for *_, eq in self.condition_b)

    @property
    def passed(self) -> bool:
        return self.a_ok and self.b_ok and not self.degenerate

    def failing_diamonds(self):
        return [row for row in self.condition_b if not row[3]]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "condition_a": [{"constant": c, "generator": g, "residual": str(r)} for c, g, r in self.condition_a],
            "condition_b": [{"triple": list(t), "path1": str(p1), "path2": str(p2), "equal": eq}
                            for t, p1, p2, eq in self.condition_b],
            "degenerate": [str(d) for d in self.degenerate],
        }

    def to_csv(self) -> str:
        import csv
        import io
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["triple", "path1", "path2", "equal"])
        for t, p1, p2, eq in self.condition_b:
            w.writerow([" ".join(t), str(p1), str(p2), "true" if eq else "false"])
        return buf.getvalue()


def diamond(pres: Presentation, word: tuple) -> tuple[FreeGradedPoly, FreeGradedPoly]:
    """Reduce word starting at its leftmost and at its rightmost redex."""
    pos = pres._positions(word)
    if not pos:
        p = FreeGradedPoly({word: ONE}, pres.parity_of)
        return p, p
    first = pres.normal_form(pres.rewrite_at(word, *pos[0]))
    last = pres.normal_form(pres.rewrite_at(word, *pos[-1]))
    return first, last


def consistency_check(pres: Presentation) -> ConsistencyReport:
    gens = [g for g, _ in pres.generators]
    a = []
    for cname, expr in pres.constants:
        for g in gens:
            x = pres.gen(g)
            a.append((cname, g, pres.normal_form(expr * x - x * expr)))
    b = []
    for t in itertools.product(gens, repeat=3):
        p1, p2 = diamond(pres, t)
        b.append((t, p1, p2, (p1 - p2).is_zero()))
    return ConsistencyReport(pres.name, a, b, list(pres.degenerate))


# ---------------------------------------------------------------------------
# classical limit

def classical_image(p: FreeGradedPoly, rank: Mapping[str, int]) -> dict | None:
    """Image of the quadratic part in the supercommutative algebra at q = 1.

    The relation is rescaled by one of its coefficients so that no coefficient
    has a pole; None when no such rescaling exists."""
    quad = p.degree_part(2)
    if quad.is_zero():
        return {}
    for c0 in sorted(quad.terms.values(), key=lambda c: (len(c.terms), str(c))):
        inv = c0.inverse()
        lims = {}
        for w, c in quad.terms.items():
            v = classical_limit(c * inv)
            if v is None:
                break
            lims[w] = v
        else:
            return _supercommute(lims, p.parity_of, rank)
    return None


def _supercommute(terms: Mapping[tuple, Scalar], parity_of, rank) -> dict:
    out: dict = {}
    for w, c in terms.items():
        x, y = w
        if x == y and parity_of[x]:
            continue
        if rank[x] < rank[y]:
            x, y = y, x
            if parity_of[x] and parity_of[y]:
                c = -c
        k = (x, y)
        out[k] = out[k] + c if k in out else c
    return {k: v for k, v in out.items() if not v.is_zero()}


def classical_limit_ok(pres: Presentation) -> list[tuple[str, bool]]:
    """For each commutation-type relation: does it reduce to supercommutativity at q = 1?"""
    out = []
    for rel in pres.relations:
        if rel.kind != "commutation":
            continue
        img = classical_image(rel.poly, pres.rank)
        out.append((rel.label, img == {}))
    return out


# ---------------------------------------------------------------------------
# composite relations

def _check_composite_args(ell, lam, L, M):
    if not (0 <= L <= 2 * ell) or abs(M) > L:
        raise ValueError(f"need 0 <= L <= 2*ell and |M| <= L, got ell={ell} L={L} M={M}")


def composite_parity(ell: int, L: int) -> int:
    """Parity class Lambda of the coupled multiplet E^L."""
    return coupled_parity(ell, ell, L)


def family(ell: int, lam: int) -> list[tuple[str, int]]:
    return _family(family_prefix(ell, lam), ell, lam)


def composite_object(ell: int, lam: int, L: int, M: int, normalize: bool = True) -> FreeGradedPoly:
    """E^L_M = sum over m1 + m2 = M of CGC * e_m1 e_m2 (divided by the table factor)."""
    _check_composite_args(ell, lam, L, M)
    pre = family_prefix(ell, lam)
    par = dict(family(ell, lam))
    of = _registered_factor(ell, ell, L, M, lam) if normalize else None
    inv = of.inverse() if of is not None else ONE
    terms = {}
    for m1 in range(ell, -ell - 1, -1):
        m2 = M - m1
        if abs(m2) > ell:
            continue
        c = cgc(ell, ell, L, m1, m2, lam)
        if not c.is_zero():
            terms[(gen_name(pre, m1), gen_name(pre, m2))] = c * inv
    return FreeGradedPoly(terms, par)


def composite_relation(ell: int, lam: int, L: int, M: int, r="r", xi=None,
                       allow_unacceptable: bool = True) -> FreeGradedPoly:
    """E^L_M - r (L = 0), E^L_M - xi e_M (L = ell), E^L_M otherwise."""
    if not allow_unacceptable and is_unacceptable(ell, lam, L):
        raise ValueError(f"L={L} relations of the ell={ell}, lambda={lam} family are unacceptable")
    e = composite_object(ell, lam, L, M)
    if L == 0:
        e = e - _as_scalar(r)
    elif L == ell:
        if xi is None:
            xi = "xi_odd" if composite_parity(ell, L) != lam else "xi"
        x = _as_scalar(xi)
        e = e - FreeGradedPoly.gen(gen_name(family_prefix(ell, lam), M), e.parity_of).scale(x)
    return e


def _as_scalar(v) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, str):
        return parse_scalar(v)
    return Scalar.const(v)


# relation families rejected for their q -> 1 limit: (ell, lambda, L)
UNACCEPTABLE = frozenset({(2, 0, 4), (1, 1, 1), (1, 0, 2)})


def is_unacceptable(ell: int, lam: int, L: int) -> bool:
    return (ell, lam, L) in UNACCEPTABLE


def classical_defect(ell: int, lam: int, L: int) -> dict[int, dict | None]:
    """Supercommutative image at q = 1 of each E^L_M; empty dicts mean a clean limit."""
    gens = family(ell, lam)
    rank = {g: len(gens) - i for i, (g, _) in enumerate(gens)}
    return {M: classical_image(composite_object(ell, lam, L, M), rank) for M in range(-L, L + 1)}


# ---------------------------------------------------------------------------
# right coaction

def _coaction_gen(ell: int, lam: int):
    T = afun.corep_matrix(ell, lam)
    return {m: [(m2, T.entries[(m2, m)]) for m2 in T.indices() if not T.entries[(m2, m)].is_zero()]
            for m in T.indices()}


def coaction(p: FreeGradedPoly, ell: int, lam: int) -> dict[tuple, afun.NCPoly]:
    """Right coaction applied letter by letter; result maps free words to function-algebra elements."""
    pre = family_prefix(ell, lam)
    index = {gen_name(pre, m): m for m in range(-ell, ell + 1)}
    cols = _coaction_gen(ell, lam)
    par = dict(family(ell, lam))
    out: dict[tuple, afun.NCPoly] = {}
    for w, c in p.terms.items():
        acc: dict[tuple, afun.NCPoly] = {(): afun.NCPoly.scalar(c)}
        for g in w:
            m = index[g]
            nxt: dict[tuple, afun.NCPoly] = {}
            for fw, a in acc.items():
                for m2, t in cols[m]:
                    gname = gen_name(pre, m2)
                    # (fw (x) a)(g' (x) t) = (-1)^{|a||g'|} fw g' (x) a t
                    term = a * t
                    if par[gname] and a.parity():
                        term = -term
                    key = fw + (gname,)
                    nxt[key] = nxt[key] + term if key in nxt else term
            acc = nxt
        for k, v in acc.items():
            out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def verify_coaction_covariance(ell: int, lam: int, L: int) -> bool:
    Lam = composite_parity(ell, L)
    TL = afun.corep_matrix(L, Lam, bound=max(L, 1))
    for M in range(-L, L + 1):
        # raw CGC weights: the table factors differ between rows
        lhs = coaction(composite_object(ell, lam, L, M, normalize=False), ell, lam)
        rhs: dict = {}
        for M2 in range(-L, L + 1):
            t = TL.entries[(M2, M)]
            if t.is_zero():
                continue
            for w, c in composite_object(ell, lam, L, M2, normalize=False).terms.items():
                v = t.scale(c)
                rhs[w] = rhs[w] + v if w in rhs else v
        for w in set(lhs) | set(rhs):
            d = lhs.get(w, afun.NCPoly.scalar(ZERO)) - rhs.get(w, afun.NCPoly.scalar(ZERO))
            if not d.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# the quantum superspaces

Z_GENS = _family("z", 1, 0)
THETA_GENS = _family("theta", 1, 1)
Y_GENS = _family("Y", 2, 0)

_Z = dict(Z_GENS)
_TH = dict(THETA_GENS)
_Y = dict(Y_GENS)
COVARIANT_PARITY = {**_Z, **_TH, **_Y}


def _rels(texts: Sequence[tuple[str, str, str]], par, subst: Mapping[str, Scalar]) -> list[Relation]:
    out = []
    for label, kind, text in texts:
        p = parse_free(text, par)
        out.append(Relation(label, _substitute(p, subst), kind))
    return out


def _substitute(p: FreeGradedPoly, subst: Mapping[str, Scalar]) -> FreeGradedPoly:
    if not subst:
        return p
    return p.map_coefficients(lambda c: substitute_params(c, subst))


def substitute_params(c: Scalar, subst: Mapping[str, Scalar]) -> Scalar:
    """Replace whole-exponent occurrences of named parameters by scalars."""
    out = ZERO
    for (rad, (even, odd)), lr in c.terms.items():
        term = Scalar._raw({(rad, ((), ())): lr})
        rest_even = []
        for name, h in even:
            if name in subst:
                if h % 2:
                    raise ValueError(f"half-integer power of substituted parameter {name}")
                v = subst[name]
                term = term * (v ** (h // 2) if h > 0 else v.inverse() ** (-h // 2))
            else:
                rest_even.append((name, h))
        rest_odd = []
        for name in odd:
            if name in subst:
                raise ValueError("cannot substitute an odd parameter")
            rest_odd.append(name)
        if rest_even or rest_odd:
            term = _param_monomial(term, tuple(rest_even), tuple(rest_odd))
        out = out + term
    return out


def _param_monomial(term: Scalar, even: tuple, odd: tuple) -> Scalar:
    mono = ONE
    for name, h in even:
        mono = mono * Scalar.param(name, half_exponent=h)
    for name in odd:
        mono = mono * Scalar.param(name, odd=True)
    return term * mono


SUPERSPACE0_RAW = [
    ("radius", "radius", "q^(1/2)*zm1*z1 + z0^2 - q^(-1/2)*z1*zm1 - r"),
    ("L1_p1", "commutation", "-q^(1/2)*z0*z1 + q^(-1/2)*z1*z0 - XI*z1"),
    ("L1_0", "commutation", "zm1*z1 + varpi*z0^2 - z1*zm1 - XI*z0"),
    ("L1_m1", "commutation", "q^(1/2)*zm1*z0 - q^(-1/2)*z0*zm1 - XI*zm1"),
]

SUPERSPACE0 = [
    ("z1z0", "commutation", "z1*z0 - q*z0*z1"),
    ("z0zm1", "commutation", "z0*zm1 - q*zm1*z0"),
    ("z1zm1", "commutation", "z1*zm1 - q^2*zm1*z1 + q*varpi*r"),
    ("z0z0", "radius", "z0^2 + q^(-1)*[2]*z1*zm1 + q^(-1)*r"),
]


def _radius_constant(texts, par, subst) -> list[tuple[str, FreeGradedPoly]]:
    for label, kind, text in texts:
        if kind == "radius" and label == "radius":
            return [("r", _substitute(parse_free(text.replace("- r", ""), par), subst))]
    return []


def superspace0(r="r", xi=0) -> Presentation:
    """Quantum superspace from the l = 1, lambda = 0 corepresentation.

    With xi = 0 this is the adopted four-relation algebra; a nonzero (odd) xi
    keeps the L = 1 relations in their general form."""
    subst = {"r": _as_scalar(r)} if not (isinstance(r, str) and r == "r") else {}
    texts = SUPERSPACE0_RAW if not _is_zero_xi(xi) else SUPERSPACE0
    xs = _xi_text(xi)
    texts = [(lb, k, t.replace("XI", xs)) for lb, k, t in texts]
    params = {"r": 0}
    if not _is_zero_xi(xi):
        params[xs if xs.isidentifier() else "xi_odd"] = 1
    rad = _radius_constant(SUPERSPACE0_RAW, _Z, subst)
    rels = _rels(texts, _Z, subst)
    return build_presentation("superspace0", Z_GENS, params, rels, rad)


def _is_zero_xi(xi) -> bool:
    return (isinstance(xi, int) and xi == 0) or (isinstance(xi, Scalar) and xi.is_zero())


def _xi_text(xi) -> str:
    if isinstance(xi, str):
        return xi
    if isinstance(xi, Scalar):
        return f"({format_scalar(xi)})"
    return f"({xi})"


SUPERSPACE1 = {
    "L2_only": [
        ("theta1sq", "commutation", "theta1^2"),
        ("thetam1sq", "commutation", "thetam1^2"),
        ("L2_1", "commutation", "q^(-1/2)*theta0*theta1 - q^(1/2)*theta1*theta0"),
        ("L2_0", "commutation", "q^(-1)*thetam1*theta1 - [2]*theta0^2 + q*theta1*thetam1"),
        ("L2_m1", "commutation", "-q^(-1/2)*thetam1*theta0 + q^(1/2)*theta0*thetam1"),
    ],
}

# printed form of the with_radius set; its theta0^2 line carries a wrong r coefficient
SUPERSPACE1_WITH_RADIUS_PRINTED = [
    ("theta1sq", "commutation", "theta1^2"),
    ("thetam1sq", "commutation", "thetam1^2"),
    ("theta1theta0", "commutation", "q*theta1*theta0 - theta0*theta1"),
    ("theta0thetam1", "commutation", "q*theta0*thetam1 - thetam1*theta0"),
    ("anti", "commutation", "theta1*thetam1 + thetam1*theta1 + [2]/[3]*r"),
    ("theta0sq", "radius", "theta0^2 + varpi*theta1*thetam1 + q^(1/2)*[2]/[3]*r"),
]

SUPERSPACE1_RADIUS = "q^(1/2)*thetam1*theta1 - theta0^2 - q^(-1/2)*theta1*thetam1"


def superspace1(kind: str = "L2_only", r="r") -> Presentation:
    """Quantum superspace from the l = 1, lambda = 1 corepresentation."""
    if kind not in ("L2_only", "with_radius"):
        raise ValueError("kind must be L2_only or with_radius")
    subst = {"r": _as_scalar(r)} if not (isinstance(r, str) and r == "r") else {}
    rels = _rels(SUPERSPACE1["L2_only"], _TH, subst)
    consts = []
    if kind == "with_radius":
        # the radius relation joins the L = 2 set
        radius = parse_free(SUPERSPACE1_RADIUS, _TH)
        rels.append(Relation("radius", radius - FreeGradedPoly.scalar(_as_scalar(r), _TH), "radius"))
        consts = [("r", radius)]
    return build_presentation(f"superspace1_{kind}", THETA_GENS, {"r": 0}, rels, consts)


def primed_theta() -> dict[str, FreeGradedPoly]:
    """theta'_0 = theta_0, theta'_{+-1} = -theta_{+-1}."""
    return {gen_name("thetap", m): FreeGradedPoly.gen(gen_name("theta", m), _TH).scale(Scalar.const((-1) ** (m % 2)))
            for m in (1, 0, -1)}


def verify_primed_basis() -> bool:
    """The primed theta's corepresent through T^1(0)."""
    T0 = afun.corep_matrix(1, 0)
    primed = primed_theta()
    for m in (1, 0, -1):
        lhs = coaction(primed[gen_name("thetap", m)], 1, 1)
        rhs: dict = {}
        for m2 in (1, 0, -1):
            t = T0.entries[(m2, m)]
            for w, c in primed[gen_name("thetap", m2)].terms.items():
                v = t.scale(c)
                rhs[w] = rhs[w] + v if w in rhs else v
        for w in set(lhs) | set(rhs):
            d = lhs.get(w, afun.NCPoly.scalar(ZERO)) - rhs.get(w, afun.NCPoly.scalar(ZERO))
            if not d.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# the supersphere

SPHERE_RADIUS = "q^(-1)*Y2*Ym2 - q^(-1/2)*Y1*Ym1 - Y0^2 + q^(1/2)*Ym1*Y1 + q*Ym2*Y2"

SPHERE_RAW = {
    1: [
        ("L1_1", "covariant", "q^(-3/2)*Y2*Ym1 - q^(-1/2)*K*Y1*Y0 - q^(1/2)*K*Y0*Y1 + q^(3/2)*Ym1*Y2"),
        ("L1_0", "covariant",
         "-q^(-1/2)*Y2*Ym2 + q^(-1)*mu11*Y1*Ym1 + varpi*[3]!/[4]*Y0^2 - q*mu12*Ym1*Y1 - q^(1/2)*Ym2*Y2"),
        ("L1_m1", "covariant", "-q^(-3/2)*Y1*Ym2 + q^(-1/2)*K*Y0*Ym1 + q^(1/2)*K*Ym1*Y0 - q^(3/2)*Ym2*Y1"),
    ],
    2: [
        ("L2_2", "commutation", "q^(-3/2)*Y2*Y0 - K*Y1^2 - q^(3/2)*Y0*Y2 - xi*Y2"),
        ("L2_1", "commutation",
         "q^(-1/2)*K*Y2*Ym1 + q^(-1/2)*mu21*Y1*Y0 - q^(1/2)*mu22*Y0*Y1 - q^(1/2)*K*Ym1*Y2 - xi*Y1"),
        ("L2_0", "commutation",
         "q^(1/2)*Y2*Ym2 - mu22*Y1*Ym1 + mu23*Y0^2 - mu21*Ym1*Y1 - q^(-1/2)*Ym2*Y2 - xi*Y0"),
        ("L2_m1", "commutation",
         "q^(-1/2)*K*Y1*Ym2 + q^(-1/2)*mu21*Y0*Ym1 - q^(1/2)*mu22*Ym1*Y0 - q^(1/2)*K*Ym2*Y1 - xi*Ym1"),
        ("L2_m2", "commutation", "q^(-3/2)*Y0*Ym2 - K*Ym1^2 - q^(3/2)*Ym2*Y0 - xi*Ym2"),
    ],
    3: [
        ("L3_3", "commutation", "q^(-1)*Y2*Y1 - q*Y1*Y2"),
        ("L3_2", "commutation", "Y2*Y0 - mu31*Y1^2 - Y0*Y2"),
        ("L3_1", "commutation", "q*Y2*Ym1 - mu32*Y1*Y0 + mu33*Y0*Y1 - q^(-1)*Ym1*Y2"),
        ("L3_0", "commutation",
         "-q^2*Y2*Ym2 + q^(1/2)*([3] + q^2)*Y1*Ym1 + [3]*omega*Y0^2"
         " + q^(-1/2)*([3] + q^(-2))*Ym1*Y1 + q^(-2)*Ym2*Y2"),
        ("L3_m1", "commutation", "q*Y1*Ym2 - mu32*Y0*Ym1 + mu33*Ym1*Y0 - q^(-1)*Ym2*Y1"),
        ("L3_m2", "commutation", "Y0*Ym2 - mu31*Ym1^2 - Ym2*Y0"),
        ("L3_m3", "commutation", "q^(-1)*Ym1*Ym2 - q*Ym2*Ym1"),
    ],
}

SPHERE_COMMUTATION = [
    ("Y2Y1", "commutation", "Y2*Y1 - q^2*Y1*Y2"),
    ("Ym1Ym2", "commutation", "Ym1*Ym2 - q^2*Ym2*Ym1"),
    ("Y2Y0", "commutation", "q^(-2)*Y2*Y0 - q^2*Y0*Y2 - varpi*[4]*[3]/[6]*xi*Y2"),
    ("Y0Ym2", "commutation", "q^(-2)*Y0*Ym2 - q^2*Ym2*Y0 - varpi*[4]*[3]/[6]*xi*Ym2"),
    ("Y2Ym1", "commutation", "q^(-3)*Y2*Ym1 - q^3*Ym1*Y2 - varpi*[3]*sqrt([4]!)/[6]*xi*Y1"),
    ("Y1Ym2", "commutation", "q^(-3)*Y1*Ym2 - q^3*Ym2*Y1 - varpi*[3]*sqrt([4]!)/[6]*xi*Ym1"),
    ("Y1Y0", "commutation", "q^(-1)*Y1*Y0 - q*Y0*Y1 - varpi*[3]!/[6]*xi*Y1"),
    ("Y0Ym1", "commutation", "q^(-1)*Y0*Ym1 - q*Ym1*Y0 - varpi*[3]!/[6]*xi*Ym1"),
    ("Y2Ym2", "commutation", "q^(-1)*mu11*Y2*Ym2 - q*mu12*Ym2*Y2 + F1*Y0^2 - F2*xi*Y0"),
    ("Y1Ym1", "commutation", "q^(-1/2)*Y1*Ym1 + q^(1/2)*Ym1*Y1 - omega*Y0^2 - varpi/(q + 1 + q^(-1))*xi*Y0"),
    ("Y1Y1", "commutation", "mu31*Y1^2 - Y2*Y0 + Y0*Y2"),
    ("Ym1Ym1", "commutation", "mu31*Ym1^2 - Y0*Ym2 + Ym2*Y0"),
]

SPHERE_CONSTRAINTS = [
    ("Y2Ym1_c", "constraint", "Y2*Ym1 - q^2/[3]*K*Y1*Y0 - q^(1/2)*[2]/[6]*K*xi*Y1"),
    ("Y1Ym2_c", "constraint", "Y1*Ym2 - q^2/[3]*K*Y0*Ym1 - q^(1/2)*[2]/[6]*K*xi*Ym1"),
    ("Y0Y0_c", "constraint",
     "Y0^2 - q^(-1)*[4]/[2]*Y2*Ym2 + q^(-1/2)*(q + q^(-1))*mu12*Y1*Ym1 + q^(-3/2)*[3]!/[6]*xi*Y0"),
]


def _sphere_subst(r, xi) -> dict:
    subst = {}
    if not (isinstance(r, str) and r == "r"):
        subst["r"] = _as_scalar(r)
    if not (isinstance(xi, str) and xi == "xi"):
        subst["xi"] = _as_scalar(xi)
    return subst


def sphere_radius(r="r", xi="xi") -> Relation:
    p = parse_free(SPHERE_RADIUS, _Y) - FreeGradedPoly.scalar(_as_scalar(r), _Y)
    return Relation("radius", p, "radius")


def raw_sphere_relations(L: int, xi="xi") -> list[Relation]:
    if L not in SPHERE_RAW:
        raise ValueError("L must be 1, 2 or 3")
    return _rels(SPHERE_RAW[L], _Y, _sphere_subst("r", xi))


def final_sphere_relations(xi="xi") -> list[Relation]:
    return _rels(SPHERE_COMMUTATION + SPHERE_CONSTRAINTS, _Y, _sphere_subst("r", xi))


def supersphere(r="r", xi="xi") -> Presentation:
    rels = [sphere_radius(r)] + _rels(SPHERE_COMMUTATION + SPHERE_CONSTRAINTS, _Y, _sphere_subst(r, xi))
    consts = [("r", parse_free(SPHERE_RADIUS, _Y))]
    return build_presentation("supersphere", Y_GENS, {"r": 0, "xi": 0}, rels, consts)


def sphere_raw_presentation(Ls: Iterable[int] = (2, 3), r="r", xi="xi") -> Presentation:
    rels = []
    for L in Ls:
        rels += _rels(SPHERE_RAW[L], _Y, _sphere_subst(r, xi))
    consts = [("r", parse_free(SPHERE_RADIUS, _Y))]
    name = "sphere_raw_" + "".join(str(L) for L in Ls)
    return build_presentation(name, Y_GENS, {"r": 0, "xi": 0}, rels, consts)


def _proportionality(p: FreeGradedPoly, q: FreeGradedPoly) -> Scalar | None:
    if q.is_zero():
        return ONE if p.is_zero() else None
    w = next(iter(q.terms))
    if w not in p.terms:
        return None
    f = p.terms[w] / q.terms[w]
    return f if (p - q.scale(f)).is_zero() else None


def _label_m(label: str) -> int:
    tag = label.rsplit("_", 1)[1]
    if tag[0] in "mp":
        return int(tag[1:]) * (-1 if tag[0] == "m" else 1)
    return int(tag)


def printed_composite_factors() -> list[tuple[str, Scalar | None]]:
    """Printed covariant relations against the CGC composites they should be multiples of.

    None marks a printed relation that is not proportional to its composite.
    """
    out = []
    for L in (1, 2, 3):
        for rel in raw_sphere_relations(L):
            comp = composite_relation(2, 0, L, _label_m(rel.label), xi="xi")
            out.append((f"sphere:{rel.label}", _proportionality(rel.poly, comp)))
    for label, _, text in SUPERSPACE0_RAW[1:]:
        rel = parse_free(text.replace("XI", "xi_odd"), _Z)
        out.append((f"superspace0:{label}",
                    _proportionality(rel, composite_relation(1, 0, 1, _label_m(label), xi="xi_odd"))))
    for label, _, text in SUPERSPACE1["L2_only"][2:]:
        rel = parse_free(text, _TH)
        out.append((f"superspace1:{label}", _proportionality(rel, composite_relation(1, 1, 2, _label_m(label)))))
    return out


# ---------------------------------------------------------------------------
# linear-combination certificates

@dataclass
class Certificate:
    label: str
    coefficients: dict[str, Scalar]
    ok: bool
    residual: FreeGradedPoly | None = None


def solve_combination(target: FreeGradedPoly, sources: Sequence[Relation]) -> Certificate | None:
    """Find x with target = sum x_i source_i exactly; None if the quadratic system is inconsistent."""
    words = sorted({w for s in sources for w in s.poly.terms} | set(target.terms),
                   key=lambda w: (len(w), w), reverse=True)
    n = len(sources)
    # augmented rows: one per word, columns = sources + target
    rows = []
    for w in words:
        if len(w) < 2:
            continue
        row = [s.poly.coefficient(w) for s in sources] + [target.coefficient(w)]
        rows.append(row)
    piv_cols = []
    r = 0
    for col in range(n):
        cand = [i for i in range(r, len(rows)) if not rows[i][col].is_zero() and not rows[i][col].has_params()]
        if not cand:
            continue
        i = min(cand, key=lambda i: (not rows[i][col].is_rational(), len(rows[i][col].terms)))
        rows[r], rows[i] = rows[i], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [inv * v for v in rows[r]]
        for j in range(len(rows)):
            if j != r and not rows[j][col].is_zero():
                f = rows[j][col]
                rows[j] = [a - f * b for a, b in zip(rows[j], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(rows)):
        if not rows[i][n].is_zero():
            return None
    x = {sources[c].label: rows[k][n] for k, c in enumerate(piv_cols)}
    combo = FreeGradedPoly({}, target.parity_of)
    for s in sources:
        if s.label in x and not x[s.label].is_zero():
            combo = combo + s.poly.scale(x[s.label])
    res = target - combo
    return Certificate("", {k: v for k, v in x.items() if not v.is_zero()}, res.is_zero(), res)


def verify_linear_combination(xi="xi") -> tuple[bool, list[Certificate]]:
    sources = []
    for L in (1, 2, 3):
        sources += raw_sphere_relations(L, xi)
    certs = []
    ok = True
    for rel in final_sphere_relations(xi):
        c = solve_combination(rel.poly, sources)
        if c is None:
            c = Certificate(rel.label, {}, False, None)
        c.label = rel.label
        certs.append(c)
        ok = ok and c.ok
    return ok, certs


# ---------------------------------------------------------------------------
# presentation files

def export_presentation(pres: Presentation) -> str:
    lines = [f"name: {pres.name}"]
    lines.append("generators: " + " ".join(f"{g}:{p}" for g, p in pres.generators))
    lines.append("parameters: " + " ".join(f"{k}:{v}" for k, v in sorted(pres.params.items())))
    for cname, expr in pres.constants:
        lines.append(f"constant: {cname} = {expr}")
    for line in pres.rule_lines():
        lines.append(f"rule: {line}")
    return "\n".join(lines) + "\n"


def load_presentation(text: str) -> Presentation:
    name = "presentation"
    gens: list[tuple[str, int]] = []
    params: dict[str, int] = {}
    consts_raw: list[tuple[str, str]] = []
    rules_raw: list[tuple[str, str]] = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        rest = rest.strip()
        if head == "name":
            name = rest
        elif head == "generators":
            for tok in rest.split():
                g, _, p = tok.partition(":")
                gens.append((g, int(p or 0)))
        elif head == "parameters":
            for tok in rest.split():
                k, _, p = tok.partition(":")
                params[k] = int(p or 0)
        elif head == "constant":
            cname, _, expr = rest.partition("=")
            consts_raw.append((cname.strip(), expr.strip()))
        elif head == "rule":
            lhs, sep, rhs = rest.partition("->")
            if not sep:
                raise ParseError(f"line {n}: rule needs '->'")
            rules_raw.append((lhs.strip(), rhs.strip()))
        else:
            raise ParseError(f"line {n}: unknown field {head!r}")
    par = dict(gens)
    rules = {}
    for lhs, rhs in rules_raw:
        word = tuple(t.strip() for t in lhs.split("*"))
        for g in word:
            if g not in par:
                raise ParseError(f"unknown generator {g!r} in rule {lhs}")
        rules[word] = parse_free(rhs, par)
    consts = [(c, parse_free(e, par)) for c, e in consts_raw]
    return Presentation(name, gens, params, rules, consts)


def presentation_latex(pres: Presentation, rules: bool = False) -> str:
    """Defining relations grouped by kind, or with ``rules=True`` the oriented rewrite rules."""
    from .expr import latex_scalar
    key = pres.word_key

    def body(p: FreeGradedPoly) -> str:
        parts = []
        for w in sorted(p.terms, key=key, reverse=True):
            word = " ".join(_latex_gen(g) for g in w)
            parts.append(f"\\left({latex_scalar(p.terms[w])}\\right) {word}".strip())
        return " + ".join(parts) if parts else "0"

    out = []
    if rules:
        out.append("\\begin{align*}")
        for lhs in sorted(pres.rules, key=key, reverse=True):
            out.append(f"  {' '.join(_latex_gen(g) for g in lhs)} &= {body(pres.rules[lhs])} \\\\")
        out.append("\\end{align*}")
        return "\n".join(out) + "\n"
    kinds = []
    for rel in pres.relations:
        if rel.kind not in kinds:
            kinds.append(rel.kind)
    for kind in kinds:
        out.append(f"% {kind}")
        out.append("\\begin{align*}")
        for rel in pres.relations:
            if rel.kind == kind:
                out.append(f"  0 &= {body(rel.poly)} && \\text{{{rel.label}}} \\\\")
        out.append("\\end{align*}")
    return "\n".join(out) + "\n"


def _latex_gen(g: str) -> str:
    for pre, tex in (("theta", "\\theta"), ("z", "z"), ("Y", "Y")):
        if g.startswith(pre):
            idx = g[len(pre):].replace("m", "-")
            return f"{tex}_{{{idx}}}"
    return g


def presentations_equal(a: Presentation, b: Presentation) -> bool:
    if a.generators != b.generators or set(a.rules) != set(b.rules):
        return False
    return all((a.rules[k] - b.rules[k]).is_zero() for k in a.rules)


__all__ = [
    "CONSTANTS", "constant", "FreeGradedPoly", "parse_free", "Relation", "Presentation", "build_presentation",
    "ConsistencyReport", "consistency_check", "diamond", "NonTerminationError", "classical_image",
    "classical_limit_ok", "printed_composite_factors", "composite_object", "composite_relation", "is_unacceptable", "coaction",
    "verify_coaction_covariance", "superspace0", "superspace1", "primed_theta", "verify_primed_basis",
    "supersphere", "sphere_radius", "raw_sphere_relations", "final_sphere_relations", "sphere_raw_presentation",
    "verify_linear_combination", "solve_combination", "export_presentation", "load_presentation",
    "presentation_latex", "presentations_equal", "substitute_params", "gen_name",
]
