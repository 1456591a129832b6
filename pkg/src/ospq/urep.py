"""Grade-star irreducible representations of U_q[osp(1/2)] and their
graded tensor products.

Basis of V^(l) is ordered m = l, l-1, ..., -l; the parity of e_m is
(l - m + lam) mod 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, kulish, q_pow, s_pow, sqrt_scalar, varpi, varrho

GENERATORS = ("K", "Kinv", "v+", "v-")
GEN_PARITY = {"K": 0, "Kinv": 0, "v+": 1, "v-": 1}
_ALIASES = {"K_inv": "Kinv", "v_plus": "v+", "v_minus": "v-", "vp": "v+", "vm": "v-"}


def canonical_generator(g: str) -> str:
    g = _ALIASES.get(g, g)
    if g not in GEN_PARITY:
        raise ValueError(f"unknown generator {g!r}")
    return g


def parity(ell: int, m: int, lam: int) -> int:
    return (ell - m + lam) % 2


def class_index(lam: int) -> int:
    return (lam + 1) % 2


def _check_lambda(lam: int) -> None:
    if lam not in (0, 1):
        raise ValueError("lambda must be 0 or 1")


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedMatrix:
    entries: tuple[tuple[Scalar, ...], ...]
    row_parities: tuple[int, ...]
    col_parities: tuple[int, ...]
    label: tuple | None = field(default=None, compare=False)

    @classmethod
    def zeros(cls, rows: Sequence[int], cols: Sequence[int], label=None) -> "GradedMatrix":
        return cls(tuple(tuple(ZERO for _ in cols) for _ in rows), tuple(rows), tuple(cols), label)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]], row_par, col_par, label=None):
        return cls(tuple(tuple(r) for r in rows), tuple(row_par), tuple(col_par), label)

    @classmethod
    def identity(cls, par: Sequence[int], label=None) -> "GradedMatrix":
        n = len(par)
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)),
                   tuple(par), tuple(par), label)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_parities), len(self.col_parities)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _new(self, rows, row_par=None, col_par=None):
        return GradedMatrix(tuple(tuple(r) for r in rows), row_par or self.row_parities,
                            col_par or self.col_parities, self.label)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self._new([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self._new([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return self._new([[-a for a in r] for r in self.entries])

    def scale(self, c: Scalar) -> "GradedMatrix":
        return self._new([[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = [[ZERO] * m for _ in range(n)]
        for i in range(n):
            row = self.entries[i]
            for t in range(k):
                a = row[t]
                if a.is_zero():
                    continue
                orow = other.entries[t]
                for j in range(m):
                    b = orow[j]
                    if not b.is_zero():
                        out[i][j] = out[i][j] + a * b
        return GradedMatrix(tuple(tuple(r) for r in out), self.row_parities, other.col_parities, self.label)

    def transpose(self) -> "GradedMatrix":
        n, m = self.shape
        return GradedMatrix(tuple(tuple(self.entries[i][j] for i in range(n)) for j in range(m)),
                            self.col_parities, self.row_parities, self.label)

    def kron(self, other: "GradedMatrix") -> "GradedMatrix":
        n1, m1 = self.shape
        n2, m2 = other.shape
        rows = []
        for i1 in range(n1):
            for i2 in range(n2):
                rows.append(tuple(self.entries[i1][j1] * other.entries[i2][j2]
                                  for j1 in range(m1) for j2 in range(m2)))
        rp = tuple((a + b) % 2 for a in self.row_parities for b in other.row_parities)
        cp = tuple((a + b) % 2 for a in self.col_parities for b in other.col_parities)
        return GradedMatrix(tuple(rows), rp, cp, None)

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def scalar_value(self) -> Scalar | None:
        """c if the matrix equals c times the identity, else None."""
        n, m = self.shape
        if n != m:
            return None
        c = self.entries[0][0] if n else ZERO
        for i in range(n):
            for j in range(m):
                want = c if i == j else ZERO
                if self.entries[i][j] != want:
                    return None
        return c

    def nonzero(self):
        for i, r in enumerate(self.entries):
            for j, a in enumerate(r):
                if not a.is_zero():
                    yield i, j, a

    def graded_adjoint(self, parity_of_operator: int) -> "GradedMatrix":
        """(A*)_{ij} = (-1)^(|A| p_j) A_{ji} for the identity Gram matrix."""
        n, m = self.shape
        rows = []
        for i in range(m):
            row = []
            for j in range(n):
                a = self.entries[j][i]
                if parity_of_operator and self.row_parities[j]:
                    a = -a
                row.append(a)
            rows.append(tuple(row))
        return GradedMatrix(tuple(rows), self.col_parities, self.row_parities, self.label)

    def to_struct(self) -> dict:
        from .expr import format_scalar
        return {
            "label": list(self.label) if self.label else None,
            "row_parities": list(self.row_parities),
            "col_parities": list(self.col_parities),
            "entries": [[format_scalar(a) for a in r] for r in self.entries],
        }

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.entries == other.entries and self.row_parities == other.row_parities \
            and self.col_parities == other.col_parities

    __hash__ = None  # type: ignore[assignment]


def basis(ell: int) -> list[int]:
    return list(range(ell, -ell - 1, -1))


def basis_parities(ell: int, lam: int) -> tuple[int, ...]:
    return tuple(parity(ell, m, lam) for m in basis(ell))


@lru_cache(maxsize=None)
def _vplus_coeff(ell: int, m: int) -> Scalar:
    return sqrt_scalar(kulish(ell - m) * kulish(ell + m + 1) * varrho())


@lru_cache(maxsize=None)
def _vminus_coeff(ell: int, m: int) -> Scalar:
    c = sqrt_scalar(kulish(ell + m) * kulish(ell - m + 1) * varrho())
    return c if (ell - m - 1) % 2 == 0 else -c


def vplus_coeff(ell: int, m: int) -> Scalar:
    """v+ e_m = coeff * e_{m+1}."""
    if m >= ell:
        return ZERO
    return _vplus_coeff(ell, m)


def vminus_coeff(ell: int, m: int) -> Scalar:
    """v- e_m = coeff * e_{m-1}."""
    if m <= -ell:
        return ZERO
    return _vminus_coeff(ell, m)


@lru_cache(maxsize=None)
def rep_generator(g: str, ell: int, lam: int) -> GradedMatrix:
    """Matrix of a generator on V^(ell); column j is the image of e_{m_j}."""
    _check_lambda(lam)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    g = canonical_generator(g)
    ms = basis(ell)
    n = len(ms)
    rows = [[ZERO] * n for _ in range(n)]
    for j, m in enumerate(ms):
        if g == "K":
            rows[j][j] = s_pow(m)
        elif g == "Kinv":
            rows[j][j] = s_pow(-m)
        elif g == "v+" and m < ell:
            rows[j - 1][j] = vplus_coeff(ell, m)
        elif g == "v-" and m > -ell:
            rows[j + 1][j] = vminus_coeff(ell, m)
    par = basis_parities(ell, lam)
    return GradedMatrix(tuple(tuple(r) for r in rows), par, par, (ell, lam))


def _qdiff_den() -> Scalar:
    return q_pow(4) - q_pow(-4)


def casimir(ell: int, lam: int) -> GradedMatrix:
    K = rep_generator("K", ell, lam)
    Ki = rep_generator("Kinv", ell, lam)
    vp = rep_generator("v+", ell, lam)
    vm = rep_generator("v-", ell, lam)
    K2, Ki2 = K @ K, Ki @ Ki
    den = _qdiff_den()
    t1 = (K2.scale(s_pow(1)) - Ki2.scale(s_pow(-1))).scale(den.inverse())
    t1 = t1 @ t1
    coeff2 = ((q_pow(1) + q_pow(-1)) * (q_pow(2) + q_pow(-2))).inverse()
    t2 = (K2.scale(q_pow(1)) + Ki2.scale(q_pow(-1))) @ vm @ vp
    t3 = vm @ vm @ vp @ vp
    w2 = varpi() * varpi()
    return t1 - t2.scale(coeff2) - t3.scale(w2)


def casimir_eigenvalue(ell: int) -> Scalar:
    x = (s_pow(2 * ell + 1) - s_pow(-2 * ell - 1)) / _qdiff_den()
    return x * x


def verify_defining_relations(ell: int, lam: int) -> bool:
    return check_relations(lambda g: rep_generator(g, ell, lam))


def check_relations(rep) -> bool:
    K, Ki, vp, vm = (rep(g) for g in GENERATORS)
    n = K.shape[0]
    one = GradedMatrix.identity(K.row_parities)
    if K @ Ki != one or Ki @ K != one:
        return False
    if K @ vp != (vp @ K).scale(s_pow(1)):
        return False
    if K @ vm != (vm @ K).scale(s_pow(-1)):
        return False
    anti = vp @ vm + vm @ vp
    rhs = (K @ K - Ki @ Ki).scale(-_qdiff_den().inverse())
    return anti == rhs and n == K.shape[1]


def verify_grade_star(ell: int, lam: int) -> bool:
    eps = class_index(lam)
    K = rep_generator("K", ell, lam)
    vp = rep_generator("v+", ell, lam)
    vm = rep_generator("v-", ell, lam)
    sign = -1 if eps else 1
    if K.graded_adjoint(0) != K:
        return False
    if vp.graded_adjoint(1) != vm.scale(Scalar.const(sign)):
        return False
    return vm.graded_adjoint(1) == vp.scale(Scalar.const(-sign))


def _parity_op(par: Sequence[int]) -> GradedMatrix:
    n = len(par)
    rows = tuple(tuple((Scalar.const(-1) if par[i] else ONE) if i == j else ZERO for j in range(n))
                 for i in range(n))
    return GradedMatrix(rows, tuple(par), tuple(par))


COPRODUCT = {
    "K": [("K", "K")],
    "Kinv": [("Kinv", "Kinv")],
    "v+": [("v+", "Kinv"), ("K", "v+")],
    "v-": [("v-", "Kinv"), ("K", "v-")],
}


def tensor_action(left: GradedMatrix, right: GradedMatrix, right_parity: int) -> GradedMatrix:
    """X_a (x) X^a acting on v1 (x) v2 with sign (-1)^(|X^a| |v1|)."""
    if right_parity:
        left = left @ _parity_op(left.col_parities)
    return left.kron(right)


def tensor_rep(g: str, ell1: int, ell2: int, lam: int) -> GradedMatrix:
    """Coproduct of a generator on V^(ell1) (x) V^(ell2); basis pairs (m1, m2)
    in lexicographic order of the single-factor bases."""
    g = canonical_generator(g)
    out = None
    for a, b in COPRODUCT[g]:
        m = tensor_action(rep_generator(a, ell1, lam), rep_generator(b, ell2, lam), GEN_PARITY[b])
        out = m if out is None else out + m
    return GradedMatrix(out.entries, out.row_parities, out.col_parities, (ell1, ell2, lam))


def tensor_basis(ell1: int, ell2: int) -> list[tuple[int, int]]:
    return [(m1, m2) for m1 in basis(ell1) for m2 in basis(ell2)]


# ---------------------------------------------------------------------------
# words in the enveloping algebra

class UWord:
    """Finite linear combination of words in K, Kinv, v+, v-."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[str, ...], Scalar] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def gen(cls, g: str) -> "UWord":
        return cls({(canonical_generator(g),): ONE})

    @classmethod
    def scalar(cls, c: Scalar) -> "UWord":
        return cls({(): c})

    def __add__(self, other: "UWord") -> "UWord":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return UWord(out)

    def __neg__(self):
        return UWord({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "UWord") -> "UWord":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return UWord(out)

    def __eq__(self, other):
        return isinstance(other, UWord) and self.terms == other.terms

    def parity_of(self, w: tuple[str, ...]) -> int:
        return sum(GEN_PARITY[g] for g in w) % 2

    def matrix(self, ell: int, lam: int) -> GradedMatrix:
        par = basis_parities(ell, lam)
        total = GradedMatrix.zeros(par, par, (ell, lam))
        for w, c in self.terms.items():
            m = GradedMatrix.identity(par, (ell, lam))
            for g in w:
                m = m @ rep_generator(g, ell, lam)
            total = total + m.scale(c)
        return total

    def __str__(self):
        from .expr import format_element
        return format_element(self.terms)


def parse_uword(text: str) -> UWord:
    from .expr import parse_element
    gens = {g: UWord.gen(g) for g in GENERATORS}
    gens.update({a: UWord.gen(b) for a, b in _ALIASES.items()})
    return parse_element(text, gens, UWord.scalar, vpm=True)


__all__ = [
    "GradedMatrix", "UWord", "GENERATORS", "GEN_PARITY", "parity", "class_index", "basis",
    "basis_parities", "rep_generator", "casimir", "casimir_eigenvalue",
    "verify_defining_relations", "verify_grade_star", "tensor_rep", "tensor_basis",
    "vplus_coeff", "vminus_coeff", "parse_uword", "check_relations",
]
