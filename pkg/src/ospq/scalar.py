"""Exact coefficients: Laurent-rational functions of s = q^(1/2), canonical
square roots, and formal even/odd parameters.

Everything here is immutable.  Values are kept in a canonical form so that
equality and hashing are structural.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import mpmath
from flint import fmpq, fmpz, fmpz_poly

PROBE_QS = (Fraction(1, 5), Fraction(1, 2), Fraction(3, 4))
DEFAULT_DPS = 50
ZERO_TOL = mpmath.mpf("1e-30")

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])


def _lowval(p: fmpz_poly) -> int:
    cs = p.coeffs()
    for i, c in enumerate(cs):
        if c != 0:
            return i
    raise ValueError("zero polynomial has no valuation")


def _key(p: fmpz_poly) -> tuple[int, ...]:
    return tuple(int(c) for c in p.coeffs())


def _eval_poly(coeffs: Iterable[int], x):
    acc = 0
    for c in reversed(tuple(coeffs)):
        acc = acc * x + int(c)
    return acc


class LaurentRational:
    """s^shift * num(s) / den(s) over the integers.

    Canonical form: gcd(num, den) = 1 in Z[s] (content included), neither
    polynomial vanishes at s = 0, and den has a positive constant term.
    """

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, shift: int, num: fmpz_poly, den: fmpz_poly, _canonical: bool = False):
        if not _canonical:
            shift, num, den = self._normalize(shift, num, den)
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _normalize(shift, num, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num == 0:
            return 0, _ZERO, _ONE
        v = _lowval(num)
        if v:
            num = num.right_shift(v)
            shift += v
        v = _lowval(den)
        if v:
            den = den.right_shift(v)
            shift -= v
        if den.degree() > 0 or abs(int(den[0])) != 1:
            g = num.gcd(den)
            if g != 1:
                num = num // g
                den = den // g
        if den.coeffs()[0] < 0:
            num, den = -num, -den
        return shift, num, den

    # constructors
    @classmethod
    def from_int(cls, n) -> "LaurentRational":
        if isinstance(n, Fraction):
            return cls(0, fmpz_poly([n.numerator]), fmpz_poly([n.denominator]))
        return cls(0, fmpz_poly([int(n)]), _ONE)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentRational":
        return cls(k, fmpz_poly([c]), _ONE)

    @classmethod
    def from_coeffs(cls, num: Iterable[int], den: Iterable[int] = (1,), shift: int = 0):
        return cls(shift, fmpz_poly(list(num)), fmpz_poly(list(den)))

    # predicates
    def is_zero(self) -> bool:
        return self.num == 0

    def is_one(self) -> bool:
        return self.shift == 0 and self.num == 1 and self.den == 1

    def is_rational(self) -> bool:
        return self.shift == 0 and self.num.degree() <= 0 and self.den.degree() <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational constant")
        if self.num == 0:
            return Fraction(0)
        return Fraction(int(self.num[0]), int(self.den[0]))

    def key(self) -> tuple:
        return (self.shift, _key(self.num), _key(self.den))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentRational.from_int(other)
        if not isinstance(other, LaurentRational):
            return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    # arithmetic
    def __neg__(self):
        return LaurentRational(self.shift, -self.num, self.den, _canonical=True)

    def __add__(self, other: "LaurentRational") -> "LaurentRational":
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        e = min(self.shift, other.shift)
        a = self.num.left_shift(self.shift - e)
        b = other.num.left_shift(other.shift - e)
        if self.den == other.den:
            return LaurentRational(e, a + b, self.den)
        return LaurentRational(e, a * other.den + b * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentRational") -> "LaurentRational":
        if self.num == 0 or other.num == 0:
            return LAURENT_ZERO
        if self.den == 1 and other.den == 1:
            return LaurentRational(self.shift + other.shift, self.num * other.num, _ONE, _canonical=True)
        return LaurentRational(self.shift + other.shift, self.num * other.num, self.den * other.den)

    def inverse(self) -> "LaurentRational":
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero")
        return LaurentRational(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LAURENT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, s):
        """Value at a numeric s (mpmath or Fraction)."""
        n = _eval_poly(self.num.coeffs(), s)
        d = _eval_poly(self.den.coeffs(), s)
        return n / d * (s ** self.shift)

    def evaluate_exact(self, s: Fraction) -> Fraction:
        n = _eval_poly((int(c) for c in self.num.coeffs()), s)
        d = _eval_poly((int(c) for c in self.den.coeffs()), s)
        return Fraction(n) / Fraction(d) * s ** self.shift

    def valuation_at_one(self) -> int:
        """Order of vanishing at s = 1 (negative for a pole)."""
        if self.num == 0:
            raise ValueError("zero has infinite valuation")
        root = fmpz_poly([-1, 1])
        v = 0
        n, d = self.num, self.den
        while True:
            qq, r = divmod(n, root)
            if r != 0:
                break
            n, v = qq, v + 1
        while True:
            qq, r = divmod(d, root)
            if r != 0:
                break
            d, v = qq, v - 1
        return v

    def value_at_one(self) -> tuple[int, Fraction]:
        """(order of vanishing at s = 1, leading coefficient of the expansion in s - 1)."""
        if self.num == 0:
            raise ValueError("zero has infinite valuation")
        root = fmpz_poly([-1, 1])
        v = 0
        n, d = self.num, self.den
        while n(1) == 0:
            n, v = n // root, v + 1
        while d(1) == 0:
            d, v = d // root, v - 1
        return v, Fraction(int(n(1)), int(d(1)))

    def __repr__(self):
        return f"LaurentRational({self.shift}, {_key(self.num)}, {_key(self.den)})"


LAURENT_ZERO = LaurentRational(0, _ZERO, _ONE, _canonical=True)
LAURENT_ONE = LaurentRational(0, _ONE, _ONE, _canonical=True)


# ---------------------------------------------------------------------------
# radicals

RadKey = tuple  # (content: int, kernel coefficients)
RAD_ONE: RadKey = (1, (1,))


def _poly_positive_at_probes(coeffs: tuple[int, ...], content: int = 1) -> bool:
    for q in PROBE_QS:
        s = mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
        if content * _eval_poly(coeffs, s) <= 0:
            return False
    return True


def _squarefree_split(n: int) -> tuple[int, int]:
    """n > 0 -> (square root part, square-free part)."""
    root, free = 1, 1
    for p, e in fmpz(n).factor():
        root *= int(p) ** (e // 2)
        if e % 2:
            free *= int(p)
    return root, free


def _radical_from_poly(m: fmpz_poly) -> tuple[LaurentRational, RadKey]:
    """sqrt(m) = L * sqrt(kernel), m a polynomial positive on (0,1)."""
    content, factors = m.factor_squarefree()
    content = int(content)
    outside = _ONE
    kernel = _ONE
    for f, mult in factors:
        if mult // 2:
            outside = outside * f ** (mult // 2)
        if mult % 2:
            kernel = kernel * f
    sign = 1
    if content < 0:
        sign, content = -1, -content
    root, free = _squarefree_split(content) if content else (0, 0)
    # recover the exact sign: m = sign * free * root^2 * outside^2 * kernel
    if kernel.coeffs()[-1] < 0:
        kernel = -kernel
        sign = -sign
    check = free * root * root * outside * outside * kernel
    if check != sign * m:
        sign = -sign
        if check != sign * m:
            raise ArithmeticError("square-free decomposition mismatch")
    half = fmpq(1, 2)
    kval = kernel(half)
    if kval < 0:
        kernel = -kernel
        sign = -sign
    if sign < 0:
        raise ValueError("radicand is negative on (0,1)")
    kkey = _key(kernel)
    if not _poly_positive_at_probes(kkey, free):
        raise ValueError("radicand is not positive at the probe points")
    # principal root: outside may be negative on (0,1); fix by its value at 1/2
    factor = outside * root
    if factor(half) < 0:
        factor = -factor
    return LaurentRational(0, factor, _ONE), (free, kkey)


def _rad_product(a: RadKey, b: RadKey) -> tuple[LaurentRational, RadKey]:
    if a == RAD_ONE:
        return LAURENT_ONE, b
    if b == RAD_ONE:
        return LAURENT_ONE, a
    return _rad_product_cached(a, b)


@lru_cache(maxsize=65536)
def _rad_product_cached(a: RadKey, b: RadKey) -> tuple[LaurentRational, RadKey]:
    c1, p1 = a
    c2, p2 = b
    P1, P2 = fmpz_poly(list(p1)), fmpz_poly(list(p2))
    g = P1.gcd(P2)
    h = int(fmpz(c1).gcd(c2))
    kernel = (P1 // g) * (P2 // g)
    content = (c1 // h) * (c2 // h)
    if kernel(fmpq(1, 2)) < 0:
        kernel = -kernel
    if g(fmpq(1, 2)) < 0:
        g = -g
    return LaurentRational(0, g * h, _ONE), (content, _key(kernel))


def rad_value(r: RadKey, s):
    c, p = r
    if r == RAD_ONE:
        return 1
    return mpmath.sqrt(c * _eval_poly(p, s))


# ---------------------------------------------------------------------------
# parameter monomials

ParamKey = tuple  # (((name, half_exponent), ...), (odd_name, ...))
PARAM_ONE: ParamKey = ((), ())


def _param_product(a: ParamKey, b: ParamKey) -> tuple[int, ParamKey]:
    """(sign, key); sign 0 when an odd parameter repeats."""
    if a == PARAM_ONE:
        return 1, b
    if b == PARAM_ONE:
        return 1, a
    even = dict(a[0])
    for name, h in b[0]:
        even[name] = even.get(name, 0) + h
    even_key = tuple(sorted((n, h) for n, h in even.items() if h))
    oa, ob = a[1], b[1]
    if not ob:
        return 1, (even_key, oa)
    if not oa:
        return 1, (even_key, ob)
    if set(oa) & set(ob):
        return 0, PARAM_ONE
    merged = list(oa) + list(ob)
    # sign of the sorting permutation: count inversions
    inv = sum(1 for i in range(len(merged)) for j in range(i + 1, len(merged)) if merged[i] > merged[j])
    return (-1) ** inv, (even_key, tuple(sorted(merged)))


def param_parity(p: ParamKey) -> int:
    return len(p[1]) % 2


# ---------------------------------------------------------------------------

class Scalar:
    """Finite sum of LaurentRational * sqrt(radical) * parameter monomial."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[RadKey, ParamKey], LaurentRational] | None = None):
        if terms:
            self.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, LaurentRational):
            lr = value
        else:
            lr = LaurentRational.from_int(value)
        if lr.is_zero():
            return ZERO
        return cls._raw({(RAD_ONE, PARAM_ONE): lr})

    @classmethod
    def s_power(cls, k: int) -> "Scalar":
        return cls.const(LaurentRational.monomial(k))

    @classmethod
    def param(cls, name: str, odd: bool = False, half_exponent: int = 2) -> "Scalar":
        if odd:
            key = ((), (name,))
        else:
            key = (((name, half_exponent),), ())
        return cls._raw({(RAD_ONE, key): LAURENT_ONE})

    # predicates / access
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((RAD_ONE, PARAM_ONE), LAURENT_ZERO).is_one()

    def is_single(self) -> bool:
        return len(self.terms) == 1

    def is_laurent(self) -> bool:
        """No radical and no parameter."""
        return self.is_zero() or (len(self.terms) == 1 and (RAD_ONE, PARAM_ONE) in self.terms)

    def is_rational(self) -> bool:
        return self.is_zero() or (self.is_laurent() and self.terms[(RAD_ONE, PARAM_ONE)].is_rational())

    def has_params(self) -> bool:
        return any(p != PARAM_ONE for _, p in self.terms)

    def laurent(self) -> LaurentRational:
        if self.is_zero():
            return LAURENT_ZERO
        if not self.is_laurent():
            raise ValueError("scalar carries radicals or parameters")
        return self.terms[(RAD_ONE, PARAM_ONE)]

    def parity(self) -> int:
        """Parity of a homogeneous scalar; raises on mixed parity."""
        ps = {param_parity(p) for _, p in self.terms}
        if len(ps) > 1:
            raise ValueError("scalar has mixed parity")
        return ps.pop() if ps else 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # arithmetic
    def __neg__(self):
        return Scalar._raw({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                t = out[k] + v
                if t.is_zero():
                    del out[k]
                else:
                    out[k] = t
            else:
                out[k] = v
        return Scalar._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        out: dict = {}
        for (r1, p1), c1 in self.terms.items():
            for (r2, p2), c2 in other.terms.items():
                sign, p = _param_product(p1, p2)
                if not sign:
                    continue
                f, r = _rad_product(r1, r2)
                c = c1 * c2
                if not f.is_one():
                    c = c * f
                if sign < 0:
                    c = -c
                k = (r, p)
                if k in out:
                    t = out[k] + c
                    if t.is_zero():
                        del out[k]
                    else:
                        out[k] = t
                else:
                    out[k] = c
        return Scalar._raw(out)

    def __rmul__(self, other):
        # scalars from int/Fraction commute with everything
        return self.__mul__(other)

    def inverse(self) -> "Scalar":
        """Inverse of a scalar free of odd parameters.

        Sums of radical terms are inverted by multiplying through by conjugates,
        one radical atom at a time; sums with parameters must share one monomial.
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) != 1:
            keys = {p for _, p in self.terms}
            if len(keys) != 1:
                raise ValueError("sums over different parameter monomials are not invertible")
            p = keys.pop()
            if p[1]:
                raise ValueError("odd parameters are not invertible")
            if p != PARAM_ONE:
                mono = Scalar._raw({(RAD_ONE, p): LAURENT_ONE})
                return (self * mono.inverse()).inverse() * mono.inverse()
            return _inverse_radical_sum(self)
        ((r, p), c), = self.terms.items()
        if p[1]:
            raise ValueError("odd parameters are not invertible")
        inv_p = (tuple((n, -h) for n, h in p[0]), ())
        if r == RAD_ONE:
            return Scalar._raw({(r, inv_p): c.inverse()})
        content, kernel = r
        denom = LaurentRational(0, fmpz_poly(list(kernel)) * content, _ONE)
        return Scalar._raw({(r, inv_p): (c * denom).inverse()})

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def map_coefficients(self, fn) -> "Scalar":
        return Scalar({k: fn(v) for k, v in self.terms.items()})

    def drop_params(self) -> "Scalar":
        return Scalar._raw({k: v for k, v in self.terms.items() if k[1] == PARAM_ONE})

    def sorted_terms(self) -> list[tuple[RadKey, ParamKey, LaurentRational]]:
        return [(r, p, self.terms[(r, p)]) for r, p in sorted(self.terms, key=_term_order)]

    def __repr__(self):
        from .expr import format_scalar
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        from .expr import format_scalar
        return format_scalar(self)


def _rad_atoms(r: RadKey) -> list[tuple]:
    """Prime factors of the content and irreducible factors of the kernel."""
    if r == RAD_ONE:
        return []
    c, kernel = r
    out: list[tuple] = [("int", int(p)) for p, _ in fmpz(c).factor()]
    if len(kernel) > 1:
        _, facs = fmpz_poly(list(kernel)).factor()
        for f, _ in facs:
            if f(fmpq(1, 2)) < 0:
                f = -f
            out.append(("poly", _key(f)))
    return out


def _rad_divide(r: RadKey, atom: tuple) -> RadKey:
    c, kernel = r
    if atom[0] == "int":
        c = c // atom[1]
    else:
        k = fmpz_poly(list(kernel)) // fmpz_poly(list(atom[1]))
        if k(fmpq(1, 2)) < 0:
            k = -k
        kernel = _key(k)
    return (c, kernel)


def _atom_scalars(atom: tuple) -> tuple["Scalar", "Scalar"]:
    """(sqrt(t), t) for a radical atom t."""
    if atom[0] == "int":
        key = (atom[1], (1,))
        value = LaurentRational.from_int(atom[1])
    else:
        key = (1, atom[1])
        value = LaurentRational(0, fmpz_poly(list(atom[1])), _ONE)
    return Scalar._raw({(key, PARAM_ONE): LAURENT_ONE}), Scalar._raw({(RAD_ONE, PARAM_ONE): value})


def _inverse_radical_sum(x: "Scalar") -> "Scalar":
    if len(x.terms) == 1:
        return x.inverse()
    atoms = sorted({a for (r, _) in x.terms for a in _rad_atoms(r)})
    if not atoms:
        return x.inverse()
    atom = atoms[0]
    root, value = _atom_scalars(atom)
    a_terms, b_terms = {}, {}
    for (r, p), c in x.terms.items():
        if atom in _rad_atoms(r):
            r2 = _rad_divide(r, atom)
            b_terms[(r2, p)] = c
        else:
            a_terms[(r, p)] = c
    A, B = Scalar._raw(a_terms), Scalar._raw(b_terms)
    norm = A * A - B * B * value
    if norm.is_zero():
        raise ZeroDivisionError("scalar is a zero divisor")
    return (A - B * root) * _inverse_radical_sum(norm)


def _term_order(k):
    (c, kern), (even, odd) = k
    return (len(odd), len(even), even, odd, len(kern), kern, c)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, LaurentRational)):
        return Scalar.const(x)
    return NotImplemented


ZERO = Scalar._raw({})
ONE = Scalar._raw({(RAD_ONE, PARAM_ONE): LAURENT_ONE})


def S(x) -> Scalar:
    """Coerce an int, Fraction or LaurentRational into a Scalar."""
    return Scalar.const(x)


# ---------------------------------------------------------------------------
# named quantities

def s_pow(k: int) -> Scalar:
    return Scalar.s_power(k)


def q_pow(k: int) -> Scalar:
    return Scalar.s_power(2 * k)


@lru_cache(maxsize=None)
def _kulish_lr(n: int) -> LaurentRational:
    if n < 0:
        v = _kulish_lr(-n)
        return v if (-n + 1) % 2 == 0 else -v
    if n == 0:
        return LAURENT_ZERO
    # (s^-n - (-1)^n s^n)/(s^-1 + s) = s^(1-n) (1 - (-1)^n s^(2n)) / (1 + s^2)
    # = s^(1-n) * sum_{j<n} (-s^2)^j
    coeffs = [0] * (2 * n - 1)
    for j in range(n):
        coeffs[2 * j] = (-1) ** j
    return LaurentRational(1 - n, fmpz_poly(coeffs), _ONE)


def kulish(n: int) -> Scalar:
    """Kulish symbol [n]."""
    return Scalar.const(_kulish_lr(int(n)))


@lru_cache(maxsize=None)
def _kulish_factorial_lr(n: int) -> LaurentRational:
    if n == 0:
        return LAURENT_ONE
    return _kulish_factorial_lr(n - 1) * _kulish_lr(n)


def kulish_factorial(n: int) -> Scalar:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return Scalar.const(_kulish_factorial_lr(int(n)))


def varrho() -> Scalar:
    """(s^-1 + s)/(s^-8 - s^8)."""
    # = s^7 (1 + s^2) / (1 - s^16)
    return Scalar.const(LaurentRational(7, fmpz_poly([1, 0, 1]), fmpz_poly([1] + [0] * 15 + [-1])))


def omega() -> Scalar:
    """q - q^-1."""
    return q_pow(1) - q_pow(-1)


def lambda_r() -> Scalar:
    """R-matrix constant -q^(-1/2) (q - q^-1)."""
    return -s_pow(-1) * omega()


def rho_r() -> Scalar:
    """R-matrix constant (1 + q^-1)(q - q^-1)."""
    return (ONE + q_pow(-1)) * omega()


def varpi() -> Scalar:
    """q^(1/2) + q^(-1/2)."""
    return s_pow(1) + s_pow(-1)


def kulish_binomial(y: int, x: int) -> Scalar:
    if x < 0:
        raise ValueError("lower index must be nonnegative")
    if y < 0:
        sign = (-1) ** ((x * y + x * (x + 1) // 2) % 2)
        return kulish_binomial(x - y - 1, x) * sign
    if y < x:
        return ZERO
    return Scalar.const(_kulish_factorial_lr(y) / (_kulish_factorial_lr(y - x) * _kulish_factorial_lr(x)))


# ---------------------------------------------------------------------------
# square roots

def sqrt_scalar(x: Scalar) -> Scalar:
    """Principal square root of a single term with no radical part."""
    if len(x.terms) != 1:
        raise ValueError("square root needs a single-term scalar")
    ((r, p), c), = x.terms.items()
    if r != RAD_ONE:
        raise ValueError("square root of a radical is not supported")
    if p[1]:
        raise ValueError("square root of an odd parameter")
    new_even = []
    for n, h in p[0]:
        if h % 2:
            raise ValueError(f"parameter {n} already carries a half exponent")
        new_even.append((n, h // 2))
    half_p = (tuple(new_even), ())
    for q in PROBE_QS:
        if c.evaluate(mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)) <= 0:
            raise ValueError("radicand is not positive at the probe points")
    # c = s^k num/den ; sqrt = s^(k//2) / den * sqrt(s^(k%2) num den)
    k = c.shift
    m = c.num * c.den
    if k % 2:
        m = m.left_shift(1)
    f, rad = _radical_from_poly(m)
    out = LaurentRational(k // 2, f.num, c.den)
    return Scalar._raw({(rad, half_p): out})


# ---------------------------------------------------------------------------
# numeric oracle

def _s_value(q, dps: int):
    with mpmath.workdps(dps):
        if isinstance(q, Fraction):
            return mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
        return mpmath.sqrt(mpmath.mpf(q))


def eval_numeric(x: Scalar, q, bindings: Mapping[str, object] | None = None, precision: int = DEFAULT_DPS):
    """Evaluate at q in (0,1) with principal square roots."""
    bindings = dict(bindings or {})
    q = Fraction(q) if not isinstance(q, (Fraction, mpmath.mpf)) else q
    dps = precision + 10
    with mpmath.workdps(dps):
        s = _s_value(q, dps)
        total = mpmath.mpf(0)
        for (r, p), c in x.terms.items():
            for name in p[1]:
                if name not in bindings:
                    raise KeyError(f"missing binding for {name}")
                if bindings[name] != 0:
                    raise ValueError(f"odd parameter {name} must be bound to 0")
            if p[1]:
                continue
            d = _eval_poly(c.den.coeffs(), s)
            if d == 0:
                raise ZeroDivisionError("pole at the evaluation point")
            val = _eval_poly(c.num.coeffs(), s) / d * s ** c.shift
            if r != RAD_ONE:
                val *= rad_value(r, s)
            for name, h in p[0]:
                if name not in bindings:
                    raise KeyError(f"missing binding for {name}")
                b = bindings[name]
                if isinstance(b, Fraction):
                    b = mpmath.mpf(b.numerator) / b.denominator
                val *= mpmath.mpf(b) ** (mpmath.mpf(h) / 2)
            total += val
        return +total


def is_numerically_zero(x: Scalar, bindings=None, precision: int = DEFAULT_DPS) -> bool:
    return all(abs(eval_numeric(x, q, bindings, precision)) < ZERO_TOL for q in PROBE_QS)


def is_positive(x: Scalar, bindings=None) -> bool:
    return all(eval_numeric(x, q, bindings) > 0 for q in PROBE_QS)


# ---------------------------------------------------------------------------
# summation identities for Kulish symbols with negative arguments

def classical_limit(x: Scalar) -> Scalar | None:
    """Value at q = 1 (s = 1), parameters kept; None when some term has a pole there."""
    out = ZERO
    for (r, p), c in x.terms.items():
        v, lead = c.value_at_one()
        rad = ONE
        if r != RAD_ONE:
            content, kernel = r
            kval = int(fmpz_poly(list(kernel))(1))
            if kval == 0:
                v2 = 2 * v + 1
            else:
                v2 = 2 * v
                root, free = _squarefree_split(abs(content * kval))
                if content * kval < 0:
                    raise ValueError("radicand negative at q = 1")
                lead = lead * root
                rad = Scalar._raw({((free, (1,)), PARAM_ONE): LAURENT_ONE}) if free != 1 else ONE
        else:
            v2 = 2 * v
        if v2 < 0:
            return None
        if v2 > 0:
            continue
        out = out + rad * Scalar._raw({(RAD_ONE, p): LaurentRational.from_int(lead)})
    return out


def _binomial_sum(n: int, r: int, k: int) -> tuple[Scalar, Scalar]:
    lhs = kulish_binomial(n + r, k)
    rhs = ZERO
    for a in range(0, k + 1):
        e2 = (r - a) * (n + r) - r * (n - k + r)  # exponent of s
        sign = (-1) ** (((k - a) * (r - a)) % 2)
        rhs = rhs + kulish_binomial(n, k - a) * kulish_binomial(r, a) * s_pow(e2) * sign
    return lhs, rhs


def _factorial_sum(n: int, r: int, k: int) -> tuple[Scalar, Scalar]:
    f = kulish_factorial
    lhs = ZERO
    for a in range(0, k + 1):
        sign = (-1) ** ((a * n) % 2)
        lhs = lhs + s_pow(-a * (n + r)) * f(k - a - n - 1) * f(a - r - 1) / (f(k - a) * f(a)) * sign
    rhs = s_pow(-r * k) * f(k - n - r - 1) * f(-n - 1) * f(-r - 1) / (f(k) * f(-n - r - 1))
    return lhs, rhs


def verify_kulish_summation(n: int, r: int, k: int) -> bool:
    if n >= 0 or r >= 0 or k < 0:
        raise ValueError("identity holds for n, r < 0 and k >= 0")
    l1, r1 = _binomial_sum(n, r, k)
    l2, r2 = _factorial_sum(n, r, k)
    return l1 == r1 and l2 == r2


__all__ = [
    "LaurentRational", "Scalar", "ZERO", "ONE", "S", "PROBE_QS", "DEFAULT_DPS", "ZERO_TOL",
    "kulish", "kulish_factorial", "kulish_binomial", "varrho", "omega", "lambda_r", "rho_r",
    "varpi", "s_pow", "q_pow", "sqrt_scalar", "eval_numeric", "is_numerically_zero",
    "is_positive", "verify_kulish_summation", "classical_limit",
]
