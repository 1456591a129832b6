"""Text form of scalars and algebra elements.

Grammar (recursive descent)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/')? power)*          # juxtaposition multiplies
    power  := atom ('^' exponent)?
    atom   := INT | NAME | '[' INT ']' '!'? | 'sqrt' '(' expr ')' | '(' expr ')'
    exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'

Names ``s``, ``q``, ``rho``, ``varpi``, ``omega`` are built in; any other
identifier is an even formal parameter unless it ends in ``_odd``.  Algebra
dialects add their own generator names on top.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from .scalar import (
    ONE, RAD_ONE, LaurentRational, Scalar, kulish, kulish_factorial,
    omega, q_pow, s_pow, sqrt_scalar, varpi, varrho,
)


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<vpm>v[+-])|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\]!,]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str, vpm: bool) -> list[_Tok]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        if kind == "vpm" and not vpm:
            # plain 'v' followed by an operator
            m = re.compile(r"\s*(?P<name>v)").match(text, pos)
            kind = "name"
        toks.append(_Tok("name" if kind == "vpm" else kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


_BUILTIN = {
    "s": lambda: s_pow(1),
    "q": lambda: q_pow(1),
    "rho": varrho,
    "varpi": varpi,
    "omega": omega,
}


class _Parser:
    def __init__(self, text: str, generators: Mapping[str, Any] | None, lift: Callable | None,
                 vpm: bool = False):
        self.toks = _tokenize(text, vpm)
        self.i = 0
        self.gens = generators or {}
        self.lift = lift
        self.text = text

    # helpers
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text: str | None = None) -> _Tok:
        t = self.toks[self.i]
        if text is not None and t.text != text:
            raise ParseError(f"expected {text!r} at {t.pos}, found {t.text!r}")
        self.i += 1
        return t

    def _mix(self, a, b, op):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return op(a, b)
        if self.lift is None:
            raise ParseError("algebra element in a scalar expression")
        if isinstance(a, Scalar):
            a = self.lift(a)
        if isinstance(b, Scalar):
            b = self.lift(b)
        return op(a, b)

    # grammar
    def parse(self):
        v = self.expr()
        if self.peek().kind != "end":
            t = self.peek()
            raise ParseError(f"trailing input at {t.pos}: {t.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            w = self.term()
            v = self._mix(v, w, (lambda x, y: x + y) if op == "+" else (lambda x, y: x - y))
        return v

    def _starts_atom(self, t: _Tok) -> bool:
        return t.kind in ("int", "name") or t.text in ("(", "[")

    def term(self):
        v = self.power()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text == "*":
                self.take()
                v = self._mix(v, self.power(), lambda x, y: x * y)
            elif t.kind == "op" and t.text == "/":
                self.take()
                d = self.power()
                if not isinstance(d, Scalar):
                    raise ParseError("division by an algebra element")
                if isinstance(v, Scalar):
                    v = v / d
                else:
                    v = self.lift(d.inverse()) * v
            elif self._starts_atom(t):
                v = self._mix(v, self.power(), lambda x, y: x * y)
            else:
                return v

    def exponent(self) -> Fraction:
        t = self.peek()
        if t.text == "(":
            self.take()
            neg = False
            if self.peek().text == "-":
                self.take()
                neg = True
            n = int(self.take().text)
            d = 1
            if self.peek().text == "/":
                self.take()
                d = int(self.take().text)
            self.take(")")
            e = Fraction(n, d)
            return -e if neg else e
        neg = False
        if t.text == "-":
            self.take()
            neg = True
        tok = self.take()
        if tok.kind != "int":
            raise ParseError(f"bad exponent at {tok.pos}")
        return Fraction(-int(tok.text) if neg else int(tok.text))

    def power(self):
        base, name = self.atom()
        if self.peek().text != "^":
            return base
        self.take()
        e = self.exponent()
        if not isinstance(base, Scalar):
            if e.denominator != 1 or e < 0:
                raise ParseError("algebra elements take nonnegative integer powers")
            out = base
            for _ in range(int(e) - 1):
                out = out * base
            if e == 0:
                return self.lift(ONE)
            return out
        if name is not None and name.endswith("_odd") and (e.denominator != 1 or e >= 2 or e < 0):
            raise ParseError(f"odd parameter {name} raised to {e}")
        if e.denominator == 1:
            return base ** int(e)
        if e.denominator != 2:
            raise ParseError(f"unsupported exponent {e}")
        if name == "s":
            raise ParseError("s takes integer powers")
        if name == "q":
            return s_pow(int(e * 2))
        if name is not None and name not in _BUILTIN and name not in self.gens:
            return Scalar._raw({(RAD_ONE, (((name, int(e * 2)),), ())): LaurentRational.from_int(1)})
        root = sqrt_scalar(base)
        return root ** int(e * 2)

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return Scalar.const(int(t.text)), None
        if t.text == "(":
            v = self.expr()
            self.take(")")
            return v, None
        if t.text == "[":
            neg = False
            if self.peek().text == "-":
                self.take()
                neg = True
            n = int(self.take().text)
            self.take("]")
            if self.peek().text == "!":
                self.take()
                if neg:
                    raise ParseError("factorial of a negative integer")
                return kulish_factorial(n), None
            return kulish(-n if neg else n), None
        if t.kind == "name":
            name = t.text
            if name == "sqrt" and self.peek().text == "(":
                self.take()
                v = self.expr()
                self.take(")")
                if not isinstance(v, Scalar):
                    raise ParseError("sqrt of an algebra element")
                return sqrt_scalar(v), None
            if name in self.gens:
                g = self.gens[name]
                return (g() if callable(g) else g), name
            if name in _BUILTIN:
                return _BUILTIN[name](), name
            return Scalar.param(name, odd=name.endswith("_odd")), name
        raise ParseError(f"unexpected token {t.text!r} at {t.pos}")


def parse_scalar(text: str) -> Scalar:
    v = _Parser(text, None, None).parse()
    return v


def parse_element(text: str, generators: Mapping[str, Any], lift: Callable[[Scalar], Any],
                  vpm: bool = False):
    """Parse an algebra element; the result is lifted even if scalar-valued."""
    v = _Parser(text, generators, lift, vpm=vpm).parse()
    if isinstance(v, Scalar):
        return lift(v)
    return v


# ---------------------------------------------------------------------------
# printing

def _format_poly(coeffs: tuple[int, ...], shift: int, var: str = "s") -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        k = i + shift
        if k == 0:
            mono = str(abs(c))
        else:
            pw = var if k == 1 else f"{var}^{k}"
            mono = pw if abs(c) == 1 else f"{abs(c)}*{pw}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


def _nterms(coeffs) -> int:
    return sum(1 for c in coeffs if c)


def format_laurent(c: LaurentRational) -> str:
    num = tuple(int(x) for x in c.num.coeffs())
    den = tuple(int(x) for x in c.den.coeffs())
    top = _format_poly(num, c.shift)
    if den == (1,):
        return top
    bottom = _format_poly(den, 0)
    if _nterms(num) > 1:
        top = f"({top})"
    if _nterms(den) > 1:
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


def format_radical(r) -> str:
    content, kernel = r
    inner = _format_poly(kernel, 0)
    if content != 1:
        inner = f"{content}*({inner})" if _nterms(kernel) > 1 else (
            str(content) if kernel == (1,) else f"{content}*{inner}")
    return f"sqrt({inner})"


def format_params(p) -> list[str]:
    out = []
    for name, h in p[0]:
        if h == 2:
            out.append(name)
        elif h % 2 == 0:
            out.append(f"{name}^{h // 2}" if h > 0 else f"{name}^({h // 2})")
        else:
            out.append(f"{name}^({h}/2)")
    out.extend(p[1])
    return out


def format_term(r, p, c: LaurentRational) -> str:
    extras = []
    if r != RAD_ONE:
        extras.append(format_radical(r))
    extras.extend(format_params(p))
    coef = format_laurent(c)
    if not extras:
        return coef
    if coef == "1":
        return "*".join(extras)
    if coef == "-1":
        return "-" + "*".join(extras)
    if _nterms(c.num.coeffs()) > 1 or c.den.degree() > 0:
        coef = f"({coef})"
    return "*".join([coef] + extras)


def format_scalar(x: Scalar) -> str:
    if x.is_zero():
        return "0"
    pieces = [format_term(r, p, c) for r, p, c in x.sorted_terms()]
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


_KULISH_MAX = 10


def _kulish_factor(poly, counts: dict, sign: int):
    """Strip [n] factors (largest n first) from an integer polynomial in s; returns (rest, s-shift)."""
    shift = 0
    for n in range(_KULISH_MAX, 1, -1):
        (_, kc), = kulish(n).terms.items()
        while poly.degree() >= kc.num.degree():
            quo, rem = divmod(poly, kc.num)
            if rem != 0:
                break
            poly = quo
            counts[n] = counts.get(n, 0) + sign
            shift += kc.shift
    return poly, shift


def _q_power(k: int) -> str:
    if k % 2:
        return f"q^({k}/2)"
    j = k // 2
    if j == 1:
        return "q"
    if j == -1:
        return "(1/q)"
    return f"q^{j}" if j > 0 else f"q^({j})"


def format_scalar_kulish(x: Scalar) -> str:
    """Print a single-term scalar as sign * q-power * products of [n]; other scalars as format_scalar."""
    if len(x.terms) != 1:
        return format_scalar(x)
    (r, p), c = next(iter(x.terms.items()))
    counts: dict[int, int] = {}
    num, sn = _kulish_factor(c.num, counts, 1)
    den, sd = _kulish_factor(c.den, counts, -1)
    if num.degree() != 0 or den.degree() != 0:
        return format_scalar(x)
    top, bottom = int(num[0]), int(den[0])
    factors = [str(abs(top))] if abs(top) != 1 else []
    k = c.shift - sn + sd
    if k:
        factors.append(_q_power(k))
    up = [f"[{n}]" + (f"^{e}" if e > 1 else "") for n, e in sorted(counts.items()) if e > 0]
    down = [str(bottom)] if bottom != 1 else []
    down += [f"[{n}]" + (f"^{-e}" if e < -1 else "") for n, e in sorted(counts.items()) if e < 0]
    factors += up
    if r != RAD_ONE:
        factors.append(format_radical(r))
    factors += format_params(p)
    text = "*".join(factors) if factors else "1"
    if down:
        text += "/" + (down[0] if len(down) == 1 else "(" + "*".join(down) + ")")
    return ("-" if top < 0 else "") + text


def format_element(terms: Mapping[tuple, Scalar], names: Mapping[Any, str] | None = None,
                   order=None, scalar_format: Callable[[Scalar], str] | None = None) -> str:
    """Print sum of scalar * word; words are tuples of generator labels."""
    if not terms:
        return "0"
    keys = sorted(terms, key=order) if order else sorted(terms, key=lambda w: (len(w), w))
    pieces = []
    for w in keys:
        c = terms[w]
        word = "*".join((names or {}).get(g, str(g)) for g in w)
        cs = (scalar_format or format_scalar)(c)
        if not word:
            pieces.append(cs if len(c.terms) == 1 else f"({cs})")
            continue
        if cs == "1":
            pieces.append(word)
        elif cs == "-1":
            pieces.append("-" + word)
        else:
            single = len(c.terms) == 1 and " " not in cs
            pieces.append(f"{cs}*{word}" if single else f"({cs})*{word}")
    out = pieces[0]
    for piece in pieces[1:]:
        out += (" - " + piece[1:]) if piece.startswith("-") else (" + " + piece)
    return out


def _braced(text: str, opener: str, head: str) -> str:
    # opener "(" at the matched position becomes head + "{" ... "}"
    out, i = [], 0
    while True:
        j = text.find(opener, i)
        if j < 0:
            out.append(text[i:])
            return "".join(out)
        depth, k = 0, j + len(opener) - 1
        while k < len(text):
            depth += {"(": 1, ")": -1}.get(text[k], 0)
            if depth == 0:
                break
            k += 1
        out.append(text[i:j] + head + "{" + text[j + len(opener):k] + "}")
        i = k + 1


def latex_text(text: str) -> str:
    """Convert the plain grammar to LaTeX math (no surrounding dollars)."""
    text = text.replace("(1/q)", "q^{-1}")
    text = _braced(text, "sqrt(", "\\sqrt")
    text = _braced(text, "^(", "^")
    text = re.sub(r"\^(-?\d+)", r"^{\1}", text)
    text = text.replace("varpi", "\\varpi").replace("omega", "\\omega").replace("rho", "\\rho")
    text = re.sub(r"\bxi\b", r"\\xi", text)
    return text.replace("*", "\\,")


def latex_scalar(x: Scalar) -> str:
    return latex_text(format_scalar_kulish(x))


# ---------------------------------------------------------------------------
# structured serialization

def scalar_to_struct(x: Scalar) -> list[dict]:
    out = []
    for r, p, c in x.sorted_terms():
        params = {name: (Fraction(h, 2).numerator if h % 2 == 0 else f"{h}/2") for name, h in p[0]}
        for name in p[1]:
            params[name] = 1
        out.append({
            "laurent": format_laurent(c),
            "radical": "1" if r == RAD_ONE else format_radical(r)[5:-1],
            "params": params,
        })
    return out


def scalar_from_struct(data: list[dict]) -> Scalar:
    total = Scalar()
    for t in data:
        term = parse_scalar(t["laurent"])
        if t["radical"] != "1":
            term = term * sqrt_scalar(parse_scalar(t["radical"]))
        for name, e in t["params"].items():
            e = Fraction(e)
            if name.endswith("_odd"):
                term = term * Scalar.param(name, odd=True)
            else:
                term = term * Scalar._raw({(RAD_ONE, (((name, int(e * 2)),), ())): LaurentRational.from_int(1)})
        total = total + term
    return total


def parse(text: str, dialect: str = "scalar"):
    """Parse in one of the dialects: scalar, afun, osc, covariant, uword."""
    if dialect == "scalar":
        return parse_scalar(text)
    if dialect == "afun":
        from .afun import parse_afun
        return parse_afun(text)
    if dialect == "osc":
        from .realize import parse_osc
        return parse_osc(text)
    if dialect == "uword":
        from .urep import parse_uword
        return parse_uword(text)
    if dialect == "covariant":
        from .covariant import COVARIANT_PARITY, parse_free
        return parse_free(text, COVARIANT_PARITY)
    raise ParseError(f"unknown dialect {dialect!r}")


__all__ = [
    "ParseError", "parse", "parse_scalar", "parse_element", "format_scalar", "format_laurent",
    "format_element", "format_scalar_kulish", "latex_scalar", "latex_text", "scalar_to_struct", "scalar_from_struct",
]
