"""Clebsch-Gordan coefficients for V^(l1) (x) V^(l2).

Three independent routes are provided:

* ``cgc_closed``: the closed single-sum formula.
* ``cgc_lowering``: highest-weight vector from the two-term recurrence,
  normalised by its pseudo-norm, then lowered with the expanded coproduct
  of powers of v-.
* ``cgc_matrix``: kernel of the tensor v+ plus repeated tensor v-, read off
  the explicit representation matrices.
"""
from __future__ import annotations

import csv
import io
import json
from functools import lru_cache
from importlib import resources

from .scalar import (
    ONE, ZERO, Scalar, kulish, kulish_binomial, kulish_factorial, s_pow, sqrt_scalar, varrho,
)
from .urep import GradedMatrix, basis, rep_generator, tensor_basis, tensor_rep, vminus_coeff


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def in_domain(l1: int, l2: int, l: int, m1: int, m2: int) -> bool:
    m = m1 + m2
    return (abs(l1 - l2) <= l <= l1 + l2 and abs(m1) <= l1 and abs(m2) <= l2 and abs(m) <= l)


def coupled_parity(l1: int, l2: int, l: int) -> int:
    return (l1 + l2 + l) % 2


# ---------------------------------------------------------------------------
# closed form

@lru_cache(maxsize=None)
def cgc_closed(l1: int, l2: int, l: int, m1: int, m2: int, lam: int) -> Scalar:
    if not in_domain(l1, l2, l, m1, m2):
        return ZERO
    f = kulish_factorial
    m = m1 + m2
    x = l1 - l + m2
    sign = _sign(x * (l - m + lam) + x * (x + 1) // 2)
    # q^(m2(m+1)/2 + (l1-l2)(l1+l2+1)/4 - l(l+1)/4) in powers of s
    e = m2 * (m + 1) + ((l1 - l2) * (l1 + l2 + 1) - l * (l + 1)) // 2
    rad = kulish(2 * l + 1) * f(l1 + l2 - l) * f(l + m) * f(l - m) * f(l1 - m1) * f(l2 - m2) / (
        f(l1 + l2 + l + 1) * f(l1 - l2 + l) * f(-l1 + l2 + l) * f(l1 + m1) * f(l2 + m2))
    total = ZERO
    for k in range(0, l + l1 + l2 + 1):
        args = (l1 + l - m2 - k, l2 + m2 + k, k, l - m - k, l1 - l + m2 + k, l2 - m2 - k)
        if min(args) < 0:
            continue
        term = f(args[0]) * f(args[1]) / (f(args[2]) * f(args[3]) * f(args[4]) * f(args[5]))
        total = total + term * s_pow(k * (l + m + 1)) * _sign(k * (k - 1) // 2 + k * (l1 + l2 - m))
    return sqrt_scalar(rad) * total * s_pow(e) * sign


# ---------------------------------------------------------------------------
# highest weight plus lowering

def highest_weight_ratio(l1: int, l2: int, l: int, m1: int, lam: int) -> Scalar:
    """A_{m1, l-m1} / A_{l1, l-l1} from the closed solution of the recurrence."""
    f = kulish_factorial
    m2 = l - m1
    d = l1 - m1
    sign = _sign(lam * d + d * (d + 1) // 2)
    rad = f(l1 + l2 - l) * f(l1 + m1) * f(l2 + m2) / (
        f(l2 - l1 + l) * f(2 * l1) * f(l1 - m1) * f(l2 - m2))
    return sqrt_scalar(rad) * s_pow((l + 1) * d) * sign


def highest_weight_recurrence_residual(l1: int, l2: int, l: int, lam: int) -> list[Scalar]:
    """Residuals of the two-term highest-weight recurrence for the closed ratios."""
    out = []
    for m1 in range(max(l - l2, -l1), l1):
        m2 = l - m1
        a = highest_weight_ratio(l1, l2, l, m1, lam)
        b = highest_weight_ratio(l1, l2, l, m1 + 1, lam)
        lhs = sqrt_scalar(kulish(l1 - m1) * kulish(l1 + m1 + 1)) * s_pow(-m2) * a
        if l2 + m2 > 0:
            rhs = sqrt_scalar(kulish(l2 + m2) * kulish(l2 - m2 + 1)) * s_pow(m1 + 1) * b
        else:
            rhs = ZERO
        out.append(lhs - rhs * _sign(l1 - m1 + lam))
    return out


def highest_weight_norm_sign(l1: int, l2: int, l: int, lam: int) -> int:
    return _sign(lam * (l1 + l2 + l + lam))


@lru_cache(maxsize=None)
def highest_weight_vector(l1: int, l2: int, l: int, lam: int) -> dict[tuple[int, int], Scalar]:
    """Normalised highest-weight vector as {(m1, m2): coefficient}."""
    ratios = {}
    for m1 in range(max(l - l2, -l1), l1 + 1):
        ratios[(m1, l - m1)] = highest_weight_ratio(l1, l2, l, m1, lam)
    norm = ZERO
    for (m1, m2), a in ratios.items():
        norm = norm + a * a * _sign((l1 - m1 + lam) * (l2 - m2 + lam))
    target = highest_weight_norm_sign(l1, l2, l, lam)
    top = sqrt_scalar(Scalar.const(target) / norm)
    return {k: v * top for k, v in ratios.items()}


def highest_weight_top_closed(l1: int, l2: int, l: int) -> Scalar:
    """Closed value of the top coefficient A_{l1, l-l1} of the normalised
    highest-weight vector."""
    f = kulish_factorial
    sq = f(2 * l + 1) * f(2 * l1) / (f(l1 + l2 + l + 1) * f(l1 - l2 + l))
    # q^(-(l2-l1+l+1)(l1+l2-l)/4); the product is always even
    e = (-l1 + l2 + l + 1) * (l1 + l2 - l)
    return sqrt_scalar(sq) * s_pow(-e // 2)


def vminus_power_coeff(l: int, m: int, k: int) -> Scalar:
    """v-^k e_m = coeff * e_{m-k}, closed form."""
    if m - k < -l:
        return ZERO
    f = kulish_factorial
    sign = _sign((l - m) * k + k * (k + 1) // 2)
    return sqrt_scalar(f(l + m) * f(l - m + k) / (f(l - m) * f(l + m - k)) * varrho() ** k) * sign


@lru_cache(maxsize=None)
def _rep_word(l: int, lam: int, word: tuple[str, ...]) -> GradedMatrix:
    par = tuple((l - m + lam) % 2 for m in basis(l))
    out = GradedMatrix.identity(par)
    for g in word:
        out = out @ rep_generator(g, l, lam)
    return out


def coproduct_vminus_power(n: int):
    """Terms (coeff, left word, right word) of Delta(v-^n)."""
    out = []
    for k in range(n + 1):
        c = kulish_binomial(n, k) * _sign(k * (n - k))
        left = ("v-",) * (n - k) + ("K",) * k
        right = ("v-",) * k + ("Kinv",) * (n - k)
        out.append((c, left, right))
    return out


def _apply_tensor_word(vec: dict, l1: int, l2: int, lam: int, left, right) -> dict:
    ml = _rep_word(l1, lam, left)
    mr = _rep_word(l2, lam, right)
    rpar = sum(1 for g in right if g in ("v+", "v-")) % 2
    b1, b2 = basis(l1), basis(l2)
    idx1 = {m: i for i, m in enumerate(b1)}
    idx2 = {m: i for i, m in enumerate(b2)}
    out: dict = {}
    for (m1, m2), c in vec.items():
        sgn = _sign(rpar * (l1 - m1 + lam))
        j1, j2 = idx1[m1], idx2[m2]
        for i1, n1 in enumerate(b1):
            a = ml.entries[i1][j1]
            if a.is_zero():
                continue
            for i2, n2 in enumerate(b2):
                b = mr.entries[i2][j2]
                if b.is_zero():
                    continue
                key = (n1, n2)
                val = c * a * b
                if sgn < 0:
                    val = -val
                out[key] = out.get(key, ZERO) + val
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def _lowered_vector(l1: int, l2: int, l: int, m: int, lam: int) -> dict:
    hw = highest_weight_vector(l1, l2, l, lam)
    n = l - m
    acc: dict = {}
    for c, left, right in coproduct_vminus_power(n):
        part = _apply_tensor_word(hw, l1, l2, lam, left, right)
        for k, v in part.items():
            acc[k] = acc.get(k, ZERO) + c * v
    norm = vminus_power_coeff(l, l, n).inverse()
    return {k: v * norm for k, v in acc.items() if not v.is_zero()}


def cgc_lowering(l1: int, l2: int, l: int, m1: int, m2: int, lam: int) -> Scalar:
    if not in_domain(l1, l2, l, m1, m2):
        return ZERO
    return _lowered_vector(l1, l2, l, m1 + m2, lam).get((m1, m2), ZERO)


# ---------------------------------------------------------------------------
# matrix route

def _solve_highest_weight(l1: int, l2: int, l: int, lam: int) -> dict:
    vp = tensor_rep("v+", l1, l2, lam)
    tb = tensor_basis(l1, l2)
    idx = {p: i for i, p in enumerate(tb)}
    m1s = list(range(l1, max(l - l2, -l1) - 1, -1))
    vec = {(m1s[0], l - m1s[0]): ONE}
    for m1 in m1s[1:]:
        # component on e_{m1+1} (x) e_{l-m1}: unknown A_{m1} feeds it through v+ (x) 1,
        # the known A_{m1+1} through K (x) v+
        row = idx[(m1 + 1, l - m1)]
        c_new = vp.entries[row][idx[(m1, l - m1)]]
        c_old = vp.entries[row][idx[(m1 + 1, l - m1 - 1)]]
        vec[(m1, l - m1)] = -(c_old * vec[(m1 + 1, l - m1 - 1)]) / c_new
    norm = ZERO
    for (m1, m2), a in vec.items():
        norm = norm + a * a * _sign((l1 - m1 + lam) * (l2 - m2 + lam))
    top = sqrt_scalar(Scalar.const(highest_weight_norm_sign(l1, l2, l, lam)) / norm)
    return {k: v * top for k, v in vec.items()}


def _apply_matrix(mat: GradedMatrix, vec: dict, tb) -> dict:
    idx = {p: i for i, p in enumerate(tb)}
    out: dict = {}
    for p, c in vec.items():
        j = idx[p]
        for i, key in enumerate(tb):
            a = mat.entries[i][j]
            if not a.is_zero():
                out[key] = out.get(key, ZERO) + a * c
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def _matrix_multiplet(l1: int, l2: int, l: int, lam: int) -> dict:
    tb = tensor_basis(l1, l2)
    vm = tensor_rep("v-", l1, l2, lam)
    vec = _solve_highest_weight(l1, l2, l, lam)
    out = {l: vec}
    for m in range(l, -l, -1):
        vec = _apply_matrix(vm, vec, tb)
        c = vminus_coeff(l, m).inverse()
        vec = {k: v * c for k, v in vec.items()}
        out[m - 1] = vec
    return out


def cgc_matrix(l1: int, l2: int, l: int, m1: int, m2: int, lam: int) -> Scalar:
    if not in_domain(l1, l2, l, m1, m2):
        return ZERO
    return _matrix_multiplet(l1, l2, l, lam)[m1 + m2].get((m1, m2), ZERO)


# ---------------------------------------------------------------------------
# checks

def cgc(l1, l2, l, m1, m2, lam) -> Scalar:
    return cgc_closed(l1, l2, l, m1, m2, lam)


def _norm_sign_uncoupled(l1, l2, m1, m2, lam) -> int:
    return _sign((l1 - m1 + lam) * (l2 - m2 + lam))


def _norm_sign_coupled(l1, l2, l, m, lam) -> int:
    return _sign((l - m + lam) * (l1 + l2 + l + lam))


def verify_orthogonality(l1: int, l2: int, lam: int, fn=cgc_closed) -> bool:
    ls = range(abs(l1 - l2), l1 + l2 + 1)
    coupled = [(l, m) for l in ls for m in basis(l)]
    pairs = tensor_basis(l1, l2)
    # first relation
    for l, m in coupled:
        for lp, mp in coupled:
            if mp != m:
                continue
            tot = ZERO
            for m1 in basis(l1):
                m2 = m - m1
                if abs(m2) > l2:
                    continue
                tot = tot + fn(l1, l2, lp, m1, m2, lam) * fn(l1, l2, l, m1, m2, lam) \
                    * _norm_sign_uncoupled(l1, l2, m1, m2, lam)
            want = Scalar.const(_norm_sign_coupled(l1, l2, l, m, lam)) if (l, m) == (lp, mp) else ZERO
            if tot != want:
                return False
    # second relation
    for m1, m2 in pairs:
        for m1p, m2p in pairs:
            if m1p + m2p != m1 + m2:
                continue
            m = m1 + m2
            tot = ZERO
            for l in ls:
                if abs(m) > l:
                    continue
                tot = tot + fn(l1, l2, l, m1p, m2p, lam) * fn(l1, l2, l, m1, m2, lam) \
                    * _norm_sign_coupled(l1, l2, l, m, lam)
            want = Scalar.const(_norm_sign_uncoupled(l1, l2, m1, m2, lam)) if (m1, m2) == (m1p, m2p) else ZERO
            if tot != want:
                return False
    # inversion reconstructs every product vector
    for m1, m2 in pairs:
        m = m1 + m2
        acc: dict = {}
        for l in ls:
            if abs(m) > l:
                continue
            c = fn(l1, l2, l, m1, m2, lam) * _sign((l - m) * (l1 + l2 + l)) * _sign((l1 - m1) * (l2 - m2))
            for n1 in basis(l1):
                n2 = m - n1
                if abs(n2) > l2:
                    continue
                acc[(n1, n2)] = acc.get((n1, n2), ZERO) + c * fn(l1, l2, l, n1, n2, lam)
        for key, v in acc.items():
            if v != (ONE if key == (m1, m2) else ZERO):
                return False
    return True


def coupled_vector(l1: int, l2: int, l: int, m: int, lam: int, fn=cgc_closed) -> dict:
    out = {}
    for m1 in basis(l1):
        m2 = m - m1
        if abs(m2) <= l2:
            c = fn(l1, l2, l, m1, m2, lam)
            if not c.is_zero():
                out[(m1, m2)] = c
    return out


def verify_coupled_transform(l1: int, l2: int, l: int, lam: int, fn=cgc_closed) -> bool:
    if not abs(l1 - l2) <= l <= l1 + l2:
        raise ValueError("triangle condition violated")
    tb = tensor_basis(l1, l2)
    Lam = coupled_parity(l1, l2, l)
    vecs = {m: coupled_vector(l1, l2, l, m, lam, fn) for m in basis(l)}
    for g in ("K", "Kinv", "v+", "v-"):
        big = tensor_rep(g, l1, l2, lam)
        small = rep_generator(g, l, Lam)
        for j, m in enumerate(basis(l)):
            lhs = _apply_matrix(big, vecs[m], tb)
            rhs: dict = {}
            for i, mp in enumerate(basis(l)):
                d = small.entries[i][j]
                if d.is_zero():
                    continue
                for k, v in vecs[mp].items():
                    rhs[k] = rhs.get(k, ZERO) + d * v
            rhs = {k: v for k, v in rhs.items() if not v.is_zero()}
            if lhs != rhs:
                return False
    for m in basis(l):
        for mp in basis(l):
            tot = ZERO
            for (m1, m2), c in vecs[m].items():
                cp = vecs[mp].get((m1, m2))
                if cp is not None:
                    tot = tot + c * cp * _norm_sign_uncoupled(l1, l2, m1, m2, lam)
            want = Scalar.const(_norm_sign_coupled(l1, l2, l, m, lam)) if m == mp else ZERO
            if tot != want:
                return False
    return True


# ---------------------------------------------------------------------------
# golden tables and export

def _load_golden() -> dict:
    text = resources.files("ospq").joinpath("data/cgc_tables.json").read_text()
    return json.loads(text)


_GOLDEN = None


def golden_tables() -> dict:
    global _GOLDEN
    if _GOLDEN is None:
        _GOLDEN = _load_golden()
    return _GOLDEN


def _specialize(text: str, lam: int, macros: dict) -> str:
    for name in sorted(macros, key=len, reverse=True):
        text = text.replace(name, f"({macros[name]})")
    text = text.replace("(-1)^(lambda+1)", "(1)" if lam else "(-1)")
    text = text.replace("(-1)^lambda", "(-1)" if lam else "(1)")
    return text


def golden_entry(l1: int, l2: int, l: int, m: int, m1: int, lam: int) -> tuple[Scalar, Scalar]:
    """(table value, overall factor) as printed."""
    from .expr import parse_scalar
    g = golden_tables()[f"{l1},{l2}"]
    table = g["tables"][str(l)]
    row = table["rows"][str(m)]
    col = g["columns"].index(m1)
    macros = g.get("macros", {})
    val = parse_scalar(_specialize(row["entries"][col], lam, macros))
    of = parse_scalar(_specialize(row.get("of", table.get("of", "1")), lam, macros))
    return val, of


def golden_mismatches(l1: int, l2: int, lam: int) -> list[tuple]:
    bad = []
    g = golden_tables()[f"{l1},{l2}"]
    for ls, table in g["tables"].items():
        l = int(ls)
        for ms in table["rows"]:
            m = int(ms)
            for m1 in g["columns"]:
                val, of = golden_entry(l1, l2, l, m, m1, lam)
                if val * of != cgc_closed(l1, l2, l, m1, m - m1, lam):
                    bad.append((l, m, m1))
    return bad


def table_values(l1: int, l2: int, lam: int) -> dict:
    """{l: {m: {m1: Scalar}}} for the full decomposition."""
    out = {}
    for l in range(l1 + l2, abs(l1 - l2) - 1, -1):
        out[l] = {m: {m1: cgc_closed(l1, l2, l, m1, m - m1, lam) for m1 in basis(l1)} for m in basis(l)}
    return out


def _registered_factor(l1, l2, l, m, lam) -> Scalar | None:
    key = f"{l1},{l2}"
    g = golden_tables().get(key)
    if not g or str(l) not in g["tables"]:
        return None
    table = g["tables"][str(l)]
    if str(m) not in table["rows"]:
        return None
    from .expr import parse_scalar
    row = table["rows"][str(m)]
    return parse_scalar(_specialize(row.get("of", table.get("of", "1")), lam, g.get("macros", {})))


def emit_table(l1: int, l2: int, lam: int, fmt: str = "json", ell: int | None = None) -> str:
    from .expr import format_scalar
    if fmt not in ("json", "csv", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    vals = table_values(l1, l2, lam)
    if ell is not None:
        if ell not in vals:
            raise ValueError(f"ell={ell} does not occur in {l1} x {l2}")
        vals = {ell: vals[ell]}
    cols = basis(l1)
    if fmt == "json":
        data = {
            "ell1": l1, "ell2": l2, "lambda": lam,
            "tables": {str(l): {str(m): {str(m1): format_scalar(c) for m1, c in row.items()}
                                for m, row in rows.items()} for l, rows in vals.items()},
        }
        return json.dumps(data, indent=2, sort_keys=False)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ell", "m", "m1", "m2", "value"])
        for l, rows in vals.items():
            for m, row in rows.items():
                for m1, c in row.items():
                    w.writerow([l, m, m1, m - m1, format_scalar(c)])
        return buf.getvalue()
    lines = []
    for l, rows in vals.items():
        lines.append(f"% ell = {l}")
        lines.append("\\begin{tabular}{c||" + "|".join("c" for _ in cols) + "||c}")
        lines.append("  & " + " & ".join(str(c) for c in cols) + " & OF \\\\ \\hline")
        for m, row in rows.items():
            of = _registered_factor(l1, l2, l, m, lam)
            cells = []
            for m1 in cols:
                c = row[m1]
                if of is not None and not c.is_zero():
                    c = c / of if of.is_single() else c
                cells.append(_latex_scalar(c))
            oft = _latex_scalar(of) if of is not None else "1"
            lines.append(f"  {m} & " + " & ".join(cells) + f" & {oft} \\\\")
        lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _latex_scalar(c: Scalar) -> str:
    from .expr import latex_scalar
    text = latex_scalar(c)
    return f"${text}$" if text != "0" else "0"


__all__ = [
    "cgc", "cgc_closed", "cgc_lowering", "cgc_matrix", "verify_orthogonality",
    "verify_coupled_transform", "emit_table", "golden_mismatches", "golden_entry",
    "highest_weight_vector", "highest_weight_ratio", "vminus_power_coeff",
    "coproduct_vminus_power", "coupled_parity", "in_domain", "table_values",
]
