"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a map from exponent vectors to nonzero Fractions.  All
ring operations are exact.  Binary operations require both operands to share
the same variable tuple; use :func:`variables` to build generators over a
common ring, or :meth:`Poly.embed` to move a polynomial into a larger one.

The module also provides exact bivariate gcds (primitive pseudo-remainder
sequences), exact single-divisor division, and substitution of rational
functions with denominator tracking.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Sequence

from .eps import RatLike, rat
from .errors import InputParseError, PreconditionError

Exponents = tuple  # tuple[int, ...]


class Poly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponents, Fraction]):
        vs = tuple(vars)
        clean = {}
        for exps, coeff in terms.items():
            c = rat(coeff)
            if c == 0:
                continue
            e = tuple(exps)
            if len(e) != len(vs) or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e} for variables {vs}")
            clean[e] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(vars: Sequence[str]) -> "Poly":
        return Poly(vars, {})

    @staticmethod
    def const(vars: Sequence[str], c: RatLike) -> "Poly":
        return Poly(vars, {(0,) * len(tuple(vars)): rat(c)})

    @staticmethod
    def variable(vars: Sequence[str], name: str) -> "Poly":
        vs = tuple(vars)
        i = vs.index(name)
        e = [0] * len(vs)
        e[i] = 1
        return Poly(vs, {tuple(e): Fraction(1)})

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("total degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def order(self) -> int:
        """Smallest total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            raise ValueError("order of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def lowest_form(self) -> "Poly":
        """Homogeneous part of lowest total degree (the tangent cone)."""
        m = self.order()
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == m})

    def divisible_by_var(self, var: str) -> bool:
        i = self.vars.index(var)
        return bool(self.terms) and all(e[i] >= 1 for e in self.terms)

    # -- arithmetic -----------------------------------------------------------

    def _check_same_ring(self, other: "Poly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = Poly.const(self.vars, rat(other))
        self._check_same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = Poly.const(self.vars, rat(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = rat(other)
            if c == 0:
                return Poly.zero(self.vars)
            return Poly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check_same_ring(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- substitution and evaluation ------------------------------------------

    def evaluate(self, values: Mapping[str, RatLike]) -> Fraction:
        vals = [rat(values[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for base, k in zip(vals, e):
                if k:
                    term *= base**k
            total += term
        return total

    def substitute_values(self, values: Mapping[str, RatLike]) -> "Poly":
        """Substitute rational constants for a subset of the variables."""
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        vals = {i: rat(values[v]) for i, v in enumerate(self.vars) if v in values}
        out: dict = {}
        for e, c in self.terms.items():
            coeff = c
            for i, val in vals.items():
                if e[i]:
                    coeff *= val ** e[i]
            if coeff == 0:
                continue
            key = tuple(e[i] for i in keep)
            s = out.get(key, Fraction(0)) + coeff
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(tuple(self.vars[i] for i in keep), out)

    def substitute_polys(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Substitute polynomials for variables; unmapped variables map to themselves."""
        if not mapping:
            return self
        target_vars = next(iter(mapping.values())).vars
        images = []
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                if img.vars != target_vars:
                    raise ValueError("substitution images must share one ring")
            else:
                img = Poly.variable(target_vars, v)
            images.append(img)
        total = Poly.zero(target_vars)
        for e, c in self.terms.items():
            term = Poly.const(target_vars, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            total = total + term
        return total

    def shift_origin(self, offsets: Mapping[str, RatLike]) -> "Poly":
        """Substitute ``v -> v + offset`` for each listed variable."""
        mapping = {}
        for v, a in offsets.items():
            mapping[v] = Poly.variable(self.vars, v) + rat(a)
        return self.substitute_polys(mapping)

    def derivative(self, var: str) -> "Poly":
        i = self.vars.index(var)
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return Poly(self.vars, out)

    # -- ring housekeeping -----------------------------------------------------

    def embed(self, vars: Sequence[str]) -> "Poly":
        """Reinterpret over a larger (or reordered) variable tuple."""
        vs = tuple(vars)
        idx = [vs.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vs)
            for pos, k in zip(idx, e):
                ne[pos] = k
            out[tuple(ne)] = c
        return Poly(vs, out)

    def drop_unused_vars(self) -> "Poly":
        used = [i for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
        out = {tuple(e[i] for i in used): c for e, c in self.terms.items()}
        return Poly(tuple(self.vars[i] for i in used), out)

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def _lex_leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def normalized_primitive(self) -> "Poly":
        """Scale to integer coprime coefficients with positive lex-leading one."""
        if self.is_zero:
            return self
        c = self.content()
        _, lead = self._lex_leading()
        if lead < 0:
            c = -c
        return self * (1 / c)

    def proportional_to(self, other: "Poly") -> bool:
        """True when the two polynomials agree up to a nonzero rational factor."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.normalized_primitive() == other.normalized_primitive()

    def divide_exact(self, divisor: "Poly") -> "Poly | None":
        """Exact quotient ``self / divisor`` or None if division is not exact."""
        self._check_same_ring(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        quotient: dict = {}
        r = self
        de, dc = divisor._lex_leading()
        while not r.is_zero:
            re, rc = r._lex_leading()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(k < 0 for k in qe):
                return None
            qc = rc / dc
            quotient[qe] = quotient.get(qe, Fraction(0)) + qc
            r = r - Poly(self.vars, {qe: qc}) * divisor
        return Poly(self.vars, quotient)

    # -- printing ----------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"Poly({self})"


def variables(*names: str) -> tuple[Poly, ...]:
    """Generators of a polynomial ring with the given variable names."""
    return tuple(Poly.variable(names, n) for n in names)


def product(polys: Iterable[Poly], vars: Sequence[str] | None = None) -> Poly:
    acc = None
    for p in polys:
        acc = p if acc is None else acc * p
    if acc is None:
        if vars is None:
            raise ValueError("empty product needs an explicit ring")
        return Poly.const(vars, 1)
    return acc


# -- rational-function substitution ------------------------------------------


def poly_substitute(
    f: Poly, mapping: Mapping[str, tuple[Poly, Poly]]
) -> tuple[Poly, Poly]:
    """Substitute rational functions ``v -> num/den`` into ``f``.

    Returns the pair ``(numerator, denominator)`` over the images' common
    ring, with the common rational content removed and the denominator's
    lex-leading coefficient made positive.  Unmapped variables map to
    themselves.  Raises :class:`PreconditionError` if any substituted
    denominator is the zero polynomial.
    """
    if mapping:
        target_vars = next(iter(mapping.values()))[0].vars
    else:
        target_vars = f.vars
    nums: list[Poly] = []
    dens: list[Poly] = []
    degs: list[int] = []
    for v in f.vars:
        if v in mapping:
            num, den = mapping[v]
            if den.vars != target_vars or num.vars != target_vars:
                raise ValueError("substitution images must share one ring")
            if den.is_zero:
                raise PreconditionError(f"zero denominator substituted for {v}")
        else:
            num = Poly.variable(target_vars, v)
            den = Poly.const(target_vars, 1)
        nums.append(num)
        dens.append(den)
        degs.append(f.degree_in(v))

    total = Poly.zero(target_vars)
    for e, c in f.terms.items():
        term = Poly.const(target_vars, c)
        for num, den, k, d in zip(nums, dens, e, degs):
            if k:
                term = term * num**k
            if d - k:
                term = term * den ** (d - k)
        total = total + term
    denom = product(
        [den**d for den, d in zip(dens, degs) if d], vars=target_vars
    )
    return _remove_common_content(total, denom)


def _remove_common_content(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    cn, cd = num.content(), den.content()
    if cd == 0:
        raise ZeroDivisionError("zero denominator")
    if cn == 0:
        c = cd
    else:
        c = Fraction(
            _int_gcd(cn.numerator * cd.denominator, cd.numerator * cn.denominator),
            cn.denominator * cd.denominator,
        )
    _, lead = den._lex_leading()
    if lead < 0:
        c = -c
    return num * (1 / c), den * (1 / c)


# -- univariate helpers (coefficient lists, index = degree) --------------------


def _uni_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _uni_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_trim(_uni_mod(a, b))
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _uni_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        q = a[-1] / lb
        for i, c in enumerate(b):
            a[i + k] -= q * c
        _uni_trim(a)
    return a


def _uni_div_exact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db, lb = len(b) - 1, b[-1]
    while _uni_trim(a) and len(a) - 1 >= db:
        k = len(a) - 1 - db
        q = a[-1] / lb
        out[k] = q
        for i, c in enumerate(b):
            a[i + k] -= q * c
    if _uni_trim(a):
        raise ArithmeticError("inexact univariate division")
    return _uni_trim(out)


# -- bivariate gcd via primitive pseudo-remainder sequences ---------------------


def _to_rows(f: Poly) -> list[list[Fraction]]:
    """Bivariate poly as rows[y_power] = x-coefficient list."""
    dy = f.degree_in(f.vars[1])
    dx = f.degree_in(f.vars[0])
    rows = [[Fraction(0)] * (dx + 1) for _ in range(dy + 1)]
    for (i, j), c in f.terms.items():
        rows[j][i] = c
    return [_uni_trim(r) for r in rows]


def _from_rows(rows: list[list[Fraction]], vars: tuple[str, str]) -> Poly:
    terms = {}
    for j, row in enumerate(rows):
        for i, c in enumerate(row):
            if c != 0:
                terms[(i, j)] = c
    return Poly(vars, terms)


def _rows_content(rows) -> list[Fraction]:
    g: list[Fraction] = []
    for r in rows:
        if r:
            g = _uni_gcd(g, r) if g else [c / r[-1] for c in r]
        if g == [Fraction(1)]:
            break
    return g or []


def _rows_mul_uni(rows, u):
    out = []
    for r in rows:
        if not r or not u:
            out.append([])
            continue
        prod = [Fraction(0)] * (len(r) + len(u) - 1)
        for i, a in enumerate(r):
            if a == 0:
                continue
            for j, b in enumerate(u):
                prod[i + j] += a * b
        out.append(_uni_trim(prod))
    return out

def _rows_divide_uni(rows, u):
    return [(_uni_div_exact(r, u) if r else []) for r in rows]


def _rows_trim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _rows_sub(rows_a, rows_b):
    n = max(len(rows_a), len(rows_b))
    out = []
    for j in range(n):
        a = rows_a[j] if j < len(rows_a) else []
        b = rows_b[j] if j < len(rows_b) else []
        m = max(len(a), len(b))
        row = [
            (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
            for i in range(m)
        ]
        out.append(_uni_trim(row))
    return _rows_trim(out)


def _rows_shift_y(rows, k):
    return [[] for _ in range(k)] + [list(r) for r in rows]


def _rows_pseudo_rem(A, B):
    """Pseudo-remainder of A by B as polynomials in y over Q[x]."""
    A = [list(r) for r in A]
    dB = len(B) - 1
    lB = B[-1]
    while _rows_trim(A) and len(A) - 1 >= dB:
        lA = A[-1]
        k = len(A) - 1 - dB
        A = _rows_sub(_rows_mul_uni(A, lB), _rows_shift_y(_rows_mul_uni(B, lA), k))
    return A


def _rows_primitive(rows):
    c = _rows_content(rows)
    if len(c) <= 1:
        return [list(r) for r in rows]
    return _rows_divide_uni(rows, c)


def gcd_bivariate(f: Poly, g: Poly) -> Poly:
    """An exact gcd of two bivariate polynomials (normalized primitive)."""
    if f.vars != g.vars or len(f.vars) != 2:
        raise ValueError("gcd_bivariate needs two polynomials in the same two variables")
    if f.is_zero:
        return g.normalized_primitive()
    if g.is_zero:
        return f.normalized_primitive()
    A, B = _to_rows(f), _to_rows(g)
    contA, contB = _rows_content(A), _rows_content(B)
    primA = _rows_divide_uni(A, contA)
    primB = _rows_divide_uni(B, contB)
    if len(primA) < len(primB):
        primA, primB = primB, primA
    # primitive PRS on the y-primitive parts
    while True:
        if len(primB) == 1:
            # y-degree 0 and y-primitive: unit
            prim_gcd = [[Fraction(1)]]
            break
        R = _rows_trim(_rows_pseudo_rem(primA, primB))
        if not R:
            prim_gcd = _rows_primitive(primB)
            break
        primA, primB = primB, _rows_primitive(R)
    cont_gcd = _uni_gcd(contA, contB)
    result = _rows_mul_uni(prim_gcd, cont_gcd)
    return _from_rows(result, (f.vars[0], f.vars[1])).normalized_primitive()


def gcd_list(polys: Sequence[Poly]) -> Poly:
    acc = polys[0]
    for p in polys[1:]:
        acc = gcd_bivariate(acc, p)
        if acc.is_constant and not acc.is_zero:
            break
    return acc


def repeated_factor(f: Poly) -> Poly:
    """gcd(f, df/dx, df/dy): non-constant exactly when f has a repeated factor."""
    x, y = f.vars
    return gcd_list([f, f.derivative(x), f.derivative(y)])


# -- expression parser -----------------------------------------------------------

#: the variable universe of the expression grammar
EXPR_VARS = ("x", "y", "t", "x0", "x1", "y0", "y1")


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str]] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[i:j]))
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise InputParseError(f"unexpected character {ch!r} in expression")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("eof", "")

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise InputParseError(f"expected {kind}, found {tok[1]!r}")
        self.pos += 1
        return tok


def parse_poly(text: str) -> Poly:
    """Parse an integer-coefficient polynomial expression.

    Grammar: integers, the variables x, y, t, x0, x1, y0, y1, the operators
    ``+ - * ^`` and parentheses.  The result's variables are those that
    actually occur, in the fixed order of :data:`EXPR_VARS`.
    """
    toks = _Tokens(text)
    value = _parse_sum(toks)
    if toks.peek()[0] != "eof":
        raise InputParseError(f"trailing input at {toks.peek()[1]!r}")
    return value.drop_unused_vars()


def _parse_sum(toks: _Tokens) -> Poly:
    left = _parse_product(toks)
    while toks.peek()[0] in ("+", "-"):
        op = toks.take()[0]
        right = _parse_product(toks)
        left = left + right if op == "+" else left - right
    return left


def _parse_product(toks: _Tokens) -> Poly:
    left = _parse_factor(toks)
    while toks.peek()[0] == "*":
        toks.take()
        left = left * _parse_factor(toks)
    return left


def _parse_factor(toks: _Tokens) -> Poly:
    sign = 1
    while toks.peek()[0] == "-":
        toks.take()
        sign = -sign
    base = _parse_atom(toks)
    if toks.peek()[0] == "^":
        toks.take()
        if toks.peek()[0] == "-":
            raise InputParseError("negative exponents are not polynomials")
        exp = int(toks.take("int")[1])
        base = base**exp
    return base * sign


def _parse_atom(toks: _Tokens) -> Poly:
    kind, text = toks.peek()
    if kind == "int":
        toks.take()
        return Poly.const(EXPR_VARS, int(text))
    if kind == "name":
        toks.take()
        if text not in EXPR_VARS:
            raise InputParseError(f"unknown variable {text!r}")
        return Poly.variable(EXPR_VARS, text)
    if kind == "(":
        toks.take()
        inner = _parse_sum(toks)
        toks.take(")")
        return inner
    raise InputParseError(f"unexpected token {text!r}")
