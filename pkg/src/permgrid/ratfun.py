"""Exact univariate polynomials and rational functions over the integers.

Everything here is exact: coefficients are Python ints (or Fractions while a
computation is in flight) and no floating point is ever produced.  Rational
functions are kept in a canonical form so that two constructions of the same
function compare equal structurally.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _trim(coeffs: Iterable[Number]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _as_int_if_integral(v: Number) -> Number:
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class Polynomial:
    """A polynomial in ``x``; ``coeffs[k]`` is the coefficient of ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = tuple(_as_int_if_integral(c) for c in _trim(coeffs))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "Polynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Polynomial(quot), Polynomial(rem)

    def content(self) -> Fraction:
        """Rational content: gcd of numerators over lcm of denominators."""
        if self.is_zero():
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self.coeffs]
        dens = [Fraction(c).denominator for c in self.coeffs]
        lcm = reduce(lambda a, b: a * b // gcd(a, b), dens, 1)
        return Fraction(reduce(gcd, nums), lcm)

    def evaluate(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (order of vanishing at 0)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("zero polynomial has no valuation")

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_polynomial(self)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (the zero polynomial if both are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    lead = Fraction(a.coeffs[-1])
    return Polynomial(Fraction(c) / lead for c in a.coeffs)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


class RationalFunction:
    """A quotient ``num/den`` of integer polynomials in lowest terms.

    Canonical form: gcd(num, den) = 1, all coefficients are integers whose
    joint gcd is 1, and the lowest nonzero coefficient of ``den`` is
    positive.  When the constant term of ``den`` can be 1 with integer
    numerator coefficients, the canonical form has it equal to 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num)
        if den is None:
            den = Polynomial.const(1)
        elif not isinstance(den, Polynomial):
            den = Polynomial.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = self._canonical(num, den)

    @staticmethod
    def _canonical(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
        if num.is_zero():
            return Polynomial(), Polynomial.const(1)
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        # scale to integer coefficients with joint content 1
        coeffs = [Fraction(c) for c in num.coeffs + den.coeffs]
        lcm = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
        ints = [int(c * lcm) for c in coeffs]
        g2 = reduce(gcd, (abs(v) for v in ints if v), 0)
        ints = [v // g2 for v in ints]
        n = len(num.coeffs)
        num, den = Polynomial(ints[:n]), Polynomial(ints[n:])
        if den[den.valuation()] < 0:
            num, den = -num, -den
        return num, den

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(Polynomial.x())

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other if isinstance(other, Polynomial) else Polynomial.const(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction(1) / (self ** (-e))
        return RationalFunction(self.num ** e, self.den ** e)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def valuation(self) -> int:
        """Order of vanishing at x = 0 (negative for a pole)."""
        return self.num.valuation() - self.den.valuation()

    def series(self, n_max: int) -> list:
        """Taylor coefficients ``[c_0, ..., c_{n_max}]``."""
        return series(self, n_max)

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """``self(inner(x))`` by Horner evaluation in the field."""
        def horner(p: Polynomial) -> RationalFunction:
            acc = RationalFunction(0)
            for c in reversed(p.coeffs):
                acc = acc * inner + c
            return acc
        return horner(self.num) / horner(self.den)

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        return format_rational(self)


def series(r: RationalFunction, n_max: int) -> list:
    """Coefficients of the power series of ``r`` up to ``x**n_max``.

    Uses the linear recurrence given by the denominator; the denominator must
    not vanish at 0.
    """
    d0 = r.den[0]
    if d0 == 0:
        raise ValueError(f"{r} has a pole at x = 0; no power series")
    out: list = []
    for n in range(n_max + 1):
        acc = Fraction(r.num[n])
        for k in range(1, min(n, r.den.degree) + 1):
            acc -= r.den[k] * out[n - k]
        out.append(_as_int_if_integral(acc / d0))
    return out


X = RationalFunction.x()
ONE = RationalFunction(1)


def substitute_inflation(r: RationalFunction) -> RationalFunction:
    """``r(x/(1-x))``: every point of a skeleton replaced by a nonempty block."""
    def clear(p: Polynomial, d: int) -> Polynomial:
        # x^k (1-x)^(d-k) summed with p's coefficients
        one_minus_x = Polynomial((1, -1))
        acc = Polynomial()
        for k, c in enumerate(p.coeffs):
            if c:
                acc = acc + Polynomial.x() ** k * one_minus_x ** (d - k) * c
        return acc

    d = max(r.num.degree, r.den.degree)
    # both cleared by (1-x)^d, which cancels
    return RationalFunction(clear(r.num, d), clear(r.den, d))


SpecialFactor = Union[RationalFunction, tuple]


def inflation_gf(s: RationalFunction, special_factors: Sequence[RationalFunction]) -> RationalFunction:
    """Generating function of the inflations of the skeletons counted by ``s``.

    Every skeleton point inflates to a nonempty monotone block (``x/(1-x)``),
    except ``k = len(special_factors)`` distinguished points, each of which
    inflates to the class counted by the matching factor.
    """
    k = len(special_factors)
    if not s.is_zero() and s.valuation() < k:
        raise ValueError(f"skeleton series must vanish to order {k} at 0; got {s.valuation()}")
    out = substitute_inflation(s) * ((ONE - X) / X) ** k
    for f in special_factors:
        out = out * f
    if not out.is_zero() and out.valuation() < 0:
        raise ValueError("inflation generating function is not a power series")
    return out


def binomial_transform(coeffs: Sequence[Number], n_max: int) -> list:
    """Coefficients of s(x/(1-x)) from those of s by the binomial identity.

    Coefficient n is sum_k C(n-1, n-k) s_k for n >= 1 (and s_0 at n = 0).
    """
    out = [coeffs[0] if coeffs else 0]
    for n in range(1, n_max + 1):
        out.append(sum(comb(n - 1, n - k) * coeffs[k] for k in range(1, n + 1) if k < len(coeffs)))
    return out


def drop_below(r: RationalFunction, n: int) -> RationalFunction:
    """``r`` minus its Taylor terms of degree < n."""
    head = series(r, n - 1) if n > 0 else []
    return r - RationalFunction(Polynomial(head))


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of a (possibly over-determined) linear system, or None."""
    n_cols = len(rows[0]) if rows else 0
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in m):
        return None
    sol = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def guess_rational(coeffs: Sequence[Number], max_degree: int = 10, spare: int = 3) -> RationalFunction | None:
    """The rational function of least total degree whose series starts with ``coeffs``.

    A candidate with numerator degree p and denominator degree q is only
    accepted when at least ``spare`` coefficients beyond the p + q + 1 that
    determine it also agree.  Returns None when nothing fits.
    """
    a = [Fraction(c) for c in coeffs]
    n = len(a)
    for total in range(max_degree + 1):
        for q in range(total + 1):
            p = total - q
            if p + q + 1 + spare > n:
                continue
            # unknowns d_1..d_q with d_0 = 1; sum_j d_j a_{k-j} = 0 for k > p
            rows, rhs = [], []
            for k in range(p + 1, n):
                rows.append([a[k - j] if k - j >= 0 else Fraction(0) for j in range(1, q + 1)])
                rhs.append(-a[k])
            tail = _solve(rows, rhs) if q else []
            if tail is None:
                continue
            d = [Fraction(1)] + tail
            num = [sum(d[j] * a[k - j] for j in range(min(k, q) + 1)) for k in range(p + 1)]
            cand = RationalFunction(Polynomial(num), Polynomial(d))
            if series(cand, n - 1) == [_as_int_if_integral(v) for v in a]:
                return cand
    return None


# ---------------------------------------------------------------------------
# text form

def _split_factors(p: Polynomial, factors: Sequence[Polynomial]) -> tuple[Polynomial, list]:
    found = []
    for f in factors:
        while p.degree >= f.degree > 0:
            q, r = p.divmod(f)
            if not r.is_zero() or any(isinstance(c, Fraction) for c in q.coeffs):
                break
            found.append(f)
            p = q
    return p, found


def _factored(p: Polynomial, factors: Sequence[Polynomial]) -> str:
    rest, found = _split_factors(p, factors)
    pieces = []
    # x^k split out explicitly
    xk = 0
    if not rest.is_zero():
        xk = rest.valuation()
        rest = Polynomial(rest.coeffs[xk:])
    if xk:
        pieces.append("x" if xk == 1 else f"x^{xk}")
    grouped: dict = {}
    for f in found:
        grouped[f] = grouped.get(f, 0) + 1
    if rest != Polynomial.const(1) or not (pieces or grouped):
        if rest == Polynomial.const(-1) and (pieces or grouped):
            pieces.insert(0, "-1")
        else:
            txt = format_polynomial(rest)
            pieces.append(f"({txt})" if len(rest.coeffs) > 1 and (pieces or grouped) else txt)
    for f, e in grouped.items():
        body = f"({format_polynomial(f)})"
        pieces.append(body if e == 1 else f"{body}^{e}")
    return "*".join(pieces)


def _wrap(text: str, product_too: bool) -> str:
    """Parenthesize a side of a quotient unless it is a single factor."""
    if text.startswith("(") and text.endswith(")") and text.count("(") == 1:
        return text
    body = text.lstrip("-")
    if "+" in body or " - " in body or (product_too and "*" in body and not body.startswith("x")):
        return f"({text})"
    return text


def format_rational(r: RationalFunction, factors: Sequence[Polynomial] = ()) -> str:
    """Render as ``num / den``; with ``factors`` use factored form where they divide.

    The output always reads back through :func:`parse_rational`.
    """
    if factors:
        num = _factored(r.num, factors)
        den = _factored(r.den, factors)
    else:
        num = format_polynomial(r.num)
        den = format_polynomial(r.den)
    if r.den == Polynomial.const(1):
        return num
    return f"{_wrap(num, False)} / {_wrap(den, True)}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


def parse_rational(text: str) -> RationalFunction:
    """Parse an arithmetic expression in ``x`` into a rational function.

    Accepts the canonical ``num / den`` text form as well as factored forms
    such as ``x^4*(2-3*x-x^2)/((1+x)*(1-2*x)^2)``.  A single slash outside
    all parentheses always separates numerator from denominator, so
    ``1 - 3*x / 1 - x`` reads as ``(1 - 3x)/(1 - x)``.
    """
    depth = 0
    slashes = []
    for k, ch in enumerate(text):
        depth += (ch == "(") - (ch == ")")
        if ch == "/" and depth == 0:
            slashes.append(k)
    if len(slashes) == 1:
        k = slashes[0]
        return _parse_expr(text[:k]) / _parse_expr(text[k + 1:])
    return _parse_expr(text)


def _parse_expr(text: str) -> RationalFunction:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        tokens.append(("num", int(num)) if num else ("x", None) if var else ("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while True:
            if peek() in (("op", "*"), ("op", "/")):
                op = take()[1]
                rhs = power()
                acc = acc * rhs if op == "*" else acc / rhs
            elif peek()[0] in ("num", "x") or peek() == ("op", "("):
                acc = acc * power()  # implicit multiplication, e.g. 2x or (..)(..)
            else:
                return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return RationalFunction(val)
        if kind == "x":
            return X
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -power()
        raise ValueError(f"unexpected token {val!r}")

    out = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return out
