"""Exact sparse multivariate polynomials over the integers and rationals.

A :class:`Poly` maps exponent tuples to nonzero Python ints.  Monomials are
compared lexicographically with ``a1 > a2 > ... > am``, which is plain tuple
order, so the leading term is simply the largest key.

  3*a1^2*a2 - 1   ->   Poly({(2, 1): 3, (0, 0): -1}, nvars=2)

Values are never mutated after construction; every operation returns a new
object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, NotDivisible, PreconditionError

Monomial = tuple


def _add_mono(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, nvars: int = 0):
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ArityMismatch(f"monomial {mono} does not have arity {nvars}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if coeff:
                clean[mono] = int(coeff)
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int, nvars: int) -> "Poly":
        return cls._raw({(0,) * nvars: int(c)} if c else {}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, index: int, nvars: int) -> "Poly":
        if not 0 <= index < nvars:
            raise ArityMismatch(f"variable index {index} out of range for {nvars} variables")
        mono = [0] * nvars
        mono[index] = 1
        return cls._raw({tuple(mono): 1}, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "Poly":
        return cls({tuple(exponents): coeff}, len(exponents))

    # -- basic queries -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def __len__(self):
        return len(self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()] if self.terms else 0

    def total_degree(self) -> int:
        """Total degree; ``-1`` stands in for the degree of the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=-1)

    def variables(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        return reduce(math.gcd, self.terms.values(), 0)

    def primitive(self) -> "Poly":
        """Divide out the content and make the leading coefficient positive."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        return Poly._raw({m: v // c for m, v in self.terms.items()}, self.nvars)

    def normalized(self) -> "Poly":
        """Same polynomial up to sign, with positive leading coefficient."""
        if self.terms and self.leading_coefficient() < 0:
            return -self
        return self

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Poly":
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return Poly._raw({_add_mono(ma, mb): ca * cb for ma, ca in a.items()}, self.nvars)
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _add_mono(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Poly._raw({m: c for m, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- division ------------------------------------------------------

    def exact_div(self, d: "Poly | int") -> "Poly":
        """Return ``q`` with ``self == d * q`` or raise :class:`NotDivisible`."""
        if isinstance(d, int):
            if d == 0:
                raise ZeroDivisionError("division by zero polynomial")
            if any(c % d for c in self.terms.values()):
                raise NotDivisible(f"{self} is not divisible by {d}")
            return Poly._raw({m: c // d for m, c in self.terms.items()}, self.nvars)
        d = self._coerce(d)
        if not d.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        if len(d.terms) == 1:
            (md, cd), = d.terms.items()
            out = {}
            for m, c in self.terms.items():
                e = tuple(x - y for x, y in zip(m, md))
                if min(e) < 0 or c % cd:
                    raise NotDivisible(f"{self} is not divisible by {d}")
                out[e] = c // cd
            return Poly._raw(out, self.nvars)
        for i in range(self.nvars):
            if d.degree(i) > self.degree(i):
                raise NotDivisible(f"{self} is not divisible by {d}")
        lm = d.leading_monomial()
        lc = d.terms[lm]
        rest = [(m, c) for m, c in d.terms.items() if m != lm]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem)
            c = rem.pop(m)
            e = tuple(x - y for x, y in zip(m, lm))
            if min(e) < 0 or c % lc:
                raise NotDivisible(f"{self} is not divisible by {d}")
            q = c // lc
            quot[e] = q
            for md, cd in rest:
                key = _add_mono(e, md)
                v = rem.get(key, 0) - q * cd
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return Poly._raw(quot, self.nvars)

    def divides(self, p: "Poly") -> bool:
        try:
            p.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- calculus and evaluation ----------------------------------------

    def derivative(self, var: int, order: int = 1) -> "Poly":
        if not 0 <= var < self.nvars:
            raise ArityMismatch(f"variable index {var} out of range")
        out = {}
        for m, c in self.terms.items():
            e = m[var]
            if e < order:
                continue
            f = c
            for k in range(order):
                f *= e - k
            out[m[:var] + (e - order,) + m[var + 1:]] = f
        return Poly._raw(out, self.nvars)

    def eval(self, values: Sequence) -> int:
        """Evaluate at an integer (or rational) point."""
        values = list(values)
        if len(values) != self.nvars:
            raise ArityMismatch(f"point of length {len(values)} for {self.nvars} variables")
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def subs(self, var: int, value: "Poly | int") -> "Poly":
        """Substitute a polynomial (same arity) for one variable."""
        if isinstance(value, int):
            value = Poly.const(value, self.nvars)
        out = Poly.zero(self.nvars)
        powers = {}
        for m, c in self.terms.items():
            e = m[var]
            if e not in powers:
                powers[e] = value ** e
            rest = Poly._raw({m[:var] + (0,) + m[var + 1:]: c}, self.nvars)
            out = out + rest * powers[e]
        return out

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Move variable ``i`` to slot ``positions[i]`` of a ring with ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise ArityMismatch("one target slot per variable required")
        out = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for p, k in zip(positions, m):
                e[p] += k
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return Poly(out, nvars)

    def coefficients_in(self, var: int) -> dict:
        """Split into ``{k: coefficient of var^k}``; coefficients keep the arity."""
        out: dict = {}
        for m, c in self.terms.items():
            k = m[var]
            out.setdefault(k, {})[m[:var] + (0,) + m[var + 1:]] = c
        return {k: Poly._raw(t, self.nvars) for k, t in out.items()}

    def min_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    # -- text --------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r}, nvars={self.nvars})"


def default_names(nvars: int) -> list:
    return [f"a{i + 1}" for i in range(nvars)]


class RatPoly:
    """Polynomial over the rationals kept as ``numerator / denominator``.

    The denominator is a positive integer coprime to the numerator's content.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content(), den) if num.terms else den
        if g > 1:
            num = num.exact_div(g)
            den //= g
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_fraction(cls, q, nvars: int) -> "RatPoly":
        q = Fraction(q)
        return cls(Poly.const(q.numerator, nvars), q.denominator)

    def _coerce(self, other):
        if isinstance(other, RatPoly):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, Poly):
            return RatPoly(other, 1)
        if isinstance(other, (int, Fraction)):
            return RatPoly.from_fraction(other, self.nvars)
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatPoly(self.num + other.num, self.den)
        return RatPoly(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return RatPoly(self.num * q.numerator, self.den * q.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatPoly(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return RatPoly(self.num * q.denominator, self.den * q.numerator)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (Poly, int, Fraction)):
            other = self._coerce(other)
        if isinstance(other, RatPoly):
            return self.den == other.den and self.num == other.num
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def is_integral(self) -> bool:
        return self.den == 1

    def to_poly(self) -> Poly:
        if self.den != 1:
            raise NotDivisible(f"{self} has non-integral coefficients")
        return self.num

    def eval(self, values) -> Fraction:
        return Fraction(self.num.eval(values), self.den)

    def to_str(self, names=None) -> str:
        body = self.num.to_str(names)
        if self.den == 1:
            return body
        if len(self.num.terms) > 1:
            body = f"({body})"
        return f"{body}/{self.den}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatPoly({self.to_str()!r}, nvars={self.nvars})"


@dataclass(frozen=True)
class IntegerPoint:
    """Pairwise distinct nonzero integers a1..am."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v == 0 for v in vals):
            raise PreconditionError(f"point {vals} has a zero coordinate")
        if len(set(vals)) != len(vals):
            raise PreconditionError(f"point {vals} has repeated coordinates")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


# -- functional surface ------------------------------------------------------


def poly_mul(p: Poly, q: Poly) -> Poly:
    if p.nvars != q.nvars:
        raise ArityMismatch(f"arity {p.nvars} vs {q.nvars}")
    return p * q


def poly_exact_div(p: Poly, d: Poly) -> Poly:
    return p.exact_div(d)


def poly_derivative(p: Poly, var_index: int) -> Poly:
    return p.derivative(var_index)


def poly_eval(p: Poly, point) -> int:
    values = point.values if isinstance(point, IntegerPoint) else point
    return p.eval(values)


def product(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly.one(nvars)
    for p in polys:
        out = out * p
    return out


def vandermonde_factor(nvars: int, exponent) -> Poly:
    """``prod_{i<j} (x_i - x_j)^exponent(i, j)``."""
    out = Poly.one(nvars)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            e = exponent(i, j)
            if e:
                out = out * (Poly.var(i, nvars) - Poly.var(j, nvars)) ** e
    return out


# -- parsing -----------------------------------------------------------------


class _Parser:
    """Recursive-descent parser for ``+ - * / ^`` and parentheses.

    Division is only allowed by integer literals; the result is a RatPoly.
    """

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.pos = 0
        self.names = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)

    def error(self, msg):
        raise ValueError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> RatPoly:
        val = self.expr()
        if self.peek():
            self.error("unexpected character")
        return val

    def expr(self) -> RatPoly:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        val = self.term() * sign
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatPoly:
        val = self.power()
        while self.peek() in ("*", "/") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.power()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.num.is_constant() or rhs.is_zero():
                    self.error("division only by nonzero integers")
                val = val / Fraction(rhs.num.constant_value(), rhs.den)
        return val

    def power(self) -> RatPoly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected exponent")
            k = int(self.text[start:self.pos])
            out = RatPoly(Poly.one(self.nvars))
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self) -> RatPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            val = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return val
        if ch == "-":
            self.pos += 1
            return -self.atom()
        start = self.pos
        if ch.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return RatPoly(Poly.const(int(self.text[start:self.pos]), self.nvars))
        if ch.isalpha():
            while self.pos < len(self.text) and self.text[self.pos].isalnum():
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.names:
                self.error(f"unknown variable {name!r}")
            return RatPoly(Poly.var(self.names[name], self.nvars))
        self.error("unexpected character")


def parse_ratpoly(text: str, nvars: int, names: Sequence[str] | None = None) -> RatPoly:
    return _Parser(text, names or default_names(nvars)).parse()


def parse_poly(text: str, nvars: int, names: Sequence[str] | None = None) -> Poly:
    """Parse an integer polynomial; factored input like ``3*(a1-a2)`` is accepted."""
    return parse_ratpoly(text, nvars, names).to_poly()
