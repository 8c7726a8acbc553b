"""Multivariate polynomial GCD over the integers.

Recursive content/primitive-part reduction: strip integer and monomial
content, split off the content with respect to a main variable, and run a
primitive pseudo-remainder sequence on the primitive parts.  The result
carries the integer gcd of the contents and has a positive leading
coefficient.
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import ArityMismatch, NotDivisible
from .poly import Poly, default_names


def _monomial(exps, nvars) -> Poly:
    return Poly._raw({tuple(exps): 1}, nvars)


def _shift(p: Poly, var: int, k: int) -> Poly:
    """Multiply by ``x_var^k``."""
    if not k:
        return p
    return Poly._raw(
        {m[:var] + (m[var] + k,) + m[var + 1:]: c for m, c in p.terms.items()}, p.nvars
    )


def _lead_in(p: Poly, var: int):
    d = p.degree(var)
    lead = {m[:var] + (0,) + m[var + 1:]: c for m, c in p.terms.items() if m[var] == d}
    return d, Poly._raw(lead, p.nvars)


def _pseudo_rem(a: Poly, b: Poly, var: int) -> Poly:
    db, lb = _lead_in(b, var)
    while a.terms:
        da, la = _lead_in(a, var)
        if da < db:
            break
        a = a * lb - _shift(b * la, var, da - db)
    return a


def content_in(p: Poly, var: int) -> Poly:
    """GCD of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    coeffs = sorted(p.coefficients_in(var).values(), key=len)
    g = Poly.zero(p.nvars)
    for c in coeffs:
        g = _gcd2(g, c)
        if g == 1:
            break
    return g


def _gcd2(a: Poly, b: Poly) -> Poly:
    if not a.terms:
        return b.normalized() if b.terms else b
    if not b.terms:
        return a.normalized()
    n = a.nvars
    c = math.gcd(a.content(), b.content())
    mono = tuple(min(x, y) for x, y in zip(a.min_exponents(), b.min_exponents()))
    scale = Poly._raw({mono: c}, n)
    a = a.exact_div(_monomial(a.min_exponents(), n)).primitive()
    b = b.exact_div(_monomial(b.min_exponents(), n)).primitive()
    if a.is_constant() or b.is_constant():
        return scale
    if a == b:
        return scale * a
    va, vb = a.variables(), b.variables()
    only_a = va - vb
    if only_a:
        return scale * _gcd2(content_in(a, min(only_a)), b).primitive()
    only_b = vb - va
    if only_b:
        return scale * _gcd2(a, content_in(b, min(only_b))).primitive()
    var = min(va, key=lambda v: (min(a.degree(v), b.degree(v)), v))
    ca, cb = content_in(a, var), content_in(b, var)
    g_cont = _gcd2(ca, cb).primitive()
    a = a.exact_div(ca)
    b = b.exact_div(cb)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, var)
        if not r.terms:
            break
        if r.degree(var) == 0:
            b = Poly.one(n)
            break
        r = r.exact_div(content_in(r, var))
        a, b = b, r
    g = (b.exact_div(content_in(b, var)) if b.degree(var) > 0 else Poly.one(n)).primitive()
    return scale * g_cont * g


def poly_gcd(ps: Iterable[Poly]) -> Poly:
    """GCD of a nonempty sequence, integer content included, positive leading coefficient."""
    ps = list(ps)
    if not ps:
        raise ValueError("gcd of an empty sequence")
    nvars = ps[0].nvars
    if any(p.nvars != nvars for p in ps):
        raise ArityMismatch("all inputs must share one arity")
    if all(not p.terms for p in ps):
        raise ValueError("gcd of all-zero input is undefined")
    # fold small inputs first: the running gcd shrinks fastest that way
    g = Poly.zero(nvars)
    for p in sorted(ps, key=lambda q: (q.total_degree(), len(q))):
        g = _gcd2(g, p)
        if g.is_constant() and g.constant_value() == 1:
            break
    return g.normalized()


def normalize_ray(vec) -> tuple:
    """Canonical representative of a homogeneous coefficient vector.

    Divides by the full gcd (integer content included) and fixes the sign so
    that the first nonzero coefficient has a positive leading coefficient.
    Returns ``(normalized, divisor)`` with ``vec[i] == divisor * normalized[i]``.
    """
    vec = list(vec)
    nonzero = [p for p in vec if p.terms]
    if not nonzero:
        raise ValueError("the zero vector has no canonical ray")
    g = poly_gcd(nonzero)
    if nonzero[0].exact_div(g).leading_coefficient() < 0:
        g = -g
    return [p.exact_div(g) for p in vec], g


def split_known_factors(p: Poly) -> tuple:
    """Pull out integer content, a monomial and powers of ``(x_i - x_j)``.

    Returns ``(content, exponents, {(i, j): e}, cofactor)`` with
    ``p == content * x^exponents * prod (x_i - x_j)^e * cofactor``.  Only
    these known factors are split off; the cofactor is not factorized.
    """
    if not p.terms:
        raise ValueError("zero polynomial")
    n = p.nvars
    c = p.content() if p.leading_coefficient() > 0 else -p.content()
    rest = p.exact_div(c)
    mono = rest.min_exponents()
    rest = rest.exact_div(Poly._raw({mono: 1}, n))
    diffs = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = Poly.var(i, n) - Poly.var(j, n)
            e = 0
            while rest.degree(i) > 0 and rest.degree(j) > 0:
                try:
                    rest = rest.exact_div(d)
                except NotDivisible:
                    break
                e += 1
            if e:
                diffs[(i, j)] = e
    return c, mono, diffs, rest


def format_factored(p: Poly, names=None) -> str:
    """Human-readable product form, e.g. ``3*a2^6*(a1 - a2)``."""
    if not p.terms:
        return "0"
    names = names or default_names(p.nvars)
    c, mono, diffs, rest = split_known_factors(p)
    parts = []
    for name, e in zip(names, mono):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    for (i, j), e in diffs.items():
        base = f"({names[i]} - {names[j]})"
        parts.append(base if e == 1 else f"{base}^{e}")
    if rest != 1:
        parts.append(rest.to_str(names) if len(rest) == 1 else f"({rest.to_str(names)})")
    if not parts:
        return str(c)
    if c == 1:
        return "*".join(parts)
    if c == -1:
        return "-" + "*".join(parts)
    return "*".join([str(c)] + parts)
