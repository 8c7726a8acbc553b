"""The classical Hermite-Pade system for ``1, exp(a_1 t), ..., exp(a_m t)``.

For ``l_0 >= 0`` and ``l_1, ..., l_m >= 1`` put ``L = sum l_j`` and
``L0 = l_0 + L``.  The denominator ``A_0(t) = sum_h b_h t^h`` of degree ``L``
must make every ``A_0(t) exp(a_j t)`` agree with a polynomial of degree
``L0 - l_j`` up to order ``L0 + 1``.  Writing ``sigma_i`` for the
coefficients of ``w^{l_0} prod_j (a_j - w)^{l_j}``, an explicit solution is
``b_h = (L0 - h)! sigma_{L0-h}``.

The defining linear system has one row per pair ``(j, k)``, ``0 <= k < l_j``,
the coefficient of ``t^{L0-k}`` in ``A_0 exp(a_j t)``:

    U[(j, k), h] = a_j^(L0-k-h) / (L0-k-h)!     (0 when L0-k-h < 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import IdentityFalsified, PreconditionError
from .gcd import normalize_ray
from .linalg import Matrix, all_maximal_minors, clear_denominators
from .poly import IntegerPoint, Poly, RatPoly, vandermonde_factor
from .series import OrderCertificate, certify_remainder


@dataclass(frozen=True)
class TameProblem:
    l0: int
    l: tuple

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if not self.l:
            raise PreconditionError("at least one exponential is required (m >= 1)")
        if self.l0 < 0 or any(x < 1 for x in self.l):
            raise PreconditionError(f"need l0 >= 0 and l_j >= 1, got l0={self.l0}, l={self.l}")

    @property
    def m(self) -> int:
        return len(self.l)

    @property
    def L(self) -> int:
        return sum(self.l)

    @property
    def L0(self) -> int:
        return self.l0 + self.L


def sigma_coefficients(p: TameProblem) -> dict:
    """``{i: sigma_i}`` for ``i = l0..L0`` from ``w^l0 prod (a_j - w)^l_j``.

    The product is expanded as a polynomial in ``w`` whose coefficients live
    in ``Z[a_1..a_m]``; coefficients outside ``[l0, L0]`` are zero.
    """
    m = p.m
    coeffs = {0: Poly.one(m)}  # power of w -> coefficient
    for j, lj in enumerate(p.l):
        a = Poly.var(j, m)
        for _ in range(lj):
            nxt: dict = {}
            for k, c in coeffs.items():
                nxt[k] = nxt.get(k, Poly.zero(m)) + c * a
                nxt[k + 1] = nxt.get(k + 1, Poly.zero(m)) - c
            coeffs = nxt
    return {i + p.l0: coeffs.get(i, Poly.zero(m)) for i in range(p.L + 1)}


def denominator_coefficients(p: TameProblem) -> list:
    """``b_h = (L0 - h)! sigma_{L0-h}`` for ``h = 0..L``."""
    sigma = sigma_coefficients(p)
    return [sigma[p.L0 - h].scale(math.factorial(p.L0 - h)) for h in range(p.L + 1)]


def build_U(p: TameProblem) -> Matrix:
    m = p.m
    rows = []
    for j, lj in enumerate(p.l):
        a = Poly.var(j, m)
        for k in range(lj):
            row = []
            for h in range(p.L + 1):
                e = p.L0 - k - h
                row.append(RatPoly(a ** e, math.factorial(e)) if e >= 0 else RatPoly(Poly.zero(m)))
            rows.append(row)
    return Matrix(rows, m)


def tame_minors(p: TameProblem) -> list:
    """``U[h]``: the minor of ``U`` with column ``h`` removed, ``h = 0..L``."""
    poly_m, mults = clear_denominators(build_U(p))
    scale = math.prod(mults)
    minors = [v for _, v in all_maximal_minors(poly_m)]
    # all_maximal_minors lists selections lexicographically, so the one
    # omitting column h comes at position L - h
    return [RatPoly(minors[p.L - h], scale) for h in range(p.L + 1)]


def F_m_product(p: TameProblem) -> Fraction:
    """``prod_j [prod_k 1/(L0 - c_jk)!] prod_{1<=h<k<=l_j} (h - k)``, ``c_jk = l_1+..+l_{j-1}+k``."""
    if p.l0 < 1:
        raise PreconditionError("F_m needs l0 >= 1")
    out = Fraction(1)
    offset = 0
    for lj in p.l:
        for k in range(1, lj + 1):
            out /= math.factorial(p.L0 - offset - k)
        for k in range(1, lj + 1):
            for h in range(1, k):
                out *= h - k
        offset += lj
    return out


def minor_factor(p: TameProblem) -> Poly:
    """``prod a_i^(l0 l_i) prod_{i<j} (a_i - a_j)^(l_i l_j)``."""
    m = p.m
    out = vandermonde_factor(m, lambda i, j: p.l[i] * p.l[j])
    mono = [p.l0 * li for li in p.l]
    return out * Poly.monomial(mono)


def minor_closed_form(p: TameProblem) -> list:
    """Closed form of every ``U[h]``.

    ``U[h] = (-1)^h (L0-h)! sigma_{L0-h} (-1)^L F_{m+1} prod a_i^(l0 l_i) prod (a_i - a_j)^(l_i l_j)``
    where ``F_{m+1}`` is ``F_m`` of the problem extended by ``l_{m+1} = 1``.
    """
    f_ext = F_m_product(TameProblem(p.l0, p.l + (1,)))
    factor = minor_factor(p)
    b = denominator_coefficients(p)
    scalar = f_ext * (-1) ** p.L
    return [RatPoly(b[h] * factor, 1) * (scalar * (-1) ** h) for h in range(p.L + 1)]


def certify_minor_closed_form(p: TameProblem) -> bool:
    """Check the closed form of every minor against the determinants."""
    if p.l0 < 1:
        raise PreconditionError("the closed form of the minors needs l0 >= 1")
    lhs = tame_minors(p)
    rhs = minor_closed_form(p)
    for h, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            raise IdentityFalsified(f"U[{h}] = {a} but the closed form gives {b}")
    return True


hminorexp_rhs = minor_closed_form
certify_hminorexp = certify_minor_closed_form


@dataclass
class TameSolution:
    problem: TameProblem
    sigma: dict
    denominator: list  # b_h, ascending powers of t
    numerators: list  # per j, ascending coefficients
    orders: list  # OrderCertificate per j
    minors: list = field(default_factory=list)
    F_m: Fraction | None = None
    cramer_ratio: RatPoly | None = None
    point: IntegerPoint | None = None

    def normalized_denominator(self) -> list:
        if self.point is not None:
            g = math.gcd(*self.denominator)
            first = next(c for c in self.denominator if c)
            g = g if first > 0 else -g
            return [c // g for c in self.denominator]
        return normalize_ray(self.denominator)[0]


def cramer_vector(minors: Sequence[RatPoly]) -> list:
    """``[U[0], -U[1], U[2], ...]``, a kernel vector of ``U``."""
    return [u if h % 2 == 0 else -u for h, u in enumerate(minors)]


def _ratio(vec: Sequence[RatPoly], ref: Sequence[Poly]) -> RatPoly:
    """Scalar ``c`` with ``vec == c * ref`` or ``None`` if the vectors are not proportional."""
    pivot = next(i for i, r in enumerate(ref) if r.terms)
    if not vec[pivot]:
        return None
    r = ref[pivot]
    content = r.content() if r.leading_coefficient() > 0 else -r.content()
    try:
        num = vec[pivot].num.exact_div(r.exact_div(content))
    except ArithmeticError:
        return None
    c = RatPoly(num, vec[pivot].den * content)
    if all(v == c * RatPoly(r) for v, r in zip(vec, ref)):
        return c
    return None


def tame_solve(p: TameProblem, point: IntegerPoint | None = None, with_minors: bool = True) -> TameSolution:
    """Explicit denominator, numerators by truncation, certified remainder orders."""
    m = p.m
    sigma = sigma_coefficients(p)
    b = denominator_coefficients(p)
    minors, ratio, f_m = [], None, None
    if with_minors:
        minors = tame_minors(p)
        ratio = _ratio(cramer_vector(minors), b)
        if ratio is None:
            raise IdentityFalsified("Cramer vector is not proportional to the explicit denominator")
        if p.l0 >= 1:
            f_m = F_m_product(p)
    if point is not None:
        if len(point) != m:
            raise PreconditionError(f"point of length {len(point)} for m = {m}")
        vals = list(point.values)
        coeffs = [c.eval(vals) for c in b]
        alphas = vals
    else:
        coeffs = b
        alphas = [Poly.var(j, m) for j in range(m)]
    numerators, orders = [], []
    for j, lj in enumerate(p.l):
        num, cert = certify_remainder(coeffs, alphas[j], p.L0 - lj, p.L0 + 1, p.L)
        numerators.append(list(num))
        orders.append(cert)
    return TameSolution(p, sigma, list(coeffs), numerators, orders, minors, f_m, ratio, point)
