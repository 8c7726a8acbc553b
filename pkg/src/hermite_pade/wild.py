"""The twin (wild) Hermite-Pade system.

All polynomials have degree ``L = l_1 + ... + l_m`` and the remainders
``B_0(t) exp(a_j t) - B_j(t)`` must vanish to order ``L + nu_j + 1``.  With
``B_0 = sum_h c_h (L!/h!) t^h`` the conditions become ``V c = 0`` for the
``M x (L+1)`` matrix (``M = nu_1 + ... + nu_m``)

    V[(j, i), h] = C(L + i, h) a_j^(L - h),     1 <= i <= nu_j.

The falling-factorial variant multiplies column ``h`` by ``h!``.  Every
maximal minor of ``V`` is divisible by

    prod_j a_j^C(nu_j, 2) * prod_{i<j} (a_i - a_j)^min(nu_i^2, nu_j^2),

which for ``nu = l`` is the common factor ``T``.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DivisibilityFalsified, NotDivisible, PreconditionError
from .gcd import format_factored, normalize_ray, poly_gcd
from .linalg import (
    ColumnSelection,
    Matrix,
    all_maximal_minors,
    maximal_minor,
    rank_integer,
    rank_over_fractions,
)
from .poly import IntegerPoint, Poly, vandermonde_factor
from .series import certify_remainder

CONVENTIONS = ("binomial", "falling_factorial")
_ALIASES = {"binomial": "binomial", "falling_factorial": "falling_factorial", "falling": "falling_factorial"}


def canonical_convention(name: str) -> str:
    try:
        return _ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown convention {name!r}; use binomial or falling_factorial") from None


def falling_factorial(x: int, k: int) -> int:
    """``(x]_k = x (x-1) ... (x-k+1)``."""
    out = 1
    for i in range(k):
        out *= x - i
    return out


@dataclass(frozen=True)
class WildProblem:
    l: tuple
    nu: tuple = None
    point: IntegerPoint | None = None
    convention: str = "binomial"

    def __post_init__(self):
        l = tuple(int(x) for x in self.l)
        nu = l if self.nu is None else tuple(int(x) for x in self.nu)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "convention", canonical_convention(self.convention))
        if not l:
            raise PreconditionError("need m >= 1")
        if len(nu) != len(l):
            raise PreconditionError(f"nu {nu} and l {l} differ in length")
        if any(x < 1 for x in l) or any(not 1 <= v <= x for v, x in zip(nu, l)):
            raise PreconditionError(f"need 1 <= nu_j <= l_j, got nu={nu}, l={l}")
        if self.point is not None:
            pt = self.point if isinstance(self.point, IntegerPoint) else IntegerPoint(tuple(self.point))
            object.__setattr__(self, "point", pt)
            if len(pt) != len(l):
                raise PreconditionError(f"point {pt.values} has the wrong length for m = {len(l)}")

    @property
    def m(self) -> int:
        return len(self.l)

    @property
    def L(self) -> int:
        return sum(self.l)

    @property
    def M(self) -> int:
        return sum(self.nu)

    @property
    def symbolic(self) -> bool:
        return self.point is None

    def with_(self, **changes) -> "WildProblem":
        data = dict(l=self.l, nu=self.nu, point=self.point, convention=self.convention)
        data.update(changes)
        return WildProblem(**data)


def column_scale(convention: str, h: int) -> int:
    return math.factorial(h) if convention == "falling_factorial" else 1


def build_V(p: WildProblem) -> Matrix:
    """``M x (L+1)`` coefficient matrix; integer when ``p.point`` is set."""
    m, L = p.m, p.L
    rows = []
    for j, nuj in enumerate(p.nu):
        for i in range(1, nuj + 1):
            row = []
            for h in range(L + 1):
                c = math.comb(L + i, h) * column_scale(p.convention, h)
                if p.symbolic:
                    exps = [0] * m
                    exps[j] = L - h
                    row.append(Poly({tuple(exps): c}, m))
                else:
                    row.append(c * p.point.values[j] ** (L - h))
            rows.append(row)
    return Matrix(rows, m if p.symbolic else None)


def claimed_factor(nu: Sequence[int]) -> Poly:
    """``prod a_j^C(nu_j,2) prod_{i<j} (a_i - a_j)^min(nu_i^2, nu_j^2)``."""
    m = len(nu)
    vf = vandermonde_factor(m, lambda i, j: min(nu[i] ** 2, nu[j] ** 2))
    return vf * Poly.monomial([math.comb(v, 2) for v in nu])


def common_factor_T(p: WildProblem) -> Poly:
    """The common factor of the minors when ``nu = l``."""
    if p.nu != p.l:
        raise PreconditionError("T is defined for nu = l")
    return claimed_factor(p.l)


def claimed_factor_value(nu: Sequence[int], point: IntegerPoint) -> int:
    return claimed_factor(nu).eval(point.values)


# -- gcd of minors -------------------------------------------------------------


@dataclass
class GcdReport:
    gcd: object  # Poly (symbolic) or int (specialized)
    quotients: list
    claimed_factor: object
    convention: str
    divisibility_ok: bool
    minors: list = field(default_factory=list, repr=False)
    selections: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        def s(x):
            return str(x)
        out = {
            "schema": 1,
            "gcd": s(self.gcd),
            "gcd_factored": format_factored(self.gcd) if isinstance(self.gcd, Poly) else s(self.gcd),
            "quotients": [s(q) for q in self.quotients],
            "claimed_factor": s(self.claimed_factor),
            "convention": self.convention,
            "divisibility_ok": self.divisibility_ok,
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def minor_gcd_report(p: WildProblem) -> GcdReport:
    """All maximal minors, their gcd (content included) and the quotients.

    When ``M = L`` the minors are reported in the order ``V[0], V[1], ...``
    (``V[i]`` omits column ``i``); otherwise in lexicographic selection order.
    Symbolic minors are first divided by the claimed factor, which both
    certifies the divisibility and shrinks the gcd computation.
    """
    V = build_V(p)
    pairs = all_maximal_minors(V)
    if p.M == p.L:
        pairs = pairs[::-1]
    selections = [s for s, _ in pairs]
    minors = [v for _, v in pairs]
    if p.symbolic:
        cf = claimed_factor(p.nu)
        try:
            reduced = [v.exact_div(cf) for v in minors]
        except NotDivisible as exc:
            raise DivisibilityFalsified(f"claimed factor {cf} does not divide a minor") from exc
        if all(not r.terms for r in reduced):
            raise PreconditionError("all maximal minors vanish")
        g = cf * poly_gcd([r for r in reduced if r.terms])
        quotients = [v.exact_div(g) for v in minors]
        ok = True
    else:
        cf = claimed_factor_value(p.nu, p.point)
        g = math.gcd(*minors)
        if g == 0:
            raise PreconditionError("all maximal minors vanish at this point")
        quotients = [v // g for v in minors]
        ok = g % cf == 0
        if not ok:
            raise DivisibilityFalsified(f"claimed factor value {cf} does not divide D = {g}")
    return GcdReport(g, quotients, cf, p.convention, ok, minors, selections)


def integer_minor_gcd(V: Matrix) -> int:
    """``D``: the gcd of all maximal minors of an integer matrix."""
    return math.gcd(*(v for _, v in all_maximal_minors(V)))


# -- twin solution -----------------------------------------------------------------


@dataclass
class WildSolution:
    problem: WildProblem
    minors: list  # V[0..L]
    T: Poly
    tau: list
    denominator: list  # B_0 coefficients in ascending powers of t
    normalized: list  # canonical ray of the denominator
    numerators: list
    orders: list


def twin_solve(p: WildProblem) -> WildSolution:
    """Cramer solution of the twin system with ``nu = l``.

    ``tau_i = (-1)^i V[i] / T``; the denominator has coefficients
    ``(L!/i!) tau_i`` in the binomial convention and ``L! tau_i`` in the
    falling-factorial one (the column scaling by ``i!`` moves into ``tau``),
    so both conventions produce the same polynomial ray.
    """
    if p.nu != p.l:
        raise PreconditionError("twin_solve requires nu = l")
    if not p.symbolic:
        raise PreconditionError("twin_solve works over the symbolic variables")
    L, m = p.L, p.m
    V = build_V(p)
    minors = [v for _, v in all_maximal_minors(V)][::-1]
    T = common_factor_T(p)
    tau = []
    for i, v in enumerate(minors):
        q = v.exact_div(T)  # NotDivisible here would falsify the common factor
        tau.append(q if i % 2 == 0 else -q)
    if p.convention == "binomial":
        denom = [t.scale(math.factorial(L) // math.factorial(i)) for i, t in enumerate(tau)]
    else:
        denom = [t.scale(math.factorial(L)) for t in tau]
    normalized, _ = normalize_ray(denom)
    numerators, orders = [], []
    for j, lj in enumerate(p.l):
        num, cert = certify_remainder(normalized, Poly.var(j, m), L, L + lj + 1, L)
        numerators.append(list(num))
        orders.append(cert)
    return WildSolution(p, minors, T, tau, denom, normalized, numerators, orders)


# -- certificates -----------------------------------------------------------------


@dataclass(frozen=True)
class DivisibilityCertificate:
    problem: WildProblem
    factor: Poly
    checked: int
    exhaustive: bool


def certify_claimed_factor(p: WildProblem, trials: int = 20, seed: int = 0) -> DivisibilityCertificate:
    """Exact division of maximal minors by the claimed factor.

    All minors are checked when there are at most 64 of them; otherwise
    ``trials`` seeded random column selections.
    """
    if not p.symbolic:
        raise PreconditionError("certify_claimed_factor works over the symbolic variables")
    V = build_V(p)
    cf = claimed_factor(p.nu)
    n_sel = math.comb(p.L + 1, p.M)
    if n_sel <= 64:
        items = [(s.indices, v) for s, v in all_maximal_minors(V)]
        exhaustive = True
    else:
        rng = random.Random(seed)
        chosen = set()
        while len(chosen) < min(trials, n_sel):
            chosen.add(tuple(sorted(rng.sample(range(p.L + 1), p.M))))
        items = [(sel, maximal_minor(V, ColumnSelection(sel))) for sel in sorted(chosen)]
        exhaustive = False
    for sel, v in items:
        try:
            v.exact_div(cf)
        except NotDivisible as exc:
            raise DivisibilityFalsified(f"{cf} does not divide the minor on columns {sel}") from exc
    return DivisibilityCertificate(p, cf, len(items), exhaustive)


certify_theorem4 = certify_claimed_factor


def rightmost_witness(p: WildProblem) -> tuple:
    """Monomial and predicted coefficient certifying the rightmost minor is nonzero.

    In the binomial convention the minor on the last ``M`` columns contains
    ``prod a_j^(C(nu_j,2) + nu_j (nu_{j+1} + ... + nu_m))`` with coefficient
    ``prod_j g_j``,

        g_j = prod_{k=s+1}^{s+nu_j} 1/(L-M+k)!
              * prod_{i=1}^{nu_j} (L+i]_{L-M+s+1}
              * prod_{k=1}^{nu_j-1} k!,        s = nu_1 + ... + nu_{j-1}.

    The falling-factorial convention multiplies it by the column scalings.
    """
    from fractions import Fraction

    L, M, nu = p.L, p.M, p.nu
    exps, coeff, s = [], Fraction(1), 0
    for j, v in enumerate(nu):
        exps.append(math.comb(v, 2) + v * sum(nu[j + 1:]))
        for k in range(s + 1, s + v + 1):
            coeff /= math.factorial(L - M + k)
        for i in range(1, v + 1):
            coeff *= falling_factorial(L + i, L - M + s + 1)
        for k in range(1, v):
            coeff *= math.factorial(k)
        s += v
    if p.convention == "falling_factorial":
        for h in range(L + 1 - M, L + 1):
            coeff *= math.factorial(h)
    if coeff.denominator != 1:
        raise ArithmeticError(f"witness coefficient {coeff} is not an integer")
    return tuple(exps), int(coeff)


@dataclass(frozen=True)
class RankReport:
    rank: int
    rightmost_minor_nonzero: bool
    witness_monomial: tuple | None = None
    witness_coefficient: int | None = None
    predicted_coefficient: int | None = None


def rank_check(p: WildProblem) -> RankReport:
    """Rank of ``V`` over the fraction field (symbolic) or over Q (specialized).

    Symbolically the minor on the last ``M`` columns is computed and its
    coefficient at the witness monomial compared with the closed form; a
    nonzero rightmost minor gives rank ``M``.
    """
    V = build_V(p)
    cols = range(p.L + 1 - p.M, p.L + 1)
    if not p.symbolic:
        right = maximal_minor(V, ColumnSelection(tuple(cols)))
        return RankReport(rank_integer(V), right != 0)
    right = maximal_minor(V, ColumnSelection(tuple(cols)))
    mono, predicted = rightmost_witness(p)
    got = right.terms.get(mono, 0)
    rank = p.M if right.terms else rank_over_fractions(V)
    return RankReport(rank, bool(right.terms), mono, got, predicted)


def instances(max_m: int = 3, max_l: int = 3, max_L: int | None = None):
    """All ``l`` with ``m <= max_m`` and ``l_j <= max_l`` (and ``L <= max_L``)."""
    for m in range(1, max_m + 1):
        for l in itertools.product(range(1, max_l + 1), repeat=m):
            if max_L is None or sum(l) <= max_L:
                yield l


def random_instances(rng: random.Random, count: int, max_m: int = 3, max_l: int = 3,
                     strict: bool = True, max_L: int | None = None) -> list:
    """Seeded ``(l, nu)`` pairs with ``1 <= nu_j <= l_j <= max_l``; ``strict`` asks for ``M < L``."""
    out = []
    while len(out) < count:
        m = rng.randint(1, max_m)
        l = tuple(rng.randint(1, max_l) for _ in range(m))
        if max_L is not None and sum(l) > max_L:
            continue
        nu = tuple(rng.randint(1, x) for x in l)
        if strict and sum(nu) >= sum(l):
            continue
        out.append((l, nu))
    return out


def random_point(rng: random.Random, m: int, bound: int = 4) -> IntegerPoint:
    """Distinct nonzero integers in ``[-bound, bound]``."""
    pool = [x for x in range(-bound, bound + 1) if x]
    return IntegerPoint(tuple(rng.sample(pool, m)))
