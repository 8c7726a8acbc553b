"""Small integer kernel vectors and the bounds that guarantee them.

* ``mahler_bound``: a nonzero integer solution of ``V x = 0`` (``M`` rows,
  ``N`` unknowns, ``M < N``) exists with ``|x|_inf <= floor((prod_i |v_i|_1)^(1/(N-M)))``.
* ``fg_bound``: for the twin system at an integer point the coefficients
  obey ``|c_h| <= (f^(ML) g^(M^2/2))^(1/(L+1-M))`` with
  ``f = max(|a_j| + 1)`` and ``g = max(1 + 1/|a_j|)``.
* ``bombieri_vaaler_bound``: ``sqrt(det(V V^T)) / D`` with ``D`` the gcd of
  the maximal minors.

Irrational bounds are kept as an exact radicand and root index and rendered
as decimal strings rounded up at 12 significant digits.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, PreconditionError, RankDeficient
from .linalg import Matrix, all_maximal_minors, gram_det, integer_kernel_basis, rank_integer
from .series import certify_remainder
from .wild import WildProblem, build_V, claimed_factor_value

SIG_DIGITS = 12
MAX_CANDIDATES = 10**7


def integer_root(n: int, k: int) -> int:
    """``floor(n^(1/k))`` for ``n >= 0`` by Newton iteration on integers."""
    if n < 0 or k < 1:
        raise ValueError("integer_root needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # 2^ceil(bits/k) >= n^(1/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _ceil_root(n: int, k: int) -> int:
    r = integer_root(n, k)
    return r if r ** k == n else r + 1


@dataclass(frozen=True)
class RealBound:
    """``radicand^(1/root)`` kept exactly, with an outward-rounded decimal."""

    radicand: Fraction
    root: int

    @property
    def exact(self) -> bool:
        num, den = self.radicand.numerator, self.radicand.denominator
        return integer_root(num, self.root) ** self.root == num and integer_root(den, self.root) ** self.root == den

    def _scaled_upper(self) -> tuple:
        """``(y, s)`` with ``y / 10^s`` the rounded-up value, ``y`` of 12 digits."""
        x = self.radicand
        k = self.root
        est = (math.log10(x.numerator) - math.log10(x.denominator)) / k
        s = SIG_DIGITS - 1 - math.floor(est)
        for _ in range(4):
            scaled = x * Fraction(10) ** (s * k)
            y = _ceil_root(math.ceil(scaled), k)
            if y >= 10 ** SIG_DIGITS:
                s -= 1
            elif y < 10 ** (SIG_DIGITS - 1):
                s += 1
            else:
                break
        return y, s

    def upper(self) -> Fraction:
        """Smallest 12-significant-digit decimal that is >= the true value."""
        if self.radicand == 0:
            return Fraction(0)
        y, s = self._scaled_upper()
        return Fraction(y) / Fraction(10) ** s

    def __str__(self):
        if self.radicand == 0:
            return "0"
        y, s = self._scaled_upper()
        if s <= 0:
            return str(y * 10 ** -s)
        whole, frac = divmod(y, 10 ** s)
        frac = str(frac).rjust(s, "0").rstrip("0")
        return f"{whole}.{frac}" if frac else str(whole)

    def bounds(self, n: int) -> bool:
        """Exact test ``|n| <= radicand^(1/root)``."""
        return Fraction(abs(n)) ** self.root <= self.radicand

    def exact_form(self) -> str:
        return f"({self.radicand})^(1/{self.root})"


def mahler_bound(V: Matrix) -> int:
    if V.kind != "int":
        raise TypeError("mahler_bound expects an integer matrix")
    M, N = V.rows, V.cols
    if M >= N:
        raise PreconditionError(f"need fewer rows than columns, got {M}x{N}")
    prod = 1
    for i, row in enumerate(V.entries):
        norm = sum(abs(x) for x in row)
        if norm == 0:
            raise PreconditionError(f"row {i} is zero")
        prod *= norm
    return integer_root(prod, N - M)


def f_and_g(point: Sequence[int]) -> tuple:
    f = max(abs(a) + 1 for a in point)
    g = max(1 + Fraction(1, abs(a)) for a in point)
    return Fraction(f), g


def fg_bound(p: WildProblem) -> RealBound:
    """``(f^(2ML) g^(M^2))^(1/(2(L+1-M)))`` at the problem's integer point."""
    if p.symbolic:
        raise PreconditionError("fg_bound needs an integer point")
    if p.M >= p.L:
        raise PreconditionError(f"need M < L, got M = {p.M}, L = {p.L}")
    f, g = f_and_g(p.point.values)
    M, L = p.M, p.L
    return RealBound(f ** (2 * M * L) * g ** (M * M), 2 * (L + 1 - M))


def bombieri_vaaler_bound(V: Matrix) -> RealBound:
    if rank_integer(V) != V.rows:
        raise RankDeficient(f"rank of the {V.rows}x{V.cols} matrix is below {V.rows}")
    G = gram_det(V)
    D = math.gcd(*(v for _, v in all_maximal_minors(V)))
    return RealBound(Fraction(G, D * D), 2)


# -- kernel search -----------------------------------------------------------------


def _rref(V: Matrix) -> tuple:
    """Reduced row echelon form over Q: ``(rows, pivot_columns)``."""
    rows = [[Fraction(x) for x in r] for r in V.entries]
    pivots, r = [], 0
    for c in range(V.cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _progression(coeffs: Sequence[int], offsets: Sequence[int], modulus: int):
    """Solutions ``y`` of ``coeffs[i] * y + offsets[i] = 0 (mod modulus)`` for all ``i``.

    Returns ``(residue, step)`` describing ``y = residue (mod step)`` or
    ``None`` when there is no solution.
    """
    res, step = 0, 1
    for a, b in zip(coeffs, offsets):
        a %= modulus
        b %= modulus
        g = math.gcd(a, modulus)
        if b % g:
            return None
        mod_i = modulus // g
        if mod_i == 1:
            continue
        r_i = (-b // g) * pow(a // g, -1, mod_i) % mod_i
        # merge y = res (mod step) with y = r_i (mod mod_i)
        g2 = math.gcd(step, mod_i)
        if (r_i - res) % g2:
            return None
        lcm = step // g2 * mod_i
        k = ((r_i - res) // g2) * pow(step // g2, -1, mod_i // g2) % (mod_i // g2)
        res = (res + step * k) % lcm
        step = lcm
    return res, step


def _canonical(x: tuple) -> tuple:
    first = next(v for v in x if v)
    return x if first > 0 else tuple(-v for v in x)


def shell_search_kernel(V: Matrix, norm_budget: int | None = None,
                        max_candidates: int = MAX_CANDIDATES) -> tuple:
    """Minimal sup-norm nonzero integer vector of ``ker V`` by shell enumeration.

    The kernel is parametrized by the non-pivot ("free") coordinates of the
    reduced echelon form; the pivot coordinates are ``-(W x_free) / delta``
    with integral ``W``.  Free vectors are enumerated in sup-norm shells
    ``s = 1, 2, ...``; for the last free coordinate the integrality
    condition is solved as a congruence instead of enumerated.  Any kernel
    vector has norm at least the sup-norm of its free part, so the search is
    complete once ``s`` exceeds the best norm found.  Among the minimal
    vectors the lexicographically least one with positive first nonzero
    entry is returned.
    """
    if V.kind != "int":
        raise TypeError("find_small_kernel expects an integer matrix")
    N = V.cols
    if V.rows >= N:
        raise PreconditionError(f"need fewer rows than columns, got {V.rows}x{N}")
    limit = mahler_bound(V) if all(any(r) for r in V.entries) else None
    if norm_budget is not None:
        limit = norm_budget if limit is None else min(limit, norm_budget)
    rows, pivots = _rref(V)
    free = [c for c in range(N) if c not in pivots]
    d = len(free)
    delta = math.lcm(*(x.denominator for r in rows for x in r)) if rows else 1
    W = [[int(r[c] * delta) for c in free] for r in rows]  # x_piv = -(W x_free) / delta

    best_norm, best = None, None
    candidates = 0
    s = 0
    while True:
        s += 1
        if best_norm is not None and s > best_norm:
            break
        if limit is not None and s > limit:
            raise BudgetExceeded(f"no kernel vector with sup-norm <= {limit}")
        for outer in itertools.product(range(-s, s + 1), repeat=d - 1):
            candidates += 1
            if candidates > max_candidates:
                raise BudgetExceeded(f"candidate budget of {max_candidates} exhausted at shell {s}")
            on_shell = any(abs(v) == s for v in outer)
            partial = [sum(w * v for w, v in zip(wr[:-1], outer)) for wr in W]
            prog = _progression([wr[-1] for wr in W], partial, delta)
            if prog is None:
                continue
            res, step = prog
            if on_shell:
                start = -s + (res - (-s)) % step
                lasts = range(start, s + 1, step)
            else:
                lasts = [y for y in (-s, s) if (y - res) % step == 0]
            for y in lasts:
                xf = outer + (y,)
                xp = [-(sum(w * v for w, v in zip(wr, xf))) // delta for wr in W]
                norm = max(s, max((abs(v) for v in xp), default=0))
                if best_norm is not None and norm > best_norm:
                    continue
                x = [0] * N
                for c, v in zip(free, xf):
                    x[c] = v
                for c, v in zip(pivots, xp):
                    x[c] = v
                x = _canonical(tuple(x))
                if best_norm is None or norm < best_norm or x < best:
                    best_norm, best = norm, x
    if any(sum(a * b for a, b in zip(r, best)) for r in V.entries):
        raise ArithmeticError("kernel search produced a non-solution")
    return best


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list:
    """LLL-reduced basis of the lattice spanned by linearly independent integer vectors."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b
    bstar, mu, B = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu, B = _gram_schmidt(b)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu, B = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def _gram_schmidt(b):
    n = len(b)
    bstar, B = [], []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])) / B[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        B.append(sum(x * x for x in v))
    return bstar, mu, B


def find_small_kernel(V: Matrix, norm_budget: int | None = None,
                      max_candidates: int = MAX_CANDIDATES) -> tuple:
    """Minimal sup-norm nonzero integer vector of ``ker V``.

    An integer basis of the kernel lattice is LLL-reduced and all lattice
    vectors of Euclidean length at most ``sqrt(N) * best`` are enumerated
    (Fincke-Pohst), where ``best`` is the smallest sup-norm seen so far.  A
    vector of sup-norm ``<= best`` always lies in that ball, so the search is
    exhaustive and the result is a true minimum.  Among the minimal vectors
    the lexicographically least one with positive first nonzero entry is
    returned, the same witness as :func:`shell_search_kernel`.
    """
    if V.kind != "int":
        raise TypeError("find_small_kernel expects an integer matrix")
    N = V.cols
    if V.rows >= N:
        raise PreconditionError(f"need fewer rows than columns, got {V.rows}x{N}")
    mahler = mahler_bound(V) if all(any(r) for r in V.entries) else None
    limit = mahler
    if norm_budget is not None:
        limit = norm_budget if limit is None else min(limit, norm_budget)
    basis = lll_reduce(integer_kernel_basis(V))
    n = len(basis)
    _, mu, B = _gram_schmidt(basis)

    best, best_norm = None, None
    for v in basis:
        c = _canonical(tuple(v))
        nv = max(abs(x) for x in c)
        if best_norm is None or nv < best_norm or (nv == best_norm and c < best):
            best, best_norm = c, nv
    cap = best_norm if limit is None else min(best_norm, limit)
    state = {"cap": cap, "nodes": 0}
    u = [0] * n

    def visit(i: int, rest: Fraction):
        nonlocal best, best_norm
        state["nodes"] += 1
        if state["nodes"] > max_candidates:
            raise BudgetExceeded(f"enumeration budget of {max_candidates} nodes exhausted")
        center = -sum((mu[j][i] * u[j] for j in range(i + 1, n)), Fraction(0))
        t = rest / B[i]
        r = math.isqrt(math.ceil(t)) + 1
        for ui in range(math.floor(center) - r, math.ceil(center) + r + 1):
            dev = (ui - center) ** 2
            if dev > t:
                continue
            u[i] = ui
            left = rest - dev * B[i]
            if i > 0:
                visit(i - 1, left)
                continue
            if not any(u):
                continue
            x = tuple(sum(uj * bj[k] for uj, bj in zip(u, basis)) for k in range(N))
            nx = max(abs(v) for v in x)
            if nx > state["cap"]:
                continue
            x = _canonical(x)
            if best_norm is None or nx < best_norm or (nx == best_norm and x < best):
                best, best_norm = x, nx
            state["cap"] = min(state["cap"], nx)
        u[i] = 0

    # any vector with sup-norm <= cap has squared length <= N * cap^2; the
    # radius is fixed here and the sup-norm test at the leaves does the rest
    visit(n - 1, Fraction(N * state["cap"] ** 2))
    if best_norm > (limit if limit is not None else best_norm):
        raise BudgetExceeded(f"no kernel vector with sup-norm <= {limit}")
    if any(sum(a * b for a, b in zip(r, best)) for r in V.entries):
        raise ArithmeticError("kernel search produced a non-solution")
    return best


# -- end-to-end ------------------------------------------------------------------


@dataclass
class SiegelReport:
    mahler_bound: int
    fg_bound: RealBound
    bv_bound: RealBound | None
    f: Fraction
    g: Fraction
    D: int
    solution: tuple
    norm: int
    rank_ok: bool

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "mahler_bound": self.mahler_bound,
            "fg_bound": str(self.fg_bound),
            "fg_bound_exact": self.fg_bound.exact_form(),
            "bv_bound": None if self.bv_bound is None else str(self.bv_bound),
            "bv_bound_exact": None if self.bv_bound is None else self.bv_bound.exact_form(),
            "f": str(self.f),
            "g": str(self.g),
            "D": self.D,
            "solution": list(self.solution),
            "norm": self.norm,
            "rank_ok": self.rank_ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class SiegelSolution:
    problem: WildProblem
    report: SiegelReport
    denominator: list  # c_h L!/h!, ascending powers of t
    numerators: list
    orders: list
    claimed_value: int


def siegel_pade_solve(p: WildProblem, norm_budget: int | None = None) -> SiegelSolution:
    """Small solution of the twin system at an integer point with ``M < L``."""
    if p.symbolic:
        raise PreconditionError("siegel_pade_solve needs an integer point")
    if p.M >= p.L:
        raise PreconditionError(f"need M < L (got M = {p.M}, L = {p.L}); use twin_solve for M = L")
    p = p.with_(convention="binomial")
    V = build_V(p)
    L = p.L
    c = find_small_kernel(V, norm_budget)
    norm = max(abs(x) for x in c)
    mb = mahler_bound(V)
    fg = fg_bound(p)
    rank_ok = rank_integer(V) == p.M
    D = math.gcd(*(v for _, v in all_maximal_minors(V)))
    bv = bombieri_vaaler_bound(V) if rank_ok else None
    f, g = f_and_g(p.point.values)
    report = SiegelReport(mb, fg, bv, f, g, D, c, norm, rank_ok)
    denom = [c[h] * (math.factorial(L) // math.factorial(h)) for h in range(L + 1)]
    numerators, orders = [], []
    for j, nuj in enumerate(p.nu):
        num, cert = certify_remainder(denom, p.point.values[j], L, L + nuj + 1, L)
        numerators.append(list(num))
        orders.append(cert)
    return SiegelSolution(p, report, denom, numerators, orders, claimed_factor_value(p.nu, p.point))
