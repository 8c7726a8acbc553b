"""Confluent Vandermonde-type block matrices built from a polynomial sequence.

Given univariate ``p_0, ..., p_{n-1}`` and block sizes ``n_1 + ... + n_m = n``
the block for variable ``x_j`` consists of rows ``(p_0^{(k)}(x_j), ...,
p_{n-1}^{(k)}(x_j))``:

* case A: ``k = 0, 1, ..., n_j - 1`` (differentiating downwards);
* case B: ``k = n_max - 1, ..., n_max - n_j`` (differentiating upwards from
  the last row).

The determinant of case A is divisible by ``prod_{i<j} (x_i - x_j)^{n_i n_j}``
and that of case B by ``prod_{i<j} (x_i - x_j)^{min(n_i^2, n_j^2)}``.  The
certificates below perform the exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NonConstantQuotient, PreconditionError
from .linalg import Matrix, det
from .poly import Poly, vandermonde_factor


@dataclass(frozen=True)
class PolySequence:
    """Univariate integer polynomials ``p_0, ..., p_{n-1}`` (arity 1)."""

    polys: tuple

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise ValueError("a polynomial sequence needs at least one member")
        if any(p.nvars != 1 for p in polys):
            raise ValueError("sequence members must be univariate")

    @classmethod
    def powers(cls, n: int) -> "PolySequence":
        x = Poly.var(0, 1)
        return cls(tuple(x ** i for i in range(n)))

    @classmethod
    def falling_factorials(cls, n: int) -> "PolySequence":
        """``(x]_0, (x]_1, ...`` with ``(x]_k = x (x-1) ... (x-k+1)``."""
        x = Poly.var(0, 1)
        out, cur = [], Poly.one(1)
        for k in range(n):
            out.append(cur)
            cur = cur * (x - k)
        return cls(tuple(out))

    def __len__(self):
        return len(self.polys)

    def degrees(self) -> list:
        # the zero polynomial has degree -infinity
        return [p.total_degree() if p.terms else float("-inf") for p in self.polys]


@dataclass(frozen=True)
class BlockSpec:
    block_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.block_sizes)
        object.__setattr__(self, "block_sizes", sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError(f"block sizes {sizes} must be positive")

    @property
    def m(self) -> int:
        return len(self.block_sizes)

    @property
    def n(self) -> int:
        return sum(self.block_sizes)


def _check(seq: PolySequence, spec: BlockSpec):
    if len(seq) != spec.n:
        raise ValueError(f"sequence of length {len(seq)} does not match block sizes summing to {spec.n}")


def _block_row(seq: PolySequence, order: int, j: int, m: int) -> list:
    return [p.derivative(0, order).embed(m, [j]) for p in seq.polys]


def build_caseA(seq: PolySequence, spec: BlockSpec) -> Matrix:
    _check(seq, spec)
    rows = []
    for j, nj in enumerate(spec.block_sizes):
        rows.extend(_block_row(seq, k, j, spec.m) for k in range(nj))
    return Matrix(rows, spec.m)


def build_caseB(seq: PolySequence, spec: BlockSpec) -> Matrix:
    _check(seq, spec)
    nmax = max(spec.block_sizes)
    rows = []
    for j, nj in enumerate(spec.block_sizes):
        rows.extend(_block_row(seq, nmax - s, j, spec.m) for s in range(1, nj + 1))
    return Matrix(rows, spec.m)


def caseA_factor(spec: BlockSpec) -> Poly:
    n = spec.block_sizes
    return vandermonde_factor(spec.m, lambda i, j: n[i] * n[j])


def caseB_factor(spec: BlockSpec) -> Poly:
    n = spec.block_sizes
    return vandermonde_factor(spec.m, lambda i, j: min(n[i] ** 2, n[j] ** 2))


def certify_caseA_factor(seq: PolySequence, spec: BlockSpec) -> Poly:
    """``det A / prod (x_i - x_j)^{n_i n_j}``; raises NotDivisible if the division fails."""
    return det(build_caseA(seq, spec)).exact_div(caseA_factor(spec))


def certify_caseB_factor(seq: PolySequence, spec: BlockSpec) -> Poly:
    """``det B / prod (x_i - x_j)^{min(n_i^2, n_j^2)}``; raises NotDivisible if the division fails."""
    return det(build_caseB(seq, spec)).exact_div(caseB_factor(spec))


def _require_degrees(seq: PolySequence):
    for i, d in enumerate(seq.degrees()):
        if d != i:
            raise PreconditionError(f"deg p_{i} = {d}, expected {i}")


def kratt_closed_form(seq: PolySequence) -> Poly:
    """``a_00 a_11 ... prod_{i<j} (x_j - x_i)`` for ``deg p_i = i`` and blocks of size one.

    The result lives in ``n = len(seq)`` variables ``x_1..x_n``.
    """
    _require_degrees(seq)
    n = len(seq)
    lead = 1
    for p in seq.polys:
        lead *= p.leading_coefficient()
    return vandermonde_factor(n, lambda i, j: 1).scale(lead * (-1) ** (n * (n - 1) // 2))


def constant_F(seq: PolySequence, spec: BlockSpec) -> Poly:
    """The constant ``F`` with ``det A = F prod (x_i - x_j)^{n_i n_j}`` when ``deg p_i = i``."""
    _require_degrees(seq)
    q = certify_caseA_factor(seq, spec)
    if not q.is_constant():
        raise NonConstantQuotient(f"quotient {q} is not a constant")
    return q


def degree_bound_caseA(spec: BlockSpec, k: int) -> int:
    """Upper bound ``n_k (n - n_k)`` on the degree of ``det A`` in ``x_k``."""
    nk = spec.block_sizes[k]
    return nk * (spec.n - nk)


def rows_to_caseA_order(spec: BlockSpec) -> list:
    """Row permutation taking case B to case A when all block sizes agree.

    With equal sizes case B lists each block's derivative orders in reverse,
    so reversing every block recovers case A.
    """
    perm, start = [], 0
    for nj in spec.block_sizes:
        perm.extend(reversed(range(start, start + nj)))
        start += nj
    return perm


def sequence_from_coefficients(coeff_lists: Sequence[Sequence[int]]) -> PolySequence:
    """Build a sequence from ascending coefficient lists ``[c_0, c_1, ...]``."""
    return PolySequence(tuple(Poly({(k,): c for k, c in enumerate(cs)}, 1) for cs in coeff_lists))
