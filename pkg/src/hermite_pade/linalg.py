"""Exact determinants, maximal minors, ranks and block expansions.

Matrices hold one of three entry kinds: Python ints, :class:`Poly` or
:class:`RatPoly`.  Two independent determinant routes are provided:

* ``cofactor``: Laplace expansion row by row, memoized on the set of used
  columns.  Run on an ``M x N`` matrix the same recursion yields every
  maximal minor at once (the coordinates of the wedge product of the rows).
* ``fraction_free``: Bareiss elimination, first nonzero pivot in column
  order, with exact divisions in the coefficient ring.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArityMismatch, NotDivisible
from .poly import Poly, RatPoly, parse_ratpoly


@dataclass(frozen=True)
class ColumnSelection:
    """Strictly increasing 0-based column indices."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"column selection {idx} is not strictly increasing")
        if idx and idx[0] < 0:
            raise ValueError("negative column index")

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


class Matrix:
    """Dense immutable matrix over ints, Poly or RatPoly."""

    __slots__ = ("rows", "cols", "entries", "nvars", "kind")

    def __init__(self, rows: Sequence[Sequence], nvars: int | None = None):
        entries = tuple(tuple(r) for r in rows)
        ncols = len(entries[0]) if entries else 0
        if any(len(r) != ncols for r in entries):
            raise ValueError("ragged matrix")
        kinds = set()
        for r in entries:
            for e in r:
                if isinstance(e, RatPoly):
                    kinds.add("rat")
                    nv = e.nvars
                elif isinstance(e, Poly):
                    kinds.add("poly")
                    nv = e.nvars
                elif isinstance(e, int):
                    continue
                else:
                    raise TypeError(f"unsupported entry type {type(e).__name__}")
                if nvars is None:
                    nvars = nv
                elif nv != nvars:
                    raise ArityMismatch("matrix entries of different arity")
        kind = "rat" if "rat" in kinds else ("poly" if kinds else ("int" if nvars is None else "poly"))
        if kind != "int":
            entries = tuple(tuple(_lift(e, kind, nvars) for e in r) for r in entries)
        self.rows = len(entries)
        self.cols = ncols
        self.entries = entries
        self.nvars = nvars
        self.kind = kind

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> tuple:
        return self.entries[i]

    def zero(self):
        if self.kind == "int":
            return 0
        if self.kind == "poly":
            return Poly.zero(self.nvars)
        return RatPoly(Poly.zero(self.nvars))

    def one(self):
        if self.kind == "int":
            return 1
        if self.kind == "poly":
            return Poly.one(self.nvars)
        return RatPoly(Poly.one(self.nvars))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        cols = list(cols)
        return Matrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars)

    def select_columns(self, cols: Iterable[int]) -> "Matrix":
        return self.submatrix(range(self.rows), cols)

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.entries)], self.nvars)

    def map(self, fn, nvars: int | None = None) -> "Matrix":
        return Matrix([[fn(e) for e in r] for r in self.entries], nvars)

    def evaluate(self, point: Sequence[int]) -> "Matrix":
        """Specialize a polynomial matrix at an integer point."""
        if self.kind == "int":
            return self
        if self.kind == "rat":
            raise TypeError("clear denominators before specializing a rational matrix")
        return Matrix([[e.eval(point) for e in r] for r in self.entries])

    def swap_rows(self, i: int, j: int) -> "Matrix":
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return Matrix(rows, self.nvars)

    def scale_row(self, i: int, c: int) -> "Matrix":
        rows = [list(r) for r in self.entries]
        rows[i] = [e * c for e in rows[i]]
        return Matrix(rows, self.nvars)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, kind={self.kind})"

    def to_text(self, names=None) -> str:
        """One row per line, tab-separated canonical entries."""
        def fmt(e):
            return str(e) if isinstance(e, int) else e.to_str(names)
        return "\n".join("\t".join(fmt(e) for e in r) for r in self.entries)

    @classmethod
    def from_text(cls, text: str, nvars: int | None = None) -> "Matrix":
        rows = []
        for line in text.strip("\n").split("\n"):
            cells = line.split("\t")
            if nvars is None:
                rows.append([int(c) for c in cells])
            else:
                row = []
                for c in cells:
                    rp = parse_ratpoly(c, nvars)
                    row.append(rp.num if rp.den == 1 else rp)
                rows.append(row)
        return cls(rows, nvars)


def _lift(e, kind, nvars):
    if kind == "poly":
        return Poly.const(e, nvars) if isinstance(e, int) else e
    if isinstance(e, RatPoly):
        return e
    if isinstance(e, int):
        return RatPoly(Poly.const(e, nvars))
    return RatPoly(e)


def _exact_div(a, b):
    if isinstance(a, int):
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{a} is not divisible by {b}")
        return q
    return a.exact_div(b)


def _is_zero(e) -> bool:
    return not e


def clear_denominators(m: Matrix) -> tuple:
    """Return ``(poly_matrix, multipliers)`` with row i scaled by ``multipliers[i]``."""
    if m.kind != "rat":
        return m, [1] * m.rows
    rows, mults = [], []
    for r in m.entries:
        d = math.lcm(*(e.den for e in r))
        rows.append([e.num * (d // e.den) for e in r])
        mults.append(d)
    return Matrix(rows, m.nvars), mults


# -- determinants ---------------------------------------------------------------


def _laplace_minors(m: Matrix, keep_all: bool) -> dict:
    """Memoized row-by-row Laplace expansion.

    Returns a map from the bitmask of used columns to the signed partial
    determinant of the first ``rows`` rows on those columns.
    """
    level = {0: m.one()}
    ncols = m.cols
    for r in range(m.rows):
        row = m.entries[r]
        nonzero = [c for c in range(ncols) if not _is_zero(row[c])]
        nxt: dict = {}
        for mask, v in level.items():
            for c in nonzero:
                bit = 1 << c
                if mask & bit:
                    continue
                # inversions contributed by putting column c after higher used columns
                above = bin(mask >> (c + 1)).count("1")
                term = v * row[c]
                if above & 1:
                    term = -term
                key = mask | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        level = {k: v for k, v in nxt.items() if keep_all or not _is_zero(v)}
    return level


def det_cofactor(m: Matrix):
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return m.one()
    level = _laplace_minors(m, keep_all=False)
    return level.get((1 << m.cols) - 1, m.zero())


def _bareiss(rows: list, ncols: int, one):
    """Fraction-free elimination in place.

    Returns ``(pivot_columns, sign, rows)``; the last pivot is the
    determinant (up to sign) when the matrix is square and nonsingular.
    """
    nrows = len(rows)
    sign = 1
    prev = one
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not _is_zero(rows[i][c])), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = _exact_div(piv * ri[j] - f * rows[r][j], prev)
            ri[c] = one - one
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, sign, rows


def det_fraction_free(m: Matrix):
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return m.one()
    pm, mults = clear_denominators(m)
    rows = [list(r) for r in pm.entries]
    pivots, sign, rows = _bareiss(rows, pm.cols, pm.one())
    if len(pivots) < pm.rows:
        return m.zero()
    d = rows[-1][-1]
    if sign < 0:
        d = -d
    if m.kind == "rat":
        return RatPoly(d, math.prod(mults))
    return d


def det(m: Matrix, algorithm: str = "fraction_free"):
    """Exact determinant; ``algorithm`` is ``"fraction_free"`` or ``"cofactor"``."""
    if algorithm == "fraction_free":
        return det_fraction_free(m)
    if algorithm == "cofactor":
        return det_cofactor(m)
    raise ValueError(f"unknown determinant algorithm {algorithm!r}")


def maximal_minor(m: Matrix, cols, algorithm: str = "cofactor"):
    cols = cols if isinstance(cols, ColumnSelection) else ColumnSelection(tuple(cols))
    if len(cols) != m.rows:
        raise ValueError(f"selection of {len(cols)} columns for {m.rows} rows")
    if cols.indices and cols.indices[-1] >= m.cols:
        raise ValueError("column index out of range")
    return det(m.select_columns(cols.indices), algorithm)


def all_maximal_minors(m: Matrix) -> list:
    """All ``rows x rows`` minors as ``(ColumnSelection, value)`` in lexicographic order."""
    if m.rows > m.cols:
        raise ValueError(f"{m.rows}x{m.cols} matrix has no maximal column minors")
    level = _laplace_minors(m, keep_all=True)
    out = []
    for sel in itertools.combinations(range(m.cols), m.rows):
        mask = sum(1 << c for c in sel)
        out.append((ColumnSelection(sel), level.get(mask, m.zero())))
    return out


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a sequence of distinct integers relative to its sorted order."""
    inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv & 1 else 1


def block_minor_expansion(m: Matrix, row_blocks: Sequence[Sequence[int]]):
    """Determinant via the generalized Laplace expansion over row blocks.

    ``det m = sign(rho) * sum sign(tau) * prod_j det m[R_j, H_j]`` where the
    ``H_j`` run over disjoint column sets with ``|H_j| = |R_j|``, ``rho`` is
    the row order ``R_1, R_2, ...`` and ``tau`` the column order
    ``H_1, H_2, ...``.
    """
    if m.rows != m.cols:
        raise ValueError("block expansion needs a square matrix")
    blocks = [list(b) for b in row_blocks]
    flat = [i for b in blocks for i in b]
    if sorted(flat) != list(range(m.rows)) or any(not b for b in blocks):
        raise ValueError(f"row blocks {row_blocks} do not partition the rows")
    rho = permutation_sign(flat)
    block_minors = []
    for b in blocks:
        sub = m.submatrix(b, range(m.cols))
        block_minors.append({sel.indices: v for sel, v in all_maximal_minors(sub) if not _is_zero(v)})
    total = m.zero()

    def walk(j, used, cols_so_far, acc):
        nonlocal total
        if j == len(blocks):
            s = permutation_sign(cols_so_far) * rho
            total = total + (acc if s > 0 else -acc)
            return
        for sel, v in block_minors[j].items():
            if used.intersection(sel):
                continue
            walk(j + 1, used | set(sel), cols_so_far + list(sel), acc * v)

    walk(0, frozenset(), [], m.one())
    return total


# -- rank and Gram determinant ----------------------------------------------------


def rank_integer(m: Matrix) -> int:
    """Rank over Q of an integer matrix."""
    rows = [list(r) for r in m.entries]
    pivots, _, _ = _bareiss(rows, m.cols, 1)
    return len(pivots)


def rank_over_fractions(m: Matrix, probes: int = 3, seed: int = 0) -> int:
    """Rank over the fraction field of the entry ring.

    Polynomial matrices are first specialized at a few pseudo-random integer
    points: a full-rank specialization exhibits a nonzero minor and certifies
    full rank.  Otherwise the rank comes from fraction-free elimination over
    the polynomial ring.
    """
    pm, _ = clear_denominators(m)
    if pm.kind == "int":
        return rank_integer(pm)
    full = min(pm.rows, pm.cols)
    rng = random.Random(seed)
    for _ in range(probes):
        point = [rng.randint(-10**6, 10**6) for _ in range(pm.nvars)]
        if rank_integer(pm.evaluate(point)) == full:
            return full
    rows = [list(r) for r in pm.entries]
    pivots, _, _ = _bareiss(rows, pm.cols, pm.one())
    return len(pivots)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ValueError("shape mismatch")
    zero = a.zero()
    out = []
    for r in a.entries:
        row = []
        for j in range(b.cols):
            s = zero
            for k in range(a.cols):
                s = s + r[k] * b.entries[k][j]
            row.append(s)
        out.append(row)
    return Matrix(out, a.nvars)


def gram_det(m: Matrix) -> int:
    """``det(m m^T)`` for an integer matrix with ``rows <= cols``."""
    if m.kind != "int":
        raise TypeError("gram_det expects an integer matrix")
    if m.rows > m.cols:
        raise ValueError("gram_det needs rows <= cols")
    return det_fraction_free(matmul(m, m.transpose()))


def integer_kernel_basis(m: Matrix) -> list:
    """Basis of the lattice ``{x in Z^N : m x = 0}`` of an integer matrix.

    Integer column operations (Euclid on each row) bring ``m`` to column
    echelon form while the same operations are applied to an identity
    matrix; the transformed identity columns that end up opposite zero
    columns span the integer kernel because the transformation is unimodular.
    """
    if m.kind != "int":
        raise TypeError("integer_kernel_basis expects an integer matrix")
    n = m.cols
    # each column carries its entries in m followed by its entries in U
    cols = [[m.entries[i][j] for i in range(m.rows)] + [int(j == k) for k in range(n)] for j in range(n)]
    k = 0
    for i in range(m.rows):
        while True:
            active = [j for j in range(k, n) if cols[j][i]]
            if not active:
                break
            p = min(active, key=lambda j: abs(cols[j][i]))
            cols[k], cols[p] = cols[p], cols[k]
            if len(active) == 1:
                k += 1
                break
            piv = cols[k][i]
            for j in range(k + 1, n):
                q = cols[j][i] // piv
                if q:
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
        if k == n:
            break
    return [c[m.rows:] for c in cols[k:]]
