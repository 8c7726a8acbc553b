"""Truncated power series in ``t`` and remainder-order certificates.

Coefficients are RatPoly in the symbolic setting and Fraction once the
variables have been specialized to integers.  The product of a polynomial
``B(t) = sum b_h t^h`` with ``exp(alpha t)`` has coefficients

    r_N = sum_{h <= N} b_h alpha^(N-h) / (N-h)!
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CoefficientNonZero
from .poly import Poly, RatPoly


def _as_coeff(c, nvars):
    """Lift ints, Fractions and Polys into the coefficient domain."""
    if nvars is None:
        return Fraction(c)
    if isinstance(c, RatPoly):
        return c
    if isinstance(c, Poly):
        return RatPoly(c)
    return RatPoly.from_fraction(c, nvars)


def _infer_nvars(values) -> int | None:
    for v in values:
        if isinstance(v, (Poly, RatPoly)):
            return v.nvars
    return None


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients ``c_0 .. c_{N_max}`` of a power series known modulo ``t^(N_max+1)``."""

    coeffs: tuple

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def truncate(self, degree: int) -> tuple:
        """Coefficients of the polynomial part of degree ``<= degree``."""
        return self.coeffs[: degree + 1]

    def remainder(self, degree: int) -> "TruncSeries":
        """The series minus its truncation at ``degree``."""
        zero = self.coeffs[0] * 0
        return TruncSeries(tuple(zero if n <= degree else c for n, c in enumerate(self.coeffs)))


def exp_product(b: Sequence, alpha, n_max: int) -> TruncSeries:
    """``B(t) * exp(alpha t)`` modulo ``t^(n_max+1)``.

    ``alpha`` is a Poly (symbolic) or an int (specialized); ``b`` lists the
    coefficients of ``B`` in ascending powers of ``t``.
    """
    b = list(b)
    while len(b) > 1 and not b[-1]:
        b.pop()
    if n_max < len(b) - 1:
        raise ValueError(f"truncation order {n_max} below deg B = {len(b) - 1}")
    nvars = alpha.nvars if isinstance(alpha, Poly) else _infer_nvars(b)
    if nvars is not None and not isinstance(alpha, Poly):
        alpha = Poly.const(alpha, nvars)
    coeffs = [_as_coeff(c, nvars) for c in b]
    powers = [1 if nvars is None else Poly.one(nvars)]
    for _ in range(n_max):
        powers.append(powers[-1] * alpha)
    out = []
    for n in range(n_max + 1):
        acc = _as_coeff(0, nvars)
        for h in range(min(n, len(coeffs) - 1) + 1):
            k = n - h
            acc = acc + coeffs[h] * powers[k] * Fraction(1, math.factorial(k))
        out.append(acc)
    return TruncSeries(tuple(out))


@dataclass(frozen=True)
class OrderCertificate:
    """Outcome of checking that a remainder vanishes to a claimed order.

    ``first_nonzero`` is the exact order when a nonzero coefficient showed up
    inside the window, and ``None`` when the whole window vanished (order at
    least ``truncation_order + 1``).
    """

    claimed_min: int
    truncation_order: int
    first_nonzero: int | None

    @property
    def order_lower_bound(self) -> int:
        return self.truncation_order + 1 if self.first_nonzero is None else self.first_nonzero

    def describe(self) -> str:
        if self.first_nonzero is None:
            return f">= {self.truncation_order + 1}"
        return str(self.first_nonzero)


def order_at_zero(s: TruncSeries, claimed_min: int) -> OrderCertificate:
    """Certify that coefficients ``0 .. claimed_min-1`` vanish.

    Raises :class:`CoefficientNonZero` carrying the offending index otherwise.
    """
    if claimed_min > s.truncation_order:
        raise ValueError(f"claimed order {claimed_min} exceeds truncation order {s.truncation_order}")
    first = next((n for n, c in enumerate(s.coeffs) if c), None)
    if first is not None and first < claimed_min:
        raise CoefficientNonZero(first, f"coefficient of t^{first} is {s.coeffs[first]}, claimed order {claimed_min}")
    return OrderCertificate(claimed_min, s.truncation_order, first)


def certificate_window(claimed_min: int, L: int) -> int:
    """Truncation order used for certificates: claimed order plus ``max(4, L)``."""
    return claimed_min + max(4, L)


def certify_remainder(b: Sequence, alpha, numerator_degree: int, claimed_min: int, L: int):
    """Build the numerator by truncation and certify the remainder order.

    Returns ``(numerator_coefficients, OrderCertificate)``.
    """
    series = exp_product(b, alpha, certificate_window(claimed_min, L))
    return series.truncate(numerator_degree), order_at_zero(series.remainder(numerator_degree), claimed_min)
