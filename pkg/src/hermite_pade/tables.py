"""Regeneration of the worked example tables.

Table 1 compares the classical denominator (``l0 = 0, l = (1, 3)``) with
the twin denominator for the same ``l``.  Tables 2 and 3 list, for ``nu = l``,
the gcd of the ``L x L`` minors of ``V`` and the quotients
``V[0]/gcd, ..., V[L]/gcd``.  The first row of table 2 is reproduced by the
falling-factorial matrix, every other row by the binomial one.
"""

from __future__ import annotations

from .gcd import format_factored
from .tame import TameProblem, tame_solve
from .wild import WildProblem, minor_gcd_report, twin_solve

TABLE1_CASE = (0, (1, 3))

TABLE2_CASES = [
    ((1, 1), "falling_factorial"),
    ((1, 2), "binomial"),
    ((2, 2), "binomial"),
    ((1, 3), "binomial"),
    ((1, 4), "binomial"),
    ((2, 3), "binomial"),
    ((3, 3), "binomial"),
]

TABLE3_CASES = [
    ((1, 1, 1), "binomial"),
    ((1, 1, 2), "binomial"),
    ((2, 2, 2), "binomial"),
]

# the published table elides these quotients; ours are computed only
DERIVED_ONLY = {(3, 3): "quotients"}


def table1() -> list:
    """Rows ``(i, b_i, (L!/i!) tau_i)`` with canonical normalization."""
    l0, l = TABLE1_CASE
    tame = tame_solve(TameProblem(l0, l), with_minors=False)
    twin = twin_solve(WildProblem(l))
    b = tame.normalized_denominator()
    return [(i, b[i], twin.normalized[i]) for i in range(len(b))]


def minor_table(which: int) -> list:
    cases = {2: TABLE2_CASES, 3: TABLE3_CASES}[which]
    rows = []
    for k, (l, conv) in enumerate(cases, start=1):
        rep = minor_gcd_report(WildProblem(l, convention=conv))
        rows.append({
            "row": k,
            "l": list(l),
            "L": sum(l),
            "convention": conv,
            "gcd": rep.gcd,
            "gcd_factored": format_factored(rep.gcd),
            "quotients": rep.quotients,
            "quotients_status": "derived" if DERIVED_ONLY.get((which, k)) == "quotients" else "computed",
            "claimed_factor": rep.claimed_factor,
        })
    return rows


def table(which: int) -> list:
    if which == 1:
        return table1()
    if which in (2, 3):
        return minor_table(which)
    raise ValueError(f"no table {which}; choose 1, 2 or 3")
