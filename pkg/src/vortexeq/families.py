"""Family tags and per-family constants: circulations, charges, degree laws.

Five resonant families are supported.  ``am`` and ``am-half`` are chains of a
single polynomial sequence P_0, P_1, ... whose consecutive pairs give the
configurations; ``l2``, ``l2-neg`` and ``l2-term`` carry two interleaved
sequences q_n, p_n.  The ``-half`` / ``-term`` variants start from modified
initial data, do not solve the bilinear equation, and terminate once a
logarithmic obstruction appears.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction


class FamilyTag(str, Enum):
    ADLER_MOSER = "am"
    AM_HALF = "am-half"
    LAMBDA2 = "l2"
    LAMBDA2_DESC = "l2-neg"
    L2_TERM = "l2-term"

    def __str__(self):
        return self.value


def as_tag(value) -> FamilyTag:
    if isinstance(value, FamilyTag):
        return value
    return FamilyTag(value)


def circulation(tag: FamilyTag) -> int:
    """The ratio Lambda: magnitude of the positive species' charge."""
    return 1 if tag in (FamilyTag.ADLER_MOSER, FamilyTag.AM_HALF) else 2


def is_p_chain(tag: FamilyTag) -> bool:
    """True for the single-sequence families (consecutive P pairs)."""
    return tag in (FamilyTag.ADLER_MOSER, FamilyTag.AM_HALF)


def is_terminating(tag: FamilyTag) -> bool:
    return tag in (FamilyTag.AM_HALF, FamilyTag.L2_TERM)


def pair_charges(tag: FamilyTag) -> tuple[Fraction, Fraction]:
    """(charge on roots of the q slot, charge on roots of the p slot).

    For the P-chain families the pair is (P_n, P_{n+1}) with the first member
    carrying the negative species (gray squares) and the second the positive
    one; for the Lambda=2 families q carries +2 and the p partner -1.
    """
    if is_p_chain(tag):
        return Fraction(-1), Fraction(1)
    return Fraction(2), Fraction(-1)


def q_degree_law(tag: FamilyTag, n: int) -> int | None:
    """Exact degree of the q-slot member at index n; None when no closed law."""
    if tag is FamilyTag.ADLER_MOSER:
        return n * (n + 1) // 2
    if tag in (FamilyTag.LAMBDA2, FamilyTag.LAMBDA2_DESC):
        return n * (3 * n - 1) // 2
    return None


def p_degree_law(tag: FamilyTag, n: int) -> int | None:
    if tag is FamilyTag.ADLER_MOSER:
        return (n + 1) * (n + 2) // 2
    if tag in (FamilyTag.LAMBDA2, FamilyTag.LAMBDA2_DESC):
        return n * (3 * n + 2)
    return None


def chain_order(tag: FamilyTag) -> int:
    """Order of the differential operator whose factorisation drives the family."""
    return 2 if is_p_chain(tag) else 3


def chain_weight(tag: FamilyTag) -> int:
    """Weight of the potential jump u -> u - weight*(log kappa)'' along the chain."""
    return 2 if is_p_chain(tag) else 6
