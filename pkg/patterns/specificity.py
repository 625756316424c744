"""Syntactic test for the "more specific than" relation between patterns.

p1 is more specific than (or equal to) p2 when every text matched by p1 is also
matched by p2. That relation is semantic; here it is approximated soundly by
looking for an order-preserving injection m from p2's slots into p1's slots where

  * each p2 slot's attributes are a subset of the attributes of its image, and
  * for consecutive p2 slots mapped to p1 positions j < j', the largest number of
    tokens p1 can put between those two positions, (j'-j-1) + (j'-j)*gap(p1),
    fits in p2's gap budget.

A True answer always implies the semantic relation; False may be conservative.
"""
from .pattern import Pattern


def _gap_fits(j: int, j2: int, p1: Pattern, p2: Pattern) -> bool:
    span = j2 - j
    return (span - 1) + span * p1.gap_budget <= p2.gap_budget


def more_specific_or_equal(p1: Pattern, p2: Pattern) -> bool:
    if len(p2.slots) > len(p1.slots):
        return False
    n1 = len(p1.slots)
    # reach[j]: p2 slots 0..a can be mapped with slot a landing on p1 position j
    reach = [p2.slots[0].attributes <= p1.slots[j].attributes for j in range(n1)]
    for a in range(1, len(p2.slots)):
        wanted = p2.slots[a].attributes
        nxt = [False] * n1
        for j2 in range(a, n1):
            if not wanted <= p1.slots[j2].attributes:
                continue
            nxt[j2] = any(reach[j] and _gap_fits(j, j2, p1, p2) for j in range(j2))
        reach = nxt
    return any(reach)


def strictly_more_specific(p1: Pattern, p2: Pattern) -> bool:
    return more_specific_or_equal(p1, p2) and not more_specific_or_equal(p2, p1)
