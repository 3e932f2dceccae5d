"""Commutation, infimum faithfulness and Boolean subalgebras of a family.

The product criterion decides whether chosen members of a structured
two-valued family sit inside a common Boolean subalgebra by checking that
every product of chosen members is again a member. An exhaustive subset
search serves as the independent oracle for it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .core import ArityError, Event, EventFamily, MembershipError, complement


@dataclass(frozen=True)
class SubsetSelection:
    family: EventFamily
    chosen: tuple[Event, ...]

    def __post_init__(self) -> None:
        chosen = tuple(self.chosen)
        if not chosen:
            raise ValueError("select at least one event")
        for p in chosen:
            if p not in self.family:
                raise MembershipError(f"{p} is not in the family")
        object.__setattr__(self, "chosen", chosen)


def pointwise_product(p: Event, q: Event) -> Event:
    if len(p) != len(q):
        raise ArityError(f"arity mismatch: {len(p)} != {len(q)}")
    return Event(tuple(a * b for a, b in zip(p.values, q.values)))


def product_of(events: Sequence[Event]) -> Event:
    return reduce(pointwise_product, events)


def commutes(F: EventFamily, p: Event, q: Event) -> bool:
    """``p = (p ∧ q) ∨ (p ∧ q')`` with every extremum existing in F."""
    qc = complement(q)
    if qc not in F:
        return False
    a = F.infimum(p, q)
    b = F.infimum(p, qc)
    if a is None or b is None:
        return False
    return F.supremum(a, b) == p


def is_infimum_faithful(F: EventFamily) -> bool:
    for p, q in itertools.product(F.events, repeat=2):
        if (F.infimum(p, q) is not None) != commutes(F, p, q):
            return False
    return True


def _check_eligible(family: EventFamily) -> None:
    from .classify import PreconditionError, check_condition

    if not all(p.is_two_valued() for p in family):
        raise PreconditionError("product criterion needs a {0,1}-valued family")
    if not all(check_condition(family, c).holds for c in (1, 2, 7)):
        raise PreconditionError("product criterion needs a structured family")


def product_criterion(sel: SubsetSelection) -> bool:
    """Every product of a nonempty subset of the chosen events is a member."""
    _check_eligible(sel.family)
    chosen = sorted(set(sel.chosen))
    for k in range(1, len(chosen) + 1):
        for combo in itertools.combinations(chosen, k):
            if product_of(combo) not in sel.family:
                return False
    return True


def is_boolean_subalgebra(F: EventFamily, members) -> bool:
    """``members`` holds 0, 1, is complement-closed and meet-closed in F,
    and is a Boolean algebra under the induced order."""
    from .classify import is_boolean_algebra

    Q = frozenset(members)
    if F.zero not in Q or F.one not in Q:
        return False
    if any(complement(p) not in Q for p in Q):
        return False
    for p, q in itertools.combinations(sorted(Q), 2):
        m = F.infimum(p, q)
        if m is None or m not in Q:
            return False
    return is_boolean_algebra(EventFamily(F.states, tuple(Q)))


def boolean_subalgebra_oracle(sel: SubsetSelection) -> EventFamily | None:
    """Smallest Boolean subalgebra of the family containing the chosen events.

    Brute force over complement orbits: cardinality ascending, then
    lexicographic. Returns ``None`` if there is none.
    """
    F = sel.family
    if F.zero not in F or F.one not in F:
        return None
    forced = {F.zero, F.one}
    for p in sel.chosen:
        forced.add(p)
        forced.add(complement(p))
    if any(p not in F for p in forced):
        return None
    orbits = []
    seen = set(forced)
    for p in F:
        if p in seen:
            continue
        pc = complement(p)
        if pc not in F:
            continue
        orbit = frozenset({p, pc})
        seen |= orbit
        orbits.append(orbit)

    candidates = []
    for r in range(len(orbits) + 1):
        for combo in itertools.combinations(orbits, r):
            members = set(forced).union(*combo) if combo else set(forced)
            candidates.append((len(members), tuple(sorted(members))))
    candidates.sort()
    for _, members in candidates:
        if is_boolean_subalgebra(F, members):
            return EventFamily(F.states, members)
    return None
