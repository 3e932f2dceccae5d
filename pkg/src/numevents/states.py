"""States on bounded posets with an antitone involution.

Covers specific states and pseudostates, full and uniform state sets, the
evaluation states of a family, and the construction that turns a poset with
a full, uniform set of specific states back into a family of events
(``f(u)(t) = t(u)``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import (
    ONE,
    ZERO,
    Event,
    EventFamily,
    complement,
    format_rational,
    parse_rational,
    pointwise_sum,
)
from .classify import PreconditionError, check_condition


class PosetError(ValueError):
    """The supplied order or involution is not a bounded poset with antitone involution."""


class RepresentationError(ValueError):
    """A state table is not full or not uniform; carries the offending pair."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class AbstractBoundedPoset:
    """Finite poset given by labels, an order relation and an involution.

    ``order`` may be any generating set of pairs ``(a, b)`` meaning ``a <= b``;
    its reflexive-transitive closure is taken before validation.
    """

    elements: tuple[str, ...]
    order: frozenset
    involution: Mapping[str, str]
    bottom: str
    top: str
    _leq: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        elements = tuple(str(e) for e in self.elements)
        if len(set(elements)) != len(elements):
            raise PosetError("duplicate element labels")
        known = set(elements)
        rel = {(a, a) for a in elements}
        for a, b in self.order:
            if a not in known or b not in known:
                raise PosetError(f"order mentions unknown element in ({a}, {b})")
            rel.add((a, b))
        # transitive closure, Floyd-Warshall style
        for k in elements:
            for i in elements:
                if (i, k) in rel:
                    for j in elements:
                        if (k, j) in rel:
                            rel.add((i, j))
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise PosetError(f"order is not antisymmetric: {a} and {b}")
        inv = dict(self.involution)
        if set(inv) != known or not set(inv.values()) <= known:
            raise PosetError("involution must map every element to an element")
        for bound in (self.bottom, self.top):
            if bound not in known:
                raise PosetError(f"unknown bound {bound!r}")
        for a in elements:
            if (self.bottom, a) not in rel or (a, self.top) not in rel:
                raise PosetError(f"{a} is not between bottom and top")
            if inv[inv[a]] != a:
                raise PosetError(f"involution is not involutive at {a}")
        for a, b in rel:
            if (inv[b], inv[a]) not in rel:
                raise PosetError(f"involution is not antitone on ({a}, {b})")
        if inv[self.bottom] != self.top:
            raise PosetError("involution must swap bottom and top")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "order", frozenset(rel))
        object.__setattr__(self, "involution", inv)
        object.__setattr__(self, "_leq", rel)

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self._leq

    def prime(self, a: str) -> str:
        return self.involution[a]

    def lower_bounds(self, a: str, b: str) -> list[str]:
        return [x for x in self.elements if self.leq(x, a) and self.leq(x, b)]

    def upper_bounds(self, a: str, b: str) -> list[str]:
        return [x for x in self.elements if self.leq(a, x) and self.leq(b, x)]

    def join(self, a: str, b: str) -> str | None:
        ub = self.upper_bounds(a, b)
        for c in ub:
            if all(self.leq(c, d) for d in ub):
                return c
        return None

    def meet(self, a: str, b: str) -> str | None:
        lb = self.lower_bounds(a, b)
        for c in lb:
            if all(self.leq(d, c) for d in lb):
                return c
        return None

    def is_disjoint(self, a: str, b: str) -> bool:
        return all(x == self.bottom for x in self.lower_bounds(a, b))

    def disjoint_pairs(self):
        for a, b in itertools.product(self.elements, repeat=2):
            if self.is_disjoint(a, b):
                yield a, b


@dataclass(frozen=True)
class StateTable:
    """Named states, each a total map from element labels to [0, 1]."""

    state_names: tuple[str, ...]
    values: Mapping[str, Mapping[str, Fraction]]

    def __post_init__(self) -> None:
        names = tuple(str(n) for n in self.state_names)
        if len(set(names)) != len(names):
            raise ValueError("state names must be distinct")
        vals = {}
        for n in names:
            if n not in self.values:
                raise ValueError(f"no values for state {n!r}")
            col = {str(k): parse_rational(v) for k, v in self.values[n].items()}
            for k, v in col.items():
                if v > ONE:
                    raise ValueError(f"state {n} assigns {format_rational(v)} > 1 to {k}")
            vals[n] = col
        object.__setattr__(self, "state_names", names)
        object.__setattr__(self, "values", vals)

    def __call__(self, state: str, element: str) -> Fraction:
        return self.values[state][element]

    def column(self, state: str) -> dict[str, Fraction]:
        return self.values[state]

    def check_total(self, P: AbstractBoundedPoset) -> None:
        for n in self.state_names:
            missing = [e for e in P.elements if e not in self.values[n]]
            if missing:
                raise ValueError(f"state {n} has no value for {missing[0]}")


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds: bool
    witness: tuple[str, ...] = ()
    reason: str = ""

    def to_dict(self) -> dict:
        d = {"axiom": self.axiom, "holds": self.holds}
        if not self.holds:
            d["witness"] = list(self.witness)
            d["reason"] = self.reason
        return d


@dataclass(frozen=True)
class StateVerdict:
    axioms: tuple[AxiomVerdict, ...]

    @property
    def holds(self) -> bool:
        return all(a.holds for a in self.axioms)

    def __bool__(self) -> bool:
        return self.holds

    def __getitem__(self, axiom: str) -> AxiomVerdict:
        for a in self.axioms:
            if a.axiom == axiom:
                return a
        raise KeyError(axiom)

    def to_dict(self) -> dict:
        return {"holds": self.holds, "axioms": [a.to_dict() for a in self.axioms]}


def _fmt(x: Fraction) -> str:
    return format_rational(x)


def _specific_axioms(P: AbstractBoundedPoset, s: Mapping[str, Fraction]) -> list[AxiomVerdict]:
    out = []
    if s[P.bottom] == ZERO and s[P.top] == ONE:
        out.append(AxiomVerdict("S1", True))
    else:
        out.append(AxiomVerdict("S1", False, (P.bottom, P.top),
                                f"s(0)={_fmt(s[P.bottom])}, s(1)={_fmt(s[P.top])}"))

    bad = next((a for a in P.elements if s[P.prime(a)] != ONE - s[a]), None)
    out.append(AxiomVerdict("S2", True) if bad is None else
               AxiomVerdict("S2", False, (bad,), f"s({bad}')={_fmt(s[P.prime(bad)])} != 1-{_fmt(s[bad])}"))

    bad = next(((a, b) for a, b in itertools.product(P.elements, repeat=2)
                if P.leq(a, b) and s[a] > s[b]), None)
    out.append(AxiomVerdict("S3", True) if bad is None else
               AxiomVerdict("S3", False, bad, f"{bad[0]} <= {bad[1]} but s decreases"))

    bad = None
    for a, b in P.disjoint_pairs():
        target = s[a] + s[b]
        if not any(s[r] == target for r in P.upper_bounds(a, b)):
            bad = (a, b)
            break
    out.append(AxiomVerdict("S4", True) if bad is None else
               AxiomVerdict("S4", False, bad, f"no upper bound r with s(r)={_fmt(s[bad[0]] + s[bad[1]])}"))
    return out


def check_specific_state(P: AbstractBoundedPoset, s: Mapping[str, Fraction]) -> StateVerdict:
    """Axioms S1-S4 for one state, given as a map from labels to values."""
    return StateVerdict(tuple(_specific_axioms(P, s)))


def check_pseudostate(P: AbstractBoundedPoset, s: Mapping[str, Fraction]) -> StateVerdict:
    """S1-S4 plus additivity on joins of disjoint pairs (S5).

    Raises :class:`PreconditionError` if some disjoint pair has no join.
    """
    axioms = _specific_axioms(P, s)
    bad = None
    for a, b in P.disjoint_pairs():
        j = P.join(a, b)
        if j is None:
            raise PreconditionError(f"disjoint pair ({a}, {b}) has no join")
        if bad is None and s[j] != s[a] + s[b]:
            bad = (a, b)
    axioms.append(AxiomVerdict("S5", True) if bad is None else
                  AxiomVerdict("S5", False, bad, "s(p ∨ q) != s(p) + s(q)"))
    return StateVerdict(tuple(axioms))


def _require_specific(P: AbstractBoundedPoset, T: StateTable) -> None:
    T.check_total(P)
    for n in T.state_names:
        if not check_specific_state(P, T.column(n)).holds:
            raise PreconditionError(f"state {n} is not a specific state")


def fullness_failure(P: AbstractBoundedPoset, T: StateTable) -> tuple[str, str] | None:
    for a, b in itertools.product(P.elements, repeat=2):
        if P.leq(a, b):
            continue
        if all(T(n, a) <= T(n, b) for n in T.state_names):
            return (a, b)
    return None


def uniform_witness(P: AbstractBoundedPoset, T: StateTable, a: str, b: str) -> str | None:
    """First ``r >= a, b`` with ``s(r) = s(a) + s(b)`` for every state at once."""
    for r in P.upper_bounds(a, b):
        if all(T(n, r) == T(n, a) + T(n, b) for n in T.state_names):
            return r
    return None


def uniformity_failure(P: AbstractBoundedPoset, T: StateTable) -> tuple[str, str] | None:
    for a, b in P.disjoint_pairs():
        if uniform_witness(P, T, a, b) is None:
            return (a, b)
    return None


def is_full(P: AbstractBoundedPoset, T: StateTable) -> bool:
    _require_specific(P, T)
    return fullness_failure(P, T) is None


def is_uniform(P: AbstractBoundedPoset, T: StateTable) -> bool:
    _require_specific(P, T)
    return uniformity_failure(P, T) is None


# ---------------------------------------------------------------------------
# families as posets, and back


def event_label(p: Event) -> str:
    return str(p)


def poset_of_family(F: EventFamily) -> AbstractBoundedPoset:
    """Forget the values: keep order, complement and bounds, labelled by ``str(p)``."""
    if not (check_condition(F, 1).holds and check_condition(F, 2).holds):
        raise PreconditionError("family needs 0, 1 and complements to form a poset with involution")
    labels = [event_label(p) for p in F.events]
    order = frozenset(
        (event_label(p), event_label(q)) for p in F for q in F if F._leq[F.index(p)][F.index(q)]
    )
    inv = {event_label(p): event_label(complement(p)) for p in F}
    return AbstractBoundedPoset(tuple(labels), order, inv, event_label(F.zero), event_label(F.one))


def canonical_states(F: EventFamily) -> StateTable:
    """One evaluation state per state label: ``s_x(p) = p(x)``."""
    values = {
        x: {event_label(p): p.values[i] for p in F.events} for i, x in enumerate(F.states)
    }
    return StateTable(F.states, values)


@dataclass(frozen=True)
class ConcreteRepresentation:
    carrier: EventFamily
    element_map: Mapping[str, Event]

    def to_dict(self) -> dict:
        return {
            "states": list(self.carrier.states),
            "events": [str(e) for e in self.carrier.events],
            "element_map": {k: str(v) for k, v in sorted(self.element_map.items())},
        }


def _evaluate(P: AbstractBoundedPoset, T: StateTable) -> ConcreteRepresentation:
    emap = {u: Event(tuple(T(t, u) for t in T.state_names)) for u in P.elements}
    carrier = EventFamily(T.state_names, tuple(emap.values()))
    return ConcreteRepresentation(carrier, emap)


def build_representation(P: AbstractBoundedPoset, T: StateTable) -> ConcreteRepresentation:
    """Map each element ``u`` to the event ``t -> t(u)`` over the states of ``T``."""
    _require_specific(P, T)
    pair = fullness_failure(P, T)
    if pair is not None:
        raise RepresentationError(f"state table is not full: {pair[0]} !<= {pair[1]}", pair)
    pair = uniformity_failure(P, T)
    if pair is not None:
        raise RepresentationError(
            f"state table is not uniform: no shared witness for ({pair[0]}, {pair[1]})", pair
        )
    return _evaluate(P, T)


def is_representation_isomorphism(P: AbstractBoundedPoset, rep: ConcreteRepresentation) -> bool:
    """Element map is a bijection onto the carrier, preserving and reflecting
    order and commuting with the involution."""
    emap = rep.element_map
    if set(emap) != set(P.elements):
        return False
    if len(set(emap.values())) != len(emap) or set(emap.values()) != set(rep.carrier.events):
        return False
    for a, b in itertools.product(P.elements, repeat=2):
        fa, fb = emap[a], emap[b]
        if P.leq(a, b) != rep.carrier._leq[rep.carrier.index(fa)][rep.carrier.index(fb)]:
            return False
    return all(emap[P.prime(a)] == complement(emap[a]) for a in P.elements)


def is_family_isomorphism(F: EventFamily, G: EventFamily, mapping: Mapping[Event, Event]) -> bool:
    """``mapping`` is a bijection F -> G preserving order both ways and complements."""
    if set(mapping) != set(F.events) or sorted(mapping.values()) != list(G.events):
        return False
    for p, q in itertools.product(F.events, repeat=2):
        a = F._leq[F.index(p)][F.index(q)]
        b = G._leq[G.index(mapping[p])][G.index(mapping[q])]
        if a != b:
            return False
    for p in F:
        pc = complement(p)
        if pc in F and mapping[pc] != complement(mapping[p]):
            return False
    return True


def round_trip(F: EventFamily) -> tuple[ConcreteRepresentation, bool]:
    """Family -> poset with evaluation states -> family; reports isomorphism."""
    P = poset_of_family(F)
    rep = build_representation(P, canonical_states(F))
    mapping = {p: rep.element_map[event_label(p)] for p in F}
    return rep, is_family_isomorphism(F, rep.carrier, mapping)


def two_valued_states(P: AbstractBoundedPoset) -> list[dict[str, Fraction]]:
    """All {0,1}-valued specific states, enumerated over complement orbits."""
    if any(P.prime(a) == a for a in P.elements):
        return []
    free = []
    seen = {P.bottom, P.top}
    for a in P.elements:
        if a not in seen:
            free.append(a)
            seen.update((a, P.prime(a)))
    found = []
    for bits in itertools.product((ZERO, ONE), repeat=len(free)):
        s = {P.bottom: ZERO, P.top: ONE}
        for a, v in zip(free, bits):
            s[a] = v
            s[P.prime(a)] = ONE - v
        if check_specific_state(P, s).holds:
            found.append(s)
    return found


def two_valued_representation(F: EventFamily) -> ConcreteRepresentation | None:
    """Represent F through its two-valued specific states, if they form a full set."""
    try:
        P = poset_of_family(F)
    except PreconditionError:
        return None
    found = two_valued_states(P)
    if not found:
        return None
    names = tuple(f"t{i + 1}" for i in range(len(found)))
    T = StateTable(names, dict(zip(names, found)))
    if fullness_failure(P, T) is not None:
        return None
    return _evaluate(P, T)


@dataclass(frozen=True)
class JoinSpecificStateCheck:
    vee_specific: bool
    sum_is_join_with_full_pseudostates: bool

    @property
    def agree(self) -> bool:
        return self.vee_specific == self.sum_is_join_with_full_pseudostates


def check_join_specific_states(F: EventFamily) -> JoinSpecificStateCheck:
    """Compare membership in the join-specific class with its state description."""
    from .classify import classify

    left = classify(F, strict=False).flags["vee_specific"]
    right = False
    if check_condition(F, 1).holds and check_condition(F, 2).holds:
        sums_are_joins = True
        for p, q in itertools.product(F.events, repeat=2):
            if not F.is_disjoint(p, q):
                continue
            total = pointwise_sum([p, q]).as_event()
            if total is None or total not in F or F.supremum(p, q) != total:
                sums_are_joins = False
                break
        if sums_are_joins:
            P = poset_of_family(F)
            T = canonical_states(F)
            pseudo = all(check_pseudostate(P, T.column(n)).holds for n in T.state_names)
            right = pseudo and fullness_failure(P, T) is None
    return JoinSpecificStateCheck(left, right)


# name used by the published interface
check_theorem4_shape = check_join_specific_states
