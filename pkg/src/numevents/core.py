"""Exact numerical events and finite families of them.

An event is a function from a finite, ordered state set into [0, 1],
stored as a tuple of :class:`fractions.Fraction`. A family is a finite set
of events over a shared state set; order-theoretic queries (bounds, infima,
suprema, disjointness) are answered *inside* the family, never pointwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

_RATIONAL_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


class ArityError(ValueError):
    """Events of different lengths were combined."""


class MembershipError(ValueError):
    """An event that is not a member of the family was queried."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"a/b"`` or an integer into a nonnegative Fraction."""
    if isinstance(text, Fraction):
        value = text
    elif isinstance(text, int) and not isinstance(text, bool):
        value = Fraction(text)
    elif isinstance(text, str):
        m = _RATIONAL_RE.match(text)
        if m is None:
            raise ValueError(f"not a nonnegative rational: {text!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        value = Fraction(int(num), int(den) if den is not None else 1)
    else:
        raise TypeError(f"cannot read a rational from {type(text).__name__}")
    if value < 0:
        raise ValueError(f"negative value: {text!r}")
    return value


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coerce(values: Iterable) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("floats are not accepted; use Fraction or 'a/b' strings")
        out.append(parse_rational(v))
    return tuple(out)


@dataclass(frozen=True, order=True)
class PointwiseVector:
    """A nonnegative vector of rationals; raw sums and differences live here."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _coerce(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def within_unit(self) -> bool:
        return all(v <= ONE for v in self.values)

    def as_event(self) -> Event | None:
        """The vector as an event, or ``None`` if some coordinate exceeds 1."""
        if not self.within_unit():
            return None
        return Event(self.values)

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(v) for v in self.values) + ")"


@dataclass(frozen=True, order=True)
class Event:
    """A numerical event: one probability per state, each in [0, 1].

    Ordering via ``<`` is lexicographic (canonical order for sorting);
    use :func:`leq` for the order of functions.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = _coerce(self.values)
        for v in vals:
            if v > ONE:
                raise ValueError(f"event value {format_rational(v)} exceeds 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, *values) -> Event:
        return cls(tuple(values))

    @classmethod
    def constant(cls, value, arity: int) -> Event:
        return cls((parse_rational(value),) * arity)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def is_zero(self) -> bool:
        return all(v == ZERO for v in self.values)

    def is_one(self) -> bool:
        return all(v == ONE for v in self.values)

    def is_two_valued(self) -> bool:
        return all(v in (ZERO, ONE) for v in self.values)

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(v) for v in self.values) + ")"

    def __repr__(self) -> str:
        return f"Event{self}"


def _check_arity(*vectors: Sequence) -> int:
    n = len(vectors[0])
    for v in vectors[1:]:
        if len(v) != n:
            raise ArityError(f"arity mismatch: {len(v)} != {n}")
    return n


def leq(p: Event, q: Event) -> bool:
    """Pointwise order of functions."""
    _check_arity(p, q)
    return all(a <= b for a, b in zip(p.values, q.values))


def complement(p: Event) -> Event:
    return Event(tuple(ONE - v for v in p.values))


def pointwise_sum(ps: Sequence[Event]) -> PointwiseVector:
    if not ps:
        raise ValueError("pointwise_sum needs at least one event")
    _check_arity(*ps)
    return PointwiseVector(tuple(sum(col, ZERO) for col in zip(*(p.values for p in ps))))


def pointwise_diff(p: Event, q: Event) -> PointwiseVector:
    """``p - q``; requires ``q <= p`` so the result stays nonnegative."""
    _check_arity(p, q)
    if not leq(q, p):
        raise ValueError(f"{p} - {q} would be negative somewhere")
    return PointwiseVector(tuple(a - b for a, b in zip(p.values, q.values)))


def pointwise_min(p: Event, q: Event) -> Event:
    _check_arity(p, q)
    return Event(tuple(min(a, b) for a, b in zip(p.values, q.values)))


def pointwise_max(p: Event, q: Event) -> Event:
    _check_arity(p, q)
    return Event(tuple(max(a, b) for a, b in zip(p.values, q.values)))


def is_orthogonal(p: Event, q: Event) -> bool:
    """``p ⊥ q`` iff ``p <= 1 - q`` pointwise."""
    _check_arity(p, q)
    return all(a + b <= ONE for a, b in zip(p.values, q.values))


@dataclass(frozen=True)
class EventFamily:
    """A finite set of distinct events over an ordered list of state labels.

    Events are kept sorted lexicographically; the index of an event in
    ``events`` is its canonical position. Duplicates are rejected.
    """

    states: tuple[str, ...]
    events: tuple[Event, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        states = tuple(str(s) for s in self.states)
        if len(set(states)) != len(states):
            raise ValueError("state labels must be distinct")
        events = tuple(e if isinstance(e, Event) else Event(tuple(e)) for e in self.events)
        for e in events:
            if len(e) != len(states):
                raise ArityError(f"event {e} has arity {len(e)}, expected {len(states)}")
        if len(set(events)) != len(events):
            raise ValueError("duplicate events in family")
        events = tuple(sorted(events))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(events)})

    @classmethod
    def from_values(cls, rows: Iterable[Sequence], states: Sequence[str] | None = None) -> EventFamily:
        events = [Event(tuple(r)) for r in rows]
        if states is None:
            arity = len(events[0]) if events else 0
            states = [f"s{i + 1}" for i in range(arity)]
        return cls(tuple(states), tuple(events))

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __contains__(self, item) -> bool:
        if isinstance(item, PointwiseVector):
            item = item.as_event()
            if item is None:
                return False
        return item in self._index

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.events) + "}"

    @property
    def arity(self) -> int:
        return len(self.states)

    @property
    def zero(self) -> Event:
        return Event.constant(0, self.arity)

    @property
    def one(self) -> Event:
        return Event.constant(1, self.arity)

    def index(self, p: Event) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise MembershipError(f"{p} is not in the family") from None

    # Order tables, computed once per family.

    @cached_property
    def _leq(self) -> list[list[bool]]:
        ev = self.events
        return [[leq(a, b) for b in ev] for a in ev]

    @cached_property
    def _down(self) -> list[frozenset[int]]:
        n = len(self.events)
        return [frozenset(j for j in range(n) if self._leq[j][i]) for i in range(n)]

    @cached_property
    def _up(self) -> list[frozenset[int]]:
        n = len(self.events)
        return [frozenset(j for j in range(n) if self._leq[i][j]) for i in range(n)]

    def _greatest(self, candidates: frozenset[int]) -> int | None:
        for c in candidates:
            if all(self._leq[d][c] for d in candidates):
                return c
        return None

    def _least(self, candidates: frozenset[int]) -> int | None:
        for c in candidates:
            if all(self._leq[c][d] for d in candidates):
                return c
        return None

    @cached_property
    def _inf(self) -> list[list[int | None]]:
        n = len(self.events)
        return [[self._greatest(self._down[i] & self._down[j]) for j in range(n)] for i in range(n)]

    @cached_property
    def _sup(self) -> list[list[int | None]]:
        n = len(self.events)
        return [[self._least(self._up[i] & self._up[j]) for j in range(n)] for i in range(n)]

    # Public queries over members.

    def lower_bounds(self, p: Event, q: Event) -> frozenset[Event]:
        i, j = self.index(p), self.index(q)
        return frozenset(self.events[k] for k in self._down[i] & self._down[j])

    def upper_bounds(self, p: Event, q: Event) -> frozenset[Event]:
        i, j = self.index(p), self.index(q)
        return frozenset(self.events[k] for k in self._up[i] & self._up[j])

    def infimum(self, p: Event, q: Event) -> Event | None:
        """Greatest lower bound of ``p`` and ``q`` within the family, or None."""
        k = self._inf[self.index(p)][self.index(q)]
        return None if k is None else self.events[k]

    def supremum(self, p: Event, q: Event) -> Event | None:
        k = self._sup[self.index(p)][self.index(q)]
        return None if k is None else self.events[k]

    def is_disjoint(self, p: Event, q: Event) -> bool:
        """``p ∧ q = 0``: every common lower bound in the family is constant 0."""
        return all(x.is_zero() for x in self.lower_bounds(p, q))

    def has_bounds(self) -> bool:
        return self.zero in self and self.one in self

    def is_complement_closed(self) -> bool:
        return all(complement(p) in self for p in self.events)


# Module-level aliases matching the operation names used throughout.

def lower_bounds(F: EventFamily, p: Event, q: Event) -> frozenset[Event]:
    return F.lower_bounds(p, q)


def infimum_in(F: EventFamily, p: Event, q: Event) -> Event | None:
    return F.infimum(p, q)


def supremum_in(F: EventFamily, p: Event, q: Event) -> Event | None:
    return F.supremum(p, q)


def is_disjoint(F: EventFamily, p: Event, q: Event) -> bool:
    return F.is_disjoint(p, q)
