"""Decide the closure conditions (1)-(8) and the derived classes of a family.

Every failing condition carries a witness tuple that can be replayed with
the primitives in :mod:`numevents.core`. Tuples are scanned in two passes:
first the *proper* tuples (pairwise distinct members, none of them the
constant 0 or 1), then the remaining ones, each pass in lexicographic
canonical order. A violation that only shows up on a degenerate tuple is
really a violation of a smaller condition, so proper witnesses are the
informative ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .core import (
    HALF,
    ONE,
    ZERO,
    Event,
    EventFamily,
    PointwiseVector,
    complement,
    is_orthogonal,
    pointwise_max,
    pointwise_sum,
)

CONDITIONS = (1, 2, 3, 4, 5, 6, 7, 8)

CLASS_ALIASES = {
    "C1": "specific",
    "C2": "vee_specific",
    "C3": "structured",
    "C4": "weakly_structured",
}

FLAG_NAMES = (
    "specific",
    "vee_specific",
    "structured",
    "weakly_structured",
    "gfe",
    "algebra_of_s_probabilities",
    "boolean_poset",
    "orthoposet",
    "complemented",
    "all_varying",
    "concrete_logic_form",
    "lattice",
    "boolean_algebra",
    "infimum_faithful",
    "orthomodular",
)


class PreconditionError(ValueError):
    """A check was requested on a family outside its domain."""


class InternalConsistencyError(AssertionError):
    """Flags contradict a proven implication between classes; a code defect."""


@dataclass(frozen=True)
class ConditionVerdict:
    condition: int | str
    holds: bool
    witness: tuple[Event, ...] | None = None
    reason: str = ""
    total: PointwiseVector | None = None
    violations: int = 0

    def to_dict(self) -> dict:
        d = {"condition": self.condition, "holds": self.holds, "violations": self.violations}
        if not self.holds:
            d["witness"] = [str(e) for e in self.witness or ()]
            d["reason"] = self.reason
            if self.total is not None:
                d["sum"] = str(self.total)
        return d


def resolve_flag(name: str) -> str:
    flag = CLASS_ALIASES.get(name.upper(), name)
    if flag not in FLAG_NAMES:
        raise KeyError(f"unknown class flag {name!r}")
    return flag


# ---------------------------------------------------------------------------
# tuple scanning


def _proper_indices(F: EventFamily) -> list[int]:
    return [i for i, e in enumerate(F.events) if not (e.is_zero() or e.is_one())]


def scan_tuples(F: EventFamily, k: int) -> Iterator[tuple[int, ...]]:
    """All ordered k-tuples of member indices, proper tuples first."""
    proper = _proper_indices(F)
    seen = set()
    for t in itertools.permutations(proper, k):
        seen.add(t)
    for t in sorted(seen):
        yield t
    for t in itertools.product(range(len(F)), repeat=k):
        if t not in seen:
            yield t


class _Tables:
    """Index-level orthogonality and disjointness for one family."""

    def __init__(self, F: EventFamily):
        ev = F.events
        n = len(ev)
        self.F = F
        self.orth = [[is_orthogonal(ev[i], ev[j]) for j in range(n)] for i in range(n)]
        self.disj = [[F.is_disjoint(ev[i], ev[j]) for j in range(n)] for i in range(n)]


def _tables(F: EventFamily) -> _Tables:
    cached = F.__dict__.get("_classify_tables")
    if cached is None:
        cached = _Tables(F)
        F.__dict__["_classify_tables"] = cached
    return cached


def _first_failure(F, k, premise, conclusion, condition) -> ConditionVerdict:
    first = None
    count = 0
    for t in scan_tuples(F, k):
        if not premise(t):
            continue
        failure = conclusion(t)
        if failure is None:
            continue
        count += 1
        if first is None:
            first = (t, failure)
    if first is None:
        return ConditionVerdict(condition, True)
    t, (reason, total) = first
    return ConditionVerdict(
        condition, False, tuple(F.events[i] for i in t), reason, total, count
    )


def _membership(F: EventFamily, total: PointwiseVector):
    if total in F:
        return None
    if not total.within_unit():
        return (f"{total} exceeds 1, not in P", total)
    return (f"{total} not in P", total)


def check_condition(F: EventFamily, cid: int | str) -> ConditionVerdict:
    """Verdict for closure condition ``cid`` (1..8, or ``"6max"``) on ``F``."""
    ev = F.events
    if cid == 1:
        missing = [name for name, e in (("0", F.zero), ("1", F.one)) if e not in F]
        if missing:
            return ConditionVerdict(1, False, (), f"constant {' and '.join(missing)} not in P",
                                    violations=len(missing))
        return ConditionVerdict(1, True)
    if cid == 2:
        bad = [p for p in ev if complement(p) not in F]
        if bad:
            return ConditionVerdict(2, False, (bad[0],), f"complement {complement(bad[0])} not in P",
                                    violations=len(bad))
        return ConditionVerdict(2, True)

    tb = _tables(F)
    orth, disj = tb.orth, tb.disj

    def sum_of(t):
        return pointwise_sum([ev[i] for i in t])

    if cid == 3:
        return _first_failure(F, 2, lambda t: disj[t[0]][t[1]],
                              lambda t: _membership(F, sum_of(t)), 3)
    if cid == 4:
        return _first_failure(F, 2, lambda t: orth[t[0]][t[1]],
                              lambda t: _membership(F, sum_of(t)), 4)
    if cid == 5:
        return _first_failure(
            F, 3,
            lambda t: orth[t[0]][t[1]] and orth[t[1]][t[2]] and orth[t[2]][t[0]],
            lambda t: _membership(F, sum_of(t)), 5)
    if cid == 6:
        def join_equals_sum(t):
            total = sum_of(t)
            miss = _membership(F, total)
            if miss is not None:
                return miss
            sup = F.supremum(ev[t[0]], ev[t[1]])
            if sup is None:
                return (f"no supremum in P, sum is {total}", total)
            if sup != total.as_event():
                return (f"supremum {sup} differs from sum {total}", total)
            return None
        return _first_failure(F, 2, lambda t: disj[t[0]][t[1]], join_equals_sum, 6)
    if cid == "6max":
        def max_equals_sum(t):
            total = sum_of(t)
            miss = _membership(F, total)
            if miss is not None:
                return miss
            mx = pointwise_max(ev[t[0]], ev[t[1]])
            if mx != total.as_event():
                return (f"pointwise max {mx} differs from sum {total}", total)
            return None
        return _first_failure(F, 2, lambda t: disj[t[0]][t[1]], max_equals_sum, "6max")
    if cid in (7, 8):
        def premise(t):
            return orth[t[0]][t[1]] and orth[t[1]][t[2]] and disj[t[0]][t[2]]
        if cid == 7:
            return _first_failure(F, 3, premise, lambda t: _membership(F, sum_of(t)), 7)

        def bounded(t):
            total = sum_of(t)
            return None if total.within_unit() else (f"{total} exceeds 1", total)
        return _first_failure(F, 3, premise, bounded, 8)
    raise KeyError(f"unknown condition {cid!r}")


# ---------------------------------------------------------------------------
# element and family predicates


def is_varying(p: Event) -> bool:
    """Constant 0, constant 1, or strictly above 1/2 somewhere and strictly below somewhere."""
    if p.is_zero() or p.is_one():
        return True
    return any(v > HALF for v in p.values) and any(v < HALF for v in p.values)


def _require_bounds_and_complements(F: EventFamily) -> None:
    if not F.has_bounds():
        raise PreconditionError("family must contain the constants 0 and 1")
    if not F.is_complement_closed():
        raise PreconditionError("family must be closed under p -> 1-p")


def _bounded_involutive(F: EventFamily) -> bool:
    return F.has_bounds() and F.is_complement_closed()


def is_complemented(F: EventFamily) -> bool:
    """Every member satisfies ``p ∧ p' = 0`` in the family."""
    _require_bounds_and_complements(F)
    return all(F.is_disjoint(p, complement(p)) for p in F)


def is_orthoposet(F: EventFamily) -> bool:
    # p -> 1-p is antitone and involutive on any complement-closed family
    return is_complemented(F)


def boolean_poset_verdict(F: EventFamily) -> ConditionVerdict:
    """Disjoint pairs must be orthogonal."""
    _require_bounds_and_complements(F)
    tb = _tables(F)
    return _first_failure(
        F, 2, lambda t: tb.disj[t[0]][t[1]],
        lambda t: None if tb.orth[t[0]][t[1]] else ("disjoint but not orthogonal", None),
        "boolean",
    )


def is_boolean_poset(F: EventFamily) -> bool:
    return boolean_poset_verdict(F).holds


def is_gfe(F: EventFamily) -> bool:
    return all(check_condition(F, c).holds for c in (1, 2, 4))


def is_algebra(F: EventFamily) -> bool:
    return is_gfe(F) and check_condition(F, 5).holds


@dataclass(frozen=True)
class DeMorganVerdict:
    holds: bool
    witness: tuple[Event, Event] | None = None
    reason: str = ""


def demorgan_check(F: EventFamily) -> DeMorganVerdict:
    """Existing joins dualise to meets of complements and vice versa."""
    _require_bounds_and_complements(F)
    for p, q in itertools.product(F.events, repeat=2):
        pc, qc = complement(p), complement(q)
        sup = F.supremum(p, q)
        if sup is not None and F.infimum(pc, qc) != complement(sup):
            return DeMorganVerdict(False, (p, q), "(p ∨ q)' != p' ∧ q'")
        inf = F.infimum(p, q)
        if inf is not None and F.supremum(pc, qc) != complement(inf):
            return DeMorganVerdict(False, (p, q), "(p ∧ q)' != p' ∨ q'")
    return DeMorganVerdict(True)


def is_concrete_logic_form(F: EventFamily) -> bool:
    """Two-valued events forming a set system with ∅, S, complements, disjoint unions."""
    if not all(p.is_two_valued() for p in F):
        return False
    if not _bounded_involutive(F):
        return False
    for p, q in itertools.combinations(F.events, 2):
        if all(a * b == ZERO for a, b in zip(p.values, q.values)):
            if pointwise_sum([p, q]) not in F:
                return False
    return True


def is_lattice(F: EventFamily) -> bool:
    return all(
        F.infimum(p, q) is not None and F.supremum(p, q) is not None
        for p, q in itertools.combinations(F.events, 2)
    )


def lattice_criterion(F: EventFamily) -> bool:
    """Pointwise maxima stay in the family; valid for structured concrete logics."""
    if not (check_condition(F, 1).holds and check_condition(F, 2).holds
            and check_condition(F, 7).holds):
        raise PreconditionError("lattice criterion needs a structured family")
    if not is_concrete_logic_form(F):
        raise PreconditionError("lattice criterion needs a two-valued concrete logic")
    return all(pointwise_max(p, q) in F for p, q in itertools.combinations(F.events, 2))


def is_orthomodular(F: EventFamily) -> bool:
    """``p <= q`` implies ``q = p ∨ (p' ∧ q)`` with all extrema taken in F."""
    if not is_orthoposet(F):
        raise PreconditionError("orthomodularity is only defined on orthoposets")
    for p in F:
        for q in F:
            if p == q or not _leq_in(F, p, q):
                continue
            m = F.infimum(complement(p), q)
            if m is None:
                return False
            if F.supremum(p, m) != q:
                return False
    return True


def _leq_in(F: EventFamily, p: Event, q: Event) -> bool:
    return F._leq[F.index(p)][F.index(q)]


def is_distributive(F: EventFamily) -> bool:
    """Meets distribute over joins for all triples; requires a lattice."""
    for p, q, r in itertools.product(F.events, repeat=3):
        left = F.infimum(p, F.supremum(q, r))
        a, b = F.infimum(p, q), F.infimum(p, r)
        if left is None or a is None or b is None or left != F.supremum(a, b):
            return False
    return True


def is_boolean_algebra(F: EventFamily) -> bool:
    if not _bounded_involutive(F) or not is_lattice(F):
        return False
    return is_complemented(F) and is_distributive(F)


# ---------------------------------------------------------------------------
# composite report


@dataclass
class ClassificationReport:
    family: EventFamily
    verdicts: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    boolean_poset: ConditionVerdict | None = None
    demorgan: DeMorganVerdict | None = None
    join_reading_max: ConditionVerdict | None = None
    consistency_errors: list = field(default_factory=list)

    def __getitem__(self, name: str) -> bool:
        return self.flags[resolve_flag(name)]

    def to_dict(self) -> dict:
        d = {
            "states": list(self.family.states),
            "events": [str(e) for e in self.family.events],
            "conditions": {str(c): v.to_dict() for c, v in self.verdicts.items()},
            "flags": {k: self.flags[k] for k in FLAG_NAMES},
            "diagnostics": {
                "condition_6_pointwise_max_reading": self.join_reading_max.to_dict(),
            },
        }
        if self.boolean_poset is not None:
            d["diagnostics"]["boolean_poset"] = self.boolean_poset.to_dict()
        if self.demorgan is not None:
            dm = {"holds": self.demorgan.holds}
            if not self.demorgan.holds:
                dm["witness"] = [str(e) for e in self.demorgan.witness]
                dm["reason"] = self.demorgan.reason
            d["diagnostics"]["demorgan"] = dm
        if self.consistency_errors:
            d["consistency_errors"] = list(self.consistency_errors)
        return d


def inclusion_violations(flags: dict) -> list[str]:
    """Proven inclusions between the four classes, as flag implications."""
    out = []
    if flags["structured"] and not flags["vee_specific"]:
        out.append("structured but not vee_specific")
    if flags["vee_specific"] and not flags["weakly_structured"]:
        out.append("vee_specific but not weakly_structured")
    if flags["vee_specific"] != (flags["specific"] and flags["weakly_structured"]):
        out.append("vee_specific != specific and weakly_structured")
    if flags["structured"] and not flags["specific"]:
        out.append("structured but not specific")
    return out


def classify(F: EventFamily, strict: bool = True) -> ClassificationReport:
    """Evaluate all conditions and class flags.

    With ``strict`` a contradiction between flags and the proven class
    inclusions raises :class:`InternalConsistencyError`; otherwise it is
    recorded on the report.
    """
    from .subalg import is_infimum_faithful

    verdicts = {c: check_condition(F, c) for c in CONDITIONS}
    h = {c: v.holds for c, v in verdicts.items()}
    base = h[1] and h[2]
    flags = dict.fromkeys(FLAG_NAMES, False)
    flags["specific"] = base and h[3]
    flags["vee_specific"] = flags["specific"] and h[6]
    flags["structured"] = base and h[7]
    flags["weakly_structured"] = base and h[8]
    flags["gfe"] = base and h[4]
    flags["algebra_of_s_probabilities"] = flags["gfe"] and h[5]
    flags["all_varying"] = all(is_varying(p) for p in F)
    flags["concrete_logic_form"] = is_concrete_logic_form(F)
    flags["lattice"] = is_lattice(F)
    flags["infimum_faithful"] = is_infimum_faithful(F)

    bp = dm = None
    if base:
        bp = boolean_poset_verdict(F)
        dm = demorgan_check(F)
        flags["boolean_poset"] = bp.holds
        flags["complemented"] = is_complemented(F)
        flags["orthoposet"] = flags["complemented"]
        flags["orthomodular"] = flags["orthoposet"] and is_orthomodular(F)
        flags["boolean_algebra"] = flags["lattice"] and flags["complemented"] and is_distributive(F)

    report = ClassificationReport(
        family=F,
        verdicts=verdicts,
        flags=flags,
        boolean_poset=bp,
        demorgan=dm,
        join_reading_max=check_condition(F, "6max"),
    )
    report.consistency_errors = inclusion_violations(flags)
    if strict and report.consistency_errors:
        raise InternalConsistencyError("; ".join(report.consistency_errors) + f" for {F}")
    return report
