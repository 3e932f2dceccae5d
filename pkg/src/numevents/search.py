"""Exhaustive search over small grids of families.

A search space fixes the number of states, a grid denominator ``d`` (values
``0, 1/d, ..., 1``) and a maximum family size. Families are produced in
canonical order (sorted events, then families compared by their sorted event
tuples) and checked independently, so a run can be split across worker
processes without changing its output.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .classify import (
    FLAG_NAMES,
    check_condition,
    classify,
    is_concrete_logic_form,
    demorgan_check,
    resolve_flag,
)
from .core import Event, EventFamily, complement
from .documents import family_to_dict, parse_family
from .states import check_join_specific_states, round_trip, two_valued_representation

WORKERS_ENV = "NUMEVENTS_WORKERS"
PREFILTERS = ("bounds", "complement")


class BudgetExhausted(RuntimeError):
    """The family cap was reached before the space was exhausted."""

    def __init__(self, examined: int):
        super().__init__(f"budget exhausted after {examined} families")
        self.examined = examined


@dataclass(frozen=True)
class SearchSpace:
    num_states: int
    denominator: int
    max_size: int
    require: tuple[str, ...] = PREFILTERS

    def __post_init__(self) -> None:
        if self.num_states < 1 or self.denominator < 1:
            raise ValueError("num_states and denominator must be positive")
        if self.max_size < 2:
            raise ValueError("max_size must be at least 2")
        req = tuple(self.require)
        unknown = set(req) - set(PREFILTERS)
        if unknown:
            raise ValueError(f"unknown prefilters {sorted(unknown)}")
        object.__setattr__(self, "require", req)

    def to_dict(self) -> dict:
        return {
            "num_states": self.num_states,
            "denominator": self.denominator,
            "max_size": self.max_size,
            "require": list(self.require),
        }


def grid_events(num_states: int, denominator: int) -> list[Event]:
    values = [Fraction(k, denominator) for k in range(denominator + 1)]
    return [Event(v) for v in itertools.product(values, repeat=num_states)]


def _candidate_sets(space: SearchSpace) -> Iterator[frozenset[Event]]:
    grid = grid_events(space.num_states, space.denominator)
    zero, one = grid[0], grid[-1]
    want_bounds = "bounds" in space.require
    if "complement" in space.require:
        orbits = sorted({frozenset((e, complement(e))) for e in grid}, key=min)
        forced = frozenset((zero, one)) if want_bounds else frozenset()
        free = [o for o in orbits if not (o & forced)]
        for r in range(len(free) + 1):
            for combo in itertools.combinations(free, r):
                members = forced.union(*combo)
                if 1 <= len(members) <= space.max_size:
                    yield members
    else:
        for r in range(1, space.max_size + 1):
            for combo in itertools.combinations(grid, r):
                members = frozenset(combo)
                if want_bounds and not (zero in members and one in members):
                    continue
                yield members


def enumerate_families(space: SearchSpace) -> Iterator[EventFamily]:
    """Every family meeting the prefilters, once each, in canonical order."""
    keys = sorted(tuple(sorted(m)) for m in _candidate_sets(space))
    states = tuple(f"x{i + 1}" for i in range(space.num_states))
    for events in keys:
        yield EventFamily(states, events)


# ---------------------------------------------------------------------------
# per-family checks of the proven class relationships

CHECKS = (
    "class_inclusions",
    "join_specific_split",
    "de_morgan",
    "varying_iff_complemented",
    "orthogonal_implies_disjoint",
    "varying_specific_characterization",
    "varying_specific_concrete",
    "varying_specific_faithful_algebra",
    "structured_faithful_algebra",
    "join_specific_states",
    "evaluation_round_trip",
)


def check_family(F: EventFamily) -> tuple[dict, list[dict]]:
    """Class flags of ``F`` and a list of failed theorem checks (ideally empty)."""
    rep = classify(F, strict=False)
    f = rep.flags
    failures = []

    def fail(check, detail):
        failures.append({"check": check, "detail": detail, "family": family_to_dict(F)})

    for msg in rep.consistency_errors:
        fail("join_specific_split" if "and weakly" in msg else "class_inclusions", msg)

    base = check_condition(F, 1).holds and check_condition(F, 2).holds
    if base:
        if not demorgan_check(F).holds:
            fail("de_morgan", "De Morgan law fails")
        if f["all_varying"] != f["complemented"]:
            fail("varying_iff_complemented",
                 f"all_varying={f['all_varying']} complemented={f['complemented']}")

    spec_varying = f["specific"] and f["all_varying"]
    if spec_varying:
        for p, q in itertools.product(F.events, repeat=2):
            if all(a + b <= 1 for a, b in zip(p.values, q.values)) and not F.is_disjoint(p, q):
                fail("orthogonal_implies_disjoint", f"{p} orthogonal to {q} but not disjoint")
                break
        cl = two_valued_representation(F)
        if cl is None or not is_concrete_logic_form(cl.carrier):
            fail("varying_specific_concrete", "no two-valued concrete representation")

    rhs1 = f["complemented"] and f["boolean_poset"] and f["gfe"]
    if spec_varying != rhs1:
        fail("varying_specific_characterization",
             f"specific&varying={spec_varying} complemented&boolean&gfe={rhs1}")
    ifa = f["algebra_of_s_probabilities"] and f["infimum_faithful"]
    if spec_varying != ifa:
        fail("varying_specific_faithful_algebra",
             f"specific&varying={spec_varying} algebra&infimum_faithful={ifa}")
    if f["structured"] != ifa:
        fail("structured_faithful_algebra",
             f"structured={f['structured']} algebra&infimum_faithful={ifa}")

    joins = check_join_specific_states(F)
    if not joins.agree:
        fail("join_specific_states", f"vee_specific={joins.vee_specific} "
                                     f"state_description={joins.sum_is_join_with_full_pseudostates}")

    if f["specific"]:
        try:
            _, iso = round_trip(F)
        except ValueError as exc:
            fail("evaluation_round_trip", f"evaluation states not full and uniform: {exc}")
        else:
            if not iso:
                fail("evaluation_round_trip", "round trip is not an isomorphism")

    flags = dict(f)
    official = f["vee_specific"]
    max_reading = f["specific"] and rep.join_reading_max.holds
    flags["_join_readings_differ"] = official != max_reading
    return flags, failures


def _check_chunk(chunk: Sequence[dict]) -> list[tuple[dict, list[dict]]]:
    return [check_family(parse_family(doc)) for doc in chunk]


def worker_count(workers: int | None = None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def _run(families: list[EventFamily], workers: int) -> list[tuple[dict, list[dict]]]:
    if workers <= 1 or len(families) < 2:
        return [check_family(F) for F in families]
    docs = [family_to_dict(F) for F in families]
    size = -(-len(docs) // workers)
    chunks = [docs[i:i + size] for i in range(0, len(docs), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = []
        for part in pool.map(_check_chunk, chunks):
            results.extend(part)
    return results


def _take(space: SearchSpace, budget: int | None) -> tuple[list[EventFamily], bool]:
    families = []
    for F in enumerate_families(space):
        if budget is not None and len(families) >= budget:
            return families, False
        families.append(F)
    return families, True


@dataclass
class SearchReport:
    space: SearchSpace
    status: str
    examined: int
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def violation_counts(self) -> dict:
        out = dict.fromkeys(CHECKS, 0)
        for v in self.violations:
            out[v["check"]] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "space": self.space.to_dict(),
            "status": self.status,
            "examined": self.examined,
            "counts": dict(self.counts),
            "violation_counts": self.violation_counts(),
            "violations": list(self.violations),
            "diagnostics": dict(self.diagnostics),
        }


def verify_theorems(space: SearchSpace, budget: int | None = None,
                    workers: int | None = None) -> SearchReport:
    """Check every family in the space; ``status`` is ``"inconclusive"`` if
    the budget stopped the run early."""
    families, complete = _take(space, budget)
    results = _run(families, worker_count(workers))
    counts = dict.fromkeys(FLAG_NAMES, 0)
    differ = []
    violations = []
    for F, (flags, failures) in zip(families, results):
        for k in FLAG_NAMES:
            counts[k] += bool(flags[k])
        if flags["_join_readings_differ"]:
            differ.append(family_to_dict(F))
        violations.extend(failures)
    return SearchReport(
        space=space,
        status="complete" if complete else "inconclusive",
        examined=len(families),
        counts=counts,
        violations=violations,
        diagnostics={
            "condition_6_readings_differ": len(differ),
            "condition_6_readings_differ_examples": differ[:5],
        },
    )


def _matches(flags: dict, want: Sequence[str], avoid: Sequence[str]) -> bool:
    if not all(flags[w] for w in want):
        return False
    return not (avoid and all(flags[a] for a in avoid))


def find_witness(space: SearchSpace, want: Sequence[str], avoid: Sequence[str] = (),
                 budget: int | None = None) -> EventFamily | None:
    """First family with every ``want`` flag and not every ``avoid`` flag.

    Returns ``None`` when the whole space has no such family and raises
    :class:`BudgetExhausted` when the budget ran out first.
    """
    want = [resolve_flag(w) for w in want]
    avoid = [resolve_flag(a) for a in avoid]
    examined = 0
    for F in enumerate_families(space):
        if budget is not None and examined >= budget:
            raise BudgetExhausted(examined)
        examined += 1
        if _matches(classify(F, strict=False).flags, want, avoid):
            return F
    return None
