"""Command line entry point: ``numevents <command> ...``.

Exit codes: 0 success, 2 parse or validation error, 3 precondition
violation, 4 theorem violation found by a sweep, 5 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import FLAG_NAMES, PreconditionError, classify
from .core import pointwise_sum
from .documents import DocumentError, family_to_dict, load_document, parse_family_rows, parse_poset
from .search import BudgetExhausted, SearchSpace, find_witness, verify_theorems
from .states import (
    RepresentationError,
    build_representation,
    canonical_states,
    check_pseudostate,
    check_specific_state,
    fullness_failure,
    poset_of_family,
    two_valued_representation,
    uniformity_failure,
)
from .subalg import SubsetSelection, boolean_subalgebra_oracle, product_criterion

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VIOLATION = 4
EXIT_INCONCLUSIVE = 5


def _yes(flag: bool | None) -> str:
    return "n/a" if flag is None else ("yes" if flag else "no")


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args) -> int:
    F, _ = parse_family_rows(args.path)
    report = classify(F, strict=False)
    lines = [f"family {F}", "", "conditions:"]
    for c, v in report.verdicts.items():
        line = f"  ({c}) {_yes(v.holds)}"
        if not v.holds:
            w = ", ".join(str(e) for e in v.witness)
            line += f"  witness [{w}]: {v.reason}"
            if v.violations > 1:
                line += f"  ({v.violations} violating tuples)"
        lines.append(line)
    lines += ["", "classes:"]
    for name in FLAG_NAMES:
        lines.append(f"  {name}: {_yes(report.flags[name])}")
    mx = report.join_reading_max
    lines += ["", "diagnostics:",
              f"  condition (6) with pointwise max instead of supremum: {_yes(mx.holds)}"
              + ("" if mx.holds else f"  [{', '.join(map(str, mx.witness))}]: {mx.reason}")]
    if report.demorgan is not None:
        lines.append(f"  De Morgan laws: {_yes(report.demorgan.holds)}")
    for msg in report.consistency_errors:
        lines.append(f"  INTERNAL INCONSISTENCY: {msg}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_VIOLATION if report.consistency_errors else EXIT_OK


# ---------------------------------------------------------------------------
# states


def _state_report(P, T, forced_sum: dict | None) -> tuple[dict, list[str], bool]:
    data = {"states": {}, "full": None, "uniform": None}
    lines = []
    all_specific = True
    for name in T.state_names:
        col = T.column(name)
        verdict = check_specific_state(P, col)
        entry = verdict.to_dict()
        all_specific &= verdict.holds
        try:
            s5 = check_pseudostate(P, col)["S5"]
            entry["S5"] = s5.to_dict()
        except PreconditionError as exc:
            entry["S5"] = {"axiom": "S5", "holds": None, "reason": str(exc)}
        data["states"][name] = entry
        axioms = " ".join(f"{a.axiom}:{_yes(a.holds)}" for a in verdict.axioms)
        lines.append(f"state {name}: {axioms} S5:{_yes(entry['S5']['holds'])}")
        for a in verdict.axioms:
            if not a.holds:
                lines.append(f"    {a.axiom} fails at ({', '.join(a.witness)}): {a.reason}")
    if not all_specific:
        lines.append("full: n/a, uniform: n/a (some state is not a specific state)")
        return data, lines, False
    pair = fullness_failure(P, T)
    data["full"] = pair is None
    if pair is not None:
        data["full_witness"] = list(pair)
    upair = uniformity_failure(P, T)
    data["uniform"] = upair is None
    text = f"full: {_yes(pair is None)}"
    if pair is not None:
        text += f", pair ({pair[0]}, {pair[1]}) ordered by every state but not in P"
    text += f", uniform: {_yes(upair is None)}"
    if upair is not None:
        data["uniform_witness"] = list(upair)
        if forced_sum is not None:
            r = forced_sum[upair]
            data["forced_r"] = r
            text += f", pair ({upair[0]},{upair[1]}) forces r={r} ∉ P"
        else:
            text += f", pair ({upair[0]}, {upair[1]}) has no common witness r"
    lines.append(text)
    return data, lines, True


def cmd_states(args) -> int:
    data = load_document(args.path)
    if "events" in data:
        if args.verify_table:
            raise DocumentError("--verify-table needs a poset document with states")
        F, _ = parse_family_rows(data)
        P = poset_of_family(F)
        T = canonical_states(F)
        forced = {}
        for p in F:
            for q in F:
                forced[(str(p), str(q))] = str(pointwise_sum([p, q]))
    else:
        if args.check_canonical:
            raise DocumentError("--check-canonical needs a family document")
        P, T = parse_poset(data)
        if T is None:
            raise DocumentError("poset document has no 'states' table")
        forced = None
    report, lines, ok = _state_report(P, T, forced)
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if ok else EXIT_PRECONDITION


# ---------------------------------------------------------------------------
# subalgebra


def cmd_subalgebra(args) -> int:
    F, rows = parse_family_rows(args.path)
    try:
        idx = [int(x) for x in args.elements.split(",") if x.strip()]
    except ValueError:
        raise DocumentError(f"--elements: expected comma separated indices, got {args.elements!r}")
    for i in idx:
        if not 0 <= i < len(rows):
            raise DocumentError(f"--elements: index {i} out of range 0..{len(rows) - 1}")
    sel = SubsetSelection(F, tuple(rows[i] for i in idx))
    criterion = product_criterion(sel)
    sub = boolean_subalgebra_oracle(sel)
    data = {
        "chosen": [str(p) for p in sel.chosen],
        "product_criterion": criterion,
        "oracle": None if sub is None else [str(e) for e in sub.events],
        "agree": criterion == (sub is not None),
    }
    lines = [
        "chosen: " + ", ".join(data["chosen"]),
        f"product criterion: {_yes(criterion)}",
        "oracle: " + ("none" if sub is None else f"minimal Boolean subalgebra {sub}"),
        f"agreement: {_yes(data['agree'])}",
    ]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# represent


def cmd_represent(args) -> int:
    data = load_document(args.path)
    if "events" in data:
        F, _ = parse_family_rows(data)
        rep = two_valued_representation(F)
        if rep is None:
            out = {"representation": None}
            _emit(args, out, "no full set of two-valued states; no concrete representation")
            return EXIT_OK
    else:
        P, T = parse_poset(data)
        if T is None:
            raise DocumentError("poset document has no 'states' table")
        rep = build_representation(P, T)
    out = {"representation": rep.to_dict(), "carrier": family_to_dict(rep.carrier)}
    lines = [f"carrier over states {', '.join(rep.carrier.states)}: {rep.carrier}"]
    for k, v in sorted(rep.element_map.items()):
        lines.append(f"  {k} -> {v}")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def _flag_list(values) -> list[str]:
    out = []
    for v in values or ():
        out.extend(x.strip() for x in v.split(",") if x.strip())
    return out


def cmd_search(args) -> int:
    require = tuple(r for r, off in (("bounds", args.no_bounds), ("complement", args.no_complement))
                    if not off)
    try:
        space = SearchSpace(args.states, args.denominator, args.max_size, require)
    except ValueError as exc:
        raise DocumentError(str(exc))
    want, avoid = _flag_list(args.want), _flag_list(args.avoid)
    if want or avoid:
        try:
            F = find_witness(space, want, avoid, budget=args.budget)
        except KeyError as exc:
            raise DocumentError(str(exc))
        except BudgetExhausted as exc:
            data = {"space": space.to_dict(), "status": "inconclusive", "examined": exc.examined}
            _emit(args, data, f"inconclusive: {exc}")
            return EXIT_INCONCLUSIVE
        if F is None:
            data = {"space": space.to_dict(), "status": "none", "witness": None}
            _emit(args, data, "none: no family in the space matches")
            return EXIT_OK
        flags = classify(F, strict=False).flags
        data = {"space": space.to_dict(), "status": "found", "witness": family_to_dict(F),
                "flags": flags}
        lines = [f"witness: {F}"] + [f"  {k}: {_yes(flags[k])}" for k in FLAG_NAMES]
        _emit(args, data, "\n".join(lines))
        return EXIT_OK

    report = verify_theorems(space, budget=args.budget, workers=args.workers)
    data = report.to_dict()
    lines = [f"status: {report.status}, families examined: {report.examined}", "class counts:"]
    lines += [f"  {k}: {v}" for k, v in report.counts.items()]
    lines.append("violations:")
    lines += [f"  {k}: {v}" for k, v in report.violation_counts().items()]
    for v in report.violations[:20]:
        events = ", ".join("(" + ",".join(e) + ")" for e in v["family"]["events"])
        lines.append(f"  {v['check']}: {{{events}}}: {v['detail']}")
    if len(report.violations) > 20:
        lines.append(f"  ... {len(report.violations) - 20} more (see --json)")
    lines.append(f"condition (6) readings differ on {report.diagnostics['condition_6_readings_differ']}"
                 " families")
    _emit(args, data, "\n".join(lines))
    if report.violations:
        return EXIT_VIOLATION
    return EXIT_OK if report.status == "complete" else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numevents", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable report")
        return p

    p = common(sub.add_parser("classify", help="decide conditions (1)-(8) and all classes"))
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("states", help="check specific states, fullness, uniformity"))
    p.add_argument("path")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--check-canonical", action="store_true",
                   help="evaluation states of a family document (default for families)")
    g.add_argument("--verify-table", action="store_true",
                   help="state table of a poset document (default for posets)")
    p.set_defaults(func=cmd_states)

    p = common(sub.add_parser("subalgebra", help="Boolean subalgebra containment"))
    p.add_argument("path")
    p.add_argument("--elements", required=True,
                   help="comma separated 0-based indices into the document's events")
    p.set_defaults(func=cmd_subalgebra)

    p = common(sub.add_parser("represent", help="concrete representation by states"))
    p.add_argument("path")
    p.set_defaults(func=cmd_represent)

    p = common(sub.add_parser("search", help="sweep a grid space or mine a witness"))
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--denominator", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--want", action="append", help="class flags that must hold (C1..C4 or names)")
    p.add_argument("--avoid", action="append", help="class flags that must not all hold")
    p.add_argument("--budget", type=int, default=None, help="cap on families examined")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $NUMEVENTS_WORKERS or 1)")
    p.add_argument("--no-bounds", action="store_true", help="do not require 0 and 1")
    p.add_argument("--no-complement", action="store_true", help="do not require complements")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, RepresentationError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
