"""JSON documents for families and abstract posets.

Family document::

    {"states": ["x1", "x2"], "events": [["0", "0"], ["0", "1/2"], ...]}

Poset document::

    {"elements": [...], "order": [[a, b], ...], "involution": {a: a', ...},
     "bottom": "0", "top": "1", "states": {"t": {a: "1/2", ...}, ...}}

Rationals are strings ``"a/b"`` or integers; integers are also accepted as
JSON numbers. Floats are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import ONE, Event, EventFamily, format_rational, parse_rational
from .states import AbstractBoundedPoset, PosetError, StateTable


class DocumentError(ValueError):
    """Malformed document; the message names the offending field."""


def _rational(value, where: str):
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"{where}: expected a rational string, got {value!r}")
    try:
        x = parse_rational(value)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{where}: {exc}") from None
    return x


def load_document(source) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        text = Path(source).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise DocumentError("top level must be an object")
    return data


def parse_family(source) -> EventFamily:
    """Read a family document from a path, a JSON string or a dict."""
    return parse_family_rows(source)[0]


def parse_family_rows(source) -> tuple[EventFamily, list[Event]]:
    """Like :func:`parse_family`, also returning events in document order."""
    data = load_document(source)
    for key in ("states", "events"):
        if key not in data:
            raise DocumentError(f"missing field {key!r}")
    states = data["states"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise DocumentError("states: expected a list of strings")
    if len(set(states)) != len(states):
        raise DocumentError("states: labels must be distinct")
    rows = data["events"]
    if not isinstance(rows, list):
        raise DocumentError("events: expected a list")
    events = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise DocumentError(f"events[{i}]: expected a list")
        if len(row) != len(states):
            raise DocumentError(f"events[{i}]: arity {len(row)} != {len(states)} states")
        vals = []
        for j, v in enumerate(row):
            x = _rational(v, f"events[{i}][{j}]")
            if x > ONE:
                raise DocumentError(f"events[{i}][{j}]: value {format_rational(x)} outside [0,1]")
            vals.append(x)
        events.append(Event(tuple(vals)))
    if len(set(events)) != len(events):
        raise DocumentError("events: duplicate event")
    return EventFamily(tuple(states), tuple(events)), events


def family_to_dict(F: EventFamily) -> dict:
    return {
        "states": list(F.states),
        "events": [[format_rational(v) for v in e.values] for e in F.events],
    }


def dump_family(F: EventFamily) -> str:
    return json.dumps(family_to_dict(F), indent=2) + "\n"


def parse_poset(source) -> tuple[AbstractBoundedPoset, StateTable | None]:
    data = load_document(source)
    for key in ("elements", "order", "involution", "bottom", "top"):
        if key not in data:
            raise DocumentError(f"missing field {key!r}")
    elements = data["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise DocumentError("elements: expected a list of strings")
    order = []
    for i, pair in enumerate(data["order"]):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError(f"order[{i}]: expected a pair")
        order.append((str(pair[0]), str(pair[1])))
    inv = data["involution"]
    if not isinstance(inv, dict):
        raise DocumentError("involution: expected an object")
    try:
        P = AbstractBoundedPoset(tuple(elements), frozenset(order), dict(inv),
                                 str(data["bottom"]), str(data["top"]))
    except PosetError as exc:
        raise DocumentError(f"poset: {exc}") from None
    table = None
    if "states" in data:
        raw = data["states"]
        if not isinstance(raw, dict):
            raise DocumentError("states: expected an object")
        values = {}
        for name, col in raw.items():
            if not isinstance(col, dict):
                raise DocumentError(f"states.{name}: expected an object")
            values[name] = {}
            for el, v in col.items():
                if el not in P.elements:
                    raise DocumentError(f"states.{name}.{el}: unknown element")
                x = _rational(v, f"states.{name}.{el}")
                if x > ONE:
                    raise DocumentError(f"states.{name}.{el}: value {format_rational(x)} outside [0,1]")
                values[name][el] = x
            missing = [e for e in P.elements if e not in values[name]]
            if missing:
                raise DocumentError(f"states.{name}: no value for element {missing[0]!r}")
        table = StateTable(tuple(raw), values)
    return P, table
