from fractions import Fraction

import pytest
from hypothesis import strategies as st

from numevents import EventFamily, fixture_path, parse_family
from numevents.core import Event, complement

H = Fraction(1, 2)


def ev(*vals) -> Event:
    return Event(tuple(vals))


@pytest.fixture
def example1():
    return parse_family(fixture_path("example1.json"))


@pytest.fixture
def example2():
    return parse_family(fixture_path("example2.json"))


@pytest.fixture
def bounds2():
    return EventFamily.from_values([(0, 0), (1, 1)])


@pytest.fixture
def powerset2():
    return EventFamily.from_values([(0, 0), (0, 1), (1, 0), (1, 1)])


@pytest.fixture
def powerset3():
    import itertools
    return EventFamily.from_values(itertools.product((0, 1), repeat=3), states=["a", "b", "c"])


@st.composite
def grid_events(draw, arity=2, denominator=None):
    d = denominator or draw(st.sampled_from([1, 2, 3, 4]))
    return Event(tuple(Fraction(draw(st.integers(0, d)), d) for _ in range(arity)))


@st.composite
def families(draw, arity=None, closed=None, max_size=7):
    """Random families over a small grid; often with 0, 1 and complements so
    that the interesting classes are actually reached."""
    n = arity or draw(st.integers(1, 2))
    d = draw(st.sampled_from([1, 2, 3, 4]))
    events = set(draw(st.lists(grid_events(n, d), min_size=1, max_size=max_size)))
    if closed is None:
        closed = draw(st.booleans())
    if closed:
        events |= {Event.constant(0, n), Event.constant(1, n)}
        events |= {complement(e) for e in events}
    return EventFamily(tuple(f"x{i + 1}" for i in range(n)), tuple(events))


_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        if report.failed or name not in _CRITERIA:
            _CRITERIA[name] = "FAIL" if report.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        number, title = name.split("_", 3)[2:]
        terminalreporter.write_line(f"criterion {number}: {_CRITERIA[name]}  {title.replace('_', ' ')}")
