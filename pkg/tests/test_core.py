from fractions import Fraction

import pytest
from hypothesis import given

from conftest import H, ev, families, grid_events
from numevents.core import (
    ArityError,
    Event,
    EventFamily,
    MembershipError,
    PointwiseVector,
    complement,
    infimum_in,
    is_disjoint,
    is_orthogonal,
    leq,
    lower_bounds,
    parse_rational,
    pointwise_diff,
    pointwise_max,
    pointwise_min,
    pointwise_sum,
    supremum_in,
)

import oracle

Q = Fraction(1, 4)
TQ = Fraction(3, 4)


class TestRational:
    @pytest.mark.parametrize("text, value", [
        ("1/2", Fraction(1, 2)), ("2/4", Fraction(1, 2)), ("0", 0), ("1", 1), (3, 3), (" 5 / 4 ", Fraction(5, 4)),
    ])
    def test_parse(self, text, value):
        x = parse_rational(text)
        assert x == value
        assert x.denominator > 0

    @pytest.mark.parametrize("bad", ["-1/2", "1/0", "0.5", "a", ""])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_reduced_form(self):
        x = parse_rational("6/8")
        assert (x.numerator, x.denominator) == (3, 4)


class TestEvent:
    def test_range_enforced(self):
        with pytest.raises(ValueError):
            ev(0, "3/2")

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            ev(0.5, 0)

    def test_str(self):
        assert str(ev(0, "1/2")) == "(0,1/2)"


class TestOrder:
    def test_leq_example_elements(self):
        assert leq(ev(0, H), ev(H, H))

    def test_leq_reflexive(self):
        p = ev(H, TQ)
        assert leq(p, p)

    def test_leq_incomparable(self):
        assert not leq(ev(H, TQ), ev(1, H))

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            leq(ev(0), ev(0, 0))


class TestComplement:
    def test_example(self):
        assert complement(ev(H, Q)) == ev(H, TQ)

    def test_zero_to_one(self):
        assert complement(Event.constant(0, 3)) == Event.constant(1, 3)

    @given(grid_events())
    def test_involution(self, p):
        assert complement(complement(p)) == p

    @given(grid_events(denominator=4), grid_events(denominator=4))
    def test_antitone(self, p, q):
        if leq(p, q):
            assert leq(complement(q), complement(p))


class TestArithmetic:
    def test_sum_exceeding_one(self):
        s = pointwise_sum([ev(0, H), ev(H, H), ev(H, Q)])
        assert s == PointwiseVector((1, Fraction(5, 4)))
        assert s.as_event() is None

    def test_sum_with_zero(self):
        p = ev(Q, TQ)
        assert pointwise_sum([p, Event.constant(0, 2)]).as_event() == p

    def test_sum_pair(self):
        assert pointwise_sum([ev(0, H), ev(H, 0)]).as_event() == ev(H, H)

    def test_sum_empty(self):
        with pytest.raises(ValueError):
            pointwise_sum([])

    def test_diff(self):
        assert pointwise_diff(ev(1, 1), ev(H, Q)) == PointwiseVector((H, TQ))
        assert pointwise_diff(ev(H, H), ev(0, H)) == PointwiseVector((H, 0))

    def test_diff_self_is_zero(self):
        p = ev(Q, H)
        assert pointwise_diff(p, p) == PointwiseVector((0, 0))

    def test_diff_negative(self):
        with pytest.raises(ValueError):
            pointwise_diff(ev(0, H), ev(H, 0))

    def test_min_max(self):
        assert pointwise_min(ev(0, H), ev(H, Q)) == ev(0, Q)
        assert pointwise_max(ev(0, H), ev(H, 0)) == ev(H, H)
        p = ev(Q, 1)
        assert pointwise_max(p, p) == p

    @given(grid_events(denominator=4), grid_events(denominator=4), grid_events(denominator=4))
    def test_sum_commutative_associative(self, p, q, r):
        assert pointwise_sum([p, q]) == pointwise_sum([q, p])
        pq = pointwise_sum([p, q]).values
        qr = pointwise_sum([q, r]).values
        assert pointwise_sum([p, q, r]).values == tuple(a + b for a, b in zip(pq, r.values))
        assert pointwise_sum([p, q, r]).values == tuple(a + b for a, b in zip(p.values, qr))

    @given(grid_events())
    def test_sum_with_complement_is_one(self, p):
        assert pointwise_sum([p, complement(p)]).as_event() == Event.constant(1, len(p))


class TestFamilyQueries:
    def test_family_canonical_and_deduplicated(self):
        F = EventFamily.from_values([(1, 1), (0, 0)])
        assert F.events == (ev(0, 0), ev(1, 1))
        with pytest.raises(ValueError):
            EventFamily.from_values([(0, 0), (0, 0)])
        with pytest.raises(ArityError):
            EventFamily(("a", "b"), (ev(0),))

    def test_lower_bounds_example1(self, example1):
        assert lower_bounds(example1, ev(0, H), ev(H, Q)) == {ev(0, 0)}

    def test_lower_bounds_top(self, powerset2):
        one = powerset2.one
        assert lower_bounds(powerset2, one, one) == set(powerset2.events)

    def test_lower_bounds_of_zero(self, example1):
        assert lower_bounds(example1, example1.zero, ev(H, TQ)) == {example1.zero}

    def test_membership_error(self, example1):
        with pytest.raises(MembershipError):
            lower_bounds(example1, ev(Q, Q), ev(0, 0))

    def test_infimum_example2(self, example2):
        assert infimum_in(example2, ev(0, H), ev(H, 0)) == ev(0, 0)

    def test_infimum_with_one(self, example1):
        p = ev(H, Q)
        assert infimum_in(example1, p, example1.one) == p

    def test_supremum_example1(self, example1):
        assert supremum_in(example1, ev(0, H), ev(H, Q)) == ev(H, H)

    def test_supremum_missing_is_none_not_zero(self, example2):
        # upper bounds (1/2,1), (1,1/2), (1,1): no least one
        assert supremum_in(example2, ev(0, H), ev(H, 0)) is None

    def test_disjoint(self, example1):
        assert is_disjoint(example1, ev(0, H), ev(H, Q))
        assert is_disjoint(example1, ev(H, TQ), example1.zero)
        assert not is_disjoint(example1, ev(0, H), ev(H, H))

    def test_orthogonal(self):
        assert is_orthogonal(ev(0, H), ev(H, H))
        assert not is_orthogonal(ev(H, TQ), ev(H, H))

    @given(families())
    def test_extrema_agree_with_oracle(self, F):
        P = [e.values for e in F]
        for p in F:
            for q in F:
                inf = infimum_in(F, p, q)
                sup = supremum_in(F, p, q)
                assert (inf.values if inf else None) == oracle.inf(P, p.values, q.values)
                assert (sup.values if sup else None) == oracle.sup(P, p.values, q.values)
                assert is_disjoint(F, p, q) == oracle.disjoint(P, p.values, q.values)

    @given(families(closed=True))
    def test_disjoint_iff_infimum_zero(self, F):
        for p in F:
            for q in F:
                assert is_disjoint(F, p, q) == (infimum_in(F, p, q) == F.zero)

    @given(families())
    def test_infimum_universal_property(self, F):
        for p in F:
            for q in F:
                m = infimum_in(F, p, q)
                if m is None:
                    continue
                assert leq(m, p) and leq(m, q)
                for x in F:
                    if leq(x, p) and leq(x, q):
                        assert leq(x, m)
