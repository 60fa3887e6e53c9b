"""Property-based invariants over generated symbols and specs."""

import math
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from zdlab.divisors import classify_left_zd, classify_right_zd, classify_zd
from zdlab.operators import OperatorSpec, assemble
from zdlab.symbols import (
    Block,
    ConstWeight,
    CPlusInv,
    Geom,
    Inv,
    Power,
    SelfMap,
    Shift,
    WeightSeq,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=10
)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def self_maps(draw):
    tail_start = draw(st.integers(1, 9))
    exceptions = {
        n: draw(st.integers(1, 12)) for n in range(1, tail_start)
    }
    tail = draw(
        st.one_of(
            st.builds(Shift, st.integers(0, 3)),
            st.builds(Block, st.integers(1, 3), st.integers(0, 2)),
            st.builds(Power, st.integers(2, 3)),
        )
    )
    return SelfMap(tail=tail, tail_start=tail_start, exceptions=exceptions)


@st.composite
def weights(draw):
    tail_start = draw(st.integers(1, 9))
    exceptions = {
        n: draw(st.one_of(st.just(F(0)), rationals)) for n in range(1, tail_start)
    }
    tail = draw(
        st.one_of(
            st.builds(ConstWeight, rationals),
            st.builds(CPlusInv, rationals, rationals),
            st.builds(Inv, nonzero_rationals),
            st.builds(
                Geom,
                nonzero_rationals,
                st.sampled_from([F(1, 2), F(-1, 2), F(1, 3), F(2, 3)]),
            ),
        )
    )
    return WeightSeq(tail=tail, tail_start=tail_start, exceptions=exceptions)


@st.composite
def specs(draw):
    p = draw(st.sampled_from([F(1), F(2), math.inf]))
    return OperatorSpec(draw(weights()), draw(self_maps()), p)


@given(self_maps(), st.integers(1, 60))
@settings(max_examples=150, deadline=None)
def test_fiber_matches_enumeration(phi, n):
    limit = 300
    brute = {m for m in range(1, limit + 1) if phi(m) == n}
    assert set(phi.fiber(n).elements_up_to(limit)) == brute


@given(self_maps())
@settings(max_examples=100, deadline=None)
def test_injectivity_matches_fiber_bound(phi):
    assert phi.is_injective() == (phi.fiber_bound() <= 1)


@given(weights(), nonzero_rationals)
@settings(max_examples=100, deadline=None)
def test_weight_predicates_scale_invariant(u, c):
    scaled = u.scaled(c)
    assert u.zero_set() == scaled.zero_set()
    assert u.is_bounded_away_from_zero() == scaled.is_bounded_away_from_zero()


@given(specs(), st.sampled_from([F(2), F(-1, 3), F(5), F(-2)]))
@settings(max_examples=80, deadline=None)
def test_classifiers_scale_invariant(spec, c):
    scaled = spec.scaled(c)
    assert classify_right_zd(spec).key() == classify_right_zd(scaled).key()
    assert classify_left_zd(spec).key() == classify_left_zd(scaled).key()
    assert classify_zd(spec).key() == classify_zd(scaled).key()


@given(
    specs(),
    st.lists(rationals, min_size=10, max_size=10),
    st.lists(rationals, min_size=10, max_size=10),
    rationals,
    rationals,
)
@settings(max_examples=60, deadline=None)
def test_assemble_linear(spec, x, y, a, b):
    A = assemble(spec, 10)
    combined = A.apply([a * xi + b * yi for xi, yi in zip(x, y)])
    split = [a * v + b * w for v, w in zip(A.apply(x), A.apply(y))]
    assert combined == split


@given(weights())
@settings(max_examples=100, deadline=None)
def test_zero_set_matches_pointwise_evaluation(u):
    zeros = u.zero_set()
    for n in range(1, 120):
        assert (u(n) == 0) == (n in zeros)
