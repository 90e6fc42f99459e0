import math
from itertools import product

import pytest
from hypothesis import given, settings

from idealgraph.errors import (
    EmptySpecError,
    LengthMismatchError,
    NoComplementVertexError,
    NotAFieldError,
    OverflowingSpecError,
    SpecSyntaxError,
)
from idealgraph.ring import (
    Family,
    RingSpec,
    comparable,
    complement,
    enumerate_ideals,
    is_in_m,
    minimal_ideal,
    nzc,
    parse_ring_spec,
    properly_contains,
    render_ideal,
    short_label,
    vertex_count,
)

from .strategies import specs


@pytest.mark.parametrize(
    "text, lengths",
    [
        ("F,F,F", (0, 0, 0)),
        ("C2,F", (2, 0)),
        ("C1,C1", (1, 1)),
        (" C3 , F ,C1 ", (3, 0, 1)),
        ("F", (0,)),
    ],
)
def test_parse(text, lengths):
    assert parse_ring_spec(text).chain_lengths == lengths


@pytest.mark.parametrize("text", ["F,,F", "G", "C", "C-1", "C1.5", "F;F", "c2"])
def test_parse_rejects_syntax(text):
    with pytest.raises(SpecSyntaxError):
        parse_ring_spec(text)


def test_parse_rejects_c0():
    # a chain ring needs at least one non-trivial ideal; the field is F
    with pytest.raises(SpecSyntaxError):
        parse_ring_spec("C0,F")


@pytest.mark.parametrize("text", ["", "   "])
def test_parse_rejects_empty(text):
    with pytest.raises(EmptySpecError):
        parse_ring_spec(text)


def test_parse_rejects_huge():
    with pytest.raises(OverflowingSpecError):
        parse_ring_spec("C1000,C1000,C1000")
    with pytest.raises(OverflowingSpecError):
        parse_ring_spec("C3,C3", max_vertices=10)


def test_spec_str_roundtrip():
    spec = RingSpec((2, 0, 1))
    assert str(spec) == "C2,F,C1"
    assert parse_ring_spec(str(spec)) == spec


@pytest.mark.parametrize(
    "lengths, family",
    [
        ((0, 0, 0), Family.FIELDS),
        ((1, 2), Family.PIR),
        ((1, 0), Family.MIXED),
        ((2, 2, 0, 0, 0), Family.MIXED),
        ((0, 0), None),
        ((1,), None),
        ((0,), None),
    ],
)
def test_family(lengths, family):
    assert RingSpec(lengths).family is family


@pytest.mark.parametrize(
    "lengths, count", [((0, 0, 0, 0), 14), ((2, 0), 6), ((1, 0), 4), ((0, 0, 0), 6), ((1, 1), 7)]
)
def test_vertex_count(lengths, count):
    assert vertex_count(RingSpec(lengths)) == count
    assert len(enumerate_ideals(RingSpec(lengths))) == count


def test_enumerate_small():
    assert enumerate_ideals(RingSpec((1, 0))) == [(0, 1), (1, 0), (1, 1), (2, 0)]
    assert enumerate_ideals(RingSpec((0, 0))) == [(0, 1), (1, 0)]
    assert enumerate_ideals(RingSpec((3,))) == [(1,), (2,), (3,)]


def test_containment_examples():
    assert properly_contains((2, 1), (1, 1))
    assert not properly_contains((1, 1), (1, 1))
    assert not properly_contains((2, 0), (1, 1))
    assert not comparable((2, 0), (1, 1))
    assert comparable((1, 0, 1), (1, 1, 1))


def test_containment_rejects_mismatched_lengths():
    with pytest.raises(LengthMismatchError):
        properly_contains((1, 0), (1, 0, 0))


def test_complement_examples():
    fields = RingSpec((0, 0, 0))
    assert complement(fields, (1, 0, 0)) == (0, 1, 1)
    assert complement(fields, (0, 1, 1)) == (1, 0, 0)
    mixed = RingSpec((2, 0))
    # a proper level maps to 0, a zero slot to the whole component
    assert complement(mixed, (1, 0)) == (0, 1)
    assert complement(mixed, (3, 0)) == (0, 1)
    with pytest.raises(NoComplementVertexError):
        complement(mixed, (1, 1))


def test_is_in_m_and_nzc():
    spec = RingSpec((2, 0, 0))
    assert is_in_m(spec, (3, 0, 1))
    assert not is_in_m(spec, (2, 0, 1))
    assert nzc((3, 0, 0)) == 2
    assert nzc((1, 1, 1)) == 0


def test_minimal_ideal():
    spec = RingSpec((2, 0, 0))
    assert minimal_ideal(spec, 2) == (0, 1, 0)
    assert minimal_ideal(spec, 3) == (0, 0, 1)
    with pytest.raises(NotAFieldError):
        minimal_ideal(spec, 1)
    with pytest.raises(IndexError):
        minimal_ideal(spec, 4)


def test_rendering():
    spec = RingSpec((2, 0, 0))
    assert render_ideal(spec, (1, 1, 0)) == "I1 x F x 0"
    assert render_ideal(spec, (3, 0, 1)) == "R x 0 x F"
    assert short_label(spec, (0, 1, 0)) == "X2"
    assert short_label(spec, (3, 0, 1)) == "X2^c"


# -- properties over the m <= 4, n_i <= 3 range ------------------------------


ALL_SMALL = [RingSpec(s) for k in range(1, 5) for s in product(range(4), repeat=k)]


@pytest.mark.parametrize("spec", ALL_SMALL, ids=str)
def test_enumeration_complete(spec):
    ideals = enumerate_ideals(spec)
    assert len(ideals) == vertex_count(spec) == math.prod(t + 1 for t in spec.tops) - 2
    assert len(set(ideals)) == len(ideals)
    assert ideals == sorted(ideals)
    assert ideals == enumerate_ideals(spec)


@given(specs(max_components=3, max_chain=2))
@settings(max_examples=60)
def test_containment_is_strict_partial_order(spec):
    ideals = enumerate_ideals(spec)
    for a in ideals:
        assert not properly_contains(a, a)
        for b in ideals:
            if properly_contains(a, b):
                assert not properly_contains(b, a)
                for c in ideals:
                    if properly_contains(b, c):
                        assert properly_contains(a, c)


@given(specs())
@settings(max_examples=80)
def test_complement_invariants(spec):
    for ideal in enumerate_ideals(spec):
        if nzc(ideal) == 0:
            continue
        c = complement(spec, ideal)
        assert is_in_m(spec, c)
        assert all(x == 0 or y == 0 for x, y in zip(ideal, c))
        if is_in_m(spec, ideal):
            assert complement(spec, c) == ideal
