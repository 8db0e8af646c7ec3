import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbalance.analyzers import empirical_frequencies, factor_complexity, measured_k
from kbalance.builder import (
    build_prefix,
    build_stream,
    certified_k,
    complexity_bound,
    depth_of,
    describe,
    plan,
)
from kbalance.colouring import erase_to, project
from kbalance.errors import FrequencyError, RangeError
from kbalance.exact_arith import FieldElement
from kbalance.mechanical import mechanical_stream
from kbalance.sequences import FrequencyVector, take_prefix


def frac(p, q):
    return FieldElement(p, 0, q)


def test_plan_for_equal_quarters():
    p = plan(FrequencyVector.parse("1/4,1/4,1/4,1/4"))
    assert p.root.alpha == frac(1, 2)
    assert p.root.left.alpha == frac(1, 2)
    assert p.root.right.alpha == frac(1, 2)
    assert p.root.left.letters == (1, 2)
    assert p.root.right.letters == (3, 4)
    assert depth_of(p.root) == 2


def test_plan_normalises_child_frequencies():
    p = plan(FrequencyVector.parse("1/2,1/3,1/6"))
    assert p.root.alpha == frac(5, 6)
    assert p.root.left.letters == (1, 2)
    assert p.root.left.frequencies == {1: frac(3, 5), 2: frac(2, 5)}
    assert p.root.right.is_leaf
    assert p.root.right.frequencies == {3: frac(1, 1)}


def test_single_letter_plan():
    p = plan(FrequencyVector.parse("1"))
    assert p.root.is_leaf
    assert depth_of(p.root) == 0
    assert build_prefix(FrequencyVector.parse("1"), 5).render() == "11111"


def test_equal_quarters_prefix():
    assert build_prefix(FrequencyVector.parse("1/4,1/4,1/4,1/4"), 8).render() == "42314231"


def test_two_halves_alternate():
    assert build_prefix(FrequencyVector.parse("1/2,1/2"), 6).render() == "212121"


def test_describe_tree():
    text = describe(plan(FrequencyVector.parse("1/2,1/3,1/6")))
    assert text.splitlines() == [
        "node [1, 2] | [3] alpha=5/6",
        "  node [1] | [2] alpha=3/5",
        "    leaf 1",
        "    leaf 2",
        "  leaf 3",
    ]


@pytest.mark.parametrize("d, k", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)])
def test_certified_k(d, k):
    assert certified_k(d) == k


def test_bound_arguments_checked():
    with pytest.raises(RangeError):
        certified_k(0)
    with pytest.raises(RangeError):
        complexity_bound(3, -1)
    assert complexity_bound(3, 4) == 25
    assert complexity_bound(1, 10) == 1


def test_invalid_frequencies_rejected():
    with pytest.raises(FrequencyError):
        plan(FrequencyVector.parse("1/2,1/4"))


def test_ternary_balance_within_bound():
    w = build_prefix(FrequencyVector.parse("1/3,1/3,1/3"), 3000)
    assert measured_k(w, 1500) <= 2


def test_quadratic_frequencies():
    f = FrequencyVector.parse("(3-sqrt(5))/4,(3-sqrt(5))/4,(-1+sqrt(5))/2")
    w = build_prefix(f, 4000)
    assert measured_k(w, 500) <= 2
    for letter, value in empirical_frequencies(w).items():
        assert abs(value - f[letter]) <= frac(1, 100)


def test_complexity_bound_holds_for_d3():
    w = build_prefix(FrequencyVector.parse("1/2,1/3,1/6"), 5000)
    table = factor_complexity(w, 50)
    assert all(table.c(n) <= complexity_bound(3, n) for n in range(51))


def test_frequency_convergence():
    w = build_prefix(FrequencyVector.parse("1/2,1/3,1/6"), 20000)
    freqs = empirical_frequencies(w)
    assert abs(freqs[1] - frac(1, 2)) <= frac(1, 1000)
    assert abs(freqs[2] - frac(1, 3)) <= frac(1, 1000)
    assert abs(freqs[3] - frac(1, 6)) <= frac(1, 1000)


def test_stream_continues_prefix():
    f = FrequencyVector.parse("1/5,2/5,1/5,1/5")
    s = build_stream(plan(f))
    head = take_prefix(s, 40)
    tail = take_prefix(s, 40)
    assert head + tail == build_prefix(f, 80)


@st.composite
def compositions(draw):
    d = draw(st.integers(2, 6))
    q = draw(st.integers(d, 40))
    cuts = sorted(draw(st.sets(st.integers(1, q - 1), min_size=d - 1, max_size=d - 1)))
    bounds = [0] + cuts + [q]
    return FrequencyVector.of([frac(hi - lo, q) for lo, hi in zip(bounds, bounds[1:])])


@given(compositions())
@settings(max_examples=25, deadline=None)
def test_random_rational_vectors_meet_certified_bound(f):
    w = build_prefix(f, 600)
    assert measured_k(w, 300) <= certified_k(f.d)


def internal_nodes(node):
    if node.is_leaf:
        return []
    return [node] + internal_nodes(node.left) + internal_nodes(node.right)


@given(compositions())
@settings(max_examples=25, deadline=None)
def test_every_node_projects_to_its_mechanical_word(f):
    p = plan(f)
    w = build_prefix(f, 300)
    root = project(w, (p.root.left.letters, p.root.right.letters))
    assert root == take_prefix(mechanical_stream(p.root.mechanical), 300)
    for node in internal_nodes(p.root):
        sub = erase_to(w, node.letters)
        shadow = project(sub, (node.left.letters, node.right.letters))
        assert shadow == take_prefix(mechanical_stream(node.mechanical), len(sub))
