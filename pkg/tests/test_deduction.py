import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from psbck import fixtures
from psbck.commutativity import is_commutative
from psbck.deduction import (
    DSFilter,
    as_mask,
    classify_subset,
    classify_subset_alt_commutative,
    enumerate_ds,
    full_mask,
    generated_ds,
    is_simple,
    iter_arrow,
    measure_kernel,
    members,
    quotient,
    show,
    to_mask,
)
from psbck.errors import NotAMeasure, NotDS, NotNormal, PreconditionViolated

from oracles import bf_is_cds, bf_is_ds, bf_is_normal, fixture_algebras, models_upto, pseudo_bck


def shown(A, masks):
    return [show(A, m) for m in masks]


def test_a6_deductive_systems():
    A = fixtures.load("a6")
    assert shown(A, enumerate_ds(A)) == ["{1}", "{c,d,1}", "{a,b,c,d,1}", "{0,a,b,c,d,1}"]
    assert shown(A, enumerate_ds(A, DSFilter.NORMAL)) == ["{1}", "{a,b,c,d,1}", "{0,a,b,c,d,1}"]
    assert shown(A, enumerate_ds(A, "commutative")) == ["{a,b,c,d,1}", "{0,a,b,c,d,1}"]


def test_a4c_is_simple():
    A = fixtures.load("a4c")
    assert shown(A, enumerate_ds(A)) == ["{1}", "{a,b,c,1}"]
    assert is_simple(A)
    assert not is_simple(fixtures.load("a6"))


@pytest.mark.parametrize("A", models_upto(4), ids=lambda A: f"n{A.n}")
def test_flags_match_brute_force(A):
    ds = set(enumerate_ds(A))
    normal = set(enumerate_ds(A, DSFilter.NORMAL))
    comm = set(enumerate_ds(A, DSFilter.COMMUTATIVE))
    for mask in range(1 << A.n):
        S = members(mask)
        is_ds = bf_is_ds(A, S)
        assert (mask in ds) == is_ds
        assert (mask in normal) == (is_ds and bf_is_normal(A, S))
        assert (mask in comm) == (is_ds and bf_is_cds(A, S))
        cls = classify_subset(A, mask)
        assert (cls.is_ds, cls.is_normal, cls.is_commutative) == (
            mask in ds, mask in normal, mask in comm)
        if is_ds:
            assert classify_subset_alt_commutative(A, mask) == (mask in comm)


@given(pseudo_bck())
def test_deductive_systems_are_upward_closed(A):
    leq = A.arrow == A.top
    for mask in enumerate_ds(A):
        inside = np.array([(mask >> i) & 1 for i in range(A.n)], dtype=bool)
        assert not (inside[:, None] & leq & ~inside[None, :]).any()


@given(pseudo_bck(), st.data())
def test_generated_is_the_least_containing_ds(A, data):
    X = data.draw(st.lists(st.integers(0, A.n - 1), max_size=3))
    gen = generated_ds(A, X)
    xmask = to_mask(X)
    containing = [m for m in enumerate_ds(A) if m & xmask == xmask]
    meet = full_mask(A)
    for m in containing:
        meet &= m
    assert gen == meet


def test_generated_examples():
    A = fixtures.load("a6")
    assert show(A, generated_ds(A, ["d"])) == "{c,d,1}"
    assert show(A, generated_ds(A, ["0"])) == "{0,a,b,c,d,1}"
    assert show(A, generated_ds(A, [])) == "{1}"


def test_iterated_arrow():
    A = fixtures.load("a6")
    assert A.labels[iter_arrow(A, "c", "a", 2)] == "b"
    assert iter_arrow(A, "c", "a", 0) == A.index("a")
    assert A.labels[iter_arrow(A, "c", "a", 1, side="~>")] == "a"
    with pytest.raises(ValueError):
        iter_arrow(A, "c", "a", -1)


def test_a6_quotient():
    A = fixtures.load("a6")
    res = quotient(A, ["a", "b", "c", "d", "1"])
    Q = res.quotient
    assert Q.n == 2 and Q.labels == ("[0]", "[a,b,c,d,1]")
    assert np.array_equal(res.projection, [0, 1, 1, 1, 1, 1])
    assert Q.is_pseudo_bck and is_commutative(Q)
    assert res.kernel() == as_mask(A, ["a", "b", "c", "d", "1"])


def test_quotient_by_top_is_isomorphic():
    A = fixtures.load("a6")
    res = quotient(A, ["1"])
    assert res.quotient.same_tables(A)


def test_quotient_errors():
    A = fixtures.load("a6")
    with pytest.raises(NotNormal) as info:
        quotient(A, ["c", "d", "1"])
    x, y = info.value.witness
    H = as_mask(A, ["c", "d", "1"])
    assert ((H >> A.imp(x, y)) & 1) != ((H >> A.sq(x, y)) & 1)
    assert "is not normal" in str(info.value)
    with pytest.raises(NotDS):
        quotient(A, ["a", "1"])
    with pytest.raises(ValueError):
        as_mask(A, 1 << 7)


@pytest.mark.parametrize("name,A", fixture_algebras())
def test_every_normal_ds_gives_a_well_defined_quotient(name, A):
    for H in enumerate_ds(A, DSFilter.NORMAL):
        res = quotient(A, H)
        assert res.kernel() == H
        proj, Q = res.projection, res.quotient
        assert np.array_equal(proj[A.arrow], Q.arrow[np.ix_(proj, proj)])
        assert np.array_equal(proj[A.squiggle], Q.squiggle[np.ix_(proj, proj)])
        assert is_commutative(Q) == bool(classify_subset(A, H).is_commutative)


def test_measure_kernel():
    A = fixtures.load("a6")
    assert show(A, measure_kernel(A, [1, 0, 0, 0, 0, 0])) == "{a,b,c,d,1}"
    with pytest.raises(NotAMeasure):
        measure_kernel(A, [0, 1, 0, 0, 0, 0])


def test_operations_need_an_algebra():
    with pytest.raises(PreconditionViolated):
        enumerate_ds(fixtures.load("a4l_printed"))


def test_subset_helpers():
    A = fixtures.load("a6")
    assert members(to_mask([5, 0, 2])) == [0, 2, 5]
    assert as_mask(A, ["0", "1"]) == as_mask(A, [0, 5]) == 0b100001
    assert list(itertools.islice(members(full_mask(A)), 3)) == [0, 1, 2]
