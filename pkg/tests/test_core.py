import numpy as np
import pytest
from hypothesis import given, strategies as st

from psbck import fixtures
from psbck.commutativity import is_commutative
from psbck.core import (
    CARRIER_CAP,
    FiniteAlgebra,
    System,
    boundedness_profile,
    check_axiom_system,
    check_basic_laws,
    derive_order,
    direct_product,
    join_table,
    meet_table,
    structure_kind,
    trivial_algebra,
)
from psbck.errors import InvalidPoint, PreconditionViolated, SizeLimit

from oracles import fixture_algebras, models_upto, perturbed_models, pseudo_bck, raw_tables


@pytest.mark.parametrize("name,A", fixture_algebras())
def test_fixture_algebras_pass_both_systems(name, A):
    assert check_axiom_system(A, System.RELATIONAL).passed
    assert check_axiom_system(A, System.EQUATIONAL).passed
    assert A.is_pseudo_bck


def test_raw_linear_table_fails_left_unit():
    A = fixtures.load("a4l_printed")
    rep = check_axiom_system(A, System.EQUATIONAL)
    c = rep.clause("psBCK3'")
    assert not c.passed
    assert A.labels[c.witness[0]] == "a"
    assert c.detail == "1->a = b, expected a"


def test_row_repair_is_not_an_algebra():
    rep = check_axiom_system(fixtures.load("a4l_row1_repaired"), System.EQUATIONAL)
    assert {c.name for c in rep.failures()} >= {"psBCK1'", "psBCK2'"}


@given(raw_tables())
def test_relational_and_equational_agree_on_raw_tables(A):
    rel = check_axiom_system(A, System.RELATIONAL).passed
    eq = check_axiom_system(A, System.EQUATIONAL).passed
    assert rel == eq == A.is_pseudo_bck


@given(perturbed_models())
def test_relational_and_equational_agree_near_models(A):
    assert check_axiom_system(A, System.RELATIONAL).passed == check_axiom_system(A, System.EQUATIONAL).passed


@given(perturbed_models())
def test_pseudo_bck_implies_bci_and_be(A):
    if A.is_pseudo_bck:
        assert check_axiom_system(A, System.PSEUDO_BCI).passed
        assert check_axiom_system(A, System.PSEUDO_BE).passed


@pytest.mark.parametrize("A", models_upto(4), ids=lambda A: f"n{A.n}")
def test_basic_laws_hold_on_models(A):
    assert check_basic_laws(A).passed


def test_basic_laws_need_an_algebra():
    with pytest.raises(PreconditionViolated, match="requires a pseudo BCK-algebra"):
        check_basic_laws(fixtures.load("a4l_printed"))


@given(pseudo_bck())
def test_derived_order_is_a_partial_order_with_top(A):
    leq = derive_order(A).leq
    n = A.n
    assert leq.diagonal().all()
    assert leq[:, A.top].all()
    assert not (leq & leq.T & ~np.eye(n, dtype=bool)).any()
    assert (~(leq[:, :, None] & leq[None, :, :]) | leq[:, None, :]).all()


@given(pseudo_bck(), st.randoms(use_true_random=False))
def test_relabelling_preserves_the_verdict(A, rnd):
    perm = list(range(A.n))
    rnd.shuffle(perm)
    B = A.relabel(perm)
    assert B.is_pseudo_bck
    assert is_commutative(B) == is_commutative(A)
    assert B.relabel(np.argsort(perm)).same_tables(A)


def test_boundedness_of_fixtures():
    A6 = fixtures.load("a6")
    prof = boundedness_profile(A6)
    assert A6.labels[prof.bounded] == "0" and prof.good is True and prof.pointed_involutive is None
    assert boundedness_profile(fixtures.load("a4c")).bounded is None
    assert boundedness_profile(fixtures.load("a2"), "0").pointed_involutive is True
    assert boundedness_profile(fixtures.load("hl3"), "0").pointed_involutive is True
    with pytest.raises(InvalidPoint):
        boundedness_profile(A6, "z")


def test_structure_kinds():
    a6 = structure_kind(fixtures.load("a6"))
    assert a6.lattice and not a6.linear
    a4c = structure_kind(fixtures.load("a4c"))
    assert a4c.join_semilattice and not a4c.meet_semilattice
    assert structure_kind(fixtures.load("a4l_corrected")).linear


@given(pseudo_bck())
def test_meet_and_join_tables_are_bounds(A):
    leq = derive_order(A).leq
    meet = meet_table(A)
    if meet is not None:
        for x in range(A.n):
            for y in range(A.n):
                m = meet[x, y]
                assert leq[m, x] and leq[m, y]
                assert all(leq[z, m] for z in range(A.n) if leq[z, x] and leq[z, y])
    join = join_table(A)
    if join is not None:
        assert (join == join.T).all()
        assert all(leq[x, join[x, y]] for x in range(A.n) for y in range(A.n))


def test_products():
    a2, a6, a4c = (fixtures.load(n) for n in ("a2", "a6", "a4c"))
    P = direct_product(a2, a6)
    assert P.n == 12 and P.is_pseudo_bck
    assert not is_commutative(P)
    assert is_commutative(direct_product(a2, a4c))
    with pytest.raises(SizeLimit):
        direct_product(a6, a6, cap=30)


@given(pseudo_bck(3), pseudo_bck(3))
def test_product_is_componentwise(A, B):
    P = direct_product(A, B)
    assert P.is_pseudo_bck
    assert is_commutative(P) == (is_commutative(A) and is_commutative(B))
    i, j, k, l = 0, A.n - 1, B.n - 1, 0
    assert P.imp(i * B.n + k, j * B.n + l) == A.imp(i, j) * B.n + B.imp(k, l)


def test_trivial_algebra():
    T = trivial_algebra()
    assert T.is_pseudo_bck and is_commutative(T)


def test_constructor_validation():
    with pytest.raises(ValueError, match="square"):
        FiniteAlgebra([[0, 1]], [[0, 1]], 0)
    with pytest.raises(ValueError, match="outside"):
        FiniteAlgebra([[2]], [[0]], 0)
    with pytest.raises(ValueError, match="top"):
        FiniteAlgebra([[0]], [[0]], 3)
    with pytest.raises(ValueError, match="distinct"):
        FiniteAlgebra([[1, 1], [0, 1]], [[1, 1], [0, 1]], 1, ("a", "a"))
    big = np.zeros((CARRIER_CAP + 1,) * 2, dtype=int)
    with pytest.raises(SizeLimit):
        FiniteAlgebra(big, big, 0)


def test_all_witnesses_are_listed():
    rep = check_axiom_system(fixtures.load("a4l_printed"), System.EQUATIONAL, all_witnesses=True)
    c = rep.clause("psBCK3'")
    assert c.witness == c.all_witnesses[0]
    assert len(c.all_witnesses) >= 1
