import numpy as np
import pytest
from hypothesis import given, strategies as st

from psbck.commutativity import is_commutative
from psbck.errors import BudgetExceeded
from psbck.search import (
    SearchConfig,
    canonical_form,
    canonical_key,
    count_models,
    enumerate_models,
    naive_models,
    search_nodes,
)

from oracles import models

# labelled, iso classes, commutative labelled, commutative iso classes
COUNTS = {
    1: (1, 1, 1, 1),
    2: (1, 1, 1, 1),
    3: (5, 3, 3, 2),
    4: (85, 17, 19, 5),
}
SIZE3_ISO_CLASSES = 3


@pytest.mark.parametrize("size", sorted(COUNTS))
def test_model_counts(size):
    labelled, iso, comm, comm_iso = COUNTS[size]
    assert count_models(size) == labelled
    assert count_models(size, up_to_iso=True) == iso
    assert count_models(size, commutative_only=True) == comm
    assert count_models(size, commutative_only=True, up_to_iso=True) == comm_iso


@pytest.mark.slow
def test_size_five_counts():
    assert count_models(5, up_to_iso=True) == 145
    assert count_models(5, commutative_only=True, up_to_iso=True) == 11


@pytest.mark.parametrize("size", [1, 2, 3])
@pytest.mark.parametrize("comm", [False, True])
def test_pruned_matches_naive(size, comm):
    pruned = [(A.arrow.tobytes(), A.squiggle.tobytes()) for A in enumerate_models(SearchConfig(size, comm))]
    naive = [(A.arrow.tobytes(), A.squiggle.tobytes()) for A in naive_models(size, comm)]
    assert len(set(pruned)) == len(pruned)
    assert set(pruned) == set(naive)


def test_naive_iso_count_is_pinned():
    assert len({canonical_key(A) for A in naive_models(3)}) == SIZE3_ISO_CLASSES


def test_every_model_is_valid():
    for size in range(1, 5):
        for A in enumerate_models(SearchConfig(size, commutative_only=True)):
            assert A.is_pseudo_bck and is_commutative(A)
        for A in models(size, up_to_iso=False):
            assert A.is_pseudo_bck and A.top == size - 1


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        list(enumerate_models(SearchConfig(4, node_budget=10)))
    assert search_nodes(3) == 36


def test_config_validation():
    for bad in (0, 6):
        with pytest.raises(ValueError):
            SearchConfig(bad)
    with pytest.raises(ValueError):
        SearchConfig(3, node_budget=0)


@given(st.sampled_from(models(4, up_to_iso=False)), st.permutations(range(3)))
def test_canonical_form_ignores_relabelling(A, order):
    perm = list(order) + [3]
    B = A.relabel(perm)
    assert canonical_key(A) == canonical_key(B)
    C = canonical_form(B)
    assert C.top == 3 and C.is_pseudo_bck


def test_iso_representatives_are_distinct_and_canonical():
    reps = list(enumerate_models(SearchConfig(4, up_to_iso=True)))
    keys = [canonical_key(A) for A in reps]
    assert len(set(keys)) == len(keys)
    assert all(canonical_form(A).same_tables(A) for A in reps)
    assert keys == sorted(keys, key=lambda k: tuple(np.frombuffer(k, dtype=np.int64)))


def test_naive_is_limited():
    with pytest.raises(ValueError):
        naive_models(4)
