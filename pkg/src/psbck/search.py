"""Exhaustive enumeration of small pseudo BCK-algebras.

The fast path is a pruned backtracking search (``kernels.search_models``);
``naive_models`` is a filter-only oracle used to cross-check it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .core import FiniteAlgebra
from .errors import BudgetExceeded

MAX_SIZE = 5
DEFAULT_NODE_BUDGET = 200_000_000


def model_names(n: int) -> tuple[str, ...]:
    return tuple("abcd"[:n - 1]) + ("1",)


@dataclass(frozen=True)
class SearchConfig:
    size: int
    commutative_only: bool = False
    up_to_iso: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        if not 1 <= self.size <= MAX_SIZE:
            raise ValueError(f"size must be in 1..{MAX_SIZE}, got {self.size}")
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")


def canonical_key(A: FiniteAlgebra) -> bytes:
    C = canonical_form(A)
    return C.arrow.tobytes() + C.squiggle.tobytes()


def canonical_form(A: FiniteAlgebra) -> FiniteAlgebra:
    """Lexicographically least relabelling with top moved to the last index."""
    n = A.n
    others = [i for i in range(n) if i != A.top]
    best = None
    best_key = None
    for order in itertools.permutations(others):
        perm = np.empty(n, dtype=np.int64)
        perm[list(order)] = np.arange(n - 1)
        perm[A.top] = n - 1
        B = A.relabel(perm)
        key = tuple(B.arrow.ravel()) + tuple(B.squiggle.ravel())
        if best_key is None or key < best_key:
            best, best_key = B, key
    return FiniteAlgebra(best.arrow, best.squiggle, n - 1, model_names(n))


def _raw_models(cfg: SearchConfig) -> tuple[np.ndarray, np.ndarray, int]:
    arrows, squiggles, count, nodes = kernels.search_models(cfg.size, cfg.commutative_only, cfg.node_budget)
    if count < 0:
        raise BudgetExceeded(f"search of size {cfg.size} exceeded {cfg.node_budget} nodes")
    return arrows, squiggles, nodes


def enumerate_models(cfg: SearchConfig) -> Iterator[FiniteAlgebra]:
    """Every model of the configuration, top = size-1, in a deterministic order.

    With ``up_to_iso`` one canonical representative per class is emitted,
    sorted by canonical table key.
    """
    arrows, squiggles, _ = _raw_models(cfg)
    names = model_names(cfg.size)
    models = (FiniteAlgebra(a, s, cfg.size - 1, names) for a, s in zip(arrows, squiggles))
    if not cfg.up_to_iso:
        yield from models
        return
    seen = {}
    for A in models:
        C = canonical_form(A)
        seen.setdefault(canonical_key(C), C)
    for key in sorted(seen, key=lambda k: tuple(np.frombuffer(k, dtype=np.int64))):
        yield seen[key]


def count_models(size: int, commutative_only: bool = False, up_to_iso: bool = False,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    return sum(1 for _ in enumerate_models(SearchConfig(size, commutative_only, up_to_iso, node_budget)))


def search_nodes(size: int, commutative_only: bool = False) -> int:
    return _raw_models(SearchConfig(size, commutative_only))[2]


# -- filter-only oracle ----------------------------------------------------


def _batch_equational(a: np.ndarray, s: np.ndarray, top: int) -> np.ndarray:
    """Vectorized psBCK1'-6' over a batch of table pairs of shape (B, n, n)."""
    B, n, _ = a.shape
    b = np.arange(B)[:, None, None, None]
    x = np.arange(n)[None, :, None, None]
    y = np.arange(n)[None, None, :, None]
    z = np.arange(n)[None, None, None, :]
    axy, ayz, axz = a[b, x, y], a[b, y, z], a[b, x, z]
    sxy, syz, sxz = s[b, x, y], s[b, y, z], s[b, x, z]
    p1 = (s[b, axy, s[b, ayz, axz]] == top).all(axis=(1, 2, 3))
    p2 = (a[b, sxy, a[b, syz, sxz]] == top).all(axis=(1, 2, 3))
    p3 = (a[:, top, :] == np.arange(n)).all(axis=1)
    p4 = (s[:, top, :] == np.arange(n)).all(axis=1)
    p5 = (a[:, :, top] == top).all(axis=1)
    le = a == top
    off = ~np.eye(n, dtype=bool)
    p6 = ~((le & le.transpose(0, 2, 1)) & off).any(axis=(1, 2))
    return p1 & p2 & p3 & p4 & p5 & p6


def _batch_commutative(a: np.ndarray, s: np.ndarray) -> np.ndarray:
    B, n, _ = a.shape
    b = np.arange(B)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    c1 = s[b, a[b, x, y], y] == s[b, a[b, y, x], x]
    c2 = a[b, s[b, x, y], y] == a[b, s[b, y, x], x]
    return (c1 & c2).all(axis=(1, 2))


def naive_models(size: int, commutative_only: bool = False, chunk: int = 1 << 16) -> list[FiniteAlgebra]:
    """All models by filtering every table pair with only the top row/column fixed.

    Only ``1->x = x``, ``1~>x = x`` and ``x->1 = 1`` are imposed up front; every
    other cell ranges over the whole carrier.  Feasible for size <= 3.
    """
    if size > 3:
        raise ValueError("the filter-only oracle is limited to size <= 3")
    n, top = size, size - 1
    a0 = np.zeros((n, n), dtype=np.int64)
    s0 = np.zeros((n, n), dtype=np.int64)
    a0[top] = np.arange(n)
    s0[top] = np.arange(n)
    a0[:, top] = top
    a_free = [(x, y) for x in range(n) for y in range(n) if x != top and y != top]
    s_free = [(x, y) for x in range(n) for y in range(n) if x != top]
    cells = len(a_free) + len(s_free)
    names = model_names(n)
    out = []
    combos = itertools.product(range(n), repeat=cells)
    while True:
        rows = list(itertools.islice(combos, chunk))
        if not rows:
            break
        block = np.array(rows, dtype=np.int64).reshape(len(rows), cells)
        a = np.repeat(a0[None], len(block), axis=0)
        s = np.repeat(s0[None], len(block), axis=0)
        for k, (x, y) in enumerate(a_free):
            a[:, x, y] = block[:, k]
        for k, (x, y) in enumerate(s_free):
            s[:, x, y] = block[:, len(a_free) + k]
        ok = _batch_equational(a, s, top)
        if commutative_only:
            ok &= _batch_commutative(a, s)
        out += [FiniteAlgebra(a[i], s[i], top, names) for i in np.flatnonzero(ok)]
    return out
