"""Finite two-arrow algebras, the derived order, and the foundational axiom suites."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvalidPoint, PreconditionViolated, SizeLimit
from .laws import ONE, CheckReport, Const, Context, Eq, Law, Leq, X, Y, Z, check_laws

CARRIER_CAP = 64


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """``(A, ->, ~>, 1)`` on the carrier ``{0, ..., n-1}``.

    Loading never validates the axioms; use :func:`check_axiom_system` or
    :attr:`is_pseudo_bck`.
    """

    arrow: np.ndarray
    squiggle: np.ndarray
    top: int
    names: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        arrow = np.array(self.arrow, dtype=np.int64)
        squiggle = np.array(self.squiggle, dtype=np.int64)
        if arrow.ndim != 2 or arrow.shape[0] != arrow.shape[1] or arrow.shape[0] < 1:
            raise ValueError(f"arrow table must be a non-empty square matrix, got shape {arrow.shape}")
        if squiggle.shape != arrow.shape:
            raise ValueError("arrow and squiggle tables differ in shape")
        n = arrow.shape[0]
        if n > CARRIER_CAP:
            raise SizeLimit(f"carrier size {n} exceeds cap {CARRIER_CAP}")
        for tab, label in ((arrow, "arrow"), (squiggle, "squiggle")):
            if tab.min() < 0 or tab.max() >= n:
                raise ValueError(f"{label} table has entries outside [0, {n})")
        if not 0 <= int(self.top) < n:
            raise ValueError(f"top {self.top} is not an element index")
        names = self.names
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != n:
                raise ValueError(f"{len(names)} names for {n} elements")
            if len(set(names)) != n:
                raise ValueError("element names must be distinct")
        arrow.setflags(write=False)
        squiggle.setflags(write=False)
        object.__setattr__(self, "arrow", arrow)
        object.__setattr__(self, "squiggle", squiggle)
        object.__setattr__(self, "top", int(self.top))
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.arrow.shape[0]

    @property
    def labels(self) -> tuple[str, ...]:
        return self.names if self.names is not None else tuple(str(i) for i in range(self.n))

    def index(self, name: str | int) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.n:
                raise IndexError(name)
            return int(name)
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def indices(self, names) -> list[int]:
        return [self.index(s) for s in names]

    def imp(self, x: int, y: int) -> int:
        return int(self.arrow[x, y])

    def sq(self, x: int, y: int) -> int:
        return int(self.squiggle[x, y])

    def leq(self, x: int, y: int) -> bool:
        return self.arrow[x, y] == self.top

    @property
    def is_bck(self) -> bool:
        """Both arrows coincide."""
        return bool(np.array_equal(self.arrow, self.squiggle))

    def context(self, **extra) -> Context:
        return Context(self.n, self.arrow, self.squiggle, self.top, self.labels, **extra)

    @cached_property
    def is_pseudo_bck(self) -> bool:
        return bool(kernels.equational_ok(self.arrow, self.squiggle, self.top))

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        return (
            self.n == other.n
            and self.top == other.top
            and np.array_equal(self.arrow, other.arrow)
            and np.array_equal(self.squiggle, other.squiggle)
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return self.same_tables(other) and self.labels == other.labels

    def __hash__(self):
        return hash((self.top, self.arrow.tobytes(), self.squiggle.tobytes()))

    def relabel(self, perm: Sequence[int]) -> "FiniteAlgebra":
        """Image under the bijection ``i -> perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.n)
        arrow = perm[self.arrow[np.ix_(inv, inv)]]
        squiggle = perm[self.squiggle[np.ix_(inv, inv)]]
        names = tuple(self.labels[i] for i in inv) if self.names is not None else None
        return FiniteAlgebra(arrow, squiggle, int(perm[self.top]), names)


def bck(arrow, top: int, names=None) -> FiniteAlgebra:
    """A BCK-style algebra where the squiggle equals the arrow."""
    return FiniteAlgebra(arrow, arrow, top, names)


def require_pbck(A: FiniteAlgebra, what: str = "operation") -> None:
    if not A.is_pseudo_bck:
        rep = check_axiom_system(A, System.EQUATIONAL)
        bad = rep.failures()[0]
        raise PreconditionViolated(f"{what} requires a pseudo BCK-algebra; {bad.name}: {bad.detail}")


# -- order -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrderRelation:
    leq: np.ndarray
    linear: bool
    least: int | None


def derive_order(A: FiniteAlgebra) -> OrderRelation:
    leq = A.arrow == A.top
    linear = bool((leq | leq.T).all())
    lower = np.flatnonzero(leq.all(axis=1))
    least = int(lower[0]) if len(lower) == 1 else None
    return OrderRelation(leq, linear, least)


def _bound_table(leq: np.ndarray, upper: bool) -> np.ndarray | None:
    """Table of least upper (or greatest lower) bounds, or None if one is missing."""
    n = leq.shape[0]
    rel = leq if upper else leq.T  # rel[a, b]: a is below b in the direction of search
    out = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            cands = np.flatnonzero(rel[x] & rel[y])
            best = [c for c in cands if rel[c, cands].all()]
            if len(best) != 1:
                return None
            out[x, y] = best[0]
    return out


def meet_table(A: FiniteAlgebra) -> np.ndarray | None:
    if "meet" not in A._cache:
        A._cache["meet"] = _bound_table(derive_order(A).leq, upper=False)
    return A._cache["meet"]


def join_table(A: FiniteAlgebra) -> np.ndarray | None:
    if "join" not in A._cache:
        A._cache["join"] = _bound_table(derive_order(A).leq, upper=True)
    return A._cache["join"]


# -- axiom systems ---------------------------------------------------------


class System(enum.Enum):
    RELATIONAL = "relational"
    EQUATIONAL = "equational"
    PSEUDO_BCI = "pseudo-bci"
    PSEUDO_BE = "pseudo-be"


RELATIONAL_LAWS = (
    Law("psBCK1", ("x", "y", "z"), (
        Leq(X.to(Y), Y.to(Z).sq(X.to(Z))),
        Leq(X.sq(Y), Y.sq(Z).to(X.sq(Z))),
    )),
    Law("psBCK2", ("x", "y"), (Leq(X, X.to(Y).sq(Y)), Leq(X, X.sq(Y).to(Y)))),
    Law("psBCK3", ("x",), (Leq(X, X),)),
    Law("psBCK4", ("x",), (Leq(X, ONE),)),
    Law("psBCK5", ("x", "y"), (Eq(X, Y),), premises=(Leq(X, Y), Leq(Y, X))),
    Law("psBCK6", ("x", "y"), (Eq(X.sq(Y), ONE),), premises=(Eq(X.to(Y), ONE),), iff=True),
)

_P1 = Law("psBCK1'", ("x", "y", "z"), (Eq(X.to(Y).sq(Y.to(Z).sq(X.to(Z))), ONE),))
_P2 = Law("psBCK2'", ("x", "y", "z"), (Eq(X.sq(Y).to(Y.sq(Z).to(X.sq(Z))), ONE),))
_P3 = Law("psBCK3'", ("x",), (Eq(ONE.to(X), X),))
_P4 = Law("psBCK4'", ("x",), (Eq(ONE.sq(X), X),))
_P5 = Law("psBCK5'", ("x",), (Eq(X.to(ONE), ONE),))
_P6 = Law("psBCK6'", ("x", "y"), (Eq(X, Y),), premises=(Eq(X.to(Y), ONE), Eq(Y.to(X), ONE)))

EQUATIONAL_LAWS = (_P1, _P2, _P3, _P4, _P5, _P6)
PSEUDO_BCI_LAWS = (_P1, _P2, _P3, _P4, _P6)
PSEUDO_BE_LAWS = (
    Law("psBE1", ("x",), (Eq(X.to(X), ONE), Eq(X.sq(X), ONE))),
    Law("psBE2", ("x",), (Eq(X.to(ONE), ONE), Eq(X.sq(ONE), ONE))),
    Law("psBE3", ("x",), (Eq(ONE.to(X), X), Eq(ONE.sq(X), X))),
    Law("psBE4", ("x", "y", "z"), (Eq(X.to(Y.sq(Z)), Y.sq(X.to(Z))),)),
    Law("psBE5", ("x", "y"), (Eq(X.sq(Y), ONE),), premises=(Eq(X.to(Y), ONE),), iff=True),
)

SYSTEM_LAWS = {
    System.RELATIONAL: RELATIONAL_LAWS,
    System.EQUATIONAL: EQUATIONAL_LAWS,
    System.PSEUDO_BCI: PSEUDO_BCI_LAWS,
    System.PSEUDO_BE: PSEUDO_BE_LAWS,
}


def check_axiom_system(A: FiniteAlgebra, system: System | str = System.EQUATIONAL,
                       all_witnesses: bool = False) -> CheckReport:
    system = System(system) if not isinstance(system, System) else system
    return check_laws(system.value, SYSTEM_LAWS[system], A.context(), all_witnesses)


BASIC_LAWS = (
    Law("(1)", ("x", "y", "z"), (Leq(Z.to(X), Z.to(Y)), Leq(Z.sq(X), Z.sq(Y))), premises=(Leq(X, Y),)),
    Law("(2)", ("x", "y", "z"), (Leq(Y.to(Z), X.to(Z)), Leq(Y.sq(Z), X.sq(Z))), premises=(Leq(X, Y),)),
    Law("(3)", ("x", "y", "z"), (
        Leq(X.to(Y), Z.to(X).to(Z.to(Y))),
        Leq(X.sq(Y), Z.sq(X).sq(Z.sq(Y))),
    )),
    Law("(4)", ("x", "y", "z"), (Eq(X.to(Y.sq(Z)), Y.sq(X.to(Z))), Eq(X.sq(Y.to(Z)), Y.to(X.sq(Z))))),
    Law("(5)", ("x", "y"), (Leq(X, Y.to(X)), Leq(X, Y.sq(X)))),
    Law("(6)", ("x", "y"), (Eq(X.to(Y).sq(Y).to(Y), X.to(Y)), Eq(X.sq(Y).to(Y).sq(Y), X.sq(Y)))),
)


def check_basic_laws(A: FiniteAlgebra) -> CheckReport:
    require_pbck(A, "check_basic_laws")
    return check_laws("basic-laws", BASIC_LAWS, A.context())


# -- bounds and shape ------------------------------------------------------


@dataclass(frozen=True)
class BoundednessProfile:
    bounded: int | None
    good: bool | None
    pointed_involutive: bool | None


def boundedness_profile(A: FiniteAlgebra, point_at: int | str | None = None) -> BoundednessProfile:
    require_pbck(A, "boundedness_profile")
    least = derive_order(A).least
    good = None
    ctx = A.context()
    if least is not None:
        zero = Const(least)
        law = Law("good", ("x",), (Eq(X.to(zero).sq(zero), X.sq(zero).to(zero)),))
        good = not law.violations(ctx).any()
    involutive = None
    if point_at is not None:
        try:
            a = A.index(point_at)
        except (KeyError, IndexError):
            raise InvalidPoint(f"point {point_at!r} is not an element") from None
        pt = Const(a)
        law = Law("involutive", ("x",), (Eq(X.to(pt).sq(pt), X), Eq(X.sq(pt).to(pt), X)),
                  premises=(Leq(pt, X),))
        involutive = not law.violations(ctx).any()
    return BoundednessProfile(least, good, involutive)


@dataclass(frozen=True)
class StructureKind:
    linear: bool
    meet_semilattice: bool
    join_semilattice: bool
    lattice: bool


def structure_kind(A: FiniteAlgebra) -> StructureKind:
    require_pbck(A, "structure_kind")
    order = derive_order(A)
    meet = meet_table(A) is not None
    join = join_table(A) is not None
    return StructureKind(order.linear, meet, join, meet and join)


def direct_product(A1: FiniteAlgebra, A2: FiniteAlgebra, cap: int = CARRIER_CAP) -> FiniteAlgebra:
    """Componentwise product; the pair ``(i1, i2)`` is encoded as ``i1 * n2 + i2``."""
    require_pbck(A1, "direct_product")
    require_pbck(A2, "direct_product")
    n1, n2 = A1.n, A2.n
    if n1 * n2 > cap:
        raise SizeLimit(f"product carrier {n1 * n2} exceeds cap {cap}")
    i1 = np.repeat(np.arange(n1), n2)
    i2 = np.tile(np.arange(n2), n1)
    arrow = A1.arrow[np.ix_(i1, i1)] * n2 + A2.arrow[np.ix_(i2, i2)]
    squiggle = A1.squiggle[np.ix_(i1, i1)] * n2 + A2.squiggle[np.ix_(i2, i2)]
    names = tuple(f"({A1.labels[a]},{A2.labels[b]})" for a, b in zip(i1, i2))
    return FiniteAlgebra(arrow, squiggle, A1.top * n2 + A2.top, names)


def trivial_algebra() -> FiniteAlgebra:
    return FiniteAlgebra([[0]], [[0]], 0, ("1",))
