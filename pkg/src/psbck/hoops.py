"""Pseudo-hoops: a product table on top of the two arrows."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import FiniteAlgebra, System, check_axiom_system, meet_table
from .errors import NotAHoop, TheoremViolation
from .io import read_file
from .laws import ONE, CheckReport, Eq, Law, Leq, X, Y, Z, check_laws


@dataclass(frozen=True)
class HoopAlgebra:
    base: FiniteAlgebra
    prod: np.ndarray

    def __post_init__(self):
        p = np.array(self.prod, dtype=np.int64)
        n = self.base.n
        if p.shape != (n, n):
            raise ValueError(f"product table has shape {p.shape}, expected {(n, n)}")
        if p.min() < 0 or p.max() >= n:
            raise ValueError("product table entries must be element indices")
        p.setflags(write=False)
        object.__setattr__(self, "prod", p)

    def context(self):
        return self.base.context(prod=self.prod)


def load_hoop(path) -> HoopAlgebra:
    parsed = read_file(path)
    if parsed.prod is None:
        raise ValueError(f"{path}: no 'prod' section")
    return HoopAlgebra(parsed.algebra(), parsed.prod)


class Level(enum.Enum):
    HOOP = "hoop"
    WAJSBERG = "wajsberg"
    BASIC = "basic"


HOOP_LAWS = (
    Law("psH1", ("x",), (Eq(X.times(ONE), X), Eq(ONE.times(X), X))),
    Law("psH2", ("x",), (Eq(X.to(X), ONE), Eq(X.sq(X), ONE))),
    Law("psH3", ("x", "y", "z"), (Eq(X.times(Y).to(Z), X.to(Y.to(Z))),)),
    Law("psH4", ("x", "y", "z"), (Eq(X.times(Y).sq(Z), Y.sq(X.sq(Z))),)),
    Law("psH5", ("x", "y"), (
        Eq(X.to(Y).times(X), Y.to(X).times(Y)),
        Eq(X.to(Y).times(X), X.times(X.sq(Y))),
        Eq(X.to(Y).times(X), Y.times(Y.sq(X))),
    )),
)
WAJSBERG_LAWS = (
    Law("W1", ("x", "y"), (Eq(X.to(Y).sq(Y), Y.to(X).sq(X)),)),
    Law("W2", ("x", "y"), (Eq(X.sq(Y).to(Y), Y.sq(X).to(X)),)),
)
BASIC_LAWS = (
    Law("B1", ("x", "y", "z"), (Leq(X.to(Y).to(Z), Y.to(X).to(Z).to(Z)),)),
    Law("B2", ("x", "y", "z"), (Leq(X.sq(Y).sq(Z), Y.sq(X).sq(Z).sq(Z)),)),
)
_LEVEL_LAWS = {
    Level.HOOP: HOOP_LAWS,
    Level.WAJSBERG: HOOP_LAWS + WAJSBERG_LAWS,
    Level.BASIC: HOOP_LAWS + BASIC_LAWS,
}


def check_hoop(H: HoopAlgebra, level: Level | str = Level.HOOP) -> CheckReport:
    level = Level(level) if not isinstance(level, Level) else level
    return check_laws(level.value, _LEVEL_LAWS[level], H.context())


def to_pbck(H: HoopAlgebra) -> FiniteAlgebra:
    """The underlying pseudo BCK-meet-semilattice, with the bridge re-verified."""
    rep = check_hoop(H)
    if not rep.passed:
        bad = rep.failures()[0]
        raise NotAHoop(f"{bad.name}: {bad.detail}")
    A = H.base
    if not check_axiom_system(A, System.EQUATIONAL).passed:
        raise TheoremViolation("reduct of a pseudo-hoop is not a pseudo BCK-algebra")
    meet = meet_table(A)
    if meet is None:
        raise TheoremViolation("reduct of a pseudo-hoop is not a meet-semilattice")
    via_prod = H.prod[A.arrow, np.arange(A.n)[:, None]]  # (x->y) * x at [x, y]
    if not np.array_equal(meet, via_prod):
        x, y = np.argwhere(meet != via_prod)[0]
        raise TheoremViolation(f"meet of {A.labels[x]} and {A.labels[y]} differs from (x->y)*x")
    return A
