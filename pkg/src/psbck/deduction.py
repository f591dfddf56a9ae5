"""Deductive systems, congruences and quotients, measure kernels."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .commutativity import is_commutative, measure_report
from .core import FiniteAlgebra, System, check_axiom_system, require_pbck
from .errors import NotAMeasure, NotDS, NotNormal, TheoremViolation, WellDefinednessFailure
from .laws import ONE, CheckReport, Law, X, Y, Z, In, check_laws

Subset = int  # bitmask over element indices


def to_mask(members: Iterable[int]) -> Subset:
    m = 0
    for i in members:
        m |= 1 << int(i)
    return m


def as_mask(A: FiniteAlgebra, S) -> Subset:
    """Accept a bitmask, or an iterable of indices or element names."""
    if isinstance(S, (int, np.integer)):
        if S < 0 or S >> A.n:
            raise ValueError(f"mask {S:#x} has bits outside the carrier")
        return int(S)
    return to_mask(A.index(s) for s in S)


def members(mask: Subset) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(A: FiniteAlgebra) -> Subset:
    return (1 << A.n) - 1


def membership(A: FiniteAlgebra, mask: Subset) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(A.n)], dtype=bool)


def show(A: FiniteAlgebra, mask: Subset) -> str:
    return "{" + ",".join(A.labels[i] for i in members(mask)) + "}"


# -- classification --------------------------------------------------------

DS_LAWS = (
    Law("i", ("x",), (In(ONE),)),
    Law("ii", ("x", "y"), (In(Y),), premises=(In(X), In(X.to(Y)))),
    Law("ii'", ("x", "y"), (In(Y),), premises=(In(X), In(X.sq(Y)))),
)
NORMAL_LAWS = (Law("iii", ("x", "y"), (In(X.sq(Y)),), premises=(In(X.to(Y)),), iff=True),)
CDS_LAWS = (
    Law("cds1", ("x", "y"), (In(X.to(Y).sq(Y).to(X)),), premises=(In(Y.to(X)),)),
    Law("cds2", ("x", "y"), (In(X.sq(Y).to(Y).sq(X)),), premises=(In(Y.sq(X)),)),
)
ALT_CDS_LAWS = (
    Law("(1)", ("x",), (In(ONE),)),
    Law("(2)", ("x", "y", "z"), (In(X.to(Y).sq(Y).to(X)),), premises=(In(Z.to(Y.to(X))), In(Z))),
    Law("(3)", ("x", "y", "z"), (In(X.sq(Y).to(Y).sq(X)),), premises=(In(Z.sq(Y.sq(X))), In(Z))),
)


@dataclass(frozen=True)
class DSClassification:
    is_ds: bool
    is_normal: bool
    is_commutative: bool
    report: CheckReport


def classify_subset(A: FiniteAlgebra, S) -> DSClassification:
    require_pbck(A, "classify_subset")
    mask = as_mask(A, S)
    ctx = A.context(members=membership(A, mask))
    ds = check_laws("ds", DS_LAWS, ctx)
    normal = check_laws("normal", NORMAL_LAWS, ctx)
    comm = check_laws("commutative", CDS_LAWS, ctx)
    report = CheckReport("deductive-system", ds.clauses + normal.clauses + comm.clauses)
    return DSClassification(ds.passed, ds.passed and normal.passed, ds.passed and comm.passed, report)


def classify_subset_alt_commutative(A: FiniteAlgebra, S) -> bool:
    require_pbck(A, "classify_subset_alt_commutative")
    ctx = A.context(members=membership(A, as_mask(A, S)))
    return check_laws("cds-alt", ALT_CDS_LAWS, ctx).passed


def _flags(A: FiniteAlgebra, mask: Subset) -> int:
    return int(kernels.ds_flags(A.arrow, A.squiggle, A.top, membership(A, mask)))


class DSFilter(enum.Enum):
    ALL = "all"
    NORMAL = "normal"
    COMMUTATIVE = "commutative"


def enumerate_ds(A: FiniteAlgebra, filter: DSFilter | str = DSFilter.ALL) -> list[Subset]:
    """All deductive systems passing ``filter``, as bitmasks in ascending order."""
    require_pbck(A, "enumerate_ds")
    filter = DSFilter(filter) if not isinstance(filter, DSFilter) else filter
    want = {DSFilter.ALL: kernels.DS, DSFilter.NORMAL: kernels.NORMAL, DSFilter.COMMUTATIVE: kernels.COMM}[filter]
    topbit = 1 << A.top
    out = []
    for mask in range(1 << A.n):
        if mask & topbit and _flags(A, mask) & want:
            out.append(mask)
    return out


def generated_ds(A: FiniteAlgebra, X) -> Subset:
    """Least deductive system containing ``X``: close under modus ponens for both arrows."""
    require_pbck(A, "generated_ds")
    inside = membership(A, as_mask(A, X) | (1 << A.top))
    changed = True
    while changed:
        changed = False
        for x in np.flatnonzero(inside):
            new = (inside[A.arrow[x]] | inside[A.squiggle[x]]) & ~inside
            if new.any():
                inside |= new
                changed = True
    return to_mask(np.flatnonzero(inside))


def is_simple(A: FiniteAlgebra) -> bool:
    return len(enumerate_ds(A)) == 2


# -- quotients -------------------------------------------------------------


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteAlgebra
    projection: np.ndarray
    blocks: tuple[Subset, ...]

    def kernel(self) -> Subset:
        return to_mask(np.flatnonzero(self.projection == self.quotient.top))


def quotient(A: FiniteAlgebra, H) -> QuotientResult:
    """``A/H`` for a normal deductive system ``H``; well-definedness is re-verified."""
    mask = as_mask(A, H)
    cls = classify_subset(A, mask)
    if not cls.is_ds:
        bad = cls.report.failures()[0]
        raise NotDS(f"{show(A, mask)} is not a deductive system; {bad.name}: {bad.detail}")
    inside = membership(A, mask)
    if not cls.is_normal:
        # prefer a pair with x->y in H and x~>y outside; else the mirror case
        a_in, s_in = inside[A.arrow], inside[A.squiggle]
        hits = np.argwhere(a_in & ~s_in)
        op, other = "->", "~>"
        if not len(hits):
            hits, op, other = np.argwhere(s_in & ~a_in), "~>", "->"
        x, y = (int(v) for v in hits[0])
        nm = A.labels
        raise NotNormal(
            f"{show(A, mask)} is not normal; {nm[x]}{op}{nm[y]} is in H but {nm[x]}{other}{nm[y]} is not",
            (x, y),
        )
    theta = inside[A.arrow] & inside[A.arrow.T]
    proj = -np.ones(A.n, dtype=np.int64)
    blocks = []
    for x in range(A.n):
        if proj[x] < 0:
            cls_members = np.flatnonzero(theta[x])
            proj[cls_members] = len(blocks)
            blocks.append(to_mask(cls_members))
    k = len(blocks)
    reps = np.array([members(b)[0] for b in blocks])
    arrow = proj[A.arrow[np.ix_(reps, reps)]]
    squiggle = proj[A.squiggle[np.ix_(reps, reps)]]
    # every representative choice must give the same block
    for table, q, label in ((A.arrow, arrow, "->"), (A.squiggle, squiggle, "~>")):
        lifted = proj[table]
        expect = q[np.ix_(proj, proj)]
        if not np.array_equal(lifted, expect):
            x, y = np.argwhere(lifted != expect)[0]
            raise WellDefinednessFailure(
                f"quotient {label} depends on representatives at ({A.labels[x]}, {A.labels[y]})"
            )
    names = tuple("[" + ",".join(A.labels[i] for i in members(b)) + "]" for b in blocks)
    Q = FiniteAlgebra(arrow, squiggle, int(proj[A.top]), names)
    res = QuotientResult(Q, proj, tuple(blocks))
    if res.kernel() != mask:
        raise TheoremViolation(f"Ker(pi_H) = {show(A, res.kernel())} differs from H = {show(A, mask)}")
    if blocks[proj[A.top]] != mask:
        raise TheoremViolation("block of top differs from H")
    if not Q.is_pseudo_bck:
        raise TheoremViolation("quotient is not a pseudo BCK-algebra: "
                               + check_axiom_system(Q, System.EQUATIONAL).lines()[0])
    return res


# -- measures and iterated arrows ------------------------------------------


def measure_kernel(A: FiniteAlgebra, m) -> Subset:
    """Zero set of a measure; asserts it is a normal commutative DS with commutative quotient."""
    rep = measure_report(A, m)
    if not rep.passed:
        raise NotAMeasure(rep.failures()[0].detail)
    vals = [m[i] for i in range(A.n)]
    ker = to_mask(i for i, v in enumerate(vals) if v == 0)
    cls = classify_subset(A, ker)
    if not (cls.is_normal and cls.is_commutative):
        raise TheoremViolation(f"measure kernel {show(A, ker)} is not a normal commutative deductive system")
    if not is_commutative(quotient(A, ker).quotient):
        raise TheoremViolation(f"A/{show(A, ker)} is not commutative")
    return ker


def iter_arrow(A: FiniteAlgebra, x, y, n: int, side: str = "arrow") -> int:
    """``x ->^n y`` (or ``x ~>^n y`` with ``side='squiggle'``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    table = {"arrow": A.arrow, "->": A.arrow, "squiggle": A.squiggle, "~>": A.squiggle}[side]
    x, y = A.index(x), A.index(y)
    for _ in range(n):
        y = int(table[x, y])
    return y
