"""Internal state operators of type I and type II."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .commutativity import is_commutative
from .core import FiniteAlgebra, meet_table, require_pbck
from .deduction import QuotientResult, classify_subset, show, to_mask, quotient
from .errors import BudgetExceeded, PreconditionViolated, TheoremViolation, WellDefinednessFailure
from .laws import ONE, CheckReport, ClauseResult, Eq, Law, Leq, X, Y, check_laws, mu

DEFAULT_MAP_BUDGET = 5_000_000


def as_map(A: FiniteAlgebra, m) -> np.ndarray:
    """Normalize a map given as an image sequence (indices or names) or a dict."""
    if isinstance(m, Mapping):
        missing = [A.labels[i] for i in range(A.n) if i not in m and A.labels[i] not in m]
        if missing:
            raise ValueError(f"map is not total; missing {', '.join(missing)}")
        img = [A.index(m[i] if i in m else m[A.labels[i]]) for i in range(A.n)]
    else:
        img = [A.index(v) for v in m]
    if len(img) != A.n:
        raise ValueError(f"map has {len(img)} images for {A.n} elements")
    return np.asarray(img, dtype=np.int64)


def identity_map(A: FiniteAlgebra) -> np.ndarray:
    return np.arange(A.n, dtype=np.int64)


def top_map(A: FiniteAlgebra) -> np.ndarray:
    return np.full(A.n, A.top, dtype=np.int64)


def kernel(A: FiniteAlgebra, m) -> int:
    return to_mask(np.flatnonzero(as_map(A, m) == A.top))


def image_set(A: FiniteAlgebra, m) -> int:
    return to_mask(np.unique(as_map(A, m)))


def product_map(A1: FiniteAlgebra, A2: FiniteAlgebra, mu1, mu2) -> np.ndarray:
    """``(x, y) -> (mu1(x), mu2(y))`` on ``direct_product(A1, A2)``."""
    m1, m2 = as_map(A1, mu1), as_map(A2, mu2)
    return (m1[:, None] * A2.n + m2[None, :]).reshape(-1)


# -- axioms ----------------------------------------------------------------

IS1 = Law("IS1", ("x", "y"), (Leq(mu(X), mu(Y)),), premises=(Leq(X, Y),))
IS2 = Law("IS2", ("x", "y"), (
    Eq(mu(X.to(Y)), mu(X.to(Y).sq(Y)).to(mu(Y))),
    Eq(mu(X.sq(Y)), mu(X.sq(Y).to(Y)).sq(mu(Y))),
))
IS2P = Law("IS2'", ("x", "y"), (
    Eq(mu(X.to(Y)), mu(Y.to(X).sq(X)).to(mu(Y))),
    Eq(mu(X.sq(Y)), mu(Y.sq(X).to(X)).sq(mu(Y))),
))
IS3 = Law("IS3", ("x", "y"), (
    Eq(mu(mu(X).to(mu(Y))), mu(X).to(mu(Y))),
    Eq(mu(mu(X).sq(mu(Y))), mu(X).sq(mu(Y))),
))
IS4 = Law("IS4", ("x", "y"), (Eq(mu(mu(X).meet(mu(Y))), mu(X).meet(mu(Y))),))
MEET_CONDITION = Law("meet-condition", ("x", "y"), (
    Eq(mu(X.to(Y)), mu(X).to(mu(X.meet(Y)))),
    Eq(mu(X.sq(Y)), mu(X).sq(mu(X.meet(Y)))),
))

# consequences every state operator must satisfy
CONSEQUENCES = (
    Law("(1)", ("x",), (Eq(mu(ONE), ONE),)),
    Law("(2)", ("x",), (Eq(mu(mu(X)), mu(X)),)),
    Law("(3)", ("x", "y"), (Leq(mu(X.to(Y)), mu(X).to(mu(Y))), Leq(mu(X.sq(Y)), mu(X).sq(mu(Y))))),
)
COMMUTATIVE_CONSEQUENCE = Law("(8)", ("x", "y"), (Eq(mu(X.to(Y)).sq(mu(Y)), mu(X.sq(Y)).to(mu(Y))),))
TYPE2_CONSEQUENCE = Law("type2-(1)", ("x", "y"), (
    Eq(mu(X.to(Y)), mu(X).to(mu(Y))), Eq(mu(X.sq(Y)), mu(X).sq(mu(Y))),
), premises=(Leq(Y, X),))


class StateKind(enum.Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    MORPHISM = "sm"


_KIND_LAWS = {StateKind.TYPE1: (IS1, IS2, IS3), StateKind.TYPE2: (IS1, IS2P, IS3)}
_KIND_BITS = {
    StateKind.TYPE1: kernels.IS1 | kernels.IS2 | kernels.IS3,
    StateKind.TYPE2: kernels.IS1 | kernels.IS2P | kernels.IS3,
    StateKind.MORPHISM: kernels.HOM | kernels.IDEM,
}


def _kind(kind) -> StateKind:
    return kind if isinstance(kind, StateKind) else StateKind(kind)


def check_state(A: FiniteAlgebra, m, kind=StateKind.TYPE1) -> CheckReport:
    kind = _kind(kind)
    if kind is StateKind.MORPHISM:
        raise ValueError("use morphisms.is_state_morphism for state-morphisms")
    require_pbck(A, "check_state")
    return check_laws(kind.value, _KIND_LAWS[kind], A.context(mu=as_map(A, m)))


def check_consequences(A: FiniteAlgebra, m) -> CheckReport:
    """Derived properties of a state operator, evaluated without assuming them."""
    require_pbck(A, "check_consequences")
    img = as_map(A, m)
    laws = CONSEQUENCES + ((COMMUTATIVE_CONSEQUENCE,) if is_commutative(A) else ())
    rep = check_laws("state-consequences", laws, A.context(mu=img))
    ker, im = kernel(A, img), image_set(A, img)
    fixed = to_mask(np.flatnonzero(img == np.arange(A.n)))
    sub = np.zeros(A.n, dtype=bool)
    sub[np.unique(img)] = True
    idx = np.flatnonzero(sub)
    closed = sub[A.arrow[np.ix_(idx, idx)]].all() and sub[A.squiggle[np.ix_(idx, idx)]].all()
    rep.clauses += [
        ClauseResult("(4)", classify_subset(A, ker).is_ds, detail=f"Ker = {show(A, ker)} is not a deductive system"),
        ClauseResult("(5)", bool(closed), detail=f"Im = {show(A, im)} is not closed under the arrows"),
        ClauseResult("(6)", im == fixed, detail=f"Im = {show(A, im)} differs from Fix = {show(A, fixed)}"),
        ClauseResult("(7)", ker & im == 1 << A.top, detail=f"Ker & Im = {show(A, ker & im)}"),
    ]
    rep.clauses = [c if not c.passed else ClauseResult(c.name, True, c.variables) for c in rep.clauses]
    return rep


@dataclass(frozen=True)
class StateClassification:
    is_type1: bool
    is_type2: bool
    is_normal1: bool
    is_normal2: bool
    satisfies_is4: bool | None  # None: not a meet-semilattice
    kernel: int
    image: int
    type1: CheckReport
    type2: CheckReport


def classify_map(A: FiniteAlgebra, m) -> StateClassification:
    require_pbck(A, "classify_map")
    img = as_map(A, m)
    meet = meet_table(A)
    ctx = A.context(mu=img, meet=meet)
    t1 = check_laws("type1", _KIND_LAWS[StateKind.TYPE1], ctx)
    t2 = check_laws("type2", _KIND_LAWS[StateKind.TYPE2], ctx)
    ker = kernel(A, img)
    normal_ker = classify_subset(A, ker).is_normal
    is4 = None if meet is None else not IS4.violations(ctx).any()
    return StateClassification(
        t1.passed, t2.passed, t1.passed and normal_ker, t2.passed and normal_ker,
        is4, ker, image_set(A, img), t1, t2,
    )


def enumerate_states(A: FiniteAlgebra, kind=StateKind.TYPE1, budget: int = DEFAULT_MAP_BUDGET) -> list[np.ndarray]:
    """Every map of the given kind, in lexicographic image order.

    A pruned backtracking pass proposes maps fixing top that are idempotent and
    monotone; each proposal then has to pass the full check.
    """
    kind = _kind(kind)
    require_pbck(A, "enumerate_states")
    maps, count, nodes = kernels.candidate_maps(A.arrow, A.squiggle, A.top, budget)
    if count < 0:
        raise BudgetExceeded(f"map search exceeded {budget} nodes")
    want = _KIND_BITS[kind]
    return [m.copy() for m in maps if int(kernels.state_flags(A.arrow, A.squiggle, A.top, m)) & want == want]


def lift_to_quotient(A: FiniteAlgebra, m) -> tuple[QuotientResult, np.ndarray]:
    """Quotient by ``Ker(mu)`` with the induced map, for a normal type II state ``mu``."""
    img = as_map(A, m)
    cls = classify_map(A, img)
    if not cls.is_normal2:
        raise PreconditionViolated("lift_to_quotient needs a normal type II state operator")
    qr = quotient(A, cls.kernel)
    lifted = _lift(qr, img)
    Q = qr.quotient
    qcls = classify_map(Q, lifted)
    if not (qcls.is_normal1 and qcls.is_normal2):
        raise TheoremViolation("induced map on the quotient is not both a normal type I and type II state")
    return qr, lifted


def _lift(qr: QuotientResult, img: np.ndarray) -> np.ndarray:
    proj = qr.projection
    reps = np.array([(b & -b).bit_length() - 1 for b in qr.blocks])
    lifted = proj[img[reps]]
    bad = np.flatnonzero(proj[img] != lifted[proj])
    if len(bad):
        raise WellDefinednessFailure(f"induced map depends on the representative of block {proj[bad[0]]}")
    return lifted
