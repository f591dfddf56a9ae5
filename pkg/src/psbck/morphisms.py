"""State-morphism operators: idempotent endomorphisms and their deductive systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .commutativity import is_commutative
from .core import FiniteAlgebra, derive_order, require_pbck
from .deduction import QuotientResult, classify_subset, members, quotient, show, to_mask, as_mask
from .errors import NotDS, NotLinear, NotStateMorphism, TheoremViolation
from .laws import ONE, CheckReport, ClauseResult, Eq, Law, X, Y, check_laws, mu
from .states import StateKind, _lift, as_map, classify_map, enumerate_states, kernel

HOMOMORPHISM_LAWS = (
    Law("hom->", ("x", "y"), (Eq(mu(X.to(Y)), mu(X).to(mu(Y))),)),
    Law("hom~>", ("x", "y"), (Eq(mu(X.sq(Y)), mu(X).sq(mu(Y))),)),
    Law("hom-top", (), (Eq(mu(ONE), ONE),)),
)
IDEMPOTENT_LAW = Law("idempotent", ("x",), (Eq(mu(mu(X)), mu(X)),))


@dataclass(frozen=True)
class MorphismReport:
    is_endomorphism: bool
    is_idempotent: bool
    kernel: int
    report: CheckReport

    @property
    def is_state_morphism(self) -> bool:
        return self.is_endomorphism and self.is_idempotent


def is_state_morphism(A: FiniteAlgebra, m) -> MorphismReport:
    require_pbck(A, "is_state_morphism")
    img = as_map(A, m)
    ctx = A.context(mu=img)
    hom = check_laws("endomorphism", HOMOMORPHISM_LAWS, ctx)
    idem = check_laws("idempotent", (IDEMPOTENT_LAW,), ctx)
    rep = CheckReport("state-morphism", hom.clauses + idem.clauses)
    return MorphismReport(hom.passed, idem.passed, kernel(A, img), rep)


def _require_sm(A: FiniteAlgebra, img: np.ndarray, what: str) -> None:
    r = is_state_morphism(A, img)
    if not r.is_state_morphism:
        bad = r.report.failures()[0]
        raise NotStateMorphism(f"{what} needs a state-morphism; {bad.name}: {bad.detail}")


def _require_ds(A: FiniteAlgebra, D: int) -> None:
    if not classify_subset(A, D).is_ds:
        raise NotDS(f"{show(A, D)} is not a deductive system")


def kernel_characterizations(A: FiniteAlgebra, m) -> CheckReport:
    """``Ker(mu)`` against its four descriptions by arrows between x and mu(x)."""
    img = as_map(A, m)
    _require_sm(A, img, "kernel_characterizations")
    ker = kernel(A, img)
    xs = np.arange(A.n)
    sets = {
        "mu(x)->x": A.arrow[img, xs],
        "x->mu(x)": A.arrow[xs, img],
        "mu(x)~>x": A.squiggle[img, xs],
        "x~>mu(x)": A.squiggle[xs, img],
    }
    rep = CheckReport("kernel-characterizations")
    for name, vals in sets.items():
        got = to_mask(vals)
        rep.clauses.append(ClauseResult(
            f"Ker={{{name}}}", got == ker, (),
            () if got == ker else tuple(members(got ^ ker)[:1]),
            "" if got == ker else f"{{{name}}} = {show(A, got)} but Ker = {show(A, ker)}",
        ))
    trivial = ker == 1 << A.top
    ok = not trivial or np.array_equal(img, xs)
    bad = np.flatnonzero(img != xs)
    rep.clauses.append(ClauseResult(
        "Ker={1}=>Id", bool(ok), (),
        () if ok else (int(bad[0]),),
        "" if ok else f"Ker is trivial but mu({A.labels[bad[0]]}) = {A.labels[img[bad[0]]]}",
    ))
    return rep


def image_of(img: np.ndarray, D: int) -> int:
    return to_mask(img[members(D)])


def mu_state_ds(A: FiniteAlgebra, m, D) -> bool:
    img = as_map(A, m)
    D = as_mask(A, D)
    _require_sm(A, img, "mu_state_ds")
    _require_ds(A, D)
    return image_of(img, D) & ~D == 0


def preimage_ds(A: FiniteAlgebra, m, D) -> int:
    """``mu^-1(D)``; the inherited DS, normality and commutativity are asserted."""
    img = as_map(A, m)
    D = as_mask(A, D)
    _require_sm(A, img, "preimage_ds")
    _require_ds(A, D)
    inside = np.array([(D >> int(v)) & 1 for v in img], dtype=bool)
    pre = to_mask(np.flatnonzero(inside))
    cD, cpre = classify_subset(A, D), classify_subset(A, pre)
    if not cpre.is_ds or kernel(A, img) & ~pre:
        raise TheoremViolation(f"mu^-1({show(A, D)}) = {show(A, pre)} is not a DS containing Ker(mu)")
    if cD.is_normal and not cpre.is_normal:
        raise TheoremViolation(f"mu^-1 of the normal DS {show(A, D)} is not normal")
    if cD.is_commutative and not cpre.is_commutative:
        raise TheoremViolation(f"mu^-1 of the commutative DS {show(A, D)} is not commutative")
    return pre


def image_clause(A: FiniteAlgebra, m, D) -> str:
    """``'pass'``, ``'fail'`` or ``'not_applicable'`` for the image statement.

    For surjective mu and a mu-state DS D, mu(D) and mu(mu(D)) must be mu-state
    deductive systems.  Surjectivity is computed, never assumed.
    """
    img = as_map(A, m)
    D = as_mask(A, D)
    if len(np.unique(img)) != A.n or not mu_state_ds(A, img, D):
        return "not_applicable"
    for S in iterated_images(img, D, 2):
        if not (classify_subset(A, S).is_ds and image_of(img, S) & ~S == 0):
            return "fail"
    return "pass"


def iterated_images(img: np.ndarray, D: int, k: int) -> list[int]:
    """``[mu(D), mu^2(D), ..., mu^k(D)]``."""
    out = []
    S = D
    for _ in range(k):
        S = image_of(img, S)
        out.append(S)
    return out


def quotient_sm(A: FiniteAlgebra, m) -> tuple[QuotientResult, np.ndarray]:
    img = as_map(A, m)
    _require_sm(A, img, "quotient_sm")
    ker = kernel(A, img)
    if not classify_subset(A, ker).is_normal:
        raise TheoremViolation(f"kernel {show(A, ker)} of a state-morphism is not normal")
    qr = quotient(A, ker)
    lifted = _lift(qr, img)
    if not is_state_morphism(qr.quotient, lifted).is_state_morphism:
        raise TheoremViolation("induced map on the quotient is not a state-morphism")
    if not np.array_equal(qr.projection[img], qr.projection):
        x = int(np.flatnonzero(qr.projection[img] != qr.projection)[0])
        raise TheoremViolation(f"pi(mu({A.labels[x]})) differs from pi({A.labels[x]})")
    return qr, lifted


def check_linear_theorems(A: FiniteAlgebra) -> CheckReport:
    """On a linear algebra: normal type II states are state-morphisms, and so is every
    state when the algebra is also commutative (that clause is omitted otherwise)."""
    require_pbck(A, "check_linear_theorems")
    if not derive_order(A).linear:
        raise NotLinear("algebra is not linearly ordered")
    sms = {tuple(s) for s in enumerate_states(A, StateKind.MORPHISM)}
    rep = CheckReport("linear-theorems")

    def clause(name, maps):
        bad = [mm for mm in maps if tuple(mm) not in sms]
        rep.clauses.append(ClauseResult(
            name, not bad, (), tuple(int(v) for v in bad[0]) if bad else (),
            f"state ({' '.join(A.labels[v] for v in bad[0])}) is not a state-morphism" if bad else "",
        ))

    type2 = enumerate_states(A, StateKind.TYPE2)
    clause("normal-type2=>sm", [s for s in type2 if classify_map(A, s).is_normal2])
    if is_commutative(A):
        type1 = enumerate_states(A, StateKind.TYPE1)
        clause("state=>sm", type1 + type2)
    return rep
