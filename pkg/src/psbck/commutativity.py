"""Commutativity of pseudo BCK-algebras: nine equivalent tests and the join.

The four equational bases (Yutani-Kuhr, Kuhr, Palasinski-Wozniakowska and
Cornish style) are checked on raw tables because they characterize
commutative pseudo BCK-algebras from scratch.  The remaining methods
presuppose a pseudo BCK-algebra.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .core import FiniteAlgebra, System, check_axiom_system, derive_order, require_pbck
from .errors import NotAMeasure, PreconditionViolated
from .laws import ONE, CheckReport, ClauseResult, Eq, Law, Leq, X, Y, Z, check_laws


class Method(enum.Enum):
    DEF = "def"
    ONE_SIDED = "one-sided"
    YUTANI_KUHR = "yutani-kuhr"
    KUHR_K = "kuhr-k"
    PALASINSKI_P = "palasinski-p"
    CORNISH_C = "cornish-c"
    CHAR_B = "char-b"
    CHAR_C = "char-c"
    CHAR_D = "char-d"


RAW_METHODS = (Method.YUTANI_KUHR, Method.KUHR_K, Method.PALASINSKI_P, Method.CORNISH_C)

_COMM = (Eq(X.to(Y).sq(Y), Y.to(X).sq(X)), Eq(X.sq(Y).to(Y), Y.sq(X).to(X)))
_EXCHANGE = (Eq(X.to(Y.sq(Z)), Y.sq(X.to(Z))),)
_ONE_LEFT = (Eq(ONE.to(X), X), Eq(ONE.sq(X), X))

METHOD_LAWS: dict[Method, tuple[Law, ...]] = {
    Method.DEF: (
        Law("comm->", ("x", "y"), (_COMM[0],)),
        Law("comm~>", ("x", "y"), (_COMM[1],)),
    ),
    Method.ONE_SIDED: (
        Law("comm<=->", ("x", "y"), (Leq(X.to(Y).sq(Y), Y.to(X).sq(X)),)),
        Law("comm<=~>", ("x", "y"), (Leq(X.sq(Y).to(Y), Y.sq(X).to(X)),)),
    ),
    Method.YUTANI_KUHR: (
        Law("Y1", ("x", "y"), _COMM),
        Law("Y2", ("x", "y", "z"), _EXCHANGE),
        Law("Y3", ("x",), (Eq(X.to(X), ONE), Eq(X.sq(X), ONE))),
        Law("Y4", ("x",), _ONE_LEFT),
    ),
    Method.KUHR_K: (
        Law("K1", ("x", "y"), _COMM),
        Law("K2", ("x", "y", "z"), _EXCHANGE),
        Law("K3", ("x",), (Eq(X.to(ONE), ONE), Eq(X.sq(ONE), ONE))),
        Law("K4", ("x",), _ONE_LEFT),
    ),
    Method.PALASINSKI_P: (
        Law("P1", ("x", "y", "z"), (
            Eq(X.to(Y.sq(Z)).to(Y.sq(X.to(Z))), ONE),
            Eq(X.sq(Y.to(Z)).to(Y.to(X.sq(Z))), ONE),
        )),
        Law("P2", ("x", "y"), _COMM),
        Law("P3", ("x", "y", "z"), (
            Eq(X.to(Y.sq(X)).to(Z), Z),
            Eq(X.to(Y.sq(X)).sq(Z), Z),
            Eq(X.sq(Y.to(X)).to(Z), Z),
            Eq(X.sq(Y.to(X)).sq(Z), Z),
        )),
    ),
    Method.CORNISH_C: (
        Law("C1", ("x", "y"), (Eq(X.to(ONE).sq(Y), Y), Eq(X.sq(ONE).to(Y), Y))),
        Law("C2", ("x", "y", "z"), (Eq(X.to(Y).sq(Z.to(Y)), Y.to(X).sq(Z.to(X))),)),
        Law("C3", ("x", "y", "z"), (Eq(X.sq(Y).to(Z.sq(Y)), Y.sq(X).to(Z.sq(X))),)),
    ),
    Method.CHAR_B: (
        Law("b", ("x", "y"), (
            Eq(X.to(Y), Y.to(X).sq(X).to(Y)),
            Eq(X.sq(Y), Y.sq(X).to(X).sq(Y)),
        )),
    ),
    Method.CHAR_C: (
        Law("c", ("x", "y"), (
            Eq(X.to(Y).sq(Y), X.to(Y).sq(Y).to(X).sq(X)),
            Eq(X.sq(Y).to(Y), X.sq(Y).to(Y).sq(X).to(X)),
        )),
    ),
    Method.CHAR_D: (
        Law("d", ("x", "y"), (Eq(Y, Y.to(X).sq(X)), Eq(Y, Y.sq(X).to(X))), premises=(Leq(X, Y),)),
    ),
}


def check_commutative(A: FiniteAlgebra, method: Method | str = Method.DEF) -> CheckReport:
    method = Method(method) if not isinstance(method, Method) else method
    if method not in RAW_METHODS:
        require_pbck(A, f"commutativity method {method.value}")
    return check_laws(method.value, METHOD_LAWS[method], A.context())


def commutativity_matrix(A: FiniteAlgebra) -> dict[Method, CheckReport]:
    """Every applicable method; the pseudo-BCK-only ones are skipped on non-algebras."""
    out = {}
    for m in Method:
        if m in RAW_METHODS or A.is_pseudo_bck:
            out[m] = check_commutative(A, m)
    return out


def is_commutative(A: FiniteAlgebra) -> bool:
    """Fast verdict: a pseudo BCK-algebra satisfying the defining identities."""
    return A.is_pseudo_bck and bool(kernels.commutative_ok(A.arrow, A.squiggle))


def join(A: FiniteAlgebra, x, y) -> int:
    if not is_commutative(A):
        raise PreconditionViolated("join is only defined through the arrows on commutative algebras")
    x, y = A.index(x), A.index(y)
    return A.sq(A.imp(x, y), y)


def join_operation(A: FiniteAlgebra):
    if not is_commutative(A):
        raise PreconditionViolated("join is only defined through the arrows on commutative algebras")
    return A.squiggle[A.arrow, np.arange(A.n)[None, :]]


# -- measures --------------------------------------------------------------


def _as_measure(A: FiniteAlgebra, m) -> list[Fraction]:
    if isinstance(m, Mapping):
        vals = [Fraction(m[k]) if k in m else None for k in range(A.n)]
        if any(v is None for v in vals):
            raise NotAMeasure("measure must assign a value to every element")
    else:
        vals = [Fraction(v) for v in m]
        if len(vals) != A.n:
            raise NotAMeasure(f"measure has {len(vals)} values for {A.n} elements")
    return vals


def measure_report(A: FiniteAlgebra, m) -> CheckReport:
    """Check ``m(x->y) = m(x~>y) = m(y) - m(x)`` whenever ``y <= x``, in exact arithmetic."""
    require_pbck(A, "is_measure")
    vals = _as_measure(A, m)
    rep = CheckReport("measure")
    neg = [i for i, v in enumerate(vals) if v < 0]
    rep.clauses.append(ClauseResult(
        "nonnegative", not neg, ("x",), (neg[0],) if neg else (),
        f"m({A.labels[neg[0]]}) = {vals[neg[0]]} < 0" if neg else "",
    ))
    bad = None
    for x in range(A.n):
        for y in range(A.n):
            if A.leq(y, x):
                want = vals[y] - vals[x]
                for op, res in (("->", A.imp(x, y)), ("~>", A.sq(x, y))):
                    if vals[res] != want:
                        bad = (x, y, op, res, want)
                        break
            if bad:
                break
        if bad:
            break
    if bad is None:
        rep.clauses.append(ClauseResult("m(x->y)=m(y)-m(x)", True, ("x", "y")))
    else:
        x, y, op, res, want = bad
        nm = A.labels
        rep.clauses.append(ClauseResult(
            "m(x->y)=m(y)-m(x)", False, ("x", "y"), (x, y),
            f"m({nm[x]}{op}{nm[y]}) = m({nm[res]}) = {vals[res]}, expected m({nm[y]}) - m({nm[x]}) = {want}",
        ))
    return rep


def is_measure(A: FiniteAlgebra, m) -> bool:
    return measure_report(A, m).passed


def check_order_determining(A: FiniteAlgebra, measures: Sequence) -> bool:
    """True iff ``m(x) >= m(y)`` for every measure in the system forces ``x <= y``."""
    require_pbck(A, "check_order_determining")
    vals = []
    for k, m in enumerate(measures):
        rep = measure_report(A, m)
        if not rep.passed:
            raise NotAMeasure(f"map #{k} is not a measure: {rep.failures()[0].detail}")
        vals.append(_as_measure(A, m))
    order = derive_order(A).leq
    for x in range(A.n):
        for y in range(A.n):
            if all(v[x] >= v[y] for v in vals) and not order[x, y]:
                return False
    return True


def psbck6_redundant(A: FiniteAlgebra) -> bool:
    """Dropping psBCK6' leaves the verdict unchanged on commutative tables."""
    laws = [law for law in check_axiom_system(A, System.EQUATIONAL).clauses if law.name != "psBCK6'"]
    without = all(c.passed for c in laws) and bool(kernels.commutative_ok(A.arrow, A.squiggle))
    return without == is_commutative(A)
