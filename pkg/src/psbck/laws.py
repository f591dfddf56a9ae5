"""Terms, laws and check reports.

Every axiom in the package is written as a :class:`Law` over a tiny term
language (``x.to(y)`` for the arrow, ``x.sq(y)`` for the squiggle, ``mu(t)``
for a unary operator, ...).  A law is evaluated on the whole ``n**k`` grid of
variable assignments at once with numpy fancy indexing, which gives both the
verdict and the lexicographically first counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np


class Term:
    __slots__ = ()

    def to(self, other: "Term") -> "Term":
        return Op("->", self, other)

    def sq(self, other: "Term") -> "Term":
        return Op("~>", self, other)

    def times(self, other: "Term") -> "Term":
        return Op("*", self, other)

    def meet(self, other: "Term") -> "Term":
        return Op("^", self, other)

    def join(self, other: "Term") -> "Term":
        return Op("v", self, other)


@dataclass(frozen=True, eq=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False)
class One(Term):
    pass


@dataclass(frozen=True, eq=False)
class Const(Term):
    """A fixed element, e.g. the least element 0 or a pointing constant."""

    index: int
    label: str = "0"


@dataclass(frozen=True, eq=False)
class Op(Term):
    op: str
    left: Term
    right: Term


@dataclass(frozen=True, eq=False)
class Mu(Term):
    arg: Term


def mu(t: Term) -> Term:
    return Mu(t)


ONE = One()
X, Y, Z, U = Var("x"), Var("y"), Var("z"), Var("u")

_TABLE_FOR_OP = {"->": "arrow", "~>": "squiggle", "*": "prod", "^": "meet", "v": "join"}


@dataclass
class Context:
    """Tables a law is evaluated against."""

    n: int
    arrow: np.ndarray
    squiggle: np.ndarray
    top: int
    names: Sequence[str]
    prod: np.ndarray | None = None
    meet: np.ndarray | None = None
    join: np.ndarray | None = None
    mu: np.ndarray | None = None
    members: np.ndarray | None = None  # boolean membership vector for In atoms


def evaluate(t: Term, ctx: Context, env: dict[str, Any]):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, One):
        return ctx.top
    if isinstance(t, Const):
        return t.index
    if isinstance(t, Mu):
        if ctx.mu is None:
            raise ValueError("law mentions mu but no map was supplied")
        return ctx.mu[evaluate(t.arg, ctx, env)]
    table = getattr(ctx, _TABLE_FOR_OP[t.op])
    if table is None:
        raise ValueError(f"law needs the {_TABLE_FOR_OP[t.op]} table")
    return table[evaluate(t.left, ctx, env), evaluate(t.right, ctx, env)]


def render(t: Term, ctx: Context, env: dict[str, int], outer: bool = True) -> str:
    if isinstance(t, Var):
        return ctx.names[env[t.name]]
    if isinstance(t, One):
        return ctx.names[ctx.top]
    if isinstance(t, Const):
        return ctx.names[t.index]
    if isinstance(t, Mu):
        return f"mu({render(t.arg, ctx, env)})"
    s = f"{render(t.left, ctx, env, False)}{t.op}{render(t.right, ctx, env, False)}"
    return s if outer else f"({s})"


# -- atoms -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True, eq=False)
class Leq:
    """``lhs <= rhs`` in the order derived from the arrow."""

    lhs: Term
    rhs: Term


@dataclass(frozen=True, eq=False)
class In:
    """Membership of a term's value in the subset held by the context."""

    term: Term
    negate: bool = False


Atom = Eq | Leq | In


def _atom_holds(a: Atom, ctx: Context, env):
    if isinstance(a, Eq):
        return evaluate(a.lhs, ctx, env) == evaluate(a.rhs, ctx, env)
    if isinstance(a, Leq):
        return ctx.arrow[evaluate(a.lhs, ctx, env), evaluate(a.rhs, ctx, env)] == ctx.top
    held = ctx.members[evaluate(a.term, ctx, env)]
    return ~held if a.negate else held


def _describe_atom(a: Atom, ctx: Context, env) -> str:
    nm = ctx.names
    if isinstance(a, Eq):
        lhs, rhs = a.lhs, a.rhs
        if isinstance(lhs, (Var, One, Const)) and not isinstance(rhs, (Var, One, Const)):
            lhs, rhs = rhs, lhs  # put the compound side first: "y->x~>x = 1, expected a"
        lv, rv = int(evaluate(lhs, ctx, env)), int(evaluate(rhs, ctx, env))
        return f"{render(lhs, ctx, env)} = {nm[lv]}, expected {nm[rv]}"
    if isinstance(a, Leq):
        lv, rv = int(evaluate(a.lhs, ctx, env)), int(evaluate(a.rhs, ctx, env))
        return f"{render(a.lhs, ctx, env)} = {nm[lv]} is not <= {render(a.rhs, ctx, env)} = {nm[rv]}"
    v = int(evaluate(a.term, ctx, env))
    where = "in" if a.negate else "not in"
    return f"{render(a.term, ctx, env)} = {nm[v]} {where} D"


@dataclass(frozen=True, eq=False)
class Law:
    """``premises => conclusions`` (or ``<=>`` when ``iff``), universally quantified.

    Both sides are conjunctions of atoms; an empty premise list makes the law
    an identity or inequality.
    """

    name: str
    variables: tuple[str, ...]
    conclusions: tuple[Atom, ...]
    premises: tuple[Atom, ...] = ()
    iff: bool = False

    def _grid_env(self, n: int) -> dict[str, np.ndarray]:
        k = len(self.variables)
        env = {}
        for axis, v in enumerate(self.variables):
            shape = [1] * k
            shape[axis] = n
            env[v] = np.arange(n).reshape(shape)
        return env

    def violations(self, ctx: Context) -> np.ndarray:
        env = self._grid_env(ctx.n)
        shape = (ctx.n,) * len(self.variables)
        concl = np.ones(shape, dtype=bool)
        for a in self.conclusions:
            concl &= np.broadcast_to(_atom_holds(a, ctx, env), shape)
        prem = np.ones(shape, dtype=bool)
        for a in self.premises:
            prem &= np.broadcast_to(_atom_holds(a, ctx, env), shape)
        if self.iff:
            return prem != concl
        return prem & ~concl

    def describe(self, ctx: Context, witness: Sequence[int]) -> str:
        env = dict(zip(self.variables, (int(w) for w in witness)))
        prem_ok = all(bool(_atom_holds(a, ctx, env)) for a in self.premises)
        if self.iff and not prem_ok:
            failed = next(a for a in self.premises if not bool(_atom_holds(a, ctx, env)))
            return f"{_describe_atom(failed, ctx, env)} although the converse side holds"
        failed = next(a for a in self.conclusions if not bool(_atom_holds(a, ctx, env)))
        return _describe_atom(failed, ctx, env)


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    variables: tuple[str, ...] = ()
    witness: tuple[int, ...] = ()
    detail: str = ""
    all_witnesses: tuple[tuple[int, ...], ...] | None = None


@dataclass
class CheckReport:
    suite: str
    clauses: list[ClauseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def __bool__(self) -> bool:
        return self.passed

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[ClauseResult]:
        return [c for c in self.clauses if not c.passed]

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        def show(i):
            return names[i] if names is not None else i

        return {
            "suite": self.suite,
            "passed": self.passed,
            "clauses": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "witness": {v: show(w) for v, w in zip(c.variables, c.witness)}
                    if c.variables
                    else [show(w) for w in c.witness],
                    "detail": c.detail,
                }
                for c in self.clauses
            ],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.clauses:
            if c.passed:
                out.append(f"{c.name}: ok")
            else:
                out.append(f"{c.name}: {c.detail}")
        return out


def check_laws(suite: str, laws: Sequence[Law], ctx: Context, all_witnesses: bool = False) -> CheckReport:
    report = CheckReport(suite)
    for law in laws:
        viol = law.violations(ctx)
        if not viol.any():
            report.clauses.append(ClauseResult(law.name, True, law.variables))
            continue
        hits = np.argwhere(viol)
        first = tuple(int(i) for i in hits[0])
        report.clauses.append(
            ClauseResult(
                law.name,
                False,
                law.variables,
                first,
                law.describe(ctx, first),
                tuple(tuple(int(i) for i in h) for h in hits) if all_witnesses else None,
            )
        )
    return report


def holds(law: Law, ctx: Context) -> bool:
    return not law.violations(ctx).any()
