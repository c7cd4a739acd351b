"""Worst-case program families.

Two parametric families whose bottom-up groundness analyses walk long
chains: ``def-chain`` (one n-ary predicate whose def analysis climbs
the full 2^n - 1 step chain; size quadratic in n) and ``pos-linear``
(a linear-size program whose pos analysis still needs about 2^n
rounds).  Emitted variable names mirror the usual presentation
(X1, X2, ..., A1..., B1..., W); the analyzer is name-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .program import Atom, Clause, Constant, Program, Variable


def def_chain(n: int) -> Program:
    """The quadratic-size family counting 0..2^n-2 in its arguments.

    n+1 clauses for p/n.  Clause k (1-based) moves the constant one
    position left while shifting a variable through; the last clause is
    the all-equal fact.
    """
    if n < 1:
        raise ValueError("def-chain needs n >= 1")
    c = Constant("c")
    x1 = Variable("X1")
    clauses = []
    for k in range(1, n + 1):
        avars = tuple(Variable(f"X{n - k + 2 - j}") for j in range(1, n - k + 1))
        head = Atom("p", avars + (c,) + (x1,) * (k - 1))
        body = Atom("p", avars + (x1,) + (c,) * (k - 1))
        clauses.append(Clause(head, (body,)))
    clauses.append(Clause(Atom("p", (x1,) * n)))
    return Program(tuple(clauses))


def pos_linear(n: int) -> Program:
    """The linear-size family (total argument count 11n) driving p/n.

    The 2n arguments of s/2n hold two n-digit binary counters (first is
    the successor of the second); p/n consumes the successor pairs.
    """
    if n < 2:
        raise ValueError("pos-linear needs n >= 2")
    c = Constant("c")
    x1 = Variable("X1")
    w = Variable("W")
    avars = tuple(Variable(f"A{i}") for i in range(1, n + 1))
    bvars = tuple(Variable(f"B{i}") for i in range(1, n + 1))
    return Program(
        (
            Clause(Atom("p", (x1,) * n)),
            Clause(
                Atom("p", avars),
                (Atom("p", bvars), Atom("s", avars + bvars)),
            ),
            Clause(Atom("s", (c,) + (x1,) * (n - 1) + (x1,) + (c,) * (n - 1))),
            Clause(
                Atom("s", (w,) + avars[: n - 1] + (w,) + bvars[: n - 1]),
                (Atom("s", avars + bvars),),
            ),
        )
    )


@dataclass(frozen=True)
class Family:
    """A named program family with its smallest admissible n."""

    name: str
    min_n: int
    build: Callable[[int], Program]

    def generate(self, n: int) -> Program:
        if n < self.min_n:
            raise ValueError(f"{self.name} needs n >= {self.min_n}")
        return self.build(n)


FAMILIES = {
    "def-chain": Family("def-chain", 1, def_chain),
    "pos-linear": Family("pos-linear", 2, pos_linear),
}
