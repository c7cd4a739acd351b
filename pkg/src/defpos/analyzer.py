"""Bottom-up abstract interpretation over the Pos/Def domains.

The immediate-consequence step evaluates every clause against the
previous interpretation (naive/Jacobi iteration, so the round count is
independent of clause order) and joins per head predicate.  Clause
evaluation builds one constraint per head argument and per body atom,
then eliminates clause variables by bucketed meet-and-project, which
keeps intermediate truth tables near the natural clause width instead
of the full joint space.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import _kernel as kern
from .boolfun import AbsFun, Domain, ModelSet
from .program import Clause, Program, iter_variables, vars_of

# Truth tables cap out at 2^26 bits (8 MiB); a clause whose elimination
# front exceeds this is beyond desk scale.
MAX_JOINT_WIDTH = 26


class AnalysisError(Exception):
    """A program cannot be analyzed as given."""


class ScaleError(AnalysisError):
    """Clause evaluation needs a wider joint table than the cap allows."""


class NonConvergenceError(AnalysisError):
    """The round guard fired; carries the partial trace for diagnosis."""

    def __init__(self, message: str, trace: IterationTrace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Interpretation:
    """Map from predicate signature to an abstract value of matching width."""

    tag: Domain
    entries: dict

    @classmethod
    def bottom(cls, program: Program, tag: Domain) -> Interpretation:
        return cls(
            tag,
            {sig: AbsFun.bottom(sig[1], tag) for sig in program.signatures()},
        )

    def value(self, signature: tuple[str, int]) -> AbsFun:
        try:
            return self.entries[signature]
        except KeyError:
            name, arity = signature
            raise AnalysisError(f"no entry for predicate {name}/{arity}") from None

    def entails(self, other: Interpretation) -> bool:
        return all(
            val.entails(other.value(sig)) for sig, val in self.entries.items()
        )


@dataclass(frozen=True)
class UpdateEvent:
    """One strict increase of one predicate's value."""

    round: int
    signature: tuple[str, int]
    old: AbsFun
    new: AbsFun


@dataclass(frozen=True)
class IterationTrace:
    """The Kleene sequence I_0, I_1, ... ending in the repeated fixpoint."""

    rounds: tuple
    updates: tuple

    def value_sequence(self, signature: tuple[str, int]) -> list[AbsFun]:
        """Distinct consecutive values one predicate takes, in round order."""
        seq: list[AbsFun] = []
        for interp in self.rounds:
            val = interp.value(signature)
            if not seq or val != seq[-1]:
                seq.append(val)
        return seq


@dataclass(frozen=True)
class AnalysisResult:
    fixpoint: Interpretation
    rounds_to_fixpoint: int
    strict_increases: dict
    tag: Domain
    wall_ms: float
    trace: IterationTrace | None = None


# --- clause evaluation -------------------------------------------------------
#
# A factor is a constraint over a sorted tuple of slots; slot kinds are
# ("b", atom_index, pos) for body-atom formals, ("h", pos) for head
# formals and ("v", name) for clause variables.  Slot 0 is the most
# significant table coordinate.  Tuple ordering of the slot tags gives
# the canonical layout; in particular a predicate value over positions
# 1..r drops straight onto slots ("b", i, 1..r) with no permutation.


@dataclass(frozen=True)
class _Factor:
    slots: tuple
    table: int


def _expand(factor: _Factor, slots: tuple) -> int:
    """Table of `factor` cylindrified onto the superset slot tuple."""
    table = factor.table
    width = len(factor.slots)
    oi = len(factor.slots) - 1
    for ni in range(len(slots) - 1, -1, -1):
        if oi >= 0 and slots[ni] == factor.slots[oi]:
            oi -= 1
        else:
            table = kern.insert_coord(table, width, len(slots) - 1 - ni)
            width += 1
    return table


def _meet(f1: _Factor, f2: _Factor) -> _Factor:
    slots = tuple(sorted(set(f1.slots) | set(f2.slots)))
    if len(slots) > MAX_JOINT_WIDTH:
        raise ScaleError(
            f"clause evaluation needs {len(slots)} joint positions "
            f"(cap {MAX_JOINT_WIDTH})"
        )
    return _Factor(slots, _expand(f1, slots) & _expand(f2, slots))


def _project_out(factor: _Factor, slot) -> _Factor:
    width = len(factor.slots)
    coord = width - 1 - factor.slots.index(slot)
    table = kern.exists_coord(factor.table, width, coord)
    table = kern.drop_coord(table, width, coord)
    return _Factor(tuple(s for s in factor.slots if s != slot), table)


def _iff_factor(target, source_vars) -> _Factor:
    """Constraint slot(target) <-> AND of the named variable slots."""
    slots = tuple(sorted({target} | {("v", v) for v in source_vars}))
    width = len(slots)
    coord = lambda s: width - 1 - slots.index(s)
    table = kern.iff_conj_mask(
        width, coord(target), tuple(coord(("v", v)) for v in source_vars)
    )
    return _Factor(slots, table)


def _atom_factor(index: int, atom, value: AbsFun) -> _Factor:
    """The body atom's constraint, projected onto its variables."""
    arity = atom.arity
    factor = _Factor(tuple(("b", index, j) for j in range(1, arity + 1)), value.table)
    for j, term in enumerate(atom.args, 1):
        factor = _meet(factor, _iff_factor(("b", index, j), vars_of(term)))
        factor = _project_out(factor, ("b", index, j))
    return factor


def abstract_clause(clause: Clause, interp: Interpretation, tag: Domain) -> AbsFun:
    """Abstract one clause: the head-tuple groundness relation it derives.

    Head arguments contribute position <-> vars(term) constraints; each
    body atom contributes the interpretation's value for its predicate,
    threaded onto the clause variables; the conjunction is projected
    onto the head positions.  A bottom body atom makes the clause
    contribute bottom.
    """
    arity = clause.head.arity
    factors = []
    for index, atom in enumerate(clause.body):
        value = interp.value(atom.signature)
        if value.width != atom.arity:
            raise AnalysisError(
                f"entry for {atom.predicate}/{atom.arity} has width {value.width}"
            )
        if value.is_bottom():
            return AbsFun.bottom(arity, tag)
        factors.append(_atom_factor(index, atom, value))
    for j, term in enumerate(clause.head.args, 1):
        factors.append(_iff_factor(("h", j), vars_of(term)))

    # clause variables, first-occurrence order (head first, then body)
    order: dict[str, int] = {}
    for atom in clause.atoms():
        for term in atom.args:
            for name in iter_variables(term):
                order.setdefault(name, len(order))
    for name in sorted(order, key=order.get, reverse=True):
        slot = ("v", name)
        bucket = [f for f in factors if slot in f.slots]
        merged = bucket[0]
        for f in bucket[1:]:
            merged = _meet(merged, f)
        factors = [f for f in factors if slot not in f.slots]
        factors.append(_project_out(merged, slot))

    head_slots = tuple(("h", j) for j in range(1, arity + 1))
    result = _Factor(head_slots, kern.full_mask(arity))
    for f in factors:
        result = _meet(result, f)
    return AbsFun(arity, ModelSet(arity, result.table), tag)


def _step(
    program: Program,
    interp: Interpretation,
    tag: Domain,
    lower: Interpretation | None = None,
) -> Interpretation:
    """One bottom-up step: per predicate, the join over its clauses.

    `lower` is an optional interpretation already known to be entailed
    by the step's result (the previous round of a Kleene chain); def
    closures then saturate incrementally from it instead of from
    scratch.  The result is identical either way.
    """
    entries = {}
    for sig in program.signatures():
        union = 0
        for clause in program.clauses_for(sig):
            union |= abstract_clause(clause, interp, tag).table
        if tag is Domain.DEF:
            if lower is not None:
                union = kern.closure_update(lower.value(sig).table, union)
            else:
                union = kern.closure(union)
        entries[sig] = AbsFun(sig[1], ModelSet(sig[1], union), tag)
    return Interpretation(tag, entries)


def immediate_consequence(
    program: Program, interp: Interpretation, tag: Domain
) -> Interpretation:
    """One bottom-up step: per predicate, the join over its clauses."""
    return _step(program, interp, tag)


def default_max_rounds(program: Program) -> int:
    max_arity = max((sig[1] for sig in program.signatures()), default=1)
    return (1 << max_arity) + max_arity + 8


def analyze(
    program: Program,
    tag: Domain,
    max_rounds: int | None = None,
    record_trace: bool = False,
) -> AnalysisResult:
    """Kleene iteration from the all-bottom interpretation to the fixpoint.

    `max_rounds` bounds the number of immediate-consequence applications
    (the domains are finite, so this is a guard, not a widening);
    exceeding it raises NonConvergenceError with the partial trace.
    """
    if max_rounds is None:
        max_rounds = default_max_rounds(program)
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    started = time.perf_counter()
    interp = Interpretation.bottom(program, tag)
    rounds = [interp]
    updates: list[UpdateEvent] = []
    strict = {sig: 0 for sig in program.signatures()}
    for k in range(max_rounds):
        nxt = _step(program, interp, tag, lower=interp)
        rounds.append(nxt)
        if nxt == interp:
            wall_ms = (time.perf_counter() - started) * 1000.0
            trace = IterationTrace(tuple(rounds), tuple(updates))
            return AnalysisResult(
                fixpoint=nxt,
                rounds_to_fixpoint=k,
                strict_increases=strict,
                tag=tag,
                wall_ms=wall_ms,
                trace=trace if record_trace else None,
            )
        for sig, new in nxt.entries.items():
            old = interp.value(sig)
            if new != old:
                strict[sig] += 1
                updates.append(UpdateEvent(k + 1, sig, old, new))
        interp = nxt
    raise NonConvergenceError(
        f"no fixpoint within {max_rounds} rounds",
        IterationTrace(tuple(rounds), tuple(updates)),
    )


def groundness_summary(result: AnalysisResult) -> dict:
    """Definitely-ground argument positions per predicate signature.

    A bottom value reports every position (vacuously); callers can spot
    that case through the empty model set.
    """
    return {
        sig: val.ground_positions() for sig, val in result.fixpoint.entries.items()
    }
