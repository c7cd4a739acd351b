"""Brute-force reference implementations for differential checking.

The reference clause evaluation enumerates every truth assignment of
the head formals and clause variables as explicit index arrays, filters
by re-evaluating each constraint per assignment, and projects by
reading off the head bits.  Predicate values are plain frozensets of
model values.  Nothing here touches the packed-table algebra the main
analyzer is built on; that independence is the point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .program import Atom, Clause, Compound, Constant, Program, Variable, vars_of

# Enumerating more than 2^24 joint assignments is past desk scale.
SCALE_CAP = 24
_CHUNK = 1 << 21


class OracleScaleError(Exception):
    """The joint assignment space of a clause is too large to enumerate."""


def ref_closure(values) -> frozenset:
    """Intersection closure by full quadratic passes until nothing is added."""
    out = set(values)
    while True:
        added = {a & b for a in out for b in out} - out
        if not added:
            return frozenset(out)
        out |= added


def _conj_bits(bit_arrays, names):
    """AND of the named variables' bit arrays; no names means all-ones."""
    acc = None
    for name in names:
        arr = bit_arrays[name]
        acc = arr if acc is None else acc & arr
    return acc


def ref_abstract_clause(
    clause: Clause, values: dict, cap: int = SCALE_CAP
) -> frozenset:
    """Reference clause evaluation by joint assignment enumeration.

    `values` maps predicate signatures to frozensets of model values.
    Raises OracleScaleError when head formals plus clause variables
    exceed `cap` positions.
    """
    arity = clause.head.arity
    names: list = [("h", j) for j in range(1, arity + 1)]
    seen = set()
    for atom in clause.atoms():
        for term in atom.args:
            for v in sorted(vars_of(term)):
                if v not in seen:
                    seen.add(v)
                    names.append(("v", v))
    total = len(names)
    if total > cap:
        raise OracleScaleError(
            f"clause needs {total} joint positions, oracle cap is {cap}"
        )

    members = {}
    for atom in clause.body:
        sig = atom.signature
        table = np.zeros(1 << atom.arity, dtype=bool)
        if values[sig]:
            table[sorted(values[sig])] = True
        members[id(atom)] = table

    found = set()
    space = 1 << total
    for start in range(0, space, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, space), dtype=np.int64)
        bit_arrays = {
            name: ((idx >> (total - 1 - pos)) & 1).astype(bool)
            for pos, name in enumerate(names)
        }
        sat = np.ones(len(idx), dtype=bool)
        for j, term in enumerate(clause.head.args, 1):
            conj = _conj_bits(bit_arrays, [("v", v) for v in sorted(vars_of(term))])
            target = bit_arrays[("h", j)]
            sat &= target if conj is None else ~(target ^ conj)
        for atom in clause.body:
            arg_value = np.zeros(len(idx), dtype=np.int64)
            for k, term in enumerate(atom.args):
                conj = _conj_bits(bit_arrays, [("v", v) for v in sorted(vars_of(term))])
                bit = (
                    np.ones(len(idx), dtype=np.int64)
                    if conj is None
                    else conj.astype(np.int64)
                )
                arg_value |= bit << (atom.arity - 1 - k)
            sat &= members[id(atom)][arg_value]
        if sat.any():
            head_value = np.zeros(len(idx), dtype=np.int64)
            for j in range(1, arity + 1):
                head_value |= bit_arrays[("h", j)].astype(np.int64) << (arity - j)
            found.update(int(v) for v in np.unique(head_value[sat]))
    return frozenset(found)


def ref_step(program: Program, values: dict, tag: str, cap: int = SCALE_CAP) -> dict:
    """Reference bottom-up step over frozenset-valued interpretations."""
    out = {}
    for sig in program.signatures():
        union: set = set()
        for clause in program.clauses_for(sig):
            union |= ref_abstract_clause(clause, values, cap)
        out[sig] = ref_closure(union) if tag == "def" else frozenset(union)
    return out


@dataclass
class RefResult:
    """Reference fixpoint with the full per-predicate value history."""

    fixpoint: dict
    rounds_to_fixpoint: int
    strict_increases: dict
    sequences: dict

    def value_sequence(self, signature) -> list:
        return self.sequences[signature]


def ref_analyze(
    program: Program, tag: str, max_rounds: int = 100000, cap: int = SCALE_CAP
) -> RefResult:
    """Reference Kleene iteration; tag is the string "pos" or "def"."""
    values = {sig: frozenset() for sig in program.signatures()}
    strict = {sig: 0 for sig in program.signatures()}
    sequences = {sig: [frozenset()] for sig in program.signatures()}
    for k in range(max_rounds):
        nxt = ref_step(program, values, tag, cap)
        if nxt == values:
            return RefResult(values, k, strict, sequences)
        for sig, new in nxt.items():
            if new != values[sig]:
                strict[sig] += 1
                sequences[sig].append(new)
        values = nxt
    raise RuntimeError(f"oracle found no fixpoint within {max_rounds} rounds")


def expected_chain_sets(width: int) -> list:
    """Model-value sets of the canonical def chain, bottom to top."""
    size = 1 << width
    sets = [frozenset()]
    for i in range(1, size - 1):
        sets.append(frozenset(range(i)) | {size - 1})
    sets.append(frozenset(range(size)))
    return sets


def random_program(
    rng: random.Random,
    max_preds: int = 3,
    max_arity: int = 3,
    max_clauses: int = 4,
    max_body: int = 2,
) -> Program:
    """A small random program with consistent arities, for differential runs."""
    preds = [
        (name, rng.randint(1, max_arity))
        for name in ("p", "q", "r")[: rng.randint(1, max_preds)]
    ]
    pool = ["X1", "X2", "X3", "X4"]

    def term(depth: int):
        roll = rng.random()
        if roll < 0.55:
            return Variable(rng.choice(pool))
        if roll < 0.85 or depth > 0:
            return Constant("c")
        return Compound("f", tuple(term(depth + 1) for _ in range(rng.randint(1, 2))))

    def atom(sig):
        name, arity = sig
        return Atom(name, tuple(term(0) for _ in range(arity)))

    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        head_sig = rng.choice(preds)
        body = tuple(
            atom(rng.choice(preds)) for _ in range(rng.randint(0, max_body))
        )
        clauses.append(Clause(atom(head_sig), body))
    return Program(tuple(clauses))
