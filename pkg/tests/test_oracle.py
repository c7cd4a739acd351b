"""Oracle self-tests and main-vs-oracle differential checks."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from defpos.analyzer import Interpretation, abstract_clause, analyze
from defpos.boolfun import Domain, ModelSet, intersection_close
from defpos.generators import def_chain, pos_linear
from defpos.oracle import (
    OracleScaleError,
    expected_chain_sets,
    random_program,
    ref_abstract_clause,
    ref_analyze,
    ref_closure,
)
from defpos.program import parse, render

from conftest import model_sets


def sets_of(absfun):
    return frozenset(absfun.models.values())


class TestRefClosure:
    def test_saturation_example(self):
        assert ref_closure({0b111, 0b110, 0b101}) == {0b111, 0b110, 0b101, 0b100}

    def test_empty(self):
        assert ref_closure(frozenset()) == frozenset()

    def test_exhaustive_width_three(self):
        for table in range(1 << 8):
            values = frozenset(v for v in range(8) if (table >> v) & 1)
            got = frozenset(intersection_close(ModelSet(3, table)).values())
            assert got == ref_closure(values), table

    @given(model_sets())
    @settings(max_examples=200)
    def test_matches_main_closure_on_random_sets(self, s):
        got = frozenset(intersection_close(s).values())
        assert got == ref_closure(frozenset(s.values()))


class TestRefAbstractClause:
    def test_fact_with_shared_variable(self):
        clause = parse("p(X1, X1).").clauses[0]
        got = ref_abstract_clause(clause, {})
        main = abstract_clause(clause, Interpretation(Domain.DEF, {}), Domain.DEF)
        assert got == sets_of(main) == {0b00, 0b11}

    @pytest.mark.parametrize("n", range(1, 6))
    def test_agrees_on_def_chain_rounds(self, n):
        prog = def_chain(n)
        result = analyze(prog, Domain.DEF, record_trace=True)
        for interp in result.trace.rounds:
            values = {sig: sets_of(v) for sig, v in interp.entries.items()}
            for clause in prog.clauses:
                got = ref_abstract_clause(clause, values)
                main = abstract_clause(clause, interp, Domain.DEF)
                assert got == sets_of(main), (n, clause)

    def test_scale_cap_refuses(self):
        clause = parse("p(A, B, C, D) :- q(A, B, C, D).").clauses[0]
        with pytest.raises(OracleScaleError):
            ref_abstract_clause(clause, {("q", 4): frozenset()}, cap=5)

    def test_default_cap_refuses_pos_linear_six(self):
        # the shift clause of s/12 needs 4*6+1 joint positions
        prog = pos_linear(6)
        values = {sig: frozenset() for sig in prog.signatures()}
        with pytest.raises(OracleScaleError):
            ref_abstract_clause(prog.clauses[3], values)


class TestRefAnalyze:
    @pytest.mark.parametrize("tag", ["pos", "def"])
    @pytest.mark.parametrize("n", range(1, 5))
    def test_def_chain_fixpoints_match(self, tag, n):
        main = analyze(def_chain(n), Domain(tag))
        ref = ref_analyze(def_chain(n), tag)
        assert {s: sets_of(v) for s, v in main.fixpoint.entries.items()} == ref.fixpoint
        assert main.strict_increases == ref.strict_increases

    @pytest.mark.parametrize("tag", ["pos", "def"])
    @pytest.mark.parametrize("n", [2, 3])
    def test_pos_linear_fixpoints_match(self, tag, n):
        main = analyze(pos_linear(n), Domain(tag), max_rounds=10000)
        ref = ref_analyze(pos_linear(n), tag)
        assert {s: sets_of(v) for s, v in main.fixpoint.entries.items()} == ref.fixpoint

    def test_thirty_random_programs(self):
        rng = random.Random(421)
        for _ in range(30):
            prog = random_program(rng)
            for tag in ("pos", "def"):
                main = analyze(prog, Domain(tag), max_rounds=1000)
                ref = ref_analyze(prog, tag)
                got = {s: sets_of(v) for s, v in main.fixpoint.entries.items()}
                assert got == ref.fixpoint, (tag, render(prog))


class TestExpectedChain:
    def test_width_two_values(self):
        assert expected_chain_sets(2) == [
            frozenset(),
            frozenset({0b00, 0b11}),
            frozenset({0b00, 0b01, 0b11}),
            frozenset({0b00, 0b01, 0b10, 0b11}),
        ]

    @pytest.mark.parametrize("width", range(1, 9))
    def test_length_is_two_to_the_width(self, width):
        assert len(expected_chain_sets(width)) == 1 << width

    def test_interior_steps_add_one_model(self):
        sets = expected_chain_sets(4)
        for prev, cur in zip(sets[1:], sets[2:]):
            assert len(cur - prev) == 1 and prev < cur


def test_random_program_generation_is_seed_deterministic():
    rng_a, rng_b = random.Random(99), random.Random(99)
    series_a = [render(random_program(rng_a)) for _ in range(10)]
    series_b = [render(random_program(rng_b)) for _ in range(10)]
    assert series_a == series_b
    assert len(set(series_a)) > 1
