"""Clause evaluation, one-step operator, and Kleene iteration tests."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defpos.analyzer import (
    AnalysisError,
    Interpretation,
    NonConvergenceError,
    abstract_clause,
    analyze,
    default_max_rounds,
    groundness_summary,
    immediate_consequence,
)
from defpos.boolfun import (
    AbsFun,
    Domain,
    chain_element,
    is_intersection_closed,
)
from defpos.generators import def_chain, pos_linear
from defpos.oracle import random_program
from defpos.program import Program, parse


def pfun(width, *values, tag=Domain.DEF):
    return AbsFun.from_values(width, values, tag)


def interp_of(tag, **by_name):
    entries = {}
    for name, value in by_name.items():
        entries[(name, value.width)] = value
    return Interpretation(tag, entries)


class TestAbstractClause:
    def test_shared_variable_fact(self):
        clause = parse("p(X1, X1).").clauses[0]
        interp = Interpretation(Domain.DEF, {})
        got = abstract_clause(clause, interp, Domain.DEF)
        assert set(got.models.values()) == {0b00, 0b11}

    def test_recursive_clause_projects_body(self):
        clause = parse("p(X2, c) :- p(X2, X1).").clauses[0]
        interp = interp_of(Domain.DEF, p=pfun(2, 0b00, 0b11))
        got = abstract_clause(clause, interp, Domain.DEF)
        assert set(got.models.values()) == {0b01, 0b11}

    def test_bottom_body_short_circuits(self):
        clause = parse("p(X, Y) :- q(X), p(Y, Y).").clauses[0]
        interp = interp_of(Domain.POS, p=pfun(2, 0b11, tag=Domain.POS), q=AbsFun.bottom(1, Domain.POS))
        assert abstract_clause(clause, interp, Domain.POS).is_bottom()

    def test_missing_entry_is_an_error(self):
        clause = parse("p(X) :- q(X).").clauses[0]
        with pytest.raises(AnalysisError, match="q/1"):
            abstract_clause(clause, Interpretation(Domain.POS, {}), Domain.POS)

    def test_constant_head_grounds_position(self):
        clause = parse("p(c, X).").clauses[0]
        got = abstract_clause(clause, Interpretation(Domain.DEF, {}), Domain.DEF)
        assert set(got.models.values()) == {0b10, 0b11}

    def test_compound_terms_collect_variables(self):
        clause = parse("p(f(X, Y), X) :- q(Y).").clauses[0]
        interp = interp_of(Domain.DEF, q=pfun(1, 0b1))
        got = abstract_clause(clause, interp, Domain.DEF)
        # q grounds Y, so position 1 is ground iff X is, i.e. iff position 2 is
        assert set(got.models.values()) == {0b00, 0b11}


class TestImmediateConsequence:
    def test_first_round_fires_only_the_fact(self):
        prog = def_chain(2)
        i0 = Interpretation.bottom(prog, Domain.DEF)
        i1 = immediate_consequence(prog, i0, Domain.DEF)
        assert i1.value(("p", 2)) == chain_element(2, 1)

    def test_second_round_reaches_chain_two(self):
        prog = def_chain(2)
        i0 = Interpretation.bottom(prog, Domain.DEF)
        i2 = immediate_consequence(prog, immediate_consequence(prog, i0, Domain.DEF), Domain.DEF)
        assert i2.value(("p", 2)) == chain_element(2, 2)

    @pytest.mark.parametrize("tag", [Domain.POS, Domain.DEF])
    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_monotone(self, tag, data):
        from defpos._kernel import closure
        from defpos.boolfun import ModelSet

        rng = random.Random(data.draw(st.integers(0, 10**6)))
        prog = random_program(rng)
        lo_entries, hi_entries = {}, {}
        for name, arity in prog.signatures():
            full = (1 << (1 << arity)) - 1
            top_bit = 1 << ((1 << arity) - 1)
            t1 = data.draw(st.integers(0, full))
            t1 = t1 | top_bit if t1 else 0
            t2 = t1 | data.draw(st.integers(0, full)) | top_bit
            if tag is Domain.DEF:
                t1, t2 = closure(t1), closure(t2)
            lo_entries[(name, arity)] = AbsFun(arity, ModelSet(arity, t1), tag)
            hi_entries[(name, arity)] = AbsFun(arity, ModelSet(arity, t2), tag)
        lo = Interpretation(tag, lo_entries)
        hi = Interpretation(tag, hi_entries)
        out_lo = immediate_consequence(prog, lo, tag)
        out_hi = immediate_consequence(prog, hi, tag)
        assert out_lo.entails(out_hi)


class TestAnalyze:
    def test_chain_walk_width_two(self):
        result = analyze(def_chain(2), Domain.DEF, record_trace=True)
        seq = result.trace.value_sequence(("p", 2))
        assert seq == [chain_element(2, i) for i in range(4)]
        assert result.strict_increases[("p", 2)] == 3

    @pytest.mark.parametrize("n", range(2, 7))
    def test_chain_strict_increases(self, n):
        result = analyze(def_chain(n), Domain.DEF)
        assert result.strict_increases[("p", n)] == 2**n - 1

    def test_ground_fact_converges_in_one_round(self):
        result = analyze(parse("p(c)."), Domain.POS)
        assert result.rounds_to_fixpoint == 1
        assert set(result.fixpoint.value(("p", 1)).models.values()) == {0b1}

    def test_body_only_predicates_stay_bottom(self):
        result = analyze(parse("p(X) :- q(X)."), Domain.POS)
        assert result.fixpoint.value(("q", 1)).is_bottom()
        assert result.fixpoint.value(("p", 1)).is_bottom()

    def test_monotone_rounds_and_tag_invariants(self):
        for tag in (Domain.POS, Domain.DEF):
            result = analyze(pos_linear(3), tag, record_trace=True)
            for sig, count in result.strict_increases.items():
                assert count <= result.rounds_to_fixpoint, sig
            rounds = result.trace.rounds
            for a, b in zip(rounds, rounds[1:]):
                assert a.entails(b)
            for interp in rounds:
                for value in interp.entries.values():
                    if not value.is_bottom():
                        assert (value.table >> ((1 << value.width) - 1)) & 1
                    if tag is Domain.DEF:
                        assert is_intersection_closed(value.models)
            assert rounds[-1] == rounds[-2]

    def test_pos_fixpoint_contained_in_def(self):
        for prog in (def_chain(3), pos_linear(3), parse("p(c, X) :- p(X, X).")):
            pos = analyze(prog, Domain.POS)
            deff = analyze(prog, Domain.DEF)
            for sig, val in pos.fixpoint.entries.items():
                assert val.entails(deff.fixpoint.value(sig))

    def test_round_count_survives_clause_reordering(self):
        prog = pos_linear(3)
        rng = random.Random(7)
        base = analyze(prog, Domain.POS)
        for _ in range(5):
            shuffled = list(prog.clauses)
            rng.shuffle(shuffled)
            other = analyze(Program(tuple(shuffled)), Domain.POS)
            assert other.rounds_to_fixpoint == base.rounds_to_fixpoint
            assert other.strict_increases == base.strict_increases
            assert other.fixpoint == base.fixpoint

    def test_guard_raises_with_partial_trace(self):
        with pytest.raises(NonConvergenceError) as err:
            analyze(def_chain(3), Domain.DEF, max_rounds=3)
        assert len(err.value.trace.rounds) == 4
        assert err.value.trace.updates

    def test_default_round_guard(self):
        assert default_max_rounds(def_chain(4)) == 16 + 4 + 8
        assert default_max_rounds(pos_linear(3)) == 64 + 6 + 8
        analyze(def_chain(4), Domain.DEF)  # guard is generous enough

    def test_wall_time_recorded(self):
        assert analyze(def_chain(2), Domain.DEF).wall_ms > 0


class TestGroundnessSummary:
    def test_first_argument_ground(self):
        result = analyze(parse("p(c, X)."), Domain.POS)
        assert groundness_summary(result)[("p", 2)] == (1,)

    def test_top_grounds_nothing(self):
        result = analyze(def_chain(2), Domain.DEF)
        assert groundness_summary(result)[("p", 2)] == ()

    def test_bottom_reports_all_positions_vacuously(self):
        result = analyze(parse("p(X, Y) :- q(X, Y)."), Domain.POS)
        assert groundness_summary(result)[("p", 2)] == (1, 2)
        assert result.fixpoint.value(("p", 2)).is_bottom()  # the unreachable flag
