import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defquant import poisson as P
from defquant.ainfty import build_constant_instance, build_linear_instance
from defquant.algebra import NCPoly
from defquant.cobar import classical_relations, relations
from defquant.expr import format_ncpoly, parse_expression
from defquant.rewrite import (CompletionBudgetExceeded, DegreeOverflow, OrientationError, RewriteRule,
                              RewriteSystem, build_system, leading_word, orient, symmetric_counts, word_key)
from defquant.series import HSeries
from strategies import ncpolys

NAMES = ["x1", "x2", "x3", "x4"]


def system_for(pi, degree_bound=8):
    inst = build_constant_instance(pi) if pi.kind == "constant" else build_linear_instance(pi)
    return build_system(relations(inst).values(), pi.dim, degree_bound).complete()


def nf_text(system, text):
    return format_ncpoly(system.normal_form(parse_expression(text, NAMES[:system.dim], system.trunc)),
                         NAMES[:system.dim])


def test_order_is_degree_then_lexicographic():
    words = [(1, 0), (0,), (0, 1), (), (1,), (0, 0, 0)]
    assert sorted(words, key=word_key) == [(), (0,), (1,), (0, 1), (1, 0), (0, 0, 0)]
    assert leading_word(parse_expression("x1*x2 - x2*x1 - h*x3", NAMES)) == (1, 0)


def test_orientation_examples():
    rule = orient(parse_expression("x1*x2 - x2*x1 - h", NAMES))
    assert rule.lhs == (1, 0)
    assert format_ncpoly(rule.rhs) == "x1*x2 - h"
    rule = orient(parse_expression("x1*x3 - x3*x1 + h*x2", NAMES))
    assert rule.lhs == (2, 0) and format_ncpoly(rule.rhs) == "x1*x3 + h*x2"
    # a unit leading coefficient other than 1 is divided out
    rule = orient(parse_expression("(1 + h)*x2*x1 - x1*x2", NAMES))
    assert format_ncpoly(rule.rhs) == "(1 - h + h^2 - h^3 + h^4)*x1*x2"


def test_orientation_rejects_non_unit():
    with pytest.raises(OrientationError):
        orient(parse_expression("h*x2*x1 - x1", NAMES))


def test_rule_must_decrease():
    with pytest.raises(ValueError):
        RewriteRule((0, 1), NCPoly.word((1, 0), 1, 4))


def test_weyl_normal_forms():
    s = system_for(P.weyl())
    assert s.status == "completed" and not s.added_rules
    assert nf_text(s, "x2*x1") == "x1*x2 - h"
    assert nf_text(s, "x2*x1*x1") == "x1*x1*x2 - 2h*x1"
    assert nf_text(s, "x2*x2*x1") == "x1*x2*x2 - 2h*x2"


def test_lie_normal_forms():
    s = system_for(P.sl2())
    assert nf_text(s, "x3*x1") == "x1*x3 + h*x2"
    assert nf_text(s, "x3*x2") == "x2*x3 - h*x1"
    s = system_for(P.heisenberg())
    assert nf_text(s, "x2*x1") == "x1*x2 - h*x3"


@pytest.mark.parametrize("name", ["weyl", "heisenberg", "sl2", "solvable2"])
def test_completion_adds_nothing_and_counts_are_binomial(name):
    pi = P.SHIPPED[name]()
    s = system_for(pi)
    assert s.status == "completed" and s.added_rules == []
    assert s.hilbert(6) == [comb(n + pi.dim - 1, n) for n in range(7)]
    assert s.hilbert(6) == symmetric_counts(pi.dim, 6)


def test_weyl4_counts():
    s = system_for(P.weyl(4), 6)
    assert s.hilbert(6) == [comb(n + 3, 3) for n in range(7)]


def test_irreducible_words_are_sorted_words():
    s = system_for(P.sl2())
    assert s.irreducible_words(3) == [w for w in s.irreducible_words(3) if list(w) == sorted(w)]
    assert len(s.irreducible_words(3)) == 10


def test_classical_limit_is_commutative_sorting():
    s = build_system(classical_relations(3, 0).values(), 3).complete()
    rng = random.Random(3)
    for _ in range(20):
        w = tuple(rng.randrange(3) for _ in range(rng.randrange(6)))
        assert s.normal_form(NCPoly.word(w, 1, 0)) == NCPoly.word(tuple(sorted(w)), 1, 0)


def test_h_zero_of_deformed_normal_form_is_sorting():
    s = system_for(P.sl2())
    rng = random.Random(5)
    for _ in range(20):
        w = tuple(rng.randrange(3) for _ in range(rng.randrange(6)))
        nf = s.normal_form(NCPoly.word(w, 1, 4))
        assert {v: c[0] for v, c in nf.items() if c[0]} == {tuple(sorted(w)): 1}


sl2_system = system_for(P.sl2())


@settings(max_examples=40, deadline=None)
@given(ncpolys(dim=3, max_len=4, trunc=4), st.integers(0, 10 ** 6))
def test_random_order_reduction_agrees_with_normal_form(t, seed):
    nf = sl2_system.normal_form(t)
    assert sl2_system.reduce_random(t, random.Random(seed)) == nf
    assert sl2_system.normal_form(nf) == nf
    assert all(sl2_system.is_irreducible(w) for w in nf)


@settings(max_examples=30, deadline=None)
@given(ncpolys(dim=3, max_len=2, trunc=4), ncpolys(dim=3, max_len=2, trunc=4), st.sampled_from([0, 1, 2]))
def test_ideal_elements_reduce_to_zero(a, b, k):
    rel = sl2_system.rules[k].as_relation()
    assert sl2_system.normal_form(a * rel * b).is_zero()


def test_degree_overflow():
    s = system_for(P.weyl(), 4)
    with pytest.raises(DegreeOverflow, match="5"):
        s.normal_form(NCPoly.word((1, 1, 1, 0, 0), 1, 4))


def test_json_round_trip():
    s = system_for(P.sl2())
    again = RewriteSystem.from_json(s.to_json())
    assert again.to_json() == s.to_json()
    assert again.normal_form(NCPoly.word((2, 1, 0), 1, 4)) == s.normal_form(NCPoly.word((2, 1, 0), 1, 4))
    assert s.to_json()["rules"][0]["lhs"] == [2, 1]


def test_completion_adds_rules_up_to_the_degree_bound():
    # x2 x2 -> x1 x2 forces x2 x1^n x2 -> x1^(n+1) x2 for every n
    s = build_system([parse_expression("x2*x2 - x1*x2", NAMES[:2], 0)], 2, 7).complete()
    assert s.status == "completed"
    assert [r.lhs for r in s.added_rules] == [(1,) + (0,) * n + (1,) for n in range(1, 6)]
    assert s.hilbert(7) == [n + 1 for n in range(8)]


def test_completion_budget():
    s = build_system([parse_expression("x2*x2 - x1*x2", NAMES[:2], 0)], 2, 12)
    with pytest.raises(CompletionBudgetExceeded, match="3 rules"):
        s.complete(budget=3)


def test_broken_jacobi_witness():
    s = build_system(relations(build_linear_instance(P.broken_jacobi())).values(), 3).complete()
    assert s.status == "nonconfluent"
    assert s.witness.word == (2, 1, 0)
    assert s.witness.remainder == NCPoly.word((0,), HSeries.h(2, -1, 4), 4)
    assert s.to_json()["witness"]["word"] == [3, 2, 1]


def test_duplicate_leading_words_rejected():
    with pytest.raises(ValueError, match="leading word"):
        build_system([parse_expression("x2*x1 - x1*x2", NAMES), parse_expression("x2*x1 - h", NAMES)], 2)
