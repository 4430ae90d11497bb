import pytest
from hypothesis import given, settings, strategies as st

from clausal.formula import (
    Clause, CnfFormula, DimacsError, emit_dimacs, normalize, parse_dimacs, reduce_to_3sat, verify_assignment,
)
from conftest import naive_models


def test_parse_basic():
    f = parse_dimacs("c hi\np cnf 3 2\n1 -2 3 0\n-1 2 0\n")
    assert f.num_vars == 3
    assert f.to_ints() == [[1, -2, 3], [-1, 2]]


def test_parse_bytes_and_multiline_clause():
    f = parse_dimacs(b"p cnf 3 1\n1 -2\n3 0\n")
    assert f.to_ints() == [[1, -2, 3]]


def test_parse_drops_tautology():
    f = parse_dimacs("p cnf 1 1\n1 -1 0\n")
    assert f.num_vars == 1 and f.clauses == ()
    assert f.stats.tautologies_dropped == 1
    assert f.stats.header_clauses == 1


def test_parse_dedups_literals():
    f = parse_dimacs("p cnf 2 1\n1 1 -2 0\n")
    assert f.to_ints() == [[1, -2]]
    assert f.stats.duplicate_literals_removed == 1


@pytest.mark.parametrize("text, msg", [
    ("p cnf 2 1\n1 3 0\n", "exceeds declared 2"),
    ("1 2 0\n", "before header"),
    ("", "missing"),
    ("p cnf x 1\n1 0\n", "bad header"),
    ("p cnf 2 1\n1 2\n", "unterminated"),
    ("p cnf 2 1\n1 a 0\n", "bad literal"),
])
def test_parse_errors(text, msg):
    with pytest.raises(DimacsError, match=msg):
        parse_dimacs(text)


def test_empty_clause_is_a_formula_not_an_error():
    f = parse_dimacs("p cnf 2 2\n1 2 0\n0\n")
    assert f.has_empty_clause


def test_reduce_four_literals():
    f = CnfFormula.from_ints(4, [[1, 2, 3, 4]])
    r = reduce_to_3sat(f)
    assert r.to_ints() == [[1, 2, 5], [-5, 3, 4]]
    assert r.stats.auxiliary_vars == 1 and r.original_num_vars == 4


def test_reduce_five_literals():
    f = CnfFormula.from_ints(5, [[1, 2, 3, 4, 5]])
    r = reduce_to_3sat(f)
    assert r.to_ints() == [[1, 2, 6], [-6, 3, 7], [-7, 4, 5]]
    assert r.num_vars == 7
    # equisatisfiable, and every model projects to a model of the original
    assert bool(naive_models(f)) == bool(naive_models(r))
    for a in naive_models(r):
        assert verify_assignment(f, r.project(a))


def test_reduce_identity_on_3sat(example):
    r = reduce_to_3sat(example)
    assert r.to_ints() == example.to_ints() and r.stats.auxiliary_vars == 0


def test_verify(example):
    assert verify_assignment(example, {v: False for v in range(1, 6)})
    f = CnfFormula.from_ints(1, [[1], [-1]])
    assert not verify_assignment(f, {1: True})
    assert verify_assignment(CnfFormula(3, ()), {1: True, 2: False, 3: True})
    with pytest.raises(ValueError, match="missing"):
        verify_assignment(f, {})


clause_st = st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=6)
formula_st = st.lists(clause_st, min_size=0, max_size=6).map(lambda cs: normalize(6, [Clause.from_ints(c) for c in cs]))


@settings(max_examples=150, deadline=None)
@given(formula_st)
def test_reduction_equisatisfiable(f):
    r = reduce_to_3sat(f)
    assert r.num_vars <= 12
    assert all(len(c.variables) <= 3 for c in r.clauses)
    assert bool(naive_models(f)) == bool(naive_models(r))


@settings(max_examples=100, deadline=None)
@given(formula_st)
def test_roundtrip_and_idempotent_normalization(f):
    g = parse_dimacs(emit_dimacs(f))
    assert g == f
    assert parse_dimacs(emit_dimacs(g)) == g


@settings(max_examples=60, deadline=None)
@given(formula_st)
def test_verify_matches_brute_force(f):
    from itertools import product

    models = {tuple(sorted(a.items())) for a in naive_models(f)}
    for vals in product((False, True), repeat=f.num_vars):
        a = dict(zip(range(1, f.num_vars + 1), vals))
        assert verify_assignment(f, a) == (tuple(sorted(a.items())) in models)
