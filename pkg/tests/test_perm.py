import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation as SymPerm

from minfix.perm import (Permutation, apply_word, cycle_type_counts, fix_count, orbit,
                         parse_cycles, perm_from_cycles)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n)).map(Permutation))


def pair(n=None):
    return st.integers(1, 9).flatmap(
        lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))
    ).map(lambda t: (Permutation(t[0]), Permutation(t[1])))


@given(pair())
def test_product_matches_sympy(pq):
    p, q = pq
    assert (p * q).images == tuple((SymPerm(list(p.images)) * SymPerm(list(q.images))).array_form)


@given(perms)
def test_order_sign_cycles_match_sympy(p):
    s = SymPerm(list(p.images))
    assert p.order() == s.order()
    assert p.sign() == s.signature()
    assert sorted(p.cycle_type()) == sorted(len(c) for c in s.full_cyclic_form)


@given(perms, st.integers(-6, 6))
def test_power_and_inverse(p, k):
    s = SymPerm(list(p.images))
    assert (p ** k).images == tuple((s ** k).array_form)
    assert (p * p.inverse()).is_identity()


@given(pair())
def test_conjugate_is_x_inverse_p_x(px):
    p, x = px
    assert p.conjugate(x) == x.inverse() * p * x
    assert p.conjugate(x).cycle_type() == p.cycle_type()


def test_parse_cycles_one_based_and_composition():
    g = parse_cycles("(1,2,3)(4,5)")
    assert g.images == (1, 2, 0, 4, 3)
    assert parse_cycles("(1,2)(2,3)") == perm_from_cycles(3, [(0, 1)]) * perm_from_cycles(3, [(1, 2)])
    assert parse_cycles("()", 4).is_identity()
    assert g.cycle_string(one_based=True) == "(1,2,3)(4,5)"


@pytest.mark.parametrize("bad", ["(1,2", "1,2)", "(a,b)"])
def test_parse_cycles_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_cycles(bad)


def test_parse_cycles_degree_checks():
    with pytest.raises(ValueError):
        parse_cycles("()")
    with pytest.raises(ValueError):
        parse_cycles("(1,7)", 5)


def test_perm_from_cycles_rejects_overlap_and_range():
    with pytest.raises(ValueError):
        perm_from_cycles(4, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        perm_from_cycles(3, [(0, 3)])


def test_constructor_validates():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(perms)
def test_fix_count_and_cycle_type(p):
    assert fix_count(p) == sum(1 for c in p.cycle_type() if c == 1)
    assert sum(p.cycle_type()) == p.degree
    assert cycle_type_counts(p)[1] == fix_count(p)
    assert len(p.support()) == p.degree - fix_count(p)


def test_orbit_words_reach_their_points():
    gens = [parse_cycles("(1,2,3)", 6), parse_cycles("(3,4)", 6)]
    pts, words = orbit(gens, 0)
    assert pts == {0, 1, 2, 3}
    for q, w in words.items():
        assert apply_word(gens, w, 6)(0) == q
