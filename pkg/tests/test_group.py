import random

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from minfix.constructions import alt_group, mathieu11, sym_group
from minfix.group import (NotAMember, PermGroup, ProductReplacement, ScanCapExceeded,
                          class_and_centralizer, closure, conjugacy_classes, conjugacy_orbit,
                          element_scan)
from minfix.perm import Permutation, parse_cycles


def sympy_group(G):
    return PermutationGroup([SymPerm(list(g.images)) for g in G.generators])


gen_sets = st.integers(2, 7).flatmap(
    lambda n: st.lists(st.permutations(range(n)).map(Permutation), min_size=1, max_size=3))


@given(gen_sets)
def test_order_matches_sympy(gens):
    G = PermGroup(gens)
    assert G.order == sympy_group(G).order()


@given(gen_sets)
def test_order_matches_closure(gens):
    G = PermGroup(gens)
    assert G.order == len(closure(gens))


@given(gen_sets, st.data())
def test_membership_matches_sympy(gens, data):
    G = PermGroup(gens)
    n = G.degree
    g = Permutation(data.draw(st.permutations(range(n))))
    assert G.contains(g) == sympy_group(G).contains(SymPerm(list(g.images)))


def test_known_orders():
    assert alt_group(8).order == 20160
    assert sym_group(6).order == 720
    assert mathieu11().order == 7920


def test_transversals_multiply_to_order():
    G = mathieu11()
    prod = 1
    for length in G.transversal_lengths:
        prod *= length
    assert prod == G.order
    for lvl in range(len(G.base)):
        for beta, u in G.transversal(lvl).items():
            assert u(G.base[lvl]) == beta


def test_element_enumeration_is_complete_and_distinct():
    G = sym_group(5)
    elems = list(G.elements())
    assert len(elems) == 120 == len(set(elems))
    assert set(e.images for e in elems) == closure(G.generators)


def test_sharded_batches_partition_the_group():
    G = alt_group(6)
    rows = []
    for i in range(3):
        for b in G.element_batches(shard=(i, 3)):
            rows.extend(map(tuple, b.tolist()))
    assert len(rows) == 360 == len(set(rows))


def test_scan_cap():
    with pytest.raises(ScanCapExceeded):
        list(sym_group(7).elements(cap=100))
    count = []
    list(element_scan(alt_group(5), count.append))
    assert len(count) == 60


def test_subgroup_and_normalizer():
    A5, S5 = alt_group(5), sym_group(5)
    assert A5.is_subgroup_of(S5)
    assert not S5.is_subgroup_of(A5)
    assert S5.normalizes(A5)
    C = PermGroup([parse_cycles("(1,2,3)", 5)])
    assert not A5.normalizes(C)


def test_transitivity():
    assert alt_group(5).is_transitive()
    assert not PermGroup([parse_cycles("(1,2)", 4)]).is_transitive()


def test_conjugacy_classes_match_sympy():
    for G in (alt_group(5), sym_group(5), alt_group(6)):
        ours = sorted(c.class_size for c in conjugacy_classes(G))
        theirs = sorted(len(c) for c in sympy_group(G).conjugacy_classes())
        assert ours == theirs
        for c in conjugacy_classes(G):
            assert c.class_size * c.centralizer_order == G.order


def test_class_and_centralizer_of_m11_5_element():
    G = mathieu11()
    g = parse_cycles("(1,2,3,4,5)(6,7,8,9,10)", 11)
    if not G.contains(g):
        g = next(c.representative for c in conjugacy_classes(G) if c.representative.order() == 5)
    cd = class_and_centralizer(G, g)
    assert cd.centralizer_order == 5
    assert len(conjugacy_orbit(G.generators, g)) == cd.class_size == 1584


def test_random_elements_are_members_and_reproducible():
    G = mathieu11()
    a = [ProductReplacement(G, 7).next() for _ in range(1)]
    b = [ProductReplacement(G, 7).next() for _ in range(1)]
    assert a == b
    pr = ProductReplacement(G, 3)
    assert all(G.contains(pr.next()) for _ in range(50))
    rng = random.Random(1)
    assert all(G.contains(G.random_element(rng)) for _ in range(50))
