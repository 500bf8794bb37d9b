import pytest
from hypothesis import given, settings, strategies as st

from minfix.constructions import (alt_group, cyclic_group, diagonal_action, mathieu11,
                                  natural_action, sym_group, wreath_action)
from minfix.group import PermGroup
from minfix.perm import Permutation, fix_count, parse_cycles
from minfix.verifier import (ScanSummary, TheoremViolation, WitnessCertificate,
                             block_systems_bruteforce, burnside_sum, group_hash, min_fix_profile,
                             minimal_block, neumann_witness, primitivity_report, scan_fixes,
                             set_partitions, transitive_half_bound)


def test_set_partition_count_is_bell():
    assert [sum(1 for _ in set_partitions(range(n))) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


def test_primitivity_examples():
    r = primitivity_report(natural_action(alt_group(5)))
    assert r.primitive and not r.regular
    r = primitivity_report(wreath_action(3, 2))
    assert not r.primitive
    assert r.block_systems == (((0, 1, 2), (3, 4, 5)),)
    r = primitivity_report(cyclic_group(7))
    assert r.primitive and r.regular
    r = primitivity_report(PermGroup([parse_cycles("(1,2)", 4)]))
    assert not r.transitive and not r.primitive


gen_sets = st.integers(2, 7).flatmap(
    lambda n: st.lists(st.permutations(range(n)).map(Permutation), min_size=1, max_size=2))


def _minimal(systems):
    def block0(s):
        return set(next(b for b in s if 0 in b))
    return sorted(s for s in systems if not any(block0(o) < block0(s) for o in systems))


@settings(max_examples=80)
@given(gen_sets)
def test_blocks_match_bruteforce(gens):
    G = PermGroup(gens)
    rep = primitivity_report(G)
    if not rep.transitive:
        return
    brute = block_systems_bruteforce(G)
    assert rep.primitive == (not brute)
    assert sorted(rep.block_systems) == _minimal(brute)


def test_minimal_block_contains_pair():
    G = wreath_action(2, 3, alternating=False).group
    blocks = minimal_block(G.generators, 6, 0, 1)
    assert [0, 1] in blocks


def test_a5_natural_witness():
    act = natural_action(alt_group(5))
    for mode in ("exhaustive", "classes", "random"):
        cert = neumann_witness(act, mode)
        assert cert.fix == 1 and cert.element.cycle_type() == (1, 2, 2)
        assert cert.weak and cert.strict
    assert neumann_witness(act).element.images == (0, 2, 1, 4, 3)


def test_diagonal_witness_fix_three():
    cert = neumann_witness(diagonal_action(alt_group(5)), "exhaustive")
    assert cert.fix == 3 and cert.fix**3 == 27 and cert.strict


def test_m11_witness():
    G = mathieu11()
    cert = neumann_witness(G, "exhaustive")
    assert cert.fix == 1 and cert.strict
    assert neumann_witness(G, "classes").fix == 1


def test_a5_profile():
    prof = min_fix_profile(natural_action(alt_group(5)))
    assert prof.histogram == {0: 24, 1: 15, 2: 20}
    assert prof.nonidentity == 59 == sum(prof.histogram.values())
    assert prof.min_positive_fix == 1
    assert transitive_half_bound(prof, 5)


def test_regular_profile():
    prof = min_fix_profile(cyclic_group(5))
    assert prof.histogram == {0: 4}
    assert prof.min_positive_fix is None


def test_burnside():
    assert burnside_sum(alt_group(6)) == 360
    assert burnside_sum(PermGroup([parse_cycles("(1,2)", 4)])) == 2 * 3


def test_sharded_scan_matches_serial():
    G = sym_group(7)
    assert scan_fixes(G, jobs=1) == scan_fixes(G, jobs=3)


def test_modes_agree_on_minimal_fix():
    for G in (alt_group(6), sym_group(6), mathieu11(), diagonal_action(alt_group(5)).group):
        assert neumann_witness(G, "exhaustive").fix == neumann_witness(G, "classes").fix


def test_random_mode_is_seeded():
    G = mathieu11()
    a = neumann_witness(G, "random", seed=11)
    b = neumann_witness(G, "random", seed=11)
    assert a == b and a.seed == 11


def test_witness_refuses_imprimitive_or_regular():
    with pytest.raises(ValueError):
        neumann_witness(wreath_action(3, 2))
    with pytest.raises(ValueError):
        neumann_witness(cyclic_group(7))
    with pytest.raises(ValueError):
        neumann_witness(alt_group(5), mode="bogus")


def test_violation_is_reported(monkeypatch):
    import minfix.verifier as v
    monkeypatch.setattr(v, "scan_fixes",
                        lambda G, cap, jobs: ScanSummary({}, 2, tuple(range(G.degree)), 1))
    with pytest.raises(TheoremViolation, match="THEOREM VIOLATION"):
        v.neumann_witness(alt_group(5))


def test_certificate_validation_and_serialization():
    g = parse_cycles("(1,2)(3,4)", 5)
    cert = WitnessCertificate(g, 1, 5, "exhaustive", "x")
    d = cert.to_dict()
    assert d["element"] == [2, 1, 4, 3, 5] and d["fix_cubed"] == 1
    with pytest.raises(ValueError):
        WitnessCertificate(g, 2, 5, "exhaustive", "x")
    with pytest.raises(ValueError):
        WitnessCertificate(Permutation.identity(5), 5, 5, "exhaustive", "x")
    # weak but not strict: fix^3 == n
    h = parse_cycles("(3,4,5,6,7,8)", 8)
    c2 = WitnessCertificate(h, 2, 8, "exhaustive", "y")
    assert c2.weak and not c2.strict
    with pytest.raises(ValueError):
        WitnessCertificate(h, 2, 9, "exhaustive", "y")


def test_group_hash_stable():
    assert group_hash(alt_group(5)) == group_hash(alt_group(5))
    assert group_hash(alt_group(5)) != group_hash(sym_group(5))
