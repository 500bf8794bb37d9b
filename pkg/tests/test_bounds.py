from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from minfix.bounds import (FAMILIES, FactorizationIncomplete, PartitionShape, classical_order,
                           cyclotomic_value, divisors, euler_phi, factorint, is_probable_prime,
                           mobius, multiplicative_order, natural_dimension, optimization_branch_integral,
                           optimization_bruteforce, optimization_grid, optimization_max, partitions,
                           ppd_star, scott_trials, sweep_classical_orders, sweep_optimization,
                           sweep_unipotent, sweep_zsigmondy, transpose_and_centralizer_dim,
                           unipotent_bound_check, unipotent_hypothesis_bruteforce,
                           unipotent_hypothesis_met, zsigmondy_exception_expected)

X = sympy.symbols("x")


@given(st.integers(1, 10**12))
def test_factorint_matches_sympy(n):
    assert factorint(n) == sympy.factorint(n)


def test_factorint_semiprime_beyond_trial_division():
    p, q = 1000003, 998244353
    assert factorint(p * q) == {p: 1, q: 1}


def test_factorint_budget_reports_partial(monkeypatch):
    import minfix.bounds as b
    monkeypatch.setattr(b, "_pollard_brent", lambda n, seed: None)
    with pytest.raises(FactorizationIncomplete) as info:
        factorint(12 * 1000003 * 998244353, trial_limit=10)
    assert info.value.partial == {2: 2, 3: 1}
    assert info.value.cofactor == 1000003 * 998244353


def test_ppd_flags_incomplete_factorization(monkeypatch):
    import minfix.bounds as b
    monkeypatch.setattr(b, "_pollard_brent", lambda n, seed: None)
    # 2^67 - 1 = 193707721 * 761838257287, both beyond trial division
    r = ppd_star(67, 2)
    assert r.complete is False and r.value == 1 and not r.exceptional


@given(st.integers(1, 10**6))
def test_number_theory_matches_sympy(n):
    assert euler_phi(n) == sympy.totient(n)
    assert mobius(n) == sympy.mobius(n)
    assert divisors(n) == sympy.divisors(n)
    assert is_probable_prime(n) == sympy.isprime(n)


@given(st.integers(1, 30), st.integers(2, 30))
def test_cyclotomic_value_matches_sympy(m, q):
    assert cyclotomic_value(m, q) == sympy.cyclotomic_poly(m, X).subs(X, q)


@given(st.integers(2, 50), st.sampled_from([3, 5, 7, 11, 13, 101, 997]))
def test_multiplicative_order(q, p):
    if q % p:
        assert multiplicative_order(q, p) == sympy.n_order(q, p)


def test_basic_values():
    assert euler_phi(7) == 6
    assert cyclotomic_value(6, 2) == 3
    assert cyclotomic_value(4, 3) == 10


@pytest.mark.parametrize("m,q,value,exceptional", [(6, 2, 1, True), (4, 2, 5, False),
                                                   (2, 7, 1, True), (3, 2, 7, False)])
def test_ppd_examples(m, q, value, exceptional):
    r = ppd_star(m, q)
    assert (r.value, r.exceptional) == (value, exceptional)


@given(st.integers(2, 20), st.integers(2, 20))
def test_ppd_properties_against_sympy(m, q):
    r = ppd_star(m, q)
    # oracle: primes of q^m - 1 dividing no earlier q^i - 1
    expected = 1
    for p, e in sympy.factorint(q**m - 1).items():
        if all((q**i - 1) % p for i in range(1, m)):
            expected *= p**sympy.multiplicity(p, sympy.cyclotomic_poly(m, X).subs(X, q))
    assert r.value == expected
    assert r.exceptional == zsigmondy_exception_expected(m, q)
    assert all(p % m == 1 for p in r.primes)
    assert cyclotomic_value(m, q) % r.value == 0


@pytest.mark.parametrize("family,n,q,order", [
    ("GL", 3, 2, 168), ("Sp", 4, 3, 51840), ("SU", 3, 2, 216), ("SL", 2, 5, 120),
    ("GU", 2, 2, 18), ("SO_odd", 3, 3, 24), ("O_plus", 2, 3, 4), ("O_minus", 2, 3, 8),
    ("O_plus", 4, 2, 72), ("O_minus", 4, 2, 120),
])
def test_classical_orders(family, n, q, order):
    assert classical_order(family, n, q).order == order


def test_gl_sandwich_example():
    rep = classical_order("GL", 3, 2)
    assert rep.holds
    lows = [i for i in rep.inequalities if i.rhs == 168]
    assert lows and lows[0].lhs == 144


def test_o_minus_rank_one_excluded_pair():
    assert classical_order("O_minus", 2, 2).holds


@pytest.mark.parametrize("family", FAMILIES)
def test_classical_invalid_dimension(family):
    if family in ("Sp", "O_plus", "O_minus"):
        with pytest.raises(ValueError):
            classical_order(family, 3, 2)
    elif family == "SO_odd":
        with pytest.raises(ValueError):
            classical_order(family, 4, 3)
    assert natural_dimension(family, 2) in (2, 4, 5)


def _oracle_opt(n, A, B, variant):
    """Integer maximum by filtering all partitions of n - a1."""
    s = {"orthogonal_plus": 1, "orthogonal_minus": -1}.get(variant, 0)
    best = None
    for a1 in range(0, int(A) + 1):
        rest_total = n - a1
        cands = [{}] if rest_total == 0 else sympy_partitions(rest_total)
        for part in cands:
            part = dict(part)
            if any(mult < B for mult in part.values()):
                continue
            if sum(part.values()) > n - 1:
                continue
            r = 0 if variant == "easier" else sum(part.values())
            val = r + a1 * a1 + s * a1 + sum(v * v * m for v, m in part.items())
            best = val if best is None else max(best, val)
    return best


@pytest.mark.parametrize("variant", ["plain", "easier", "orthogonal_plus", "orthogonal_minus"])
def test_bruteforce_matches_independent_oracle(variant):
    for n, A, B in optimization_grid(9):
        assert optimization_bruteforce(n, A, B, variant) == _oracle_opt(n, A, B, variant)


def test_optimization_examples():
    assert optimization_max(12, 4, 4, "easier") == 36 == optimization_bruteforce(12, 4, 4, "easier")
    assert optimization_max(12, 8, 2, "easier") == 72
    assert optimization_max(12, 8, 2, "plain") == 74 == optimization_bruteforce(12, 8, 2, "plain")


def test_optimization_hypotheses():
    for bad in [(5, 1, 5), (5, 0, 2), (5, 4, 2), (5, 5, 1)]:
        with pytest.raises(ValueError):
            optimization_max(*bad)
    with pytest.raises(ValueError):
        optimization_max(8, 2, 2, "nonsense")


def test_optimization_upper_bound_everywhere():
    res = sweep_optimization()
    assert res.ok, res.failures[:5]
    assert res.checked > 1000


def test_branch_integrality_flag():
    assert optimization_branch_integral(12, 4, 4, "easier")
    assert not optimization_branch_integral(7, 1, 2, "plain")


def _transpose_oracle(parts):
    return sorted((sum(1 for p in parts if p > i) for i in range(max(parts))), reverse=True)


@given(st.integers(1, 14).flatmap(lambda n: st.sampled_from(list(partitions(n)))))
def test_transpose_involution_and_dim(lam):
    t, dim = transpose_and_centralizer_dim(lam)
    assert list(t.parts) == _transpose_oracle(lam.parts)
    assert t.transpose() == lam
    assert dim == sum(x * x for x in t.parts)


def test_partition_counts():
    for n in range(1, 13):
        assert sum(1 for _ in partitions(n)) == sympy.functions.combinatorial.numbers.partition(n)


def test_transpose_examples():
    assert transpose_and_centralizer_dim(PartitionShape((3, 3, 1))) == (PartitionShape((3, 2, 2)), 17)
    assert transpose_and_centralizer_dim(PartitionShape((6,)))[1] == 6
    assert transpose_and_centralizer_dim(PartitionShape((1,) * 6))[1] == 36


def test_partition_validation():
    with pytest.raises(ValueError):
        PartitionShape((1, 2))
    with pytest.raises(ValueError):
        PartitionShape((2, 0))


@pytest.mark.parametrize("parts,B,C,dim", [((3, 3, 1), 3, 1, 17), ((5, 5), 5, 0, 20),
                                           ((4, 4, 4), 4, 0, 36)])
def test_unipotent_equality_cases(parts, B, C, dim):
    chk = unipotent_bound_check(PartitionShape(parts), B, C)
    assert chk.feasible and chk.holds
    assert chk.lhs == dim and chk.slack == 0


def test_unipotent_hypothesis_shortcut_matches_bruteforce():
    for n in range(1, 10):
        for lam in partitions(n):
            for B in range(2, n + 1):
                for C in range(0, n + 1):
                    assert unipotent_hypothesis_met(lam, B, C) == unipotent_hypothesis_bruteforce(lam, B, C)


def test_sweeps_clean():
    for res in (sweep_zsigmondy(), sweep_classical_orders(), sweep_unipotent()):
        assert res.ok, (res.name, res.failures[:3])


def test_scott_trials_reproducible_and_bounded():
    a = scott_trials(20, seed=5)
    assert a == scott_trials(20, seed=5)
    for t in a:
        assert t.holds
        assert 2 <= t.dim <= 8 and t.p <= 7
