from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from minfix.constructions import sym_group
from minfix.corollary import (DensityReport, PolynomialSyntaxError, bareiss_det, density_scan,
                              discriminant, format_poly, irreducibility_certificate,
                              irreducible_mod_p, parse_poly, primes_up_to, rational_roots,
                              resultant)
from minfix.linalg_fp import roots_by_evaluation
from minfix.verifier import min_fix_profile

X = sympy.symbols("x")


def to_sympy(f):
    return sympy.Poly(list(reversed(f)), X)


polys = st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda f: f[-1] != 0)


@pytest.mark.parametrize("text,coeffs", [
    ("x^3-2", [-2, 0, 0, 1]), ("x^4 - x - 1", [-1, -1, 0, 0, 1]), ("-x^2 + 3*x", [0, 3, -1]),
    ("(x+1)^3", [1, 3, 3, 1]), ("2*(x - 1)*(x + 1)", [-2, 0, 2]), ("7", [7]), ("X^2", [0, 0, 1]),
])
def test_parse(text, coeffs):
    assert parse_poly(text) == coeffs


@pytest.mark.parametrize("text,pos", [("x^", 2), ("x+*2", 2), ("(x+1", 4), ("x y", 2),
                                      ("", 0), ("x - x", 0)])
def test_parse_errors_have_positions(text, pos):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly(text)
    assert info.value.position == pos


@given(polys)
def test_format_parse_round_trip(f):
    assert parse_poly(format_poly(f)) == f


@pytest.mark.parametrize("text,disc", [("x^3-2", -108), ("x^2-1", 4), ("x^2+1", -4),
                                       ("x^4-x-1", -283), ("x^4+1", 256)])
def test_discriminant_examples(text, disc):
    assert discriminant(parse_poly(text)) == disc


@given(polys)
def test_discriminant_matches_sympy(f):
    if len(f) < 3:
        return
    assert discriminant(f) == sympy.discriminant(to_sympy(f))


@given(polys, polys)
def test_resultant_matches_sympy_sylvester(f, g):
    # sympy.resultant returns Res(g, f) for some degree orders; its Sylvester
    # matrix builder follows the textbook convention
    from sympy.polys.subresultants_qq_zz import sylvester
    expected = sylvester(to_sympy(f).as_expr(), to_sympy(g).as_expr(), X, 1).det()
    if len(f) == 1 or len(g) == 1:
        return
    assert resultant(f, g) == expected


def test_resultant_product_formula():
    # Res(x + 2, x^3 + 1) = (-2)^3 + 1
    assert resultant([2, 1], [1, 0, 0, 1]) == -7
    assert resultant([1, 0, 0, 1], [2, 1]) == -7 * (-1)**3


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(M):
    assert bareiss_det(M) == sympy.Matrix(M).det()


def test_discriminant_rejects_constants():
    with pytest.raises(ValueError):
        discriminant([5])


@given(polys, st.sampled_from([2, 3, 5, 7, 11]))
def test_irreducible_mod_p_matches_sympy(f, p):
    if f[-1] % p == 0 or len(f) < 2:
        return
    expected = sympy.Poly(list(reversed(f)), X, modulus=p).is_irreducible
    assert irreducible_mod_p(f, p) == expected


def test_certificate_examples():
    v = irreducibility_certificate(parse_poly("x^3-2"))
    assert v.certified and v.prime == 7
    v = irreducibility_certificate(parse_poly("x^4+1"))
    assert not v.certified and v.warning
    v = irreducibility_certificate(parse_poly("x^2-1"))
    assert not v.certified and v.rational_root and "rational root" in v.warning


def test_rational_roots():
    assert rational_roots([-1, 0, 1]) == [-1, 1]
    assert rational_roots([0, -1, 2]) == [0, Fraction(1, 2)]
    assert rational_roots([-2, 0, 0, 1]) == []


def test_primes_up_to_matches_sympy():
    assert primes_up_to(1000) == list(sympy.primerange(2, 1001))
    assert primes_up_to(1) == []


def test_histogram_matches_bruteforce_below_1000():
    for text in ("x^3-2", "x^4-x-1", "x^4+1", "x^5-x-1"):
        f = parse_poly(text)
        rep = density_scan(f, 1000)
        brute = {}
        for p in primes_up_to(1000):
            if p in rep.excluded:
                continue
            r = roots_by_evaluation(f, p)
            brute[r] = brute.get(r, 0) + 1
        assert rep.histogram == dict(sorted(brute.items()))


def test_report_invariants():
    f = parse_poly("x^3-2")
    rep = density_scan(f, 20000)
    assert sum(rep.histogram.values()) + len(rep.excluded) == len(primes_up_to(20000))
    assert all(0 <= k <= rep.degree for k in rep.histogram)
    assert rep.excluded == [2, 3]
    assert isinstance(rep.density_estimate, Fraction)


def test_x4_plus_1_only_zero_or_four_roots():
    rep = density_scan(parse_poly("x^4+1"), 5000)
    assert set(rep.histogram) == {0, 4}
    assert rep.density_estimate == 0


def test_estimate_stable_when_bound_doubles():
    for text in ("x^3-2", "x^4-x-1"):
        f = parse_poly(text)
        a = density_scan(f, 50000).density_estimate
        b = density_scan(f, 100000).density_estimate
        assert abs(float(a - b)) <= 0.01


def test_matches_fix_proportion_of_s3():
    prof = min_fix_profile(sym_group(3))
    s3_fraction = Fraction(prof.histogram.get(1, 0), 6)
    assert s3_fraction == Fraction(1, 2)
    est = density_scan(parse_poly("x^3-2"), 30000).density_estimate
    assert abs(float(est - s3_fraction)) <= 0.02


def test_jobs_do_not_change_result():
    f = parse_poly("x^4-x-1")
    assert density_scan(f, 30000, jobs=1).histogram == density_scan(f, 30000, jobs=3).histogram


def test_cap_and_constant_errors():
    with pytest.raises(ValueError):
        density_scan(parse_poly("x^2+1"), 10**6, cap=10**5)
    with pytest.raises(ValueError):
        density_scan([3], 100)


def test_to_dict():
    d = density_scan(parse_poly("x^2+1"), 100).to_dict()
    assert d["polynomial"] == "x^2 + 1" and d["excluded"] == [2]
    assert isinstance(DensityReport, type)
