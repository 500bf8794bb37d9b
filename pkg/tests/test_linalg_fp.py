import pytest
from hypothesis import given, strategies as st
from sympy import GF, Matrix, Poly, symbols
from sympy.polys.matrices import DomainMatrix

from minfix.linalg_fp import (MatrixFp, PolyFp, ScaleCapExceeded, companion_matrix,
                              fixed_space_dim, poly_distinct_roots_mod_p, primitive_poly,
                              projective_points, roots_by_evaluation, spin, spin_irreducible)

X = symbols("x")
PRIMES = [2, 3, 5, 7]


@st.composite
def square(draw, max_n=5):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, max_n))
    rows = [[draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    return MatrixFp.from_rows(rows, p)


@given(square())
def test_rank_and_det_match_sympy(M):
    p = M.p
    dm = DomainMatrix([[GF(p)(x) for x in r] for r in M.to_rows()], (M.rows, M.cols), GF(p))
    assert M.rank() == dm.rank()
    assert M.det() == int(Matrix(M.to_rows()).det()) % p
    assert fixed_space_dim(M) == M.rows - (M - MatrixFp.identity(M.rows, p)).rank()


@given(square(4), st.data())
def test_product_matches_sympy(A, data):
    B = MatrixFp.from_rows([[data.draw(st.integers(0, A.p - 1)) for _ in range(A.cols)]
                            for _ in range(A.rows)], A.p)
    expected = (Matrix(A.to_rows()) * Matrix(B.to_rows())).applyfunc(lambda v: v % A.p)
    assert (A @ B).to_rows() == expected.tolist()


def test_elementary_and_identity():
    E = MatrixFp.elementary(3, 5, 0, 2, 3)
    assert E[0, 2] == 3 and E.det() == 1
    assert E.order() == 5
    assert MatrixFp.identity(3, 5).order() == 1


def test_from_rows_rejects_nonprime_and_ragged():
    with pytest.raises(ValueError):
        MatrixFp.from_rows([[1, 0], [0, 1]], 4)
    with pytest.raises(ValueError):
        MatrixFp.from_rows([[1, 0], [0]], 5)


@pytest.mark.parametrize("d,p", [(1, 5), (1, 7), (2, 3), (3, 2), (4, 2), (2, 5), (3, 3)])
def test_primitive_poly_companion_has_full_order(d, p):
    f = primitive_poly(d, p)
    assert f.degree == d
    assert Poly(list(reversed(f.coeffs)), X, modulus=p).is_irreducible
    C = companion_matrix(f)
    assert C.order() == p**d - 1
    assert fixed_space_dim(C) == 0


def test_primitive_poly_first_candidate():
    assert primitive_poly(1, 5).coeffs == (3, 1)  # x - 2


@st.composite
def int_poly(draw):
    deg = draw(st.integers(1, 6))
    coeffs = [draw(st.integers(-20, 20)) for _ in range(deg)] + [draw(st.integers(1, 5))]
    return coeffs


@given(int_poly(), st.sampled_from([2, 3, 5, 7, 11, 13, 31, 101]))
def test_distinct_roots_match_evaluation(f, p):
    if all(c % p == 0 for c in f):
        with pytest.raises(ValueError):
            poly_distinct_roots_mod_p(f, p)
        return
    brute = sum(1 for a in range(p) if sum(c * a**i for i, c in enumerate(f)) % p == 0)
    assert poly_distinct_roots_mod_p(f, p) == brute == roots_by_evaluation(f, p)


def test_polyfp_arithmetic_against_sympy():
    p = 7
    a, b = PolyFp.from_ints([1, 2, 3, 1], p), PolyFp.from_ints([3, 0, 1], p)
    sa = Poly([1, 3, 2, 1], X, modulus=p)
    sb = Poly([1, 0, 3], X, modulus=p)
    q, r = a.divmod(b)
    sq, sr = sa.div(sb)
    assert [c % p for c in reversed(sq.all_coeffs())] == list(q.coeffs)
    assert [c % p for c in reversed(sr.all_coeffs())] == list(r.coeffs)
    assert a.gcd(b).degree == sa.gcd(sb).degree()


def test_spin_and_irreducibility():
    C = companion_matrix(primitive_poly(3, 2))
    assert spin_irreducible([C])
    D = MatrixFp.from_rows([[1, 1], [0, 1]], 3)
    assert not spin_irreducible([D])
    assert spin([D], (1, 0)) == 1 and spin([D], (0, 1)) == 2


def test_projective_point_count():
    assert len(list(projective_points(3, 3))) == 13
    assert len(list(projective_points(2, 7))) == 8


def test_spin_cap():
    M = MatrixFp.identity(13, 3)
    with pytest.raises(ScaleCapExceeded):
        spin_irreducible([M])
