"""Dense matrices and polynomials over a prime field F_p.

Everything here uses exact modular integer arithmetic.  Matrices act on
column vectors; polynomial coefficient lists are little-endian
(``coeffs[i]`` is the coefficient of ``X**i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

SPIN_CAP = 10**5


class ScaleCapExceeded(ValueError):
    pass


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class MatrixFp:
    p: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        if any(not 0 <= e < self.p for e in self.entries):
            object.__setattr__(self, "entries", tuple(e % self.p for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> MatrixFp:
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(p, r, c, tuple(x % p for row in rows for x in row))

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixFp:
        return cls(p, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def elementary(cls, n: int, p: int, i: int, j: int, a: int = 1) -> MatrixFp:
        """Transvection ``I + a*E_ij`` (i != j) or diagonal ``I + (a-1)*E_ii``."""
        ent = [int(r == c) for r in range(n) for c in range(n)]
        if i == j:
            ent[i * n + i] = a % p
        else:
            ent[i * n + j] = a % p
        return cls(p, n, n, tuple(ent))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: MatrixFp) -> MatrixFp:
        if self.p != other.p or self.cols != other.rows:
            raise ValueError("shape or field mismatch")
        p = self.p
        cols = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) % p for c in cols)
        return MatrixFp(p, self.rows, other.cols, tuple(out))

    def __sub__(self, other: MatrixFp) -> MatrixFp:
        if (self.p, self.rows, self.cols) != (other.p, other.rows, other.cols):
            raise ValueError("shape or field mismatch")
        return MatrixFp(self.p, self.rows, self.cols,
                        tuple((a - b) % self.p for a, b in zip(self.entries, other.entries)))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        p, n = self.p, self.cols
        return tuple(sum(self.entries[i * n + k] * v[k] for k in range(n)) % p
                     for i in range(self.rows))

    def rank(self) -> int:
        return len(_echelon(self.to_rows(), self.p))

    def nullity(self) -> int:
        return self.cols - self.rank()

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        p = self.p
        m = self.to_rows()
        n = self.rows
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c] % p
            inv = pow(m[c][c], -1, p)
            for r in range(c + 1, n):
                f = m[r][c] * inv % p
                if f:
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
        return d % p

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.det() != 0

    def order(self, limit: int | None = None) -> int:
        """Multiplicative order by repeated multiplication (small matrices only)."""
        ident = MatrixFp.identity(self.rows, self.p)
        if not self.is_invertible():
            raise ValueError("singular matrix has no multiplicative order")
        x, k = self, 1
        while x != ident:
            x = x @ self
            k += 1
            if limit is not None and k > limit:
                raise ScaleCapExceeded("order search limit reached")
        return k


def _echelon(rows: list[list[int]], p: int) -> list[list[int]]:
    """Row-reduce; returns the nonzero rows of a reduced echelon form."""
    m = [r[:] for r in rows]
    out = []
    ncols = len(m[0]) if m else 0
    r0 = 0
    for c in range(ncols):
        piv = next((r for r in range(r0, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[r0], m[piv] = m[piv], m[r0]
        inv = pow(m[r0][c], -1, p)
        m[r0] = [x * inv % p for x in m[r0]]
        for r in range(len(m)):
            if r != r0 and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[r0])]
        r0 += 1
    out = [row for row in m[:r0]]
    return out


def fixed_space_dim(M: MatrixFp) -> int:
    """dim C_V(M) = n - rank(M - I)."""
    if M.rows != M.cols:
        raise ValueError("fixed space of a non-square matrix")
    return M.cols - (M - MatrixFp.identity(M.rows, M.p)).rank()


def companion_matrix(poly: PolyFp) -> MatrixFp:
    """Companion matrix of a monic polynomial (acts on columns: e_i -> e_{i+1})."""
    c = poly.coeffs
    d = len(c) - 1
    if d < 1 or c[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    p = poly.p
    ent = [0] * (d * d)
    for i in range(1, d):
        ent[i * d + (i - 1)] = 1
    for i in range(d):
        ent[i * d + (d - 1)] = (-c[i]) % p
    return MatrixFp(p, d, d, tuple(ent))


# -- polynomials -------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class PolyFp:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = _trim([x % self.p for x in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], p: int) -> PolyFp:
        return cls(p, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> PolyFp:
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return PolyFp(self.p, tuple(x * inv for x in self.coeffs))

    def __call__(self, x: int) -> int:
        y = 0
        for c in reversed(self.coeffs):
            y = (y * x + c) % self.p
        return y

    def __add__(self, other: PolyFp) -> PolyFp:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyFp(self.p, tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                    for i in range(n)))

    def __neg__(self) -> PolyFp:
        return PolyFp(self.p, tuple(-x for x in self.coeffs))

    def __sub__(self, other: PolyFp) -> PolyFp:
        return self + (-other)

    def __mul__(self, other: PolyFp) -> PolyFp:
        return PolyFp(self.p, tuple(_polymul(self.coeffs, other.coeffs, self.p)))

    def divmod(self, other: PolyFp) -> tuple[PolyFp, PolyFp]:
        q, r = _polydivmod(list(self.coeffs), list(other.coeffs), self.p)
        return PolyFp(self.p, tuple(q)), PolyFp(self.p, tuple(r))

    def __mod__(self, other: PolyFp) -> PolyFp:
        return self.divmod(other)[1]

    def gcd(self, other: PolyFp) -> PolyFp:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: PolyFp) -> PolyFp:
        return PolyFp(self.p, tuple(_polypowmod(list(self.coeffs), e, list(modulus.coeffs), self.p)))


def _polymul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _polydivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    b = _trim(b[:])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim([x % p for x in a])
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % p
    return _trim(q), _trim(a[:db])


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    return _polydivmod(a, m, p)[1]


def _polypowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(base, m, p)
    while e:
        if e & 1:
            result = _polymod(_polymul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _polymod(_polymul(base, base, p), m, p)
    return _polymod(result, m, p)


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def poly_distinct_roots_mod_p(f: Sequence[int], p: int) -> int:
    """Number of distinct roots in F_p of the integer polynomial ``f``.

    Computes ``deg gcd(X^p - X, f mod p)`` with ``X^p`` reduced mod ``f``
    by square-and-multiply.
    """
    fb = _trim([c % p for c in f])
    if not fb:
        raise ValueError(f"p = {p} divides every coefficient")
    if len(fb) == 1:
        return 0
    xp = _polypowmod([0, 1], p, fb, p)
    h = xp + [0] * max(0, 2 - len(xp))
    h[1] = (h[1] - 1) % p
    g = _polygcd(fb, _trim(h), p)
    if not g:
        # X^p - X = 0 mod f only when f divides X^p - X
        return len(fb) - 1
    return len(g) - 1


def roots_by_evaluation(f: Sequence[int], p: int) -> int:
    """Brute-force count of a in F_p with f(a) = 0."""
    count = 0
    for a in range(p):
        y = 0
        for c in reversed(f):
            y = (y * a + c) % p
        count += y == 0
    return count


# -- primitive polynomials and irreducibility ---------------------------------


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _x_order_is(f: list[int], p: int, order: int) -> bool:
    """True iff X has multiplicative order exactly ``order`` modulo f."""
    if _polypowmod([0, 1], order, f, p) != [1]:
        return False
    return all(_polypowmod([0, 1], order // r, f, p) != [1] for r in _prime_factors(order))


def primitive_poly(d: int, p: int) -> PolyFp:
    """First monic degree-d polynomial over F_p whose companion matrix has
    order p^d - 1.

    The scan runs over the companion matrix's last column ``(-c_0, ..., -c_{d-1})``
    read as a base-p number with the first entry least significant, so for
    d = 1 the candidates are ``X - 1, X - 2, ...``.
    """
    _check_prime(p)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if p**d > 2**31:
        raise ScaleCapExceeded("p^d exceeds 2^31")
    order = p**d - 1
    for idx in range(1, p**d):
        col, x = [], idx
        for _ in range(d):
            col.append(x % p)
            x //= p
        if col[0] == 0:
            continue
        f = [(-a) % p for a in col] + [1]
        if _x_order_is(f, p, order):
            return PolyFp(p, tuple(f))
    raise AssertionError("no primitive polynomial found")


def spin(gens: Sequence[MatrixFp], v: Sequence[int]) -> int:
    """Dimension of the smallest subspace containing v and invariant under gens."""
    p = gens[0].p
    n = gens[0].rows
    basis: dict[int, list[int]] = {}

    def reduce(w: list[int]) -> list[int] | None:
        w = [x % p for x in w]
        for c in range(n):
            if w[c]:
                b = basis.get(c)
                if b is None:
                    inv = pow(w[c], -1, p)
                    return [x * inv % p for x in w]
                f = w[c]
                w = [(x - f * y) % p for x, y in zip(w, b)]
        return None

    first = reduce(list(v))
    if first is None:
        return 0
    pivot = next(i for i, x in enumerate(first) if x)
    basis[pivot] = first
    queue = [first]
    for w in queue:
        for g in gens:
            r = reduce(list(g.apply(w)))
            if r is not None:
                pivot = next(i for i, x in enumerate(r) if x)
                basis[pivot] = r
                queue.append(r)
                if len(basis) == n:
                    return n
    return len(basis)


def projective_points(n: int, p: int) -> Iterator[tuple[int, ...]]:
    """Normalized representatives of 1-spaces of F_p^n (first nonzero entry 1),
    in lexicographic order."""
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def spin_irreducible(gens: Sequence[MatrixFp]) -> bool:
    """True iff every 1-space spins to the whole space under ``gens``."""
    if not gens:
        raise ValueError("need at least one matrix")
    p, n = gens[0].p, gens[0].rows
    for g in gens:
        if g.p != p or g.rows != n or g.cols != n:
            raise ValueError("matrices must be square with common field and size")
    if p**n > SPIN_CAP:
        raise ScaleCapExceeded(f"p^dim = {p**n} exceeds spin cap {SPIN_CAP}")
    return all(spin(gens, v) == n for v in projective_points(n, p))
