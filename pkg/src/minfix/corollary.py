"""Root counts of an integer polynomial modulo primes.

For f irreducible of degree n, the proportion of primes p at which f has
between 1 and n^(1/3) roots in F_p tends to the proportion of elements of
its Galois group (in the action on the roots) with that many fixed points.
:func:`density_scan` measures the left-hand side.

Polynomials are little-endian integer coefficient lists: ``[-2, 0, 0, 1]``
is x^3 - 2.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg_fp import _polygcd, _polypowmod, _trim, poly_distinct_roots_mod_p

DEFAULT_PRIME_CAP = 10**7
CERTIFICATE_PRIME_BOUND = 100


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- parsing -------------------------------------------------------------------


class _Parser:
    """Recursive descent over  expr := term (('+'|'-') term)*,
    term := factor ('*' factor)*,  factor := ('-'|'+') factor | atom ('^' int)?,
    atom := int | 'x' | '(' expr ')'."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise PolynomialSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolynomialSyntaxError("expected an integer", start)
        return int(self.text[start:self.pos])

    def expr(self) -> list[int]:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = _add(acc, rhs if op == "+" else [-c for c in rhs])
        return acc

    def term(self) -> list[int]:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = _mul(acc, self.factor())
        return acc

    def factor(self) -> list[int]:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return [-c for c in self.factor()]
        if ch == "+":
            self.pos += 1
            return self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.integer()
            out = [1]
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> list[int]:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch == "x" or ch == "X":
            self.pos += 1
            return [0, 1]
        if ch.isdigit():
            return [self.integer()]
        raise PolynomialSyntaxError("unexpected " + (repr(ch) if ch else "end of input"), self.pos)


def _add(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _strip(f: Sequence[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def parse_poly(text: str) -> list[int]:
    """Parse an integer polynomial in x, e.g. ``"x^4 - x - 1"``."""
    p = _Parser(text)
    out = p.expr()
    if p.peek():
        raise PolynomialSyntaxError(f"unexpected {p.peek()!r}", p.pos)
    out = _strip(out)
    if not out:
        raise PolynomialSyntaxError("zero polynomial", 0)
    return out


def format_poly(f: Sequence[int]) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- discriminant --------------------------------------------------------------


def bareiss_det(M: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    A = [row[:] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) as the Sylvester determinant."""
    f, g = _strip(f), _strip(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("zero polynomial")
    size = m + n
    if size == 0:
        return 1
    fb, gb = f[::-1], g[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + fb + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gb + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def discriminant(f: Sequence[int]) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f); x^2 + bx + c gives b^2 - 4c."""
    f = _strip(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    df = [i * c for i, c in enumerate(f)][1:]
    res = resultant(f, df)
    lc = f[-1]
    if res % lc:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res // lc


# -- irreducibility ------------------------------------------------------------


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return np.flatnonzero(sieve).tolist()


def irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Distinct-degree test: f mod p (same degree) has no factor of degree <= n/2."""
    fb = _trim([c % p for c in f])
    n = len(f) - 1
    if len(fb) - 1 != n:
        return False
    inv = pow(fb[-1], -1, p)
    fb = [c * inv % p for c in fb]
    xq = [0, 1]
    for _ in range(1, n // 2 + 1):
        xq = _polypowmod(xq, p, fb, p)
        h = xq + [0] * max(0, 2 - len(xq))
        h[1] = (h[1] - 1) % p
        g = _polygcd(fb, _trim(h), p)
        if len(g) != 1:
            return False
    return True


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(f: Sequence[int]) -> list[Fraction]:
    f = _strip(f)
    out = set()
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    if k:
        out.add(Fraction(0))
    g = f[k:]
    if len(g) > 1:
        for a in _divisors(g[0]):
            for b in _divisors(g[-1]):
                for cand in (Fraction(a, b), Fraction(-a, b)):
                    if sum(c * cand**i for i, c in enumerate(g)) == 0:
                        out.add(cand)
    return sorted(out)


@dataclass(frozen=True)
class IrreducibilityVerdict:
    certified: bool
    prime: int | None
    rational_root: bool
    warning: str | None = None


def irreducibility_certificate(f: Sequence[int], prime_bound: int = CERTIFICATE_PRIME_BOUND
                               ) -> IrreducibilityVerdict:
    """Certified when f is irreducible modulo a prime p <= prime_bound not
    dividing lc(f).  Failing that, the verdict is uncertified (the scan may
    still run)."""
    f = _strip(f)
    if len(f) < 3:
        raise ValueError("irreducibility certificate needs degree >= 2")
    has_root = bool(rational_roots(f))
    for p in primes_up_to(prime_bound):
        if f[-1] % p and irreducible_mod_p(f, p):
            return IrreducibilityVerdict(True, p, has_root)
    warning = "has a rational root" if has_root else f"no prime <= {prime_bound} certifies irreducibility"
    return IrreducibilityVerdict(False, None, has_root, warning)


# -- density scan --------------------------------------------------------------


@dataclass
class DensityReport:
    polynomial: list[int]
    degree: int
    prime_bound: int
    histogram: dict[int, int]
    excluded: list[int]
    counted: int
    density_estimate: Fraction
    mean_root_count: Fraction
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "polynomial": format_poly(self.polynomial),
            "coefficients": list(self.polynomial),
            "degree": self.degree,
            "prime_bound": self.prime_bound,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "excluded": self.excluded,
            "counted": self.counted,
            "density_estimate": float(self.density_estimate),
            "density_exact": f"{self.density_estimate.numerator}/{self.density_estimate.denominator}",
            "mean_root_count": float(self.mean_root_count),
            "notes": self.notes,
        }


def _count_chunk(args) -> dict[int, int]:
    f, primes = args
    hist: dict[int, int] = {}
    for p in primes:
        r = poly_distinct_roots_mod_p(f, p)
        hist[r] = hist.get(r, 0) + 1
    return hist


def density_scan(f: Sequence[int], prime_bound: int, cap: int = DEFAULT_PRIME_CAP,
                 jobs: int = 1) -> DensityReport:
    """Histogram of distinct root counts over unramified primes p <= bound."""
    f = _strip(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("polynomial must be nonconstant")
    if prime_bound > cap:
        raise ValueError(f"prime bound {prime_bound} exceeds cap {cap}")
    bad = abs(f[-1] * discriminant(f))
    primes = primes_up_to(prime_bound)
    excluded = [p for p in primes if bad % p == 0]
    kept = [p for p in primes if bad % p]
    if jobs > 1 and len(kept) > 1000:
        chunks = [kept[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_count_chunk, [(f, c) for c in chunks]))
    else:
        parts = [_count_chunk((f, kept))]
    hist: dict[int, int] = {}
    for part in parts:
        for k, v in part.items():
            hist[k] = hist.get(k, 0) + v
    counted = len(kept)
    good = sum(v for r, v in hist.items() if r >= 1 and r**3 <= n)
    density = Fraction(good, counted) if counted else Fraction(0)
    mean = Fraction(sum(r * v for r, v in hist.items()), counted) if counted else Fraction(0)
    notes = ["primes dividing lc(f)*disc(f) are excluded, not counted"]
    return DensityReport(f, n, prime_bound, dict(sorted(hist.items())), excluded, counted, density,
                         mean, notes)
