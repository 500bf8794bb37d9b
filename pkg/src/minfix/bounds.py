"""Number-theoretic and combinatorial bounds, with exhaustive oracles.

Comparisons are exact (integers and :class:`fractions.Fraction`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, prod
from typing import Iterator

from .linalg_fp import MatrixFp, fixed_space_dim, spin_irreducible

# -- factorization -------------------------------------------------------------

TRIAL_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, seed: int) -> int | None:
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        if r > 1 << 22:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


class FactorizationIncomplete(ArithmeticError):
    def __init__(self, partial: dict[int, int], cofactor: int):
        super().__init__(f"could not split {cofactor}")
        self.partial = partial
        self.cofactor = cofactor


def factorint(n: int, trial_limit: int = TRIAL_LIMIT) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n and f <= trial_limit:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        for seed in range(20):
            d = _pollard_brent(m, seed)
            if d:
                stack += [d, m // d]
                break
        else:
            raise FactorizationIncomplete(out, m)
    return dict(sorted(out.items()))


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for p in factorint(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    fs = factorint(n)
    if any(e > 1 for e in fs.values()):
        return 0
    return -1 if len(fs) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def cyclotomic_value(m: int, q: int) -> int:
    """Phi_m(q) = prod over d | m of (q^d - 1)^mu(m/d)."""
    if m < 1:
        raise ValueError("m must be positive")
    num, den = 1, 1
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            num *= q**d - 1
        elif mu == -1:
            den *= q**d - 1
    if num % den:
        raise ArithmeticError("cyclotomic quotient is not integral")
    return num // den


def multiplicative_order(q: int, p: int) -> int:
    q %= p
    if q == 0:
        raise ValueError("q divisible by p")
    k, x = 1, q
    while x != 1:
        x = x * q % p
        k += 1
    return k


# -- primitive prime divisors --------------------------------------------------


@dataclass(frozen=True)
class PpdResult:
    m: int
    q: int
    value: int
    primes: tuple[int, ...]
    exceptional: bool
    complete: bool = True


def ppd_star(m: int, q: int) -> PpdResult:
    """Phi*_m(q): the part of q^m - 1 made of primes p with ord_p(q) = m,
    with multiplicity.  Only Phi_m(q) is factored since every such prime
    divides it."""
    if m < 2 or q < 2:
        raise ValueError("need m >= 2 and q >= 2")
    cyc = cyclotomic_value(m, q)
    complete = True
    try:
        fs = factorint(cyc)
    except FactorizationIncomplete as exc:
        fs, complete = exc.partial, False
    primes, value = [], 1
    for p, e in fs.items():
        if q % p and multiplicative_order(q, p) == m:
            primes.append(p)
            value *= p**e
    return PpdResult(m, q, value, tuple(primes), value == 1 and complete, complete)


def zsigmondy_exception_expected(m: int, q: int) -> bool:
    """Cases where no primitive prime divisor exists."""
    if (m, q) == (6, 2):
        return True
    return m == 2 and (q + 1) & q == 0


# -- classical group orders ----------------------------------------------------

FAMILIES = ("GL", "SL", "GU", "SU", "Sp", "SO_odd", "O_plus", "O_minus")


@dataclass(frozen=True)
class Inequality:
    label: str
    lhs: Fraction
    rhs: Fraction
    strict: bool

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs if self.strict else self.lhs <= self.rhs


@dataclass(frozen=True)
class OrderReport:
    family: str
    n: int
    q: int
    order: int
    inequalities: tuple[Inequality, ...]
    excluded: bool = False

    @property
    def holds(self) -> bool:
        return self.excluded or all(i.holds for i in self.inequalities)

    @property
    def failures(self) -> list[str]:
        return [i.label for i in self.inequalities if not i.holds]


def _chain(labels_values, strict_flags) -> tuple[Inequality, ...]:
    out = []
    for i, ((l1, v1), (l2, v2)) in enumerate(zip(labels_values, labels_values[1:])):
        out.append(Inequality(f"{l1} {'<' if strict_flags[i] else '<='} {l2}",
                              Fraction(v1), Fraction(v2), strict_flags[i]))
    return tuple(out)


def _rank(family: str, n: int) -> int:
    if family in ("Sp", "O_plus", "O_minus"):
        if n % 2:
            raise ValueError(f"{family} needs even dimension")
        return n // 2
    if family == "SO_odd":
        if n % 2 == 0:
            raise ValueError("SO_odd needs odd dimension")
        return (n - 1) // 2
    return n


def classical_order(family: str, n: int, q: int) -> OrderReport:
    """Exact order of the classical group of natural dimension n over F_q,
    with the order sandwich for its family.

    Sp, O_plus and O_minus take n = 2m and SO_odd takes n = 2m + 1; their
    bounds are written in terms of m.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if q < 2 or len(factorint(q)) != 1:
        raise ValueError("q must be a prime power")
    m = _rank(family, n)
    if m < 1:
        raise ValueError("rank must be at least 1")
    Q = Fraction(q)
    if family in ("GL", "SL"):
        gl = q**(n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))
        if family == "GL":
            order = gl
            chain = _chain([("q^(n^2-2)", Q**(n * n - 2)), ("9q^(n^2)/32", 9 * Q**(n * n) / 32),
                            ("|GL|", order), ("q^(n^2)", Q**(n * n))], [True] * 3)
        else:
            order = gl // (q - 1)
            chain = _chain([("q^(n^2-2)", Q**(n * n - 2)), ("9q^(n^2-1)/16", 9 * Q**(n * n - 1) / 16),
                            ("|SL|", order), ("q^(n^2-1)", Q**(n * n - 1))], [True] * 3)
    elif family in ("GU", "SU"):
        gu = q**(n * (n - 1) // 2) * prod(q**i - (-1)**i for i in range(1, n + 1))
        if family == "GU":
            order = gu
            chain = _chain([("q^(n^2)", Q**(n * n)), ("|GU|", order),
                            ("1.5q^(n^2)", Fraction(3, 2) * Q**(n * n)), ("q^(n^2+1)", Q**(n * n + 1))],
                           [True, False, True])
        else:
            order = gu // (q + 1)
            chain = _chain([("q^(n^2-2)", Q**(n * n - 2)), ("q^(n^2-1)/1.5", Q**(n * n - 1) / Fraction(3, 2)),
                            ("|SU|", order), ("q^(n^2-1)", Q**(n * n - 1))], [True] * 3)
    elif family in ("Sp", "SO_odd"):
        order = q**(m * m) * prod(q**(2 * i) - 1 for i in range(1, m + 1))
        e = 2 * m * m + m
        chain = _chain([("q^(2m^2+m-1)", Q**(e - 1)), ("9q^(2m^2+m)/16", 9 * Q**e / 16),
                        (f"|{family}|", order), ("q^(2m^2+m)", Q**e)], [True] * 3)
    else:
        sign = -1 if family == "O_plus" else 1
        order = 2 * q**(m * (m - 1)) * (q**m + sign) * prod(q**(2 * i) - 1 for i in range(1, m))
        e = 2 * m * m - m
        if family == "O_plus":
            chain = _chain([("q^(2m^2-m-1)", Q**(e - 1)), ("2*9q^(2m^2-m)/32", 18 * Q**e / 32),
                            ("|O+|", order), ("2q^(2m^2-m)", 2 * Q**e)], [True] * 3)
        else:
            chain = _chain([("q^(2m^2-m)", Q**e), ("2*9q^(2m^2-m)/16", 18 * Q**e / 16),
                            ("|O-|", order), ("2q^(2m^2-m)", 2 * Q**e), ("q^(2m^2-m+1)", Q**(e + 1))],
                           [True, True, False, False])
    excluded = family == "O_minus" and (m, q) == (1, 2)
    return OrderReport(family, n, q, order, chain, excluded)


def natural_dimension(family: str, rank: int) -> int:
    if family in ("Sp", "O_plus", "O_minus"):
        return 2 * rank
    if family == "SO_odd":
        return 2 * rank + 1
    return rank


# -- eigenspace-dimension optimization -----------------------------------------

VARIANTS = ("plain", "easier", "orthogonal_plus", "orthogonal_minus")


def _check_opt_hypotheses(n: int, A, B: int) -> Fraction:
    A = Fraction(A)
    if not (isinstance(n, int) and isinstance(B, int) and n >= 1 and B >= 1):
        raise ValueError("n and B must be positive integers")
    if not B < n:
        raise ValueError("need B < n")
    if not 1 <= A < n:
        raise ValueError("need 1 <= A < n")
    if A + B > n:
        raise ValueError("need A + B <= n")
    return A


def optimization_max(n: int, A, B: int, variant: str = "plain") -> Fraction:
    """Closed-form maximum over the real feasible set.

    plain: R + sum a_i^2; easier: sum a_i^2; orthogonal_plus/minus:
    R + sum a_i^2 +/- a_1.
    """
    A = _check_opt_hypotheses(n, A, B)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    s = {"orthogonal_plus": 1, "orthogonal_minus": -1}.get(variant, 0)
    r = 0 if variant == "easier" else B
    if A * (B + 1) + s * B >= 2 * n:
        return r + A * A + s * A + (n - A)**2 / B
    return r + Fraction(n * n, B)


def optimization_branch_integral(n: int, A, B: int, variant: str = "plain") -> bool:
    """True when a maximizing configuration of the closed form is an
    integer vector (a_1 = A with B equal parts (n - A)/B, or a_1 = 0 with
    B parts n/B)."""
    A = _check_opt_hypotheses(n, A, B)
    s = {"orthogonal_plus": 1, "orthogonal_minus": -1}.get(variant, 0)
    key = A * (B + 1) + s * B
    at_a = A.denominator == 1 and (n - A) % B == 0
    at_zero = n % B == 0
    if key > 2 * n:
        return at_a
    if key < 2 * n:
        return at_zero
    return at_a or at_zero


def _grouped_partitions(total: int, B: int, max_parts: int) -> Iterator[list[int]]:
    """Multisets of positive integers summing to ``total`` in which each
    distinct value occurs at least B times, with at most ``max_parts`` parts."""
    def rec(remaining: int, max_value: int, parts: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield []
            return
        for v in range(min(max_value, remaining // B), 0, -1):
            for mult in range(B, remaining // v + 1):
                if parts + mult > max_parts:
                    break
                for tail in rec(remaining - mult * v, v - 1, parts + mult):
                    yield [v] * mult + tail
    yield from rec(total, total, 0)


def optimization_bruteforce(n: int, A, B: int, variant: str = "plain") -> int:
    """Maximum of the objective over integer feasible vectors."""
    A = _check_opt_hypotheses(n, A, B)
    s = {"orthogonal_plus": 1, "orthogonal_minus": -1}.get(variant, 0)
    best = None
    for a1 in range(0, int(A) + 1):
        for rest in _grouped_partitions(n - a1, B, n - 1):
            r = 0 if variant == "easier" else len(rest)
            value = r + a1 * a1 + s * a1 + sum(x * x for x in rest)
            if best is None or value > best:
                best = value
    if best is None:
        raise ValueError("no integer feasible vector")
    return best


# -- partitions and unipotent centralizers -------------------------------------


@dataclass(frozen=True)
class PartitionShape:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError("parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def transpose(self) -> PartitionShape:
        if not self.parts:
            return self
        return PartitionShape(tuple(sum(1 for p in self.parts if p > i)
                                    for i in range(self.parts[0])))


def partitions(n: int, max_part: int | None = None) -> Iterator[PartitionShape]:
    def rec(m: int, cap: int):
        if m == 0:
            yield ()
            return
        for first in range(min(m, cap), 0, -1):
            for tail in rec(m - first, first):
                yield (first,) + tail
    for p in rec(n, max_part or n):
        yield PartitionShape(p)


def transpose_and_centralizer_dim(lam: PartitionShape) -> tuple[PartitionShape, int]:
    t = lam.transpose()
    return t, sum(x * x for x in t.parts)


@dataclass(frozen=True)
class UnipotentCheck:
    feasible: bool
    holds: bool
    lhs: int
    rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


def unipotent_hypothesis_met(lam: PartitionShape, B: int, C: int) -> bool:
    """Some index set I has parts summing to <= C with every other part >= B.

    Parts below B must lie in I and adding more only raises the sum, so the
    least choice of I decides.
    """
    return sum(p for p in lam.parts if p < B) <= C


def unipotent_hypothesis_bruteforce(lam: PartitionShape, B: int, C: int) -> bool:
    idx = range(len(lam.parts))
    for r in range(len(lam.parts) + 1):
        for I in combinations(idx, r):
            inside = set(I)
            if sum(lam.parts[i] for i in I) <= C and all(
                    lam.parts[j] >= B for j in idx if j not in inside):
                return True
    return False


def unipotent_bound_check(lam: PartitionShape, B: int, C: int) -> UnipotentCheck:
    n = lam.n
    if B < 2 or C < 0 or B > n or C > n:
        raise ValueError("need 2 <= B <= n and 0 <= C <= n")
    _, dim = transpose_and_centralizer_dim(lam)
    rhs = Fraction(n * n, B) + C * C * (1 - Fraction(1, B))
    feasible = unipotent_hypothesis_met(lam, B, C)
    return UnipotentCheck(feasible, (not feasible) or dim <= rhs, dim, rhs)


# -- random irreducible pairs --------------------------------------------------


def random_matrix(rng: random.Random, n: int, p: int) -> MatrixFp:
    while True:
        M = MatrixFp.from_rows([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        if M.is_invertible():
            return M


@dataclass(frozen=True)
class ScottTrial:
    p: int
    dim: int
    fixed_dims: tuple[int, int, int]

    @property
    def holds(self) -> bool:
        return sum(self.fixed_dims) <= self.dim and 3 * min(self.fixed_dims) <= self.dim


def scott_trials(count: int = 100, seed: int = 20240917, max_dim: int = 8, max_p: int = 7,
                 max_points: int = 4096) -> list[ScottTrial]:
    """Random pairs (x, y) in GL_dim(p) that act irreducibly, with the fixed
    space dimensions of x, y and xy.

    (dim, p) is drawn with 2 <= dim <= max_dim, p <= max_p and p^dim <=
    max_points so that the 1-space spin test stays cheap.
    """
    rng = random.Random(seed)
    shapes = [(d, p) for p in (2, 3, 5, 7) if p <= max_p for d in range(2, max_dim + 1)
              if p**d <= max_points]
    out = []
    while len(out) < count:
        d, p = rng.choice(shapes)
        x, y = random_matrix(rng, d, p), random_matrix(rng, d, p)
        if not spin_irreducible([x, y]):
            continue
        out.append(ScottTrial(p, d, (fixed_space_dim(x), fixed_space_dim(y), fixed_space_dim(x @ y))))
    return out


# -- sweeps --------------------------------------------------------------------

SWEEP_QS = (2, 3, 4, 5, 7, 8, 9)


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def sweep_zsigmondy(max_m: int = 20, max_q: int = 20) -> SweepResult:
    res = SweepResult("zsigmondy")
    for m in range(2, max_m + 1):
        for q in range(2, max_q + 1):
            r = ppd_star(m, q)
            res.checked += 1
            bad = (r.exceptional != zsigmondy_exception_expected(m, q)
                   or any(p % m != 1 for p in r.primes)
                   or cyclotomic_value(m, q) % r.value
                   or any((q**m - 1) % p or any((q**i - 1) % p == 0 for i in range(1, m))
                          for p in r.primes))
            if bad:
                res.failures.append((m, q))
    return res


def sweep_classical_orders(ranks=range(2, 9), qs=SWEEP_QS) -> SweepResult:
    res = SweepResult("classical-orders")
    for family in FAMILIES:
        for r in ranks:
            for q in qs:
                rep = classical_order(family, natural_dimension(family, r), q)
                res.checked += 1
                if not rep.holds:
                    res.failures.append((family, r, q, rep.failures))
    return res


def optimization_grid(max_n: int = 12, step: Fraction = Fraction(1, 2)):
    """(n, A, B) with A on a grid of the given step, all hypotheses met."""
    for n in range(2, max_n + 1):
        for B in range(1, n):
            A = Fraction(1)
            while A < n and A + B <= n:
                yield n, A, B
                A += step


def sweep_optimization(max_n: int = 12, step: Fraction = Fraction(1, 2)) -> SweepResult:
    """Closed form >= integer maximum everywhere, with equality when the
    closed form's maximizing configuration is an integer vector."""
    res = SweepResult("optimization")
    for n, A, B in optimization_grid(max_n, step):
        for v in VARIANTS:
            closed = optimization_max(n, A, B, v)
            brute = optimization_bruteforce(n, A, B, v)
            res.checked += 1
            if brute > closed or (optimization_branch_integral(n, A, B, v) and brute != closed):
                res.failures.append((n, A, B, v, closed, brute))
    return res


def sweep_unipotent(max_n: int = 12) -> SweepResult:
    res = SweepResult("unipotent")
    for n in range(1, max_n + 1):
        for lam in partitions(n):
            for B in range(2, n + 1):
                for C in range(0, n + 1):
                    chk = unipotent_bound_check(lam, B, C)
                    if not chk.feasible:
                        continue
                    res.checked += 1
                    if not chk.holds:
                        res.failures.append((lam.parts, B, C))
    return res


def sweep_scott(count: int = 100, seed: int = 20240917) -> SweepResult:
    res = SweepResult("scott")
    for trial in scott_trials(count, seed):
        res.checked += 1
        if not trial.holds:
            res.failures.append(trial)
    return res


def all_sweeps(seed: int = 20240917) -> list[SweepResult]:
    return [sweep_zsigmondy(), sweep_classical_orders(), sweep_optimization(),
            sweep_unipotent(), sweep_scott(seed=seed)]
