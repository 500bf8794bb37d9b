"""Explicit witness elements with predicted fixed-point counts.

Each constructor returns a :class:`WitnessSpec`; :func:`verify_witness`
instantiates it and measures the actual count, directly when the action is
small enough and through the class formula otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Any

from .constructions import (DEFAULT_ACTION_CAP, GroupAction, affine_group, alt_group,
                            coset_action, diagonal_action, ksubsets_action, product_element,
                            projective_action, wreath_action)
from .bounds import euler_phi
from .fix_formulas import fix_by_formula, fusion_scan
from .group import PermGroup, conjugacy_classes, conjugacy_orbit
from .perm import Permutation, fix_count, perm_from_cycles

CASES = ("intransitive", "imprimitive", "affine", "product", "diagonal", "parabolic")


class WitnessError(ValueError):
    pass


@dataclass
class WitnessSpec:
    case: str
    params: dict[str, int]
    element: Permutation | None = None
    cycle_type: tuple[int, ...] | None = None
    predicted_fix: int | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.case not in CASES:
            raise WitnessError(f"unknown case {self.case!r}")
        if self.element is not None and self.cycle_type is None:
            self.cycle_type = self.element.cycle_type()
        if self.cycle_type is not None and self.element is not None:
            if sum(self.cycle_type) != self.element.degree:
                raise WitnessError("cycle type does not sum to the degree")


# -- small helpers -------------------------------------------------------------


def element_with_cycle_type(parts, start: int = 0, degree: int | None = None) -> Permutation:
    """Cycles on consecutive points, in the given order."""
    n = sum(parts)
    degree = degree if degree is not None else start + n
    cycles, pt = [], start
    for length in parts:
        cycles.append(tuple(range(pt, pt + length)))
        pt += length
    return perm_from_cycles(degree, [c for c in cycles if len(c) > 1])


def _block_cycle(blocks: list[list[int]]) -> list[tuple[int, ...]]:
    """One cycle through all points of ``blocks`` that permutes them cyclically."""
    t, k = len(blocks), len(blocks[0])
    seq = [blocks[b][j] for j in range(k) for b in range(t)]
    return [tuple(seq)] if len(seq) > 1 else []


def sym_centralizer_from_type(cycle_type) -> int:
    counts: dict[int, int] = {}
    for c in cycle_type:
        counts[c] = counts.get(c, 0) + 1
    return prod(length**m * factorial(m) for length, m in counts.items())


def alt_centralizer_from_type(cycle_type) -> int:
    """|C_{A_n}(g)| for an even g: halved unless all cycles are odd and distinct."""
    counts: dict[int, int] = {}
    for c in cycle_type:
        counts[c] = counts.get(c, 0) + 1
    full = sym_centralizer_from_type(cycle_type)
    splits = all(length % 2 == 1 and m == 1 for length, m in counts.items())
    return full if splits else full // 2


def cyclic_orbit_count(g: Permutation) -> int:
    """Number of orbits of <g>, fixed points included."""
    return len(g.cycles(include_fixed=True))


# -- alternating-group cases ---------------------------------------------------


def witness_alternating(case: str, n: int | None = None, k: int | None = None,
                        t: int | None = None) -> WitnessSpec:
    """Witness in M < A_n for the intransitive, imprimitive and product cases.

    intransitive: M = stabilizer of {0..k-1}, 1 <= k < n/2.
    imprimitive: M preserves blocks of k consecutive points, n = kt.
    product: M = (S_k wr S_t) & A_n in product action, n = k^t.
    """
    if case == "intransitive":
        if n is None or k is None or not 1 <= k < n / 2:
            raise WitnessError("intransitive case needs 1 <= k < n/2")
        if n % 2 == 0:
            parts = (k, n - k)
        elif k != 1:
            parts = (1, k - 1, n - k)
        else:
            parts = (1, 2, n - 3)
        if n % 2 == 1 and k == 1 and n < 5:
            raise WitnessError("n too small for the k = 1 odd case")
        g = element_with_cycle_type(parts)
        return WitnessSpec(case, {"n": n, "k": k}, g, tuple(sorted(parts)), 1)
    if case == "imprimitive":
        if k is None or t is None or k < 2 or t < 2:
            raise WitnessError("imprimitive case needs k, t >= 2")
        n = k * t
        blocks = [list(range(b * k, b * k + k)) for b in range(t)]
        if n % 2 == 1:
            cycles = _block_cycle(blocks)
            parts = (n,)
        elif k != 2:
            first = blocks[0]
            cycles = [tuple(first[2:])] if k > 3 else []
            cycles += _block_cycle(blocks[1:])
            parts = (1, 1, k - 2, n - k)
        else:
            if t < 3:
                raise WitnessError("k = 2 needs t >= 3")
            cycles = [tuple(blocks[0])] + _block_cycle(blocks[1:])
            parts = (n - 2, 2)
        g = perm_from_cycles(n, cycles)
        return WitnessSpec(case, {"n": n, "k": k, "t": t}, g, tuple(sorted(parts)), 1)
    if case == "product":
        if k is None or t is None or k < 5 or t < 2:
            raise WitnessError("product case needs k >= 5, t >= 2")
        delta = k % 2 == 0
        x = perm_from_cycles(k, [tuple(range(delta, k))])
        g = product_element([x] * t)
        n = k**t
        m_order = factorial(k)**t * factorial(t) // 2
        cG = alt_centralizer_from_type(g.cycle_type())
        g_order = factorial(n) // 2
        lhs = m_order * cG**3
        return WitnessSpec(case, {"n": n, "k": k, "t": t}, g, None, None,
                           {"subgroup_order": m_order, "centralizer_order": cG,
                            "bound_holds": lhs < g_order})
    raise WitnessError(f"unsupported alternating case {case!r}")


def witness_affine(d: int, p: int, cap: int = DEFAULT_ACTION_CAP) -> WitnessSpec:
    """Singer cycle (p = 2) or its square (p odd) in AGL_d(p) & A_{p^d}."""
    n = p**d
    if n < 7:
        raise WitnessError("affine witness needs p^d >= 7")
    aff = affine_group(d, p, cap=cap)
    if p == 2:
        g = aff.meta["singer"]
        num, den = euler_phi(n - 1), 2 * d
    else:
        g = aff.meta["singer_square"]
        num, den = euler_phi((n - 1) // 2) * (n - 1), 2 * d
    if num % den:
        raise WitnessError(f"affine formula {num}/{den} is not an integer")
    return WitnessSpec("affine", {"d": d, "p": p, "n": n}, g, None, num // den)


# -- O'Nan-Scott cases ---------------------------------------------------------


def min_centralizer_class(S: PermGroup):
    """Non-identity class with least centralizer, ties to least representative."""
    best = None
    for cd in conjugacy_classes(S):
        if cd.representative.is_identity():
            continue
        key = (cd.centralizer_order, cd.representative.images)
        if best is None or key < (best.centralizer_order, best.representative.images):
            best = cd
    return best


def witness_onan_scott(kind: str, S: PermGroup | None = None, base: GroupAction | None = None,
                       t: int = 2) -> WitnessSpec:
    """diagonal: (x, x) on S with |C_S(x)| least, fixing |C_S(x)| points.

    product: (x, ..., x) on Delta^t where x has 1 <= fix(x, Delta) and
    fix^3 < |Delta|; predicted fix(x)^t.
    """
    if kind == "diagonal":
        if S is None:
            raise WitnessError("diagonal case needs S")
        cd = min_centralizer_class(S)
        if cd is None:
            raise WitnessError("S is trivial")
        return WitnessSpec("diagonal", {"order": S.order, "r": 2}, None, None,
                           cd.centralizer_order,
                           {"S": S, "x": cd.representative, "pair": (cd.representative, cd.representative),
                            "cube_below_degree": cd.centralizer_order**3 < S.order})
    if kind == "product":
        if base is None or t < 2:
            raise WitnessError("product case needs a base action and t >= 2")
        m = base.degree
        best = None
        for cd in conjugacy_classes(base.group):
            f = fix_count(cd.representative)
            if cd.representative.is_identity() or f < 1 or f**3 >= m:
                continue
            key = (f, cd.representative.images)
            if best is None or key < best[0]:
                best = (key, cd.representative)
        if best is None:
            raise WitnessError("no base witness: the bound fails on the base action")
        x = best[1]
        g = product_element([x] * t)
        return WitnessSpec("product", {"m": m, "t": t, "n": m**t}, g, None, fix_count(x)**t,
                           {"x": x})
    raise WitnessError(f"unknown O'Nan-Scott kind {kind!r}")


def witness_parabolic(d: int, p: int) -> WitnessSpec:
    """Regular unipotent element on the points of projective space."""
    act = projective_action(d, p)
    return WitnessSpec("parabolic", {"d": d, "p": p, "n": act.degree},
                       act.meta["unipotent"], None, 1)


# -- verification --------------------------------------------------------------


def _formula_fix(G: PermGroup, H: PermGroup, g: Permutation) -> int:
    return fix_by_formula(fusion_scan(G, H, g))


def verify_witness(spec: WitnessSpec, cap: int = DEFAULT_ACTION_CAP) -> tuple[int | None, str]:
    """Measure the witness's fixed points; returns ``(value, path)``.

    ``path`` is "direct" when the action was built, "formula" when the class
    formula was used instead, and "bound" for the product case where only
    |M| |C_G(g)|^3 < |G| is checked (value None).
    """
    c, prm = spec.case, spec.params
    if c == "intransitive":
        n, k = prm["n"], prm["k"]
        if comb(n, k) <= cap:
            act = ksubsets_action(n, k, cap=cap)
            return fix_count(act.image(spec.element)), "direct"
        return fixed_ksubsets(spec.element, k), "direct"
    if c == "imprimitive":
        n, k, t = prm["n"], prm["k"], prm["t"]
        G = alt_group(n)
        M = wreath_action(k, t, "imprimitive").group
        if G.order // M.order <= cap:
            act = coset_action(G, M.generators, cap=cap)
            return fix_count(act.image(spec.element)), "direct"
        return _formula_fix(G, M, spec.element), "formula"
    if c == "affine":
        d, p, n = prm["d"], prm["p"], prm["n"]
        G = alt_group(n)
        M = affine_group(d, p, alternating=True).group
        if G.order // M.order <= cap:
            act = coset_action(G, M.generators, cap=cap)
            return fix_count(act.image(spec.element)), "direct"
        return _formula_fix(G, M, spec.element), "formula"
    if c == "product" and spec.predicted_fix is None:
        return None, "bound"
    if c == "product":
        return fix_count(spec.element), "direct"
    if c == "diagonal":
        act = diagonal_action(spec.extra["S"], cap=cap)
        return fix_count(act.image(spec.extra["pair"])), "direct"
    if c == "parabolic":
        return fix_count(spec.element), "direct"
    raise WitnessError(f"cannot verify case {c!r}")


# -- direct counting oracles ---------------------------------------------------


def fixed_ksubsets(g: Permutation, k: int) -> int:
    """k-subsets mapped to themselves, counted from g's cycles (subset sum)."""
    ways = [1] + [0] * k
    for c in g.cycles(include_fixed=True):
        L = len(c)
        for s in range(k, L - 1, -1):
            ways[s] += ways[s - L]
    return ways[k]


def block_systems(n: int, k: int):
    """All partitions of range(n) into blocks of size k."""
    def rec(remaining):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for others in combinations(rest, k - 1):
            block = (first,) + others
            left = tuple(x for x in rest if x not in others)
            for tail in rec(left):
                yield [block] + tail
    yield from rec(tuple(range(n)))


def fixed_block_systems(g: Permutation, k: int) -> int:
    """Block systems with blocks of size k preserved by g (brute force)."""
    count = 0
    for system in block_systems(g.degree, k):
        blocks = {frozenset(b) for b in system}
        if all(frozenset(g.images[x] for x in b) in blocks for b in blocks):
            count += 1
    return count


# -- orbit counts of prime-order elements on coset spaces ------------------------


def subgroups_by_pairs(S: PermGroup, max_index: int) -> list[frozenset]:
    """Distinct subgroups <a, b> of index 2..max_index, a over class reps.

    Every 2-generated subgroup is conjugate to one with a a class
    representative, so this finds all 2-generated subgroups up to conjugacy.
    """
    reps = [cd.representative for cd in conjugacy_classes(S)]
    elems = list(S.elements())
    seen: set[frozenset] = set()
    out = []
    min_order = -(-S.order // max_index)
    for a in reps:
        for b in elems:
            H = PermGroup([a, b], degree=S.degree)
            if H.order < min_order or H.order == S.order:
                continue
            key = frozenset(e.images for e in H.elements())
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


def prime_orbit_count(S: PermGroup, x: Permutation, sub_elements, x_class: set | None = None
                      ) -> Fraction:
    """Orbits of <x> (x of prime order p) on S/H, from
    fix = |C_S(x)| |x^S & H| / |H| and orbits = (n + (p - 1) fix) / p."""
    p = x.order()
    n = S.order // len(sub_elements)
    if x_class is None:
        x_class = conjugacy_orbit(S.generators, x)
    meet = sum(1 for h in sub_elements if h in x_class)
    fix = Fraction(S.order // len(x_class) * meet, len(sub_elements))
    return (n + (p - 1) * fix) / p


# -- numeric inequalities for the almost simple case -----------------------------


LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def stirling_lower_bound_holds(n: int, slack: float = 1e-9) -> bool:
    """n! >= sqrt(2 pi) n^(n + 1/2) e^-n, compared in logs with relative slack."""
    lhs = math.lgamma(n + 1)
    rhs = LOG_SQRT_2PI + (n + 0.5) * math.log(n) - n
    return lhs >= rhs - slack * max(1.0, abs(rhs))


def large_fix_chain_holds(n: int) -> bool:
    """1.2 n^(n/4) > 1.58^(3n/8) n^(1/2 + log2 n), in logs."""
    ln = math.log(n)
    return math.log(1.2) + n / 4 * ln > 3 * n / 8 * math.log(1.58) + (0.5 + math.log2(n)) * ln


def chain_constants_hold() -> bool:
    return math.sqrt(math.pi / 2) > 1.2 and 7 * math.exp(8 / 3) / 64 < 1.58


def small_fix_dominated(n: int) -> bool:
    """n^(n/7) < n^(n/4) (7/64)^(n/8), in logs."""
    ln = math.log(n)
    return n / 7 * ln < n / 4 * ln + n / 8 * math.log(7 / 64)


def has_prime_factor_at_least(n: int, bound: int) -> bool:
    m, f = n, 2
    largest = 1
    while f * f <= m:
        while m % f == 0:
            largest = max(largest, f)
            m //= f
        f += 1
    if m > 1:
        largest = max(largest, m)
    return largest >= bound
