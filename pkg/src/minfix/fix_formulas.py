"""Fixed-point counts on G/H from class data, without building the action.

For g in H <= G:

    fix(g, G/H) = |C_G(g)| * |g^G & H| / |H| = sum_i |C_G(g)| / |C_H(g_i)|

where the g_i represent the H-classes inside g^G & H.  With H0 normal in H
and the g_i representing H0-classes instead, the sum is divided by |H:H0|.
Everything is exact; a non-integral result raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator, Sequence

import numpy as np

from .constructions import CosetSpace
from .group import (DEFAULT_CLASS_CAP, DEFAULT_SCAN_CAP, NotAMember, PermGroup,
                    ScanCapExceeded, conjugacy_orbit)
from .perm import Permutation

DEFAULT_CONJUGATOR_BUDGET = 10**5

UNDECIDED = "undecided"


class FormulaError(ArithmeticError):
    """A class formula produced a value that cannot be a fixed-point count."""


# -- conjugacy in G ------------------------------------------------------------


def _cycles_by_length(g: Permutation) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list[tuple[int, ...]]] = {}
    for c in g.cycles(include_fixed=True):
        out.setdefault(len(c), []).append(c)
    return out


def sym_centralizer_order(g: Permutation) -> int:
    return prod(length**len(cs) * factorial(len(cs)) for length, cs in _cycles_by_length(g).items())


def sym_centralizer(g: Permutation) -> Iterator[Permutation]:
    """Every element of the symmetric-group centralizer of g.

    Each one permutes the cycles of a given length among themselves and
    rotates them.
    """
    groups = sorted(_cycles_by_length(g).items())
    n = g.degree
    per_length = []
    for length, cs in groups:
        m = len(cs)
        per_length.append([(perm, rots) for perm in permutations(range(m))
                           for rots in product(range(length), repeat=m)])
    for choice in product(*per_length):
        images = [0] * n
        for (length, cs), (perm, rots) in zip(groups, choice):
            for i, c in enumerate(cs):
                target = cs[perm[i]]
                r = rots[i]
                for j, pt in enumerate(c):
                    images[pt] = target[(j + r) % length]
        yield Permutation(images, check=False)


def sym_conjugator(a: Permutation, b: Permutation) -> Permutation | None:
    """Some x in Sym(n) with a^x = b, or None if the cycle types differ."""
    if a.cycle_type() != b.cycle_type():
        return None
    ca, cb = _cycles_by_length(a), _cycles_by_length(b)
    images = [0] * a.degree
    for length in ca:
        for c1, c2 in zip(ca[length], cb[length]):
            for x, y in zip(c1, c2):
                images[x] = y
    return Permutation(images, check=False)


class ConjugacyTester:
    """Decides G-conjugacy of elements, caching class orbits.

    Elements of the same cycle type are compared by running through all
    Sym(n)-conjugators C_Sym(a)*x0 when there are at most ``budget`` of them.
    Otherwise the G-class of ``a`` is enumerated if |G| <= ``class_cap``.
    If neither applies the answer is :data:`UNDECIDED`.
    """

    def __init__(self, G: PermGroup, budget: int = DEFAULT_CONJUGATOR_BUDGET,
                 class_cap: int = DEFAULT_CLASS_CAP):
        self.G = G
        self.budget = budget
        self.class_cap = class_cap
        self._orbits: dict[tuple, set] = {}

    def _orbit(self, a: Permutation) -> set | None:
        for key, orb in self._orbits.items():
            if a.images in orb:
                return orb
        if self.G.order > self.class_cap:
            return None
        orb = conjugacy_orbit(self.G.generators, a, self.class_cap)
        self._orbits[a.images] = orb
        return orb

    def __call__(self, a: Permutation, b: Permutation):
        x0 = sym_conjugator(a, b)
        if x0 is None:
            return False
        for orb in self._orbits.values():
            if a.images in orb:
                return b.images in orb
        if sym_centralizer_order(a) <= self.budget:
            return any(c * x0 in self.G for c in sym_centralizer(a))
        orb = self._orbit(a)
        if orb is None:
            return UNDECIDED
        return b.images in orb


def is_conjugate(G: PermGroup, a: Permutation, b: Permutation,
                 budget: int = DEFAULT_CONJUGATOR_BUDGET):
    """True/False, or :data:`UNDECIDED` when the search would exceed its budget."""
    for x in (a, b):
        if x not in G:
            raise NotAMember(f"{x!r} is not in the group")
    return ConjugacyTester(G, budget)(a, b)


def centralizer_order(G: PermGroup, g: Permutation, budget: int = DEFAULT_CONJUGATOR_BUDGET,
                      class_cap: int = DEFAULT_CLASS_CAP) -> int:
    """|C_G(g)|, by counting C_Sym(g) & G or from the class size."""
    if g not in G:
        raise NotAMember(f"{g!r} is not in the group")
    if sym_centralizer_order(g) <= budget:
        return sum(1 for c in sym_centralizer(g) if c in G)
    if G.order > class_cap:
        raise ScanCapExceeded("centralizer too large for both methods")
    return G.order // len(conjugacy_orbit(G.generators, g, class_cap))


# -- scanning H for g^G & H ----------------------------------------------------


def _fix_power_profile(g: Permutation) -> tuple[int, list[int], list[int]]:
    order = g.order()
    divisors = [k for k in range(1, order + 1) if order % k == 0]
    fixes = [sum(1 for i, j in enumerate((g**k).images) if i == j) for k in divisors]
    return order, divisors, fixes


def same_cycle_type_rows(batch: np.ndarray, g: Permutation) -> np.ndarray:
    """Boolean mask of rows with the same cycle type as g.

    h has g's cycle type iff fix(h^k) = fix(g^k) for every divisor k of
    |g|, the last of which forces h^|g| = 1.
    """
    order, divisors, fixes = _fix_power_profile(g)
    cols = np.arange(batch.shape[1])
    mask = np.ones(batch.shape[0], dtype=bool)
    power = batch
    k = 1
    targets = dict(zip(divisors, fixes))
    while k <= order:
        if k in targets:
            mask &= (power == cols).sum(axis=1) == targets[k]
        if k == order:
            break
        power = np.take_along_axis(batch, power, axis=1)
        k += 1
    return mask


@dataclass(frozen=True)
class FusionData:
    """The classes of K (H or a normal subgroup of it) inside g^G & H."""

    ambient: PermGroup
    sub: PermGroup
    element: Permutation
    h_class_reps: tuple[Permutation, ...]
    class_sizes: tuple[int, ...]
    ambient_centralizer: int
    classes_under: PermGroup | None = None

    @property
    def t(self) -> int:
        return len(self.h_class_reps)

    @property
    def acting(self) -> PermGroup:
        return self.classes_under or self.sub

    @property
    def centralizer_orders(self) -> tuple[int, ...]:
        k = self.acting.order
        return tuple(k // s for s in self.class_sizes)

    @property
    def fused_count(self) -> int:
        """|g^G & H|."""
        return sum(self.class_sizes)


def _scan_classes(G: PermGroup, H: PermGroup, K: PermGroup, g: Permutation, cap: int,
                  budget: int) -> tuple[list[Permutation], list[int]]:
    test = ConjugacyTester(G, budget)
    assigned: set[tuple] = set()
    reps, sizes = [], []
    for batch in H.element_batches(cap):
        for row in batch[same_cycle_type_rows(batch, g)].tolist():
            t = tuple(row)
            if t in assigned:
                continue
            h = Permutation(t, check=False)
            cls = conjugacy_orbit(K.generators, h)
            assigned |= cls
            verdict = test(g, h)
            if verdict == UNDECIDED:
                raise ScanCapExceeded(f"could not decide G-conjugacy of {h!r} within budget")
            if verdict:
                reps.append(Permutation(min(cls), check=False))
                sizes.append(len(cls))
    order = sorted(range(len(reps)), key=lambda i: reps[i].images)
    return [reps[i] for i in order], [sizes[i] for i in order]


def fusion_scan(G: PermGroup, H: PermGroup, g: Permutation, cap: int = DEFAULT_SCAN_CAP,
                candidates: Sequence[Permutation] | None = None,
                budget: int = DEFAULT_CONJUGATOR_BUDGET) -> FusionData:
    """Representatives of the H-classes in g^G & H.

    With ``candidates`` the scan of H is skipped; the supplied elements are
    checked to lie in H and g^G and to be pairwise non-conjugate in H, but
    completeness is the caller's responsibility.
    """
    if g not in H:
        raise NotAMember("g must lie in H")
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    cG = centralizer_order(G, g, budget)
    if candidates is None:
        reps, sizes = _scan_classes(G, H, H, g, cap, budget)
    else:
        test = ConjugacyTester(G, budget)
        reps, sizes, seen = [], [], set()
        for c in candidates:
            if c not in H:
                raise NotAMember(f"candidate {c!r} not in H")
            if test(g, c) is not True:
                raise ValueError(f"candidate {c!r} not shown to be G-conjugate to g")
            cls = conjugacy_orbit(H.generators, c)
            if cls & seen:
                raise ValueError("candidates are not pairwise H-nonconjugate")
            seen |= cls
            reps.append(c)
            sizes.append(len(cls))
    return FusionData(G, H, g, tuple(reps), tuple(sizes), cG)


def formula_forms(fd: FusionData) -> tuple[Fraction, Fraction]:
    """(class-sum form, |C_G(g)|*|g^G & H|/|H| form), both exact."""
    K = fd.acting
    index = Fraction(fd.sub.order, K.order)
    total = sum((Fraction(fd.ambient_centralizer, c) for c in fd.centralizer_orders), Fraction(0))
    class_sum = total / index
    counting = Fraction(fd.ambient_centralizer * fd.fused_count, fd.sub.order)
    return class_sum, counting


def fix_by_formula(fd: FusionData) -> int:
    a, b = formula_forms(fd)
    if a != b:
        raise FormulaError(f"class-sum form {a} differs from counting form {b}")
    if a.denominator != 1 or a < 0:
        raise FormulaError(f"non-integral fixed-point count {a}")
    value = int(a)
    if value > fd.ambient_centralizer:
        raise FormulaError("fixed-point count exceeds |C_G(g)|")
    return value


@dataclass(frozen=True)
class NormalFormResult:
    value: int
    fusion: FusionData
    coset_hypothesis: bool
    bound: Fraction | None


def fix_by_normal_form(G: PermGroup, H: PermGroup, H0: PermGroup, g: Permutation,
                       cap: int = DEFAULT_SCAN_CAP, budget: int = DEFAULT_CONJUGATOR_BUDGET
                       ) -> NormalFormResult:
    """fix(g, G/H) from the H0-classes in g^G & H, for H0 normal in H.

    When every H0-coset meets g^G in at most one H0-class, also checks
    fix <= |C_G(g)| / min |C_H0(g_i)|.
    """
    if g not in H:
        raise NotAMember("g must lie in H")
    if not H0.is_subgroup_of(H) or not H.normalizes(H0):
        raise ValueError("H0 is not a normal subgroup of H")
    cG = centralizer_order(G, g, budget)
    reps, sizes = _scan_classes(G, H, H0, g, cap, budget)
    fd = FusionData(G, H, g, tuple(reps), tuple(sizes), cG, classes_under=H0)
    value = fix_by_formula(fd)
    space = CosetSpace(H0)
    cosets = [space.canonical(r.images) for r in reps]
    hypothesis = len(set(cosets)) == len(cosets)
    bound = None
    if hypothesis and reps:
        bound = Fraction(cG, min(fd.centralizer_orders))
        if value > bound:
            raise FormulaError(f"fix {value} exceeds the normal-subgroup bound {bound}")
    return NormalFormResult(value, fd, hypothesis, bound)


def fix_direct(action, g: Permutation) -> int:
    """fix of g's image in an explicit action (for cross-checking)."""
    img = action.image(g)
    return sum(1 for i, j in enumerate(img.images) if i == j)
