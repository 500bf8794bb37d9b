"""Permutation groups backed by a deterministic stabilizer chain.

The chain is built with Knuth's incremental variant of Schreier-Sims: every
new generator is pushed into the deepest level that does not yet contain it,
and Schreier generators are sifted as orbits grow.  Base points are chosen
greedily as the smallest point moved by the element that forces a new level,
so for a fixed generator order the chain (and everything derived from it:
element order, certificates) is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterator, Sequence

import numpy as np

from .perm import Permutation

DEFAULT_SCAN_CAP = 10**7
DEFAULT_CLASS_CAP = 10**7
DEFAULT_SEED = 20240917

# Inner levels of an exhaustive scan are expanded into numpy arrays of at
# most this many rows before falling back to a Python loop over outer levels.
_BATCH_ROWS = 1 << 17


class ScanCapExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the configured cap."""


class NotAMember(ValueError):
    pass


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


class _Level:
    __slots__ = ("base", "gens", "trans", "trans_inv")

    def __init__(self, base: int, identity: tuple):
        self.base = base
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {base: identity}
        self.trans_inv: dict[int, tuple] = {base: identity}


class _ChainBuilder:
    def __init__(self, degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels: list[_Level] = []

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        levels = self.levels
        for j in range(start, len(levels)):
            lv = levels[j]
            t = lv.trans_inv.get(g[lv.base])
            if t is None:
                return g, j
            g = _mul(g, t)
        return g, len(levels)

    def contains_from(self, g: tuple, start: int) -> bool:
        residue, _ = self.sift(g, start)
        return residue == self.identity

    def insert(self, j: int, g: tuple) -> None:
        if j == len(self.levels):
            moved = next(i for i, x in enumerate(g) if i != x)
            self.levels.append(_Level(moved, self.identity))
        lv = self.levels[j]
        lv.gens.append(g)
        queue = [_mul(t, g) for t in list(lv.trans.values())]
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            beta = x[lv.base]
            known = lv.trans_inv.get(beta)
            if known is None:
                lv.trans[beta] = x
                lv.trans_inv[beta] = _inv(x)
                queue.extend(_mul(x, s) for s in lv.gens)
            else:
                h = _mul(x, known)
                if h != self.identity and not self.contains_from(h, j + 1):
                    self.insert(j + 1, h)


@dataclass(frozen=True)
class ClassData:
    representative: Permutation
    class_size: int
    centralizer_order: int


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is computed on first use and the object is treated
    as immutable afterwards.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = gens[0].degree
        if degree < 1:
            raise ValueError("degree must be positive")
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.degree = degree
        self.generators = tuple(gens)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- chain ---------------------------------------------------------------

    @cached_property
    def _chain(self) -> _ChainBuilder:
        builder = _ChainBuilder(self.degree)
        for g in self.generators:
            raw = g.images
            if raw != builder.identity and not builder.contains_from(raw, 0):
                builder.insert(0, raw)
        return builder

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self._chain.levels]

    @property
    def transversal_lengths(self) -> list[int]:
        return [len(lv.trans) for lv in self._chain.levels]

    def transversal(self, level: int) -> dict[int, Permutation]:
        lv = self._chain.levels[level]
        return {b: Permutation(t, check=False) for b, t in sorted(lv.trans.items())}

    @property
    def strong_generators(self) -> list[Permutation]:
        seen, out = set(), []
        for lv in self._chain.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(Permutation(g, check=False))
        return out

    @cached_property
    def order(self) -> int:
        result = 1
        for n in self.transversal_lengths:
            result *= n
        return result

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return self._chain.contains_from(g.images, 0)

    def contains(self, g: Permutation) -> bool:
        return g in self

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_transitive(self) -> bool:
        return self.orbit_of(0) == set(range(self.degree))

    def orbit_of(self, point: int) -> set[int]:
        seen = {point}
        queue = [point]
        for q in queue:
            for g in self.generators:
                r = g.images[q]
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def normalizes(self, sub: PermGroup) -> bool:
        """True iff every generator of ``self`` conjugates ``sub`` into itself."""
        return all(h.conjugate(g) in sub for g in self.generators for h in sub.generators)

    # -- enumeration ---------------------------------------------------------

    def _level_arrays(self) -> list[np.ndarray]:
        dtype = np.int16 if self.degree < 2**15 else np.int32
        return [
            np.array([t for _, t in sorted(lv.trans.items())], dtype=dtype)
            for lv in self._chain.levels
        ]

    def element_batches(self, cap: int = DEFAULT_SCAN_CAP, shard: tuple[int, int] | None = None
                        ) -> Iterator[np.ndarray]:
        """Yield all elements as rows of 2-d integer arrays.

        Rows come in the same deterministic order as :meth:`elements`.
        ``shard=(i, k)`` keeps only outer blocks with index congruent to i mod k.
        """
        if self.order > cap:
            raise ScanCapExceeded(
                f"group order {self.order} exceeds scan cap {cap}; use class representatives")
        arrays = self._level_arrays()
        dtype = np.int16 if self.degree < 2**15 else np.int32
        ident = np.arange(self.degree, dtype=dtype)
        if not arrays:
            if shard is None or shard[0] == 0:
                yield ident[None, :]
            return
        # expand from the deepest level while the block stays small
        inner = ident[None, :]
        split = len(arrays)
        while split > 0 and inner.shape[0] * arrays[split - 1].shape[0] <= _BATCH_ROWS:
            split -= 1
            trans = arrays[split]
            inner = np.concatenate([u[inner] for u in trans])
        outer = arrays[:split]
        for idx, choice in enumerate(product(*(range(a.shape[0]) for a in outer))):
            if shard is not None and idx % shard[1] != shard[0]:
                continue
            suffix = ident
            for level in range(split - 1, -1, -1):
                suffix = outer[level][choice[level]][suffix]
            # element = inner * u_{split-1} * ... * u_0
            yield suffix[inner]

    def elements(self, cap: int = DEFAULT_SCAN_CAP) -> Iterator[Permutation]:
        for batch in self.element_batches(cap):
            for row in batch.tolist():
                yield Permutation(row, check=False)

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniform random element via the chain (one transversal pick per level)."""
        g = self.identity()
        for lv in reversed(self._chain.levels):
            pts = sorted(lv.trans)
            g = g * Permutation(lv.trans[rng.choice(pts)], check=False)
        return g


def stabilizer_chain(gens: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    """Build a group and force its stabilizer chain."""
    G = PermGroup(gens, degree)
    _ = G.order
    return G


def element_scan(G: PermGroup, visitor: Callable[[Permutation], object] | None = None,
                 cap: int = DEFAULT_SCAN_CAP) -> Iterator[Permutation]:
    """Yield every element of ``G`` exactly once, in chain order.

    Raises :class:`ScanCapExceeded` when ``|G| > cap``.
    """
    for g in G.elements(cap):
        if visitor is not None:
            visitor(g)
        yield g


class ProductReplacement:
    """Product-replacement random elements with a fixed seed."""

    def __init__(self, G: PermGroup, seed: int = DEFAULT_SEED, slots: int = 10, warmup: int = 60):
        self.rng = random.Random(seed)
        gens = list(G.generators) or [G.identity()]
        state = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.state = state
        self.acc = G.identity()
        for _ in range(warmup):
            self.next()

    def next(self) -> Permutation:
        n = len(self.state)
        i, j = self.rng.sample(range(n), 2)
        if self.rng.random() < 0.5:
            self.state[i] = self.state[i] * self.state[j]
        else:
            self.state[i] = self.state[j] * self.state[i]
        self.acc = self.acc * self.state[i]
        return self.acc


def conjugacy_orbit(gens: Sequence[Permutation], g: Permutation, cap: int = DEFAULT_CLASS_CAP
                    ) -> set[tuple]:
    """Class of ``g`` under conjugation by ``gens``, as a set of image tuples."""
    start = g.images
    seen = {start}
    queue = [start]
    raw_gens = [x.images for x in gens]
    n = len(start)
    for cur in queue:
        for x in raw_gens:
            out = [0] * n
            for i in range(n):
                out[x[i]] = x[cur[i]]
            t = tuple(out)
            if t not in seen:
                seen.add(t)
                if len(seen) > cap:
                    raise ScanCapExceeded(f"conjugacy class larger than cap {cap}")
                queue.append(t)
    return seen


def class_and_centralizer(G: PermGroup, g: Permutation) -> ClassData:
    if g not in G:
        raise NotAMember(f"{g!r} is not in the group")
    size = len(conjugacy_orbit(G.generators, g))
    order = G.order
    if order % size:
        raise ArithmeticError("class size does not divide group order")
    return ClassData(g, size, order // size)


def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_CLASS_CAP) -> list[ClassData]:
    """All conjugacy classes by exhaustive conjugation orbits.

    Representatives are the lexicographically least element of each class;
    the list is sorted by representative.
    """
    if G.order > cap:
        raise ScanCapExceeded(f"group order {G.order} exceeds class cap {cap}")
    assigned: set[tuple] = set()
    out = []
    for batch in G.element_batches(cap):
        for row in batch.tolist():
            t = tuple(row)
            if t in assigned:
                continue
            cls = conjugacy_orbit(G.generators, Permutation(t, check=False))
            assigned |= cls
            rep = Permutation(min(cls), check=False)
            out.append(ClassData(rep, len(cls), G.order // len(cls)))
    out.sort(key=lambda c: c.representative.images)
    return out


def closure(gens: Sequence[Permutation], degree: int | None = None) -> set[tuple]:
    """All elements of the group generated by ``gens`` by breadth-first closure."""
    if degree is None:
        degree = gens[0].degree
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    raw = [g.images for g in gens]
    for cur in queue:
        for g in raw:
            t = _mul(cur, g)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen
