"""Permutations on {0, ..., n-1}.

Permutations act on the right: ``(p * q)`` applies ``p`` first, then ``q``,
so ``(p * q)(i) == q(p(i))``.  Points are 0-based everywhere inside the
library; the file formats handled in :mod:`minfix.constructions` are 1-based.
"""

from __future__ import annotations

import re
from collections import Counter
from math import gcd
from typing import Iterable, Sequence


class Permutation:
    """An immutable permutation stored as its tuple of images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(map(other.images.__getitem__, self.images), check=False)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def __invert__(self) -> Permutation:
        return self.inverse()

    def conjugate(self, x: Permutation) -> Permutation:
        """Return ``x^-1 * self * x``, which maps ``x(i)`` to ``x(self(i))``."""
        out = [0] * self.degree
        xi = x.images
        for i, j in enumerate(self.images):
            out[xi[i]] = xi[j]
        return Permutation(out, check=False)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, ascending."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def cycle_string(self, one_based: bool = False) -> str:
        off = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(i + off) for i in c) + ")" for c in cyc)

    def order(self) -> int:
        result = 1
        for length in self.cycle_type():
            result = result * length // gcd(result, length)
        return result

    def sign(self) -> int:
        odd = sum(len(c) - 1 for c in self.cycles()) % 2
        return -1 if odd else 1

    def is_even(self) -> bool:
        return self.sign() == 1

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    """Build a permutation from disjoint cycles; unmentioned points are fixed."""
    images = list(range(degree))
    used = set()
    for cyc in cycles:
        for pt in cyc:
            if not 0 <= pt < degree:
                raise ValueError(f"point {pt} out of range for degree {degree}")
            if pt in used:
                raise ValueError(f"point {pt} repeated across cycles")
            used.add(pt)
        for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
            images[a] = b
    return Permutation(images, check=False)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None, one_based: bool = True) -> Permutation:
    """Parse ``"(1,2,3)(4,5)"``.  Cycles need not be disjoint; they are
    multiplied left to right."""
    stripped = text.replace(" ", "")
    if stripped in ("", "()"):
        if degree is None:
            raise ValueError("identity needs an explicit degree")
        return Permutation.identity(degree)
    if _CYCLE_RE.sub("", stripped):
        raise ValueError(f"could not parse cycle string {text!r}")
    off = 1 if one_based else 0
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        if not body:
            continue
        cycles.append([int(tok) - off for tok in body.split(",")])
    top = max((max(c) for c in cycles), default=-1) + 1
    if degree is None:
        degree = top
    elif top > degree:
        raise ValueError(f"point {top - 1 + off} exceeds degree {degree}")
    result = Permutation.identity(degree)
    for cyc in cycles:
        result = result * perm_from_cycles(degree, [cyc])
    return result


def fix_count(p: Permutation) -> int:
    return sum(1 for i, j in enumerate(p.images) if i == j)


def orbit(gens: Sequence[Permutation], point: int, degree: int | None = None):
    """Orbit of ``point`` under ``gens``.

    Returns ``(points, words)`` where ``points`` is the orbit as a set and
    ``words[q]`` is a tuple of generator indices whose product maps ``point``
    to ``q``.
    """
    if gens:
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("degree mismatch among generators")
    if degree is not None and not 0 <= point < degree:
        raise ValueError(f"point {point} out of range")
    words = {point: ()}
    queue = [point]
    for q in queue:
        for idx, g in enumerate(gens):
            r = g.images[q]
            if r not in words:
                words[r] = words[q] + (idx,)
                queue.append(r)
    return set(words), words


def apply_word(gens: Sequence[Permutation], word: Sequence[int], degree: int) -> Permutation:
    result = Permutation.identity(degree)
    for idx in word:
        result = result * gens[idx]
    return result


def cycle_type_counts(p: Permutation) -> Counter:
    return Counter(len(c) for c in p.cycles(include_fixed=True))
