"""Primitivity analysis and the search for an element with 1 <= fix(g) <= n^(1/3).

The threshold is always tested as ``fix**3 <= n`` in integers.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .constructions import GroupAction, kernel_order
from .group import (DEFAULT_SCAN_CAP, DEFAULT_SEED, PermGroup, ProductReplacement,
                    conjugacy_classes)
from .perm import Permutation, fix_count

MODES = ("exhaustive", "classes", "random")


class TheoremViolation(AssertionError):
    """No element with 1 <= fix <= n^(1/3) exists in a primitive non-regular group."""


# -- blocks --------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def minimal_block(gens, degree: int, a: int, b: int) -> list[list[int]]:
    """Finest block system in which a and b share a block (Atkinson)."""
    uf = _UnionFind(degree)
    uf.union(a, b)
    queue = [(a, b)]
    raw = [g.images for g in gens]
    while queue:
        x, y = queue.pop()
        for g in raw:
            gx, gy = uf.find(g[x]), uf.find(g[y])
            if uf.union(gx, gy):
                queue.append((gx, gy))
    # safeguard: the partition must be closed under every generator
    changed = True
    while changed:
        changed = False
        for g in raw:
            for x in range(degree):
                if uf.union(g[uf.find(x)], g[x]):
                    changed = True
    classes: dict[int, list[int]] = {}
    for x in range(degree):
        classes.setdefault(uf.find(x), []).append(x)
    return sorted(classes.values())


def _canonical_system(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


@dataclass(frozen=True)
class PrimitivityReport:
    transitive: bool
    regular: bool
    block_systems: tuple
    primitive: bool
    degree: int
    order: int


def primitivity_report(action: GroupAction | PermGroup) -> PrimitivityReport:
    G = action.group if isinstance(action, GroupAction) else action
    n = G.degree
    transitive = G.is_transitive()
    regular = transitive and G.order == n
    systems: list = []
    if transitive and n > 1:
        seen = set()
        for beta in range(1, n):
            blocks = minimal_block(G.generators, n, 0, beta)
            if len(blocks) > 1:
                key = _canonical_system(blocks)
                if key not in seen:
                    seen.add(key)
                    systems.append(key)
        # keep the minimal systems: block of 0 not strictly containing another's
        block0 = {s: set(next(b for b in s if 0 in b)) for s in systems}
        systems = [s for s in systems
                   if not any(block0[o] < block0[s] for o in systems)]
    primitive = transitive and not systems
    return PrimitivityReport(transitive, regular, tuple(systems), primitive, n, G.order)


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def block_systems_bruteforce(G: PermGroup) -> list[tuple]:
    """Every nontrivial G-invariant partition, by enumerating all partitions."""
    n = G.degree
    out = []
    for part in set_partitions(range(n)):
        if len(part) in (1, n):
            continue
        blocks = {frozenset(b) for b in part}
        if all(frozenset(g.images[x] for x in b) in blocks for g in G.generators for b in blocks):
            out.append(_canonical_system(part))
    return sorted(out)


# -- fix scans -----------------------------------------------------------------


@dataclass
class ScanSummary:
    histogram: dict[int, int]
    best_fix: int | None
    best_element: tuple | None
    total: int

    def merge(self, other: ScanSummary) -> ScanSummary:
        hist = dict(self.histogram)
        for k, v in other.histogram.items():
            hist[k] = hist.get(k, 0) + v
        cands = [(f, e) for f, e in ((self.best_fix, self.best_element),
                                     (other.best_fix, other.best_element)) if f is not None]
        best = min(cands) if cands else (None, None)
        return ScanSummary(hist, best[0], best[1], self.total + other.total)


def _scan_shard(G: PermGroup, cap: int, shard) -> ScanSummary:
    n = G.degree
    cols = np.arange(n)
    hist = np.zeros(n + 1, dtype=np.int64)
    best_fix, best_row = None, None
    total = 0
    for batch in G.element_batches(cap, shard):
        fixes = (batch == cols).sum(axis=1)
        total += batch.shape[0]
        hist += np.bincount(fixes, minlength=n + 1)
        ok = (fixes >= 1) & (fixes < n)
        if not ok.any():
            continue
        m = int(fixes[ok].min())
        if best_fix is not None and m > best_fix:
            continue
        rows = batch[fixes == m]
        least = rows[np.lexsort(rows.T[::-1])[0]]
        cand = tuple(int(x) for x in least)
        if best_fix is None or m < best_fix or cand < best_row:
            best_fix, best_row = m, cand
    histogram = {i: int(c) for i, c in enumerate(hist) if c}
    return ScanSummary(histogram, best_fix, best_row, total)


def _scan_worker(args):
    G, cap, shard = args
    return _scan_shard(G, cap, shard)


def scan_fixes(G: PermGroup, cap: int = DEFAULT_SCAN_CAP, jobs: int = 1) -> ScanSummary:
    """Histogram of fix over all elements plus the least element (by image
    tuple) among non-identity elements with the least positive fix."""
    if jobs <= 1:
        return _scan_shard(G, cap, None)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_scan_worker, [(G, cap, (i, jobs)) for i in range(jobs)]))
    out = parts[0]
    for p in parts[1:]:
        out = out.merge(p)
    return out


@dataclass(frozen=True)
class FixProfile:
    histogram: dict[int, int]
    min_positive_fix: int | None
    nonidentity: int


def min_fix_profile(action: GroupAction | PermGroup, cap: int = DEFAULT_SCAN_CAP,
                    jobs: int = 1) -> FixProfile:
    """Distribution of fix over the non-identity elements."""
    G = action.group if isinstance(action, GroupAction) else action
    summary = scan_fixes(G, cap, jobs)
    hist = dict(summary.histogram)
    n = G.degree
    hist[n] -= 1
    if not hist[n]:
        del hist[n]
    return FixProfile(hist, summary.best_fix, summary.total - 1)


def burnside_sum(G: PermGroup, cap: int = DEFAULT_SCAN_CAP) -> int:
    """Sum of fix(g) over all g in G (equals |G| times the number of orbits)."""
    summary = scan_fixes(G, cap)
    return sum(k * v for k, v in summary.histogram.items())


# -- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class WitnessCertificate:
    element: Permutation
    fix: int
    degree: int
    search_mode: str
    group_id: str
    seed: int | None = None
    group_order: int = 0
    quotient_of_kernel: int = 1
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.element.is_identity():
            raise ValueError("the identity is never a witness")
        if self.element.degree != self.degree:
            raise ValueError("element degree differs from the action degree")
        if fix_count(self.element) != self.fix:
            raise ValueError("recorded fix does not match the element")

    @property
    def weak(self) -> bool:
        return self.fix >= 1 and self.fix**3 <= self.degree

    @property
    def strict(self) -> bool:
        return self.fix >= 1 and self.fix**3 < self.degree

    def to_dict(self) -> dict[str, Any]:
        return {
            "element": [i + 1 for i in self.element.images],
            "cycle_type": list(self.element.cycle_type()),
            "fix": self.fix,
            "fix_cubed": self.fix**3,
            "degree": self.degree,
            "weak": self.weak,
            "strict": self.strict,
            "search_mode": self.search_mode,
            "group_id": self.group_id,
            "group_order": self.group_order,
            "seed": self.seed,
            "kernel_order": self.quotient_of_kernel,
            "notes": list(self.notes),
        }


def group_hash(G: PermGroup) -> str:
    payload = json.dumps([G.degree, [list(g.images) for g in G.generators]])
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _dump(G: PermGroup) -> str:
    return json.dumps({"degree": G.degree,
                       "generators": [[i + 1 for i in g.images] for g in G.generators]})


def _best_over_classes(G: PermGroup, cap: int) -> tuple[int, Permutation] | None:
    best = None
    for cd in conjugacy_classes(G, cap):
        rep = cd.representative
        f = fix_count(rep)
        if rep.is_identity() or f < 1:
            continue
        key = (f, rep.images)
        if best is None or key < (best[0], best[1].images):
            best = (f, rep)
    return best


def neumann_witness(action: GroupAction | PermGroup, mode: str = "exhaustive",
                    cap: int = DEFAULT_SCAN_CAP, seed: int = DEFAULT_SEED, samples: int = 2000,
                    jobs: int = 1, group_id: str | None = None,
                    report: PrimitivityReport | None = None) -> WitnessCertificate:
    """Certificate for a non-identity g with the least positive fix found.

    Raises :class:`TheoremViolation` when a complete search (exhaustive or
    over class representatives) finds nothing with fix^3 <= n.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    G = action.group if isinstance(action, GroupAction) else action
    kern = kernel_order(action) if isinstance(action, GroupAction) else 1
    report = report or primitivity_report(G)
    if not report.primitive or report.regular:
        raise ValueError("witness search needs a primitive non-regular action")
    gid = group_id or (action.name if isinstance(action, GroupAction) and action.name
                       else group_hash(G))
    n = G.degree
    notes = []
    if kern > 1:
        notes.append(f"acting through the faithful quotient (kernel order {kern})")

    found: tuple[int, Permutation] | None = None
    used_mode, used_seed = mode, None
    if mode == "random":
        pr = ProductReplacement(G, seed)
        used_seed = seed
        for _ in range(samples):
            g = pr.next()
            f = fix_count(g)
            if g.is_identity() or f < 1:
                continue
            if found is None or (f, g.images) < (found[0], found[1].images):
                found = (f, g)
        if found is None or found[0]**3 > n:
            notes.append("random search failed the bound; fell back to class representatives")
            mode = "classes"
            used_mode = "classes"
            found = None
    if mode == "exhaustive":
        summary = scan_fixes(G, cap, jobs)
        if summary.best_fix is not None:
            found = (summary.best_fix, Permutation(summary.best_element, check=False))
    elif mode == "classes":
        found = _best_over_classes(G, cap)
    if found is None or found[0]**3 > n:
        raise TheoremViolation(
            f"THEOREM VIOLATION: no element with 1 <= fix and fix^3 <= {n} in {gid}; "
            f"least positive fix {found[0] if found else None}; group {_dump(G)}")
    return WitnessCertificate(found[1], found[0], n, used_mode, gid, used_seed, G.order, kern,
                              tuple(notes))


def transitive_half_bound(profile: FixProfile, degree: int) -> bool:
    """Some non-identity element has 1 <= fix <= n/2."""
    return any(1 <= f and 2 * f <= degree for f in profile.histogram)
