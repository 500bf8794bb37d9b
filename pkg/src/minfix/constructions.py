"""Builders for the permutation actions used throughout the package.

Point labelings are canonical so that certificates are stable:

* k-subsets: ``itertools.combinations`` order;
* affine: vectors of F_p^d in lexicographic order, index = base-p digits;
* product action: tuples in lexicographic order;
* diagonal: group elements sorted by image tuple;
* projective: normalized 1-spaces (first nonzero coordinate 1), lexicographic;
* coset: breadth-first order from the trivial coset, generators in order.

Matrices act on column vectors, so ``perm(A) * perm(B) == perm(B @ A)``; the
generated permutation group is the same either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import Any, Callable, Sequence

from .group import PermGroup, ScanCapExceeded, _mul
from .linalg_fp import (MatrixFp, _prime_factors, companion_matrix, is_prime, primitive_poly,
                        projective_points)
from .perm import Permutation, parse_cycles, perm_from_cycles

DEFAULT_ACTION_CAP = 10**5

KINDS = ("natural", "ksubsets", "imprimitive-wreath", "product-wreath", "affine",
         "diagonal", "projective", "coset")


@dataclass
class GroupAction:
    group: PermGroup
    labels: list
    kind: str
    name: str = ""
    meta: dict[str, Any] = field(default_factory=dict)
    image_fn: Callable[[Any], Permutation] | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.labels) != self.group.degree:
            raise ValueError("label count differs from action degree")

    @property
    def degree(self) -> int:
        return self.group.degree

    def image(self, g) -> Permutation:
        """Permutation induced on the points by an element of the source group."""
        if self.image_fn is None:
            return g
        return self.image_fn(g)


# -- alternating and symmetric groups ------------------------------------------


def alt_generators(n: int) -> list[Permutation]:
    if n < 3:
        return []
    if n == 3:
        return [perm_from_cycles(3, [(0, 1, 2)])]
    long = tuple(range(n)) if n % 2 else tuple(range(1, n))
    return [perm_from_cycles(n, [(0, 1, 2)]), perm_from_cycles(n, [long])]


def sym_generators(n: int) -> list[Permutation]:
    if n < 2:
        return []
    if n == 2:
        return [perm_from_cycles(2, [(0, 1)])]
    return [perm_from_cycles(n, [tuple(range(n))]), perm_from_cycles(n, [(0, 1)])]


def alt_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    return PermGroup(alt_generators(n), degree=n)


def sym_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    return PermGroup(sym_generators(n), degree=n)


def natural_action(G: PermGroup, name: str = "") -> GroupAction:
    return GroupAction(G, list(range(G.degree)), "natural", name)


def even_part(gens: Sequence[Permutation]) -> list[Permutation]:
    """Generators of <gens> intersected with the alternating group.

    Schreier generators for the transversal {1, o}, where o is the first odd
    generator: an even s gives s and o*s*o^-1, an odd s gives s*o^-1 and o*s.
    """
    odd = [g for g in gens if not g.is_even()]
    if not odd:
        return list(gens)
    o = odd[0]
    oi = o.inverse()
    out: list[Permutation] = []
    for s in gens:
        cands = [s, o * s * oi] if s.is_even() else [s * oi, o * s]
        for c in cands:
            if not c.is_identity() and c not in out:
                out.append(c)
    return out


def alternating_intersection(G: PermGroup) -> PermGroup:
    """G intersected with A_n; checks the index is 1 or 2 via the chain."""
    H = PermGroup(even_part(G.generators), degree=G.degree)
    odd = any(not g.is_even() for g in G.generators)
    if G.order != H.order * (2 if odd else 1):
        raise AssertionError("parity intersection did not halve the order")
    return H


# -- induced actions -----------------------------------------------------------


def _induced(gens: Sequence[Permutation], labels: list, act: Callable[[Any, Permutation], Any]
             ) -> list[Permutation]:
    index = {lab: i for i, lab in enumerate(labels)}
    return [Permutation([index[act(lab, g)] for lab in labels], check=False) for g in gens]


def ksubsets_action(n: int, k: int, cap: int = DEFAULT_ACTION_CAP, full: bool = False) -> GroupAction:
    """A_n (or S_n with ``full``) on the k-subsets of {0..n-1}."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if comb(n, k) > cap:
        raise ScanCapExceeded(f"C({n},{k}) exceeds cap {cap}")
    labels = list(combinations(range(n), k))
    src = sym_generators(n) if full else alt_generators(n)

    def act(s, g):
        return tuple(sorted(g.images[i] for i in s))

    index = {lab: i for i, lab in enumerate(labels)}
    G = PermGroup(_induced(src, labels, act), degree=len(labels))
    name = f"{'S' if full else 'A'}{n} on {k}-subsets"
    return GroupAction(G, labels, "natural" if k == 1 else "ksubsets", name,
                       {"n": n, "k": k, "source": PermGroup(src, degree=n)},
                       lambda g: Permutation([index[act(s, g)] for s in labels], check=False))


def _wreath_imprimitive_gens(k: int, t: int) -> list[Permutation]:
    n = k * t
    gens = []
    if k >= 2:
        gens.append(perm_from_cycles(n, [tuple(range(k))]))
        if k > 2:
            gens.append(perm_from_cycles(n, [(0, 1)]))
    blocks_cycle = [tuple(b * k + i for b in range(t)) for i in range(k)]
    gens.append(perm_from_cycles(n, blocks_cycle))
    if t > 2:
        gens.append(perm_from_cycles(n, [(i, k + i) for i in range(k)]))
    return gens


def _tuple_index(x: Sequence[int], k: int) -> int:
    idx = 0
    for c in x:
        idx = idx * k + c
    return idx


def _wreath_product_gens(k: int, t: int) -> tuple[list[tuple], list[Permutation]]:
    labels = list(product(range(k), repeat=t))
    base = [perm_from_cycles(k, [tuple(range(k))]), perm_from_cycles(k, [(0, 1)])]
    gens = []
    for b in base:
        gens.append(Permutation([_tuple_index((b.images[x[0]],) + x[1:], k) for x in labels]))
    shift = [_tuple_index(x[1:] + x[:1], k) for x in labels]
    gens.append(Permutation(shift))
    if t > 2:
        gens.append(Permutation([_tuple_index((x[1], x[0]) + x[2:], k) for x in labels]))
    return labels, gens


def wreath_action(k: int, t: int, mode: str = "imprimitive", cap: int = DEFAULT_ACTION_CAP,
                  alternating: bool = True) -> GroupAction:
    """(S_k wr S_t) intersected with A_n, in imprimitive (n = kt, blocks of
    consecutive points) or product (n = k^t, lexicographic tuples) action."""
    if mode == "imprimitive":
        if k < 2 or t < 2:
            raise ValueError("imprimitive wreath needs k, t >= 2")
        if k * t > cap:
            raise ScanCapExceeded("degree exceeds cap")
        gens = _wreath_imprimitive_gens(k, t)
        n = k * t
        labels = list(range(n))
        kind = "imprimitive-wreath"
        meta = {"k": k, "t": t, "blocks": [tuple(range(b * k, b * k + k)) for b in range(t)]}
    elif mode == "product":
        if k < 5 or t < 2:
            raise ValueError("product action needs k >= 5, t >= 2")
        if k**t > cap:
            raise ScanCapExceeded("degree exceeds cap")
        labels, gens = _wreath_product_gens(k, t)
        n = k**t
        kind = "product-wreath"
        meta = {"k": k, "t": t}
    else:
        raise ValueError(f"unknown wreath mode {mode!r}")
    G = PermGroup(gens, degree=n)
    if alternating:
        G = alternating_intersection(G)
    name = f"(S{k} wr S{t}){' & Alt' if alternating else ''} {mode} deg {n}"
    return GroupAction(G, labels, kind, name, meta)


def product_element(xs: Sequence[Permutation]) -> Permutation:
    """(x_1, ..., x_t) acting coordinatewise on lexicographic tuples."""
    k = xs[0].degree
    t = len(xs)
    labels = product(range(k), repeat=t)
    return Permutation([_tuple_index(tuple(x.images[c] for x, c in zip(xs, lab)), k)
                        for lab in labels])


# -- affine groups -------------------------------------------------------------


def vectors(d: int, p: int) -> list[tuple[int, ...]]:
    return list(product(range(p), repeat=d))


def affine_perm(A: MatrixFp | None, b: Sequence[int] | None, d: int, p: int) -> Permutation:
    """Permutation of F_p^d given by v -> A v + b."""
    vs = vectors(d, p)
    out = []
    for v in vs:
        w = A.apply(v) if A is not None else v
        if b is not None:
            w = tuple((x + y) % p for x, y in zip(w, b))
        out.append(_tuple_index(w, p))
    return Permutation(out, check=False)


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = _prime_factors(p - 1)
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in fs))


def gl_generators(d: int, p: int) -> list[MatrixFp]:
    """All elementary transvections plus one diagonal generator."""
    mats = [MatrixFp.elementary(d, p, i, j) for i in range(d) for j in range(d) if i != j]
    if p > 2:
        mats.append(MatrixFp.elementary(d, p, 0, 0, primitive_root(p)))
    return mats


def affine_group(d: int, p: int, cap: int = DEFAULT_ACTION_CAP, alternating: bool = False
                 ) -> GroupAction:
    """AGL_d(p) on the p^d vectors of F_p^d; ``alternating`` intersects with A_{p^d}.

    ``meta["singer"]`` is the companion matrix of ``primitive_poly(d, p)`` as
    a permutation and ``meta["singer_square"]`` its square.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p**d > cap:
        raise ScanCapExceeded("p^d exceeds cap")
    basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    gens = [affine_perm(None, e, d, p) for e in basis]
    gens += [affine_perm(A, None, d, p) for A in gl_generators(d, p)]
    gens = [g for g in gens if not g.is_identity()]
    G = PermGroup(gens, degree=p**d)
    if alternating:
        G = alternating_intersection(G)
    C = companion_matrix(primitive_poly(d, p))
    singer = affine_perm(C, None, d, p)
    meta = {"d": d, "p": p, "singer_matrix": C, "singer": singer, "singer_square": singer * singer}
    name = f"AGL{d}({p}){' & Alt' if alternating else ''}"
    return GroupAction(G, [tuple(v) for v in vectors(d, p)], "affine", name, meta)


# -- diagonal type -------------------------------------------------------------


def diagonal_action(S: PermGroup, r: int = 2, cap: int = DEFAULT_ACTION_CAP) -> GroupAction:
    """S x S acting on the elements of S by s -> x1^-1 s x2."""
    if r != 2:
        raise ValueError("only r = 2 is supported")
    if S.order > cap:
        raise ScanCapExceeded(f"|S| = {S.order} exceeds cap {cap}")
    elems = sorted(S.elements(cap))
    index = {e.images: i for i, e in enumerate(elems)}

    def elem_perm(x1: Permutation, x2: Permutation) -> Permutation:
        x1i = x1.inverse()
        return Permutation([index[(x1i * s * x2).images] for s in elems], check=False)

    one = S.identity()
    gens = [elem_perm(a, one) for a in S.generators] + [elem_perm(one, a) for a in S.generators]
    G = PermGroup(gens, degree=len(elems))
    return GroupAction(G, elems, "diagonal", f"diag({S.order})", {"S": S},
                       lambda pair: elem_perm(*pair))


# -- projective actions --------------------------------------------------------


def _normalize(v: Sequence[int], p: int) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def projective_perm(A: MatrixFp, points: list[tuple[int, ...]], index: dict) -> Permutation:
    return Permutation([index[_normalize(A.apply(v), A.p)] for v in points], check=False)


def regular_unipotent(d: int, p: int) -> MatrixFp:
    """Single Jordan block with eigenvalue 1."""
    return MatrixFp.from_rows([[int(i == j or j == i + 1) for j in range(d)] for i in range(d)], p)


def projective_action(d: int, p: int, cap: int = DEFAULT_ACTION_CAP) -> GroupAction:
    """SL_d(p) on 1-subspaces of F_p^d; the permutation group is its faithful
    image PSL_d(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 2:
        raise ValueError("projective action needs d >= 2")
    if (p**d - 1) // (p - 1) > cap:
        raise ScanCapExceeded("number of projective points exceeds cap")
    points = list(projective_points(d, p))
    index = {v: i for i, v in enumerate(points)}
    mats = [MatrixFp.elementary(d, p, i, j) for i in range(d) for j in range(d) if i != j]
    G = PermGroup([projective_perm(A, points, index) for A in mats], degree=len(points))
    meta = {"d": d, "p": p,
            "unipotent": projective_perm(regular_unipotent(d, p), points, index)}
    return GroupAction(G, points, "projective", f"PSL{d}({p}) on points", meta,
                       lambda A: projective_perm(A, points, index))


# -- coset actions -------------------------------------------------------------


class CosetSpace:
    """Right cosets Hx of H in G with canonical representatives.

    The representative of Hx is the element of Hx whose images of H's base
    points are lexicographically least.
    """

    def __init__(self, H: PermGroup):
        self.H = H
        levels = H._chain.levels
        self._levels = [(lv.base, sorted(lv.trans.items())) for lv in levels]

    def canonical(self, x: tuple) -> tuple:
        y = x
        for base, trans in self._levels:
            best_beta, best_u = None, None
            best_val = None
            for beta, u in trans:
                val = y[beta]
                if best_val is None or val < best_val:
                    best_val, best_beta, best_u = val, beta, u
            y = _mul(best_u, y)
        return y


def coset_action(G: PermGroup, H_gens: Sequence[Permutation], cap: int = DEFAULT_ACTION_CAP,
                 name: str = "") -> GroupAction:
    """G acting by right multiplication on the right cosets of H = <H_gens>."""
    H = PermGroup(H_gens, degree=G.degree)
    if G.order % H.order:
        raise ValueError("|H| does not divide |G|")
    index = G.order // H.order
    if index > cap:
        raise ScanCapExceeded(f"index {index} exceeds cap {cap}")
    for h in H.generators:
        if h not in G:
            raise ValueError("subgroup generator is not in G")
    space = CosetSpace(H)
    start = space.canonical(tuple(range(G.degree)))
    reps = [start]
    pos = {start: 0}
    raw_gens = [g.images for g in G.generators]
    images: list[list[int]] = [[] for _ in raw_gens]
    k = 0
    while k < len(reps):
        y = reps[k]
        for gi, g in enumerate(raw_gens):
            z = space.canonical(_mul(y, g))
            j = pos.get(z)
            if j is None:
                j = len(reps)
                pos[z] = j
                reps.append(z)
            images[gi].append(j)
        k += 1
    if len(reps) != index:
        raise AssertionError(f"found {len(reps)} cosets, expected {index}")
    gens = [Permutation(img, check=False) for img in images]
    image_group = PermGroup(gens, degree=index)

    def image(g: Permutation) -> Permutation:
        raw = g.images
        return Permutation([pos[space.canonical(_mul(y, raw))] for y in reps], check=False)

    labels = [Permutation(y, check=False) for y in reps]
    meta = {"source": G, "subgroup": H}
    action = GroupAction(image_group, labels, "coset", name or f"coset index {index}", meta, image)
    return action


def kernel_order(action: GroupAction) -> int:
    """|kernel| of a coset action (source order over image order)."""
    src = action.meta.get("source")
    if src is None:
        return 1
    return src.order // action.group.order


# -- file input ----------------------------------------------------------------


def group_from_json(data: dict | str) -> PermGroup:
    """Parse ``{"degree": n, "generators": [...]}`` with 1-based points.

    Each generator is either an image list or a cycle string like
    ``"(1,2,3)(4,5)"``.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["degree"])
        raw = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed group description: {exc}") from exc
    if n < 1:
        raise ValueError("degree must be positive")
    gens = []
    for g in raw:
        if isinstance(g, str):
            gens.append(parse_cycles(g, degree=n))
        else:
            if len(g) != n:
                raise ValueError("image list length differs from degree")
            gens.append(Permutation([int(x) - 1 for x in g]))
    return PermGroup(gens, degree=n)


def load_group_file(path: str | Path) -> PermGroup:
    return group_from_json(Path(path).read_text())


def group_to_json(G: PermGroup) -> dict:
    return {"degree": G.degree, "generators": [[i + 1 for i in g.images] for g in G.generators]}


# -- named fixtures ------------------------------------------------------------


def mathieu11() -> PermGroup:
    return PermGroup([parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)"),
                      parse_cycles("(3,7,11,8)(4,10,5,6)", degree=11)], degree=11)


def mathieu12() -> PermGroup:
    return PermGroup([parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", degree=12),
                      parse_cycles("(3,7,11,8)(4,10,5,6)", degree=12),
                      parse_cycles("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", degree=12)], degree=12)


def cyclic_group(n: int) -> PermGroup:
    gens = [perm_from_cycles(n, [tuple(range(n))])] if n > 1 else []
    return PermGroup(gens, degree=n)
