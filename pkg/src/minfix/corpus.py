"""The built-in corpus of permutation actions and the census sweep over it."""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb, factorial, gcd
from typing import Callable

from .constructions import (GroupAction, affine_group, alt_group, coset_action, cyclic_group,
                            diagonal_action, ksubsets_action, mathieu11, mathieu12,
                            natural_action, projective_action, sym_group, wreath_action)
from .group import DEFAULT_SCAN_CAP, PermGroup
from .linalg_fp import is_prime
from .perm import parse_cycles
from .verifier import (FixProfile, PrimitivityReport, WitnessCertificate, min_fix_profile,
                       neumann_witness, primitivity_report)


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    degree: int
    order: int
    kind: str
    build: Callable[[], GroupAction]
    affine: bool = False


def _psl_order(d: int, p: int) -> int:
    sl = p**(d * (d - 1) // 2)
    for i in range(2, d + 1):
        sl *= p**i - 1
    return sl // gcd(d, p - 1)


def _gl_order(d: int, p: int) -> int:
    out = p**(d * (d - 1) // 2)
    for i in range(1, d + 1):
        out *= p**i - 1
    return out


def _coset_fixtures() -> list[CorpusEntry]:
    def a7_on_15():
        A7 = alt_group(7)
        H = projective_action(3, 2).group
        return coset_action(A7, H.generators, name="A7 on cosets of PSL3(2)")

    def a8_on_15():
        A8 = alt_group(8)
        H = affine_group(3, 2, alternating=True).group
        return coset_action(A8, H.generators, name="A8 on cosets of AGL3(2)")

    def a6_on_10():
        A6 = alt_group(6)
        H = wreath_action(3, 2).group
        return coset_action(A6, H.generators, name="A6 on cosets of (S3 wr S2)&A6")

    def a5_on_6():
        A5 = alt_group(5)
        D10 = [parse_cycles("(1,2,3,4,5)"), parse_cycles("(2,5)(3,4)", 5)]
        return coset_action(A5, D10, name="A5 on cosets of D10")

    return [
        CorpusEntry("M11 natural", 11, 7920, "natural", lambda: natural_action(mathieu11(), "M11 natural")),
        CorpusEntry("M12 natural", 12, 95040, "natural", lambda: natural_action(mathieu12(), "M12 natural")),
        CorpusEntry("A7 on cosets of PSL3(2)", 15, 2520, "coset", a7_on_15),
        CorpusEntry("A8 on cosets of AGL3(2)", 15, 20160, "coset", a8_on_15),
        CorpusEntry("A6 on cosets of (S3 wr S2)&A6", 10, 360, "coset", a6_on_10),
        CorpusEntry("A5 on cosets of D10", 6, 60, "coset", a5_on_6),
    ]


def corpus(max_degree: int = 100, max_order: int = 10**7) -> list[CorpusEntry]:
    """All corpus actions with degree <= max_degree and order <= max_order."""
    out: list[CorpusEntry] = []
    for n in range(5, 12):
        out.append(CorpusEntry(f"A{n} natural", n, factorial(n) // 2, "natural",
                               lambda n=n: natural_action(alt_group(n), f"A{n} natural")))
        out.append(CorpusEntry(f"S{n} natural", n, factorial(n), "natural",
                               lambda n=n: natural_action(sym_group(n), f"S{n} natural")))
    for n in range(5, 11):
        for k in range(2, (n + 1) // 2):
            out.append(CorpusEntry(f"A{n} on {k}-subsets", comb(n, k), factorial(n) // 2, "ksubsets",
                                   lambda n=n, k=k: ksubsets_action(n, k)))
    for d, p in [(1, p) for p in range(5, 100) if is_prime(p)] + [(2, 3), (2, 5), (2, 7), (3, 2), (4, 2)]:
        order = p**d * _gl_order(d, p)
        out.append(CorpusEntry(f"AGL{d}({p})", p**d, order, "affine",
                               lambda d=d, p=p: affine_group(d, p), affine=True))
        if p == 2 and d >= 3:
            continue  # already inside the alternating group
        out.append(CorpusEntry(f"AGL{d}({p}) & Alt", p**d, order // 2, "affine",
                               lambda d=d, p=p: affine_group(d, p, alternating=True), affine=True))
    for k in (5, 6):
        order = factorial(k)**2
        out.append(CorpusEntry(f"(S{k} wr S2)&Alt product", k * k, order, "product-wreath",
                               lambda k=k: wreath_action(k, 2, "product")))
        out.append(CorpusEntry(f"S{k} wr S2 product", k * k, 2 * order, "product-wreath",
                               lambda k=k: wreath_action(k, 2, "product", alternating=False)))
    out.append(CorpusEntry("A5 x A5 diagonal", 60, 3600, "diagonal",
                           lambda: diagonal_action(alt_group(5))))
    for p in [p for p in range(5, 98) if is_prime(p)]:
        out.append(CorpusEntry(f"PSL2({p})", p + 1, _psl_order(2, p), "projective",
                               lambda p=p: projective_action(2, p)))
    for d, p in [(3, 2), (3, 3), (3, 5), (3, 7), (4, 2), (4, 3), (5, 2)]:
        out.append(CorpusEntry(f"PSL{d}({p})", (p**d - 1) // (p - 1), _psl_order(d, p), "projective",
                               lambda d=d, p=p: projective_action(d, p)))
    out.extend(_coset_fixtures())
    # members that the census reports but does not certify
    out.append(CorpusEntry("(S3 wr S2)&Alt imprimitive", 6, 36, "imprimitive-wreath",
                           lambda: wreath_action(3, 2)))
    out.append(CorpusEntry("(S2 wr S3)&Alt imprimitive", 6, 24, "imprimitive-wreath",
                           lambda: wreath_action(2, 3)))
    out.append(CorpusEntry("C7 regular", 7, 7, "natural", lambda: natural_action(cyclic_group(7), "C7")))
    out.append(CorpusEntry("A4 on 2-subsets", 6, 12, "ksubsets", lambda: ksubsets_action(4, 2)))
    return [e for e in out if e.degree <= max_degree and e.order <= max_order]


@dataclass
class CensusRow:
    label: str
    kind: str
    degree: int
    order: int
    report: PrimitivityReport
    certificate: WitnessCertificate | None
    profile: FixProfile | None
    affine: bool
    skipped: str | None = None
    seconds: float = 0.0

    @property
    def strict_required(self) -> bool:
        return self.certificate is not None and not self.affine

    @property
    def passed(self) -> bool:
        if self.certificate is None:
            return self.skipped is not None
        if not self.certificate.weak:
            return False
        return self.certificate.strict or self.affine

    @property
    def burnside_ok(self) -> bool | None:
        """Sum of fix over G equals |G| (transitive members only)."""
        if self.profile is None or not self.report.transitive:
            return None
        total = sum(f * c for f, c in self.profile.histogram.items()) + self.degree
        return total == self.order

    def to_dict(self) -> dict:
        c = self.certificate
        return {
            "label": self.label,
            "kind": self.kind,
            "degree": self.degree,
            "order": self.order,
            "primitive": self.report.primitive,
            "regular": self.report.regular,
            "min_fix": c.fix if c else None,
            "fix_cubed": c.fix**3 if c else None,
            "strict": c.strict if c else None,
            "witness_cycle_type": list(c.element.cycle_type()) if c else None,
            "burnside": self.burnside_ok,
            "skipped": self.skipped,
            "passed": self.passed,
        }


def census(max_degree: int = 100, max_order: int = 10**7, cap: int = DEFAULT_SCAN_CAP,
           jobs: int = 1, entries: list[CorpusEntry] | None = None) -> list[CensusRow]:
    rows = []
    for e in entries if entries is not None else corpus(max_degree, max_order):
        t0 = time.perf_counter()
        action = e.build()
        G: PermGroup = action.group
        report = primitivity_report(G)
        profile = min_fix_profile(G, cap, jobs) if G.order <= cap else None
        cert, skipped = None, None
        if not report.transitive:
            skipped = "intransitive"
        elif not report.primitive:
            skipped = "imprimitive"
        elif report.regular:
            skipped = "regular"
        else:
            mode = "exhaustive" if G.order <= cap else "classes"
            cert = neumann_witness(action, mode, cap=cap, jobs=jobs, group_id=e.label, report=report)
        rows.append(CensusRow(e.label, e.kind, G.degree, G.order, report, cert, profile, e.affine,
                              skipped, time.perf_counter() - t0))
    return rows
