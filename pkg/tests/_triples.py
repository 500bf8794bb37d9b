"""(G, H, g) triples with small index, each g a class representative of H."""

from minfix.constructions import (affine_group, alt_group, projective_action, sym_group,
                                  wreath_action)
from minfix.group import PermGroup, conjugacy_classes
from minfix.perm import parse_cycles


def _pairs():
    S4, A5, S5, A6, A7, A8 = (sym_group(4), alt_group(5), sym_group(5), alt_group(6),
                              alt_group(7), alt_group(8))
    c = parse_cycles
    yield "S4", S4, "C4", [c("(1,2,3,4)")]
    yield "S4", S4, "D8", [c("(1,2,3,4)"), c("(1,3)", 4)]
    yield "S4", S4, "S3", [c("(1,2,3)", 4), c("(1,2)", 4)]
    yield "A5", A5, "D10", [c("(1,2,3,4,5)"), c("(2,5)(3,4)", 5)]
    yield "A5", A5, "A4", [c("(1,2,3)", 5), c("(1,2)(3,4)", 5)]
    yield "A5", A5, "S3", [c("(1,2,3)", 5), c("(1,2)(4,5)", 5)]
    yield "S5", S5, "AGL1(5)", affine_group(1, 5).group.generators
    yield "A6", A6, "(S3 wr S2)&A6", wreath_action(3, 2).group.generators
    yield "A6", A6, "A5", [c("(1,2,3,4,5)", 6), c("(1,2,3)", 6)]
    yield "A7", A7, "PSL3(2)", projective_action(3, 2).group.generators
    yield "A8", A8, "AGL3(2)", affine_group(3, 2, alternating=True).group.generators


def formula_triples():
    out = []
    for gname, G, hname, H_gens in _pairs():
        H = PermGroup(H_gens, degree=G.degree)
        for cd in conjugacy_classes(H):
            if not cd.representative.is_identity():
                out.append((f"{gname}/{hname} {cd.representative.cycle_type()}", G, H_gens,
                            cd.representative))
    return out
