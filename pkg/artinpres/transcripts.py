"""
Hand transcriptions of three commutation identities in the quotient of
the Artin group of the star with centre y and leaves x1..x4 by

    x4 D(x1,x3)^-1 x2 D(x1,x3) = D(x1,x3)^-1 x2 D(x1,x3) x4,

where D(s,t) = s t y s t y is the fundamental element of {s, t, y}.

Every identity has the shape W(u,v,s,t) = 1 with

    W = u D^-1 v D U D^-1 V D        (uppercase letters are inverses)

and all three derivations are driven by one generic move list that turns
W into  Y U K(g) u y,  where g = v T S u and K(h) = y h y H Y h Y H.
"""
import os
from typing import Dict, List, Tuple

from artinpres.coxeter import CoxeterGraph
from artinpres.presentation import Presentation, artin_presentation
from artinpres.verifier import DerivationBuilder, DerivationScript, format_script, symbolic_word
from artinpres.words import Word, invert_word

HYPOTHESIS_TAG = "L34"
LEAVES = ("x1", "x2", "x3", "x4")
CENTRE = "y"
# a, b, c, d name the leaves x1..x4.
NAMES = {"a": "x1", "b": "x2", "c": "x3", "d": "x4", "y": CENTRE}

COMMUTATOR_TO_K = (
    # push v and V through the inner half of D
    ("rewrite", 6, "Sv", "vS"), ("cancel", 7, "S"),
    ("rewrite", 5, "Tv", "vT"), ("cancel", 6, "T"),
    ("rewrite", 16, "SV", "VS"), ("cancel", 17, "S"),
    ("rewrite", 15, "TV", "VT"), ("cancel", 16, "T"),
    # braid through y
    ("rewrite", 4, "Yvy", "vyV"),
    ("rewrite", 14, "YVy", "vYV"),
    ("rewrite", 3, "Sv", "vS"), ("rewrite", 2, "Tv", "vT"),
    ("rewrite", 6, "Vs", "sV"), ("rewrite", 7, "Vt", "tV"),
    ("rewrite", 13, "Sv", "vS"), ("rewrite", 12, "Tv", "vT"),
    ("rewrite", 16, "Vs", "sV"), ("rewrite", 17, "Vt", "tV"),
    # u Y v T S y s t V y U Y v T S Y s t V y
    ("rewrite", 0, "uY", "YUyu"),
    ("rewrite", 3, "uv", "vu"), ("rewrite", 4, "uT", "Tu"), ("rewrite", 5, "uS", "Su"),
    ("rewrite", 11, "yUY", "UYu"),
    ("rewrite", 10, "VU", "UV"), ("rewrite", 9, "tU", "Ut"), ("rewrite", 8, "sU", "Us"),
    ("rewrite", 13, "uv", "vu"), ("rewrite", 14, "uT", "Tu"), ("rewrite", 15, "uS", "Su"),
    ("insert", 18, "U"),
    ("rewrite", 19, "us", "su"), ("rewrite", 20, "ut", "tu"), ("rewrite", 21, "uV", "Vu"),
)

# (u, v, s, t) of the hypothesis and of the three claims.
HYPOTHESIS = ("d", "b", "a", "c")
CLAIMS = {
    "lemma3.4(1)": ("c", "a", "b", "d"),
    "lemma3.4(2)": ("b", "d", "a", "c"),
    "lemma3.4(3)": ("a", "c", "b", "d"),
}


def star_graph() -> CoxeterGraph:
    return CoxeterGraph(LEAVES + (CENTRE,), [(leaf, CENTRE, 3) for leaf in LEAVES])


def delta_pair(s: str, t: str) -> Word:
    return symbolic_word(s + t + "y" + s + t + "y", NAMES)


def commutator_word(u: str, v: str, s: str, t: str) -> Word:
    """
    W(u,v,s,t) over the letters a, b, c, d, y.
    """
    d = delta_pair(s, t)
    di = invert_word(d)
    uu, vv = symbolic_word(u, NAMES), symbolic_word(v, NAMES)
    return uu + di + vv + d + invert_word(uu) + di + invert_word(vv) + d


def hypothesis_sides() -> Tuple[Word, Word]:
    u, v, s, t = HYPOTHESIS
    d = delta_pair(s, t)
    conj = invert_word(d) + symbolic_word(v, NAMES) + d
    uu = symbolic_word(u, NAMES)
    return uu + conj, conj + uu


def quotient_presentation() -> Presentation:
    lhs, rhs = hypothesis_sides()
    return artin_presentation(star_graph()).extend(
        [commutator_word(*HYPOTHESIS)], [HYPOTHESIS_TAG], [(lhs, rhs)])


def _mapping(quad) -> Dict[str, str]:
    u, v, s, t = quad
    return {"u": NAMES[u], "v": NAMES[v], "s": NAMES[s], "t": NAMES[t], "y": CENTRE}


def _k_letter(quad) -> Word:
    """g = v T S u for the given quadruple."""
    u, v, s, t = quad
    return symbolic_word(v + t.upper() + s.upper() + u, NAMES)


def claim_script(claim: str, presentation: Presentation = None) -> DerivationScript:
    quad = CLAIMS[claim]
    presentation = presentation or quotient_presentation()
    start = commutator_word(*quad)
    builder = DerivationBuilder(presentation, start)
    builder.play(COMMUTATOR_TO_K, _mapping(quad))
    g = _k_letter(quad)
    big_g = invert_word(g)
    g0 = _k_letter(HYPOTHESIS)
    g0_inv = invert_word(g0)
    hypothesis = _mapping(HYPOTHESIS)
    d_y = symbolic_word("dy", NAMES)
    if sorted(g) == sorted(g0):
        # Y U K(g) u y; bring the hypothesis in as K(g0) and sort it into K(g)
        builder.commute_into(3, g0).commute_into(8, g0_inv)
        builder.commute_into(13, g0).commute_into(18, g0_inv)
        builder.free_insert(2, d_y).free_insert(26, d_y)
        builder.unplay(COMMUTATOR_TO_K, hypothesis, 4)
        builder.rewrite(4, commutator_word(*HYPOTHESIS), ())
    else:
        # Y U K(g) u y = Y U g K(G)^-1 G u y; K(G) comes from the hypothesis
        builder.free_insert(2, g)
        builder.free_insert(6, d_y)
        builder.relator(8, HYPOTHESIS_TAG)
        builder.play(COMMUTATOR_TO_K, hypothesis, 8)
        for at, target in ((11, big_g), (16, g), (21, big_g), (26, g)):
            builder.commute_into(at, target)
    builder.reduce()
    return builder.build(())


def lemma34_scripts() -> Dict[str, DerivationScript]:
    presentation = quotient_presentation()
    return {claim: claim_script(claim, presentation) for claim in sorted(CLAIMS)}


def claim_ids() -> List[str]:
    return sorted(CLAIMS)


def write_transcripts(directory: str) -> List[str]:
    """
    One self-contained ``<claim>.script`` file per shipped derivation.
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    for claim, script in lemma34_scripts().items():
        path = os.path.join(directory, "%s.script" % claim)
        with open(path, "w") as fout:
            fout.write(format_script(script))
        written.append(path)
    return written
