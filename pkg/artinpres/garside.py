"""
Words in finite-type Artin groups and their greedy Garside normal form.

Simple elements are positive lifts of Coxeter group elements, so the
simples of a normal form are plain :class:`CoxeterElement` values.
"""
import logging
import re
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from artinpres.coxeter import CoxeterElement, CoxeterGraph, GraphError, NotFiniteTypeError, \
    generator, graph_from_args, identity, longest_element, longest_word, require_finite_type, \
    strip_common_prefix
from artinpres.words import Letter, Word, format_word, free_reduce, from_syllables, \
    invert_word, parse_word, power_word, to_syllables

_log = logging.getLogger("garside")


class ArtinWord(object):
    """
    A word in the generators of A(graph), stored as merged syllables.
    """

    __slots__ = ("graph", "syllables")

    def __init__(self, graph: CoxeterGraph, letters: Iterable[Letter] = ()):
        letters = tuple(letters)
        for name, _ in letters:
            if name not in graph:
                raise GraphError("%s is not a generator of A(%s)"
                                 % (name, ",".join(graph.vertices)))
        self.graph = graph
        self.syllables = tuple(to_syllables(letters))

    @classmethod
    def from_syllables(cls, graph: CoxeterGraph, syllables: Iterable[Tuple[str, int]]):
        return cls(graph, from_syllables(syllables))

    @property
    def letters(self) -> Word:
        return from_syllables(self.syllables)

    def __len__(self):
        return sum(abs(k) for _, k in self.syllables)

    def __eq__(self, other):
        if not isinstance(other, ArtinWord):
            return NotImplemented
        return self.graph == other.graph and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __str__(self):
        return format_word(self.letters)

    def __repr__(self):
        return "ArtinWord(%s)" % self

    def _check(self, other: "ArtinWord"):
        if self.graph is not other.graph and self.graph != other.graph:
            raise GraphError("words belong to different Artin groups")

    def __mul__(self, other: "ArtinWord") -> "ArtinWord":
        return concat(self, other)

    def __invert__(self) -> "ArtinWord":
        return inverse(self)

    def __pow__(self, n: int) -> "ArtinWord":
        return power(self, n)

    @property
    def is_positive(self) -> bool:
        return all(k > 0 for _, k in self.syllables)


def parse_artin_word(graph: CoxeterGraph, text: str) -> ArtinWord:
    return ArtinWord(graph, parse_word(text))


def concat(w1: ArtinWord, w2: ArtinWord) -> ArtinWord:
    w1._check(w2)
    return ArtinWord(w1.graph, free_reduce(w1.letters + w2.letters))


def inverse(w: ArtinWord) -> ArtinWord:
    return ArtinWord(w.graph, invert_word(w.letters))


def power(w: ArtinWord, n: int) -> ArtinWord:
    return ArtinWord(w.graph, free_reduce(power_word(w.letters, n)))


def word_product(graph: CoxeterGraph, parts: Sequence[ArtinWord]) -> ArtinWord:
    letters = []
    for part in parts:
        letters.extend(part.letters)
    return ArtinWord(graph, free_reduce(letters))


class GarsideNormalForm(object):
    """
    Delta^infimum followed by left-weighted simples, none of them 1 or w_0.
    """

    __slots__ = ("graph", "infimum", "simples")

    def __init__(self, graph: CoxeterGraph, infimum: int, simples: Sequence[CoxeterElement]):
        self.graph = graph
        self.infimum = infimum
        self.simples = tuple(simples)

    def __eq__(self, other):
        if not isinstance(other, GarsideNormalForm):
            return NotImplemented
        return (self.graph == other.graph and self.infimum == other.infimum and
                [s.key for s in self.simples] == [s.key for s in other.simples])

    def __hash__(self):
        return hash((self.infimum, tuple(s.key for s in self.simples)))

    def __repr__(self):
        return "GarsideNormalForm(%s)" % format_normal_form(self)

    @property
    def supremum(self) -> int:
        return self.infimum + len(self.simples)

    @property
    def canonical_length(self) -> int:
        return len(self.simples)

    @property
    def is_identity(self) -> bool:
        return self.infimum == 0 and not self.simples


def _delta_complement(u: CoxeterElement, w0: CoxeterElement) -> CoxeterElement:
    return u.cached("delta-complement", lambda: ~u * w0)


def _delta_twist(z: CoxeterElement, w0: CoxeterElement) -> CoxeterElement:
    return z.cached("delta-twist", lambda: w0 * z * w0)


def _slide(factors: List[CoxeterElement], i: int, w0: CoxeterElement) -> bool:
    """
    Make the pair at (i, i+1) left-weighted. Returns whether it changed.
    """
    u, v = factors[i], factors[i + 1]
    if v.descent_indices("left") <= u.descent_indices("right"):
        return False
    letters, _, rest = strip_common_prefix(_delta_complement(u, w0), v)
    if not letters:
        return False
    for j in letters:
        u = u.right_multiply(j)
    factors[i] = u
    factors[i + 1] = rest
    return True


def _append_simple(factors: List[CoxeterElement], a: CoxeterElement, w0: CoxeterElement):
    if a.is_identity:
        return
    factors.append(a)
    i = len(factors) - 2
    while i >= 0 and _slide(factors, i, w0):
        i -= 1
    # only the slid tail can have emptied out
    factors[i + 1:] = [f for f in factors[i + 1:] if not f.is_identity]


def _pairs_left_weighted(factors: Sequence[CoxeterElement]) -> bool:
    return all(v.descent_indices("left") <= u.descent_indices("right")
               for u, v in zip(factors, factors[1:]))


def _stabilize(factors: List[CoxeterElement], w0: CoxeterElement):
    changed = True
    passes = 0
    while changed:
        changed = False
        for i in range(len(factors) - 2, -1, -1):
            if _slide(factors, i, w0):
                changed = True
        factors[:] = [f for f in factors if not f.is_identity]
        passes += 1
    _log.debug("stabilized after %d extra passes", passes)


def normal_form(word: ArtinWord) -> GarsideNormalForm:
    """
    Greedy left-weighted normal form.

    Each inverse letter s^-1 becomes Delta^-1 (Delta s^-1); the Delta^-1
    factors are pulled to the front, twisting everything they pass by tau.
    The remaining positive simples are appended one at a time and slid left.
    """
    graph = word.graph
    require_finite_type(graph)
    w0 = longest_element(graph)
    positive = []
    negatives = 0
    for name, e in reversed(word.letters):
        s = generator(graph, name)
        z = s if e > 0 else s.cached("delta-over", lambda: w0 * s)
        if negatives % 2:
            z = _delta_twist(z, w0)
        positive.append(z)
        if e < 0:
            negatives += 1
    factors = []  # type: List[CoxeterElement]
    for z in reversed(positive):
        _append_simple(factors, z, w0)
    if not _pairs_left_weighted(factors):
        _stabilize(factors, w0)
    leading = 0
    while leading < len(factors) and factors[leading].key == w0.key:
        leading += 1
    return GarsideNormalForm(graph, leading - negatives, factors[leading:])


def is_left_weighted(nf: GarsideNormalForm) -> bool:
    w0 = longest_element(nf.graph)
    if any(s.is_identity or s.key == w0.key for s in nf.simples):
        return False
    return _pairs_left_weighted(nf.simples)


def words_equal(w1: ArtinWord, w2: ArtinWord) -> bool:
    w1._check(w2)
    return normal_form(w1) == normal_form(w2)


def is_trivial(w: ArtinWord) -> bool:
    return normal_form(w).is_identity


def render(nf: GarsideNormalForm) -> ArtinWord:
    """
    Back to a word: the greedy Delta word to the power infimum, then the
    reduced word of every simple.
    """
    graph = nf.graph
    letters = list(power_word(tuple((name, 1) for name in longest_word(graph)), nf.infimum))
    for s in nf.simples:
        letters.extend((name, 1) for name in s.reduced_word())
    return ArtinWord(graph, letters)


def format_normal_form(nf: GarsideNormalForm) -> str:
    parts = ["delta^%d" % nf.infimum]
    parts.extend("[%s]" % " ".join(s.reduced_word()) for s in nf.simples)
    return " ".join(parts)


_SIMPLE_RE = re.compile(r"\[([^\]]*)\]")


def parse_normal_form(graph: CoxeterGraph, text: str) -> GarsideNormalForm:
    """
    Inverse of :func:`format_normal_form`. Raises ValueError unless the
    text is a normal form.
    """
    text = text.strip()
    head, _, rest = text.partition(" ")
    if not head.startswith("delta^"):
        raise ValueError("normal form must start with delta^k: %r" % text)
    infimum = int(head[len("delta^"):])
    simples = []
    for body in _SIMPLE_RE.findall(rest):
        element = identity(graph)
        for name in body.split():
            element = element * generator(graph, name)
        simples.append(element)
    nf = GarsideNormalForm(graph, infimum, simples)
    if not is_left_weighted(nf):
        raise ValueError("%r is not left-weighted" % text)
    return nf


def _require_connected_finite(graph: CoxeterGraph, subset: Sequence[str]) -> CoxeterGraph:
    if not subset:
        raise NotFiniteTypeError("Delta of the empty vertex set is not defined")
    sub = graph.induced(subset)
    if not sub.is_connected():
        raise NotFiniteTypeError("{%s} induces a disconnected subgraph" % ", ".join(sub.vertices))
    require_finite_type(sub)
    return sub


def delta_word(graph: CoxeterGraph, subset: Iterable[str] = None) -> ArtinWord:
    """
    Positive word for the fundamental element Delta(X) of the parabolic
    subgroup on ``subset`` (default: the whole graph), as a word of A(graph).
    """
    names = graph.vertices if subset is None else graph.sort_vertices(subset)
    sub = _require_connected_finite(graph, names)
    return ArtinWord(graph, ((name, 1) for name in longest_word(sub)))


def delta_power_word(graph: CoxeterGraph, subset: Iterable[str], k: int) -> ArtinWord:
    return power(delta_word(graph, subset), k)


def tau(graph: CoxeterGraph) -> Dict[str, str]:
    """
    The permutation s -> Delta s Delta^-1, read off from w_0 s w_0 in W.
    """
    def build():
        require_finite_type(graph)
        w0 = longest_element(graph)
        by_key = {generator(graph, name).key: name for name in graph.vertices}
        result = {}
        for name in graph.vertices:
            image = w0 * generator(graph, name) * w0
            if image.key not in by_key:
                raise NotFiniteTypeError("w0 does not normalize the generators of %s"
                                         % (graph.vertices,))
            result[name] = by_key[image.key]
        for a in graph.vertices:
            for b in graph.vertices:
                if graph.m(a, b) != graph.m(result[a], result[b]):
                    raise NotFiniteTypeError("tau is not a graph automorphism")
        return result
    return dict(graph.cached("tau", build))


def conjugate_by_delta(word: ArtinWord) -> ArtinWord:
    """
    Delta w Delta^-1, computed letterwise through tau.
    """
    t = tau(word.graph)
    return ArtinWord(word.graph, ((t[name], e) for name, e in word.letters))


def random_word(graph: CoxeterGraph, max_length: int, rng: np.random.RandomState) -> ArtinWord:
    length = rng.randint(0, max_length + 1)
    names = rng.randint(0, graph.rank, size=length)
    signs = rng.randint(0, 2, size=length)
    return ArtinWord(graph, ((graph.vertices[int(i)], 1 if s else -1)
                             for i, s in zip(names, signs)))


def solve_words(args) -> int:
    """
    One ``--word``: print its normal form. Several: print ``equal`` when
    they all represent the same element, ``distinct`` otherwise.
    """
    graph = graph_from_args(args)
    require_finite_type(graph)
    words = [parse_artin_word(graph, text) for text in args.word]
    if len(words) == 1:
        print(format_normal_form(normal_form(words[0])))
        return 0
    first = normal_form(words[0])
    same = all(normal_form(w) == first for w in words[1:])
    _log.info("compared %d words in A(%s)", len(words), ",".join(graph.vertices))
    print("equal" if same else "distinct")
    return 0


def print_delta(args) -> int:
    graph = graph_from_args(args)
    print(delta_word(graph, args.subset or None))
    return 0
