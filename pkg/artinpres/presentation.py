"""
Finitely presented groups: Artin presentations, the extension combiner,
Tietze elimination, text/machine/GAP formats and two small oracles
(abelian invariants and bounded coset enumeration) built on sympy.
"""
from dataclasses import dataclass, field
import logging
from math import gcd
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
from sympy.combinatorics.free_groups import free_group
from sympy.matrices.normalforms import smith_normal_form

from artinpres.coxeter import CoxeterGraph
from artinpres.words import Word, WordSyntaxError, cyclic_reduce, format_word, free_reduce, \
    invert_word, parse_word

_log = logging.getLogger("presentation")

COSET_CAP = 10 ** 5
ARTIN_TAG = "artin(%s,%s)"
LIFT_SUFFIX = "_lift"

Pair = Tuple[Word, Word]


class PresentationError(ValueError):
    pass


def normalize_relator(word: Sequence) -> Word:
    return cyclic_reduce(free_reduce(word))


class Presentation(object):
    """
    Generators and relators (each understood to equal the identity).

    Every relator carries a provenance tag and, optionally, the (LHS, RHS)
    pair it was written as. Relators are stored freely and cyclically
    reduced; the display pairs are only freely reduced.
    """

    __slots__ = ("generators", "relators", "tags", "pairs", "metadata")

    def __init__(self, generators: Sequence[str], relators: Sequence[Sequence] = (),
                 tags: Sequence[str] = None, pairs: Sequence[Optional[Pair]] = None,
                 metadata: Mapping[str, str] = None):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names in %s" % (self.generators,))
        relators = [tuple(r) for r in relators]
        tags = list(tags) if tags is not None else [""] * len(relators)
        pairs = list(pairs) if pairs is not None else [None] * len(relators)
        if len(tags) != len(relators) or len(pairs) != len(relators):
            raise PresentationError("tags and pairs must match the relators one to one")
        known = set(self.generators)
        for i, r in enumerate(relators):
            for name, _ in r + tuple(l for p in (pairs[i] or ()) for l in p):
                if name not in known:
                    raise PresentationError("relator %d (%s) mentions undeclared generator %s"
                                            % (i, tags[i] or "untagged", name))
        self.relators = tuple(normalize_relator(r) for r in relators)
        self.tags = tuple(tags)
        self.pairs = tuple(None if p is None else (free_reduce(p[0]), free_reduce(p[1]))
                           for p in pairs)
        metadata = dict(metadata or {})
        for name in metadata:
            if name not in known:
                raise PresentationError("metadata for undeclared generator %s" % name)
        self.metadata = metadata

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.generators == other.generators and self.relators == other.relators and
                self.tags == other.tags)

    def __hash__(self):
        return hash((self.generators, self.relators))

    def __repr__(self):
        return "Presentation(%s)" % format_text(self)

    def __len__(self):
        return len(self.relators)

    @property
    def relation_pairs(self) -> List[Tuple[str, Pair]]:
        return [(tag, pair) for tag, pair in zip(self.tags, self.pairs) if pair is not None]

    def tag_index(self, tag: str) -> int:
        try:
            return self.tags.index(tag)
        except ValueError:
            raise PresentationError("no relator tagged %s" % tag) from None

    def schema_ids(self) -> List[str]:
        """
        Distinct tag stems in order of first appearance: "R3(k=0,j=1,i=2)" gives "R3".
        """
        seen = []
        for tag in self.tags:
            stem = tag.split("(", 1)[0]
            if stem not in seen:
                seen.append(stem)
        return seen

    def extend(self, relators: Sequence[Sequence], tags: Sequence[str],
               pairs: Sequence[Optional[Pair]] = None) -> "Presentation":
        pairs = list(pairs) if pairs is not None else [None] * len(relators)
        return Presentation(self.generators, self.relators + tuple(tuple(r) for r in relators),
                            self.tags + tuple(tags), self.pairs + tuple(pairs), self.metadata)


def braid_product(a: str, b: str, m: int) -> Word:
    """
    a b a b ... with m letters.
    """
    return tuple((a if i % 2 == 0 else b, 1) for i in range(m))


def artin_presentation(graph: CoxeterGraph) -> Presentation:
    relators, tags, pairs = [], [], []
    for i, a in enumerate(graph.vertices):
        for b in graph.vertices[i + 1:]:
            m = graph.m(a, b)
            lhs, rhs = braid_product(a, b, m), braid_product(b, a, m)
            relators.append(lhs + invert_word(rhs))
            tags.append(ARTIN_TAG % (a, b))
            pairs.append((lhs, rhs))
    return Presentation(graph.vertices, relators, tags, pairs)


def rename_generators(p: Presentation, mapping: Mapping[str, str]) -> Presentation:
    for name in mapping:
        if name not in p.generators:
            raise PresentationError("cannot rename undeclared generator %s" % name)
    generators = [mapping.get(g, g) for g in p.generators]
    if len(set(generators)) != len(generators):
        raise PresentationError("renaming %s creates a name collision" % dict(mapping))

    def rename(word):
        return tuple((mapping.get(name, name), e) for name, e in word)

    return Presentation(
        generators, [rename(r) for r in p.relators], p.tags,
        [None if pair is None else (rename(pair[0]), rename(pair[1])) for pair in p.pairs],
        {mapping.get(g, g): doc for g, doc in p.metadata.items()})


@dataclass
class ExtensionData:
    """
    Data for a presentation of G given 1 -> K -> G -> H -> 1.

    ``relator_words[i]`` is the word over K that the lift of the i-th
    relator of H equals; ``conjugates[(x, k)]`` is the word over K equal to
    lift(x) k lift(x)^-1.
    """
    kernel: Presentation
    quotient: Presentation
    relator_words: Sequence[Word]
    conjugates: Dict[Tuple[str, str], Word]
    lifts: Dict[str, str] = field(default_factory=dict)

    def lift_name(self, x: str) -> str:
        return self.lifts.get(x, x + LIFT_SUFFIX)

    def validate(self):
        kernel_gens = set(self.kernel.generators)
        lifted = [self.lift_name(x) for x in self.quotient.generators]
        if len(set(lifted)) != len(lifted):
            raise PresentationError("lift names are not distinct: %s" % lifted)
        clash = kernel_gens.intersection(lifted)
        if clash:
            raise PresentationError("lift names collide with kernel generators: %s"
                                    % sorted(clash))
        if len(self.relator_words) != len(self.quotient.relators):
            raise PresentationError("need one kernel word per quotient relator, got %d for %d"
                                    % (len(self.relator_words), len(self.quotient.relators)))
        words = list(self.relator_words)
        for x in self.quotient.generators:
            for k in self.kernel.generators:
                if (x, k) not in self.conjugates:
                    raise PresentationError("missing conjugation word for (%s, %s)" % (x, k))
        for key in self.conjugates:
            if key[0] not in self.quotient.generators or key[1] not in kernel_gens:
                raise PresentationError("conjugation word for unknown pair %s" % (key,))
            words.append(self.conjugates[key])
        for word in words:
            for name, _ in word:
                if name not in kernel_gens:
                    raise PresentationError("%s is not a kernel generator" % name)


def compose_extension(data: ExtensionData) -> Presentation:
    """
    Generators: lifts of the quotient generators, then the kernel
    generators. Relators: lifted quotient relators times the inverse of
    their kernel words, one conjugation relator per (lift, kernel
    generator), then the kernel relators.
    """
    data.validate()
    lift = {x: data.lift_name(x) for x in data.quotient.generators}
    generators = [lift[x] for x in data.quotient.generators] + list(data.kernel.generators)
    relators, tags, pairs = [], [], []
    for i, (r, w) in enumerate(zip(data.quotient.relators, data.relator_words)):
        lifted = tuple((lift[name], e) for name, e in r)
        relators.append(lifted + invert_word(w))
        tags.append("lift(%d)" % (i + 1))
        pairs.append((lifted, tuple(w)))
    for x in data.quotient.generators:
        for k in data.kernel.generators:
            v = tuple(data.conjugates[(x, k)])
            lhs = ((lift[x], 1), (k, 1), (lift[x], -1))
            relators.append(lhs + invert_word(v))
            tags.append("conj(%s,%s)" % (lift[x], k))
            pairs.append((lhs, v))
    result = Presentation(generators, relators, tags, pairs).extend(
        data.kernel.relators, data.kernel.tags, data.kernel.pairs)
    _log.debug("extension has %d generators and %d relators",
               len(result.generators), len(result.relators))
    return result


def _substitute(word: Sequence, gen: str, replacement: Word) -> Word:
    result = []
    inverse = invert_word(replacement)
    for name, e in word:
        if name == gen:
            result.extend(replacement if e > 0 else inverse)
        else:
            result.append((name, e))
    return free_reduce(result)


def tietze_eliminate(p: Presentation, gen: str, index: int) -> Presentation:
    """
    Remove ``gen`` using relator ``index``, which must contain it exactly once.
    Every other relator is kept with its tag and pair, including those that
    reduce to the empty word.
    """
    if gen not in p.generators:
        raise PresentationError("%s is not a generator" % gen)
    if not 0 <= index < len(p.relators):
        raise PresentationError("no relator with index %d" % index)
    relator = p.relators[index]
    spots = [i for i, (name, _) in enumerate(relator) if name == gen]
    if len(spots) != 1:
        raise PresentationError("relator %s contains %s %d times, cannot solve for it"
                                % (p.tags[index] or index, gen, len(spots)))
    at = spots[0]
    rest = relator[at + 1:] + relator[:at]
    # gen^e rest = 1
    solved = invert_word(rest) if relator[at][1] > 0 else tuple(rest)
    relators, tags, pairs = [], [], []
    for i, r in enumerate(p.relators):
        if i == index:
            continue
        new = _substitute(r, gen, solved)
        if not normalize_relator(new):
            _log.debug("relator %s became trivial after eliminating %s", p.tags[i], gen)
        relators.append(new)
        tags.append(p.tags[i])
        pair = p.pairs[i]
        pairs.append(None if pair is None else
                     (_substitute(pair[0], gen, solved), _substitute(pair[1], gen, solved)))
    _log.info("eliminated %s = %s", gen, format_word(solved))
    return Presentation([g for g in p.generators if g != gen], relators, tags, pairs,
                        {g: doc for g, doc in p.metadata.items() if g != gen})


def exponent_matrix(p: Presentation) -> List[List[int]]:
    column = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for name, e in r:
            row[column[name]] += e
        rows.append(row)
    return rows


def abelianization_invariants(p: Presentation) -> List[int]:
    """
    Invariant factors of the abelianization: the torsion divisors greater
    than 1 in increasing order, each dividing the next, then one 0 per free
    factor.
    """
    rows = exponent_matrix(p)
    n = len(p.generators)
    if n == 0:
        return []
    rows = [r for r in rows if any(r)]
    if not rows:
        return [0] * n
    size = max(len(rows), n)
    padded = [r + [0] * (size - n) for r in rows] + [[0] * size] * (size - len(rows))
    snf = smith_normal_form(Matrix(padded), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(size)]
    nonzero = [d for d in diagonal if d != 0]
    torsion = sorted(d for d in nonzero if d > 1)
    # each factor must divide the next
    for i in range(len(torsion)):
        for j in range(i + 1, len(torsion)):
            g = gcd(torsion[i], torsion[j])
            torsion[i], torsion[j] = g, torsion[i] * torsion[j] // g
    return [d for d in torsion if d > 1] + [0] * (n - len(nonzero))


def coset_enumeration_order(p: Presentation, max_cosets: int = COSET_CAP) -> int:
    """
    Order of the presented group by enumerating the cosets of the trivial
    subgroup. Raises PresentationError past ``max_cosets`` cosets.
    """
    if not p.generators:
        return 1
    symbols = ["g%d" % i for i in range(len(p.generators))]
    free, *gens = free_group(", ".join(symbols))
    lookup = dict(zip(p.generators, gens))
    relators = []
    for r in p.relators:
        if not r:
            continue
        element = free.identity
        for name, e in r:
            element = element * lookup[name] ** e
        relators.append(element)
    group = FpGroup(free, relators)
    try:
        table = coset_enumeration_r(group, [], max_cosets=max_cosets)
    except ValueError as e:
        raise PresentationError("coset enumeration gave up: %s" % e) from None
    table.compress()
    table.standardize()
    _log.debug("coset table for %s closed with %d rows", symbols, len(table.table))
    return len(table.table)


def format_text(p: Presentation) -> str:
    return "< %s | %s >" % (", ".join(p.generators), ", ".join(format_word(r) for r in p.relators))


_TEXT_RE = re.compile(r"^\s*<(.*)\|(.*)>\s*$", re.DOTALL)


def parse_text(text: str) -> Presentation:
    match = _TEXT_RE.match(text)
    if match is None:
        raise PresentationError("not a presentation: %r" % text[:80])
    generators = [g.strip() for g in match.group(1).split(",") if g.strip()]
    try:
        relators = [parse_word(w) for w in match.group(2).split(",") if w.strip()]
    except WordSyntaxError as e:
        raise PresentationError(str(e)) from None
    return Presentation(generators, relators)


def format_machine(p: Presentation) -> str:
    lines = []
    for g in p.generators:
        doc = p.metadata.get(g)
        lines.append("gen %s %s" % (g, doc) if doc else "gen %s" % g)
    for r, tag, pair in zip(p.relators, p.tags, p.pairs):
        lines.append("rel %s" % format_word(r))
        if tag:
            lines.append("tag %s" % tag)
        if pair is not None:
            lines.append("pair %s = %s" % (format_word(pair[0]), format_word(pair[1])))
    return "\n".join(lines) + "\n"


def parse_machine(text: str) -> Presentation:
    """
    Read ``gen``/``rel`` records; ``tag`` and ``pair`` records describe the
    ``rel`` before them. Unknown record kinds are left for the caller, so
    derivation scripts can embed a presentation.
    """
    generators, metadata = [], {}
    relators, tags, pairs = [], [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if kind == "gen":
                name, _, doc = rest.partition(" ")
                generators.append(name)
                if doc.strip():
                    metadata[name] = doc.strip()
            elif kind == "rel":
                relators.append(parse_word(rest))
                tags.append("")
                pairs.append(None)
            elif kind in ("tag", "pair"):
                if not relators:
                    raise PresentationError("line %d: %s record before any rel" % (lineno, kind))
                if kind == "tag":
                    tags[-1] = rest
                else:
                    lhs, sep, rhs = rest.partition("=")
                    if not sep:
                        raise PresentationError("line %d: pair needs '='" % lineno)
                    pairs[-1] = (parse_word(lhs), parse_word(rhs))
        except WordSyntaxError as e:
            raise PresentationError("line %d: %s" % (lineno, e)) from None
    return Presentation(generators, relators, tags, pairs, metadata)


def _gap_word(word: Word, identity: str = "One(F)") -> str:
    syllables = []
    for name, e in word:
        if syllables and syllables[-1][0] == name:
            syllables[-1][1] += e
        else:
            syllables.append([name, e])
    parts = [name if k == 1 else "%s^%d" % (name, k) for name, k in syllables if k]
    return "*".join(parts) if parts else identity


def format_gap(p: Presentation) -> str:
    """
    A GAP script defining F and G := F / relators.
    """
    if not p.generators:
        return "F := FreeGroup(0);;\nG := F / [];;\n"
    lines = ["F := FreeGroup(%s);;" % ", ".join('"%s"' % g for g in p.generators)]
    lines.extend("%s := F.%d;;" % (g, i + 1) for i, g in enumerate(p.generators))
    body = ",\n  ".join(_gap_word(r) for r in p.relators)
    lines.append("G := F / [\n  %s ];;" % body if body else "G := F / [];;")
    return "\n".join(lines) + "\n"


FORMATTERS = {"text": format_text, "machine": format_machine, "gap": format_gap}


def parse_presentation(text: str) -> Presentation:
    if text.lstrip().startswith("<"):
        return parse_text(text)
    return parse_machine(text)


def read_presentation(path: str) -> Presentation:
    with open(path) as f:
        return parse_presentation(f.read())
