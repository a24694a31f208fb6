"""
Derivation scripts: checkable chains of elementary moves that transform a
word into another in a finitely presented group.

Moves are: insert a relator (optionally inverted, then rotated) at a
position; cancel two adjacent mutually inverse letters; insert g g^-1.
"""
import heapq
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from artinpres.presentation import Presentation, PresentationError, parse_machine, \
    format_machine
from artinpres.words import Letter, Word, WordSyntaxError, format_letters, free_reduce, \
    invert_letter, invert_word, parse_word, rotate

_log = logging.getLogger("verifier")

SEARCH_DEPTH = 12
SEARCH_NODES = 20000


class ScriptError(ValueError):
    """
    A malformed script or an illegal builder move. ``step`` is the index of
    the offending step when there is one.
    """

    def __init__(self, message: str, step: int = None):
        if step is not None:
            message = "step %d: %s" % (step, message)
        super().__init__(message)
        self.step = step


class Step(NamedTuple):
    kind: str  # "rel", "cancel" or "insert"
    position: int
    tag: str = ""
    inverse: bool = False
    rotation: int = 0
    letter: Letter = None

    def __str__(self):
        if self.kind == "rel":
            text = "step rel %s at %d" % (self.tag, self.position)
            if self.inverse:
                text += " inv"
            if self.rotation:
                text += " rot %d" % self.rotation
            return text
        if self.kind == "cancel":
            return "step cancel %d" % self.position
        return "step insert %s at %d" % (format_letters((self.letter,)), self.position)


def rel_step(position: int, tag: str, inverse: bool = False, rotation: int = 0) -> Step:
    return Step("rel", position, tag, inverse, rotation)


def cancel_step(position: int) -> Step:
    return Step("cancel", position)


def insert_step(position: int, letter: Letter) -> Step:
    return Step("insert", position, letter=letter)


class DerivationScript(NamedTuple):
    presentation: Presentation
    start: Word
    steps: Tuple[Step, ...]
    end: Word = ()


class DerivationResult(NamedTuple):
    ok: bool
    reason: str
    step: Optional[int]
    word: Word

    def __bool__(self):
        return self.ok


def _relator_table(p: Presentation) -> Dict[str, Word]:
    table = {}
    for tag, relator in zip(p.tags, p.relators):
        if not tag:
            continue
        if tag in table and table[tag] != relator:
            table[tag] = None
        else:
            table[tag] = relator
    return table


def relator_variant(relator: Word, inverse: bool, rotation: int) -> Word:
    return rotate(invert_word(relator) if inverse else relator, rotation)


def apply_step(word: Word, step: Step, relators: Dict[str, Word], generators) -> Word:
    """
    One elementary move. Raises ScriptError (without an index) if illegal.
    """
    pos = step.position
    if step.kind == "rel":
        if step.tag not in relators:
            raise ScriptError("unknown relator %s" % step.tag)
        relator = relators[step.tag]
        if relator is None:
            raise ScriptError("relator tag %s is ambiguous" % step.tag)
        if not 0 <= pos <= len(word):
            raise ScriptError("position %d outside 0..%d" % (pos, len(word)))
        if not 0 <= step.rotation < max(len(relator), 1):
            raise ScriptError("rotation %d outside 0..%d" % (step.rotation, len(relator) - 1))
        return word[:pos] + relator_variant(relator, step.inverse, step.rotation) + word[pos:]
    if step.kind == "cancel":
        if not 0 <= pos < len(word) - 1:
            raise ScriptError("no letter pair at position %d of a word of length %d"
                              % (pos, len(word)))
        if word[pos + 1] != invert_letter(word[pos]):
            raise ScriptError("letters %s at %d do not cancel"
                              % (format_letters(word[pos:pos + 2]), pos))
        return word[:pos] + word[pos + 2:]
    if step.kind == "insert":
        if step.letter is None or step.letter[0] not in generators:
            raise ScriptError("cannot insert undeclared generator %s" % (step.letter,))
        if not 0 <= pos <= len(word):
            raise ScriptError("position %d outside 0..%d" % (pos, len(word)))
        return word[:pos] + (step.letter, invert_letter(step.letter)) + word[pos:]
    raise ScriptError("unknown step kind %r" % step.kind)


def check_derivation(script: DerivationScript) -> DerivationResult:
    """
    Replay every step. Valid iff each move is legal and the final word is
    the claimed end word letter for letter after free reduction.
    """
    p = script.presentation
    generators = set(p.generators)
    for label, w in (("start", script.start), ("end", script.end)):
        for name, _ in w:
            if name not in generators:
                return DerivationResult(False, "%s word mentions undeclared generator %s"
                                        % (label, name), None, tuple(script.start))
    relators = _relator_table(p)
    word = tuple(script.start)
    for i, step in enumerate(script.steps):
        try:
            word = apply_step(word, step, relators, generators)
        except ScriptError as e:
            _log.debug("derivation rejected at step %d: %s", i, e)
            return DerivationResult(False, "step %d (%s): %s" % (i, step, e), i, word)
    if free_reduce(word) != free_reduce(script.end):
        return DerivationResult(False, "final word %s differs from the claimed %s"
                                % (format_letters(word), format_letters(script.end)),
                                None, word)
    return DerivationResult(True, "%d steps" % len(script.steps), None, word)


def reduce_with_steps(word: Sequence[Letter], start: int = 0,
                      stop: int = None) -> Tuple[Word, List[Step]]:
    """
    Freely reduce ``word[start:stop]`` in place, recording each cancellation.
    """
    word = list(word)
    stop = len(word) if stop is None else stop
    steps = []
    i = start
    while i < stop - 1:
        if word[i + 1] == invert_letter(word[i]):
            steps.append(cancel_step(i))
            del word[i:i + 2]
            stop -= 2
            i = max(i - 1, start)
        else:
            i += 1
    return tuple(word), steps


class _Variant(NamedTuple):
    tag: str
    inverse: bool
    rotation: int
    letters: Word


def relator_variants(p: Presentation) -> List[_Variant]:
    """
    Every distinct rotation of every uniquely tagged relator and its inverse.
    """
    seen = set()
    result = []
    for tag, relator in _relator_table(p).items():
        if relator is None:
            continue
        for inverse in (False, True):
            for k in range(len(relator)):
                letters = relator_variant(relator, inverse, k)
                if letters not in seen:
                    seen.add(letters)
                    result.append(_Variant(tag, inverse, k, letters))
    return result


def bounded_search(p: Presentation, word: Sequence[Letter], depth: int = SEARCH_DEPTH,
                   max_nodes: int = SEARCH_NODES) -> Optional[DerivationScript]:
    """
    Look for a script reducing ``word`` to the empty word.

    States are freely reduced words; a move inserts a relator variant
    where it cancels against a neighbour and then reduces. Shorter words
    are expanded first. None means inconclusive, not false.
    """
    start = tuple(word)
    reduced, steps = reduce_with_steps(start)
    if not reduced:
        return DerivationScript(p, start, tuple(steps), ())
    variants = relator_variants(p)
    frontier = [(len(reduced), 0, 0, reduced)]
    parents = {reduced: (None, tuple(steps))}
    counter = 0
    while frontier and counter < max_nodes:
        _, level, _, current = heapq.heappop(frontier)
        if level >= depth:
            continue
        for pos in range(len(current) + 1):
            before = current[pos - 1] if pos > 0 else None
            after = current[pos] if pos < len(current) else None
            for variant in variants:
                if invert_letter(variant.letters[0]) != before and \
                        invert_letter(variant.letters[-1]) != after:
                    continue
                grown = current[:pos] + variant.letters + current[pos:]
                result, cancels = reduce_with_steps(grown)
                if result in parents:
                    continue
                first = rel_step(pos, variant.tag, variant.inverse, variant.rotation)
                move = (first,) + tuple(cancels)
                parents[result] = (current, move)
                if not result:
                    script = DerivationScript(p, start, _collect(parents, result), ())
                    _log.debug("search closed after %d expansions", counter)
                    return script
                counter += 1
                heapq.heappush(frontier, (len(result), level + 1, counter, result))
    _log.warning("search for %s inconclusive after %d expansions",
                 format_letters(start), counter)
    return None


def _collect(parents, word) -> Tuple[Step, ...]:
    chunks = []
    while word is not None:
        previous, move = parents[word]
        chunks.append(move)
        word = previous
    return tuple(step for chunk in reversed(chunks) for step in chunk)


Move = Tuple  # ("rewrite", pos, old, new) | ("cancel", pos, letter) | ("insert", pos, letter)


class DerivationBuilder(object):
    """
    Records a derivation while it is being written down.

    ``rewrite`` replaces a subword U by V whenever V U^-1 is a rotation of
    a relator or of its inverse, and expands into one relator insertion
    followed by cancellations. The result must still pass check_derivation.
    """

    def __init__(self, presentation: Presentation, start: Sequence[Letter]):
        self.presentation = presentation
        self.start = tuple(start)
        self.word = list(start)
        self.steps = []  # type: List[Step]
        self._variants = {v.letters: v for v in relator_variants(presentation)}
        self._relators = _relator_table(presentation)
        self._generators = set(presentation.generators)

    def __len__(self):
        return len(self.word)

    def _push(self, step: Step):
        try:
            self.word = list(apply_step(tuple(self.word), step, self._relators, self._generators))
        except ScriptError as e:
            raise ScriptError(str(e), len(self.steps)) from None
        self.steps.append(step)

    def relator(self, at: int, tag: str, inverse: bool = False, rotation: int = 0):
        self._push(rel_step(at, tag, inverse, rotation))
        return self

    def cancel(self, at: int, letter: Letter = None):
        if letter is not None and tuple(self.word[at:at + 1]) != (letter,):
            raise ScriptError("expected %s at %d in %s" % (
                format_letters((letter,)), at, format_letters(self.word)), len(self.steps))
        self._push(cancel_step(at))
        return self

    def insert(self, at: int, letter: Letter):
        self._push(insert_step(at, letter))
        return self

    def free_insert(self, at: int, word: Sequence[Letter]):
        """
        Insert w w^-1 letter by letter.
        """
        for k, letter in enumerate(word):
            self.insert(at + k, letter)
        return self

    def rewrite(self, at: int, old: Sequence[Letter], new: Sequence[Letter]):
        old, new = tuple(old), tuple(new)
        if tuple(self.word[at:at + len(old)]) != old:
            raise ScriptError("expected %s at %d in %s" % (
                format_letters(old), at, format_letters(self.word)), len(self.steps))
        key = new + invert_word(old)
        variant = self._variants.get(key)
        if variant is None:
            raise ScriptError("%s -> %s is not a relator move" % (
                format_letters(old), format_letters(new)), len(self.steps))
        self.relator(at, variant.tag, variant.inverse, variant.rotation)
        n, m = len(new), len(old)
        for pos in range(at + n + m - 1, at + n - 1, -1):
            self.cancel(pos)
        return self

    def reduce(self, start: int = 0, stop: int = None):
        _, steps = reduce_with_steps(self.word, start, stop)
        for step in steps:
            self._push(step)
        return self

    def commute_into(self, at: int, target: Sequence[Letter]):
        """
        Reorder ``word[at:at+len(target)]`` into ``target`` by swapping
        adjacent letters with commutation relators.
        """
        target = tuple(target)
        segment = self.word[at:at + len(target)]
        if sorted(segment) != sorted(target):
            raise ScriptError("%s is not a permutation of %s" % (
                format_letters(segment), format_letters(target)), len(self.steps))
        slots = {}
        order = []
        for letter in segment:
            candidates = [i for i, t in enumerate(target)
                          if t == letter and i not in slots.values()]
            slots[len(order)] = candidates[0]
            order.append(candidates[0])
        changed = True
        while changed:
            changed = False
            for i in range(len(order) - 1):
                if order[i] > order[i + 1]:
                    a, b = self.word[at + i], self.word[at + i + 1]
                    self.rewrite(at + i, (a, b), (b, a))
                    order[i], order[i + 1] = order[i + 1], order[i]
                    changed = True
        return self

    def play(self, moves: Sequence[Move], mapping: Dict[str, str], offset: int = 0):
        for move in moves:
            kind, pos = move[0], move[1] + offset
            if kind == "rewrite":
                self.rewrite(pos, symbolic_word(move[2], mapping), symbolic_word(move[3], mapping))
            elif kind == "cancel":
                self.cancel(pos, symbolic_word(move[2], mapping)[0])
            else:
                self.insert(pos, symbolic_word(move[2], mapping)[0])
        return self

    def unplay(self, moves: Sequence[Move], mapping: Dict[str, str], offset: int = 0):
        """
        Undo ``moves`` as if they had been played at ``offset``.
        """
        for move in reversed(moves):
            kind, pos = move[0], move[1] + offset
            if kind == "rewrite":
                self.rewrite(pos, symbolic_word(move[3], mapping), symbolic_word(move[2], mapping))
            elif kind == "cancel":
                self.insert(pos, symbolic_word(move[2], mapping)[0])
            else:
                self.cancel(pos, symbolic_word(move[2], mapping)[0])
        return self

    def build(self, end: Sequence[Letter] = None) -> DerivationScript:
        end = tuple(self.word) if end is None else tuple(end)
        return DerivationScript(self.presentation, self.start, tuple(self.steps), end)


def symbolic_word(text: str, mapping: Dict[str, str]) -> Word:
    """
    Spell a word with one character per letter: lowercase symbols map
    through ``mapping``, uppercase ones are their inverses.
    """
    letters = []
    for char in text.replace(" ", ""):
        lower = char.lower()
        if lower not in mapping:
            raise ScriptError("symbol %r has no generator" % char)
        letters.append((mapping[lower], 1 if char == lower else -1))
    return tuple(letters)


def format_script(script: DerivationScript, embed_presentation: bool = True) -> str:
    lines = []
    if embed_presentation:
        lines.append(format_machine(script.presentation).rstrip("\n"))
    lines.append("start %s" % format_letters(script.start))
    lines.extend(str(step) for step in script.steps)
    lines.append("end %s" % format_letters(script.end))
    return "\n".join(lines) + "\n"


def _parse_step(fields: List[str], lineno: int) -> Step:
    try:
        if fields[0] == "rel" and len(fields) >= 4 and fields[2] == "at":
            tag, pos = fields[1], int(fields[3])
            rest = fields[4:]
            inverse = False
            rotation = 0
            if rest[:1] == ["inv"]:
                inverse = True
                rest = rest[1:]
            if rest[:1] == ["rot"] and len(rest) == 2:
                rotation = int(rest[1])
                rest = []
            if rest:
                raise ScriptError("line %d: trailing %s" % (lineno, " ".join(rest)))
            return rel_step(pos, tag, inverse, rotation)
        if fields[0] == "cancel" and len(fields) == 2:
            return cancel_step(int(fields[1]))
        if fields[0] == "insert" and len(fields) == 4 and fields[2] == "at":
            letters = parse_word(fields[1])
            if len(letters) != 1:
                raise ScriptError("line %d: insert takes one letter, got %s" % (lineno, fields[1]))
            return insert_step(int(fields[3]), letters[0])
    except (ValueError, IndexError) as e:
        if isinstance(e, ScriptError):
            raise
        raise ScriptError("line %d: %s" % (lineno, e)) from None
    raise ScriptError("line %d: cannot parse step %r" % (lineno, " ".join(fields)))


def parse_script(text: str, presentation: Presentation = None) -> DerivationScript:
    """
    Read a script. Presentation records in the text take precedence over
    ``presentation``; one of the two must declare the generators.
    """
    start = end = None
    steps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        try:
            if kind == "start":
                start = parse_word(rest)
            elif kind == "end":
                end = parse_word(rest)
            elif kind == "step":
                steps.append(_parse_step(rest.split(), lineno))
        except WordSyntaxError as e:
            raise ScriptError("line %d: %s" % (lineno, e)) from None
    if start is None:
        raise ScriptError("script has no start line")
    if end is None:
        raise ScriptError("script has no end line")
    try:
        embedded = parse_machine(text)
    except PresentationError as e:
        raise ScriptError(str(e)) from None
    if embedded.generators:
        presentation = embedded
    if presentation is None:
        raise ScriptError("script declares no generators and no presentation was given")
    return DerivationScript(presentation, start, tuple(steps), end)


def read_script(path: str, presentation: Presentation = None) -> DerivationScript:
    with open(path) as f:
        return parse_script(f.read(), presentation)
