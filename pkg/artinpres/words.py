"""
Letter-level free-group words shared by every other module.

A word is a tuple of letters ``(name, e)`` with ``e`` equal to 1 or -1.
The text grammar is a whitespace-separated product of syllables ``name``,
``name^k`` and ``name^-k``; parenthesised groups take an exponent too, so
``(x1 x2 x3)^4`` is a valid word. ``1`` and the empty string are the
empty word.
"""
import re
from typing import Iterable, List, Sequence, Tuple

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

EMPTY_WORD_TEXT = "1"

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\^)\s*(-?\d+)|(\()|(\))|(\S))")


class WordSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            break
        name, caret, exponent, lpar, rpar, junk = match.groups()
        if junk is not None:
            raise WordSyntaxError("unexpected character %r in word %r" % (junk, text))
        if name is not None:
            tokens.append(("name", name))
        elif caret is not None:
            tokens.append(("exp", exponent))
        elif lpar is not None:
            tokens.append(("(", lpar))
        else:
            tokens.append((")", rpar))
        pos = match.end()
    return tokens


def parse_word(text: str) -> Word:
    """
    Parse the word text grammar into a tuple of letters.
    The result is not reduced: ``a a^-1`` gives two letters.
    """
    if text is None:
        return ()
    stripped = text.strip()
    if stripped in ("", EMPTY_WORD_TEXT):
        return ()
    tokens = _tokenize(stripped)
    stack = [[]]  # type: List[List[Letter]]
    last = None  # type: List[Letter]
    for kind, value in tokens:
        if kind == "name":
            last = [(value, 1)]
            stack[-1].extend(last)
        elif kind == "exp":
            if last is None:
                raise WordSyntaxError("exponent without a base in %r" % text)
            k = int(value)
            del stack[-1][len(stack[-1]) - len(last):]
            stack[-1].extend(power_word(tuple(last), k))
            last = None
        elif kind == "(":
            stack.append([])
            last = None
        else:
            if len(stack) == 1:
                raise WordSyntaxError("unbalanced ')' in %r" % text)
            group = stack.pop()
            last = group
            stack[-1].extend(group)
    if len(stack) != 1:
        raise WordSyntaxError("unbalanced '(' in %r" % text)
    return tuple(stack[0])


def to_syllables(word: Sequence[Letter]) -> List[Tuple[str, int]]:
    """
    Merge runs of the same generator into (name, exponent) syllables.
    Zero exponents vanish, so free cancellation across a run is applied.
    """
    syllables = []  # type: List[List]
    for name, e in word:
        if syllables and syllables[-1][0] == name:
            syllables[-1][1] += e
            if syllables[-1][1] == 0:
                syllables.pop()
        else:
            syllables.append([name, e])
    return [(name, e) for name, e in syllables]


def from_syllables(syllables: Iterable[Tuple[str, int]]) -> Word:
    letters = []
    for name, k in syllables:
        sign = 1 if k > 0 else -1
        letters.extend([(name, sign)] * abs(k))
    return tuple(letters)


def format_word(word: Sequence[Letter]) -> str:
    syllables = to_syllables(free_reduce(word))
    if not syllables:
        return EMPTY_WORD_TEXT
    return " ".join(name if k == 1 else "%s^%d" % (name, k) for name, k in syllables)


def format_letters(word: Sequence[Letter]) -> str:
    """
    Print every letter on its own, without merging or reduction.
    Derivation scripts need this to keep positions meaningful.
    """
    if not word:
        return EMPTY_WORD_TEXT
    return " ".join(name if e == 1 else "%s^-1" % name for name, e in word)


def invert_letter(letter: Letter) -> Letter:
    return letter[0], -letter[1]


def invert_word(word: Sequence[Letter]) -> Word:
    return tuple((name, -e) for name, e in reversed(word))


def power_word(word: Sequence[Letter], k: int) -> Word:
    if k >= 0:
        return tuple(word) * k
    return invert_word(word) * (-k)


def free_reduce(word: Sequence[Letter]) -> Word:
    stack = []  # type: List[Letter]
    for letter in word:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def cyclic_reduce(word: Sequence[Letter]) -> Word:
    reduced = free_reduce(word)
    start, stop = 0, len(reduced)
    while stop - start > 1 and reduced[start] == invert_letter(reduced[stop - 1]):
        start += 1
        stop -= 1
    return reduced[start:stop]


def rotate(word: Sequence[Letter], k: int) -> Word:
    """
    Cyclic left rotation by k letters.
    """
    word = tuple(word)
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


def generators_of(word: Iterable[Letter]) -> List[str]:
    seen = []
    for name, _ in word:
        if name not in seen:
            seen.append(name)
    return seen
