"""Free-group words on two letters and their OSp(1|2) representations.

Words use the case convention: 'A', 'B' are the generators, 'a', 'b' their
inverses.  Parsing never reduces; free reduction is a separate normalizer.
"""
from __future__ import annotations

from .errors import MembershipError, WordSyntaxError
from .osp import OSpElement, check_membership, inverse
from .superlinalg import SuperMatrix, smul

ALPHABET = "AaBb"
_INVERSE = {"A": "a", "a": "A", "B": "b", "b": "B"}


class FreeWord:
    """A word over {A, a, B, b}; lowercase letters denote inverses."""

    __slots__ = ("letters",)

    def __init__(self, letters=""):
        s = "".join(letters)
        for i, ch in enumerate(s):
            if ch not in ALPHABET:
                raise WordSyntaxError(f"unexpected character {ch!r}", i)
        self.letters = s

    def __str__(self):
        return self.letters

    def __repr__(self):
        return f"FreeWord({self.letters!r})"

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord("".join(_INVERSE[ch] for ch in reversed(self.letters)))

    def reduced(self) -> "FreeWord":
        """Freely reduce: repeatedly cancel adjacent inverse pairs."""
        stack = []
        for ch in self.letters:
            if stack and stack[-1] == _INVERSE[ch]:
                stack.pop()
            else:
                stack.append(ch)
        return FreeWord("".join(stack))


def parse_word(s: str) -> FreeWord:
    """Parse a word string; whitespace is allowed, reduction is not applied."""
    letters = []
    for i, ch in enumerate(s):
        if ch.isspace():
            continue
        if ch not in ALPHABET:
            raise WordSyntaxError(f"unexpected character {ch!r}", i)
        letters.append(ch)
    return FreeWord(letters)


class RepresentationPair:
    """Images of the two free generators under a representation."""

    __slots__ = ("image_a", "image_b")

    def __init__(self, image_a: OSpElement, image_b: OSpElement, validate=True):
        if validate:
            for name, g in (("A", image_a), ("B", image_b)):
                ok, bad = check_membership(g.matrix)
                if not ok:
                    raise MembershipError(f"image of {name} fails membership: {bad}")
        self.image_a = image_a
        self.image_b = image_b

    @property
    def n(self):
        return self.image_a.n

    @property
    def mode(self):
        return self.image_a.mode

    def to_json(self):
        return {"A": self.image_a.to_json(), "B": self.image_b.to_json()}


def evaluate_word(word, rep: RepresentationPair) -> SuperMatrix:
    """Ordered product of generator images; the empty word gives I."""
    if isinstance(word, str):
        word = parse_word(word)
    images = {
        "A": rep.image_a.matrix,
        "B": rep.image_b.matrix,
        "a": inverse(rep.image_a).matrix,
        "b": inverse(rep.image_b).matrix,
    }
    out = SuperMatrix.identity(rep.n, rep.mode)
    for ch in word.letters:
        out = smul(out, images[ch])
    return out
