"""Cyclic words of partial quotients and their reflection symmetries.

A period word is viewed as a bi-infinite periodic sequence.  A reflection
axis either fixes a letter (an even or odd center, by the letter's parity)
or a gap between two neighbouring letters (an intermediate center).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import InvalidPeriod


class CenterKind(Enum):
    EVEN_ELEMENT = "even"
    ODD_ELEMENT = "odd"
    GAP = "gap"


@dataclass(frozen=True)
class Center:
    """A reflection axis: through the letter at `position`, or through the gap
    between positions `position` and `position + 1` (mod the word length)."""

    kind: CenterKind
    position: int

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "pos": self.position}


@dataclass(frozen=True)
class CyclicWord:
    """Primitive word of positive integers, read up to rotation."""

    letters: tuple[int, ...]

    def __init__(self, letters):
        letters = tuple(letters)
        if not letters:
            raise InvalidPeriod("cyclic word must be nonempty")
        if any(x < 1 for x in letters):
            raise InvalidPeriod(f"letters must be >= 1: {letters}")
        t = len(letters)
        for p in range(1, t):
            if t % p == 0 and all(letters[i] == letters[(i + p) % t] for i in range(t)):
                raise InvalidPeriod(f"{letters} is a power of a shorter word")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def rotated(self, offset: int) -> tuple[int, ...]:
        """The rotation starting at index offset."""
        t = len(self.letters)
        offset %= t
        return self.letters[offset:] + self.letters[:offset]


def is_regular_palindrome(word: Sequence[int]) -> bool:
    """True iff the finite word equals its own reversal."""
    if not word:
        raise ValueError("word must be nonempty")
    w = tuple(word)
    return w == w[::-1]


def is_cyclic_palindrome(word: CyclicWord | Sequence[int]) -> bool:
    """True iff some rotation equals the reversal.

    Implemented by searching the reversed word inside the doubled word.
    """
    letters = word.letters if isinstance(word, CyclicWord) else tuple(word)
    t = len(letters)
    doubled = letters + letters
    rev = letters[::-1]
    return any(doubled[i : i + t] == rev for i in range(t))


def centers(word: CyclicWord) -> list[Center]:
    """All reflection axes of the bi-infinite periodic extension.

    There are 2t candidates: one through each letter, one through each gap.
    The result is empty exactly when the word is not a cyclic palindrome.
    """
    w = word.letters
    t = len(w)
    found: list[Center] = []
    for i in range(t):
        # reflection through the letter at i: j <-> 2i - j
        if all(w[j] == w[(2 * i - j) % t] for j in range(t)):
            kind = CenterKind.EVEN_ELEMENT if w[i] % 2 == 0 else CenterKind.ODD_ELEMENT
            found.append(Center(kind, i))
    for i in range(t):
        # reflection through the gap between i and i+1: j <-> 2i + 1 - j
        if all(w[j] == w[(2 * i + 1 - j) % t] for j in range(t)):
            found.append(Center(CenterKind.GAP, i))
    return found


@dataclass(frozen=True)
class ShapeDecomposition:
    """Rotation offsets (if any) exhibiting the three symmetric shapes:
    a regular palindrome; a regular palindrome followed by one even letter;
    a regular palindrome followed by one odd letter.  The palindrome part may
    be empty for one-letter words."""

    regular_rotation: Optional[int]
    even_extra: Optional[int]
    odd_extra: Optional[int]


def shape_decompose(word: CyclicWord) -> ShapeDecomposition:
    """Scan all rotations for the palindrome / palindrome-plus-letter shapes."""
    t = len(word.letters)
    regular = even_extra = odd_extra = None
    for r in range(t):
        rot = word.rotated(r)
        if regular is None and rot == rot[::-1]:
            regular = r
        head = rot[:-1]
        if head == head[::-1]:
            if rot[-1] % 2 == 0:
                if even_extra is None:
                    even_extra = r
            elif odd_extra is None:
                odd_extra = r
    return ShapeDecomposition(regular, even_extra, odd_extra)


def canonical_rotation(word: CyclicWord) -> tuple[int, ...]:
    """Lexicographically least rotation; a stable dictionary key."""
    return min(word.rotated(r) for r in range(len(word.letters)))


def centers_record(word: CyclicWord) -> dict:
    """JSON record of a word and its reflection axes."""
    return {
        "word": list(word.letters),
        "centers": [c.to_json() for c in centers(word)],
    }
