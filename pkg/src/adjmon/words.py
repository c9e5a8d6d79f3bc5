"""Words over the indexed alphabet {eta_k, eps_k} and their textual form.

A word is a tuple of :class:`Generator` letters; the empty tuple is the
monoid identity.  The text format is space-optional tokens ``h<k>`` /
``e<k>`` (Unicode aliases ``η<k>`` / ``ε<k>`` accepted on input), with the
bare token ``1`` standing for the empty word.  ``degree`` is the additive
measure that makes every rewrite step strictly decreasing.
"""

from __future__ import annotations

from typing import NamedTuple

ETA = "h"
EPS = "e"

_KIND_ALIASES = {"h": ETA, "η": ETA, "e": EPS, "ε": EPS}


class Generator(NamedTuple):
    """One letter: an eta or an eps with a natural-number index."""

    kind: str  # ETA or EPS
    index: int


Word = tuple[Generator, ...]

EMPTY: Word = ()


def eta(k: int) -> Generator:
    return Generator(ETA, k)


def eps(k: int) -> Generator:
    return Generator(EPS, k)


def concat(u: Word, v: Word) -> Word:
    """Free-monoid multiplication: u followed by v."""
    return u + v


def degree(w: Word) -> int:
    """Sum of (index + 1) over the letters; additive under concat."""
    return sum(g.index + 1 for g in w)


def letter_key(g: Generator) -> tuple[int, int]:
    """Sort key putting eta letters before eps letters, then by index."""
    return (0 if g.kind == ETA else 1, g.index)


def word_key(w: Word) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Deterministic enumeration order: by length, then letterwise."""
    return (len(w), tuple(letter_key(g) for g in w))


class WordSyntaxError(ValueError):
    """Raised on malformed word text; carries the byte offset of the fault."""

    def __init__(self, message: str, text: str, position: int):
        self.offset = len(text[:position].encode("utf-8"))
        super().__init__(f"{message} (byte offset {self.offset})")


def parse(text: str) -> Word:
    """Parse word text; inverse of :func:`render` on canonical output.

    Rejects malformed tokens and a ``1`` mixed with letter tokens; the
    raised :class:`WordSyntaxError` points at the first bad token.
    """
    letters: list[Generator] = []
    identity_seen = False
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        start = pos
        ch = text[pos]
        if ch == "1":
            pos += 1
            if identity_seen or letters:
                raise WordSyntaxError("token '1' mixed with other tokens", text, start)
            identity_seen = True
            continue
        kind = _KIND_ALIASES.get(ch)
        if kind is None:
            raise WordSyntaxError(f"unexpected character {ch!r}", text, start)
        pos += 1
        digits = pos
        while pos < n and "0" <= text[pos] <= "9":
            pos += 1
        if pos == digits:
            raise WordSyntaxError(f"missing index after {ch!r}", text, start)
        if identity_seen:
            raise WordSyntaxError("token '1' mixed with other tokens", text, start)
        letters.append(Generator(kind, int(text[digits:pos])))
    if not letters and not identity_seen:
        raise WordSyntaxError("empty input (write '1' for the identity)", text, 0)
    return tuple(letters)


def render(w: Word) -> str:
    """Space-separated ASCII tokens; the empty word renders as ``1``."""
    if not w:
        return "1"
    return " ".join(f"{g.kind}{g.index}" for g in w)
