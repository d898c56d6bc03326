"""Words over named generators.

A word is a finite sequence of (generator name, nonzero exponent) letters,
kept merged: adjacent letters never share a generator.  This is pure syntax;
whether a word is trivial in a given group is the oracle's business
(see :mod:`treegroups.oracles`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

GEN_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

_TOKEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")

Letter = Tuple[str, int]


class WordError(ValueError):
    """Malformed word syntax or a letter over a foreign generator."""


def valid_gen_name(name: str) -> bool:
    return bool(GEN_NAME_RE.match(name))


@dataclass(frozen=True)
class Generator:
    """A named generator tagged with the group it belongs to."""

    name: str
    group_id: str

    def __post_init__(self) -> None:
        if not valid_gen_name(self.name):
            raise WordError(f"invalid generator name: {self.name!r}")


def _merge(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    """Merge adjacent same-generator letters, dropping zero exponents."""
    out: list[Letter] = []
    for name, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (name, merged)
        else:
            out.append((name, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A merged sequence of (generator, exponent) letters."""

    letters: Tuple[Letter, ...] = ()

    @staticmethod
    def of(letters: Iterable[Letter]) -> "Word":
        return Word(_merge(letters))

    @staticmethod
    def gen(name: str, exp: int = 1) -> "Word":
        if exp == 0:
            return Word()
        return Word(((name, exp),))

    @staticmethod
    def identity() -> "Word":
        return Word()

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def letter_length(self) -> int:
        """Total letter count with multiplicity (sum of |exponent|)."""
        return sum(abs(e) for _, e in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if not self.letters:
            return other
        if not other.letters:
            return self
        return Word(_merge(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple((name, -exp) for name, exp in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        n = abs(n)
        out = Word()
        while n:  # binary powering; exponents may be huge
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugated_by(self, t: "Word") -> "Word":
        """t^-1 * self * t."""
        return t.inverse() * self * t

    def gen_names(self) -> Iterator[str]:
        for name, _ in self.letters:
            yield name

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for name, exp in self.letters:
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    @staticmethod
    def parse(text: str) -> "Word":
        """Parse whitespace-separated ``gen^exp`` tokens; "" and "1" are identity."""
        text = text.strip()
        if not text or text == "1":
            return Word()
        letters: list[Letter] = []
        for token in text.split():
            m = _TOKEN_RE.match(token)
            if not m:
                raise WordError(f"bad word token: {token!r}")
            name, exp = m.group(1), m.group(2)
            letters.append((name, 1 if exp is None else int(exp)))
        return Word.of(letters)


IDENTITY = Word()
