"""Word algebra for involutory quandles.

A word is a flat tuple of 1-based generator ids, read as a sequence of right
translations applied left to right: acting on ``a`` by ``(g1, g2)`` means
``(a > g1) > g2``.  The empty word acts as the identity.  Nested exponent
expressions are represented by :class:`NestedTerm` and reduced to flat words
with :func:`flatten`.

Everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

Word = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    """A presentation generator: 1-based id plus a display name."""

    id: int
    name: str

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError(f"generator id must be >= 1, got {self.id}")


@dataclass(frozen=True)
class NestedTerm:
    """``base ^ (t1 t2 ... tk)`` where each ``ti`` is a generator id or a
    nested term, grouped left-associated."""

    base: int
    tower: tuple[Union["NestedTerm", int], ...]


def word(letters: Iterable[int] | str) -> Word:
    """Build a word from an iterable of generator ids or a digit string.

    ``word("212")`` is convenient shorthand for ``(2, 1, 2)`` when all
    generator ids are single digits.
    """
    if isinstance(letters, str):
        return tuple(int(c) for c in letters)
    return tuple(letters)


def reverse(x: Word) -> Word:
    """The word written backwards."""
    return x[::-1]


def expand_power(x: Word, n: int) -> Word:
    """``x`` repeated ``n`` times for n > 0, the empty word for n = 0, and
    the reversal of ``x`` repeated -n times for n < 0."""
    if n >= 0:
        return x * n
    return x[::-1] * (-n)


def flatten(t: NestedTerm) -> tuple[int, Word]:
    """Rewrite a nested exponent tower in left-associated form.

    A factor ``y ^ Z`` appearing in an exponent contributes the letters
    ``reverse(Z) y Z``, applied recursively bottom-up, so the result is a
    plain word acting on the base generator.
    """
    out: list[int] = []
    for item in t.tower:
        if isinstance(item, NestedTerm):
            base, sub = flatten(item)
            out.extend(sub[::-1])
            out.append(base)
            out.extend(sub)
        else:
            out.append(item)
    return t.base, tuple(out)


def free_reduce(x: Word) -> Word:
    """Cancel adjacent equal letters to a fixpoint.

    Each letter acts as an involution, so doubled letters act as the
    identity; the reduced form is the normal form of the word as an
    operator.
    """
    out: list[int] = []
    for g in x:
        if out and out[-1] == g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def apply_word(q, a: int, x: Word) -> int:
    """Act on element ``a`` of the finite quandle ``q`` by the word ``x``.

    Letters are generator ids, resolved through ``q.gen_elements``; the fold
    is left-associated.  Raises ValueError on an unknown generator id.
    """
    table = q.table
    gens = q.gen_elements
    k = len(gens)
    for g in x:
        if not 1 <= g <= k:
            raise ValueError(f"unknown generator id {g}")
        a = table[a][gens[g - 1]]
    return int(a)
