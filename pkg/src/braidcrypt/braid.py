"""Braid words in the Artin generators.

A braid on ``n`` strands is stored as a tuple of signed generator indices:
``i`` stands for sigma_i and ``-i`` for its inverse, with ``1 <= |i| <= n-1``.
Words are never simplified here; equality of braids is decided by
:mod:`braidcrypt.garside`.

Product convention: ``u * v`` means "``u`` on top, then ``v``".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "BraidWord",
    "identity",
    "multiply",
    "inverse",
    "permutation_of",
    "delete_strands",
    "embed",
    "random_word",
    "exponent_sum",
    "parse_braid",
    "format_braid",
    "lower_block",
    "upper_block",
]


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"strand count must be positive, got {self.n}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.n:
                raise ValueError(f"letter {x} out of range for B{self.n}")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __invert__(self) -> BraidWord:
        return inverse(self)

    def __pow__(self, k: int) -> BraidWord:
        if k < 0:
            return BraidWord(self.n, inverse(self).letters * -k)
        return BraidWord(self.n, self.letters * k)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)

    def is_identity_word(self) -> bool:
        return not self.letters

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def generators_used(self) -> set[int]:
        return {abs(x) for x in self.letters}


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


def multiply(u: BraidWord, v: BraidWord) -> BraidWord:
    """Concatenate two words (``u`` on top of ``v``)."""
    if u.n != v.n:
        raise ValueError(f"strand mismatch: B{u.n} vs B{v.n}")
    return BraidWord(u.n, u.letters + v.letters)


def inverse(u: BraidWord) -> BraidWord:
    return BraidWord(u.n, tuple(-x for x in reversed(u.letters)))


def exponent_sum(u: BraidWord) -> int:
    """Image of ``u`` under the abelianization B_n -> Z."""
    return sum(1 if x > 0 else -1 for x in u.letters)


def permutation_of(u: BraidWord) -> tuple[int, ...]:
    """Strand permutation of ``u``, 1-based.

    Entry ``i-1`` is the bottom position reached by the strand that starts at
    top position ``i``. With this convention
    ``permutation_of(u * v)[i] == permutation_of(v)[permutation_of(u)[i] - 1]``.
    """
    order = list(range(u.n))  # strand sitting at each position
    for x in u.letters:
        i = abs(x) - 1
        order[i], order[i + 1] = order[i + 1], order[i]
    image = [0] * u.n
    for position, strand in enumerate(order):
        image[strand] = position + 1
    return tuple(image)


def delete_strands(u: BraidWord, keep: Iterable[int]) -> BraidWord:
    """Erase every strand whose top position is not in ``keep`` (1-based).

    Crossings between two kept strands survive, renumbered by the rank of the
    kept strands at the moment of crossing; all other crossings are dropped.
    """
    keep_set = set(keep)
    if not keep_set:
        raise ValueError("keep set must be nonempty")
    if not keep_set <= set(range(1, u.n + 1)):
        raise ValueError(f"keep set {sorted(keep_set)} not inside 1..{u.n}")
    kept = [s in keep_set for s in range(1, u.n + 1)]
    order = list(range(u.n))  # strand (0-based top position) at each position
    out = []
    for x in u.letters:
        i = abs(x) - 1
        s1, s2 = order[i], order[i + 1]
        if kept[s1] and kept[s2]:
            rank = sum(1 for pos in range(i) if kept[order[pos]])
            out.append(rank + 1 if x > 0 else -(rank + 1))
        order[i], order[i + 1] = s2, s1
    return BraidWord(len(keep_set), tuple(out))


def embed(u: BraidWord, n: int, offset: int = 0) -> BraidWord:
    """Re-embed ``u`` into B_n, shifting every generator index by ``offset``."""
    if offset < 0 or u.n + offset > n:
        raise ValueError(f"cannot embed B{u.n} at offset {offset} into B{n}")
    return BraidWord(n, tuple(x + offset if x > 0 else x - offset for x in u.letters))


def lower_block(n: int) -> range:
    """Generators of LB_n = <sigma_1 .. sigma_{n/2-1}>."""
    _check_even(n)
    return range(1, n // 2)


def upper_block(n: int) -> range:
    """Generators of UB_n = <sigma_{n/2+1} .. sigma_{n-1}>."""
    _check_even(n)
    return range(n // 2 + 1, n)


def _check_even(n: int) -> None:
    if n < 4 or n % 2:
        raise ValueError(f"LB/UB need an even strand count >= 4, got {n}")


def random_word(
    n: int,
    length: int,
    generators: Iterable[int] | None = None,
    rng_seed: int | np.random.Generator | None = None,
) -> BraidWord:
    """Draw ``length`` letters i.i.d. uniform over ``{+-i : i in generators}``.

    ``generators=None`` means all of 1..n-1. Deterministic for an integer seed.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if generators is None:
        gens = list(range(1, n))
    else:
        gens = sorted(set(generators))
    if length == 0:
        return identity(n)
    if not gens:
        raise ValueError("empty generator subset")
    if any(g < 1 or g >= n for g in gens):
        raise ValueError(f"generator subset {gens} out of range for B{n}")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    idx = rng.integers(0, len(gens), size=length)
    signs = rng.integers(0, 2, size=length) * 2 - 1
    return BraidWord(n, tuple(int(gens[i]) * int(s) for i, s in zip(idx, signs)))


_BRAID_RE = re.compile(r"^\s*B(\d+):(.*)$")


def parse_braid(text: str) -> BraidWord:
    """Parse the ``B<n>: i j -k`` text format."""
    m = _BRAID_RE.match(text)
    if not m:
        raise ValueError(f"not a braid: {text!r}")
    n = int(m.group(1))
    body = m.group(2).split()
    try:
        letters = tuple(int(tok) for tok in body)
    except ValueError:
        raise ValueError(f"bad letter in {text!r}") from None
    return BraidWord(n, letters)


def format_braid(u: BraidWord) -> str:
    if not u.letters:
        return f"B{u.n}:"
    return f"B{u.n}: " + " ".join(str(x) for x in u.letters)
