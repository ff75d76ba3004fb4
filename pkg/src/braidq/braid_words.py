"""
Words in the Artin generators sigma_i and in the pure braid generators A_{i,j}.

Word syntax: whitespace-separated tokens ``s3``, ``s3^-1`` (any integer exponent is accepted),
``A2,5`` and ``A2,5^-1``. A-tokens are expanded into sigma letters on parse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .perm_core import Perm, PairIdx, make_pair, pairs


class NonPureWord(ValueError):
    pass


class OddCrossingCount(AssertionError):
    pass


Letter = tuple[int, int]   # (generator index, exponent +-1)


def _check_exp(e: int) -> int:
    if e not in (1, -1):
        raise ValueError(f"letter exponent must be +-1, got {e}")
    return e


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for i, e in self.letters:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"generator s{i} out of range for B_{self.n}")
            _check_exp(e)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        return BraidWord(self.n, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e > 0 else f"s{i}^-1" for i, e in self.letters)

    @classmethod
    def parse(cls, text: str, n: int) -> BraidWord:
        return parse_word(text, n)


@dataclass(frozen=True)
class AWord:
    n: int
    letters: tuple[tuple[PairIdx, int], ...] = ()

    def __post_init__(self):
        for (i, j), e in self.letters:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"A{i},{j} out of range for P_{self.n}")
            _check_exp(e)

    def __mul__(self, other: AWord) -> AWord:
        return AWord(self.n, self.letters + other.letters)

    def inverse(self) -> AWord:
        return AWord(self.n, tuple((p, -e) for p, e in reversed(self.letters)))

    def reduced(self) -> AWord:
        out: list[tuple[PairIdx, int]] = []
        for p, e in self.letters:
            if out and out[-1] == (p, -e):
                out.pop()
            else:
                out.append((p, e))
        return AWord(self.n, tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"A{i},{j}" + ("" if e > 0 else "^-1") for (i, j), e in self.letters)


_TOKEN = re.compile(r"^(?:s(\d+)|A(\d+),(\d+))(?:\^(-?\d+))?$")


def parse_word(text: str, n: int) -> BraidWord:
    """
    >>> str(parse_word("s1 s2^-1 A1,3", 3))
    's1 s2^-1 s2 s1 s1 s2^-1'
    """
    letters: list[Letter] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad token {tok!r}")
        power = int(m.group(4)) if m.group(4) is not None else 1
        if m.group(1) is not None:
            i = int(m.group(1))
            piece = [(i, 1 if power > 0 else -1)] * abs(power)
            letters.extend(piece)
        else:
            i, j = int(m.group(2)), int(m.group(3))
            if not 1 <= i < j <= n:
                raise ValueError(f"A{i},{j} out of range for n={n}")
            unit = a_word_expand(AWord(n, (((i, j), 1 if power > 0 else -1),)))
            letters.extend(unit.letters * abs(power))
    return BraidWord(n, tuple(letters))


def perm_of(w: BraidWord) -> Perm:
    """Product of the transpositions (i, i+1) in reading order: x goes to the end position of strand x."""
    pos = list(range(1, w.n + 1))          # pos[p-1] = strand currently at position p
    for i, _ in w.letters:
        pos[i - 1], pos[i] = pos[i], pos[i - 1]
    images = [0] * w.n
    for p, strand in enumerate(pos, start=1):
        images[strand - 1] = p
    return Perm(tuple(images))


def crossing_numbers(w: BraidWord) -> tuple[int, ...]:
    """
    Exponent vector of a pure braid in P_n/Gamma_2(P_n) over the lexicographically ordered A_{i,j}.

    Every letter adds its exponent to the pair of original strand labels meeting at the crossing;
    the per-pair totals are even for a pure word and halved.
    """
    pos = list(range(1, w.n + 1))
    counts: dict[PairIdx, int] = {}
    for i, e in w.letters:
        a, b = pos[i - 1], pos[i]
        key = make_pair(a, b)
        counts[key] = counts.get(key, 0) + e
        pos[i - 1], pos[i] = b, a
    if pos != list(range(1, w.n + 1)):
        raise NonPureWord(f"word is not pure: strands end at {pos}")
    out = []
    for e in pairs(w.n):
        c = counts.get(e, 0)
        if c % 2:
            raise OddCrossingCount(f"odd crossing count {c} for pair {e}")
        out.append(c // 2)
    return tuple(out)


# -- Artin action on the free group ----------------------------------------------------------------

FreeWord = tuple[int, ...]   # letters +-g for x_g^{+-1}, freely reduced


def free_reduce(letters: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_inverse(w: FreeWord) -> FreeWord:
    return tuple(-x for x in reversed(w))


def artin_images(w: BraidWord) -> list[FreeWord]:
    """
    Images of x_1..x_n under the automorphism induced by w.

    sigma_i sends x_i to x_i x_{i+1} x_i^-1 and x_{i+1} to x_i; the automorphism of a word uv is
    that of u composed with that of v (substitute the images of u into those of v).
    """
    imgs: list[FreeWord] = [(g,) for g in range(1, w.n + 1)]
    for i, e in w.letters:
        a, b = imgs[i - 1], imgs[i]
        if e > 0:
            imgs[i - 1] = free_reduce(a + b + free_inverse(a))
            imgs[i] = a
        else:
            imgs[i - 1] = b
            imgs[i] = free_reduce(free_inverse(b) + a + b)
    return imgs


def artin_equal(u: BraidWord, v: BraidWord) -> bool:
    return u.n == v.n and artin_images(u) == artin_images(v)


# -- sections and A-generators -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _section_letters(images: tuple[int, ...]) -> tuple[Letter, ...]:
    n = len(images)
    arr = list(range(1, n + 1))
    letters = []
    for p in range(1, n):
        q = p
        while q >= 1 and images[arr[q - 1] - 1] > images[arr[q] - 1]:
            arr[q - 1], arr[q] = arr[q], arr[q - 1]
            letters.append((q, 1))
            q -= 1
    return tuple(letters)


def section_word(p: Perm) -> BraidWord:
    """Positive insertion-sort word lifting p; its length is the number of inversions of p."""
    return BraidWord(p.n, _section_letters(p.images))


def a_generator(n: int, i: int, j: int, e: int = 1) -> BraidWord:
    """A_{i,j}^e = (s_{j-1} .. s_{i+1}) s_i^{2e} (s_{i+1}^-1 .. s_{j-1}^-1)."""
    if not 1 <= i < j <= n:
        raise ValueError(f"A{i},{j} out of range for n={n}")
    head = tuple((m, 1) for m in range(j - 1, i, -1))
    tail = tuple((m, -1) for m in range(i + 1, j))
    return BraidWord(n, head + ((i, e), (i, e)) + tail)


def a_word_expand(aw: AWord) -> BraidWord:
    letters: list[Letter] = []
    for (i, j), e in aw.letters:
        letters.extend(a_generator(aw.n, i, j, e).letters)
    return BraidWord(aw.n, tuple(letters))


def word_from_letters(n: int, spec: Sequence[int]) -> BraidWord:
    """Build a word from signed generator indices, e.g. ``[2, -1]`` for s2 s1^-1."""
    return BraidWord(n, tuple((abs(x), 1 if x > 0 else -1) for x in spec))
