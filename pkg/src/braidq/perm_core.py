"""
Permutations of {1, ..., n} and the S_n actions on the pair basis and the signed triple basis.

Products are read left to right: ``compose(p, q)`` applies ``p`` first and then ``q``, so
``compose(p, q)(x) == q(p(x))``. This is the convention under which the permutation image of a
concatenated braid word is the product of the per-letter transpositions in reading order, and under
which the pair action ``t . A_{i,j} = A_{t^-1(i), t^-1(j)}`` is a left action matching conjugation
in the braid group.

All strand labels are 1-indexed.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union


@dataclass(frozen=True)
class Perm:
    """A permutation of {1..n}; ``images[x-1]`` is the image of x."""
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of {{1..{n}}}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Perm:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Perm:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= n or x in seen:
                    raise ValueError(f"bad cycle {tuple(cyc)} for n={n}")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Perm:
        """
        Parse cycle notation such as ``"(1,2,3)(4,5)"``; ``"()"`` is the identity.

        >>> Perm.parse("(1,2,3)(4,5)", 6).images
        (2, 3, 1, 5, 4, 6)
        """
        compact = re.sub(r"\s+", "", text)
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", compact):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [tuple(int(x) for x in body.split(",")) for body in re.findall(r"\(([^()]*)\)", compact) if body]
        if n is None:
            n = max((max(c) for c in cycles), default=1)
        return cls.from_cycles(n, cycles)

    def inverse(self) -> Perm:
        inv = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Perm(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles including fixed points, each starting at its smallest element."""
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if im[a] > im[b])

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __pow__(self, k: int) -> Perm:
        base = self if k >= 0 else self.inverse()
        result = Perm.identity(self.n)
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def __str__(self) -> str:
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in parts)

    def __repr__(self) -> str:
        return f"Perm({self.n}, {self})"


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return Perm(tuple(q.images[x - 1] for x in p.images))


@dataclass(frozen=True)
class CycleProfile:
    lengths: tuple[int, ...]   # sorted ascending, fixed points included as 1s
    fixed_points: int

    @property
    def order(self) -> int:
        return reduce(math.lcm, self.lengths, 1)

    @property
    def has_transposition(self) -> bool:
        return 2 in self.lengths


def cycle_profile(p: Perm) -> CycleProfile:
    lengths = tuple(sorted(len(c) for c in p.cycles()))
    return CycleProfile(lengths, lengths.count(1))


# -- bases ---------------------------------------------------------------------------------------

PairIdx = tuple[int, int]
TripleIdx = tuple[int, int, int]


@dataclass(frozen=True)
class SignedTriple:
    idx: TripleIdx
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        i, j, k = self.idx
        if not i < j < k:
            raise ValueError(f"triple must be strictly increasing: {self.idx}")

    def __neg__(self) -> SignedTriple:
        return SignedTriple(self.idx, -self.sign)

    def __str__(self) -> str:
        return ("" if self.sign > 0 else "-") + "a%d,%d,%d" % self.idx


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[PairIdx, ...]:
    """The pair basis in lexicographic order."""
    return tuple(itertools.combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[TripleIdx, ...]:
    return tuple(itertools.combinations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[PairIdx, int]:
    return {e: i for i, e in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict[TripleIdx, int]:
    return {t: i for i, t in enumerate(triples(n))}


def make_pair(i: int, j: int) -> PairIdx:
    if i == j:
        raise ValueError("a pair needs two distinct strands")
    return (i, j) if i < j else (j, i)


def act_pair(t: Perm, e: PairIdx) -> PairIdx:
    """``t . A_{i,j} = A_{t^-1(i), t^-1(j)}``."""
    inv = t.inverse()
    return make_pair(inv(e[0]), inv(e[1]))


def triple_sign(a: int, b: int, c: int) -> int:
    """
    Sign of the commutator [A_{a,b}, A_{b,c}] relative to alpha on the sorted triple.

    Around a triple i<j<k the three pairs are cyclically ordered ij -> jk -> ik -> ij and the
    commutator of consecutive pairs is +alpha_{ijk}. [A_{ab}, A_{bc}] is +alpha exactly when
    (a, b, c) is an even rearrangement of (i, j, k).
    """
    inversions = (a > b) + (a > c) + (b > c)
    return 1 if inversions % 2 == 0 else -1


def act_triple(t: Perm, a: SignedTriple) -> SignedTriple:
    """``t . alpha_{ijk} = [A_{t^-1 i, t^-1 j}, A_{t^-1 j, t^-1 k}]`` expressed in B-hat'."""
    inv = t.inverse()
    x, y, z = (inv(v) for v in a.idx)
    return SignedTriple(tuple(sorted((x, y, z))), a.sign * triple_sign(x, y, z))


Seed = Union[PairIdx, SignedTriple]


def act(t: Perm, seed: Seed) -> Seed:
    if isinstance(seed, SignedTriple):
        return act_triple(t, seed)
    return act_pair(t, seed)


def orbit(gens: Sequence[Perm], seed: Seed) -> list[Seed]:
    """Breadth-first closure of ``seed`` under ``gens`` (applied in the order given)."""
    sizes = {g.n for g in gens}
    if len(sizes) > 1:
        raise ValueError("generators act on different numbers of points")
    out = [seed]
    seen = {seed}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = act(g, x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out
