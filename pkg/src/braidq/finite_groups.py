"""
Finite groups given by multiplication tables, permutation representations, and the orbit
structure of the pair and triple bases under a permutation group.

Products follow the left-to-right convention of :mod:`braidq.perm_core`: for a permutation
representation, ``table[g][h]`` is the element whose image is ``compose(image(g), image(h))``.
"""
from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

from .perm_core import (
    PairIdx, Perm, SignedTriple, compose, cycle_profile, orbit, pairs, triples,
)

DEFAULT_CAP = 10_000


class CapExceeded(RuntimeError):
    pass


class SignObstruction(ValueError):
    """Some group element sends a basis triple to its own negative."""


@dataclass(frozen=True)
class FinGroup:
    table: tuple[tuple[int, ...], ...]
    gens: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("table must be square and nonempty")
        t = self.table
        if any(t[0][g] != g or t[g][0] != g for g in range(n)):
            raise ValueError("element 0 must be the identity")
        for g in range(n):
            if sorted(t[g]) != list(range(n)):
                raise ValueError("table rows must be permutations (Latin square)")
        if any(not 0 <= s < n for s in self.gens):
            raise ValueError("generator index out of range")
        if len(self.closure(self.gens)) != n:
            raise ValueError("generators do not generate the group")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, g: int) -> int:
        return self.table[g].index(0)

    def element_order(self, g: int) -> int:
        x, m = g, 1
        while x != 0:
            x = self.table[x][g]
            m += 1
        return m

    def closure(self, gens: Sequence[int]) -> list[int]:
        seen = [0]
        found = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.table[x][s]
                if y not in found:
                    found.add(y)
                    seen.append(y)
                    queue.append(y)
        return seen

    def words(self) -> list[tuple[int, int]]:
        """Breadth-first spanning tree from the identity: entry g is (parent, generator) with
        ``parent * generator = g``; the identity has (-1, -1)."""
        tree = [(-1, -1)] * self.order
        found = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in self.gens:
                y = self.table[x][s]
                if y not in found:
                    found.add(y)
                    tree[y] = (x, s)
                    queue.append(y)
        return tree

    def is_abelian(self) -> bool:
        return all(self.table[g][h] == self.table[h][g] for g in range(self.order) for h in range(g))

    def to_json(self) -> dict:
        return {"table": [list(r) for r in self.table], "gens": list(self.gens), "name": self.name}


@dataclass(frozen=True)
class PermRep:
    group: FinGroup
    images: tuple[Perm, ...]

    def __post_init__(self):
        G = self.group
        if len(self.images) != G.order:
            raise ValueError("one image per element is required")
        if len({p.n for p in self.images}) != 1:
            raise ValueError("images must act on the same points")
        if not self.images[0].is_identity():
            raise ValueError("identity must map to the identity permutation")
        for g in range(G.order):
            for h in range(G.order):
                if compose(self.images[g], self.images[h]) != self.images[G.table[g][h]]:
                    raise ValueError(f"not a homomorphism at ({g}, {h})")

    @property
    def degree(self) -> int:
        return self.images[0].n

    def is_faithful(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def gen_images(self) -> list[Perm]:
        return [self.images[s] for s in self.group.gens]

    def index_of(self, p: Perm) -> int:
        return self.images.index(p)


def from_perm_gens(n: int, gens: Sequence[Perm], cap: int = DEFAULT_CAP, name: str = "") -> tuple[FinGroup, PermRep]:
    """Close a list of permutations under composition. Element 0 is the identity; the generators
    keep their given order among the first discovered elements."""
    if not gens:
        raise ValueError("at least one generator is required")
    if any(g.n != n for g in gens):
        raise ValueError(f"all generators must act on {n} points")
    ident = Perm.identity(n)
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(x, s)
            if y not in index:
                if len(elems) >= cap:
                    raise CapExceeded(f"group exceeds the cap of {cap} elements")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    table = tuple(tuple(index[compose(g, h)] for h in elems) for g in elems)
    group = FinGroup(table, tuple(index[s] for s in gens), name)
    return group, PermRep(group, tuple(elems))


def from_table(table: Sequence[Sequence[int]], gens: Sequence[int], name: str = "") -> FinGroup:
    """Group from a user-supplied table; associativity is checked here (permutation closures
    are associative by construction)."""
    t = tuple(tuple(int(x) for x in row) for row in table)
    G = FinGroup(t, tuple(gens), name)
    for g, h, k in itertools.product(range(G.order), repeat=3):
        if t[t[g][h]][k] != t[g][t[h][k]]:
            raise ValueError(f"table is not associative at ({g}, {h}, {k})")
    return G


def regular_rep(G: FinGroup) -> PermRep:
    """
    Degree-|G| representation on the points 1..|G| (point i+1 is element i), g acting by
    x -> x g. Right multiplication is the homomorphism for left-to-right composition.
    """
    images = tuple(Perm(tuple(G.table[x][g] + 1 for x in range(G.order))) for g in range(G.order))
    return PermRep(G, images)


def fixed_point_profile(rep: PermRep) -> int:
    """Largest number of fixed points of a non-identity image (0 for the trivial group)."""
    return max((cycle_profile(p).fixed_points for p in rep.images[1:]), default=0)


# -- common groups --------------------------------------------------------------------------------

def cyclic(m: int) -> FinGroup:
    if m < 1:
        raise ValueError("order must be positive")
    return FinGroup(tuple(tuple((g + h) % m for h in range(m)) for g in range(m)), (1 % m,), f"Z{m}")


def abelian(*orders: int) -> FinGroup:
    """Direct sum Z_{m1} + ... + Z_{mr}; elements in mixed-radix order, first factor fastest."""
    elems = list(itertools.product(*(range(m) for m in reversed(orders))))
    elems = [tuple(reversed(e)) for e in elems]
    idx = {e: i for i, e in enumerate(elems)}
    table = tuple(tuple(idx[tuple((a + b) % m for a, b, m in zip(x, y, orders))] for y in elems) for x in elems)
    gens = []
    for i, m in enumerate(orders):
        unit = tuple(1 % m if j == i else 0 for j in range(len(orders)))
        if idx[unit] != 0:
            gens.append(idx[unit])
    return FinGroup(table, tuple(gens) or (0,), "+".join(f"Z{m}" for m in orders))


def symmetric(n: int) -> tuple[FinGroup, PermRep]:
    gens = [Perm.transposition(n, 1, 2)] if n >= 2 else [Perm.identity(n)]
    if n >= 3:
        gens.append(Perm.from_cycles(n, [tuple(range(1, n + 1))]))
    return from_perm_gens(n, gens, name=f"S{n}")


def load_group(path: str | Path) -> tuple[FinGroup, PermRep | None]:
    """Read ``{"perm_gens": [...], "n": N}`` or ``{"table": [[...]], "gens": [...]}``."""
    obj = json.loads(Path(path).read_text())
    return group_from_json(obj)


def group_from_json(obj: dict) -> tuple[FinGroup, PermRep | None]:
    name = obj.get("name", "")
    if "perm_gens" in obj:
        n = int(obj["n"])
        return from_perm_gens(n, [Perm.parse(s, n) for s in obj["perm_gens"]], name=name)
    if "table" in obj:
        return from_table(obj["table"], obj.get("gens", []), name), None
    raise ValueError("group description needs 'perm_gens' or 'table'")


# -- orbit bases ----------------------------------------------------------------------------------

Level = Literal["pairs", "triples"]


@dataclass(frozen=True)
class Orbit:
    representative: PairIdx | SignedTriple
    members: tuple
    free: bool


@dataclass(frozen=True)
class OrbitBasis:
    level: Level
    orbits: tuple[Orbit, ...] = field(default_factory=tuple)

    def sizes(self) -> list[int]:
        return [len(o.members) for o in self.orbits]

    def all_free(self) -> bool:
        return all(o.free for o in self.orbits)


def orbit_basis(rep: PermRep, level: Level = "pairs") -> OrbitBasis:
    """
    Split the pair basis, or the triple basis up to sign, into orbits under the group.

    Orbits are seeded at the lexicographically smallest uncovered basis element. At the triple
    level a seed ``+alpha_t`` is used and its orbit must not contain ``-alpha_t``.
    """
    gens = rep.gen_images()
    G = rep.group
    n = rep.degree
    out = []
    if level == "pairs":
        covered: set = set()
        for e in pairs(n):
            if e in covered:
                continue
            members = tuple(orbit(gens, e))
            covered.update(members)
            out.append(Orbit(e, members, len(members) == G.order))
    elif level == "triples":
        covered_idx: set = set()
        for t in triples(n):
            if t in covered_idx:
                continue
            seed = SignedTriple(t, 1)
            members = tuple(orbit(gens, seed))
            idxs = [m.idx for m in members]
            if len(set(idxs)) != len(idxs):
                raise SignObstruction(f"a group element sends alpha{t} to its inverse")
            covered_idx.update(idxs)
            out.append(Orbit(seed, members, len(members) == G.order))
    else:
        raise ValueError(f"unknown level {level!r}")
    return OrbitBasis(level, tuple(out))


def coprime_to_factorial(order: int, k: int) -> bool:
    return math.gcd(order, math.factorial(k)) == 1
