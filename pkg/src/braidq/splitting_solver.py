"""
Splitting extensions of a finite permutation group by the abelian layers of P_n/Gamma_k.

Given lifts ``L(g)`` of the group elements into B_n/Gamma_k, the pure elements
``f(g, h) = L(g) L(h) L(gh)^-1`` form a 2-cocycle with values in a signed permutation module.
A cochain ``d`` with ``f(g, h) = d(g) + g.d(h) - d(gh)`` turns the lifts into a homomorphism
``g -> d(g)^-1 L(g)``. For k = 3 this is done twice: first over the pair layer, then over the
central triple layer.

The solver only writes down the equations for products ``x * s`` with ``s`` a generator: if those
hold then, by the cocycle identity, every equation does. Values of ``d`` are propagated along a
breadth-first spanning tree, so the unknowns are just ``d(s)`` for the generators, and the module
splits into independent blocks along the orbits of its basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence, Union

from .finite_groups import PermRep
from .intlin import solve_integer
from .nilpotent_nf import PureNF, nf_inv, tables
from .perm_core import PairIdx, act_pair, triple_sign
from .quotient_group import QElem, q_inv, q_mul


class _Unsolvable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNSOLVABLE"

    def __bool__(self) -> bool:
        return False


UNSOLVABLE = _Unsolvable()


class ModuleNotInvariant(ValueError):
    pass


class SplittingFailed(ValueError):
    """The coboundary equation has no integer solution at the named stage."""

    def __init__(self, stage: str, message: str = ""):
        self.stage = stage
        super().__init__(message or f"the extension does not split at the {stage} stage")


Vector = tuple[int, ...]


@dataclass(frozen=True)
class GModule:
    """A signed permutation module: ``g . b_i = sign * b_dst`` with ``action[g][i] = (dst, sign)``.

    ``coords`` are the positions of the basis vectors inside the full pair or triple vector.
    """
    level: Literal["pairs", "triples"]
    labels: tuple
    coords: tuple[int, ...]
    action: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def act(self, g: int, v: Sequence[int]) -> Vector:
        out = [0] * self.rank
        for i, x in enumerate(v):
            if x:
                dst, s = self.action[g][i]
                out[dst] += s * x
        return tuple(out)

    def orbits(self, gens: Sequence[int]) -> list[list[int]]:
        seen: set[int] = set()
        blocks = []
        for i in range(self.rank):
            if i in seen:
                continue
            block = [i]
            seen.add(i)
            for x in block:
                for s in gens:
                    y = self.action[s][x][0]
                    if y not in seen:
                        seen.add(y)
                        block.append(y)
            blocks.append(sorted(block))
        return blocks


def pair_module(rep: PermRep, basis: Sequence[PairIdx] | None = None) -> GModule:
    tb = tables(rep.degree)
    basis = tuple(tb.pairs if basis is None else basis)
    pos = {e: i for i, e in enumerate(basis)}
    action = []
    for p in rep.images:
        row = []
        for e in basis:
            img = act_pair(p, e)
            if img not in pos:
                raise ModuleNotInvariant(f"A{e} is sent outside the chosen basis")
            row.append((pos[img], 1))
        action.append(tuple(row))
    return GModule("pairs", basis, tuple(tb.pidx[e] for e in basis), tuple(action))


def triple_module(rep: PermRep) -> GModule:
    tb = tables(rep.degree)
    action = []
    for p in rep.images:
        inv = p.inverse()
        row = []
        for t in tb.triples:
            x, y, z = (inv(v) for v in t)
            row.append((tb.tidx[tuple(sorted((x, y, z)))], triple_sign(x, y, z)))
        action.append(tuple(row))
    return GModule("triples", tb.triples, tuple(range(tb.T)), tuple(action))


@dataclass
class Cocycle:
    """Lazily evaluated cocycle; ``f(g, h)`` is a vector over the module basis."""
    rep: PermRep
    module: GModule
    fn: Callable[[int, int], Vector]
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, g: int, h: int) -> Vector:
        key = (g, h)
        if key not in self._cache:
            self._cache[key] = self.fn(g, h)
        return self._cache[key]

    def identity_defect(self, g: int, h: int, l: int) -> Vector:
        """g.f(h,l) - f(gh,l) + f(g,hl) - f(g,h); zero for a cocycle."""
        T = self.rep.group.table
        a = self.module.act(g, self(h, l))
        return tuple(w - x + y - z for w, x, y, z in zip(a, self(T[g][h], l), self(g, T[h][l]), self(g, h)))


Cochain = dict[int, Vector]
ModuleSelector = Union[Literal["pairs", "triples"], Sequence[PairIdx]]


def section_lifts(rep: PermRep, k: int) -> list[QElem]:
    n = rep.degree
    return [QElem(n, k, p, PureNF.identity(n, k)) for p in rep.images]


def restricted_cocycle(rep: PermRep, k: int, module_selector: ModuleSelector = "pairs",
                       lifts: Sequence[QElem] | None = None) -> tuple[GModule, Cocycle]:
    """
    The cocycle of the lifts (default: positive permutation braids) with values in the selected
    module. Coordinates outside the module must vanish; otherwise the lifts are not homomorphic
    modulo the module and ValueError is raised on evaluation.
    """
    if lifts is None:
        lifts = section_lifts(rep, k)
    if len(lifts) != rep.group.order:
        raise ValueError("one lift per group element is required")
    for g, L in enumerate(lifts):
        if L.pi != rep.images[g] or L.k != k:
            raise ValueError(f"lift of element {g} does not project to its permutation")
    if module_selector == "pairs":
        M = pair_module(rep)
    elif module_selector == "triples":
        M = triple_module(rep)
    else:
        M = pair_module(rep, list(module_selector))
    inverses = {}
    T = rep.group.table
    coords = set(M.coords)
    level = M.level

    def fn(g: int, h: int) -> Vector:
        gh = T[g][h]
        if gh not in inverses:
            inverses[gh] = q_inv(lifts[gh])
        x = q_mul(q_mul(lifts[g], lifts[h]), inverses[gh]).p
        if level == "pairs":
            full, other = x.a, ()
        else:
            full, other = x.c, x.a
        if any(other) or any(v for i, v in enumerate(full) if v and i not in coords):
            raise ValueError(f"f({g}, {h}) = {x} does not lie in the module")
        return tuple(full[i] for i in M.coords)

    return M, Cocycle(rep, M, fn)


def _gens(rep: PermRep) -> list[int]:
    out = []
    for s in rep.group.gens:
        if s != 0 and s not in out:
            out.append(s)
    return out


def solve_coboundary(M: GModule, f: Cocycle) -> Cochain | _Unsolvable:
    """
    An integer cochain d with f(g, h) = d(g) + g.d(h) - d(gh), or UNSOLVABLE.

    Deterministic: unknowns are the values on the generators, solved block by block with the
    free coordinates of the echelon form set to zero.
    """
    G = f.rep.group
    gens = _gens(f.rep)
    tree = G.words()
    order = _bfs_order(tree)
    tree_edges = {(x, s) for g, (x, s) in enumerate(tree) if g}
    d: dict[int, list[int]] = {g: [0] * M.rank for g in range(G.order)}
    for block in M.orbits(gens):
        local = {b: i for i, b in enumerate(block)}
        width = len(block)
        nvar = width * len(gens)
        gpos = {s: j for j, s in enumerate(gens)}

        def unknown(s: int) -> list[tuple[dict[int, int], int]]:
            base = gpos[s] * width
            return [({base + i: 1}, 0) for i in range(width)]

        def act(g: int, form):
            out = [({}, 0)] * width
            for i, (row, c) in enumerate(form):
                dst, sgn = M.action[g][block[i]]
                out[local[dst]] = ({v: sgn * x for v, x in row.items()}, sgn * c)
            return out

        def fval(x: int, s: int) -> list[int]:
            v = f(x, s)
            return [v[b] for b in block]

        def combine(d_x, acted, fv):
            out = []
            for (r1, c1), (r2, c2), fc in zip(d_x, acted, fv):
                row = dict(r1)
                for v, x in r2.items():
                    row[v] = row.get(v, 0) + x
                out.append(({v: x for v, x in row.items() if x}, c1 + c2 - fc))
            return out

        zero = [({}, 0)] * width
        forms = {0: zero}
        for g in order[1:]:
            x, s = tree[g]
            forms[g] = unknown(s) if x == 0 else combine(forms[x], act(x, unknown(s)), fval(x, s))
        eqs = []
        for x in range(G.order):
            for s in gens:
                if x == 0 or (x, s) in tree_edges:
                    continue
                lhs = combine(forms[x], act(x, unknown(s)), fval(x, s))
                for (r1, c1), (r2, c2) in zip(lhs, forms[G.table[x][s]]):
                    row = dict(r1)
                    for v, y in r2.items():
                        row[v] = row.get(v, 0) - y
                    row = {v: y for v, y in row.items() if y}
                    rhs = c2 - c1
                    if row or rhs:
                        eqs.append((row, rhs))
        sol = solve_integer(eqs, nvar)
        if sol is None:
            return UNSOLVABLE
        for g in range(G.order):
            for i, (row, c) in enumerate(forms[g]):
                d[g][block[i]] = c + sum(sol[v] * y for v, y in row.items())
    return {g: tuple(v) for g, v in d.items()}


def _bfs_order(tree: list[tuple[int, int]]) -> list[int]:
    children: dict[int, list[int]] = {}
    for g, (x, _) in enumerate(tree):
        if g:
            children.setdefault(x, []).append(g)
    out = [0]
    for g in out:
        out.extend(children.get(g, []))
    return out


def coboundary_defect(M: GModule, f: Cocycle, d: Cochain, g: int, h: int) -> Vector:
    gh = f.rep.group.table[g][h]
    a = M.act(g, d[h])
    return tuple(x + y - z - w for x, y, z, w in zip(d[g], a, d[gh], f(g, h)))


def _embed(M: GModule, v: Vector, n: int, k: int) -> PureNF:
    tb = tables(n)
    if M.level == "pairs":
        a = [0] * tb.P
        for i, x in zip(M.coords, v):
            a[i] = x
        return PureNF(n, k, tuple(a), (0,) * tb.T)
    c = [0] * tb.T
    for i, x in zip(M.coords, v):
        c[i] = x
    return PureNF(n, k, (0,) * tb.P, tuple(c))


def correct_lifts(M: GModule, d: Cochain, lifts: Sequence[QElem]) -> list[QElem]:
    """g -> d(g)^-1 L(g)."""
    out = []
    for g, L in enumerate(lifts):
        out.append(q_mul(QElem.pure(nf_inv(_embed(M, d[g], L.n, L.k))), L))
    return out


def is_homomorphic(rep: PermRep, images: Sequence[QElem]) -> bool:
    T = rep.group.table
    G = rep.group.order
    return all(q_mul(images[g], images[h]) == images[T[g][h]] for g in range(G) for h in range(G))


def build_section(rep: PermRep, k: int, lifts: Sequence[QElem] | None = None,
                  module: ModuleSelector = "pairs") -> list[QElem]:
    """
    A homomorphic section over the group of ``rep`` in B_n/Gamma_k, checked on every product.

    ``lifts`` and ``module`` allow splitting over a G-invariant part of the pair layer when the
    given lifts are already homomorphic modulo that part.
    """
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    current = list(lifts) if lifts is not None else section_lifts(rep, k)
    M, f = restricted_cocycle(rep, k, module, current)
    d = solve_coboundary(M, f)
    if d is UNSOLVABLE:
        raise SplittingFailed("pairs")
    current = correct_lifts(M, d, current)
    if k == 3:
        M, f = restricted_cocycle(rep, 3, "triples", current)
        d = solve_coboundary(M, f)
        if d is UNSOLVABLE:
            raise SplittingFailed("triples")
        current = correct_lifts(M, d, current)
    if not is_homomorphic(rep, current):
        raise AssertionError("corrected lifts failed the product check")
    return current
