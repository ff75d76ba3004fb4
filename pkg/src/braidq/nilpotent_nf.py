"""
Normal forms in P_n/Gamma_2(P_n) and P_n/Gamma_3(P_n).

An element is stored as ``prod_{pairs e, lex order} A_e^{a_e} * prod_t alpha_t^{c_t}`` where
``alpha_{i,j,k} = [A_{i,j}, A_{j,k}]`` and ``[x, y] = x y x^-1 y^-1``. The alpha part is central
(class 2), so the group law is ``(a, c)(b, d) = (a + b, c + d + B(a, b))`` with the bilinear
collection term ``B(a, b) = sum_{e > f} a_e b_f [A_e, A_f]``.

For k = 2 the triple part is carried but always zero.

Conjugation by braids is handled through the positive permutation braids ``s(p)`` (see
:func:`braidq.braid_words.section_word`): every pure word is rewritten, one letter at a time, into a
product of the elements ``s(p) A_{j,j+1}^{+-1} s(p)^-1``, whose normal forms are memoised.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .braid_words import AWord, BraidWord, NonPureWord, crossing_numbers, section_word
from .perm_core import (
    Perm, PairIdx, TripleIdx, act_pair, compose, make_pair, pair_index, pairs, triple_index,
    triple_sign, triples,
)

CONVENTION = "braidq-nf/1: compose=left-to-right; A_ij=s_{j-1}..s_{i+1}s_i^2s_{i+1}^-1..s_{j-1}^-1; " \
             "alpha_ijk=[A_ij,A_jk]; pair order lex; section=insertion-sort positive lift"


def comm_pairs(e: PairIdx, f: PairIdx) -> dict[TripleIdx, int]:
    """[A_e, A_f] modulo Gamma_3 as a sparse alpha-vector."""
    shared = set(e) & set(f)
    if len(shared) != 1:
        return {}
    (y,) = shared
    x = e[0] if e[1] == y else e[1]
    z = f[0] if f[1] == y else f[1]
    return {tuple(sorted((x, y, z))): triple_sign(x, y, z)}


class _Tables:
    """Per-n lookup tables: indices, commutator entries and the sigma_j conjugation images."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = pairs(n)
        self.triples = triples(n)
        self.pidx = pair_index(n)
        self.tidx = triple_index(n)
        self.P = len(self.pairs)
        self.T = len(self.triples)
        # lower[e] = [(f, t, sign)] for f < e sharing one strand with e, [A_e, A_f] = sign * alpha_t
        self.lower: list[list[tuple[int, int, int]]] = [[] for _ in range(self.P)]
        # upper[f] = [(e, t, sign)] for e > f, same meaning
        self.upper: list[list[tuple[int, int, int]]] = [[] for _ in range(self.P)]
        for ei, e in enumerate(self.pairs):
            for fi, f in enumerate(self.pairs):
                if fi >= ei:
                    continue
                for t, s in comm_pairs(e, f).items():
                    self.lower[ei].append((fi, self.tidx[t], s))
                    self.upper[fi].append((ei, self.tidx[t], s))


@lru_cache(maxsize=None)
def tables(n: int) -> _Tables:
    return _Tables(n)


@dataclass(frozen=True)
class PureNF:
    n: int
    k: int
    a: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if self.k not in (2, 3):
            raise ValueError("k must be 2 or 3")
        tb = tables(self.n)
        if len(self.a) != tb.P or len(self.c) != tb.T:
            raise ValueError("vector lengths do not match n")
        if self.k == 2 and any(self.c):
            raise ValueError("k=2 normal forms have no triple part")

    @classmethod
    def identity(cls, n: int, k: int) -> PureNF:
        tb = tables(n)
        return cls(n, k, (0,) * tb.P, (0,) * tb.T)

    @classmethod
    def generator(cls, n: int, k: int, e: PairIdx, exp: int = 1) -> PureNF:
        tb = tables(n)
        a = [0] * tb.P
        a[tb.pidx[e]] = exp
        return cls(n, k, tuple(a), (0,) * tb.T)

    @classmethod
    def from_maps(cls, n: int, k: int, a: Mapping[PairIdx, int] = {}, c: Mapping[TripleIdx, int] = {}) -> PureNF:
        tb = tables(n)
        av = [0] * tb.P
        cv = [0] * tb.T
        for e, v in a.items():
            av[tb.pidx[make_pair(*e)]] += v
        for t, v in c.items():
            cv[tb.tidx[tuple(t)]] += v
        return cls(n, k, tuple(av), tuple(cv))

    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.c)

    def a_map(self) -> dict[PairIdx, int]:
        return {e: v for e, v in zip(tables(self.n).pairs, self.a) if v}

    def c_map(self) -> dict[TripleIdx, int]:
        return {t: v for t, v in zip(tables(self.n).triples, self.c) if v}

    def to_json(self) -> dict:
        return {
            "a": {"A%d,%d" % e: v for e, v in self.a_map().items()},
            "c": {"a%d,%d,%d" % t: v for t, v in self.c_map().items()},
        }

    @classmethod
    def from_json(cls, n: int, k: int, obj: Mapping) -> PureNF:
        a = {tuple(int(x) for x in key[1:].split(",")): int(v) for key, v in obj.get("a", {}).items()}
        c = {tuple(int(x) for x in key[1:].split(",")): int(v) for key, v in obj.get("c", {}).items()}
        for key in a:
            if len(key) != 2 or not 1 <= key[0] < key[1] <= n:
                raise ValueError(f"bad pair key {key}")
        for key in c:
            if len(key) != 3 or not 1 <= key[0] < key[1] < key[2] <= n:
                raise ValueError(f"bad triple key {key}")
        return cls.from_maps(n, k, a, c)

    def __mul__(self, other: PureNF) -> PureNF:
        return nf_mul(self, other)

    def __pow__(self, m: int) -> PureNF:
        return nf_pow(self, m)

    def __str__(self) -> str:
        parts = [f"A{i},{j}^{v}" for (i, j), v in self.a_map().items()]
        parts += [f"a{i},{j},{k}^{v}" for (i, j, k), v in self.c_map().items()]
        return " ".join(parts) if parts else "1"


def _check(p: PureNF, q: PureNF) -> None:
    if p.n != q.n or p.k != q.k:
        raise ValueError(f"mismatched normal forms: (n={p.n}, k={p.k}) vs (n={q.n}, k={q.k})")


def collection_term(n: int, a, b) -> list[int]:
    """B(a, b) = sum over e > f of a_e b_f [A_e, A_f]."""
    tb = tables(n)
    out = [0] * tb.T
    for ei, x in enumerate(a):
        if not x:
            continue
        for fi, t, s in tb.lower[ei]:
            y = b[fi]
            if y:
                out[t] += s * x * y
    return out


def nf_mul(p: PureNF, q: PureNF) -> PureNF:
    _check(p, q)
    a = tuple(x + y for x, y in zip(p.a, q.a))
    if p.k == 2:
        return PureNF(p.n, 2, a, p.c)
    corr = collection_term(p.n, p.a, q.a)
    c = tuple(x + y + z for x, y, z in zip(p.c, q.c, corr))
    return PureNF(p.n, 3, a, c)


def nf_inv(p: PureNF) -> PureNF:
    a = tuple(-x for x in p.a)
    if p.k == 2:
        return PureNF(p.n, 2, a, p.c)
    corr = collection_term(p.n, p.a, p.a)
    return PureNF(p.n, 3, a, tuple(-x + y for x, y in zip(p.c, corr)))


def nf_pow(p: PureNF, m: int) -> PureNF:
    """(a, c)^m = (m a, m c + m(m-1)/2 B(a, a)), valid for all integers m."""
    a = tuple(m * x for x in p.a)
    if p.k == 2:
        return PureNF(p.n, 2, a, p.c)
    half = m * (m - 1) // 2
    corr = collection_term(p.n, p.a, p.a)
    return PureNF(p.n, 3, a, tuple(m * x + half * y for x, y in zip(p.c, corr)))


def _mul_generator(n: int, k: int, a: list[int], c: list[int], f: int, y: int) -> None:
    """In place: (a, c) <- (a, c) * A_f^y."""
    if k == 3:
        for ei, t, s in tables(n).upper[f]:
            x = a[ei]
            if x:
                c[t] += s * x * y
    a[f] += y


def collect(aw: AWord, k: int) -> PureNF:
    tb = tables(aw.n)
    a = [0] * tb.P
    c = [0] * tb.T
    for e, y in aw.letters:
        _mul_generator(aw.n, k, a, c, tb.pidx[e], y)
    return PureNF(aw.n, k, tuple(a), tuple(c))


# -- permutation actions -------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _relabel(t: Perm) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...], tuple]:
    """
    Index maps for the relabelling automorphism A_e -> A_{t.e}: the pair map, the signed triple
    map, and the list of (e, e', t, sign) with e < e' whose images come out of lexicographic order.
    """
    n = t.n
    tb = tables(n)
    pmap = tuple(tb.pidx[act_pair(t, e)] for e in tb.pairs)
    inv = t.inverse()
    tmap = []
    for (i, j, k) in tb.triples:
        x, y, z = inv(i), inv(j), inv(k)
        tmap.append((tb.tidx[tuple(sorted((x, y, z)))], triple_sign(x, y, z)))
    reorder = []
    for ei in range(tb.P):
        for fi, tt, s in tb.lower[ei]:
            # e' = ei > f = fi in the old order; the images are swapped iff pmap[fi] > pmap[ei]
            if pmap[fi] > pmap[ei]:
                for t2, s2 in comm_pairs(tb.pairs[pmap[fi]], tb.pairs[pmap[ei]]).items():
                    reorder.append((fi, ei, tb.tidx[t2], s2))
    return pmap, tuple(tmap), tuple(reorder)


def _act_c(t: Perm, c) -> list[int]:
    _, tmap, _ = _relabel(t)
    out = [0] * len(c)
    for ti, v in enumerate(c):
        if v:
            dst, s = tmap[ti]
            out[dst] += s * v
    return out


def act_nf(t: Perm, p: PureNF) -> PureNF:
    """
    The automorphism of P_n/Gamma_k induced by relabelling generators A_e -> A_{t.e}.

    On the abelianisation and on Gamma_2/Gamma_3 this is the S_n action on B and B-hat'; the
    triple part also picks up the collection term from re-sorting the relabelled generators.
    """
    if t.n != p.n:
        raise ValueError("size mismatch")
    pmap, _, reorder = _relabel(t)
    a = [0] * len(p.a)
    for ei, v in enumerate(p.a):
        a[pmap[ei]] = v
    if p.k == 2:
        return PureNF(p.n, 2, tuple(a), p.c)
    c = _act_c(t, p.c)
    for e1, e2, tt, s in reorder:
        x, y = p.a[e1], p.a[e2]
        if x and y:
            c[tt] += s * x * y
    return PureNF(p.n, 3, tuple(a), tuple(c))


# -- conjugation by braids -----------------------------------------------------------------------

def _sigma_conj_aword(n: int, j: int, e: PairIdx, sign: int = 1) -> AWord:
    """Exact A-word for s_j^sign A_e s_j^-sign in P_n."""
    r, s = e
    A = lambda x, y, z=1: ((x, y), z)
    if sign > 0:
        if j == r - 1:
            letters = (A(r, s, -1), A(r - 1, s), A(r, s))
        elif j == r and s > r + 1:
            letters = (A(r + 1, s),)
        elif j == s - 1 and s - 1 > r:
            letters = (A(s - 1, s), A(r, s - 1), A(s - 1, s, -1))
        elif j == s:
            letters = (A(r, s + 1),)
        else:
            letters = (A(r, s),)
    else:
        if s == j and r < j:
            letters = (A(j, j + 1, -1), A(r, j + 1), A(j, j + 1))
        elif s == j + 1 and r < j:
            letters = (A(r, j),)
        elif r == j and s > j + 1:
            letters = (A(j, s), A(j + 1, s), A(j, s, -1))
        elif r == j + 1:
            letters = (A(j, s),)
        else:
            letters = (A(r, s),)
    return AWord(n, letters)


@lru_cache(maxsize=None)
def _sigma_conj_table(n: int, k: int) -> tuple[tuple[tuple[int, tuple[tuple[int, int], ...]], ...], ...]:
    """table[j][e] = (index of the pair of s_j A_e s_j^-1, sparse triple part) for j = 1..n-1."""
    tb = tables(n)
    out = [()]
    for j in range(1, n):
        row = []
        for e in tb.pairs:
            nf = collect(_sigma_conj_aword(n, j, e), k)
            (fi,) = [i for i, v in enumerate(nf.a) if v]
            row.append((fi, tuple((t, v) for t, v in enumerate(nf.c) if v)))
        out.append(tuple(row))
    return tuple(out)


_conj_lock = threading.Lock()
_conj_cache: dict[tuple, tuple[int, tuple[int, ...]]] = {}


def conj_section_generator(n: int, k: int, pi: Perm, ei: int) -> tuple[int, tuple[int, ...]]:
    """
    Normal form of s(pi) A_e s(pi)^-1 as (pair index of its A-part, dense triple part).

    Computed by conjugating with the letters of s(pi) from the inside out; memoised.
    """
    key = (n, k, pi.images, ei)
    hit = _conj_cache.get(key)
    if hit is not None:
        return hit
    tb = tables(n)
    table = _sigma_conj_table(n, k)
    letters = section_word(pi).letters
    fi = ei
    c = [0] * tb.T
    for j, _ in reversed(letters):
        tj = Perm.transposition(n, j, j + 1)
        if k == 3:
            c = _act_c(tj, c)
            for t, v in table[j][fi][1]:
                c[t] += v
        fi = table[j][fi][0]
    result = (fi, tuple(c))
    with _conj_lock:
        _conj_cache[key] = result
    return result


def conj_section(pi: Perm, p: PureNF) -> PureNF:
    """s(pi) p s(pi)^-1 in P_n/Gamma_k."""
    if pi.n != p.n:
        raise ValueError("size mismatch")
    if p.k == 2:
        return act_nf(pi, p)
    base = act_nf(pi, PureNF(p.n, 3, p.a, (0,) * len(p.c)))
    c = list(base.c)
    for ti, v in enumerate(_act_c(pi, p.c)):
        c[ti] += v
    for ei, x in enumerate(p.a):
        if x:
            _, extra = conj_section_generator(p.n, 3, pi, ei)
            for ti, v in enumerate(extra):
                if v:
                    c[ti] += x * v
    return PureNF(p.n, 3, base.a, tuple(c))


def sigma_step(k: int, a: list[int], c: list[int], pi: Perm, j: int, e: int) -> Perm:
    """
    In place: replace the element (a, c) * s(pi) by (a, c) * s(pi) * s_j^e, rewritten as
    (a', c') * s(pi'); returns pi'. Only the cases where the positive lift does not simply extend
    contribute a pure factor s(rho) A_{j,j+1}^{+-1} s(rho)^-1.
    """
    n = pi.n
    inv = pi.inverse()
    longer = inv(j) < inv(j + 1)
    new_pi = compose(pi, Perm.transposition(n, j, j + 1))
    if e > 0 and longer or e < 0 and not longer:
        return new_pi
    base = tables(n).pidx[(j, j + 1)]
    if e > 0:
        fi, extra = conj_section_generator(n, k, new_pi, base)
        sign = 1
    else:
        fi, extra = conj_section_generator(n, k, pi, base)
        sign = -1
    _mul_generator(n, k, a, c, fi, sign)
    if k == 3:
        for ti, v in enumerate(extra):
            if v:
                c[ti] += sign * v
    return new_pi


def nf_of_pure_word(w: BraidWord, k: int) -> PureNF:
    if k == 2:
        return PureNF(w.n, 2, crossing_numbers(w), (0,) * tables(w.n).T)
    tb = tables(w.n)
    a = [0] * tb.P
    c = [0] * tb.T
    pi = Perm.identity(w.n)
    for j, e in w.letters:
        pi = sigma_step(k, a, c, pi, j, e)
    if not pi.is_identity():
        raise NonPureWord(f"word is not pure (permutation {pi})")
    return PureNF(w.n, k, tuple(a), tuple(c))


# -- exact rewriting into A-words ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _conj_section_aword(n: int, images: tuple[int, ...], e: PairIdx) -> AWord:
    word = AWord(n, ((e, 1),))
    for j, _ in reversed(section_word(Perm(images)).letters):
        letters = []
        for f, y in word.letters:
            piece = _sigma_conj_aword(n, j, f)
            letters.extend(piece.letters if y > 0 else piece.inverse().letters)
        word = AWord(n, tuple(letters)).reduced()
    return word


def pure_to_aword(w: BraidWord) -> AWord:
    """Exact rewriting of a pure braid word as a word in the A_{i,j} (Reidemeister-Schreier)."""
    n = w.n
    pi = Perm.identity(n)
    letters: list = []
    for j, e in w.letters:
        inv = pi.inverse()
        longer = inv(j) < inv(j + 1)
        new_pi = compose(pi, Perm.transposition(n, j, j + 1))
        if e > 0 and not longer:
            letters.extend(_conj_section_aword(n, new_pi.images, (j, j + 1)).letters)
        elif e < 0 and longer:
            letters.extend(_conj_section_aword(n, pi.images, (j, j + 1)).inverse().letters)
        pi = new_pi
    if not pi.is_identity():
        raise NonPureWord(f"word is not pure (permutation {pi})")
    return AWord(n, tuple(letters)).reduced()
