"""
Arithmetic in B_n/Gamma_k(P_n) for k in {2, 3}.

An element is ``p * s(pi)`` with ``p`` a pure normal form and ``s(pi)`` the positive lift of the
permutation ``pi``. Products use the cocycle ``f(pi, rho) = s(pi) s(rho) s(pi rho)^-1`` and
conjugation of pure parts by ``s(pi)``.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .braid_words import BraidWord, section_word
from .nilpotent_nf import (
    CONVENTION, PureNF, conj_section, nf_inv, nf_mul, sigma_step, tables,
)
from .perm_core import Perm, compose

INFINITE = math.inf


@dataclass(frozen=True)
class QElem:
    n: int
    k: int
    pi: Perm
    p: PureNF

    def __post_init__(self):
        if self.pi.n != self.n or self.p.n != self.n or self.p.k != self.k:
            raise ValueError("inconsistent QElem fields")

    @classmethod
    def identity(cls, n: int, k: int) -> QElem:
        return cls(n, k, Perm.identity(n), PureNF.identity(n, k))

    @classmethod
    def pure(cls, p: PureNF) -> QElem:
        return cls(p.n, p.k, Perm.identity(p.n), p)

    def is_identity(self) -> bool:
        return self.pi.is_identity() and self.p.is_identity()

    def __mul__(self, other: QElem) -> QElem:
        return q_mul(self, other)

    def __pow__(self, m: int) -> QElem:
        return q_pow(self, m)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "perm": str(self.pi), **self.p.to_json(), "convention": CONVENTION}

    @classmethod
    def from_json(cls, obj: dict) -> QElem:
        n, k = int(obj["n"]), int(obj["k"])
        if obj.get("convention", CONVENTION) != CONVENTION:
            raise ValueError("unknown normal-form convention")
        return cls(n, k, Perm.parse(obj["perm"], n), PureNF.from_json(n, k, obj))


def _run_letters(k: int, p: PureNF, pi: Perm, letters) -> tuple[PureNF, Perm]:
    a, c = list(p.a), list(p.c)
    for j, e in letters:
        pi = sigma_step(k, a, c, pi, j, e)
    return PureNF(p.n, k, tuple(a), tuple(c)), pi


def q_of_word(w: BraidWord, k: int) -> QElem:
    p, pi = _run_letters(k, PureNF.identity(w.n, k), Perm.identity(w.n), w.letters)
    return QElem(w.n, k, pi, p)


_cocycle_lock = threading.Lock()
_cocycle_cache: dict[tuple, PureNF] = {}


def cocycle(n: int, k: int, pi: Perm, rho: Perm) -> PureNF:
    """f(pi, rho) = s(pi) s(rho) s(pi rho)^-1 in P_n/Gamma_k; memoised."""
    key = (n, k, pi.images, rho.images)
    hit = _cocycle_cache.get(key)
    if hit is not None:
        return hit
    f, _ = _run_letters(k, PureNF.identity(n, k), pi, section_word(rho).letters)
    with _cocycle_lock:
        _cocycle_cache[key] = f
    return f


def _check(g: QElem, h: QElem) -> None:
    if g.n != h.n or g.k != h.k:
        raise ValueError(f"mismatched quotients: (n={g.n}, k={g.k}) vs (n={h.n}, k={h.k})")


def q_mul(g: QElem, h: QElem) -> QElem:
    _check(g, h)
    moved = conj_section(g.pi, h.p)
    p = nf_mul(g.p, nf_mul(moved, cocycle(g.n, g.k, g.pi, h.pi)))
    return QElem(g.n, g.k, compose(g.pi, h.pi), p)


def q_inv(g: QElem) -> QElem:
    # s(pi)^-1 = r s(pi^-1), hence (p s(pi))^-1 = r (s(pi^-1) p^-1 s(pi^-1)^-1) s(pi^-1)
    rho = g.pi.inverse()
    r, _ = _run_letters(g.k, PureNF.identity(g.n, g.k), Perm.identity(g.n), section_word(g.pi).inverse().letters)
    return QElem(g.n, g.k, rho, nf_mul(r, conj_section(rho, nf_inv(g.p))))


def q_pow(g: QElem, m: int) -> QElem:
    base = g if m >= 0 else q_inv(g)
    result = QElem.identity(g.n, g.k)
    for _ in range(abs(m)):
        result = q_mul(result, base)
    return result


def q_order(g: QElem) -> int | float:
    """Order of g, or INFINITE. Finite orders divide the order of the permutation."""
    r = g.pi.order()
    if not q_pow(g, r).is_identity():
        return INFINITE
    for d in range(1, r + 1):
        if r % d == 0 and q_pow(g, d).is_identity():
            return d
    raise AssertionError("unreachable")


def reduce_k(g: QElem) -> QElem:
    """Image of an element of B_n/Gamma_3 in B_n/Gamma_2."""
    if g.k == 2:
        return g
    zero = (0,) * tables(g.n).T
    return QElem(g.n, 2, g.pi, PureNF(g.n, 2, g.p.a, zero))


def lift_k(g: QElem) -> QElem:
    """Lift of an element of B_n/Gamma_2 to B_n/Gamma_3 with zero triple part."""
    if g.k == 3:
        return g
    return QElem(g.n, 3, g.pi, PureNF(g.n, 3, g.p.a, g.p.c))
