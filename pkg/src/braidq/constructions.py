"""
End-to-end embeddings of finite groups in B_n/Gamma_k(P_n), each packaged as a certificate that
can be re-checked from its JSON alone.

* :func:`cayley_embed` uses the regular representation.
* :func:`semidirect_embed` uses the affine action of Z_n x| Z_m on Z_n.
* :func:`torsion_element` looks for an element of a given order, one cycle type at a time.
* :func:`example27` rebuilds the two order-27 embeddings in B_9/Gamma_2 from explicit braid words.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Literal

from . import __version__
from .braid_words import BraidWord, artin_equal, crossing_numbers, parse_word, perm_of
from .finite_groups import (
    FinGroup, PermRep, cyclic, from_perm_gens, orbit_basis, regular_rep,
)
from .nilpotent_nf import CONVENTION, tables
from .perm_core import PairIdx, Perm, compose, pairs
from .quotient_group import INFINITE, QElem, q_inv, q_mul, q_of_word, q_order
from .splitting_solver import SplittingFailed, build_section

SCHEMA = "braidq-cert/1"


class Obstruction(ValueError):
    """A theorem-level reason why the requested embedding is not produced."""


class GcdObstruction(Obstruction):
    pass


class HypothesisViolation(Obstruction):
    pass


class NoSuchT(Obstruction):
    pass


class StageMismatch(AssertionError):
    """A step of a worked example did not reproduce."""


# -- certificates ---------------------------------------------------------------------------------

@dataclass
class EmbeddingCert:
    construction: dict
    elements: list[Perm]
    generators: list[Perm]
    images: list[QElem]
    n: int
    k: int
    notes: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)

    def transcript(self) -> list[dict]:
        return _transcript(self.elements, self.images)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "convention": CONVENTION,
            "construction": self.construction,
            "target": {"n": self.n, "k": self.k},
            "group": {
                "order": self.order,
                "elements": [str(p) for p in self.elements],
                "generators": [str(p) for p in self.generators],
            },
            "images": [img.to_json() for img in self.images],
            "transcript": self.transcript(),
            "notes": list(self.notes),
        }


def _transcript(elements: list[Perm], images: list[QElem]) -> list[dict]:
    index = {p: i for i, p in enumerate(elements)}
    N = len(elements)
    products = sum(1 for g in range(N) for h in range(N)
                   if q_mul(images[g], images[h]) == images[index[compose(elements[g], elements[h])]])
    projections = sum(1 for p, img in zip(elements, images) if img.pi == p)
    orders = sum(1 for p, img in zip(elements, images) if q_order(img) == p.order())
    distinct = len(set(images))
    return [
        {"check": "products", "passed": products == N * N, "count": products},
        {"check": "projection", "passed": projections == N, "count": projections},
        {"check": "orders", "passed": orders == N, "count": orders},
        {"check": "injective", "passed": distinct == N, "count": distinct},
    ]


def make_cert(construction: dict, rep: PermRep, images: list[QElem], k: int, notes=()) -> EmbeddingCert:
    cert = EmbeddingCert(construction, list(rep.images), rep.gen_images(), list(images), rep.degree, k, list(notes))
    bad = [t["check"] for t in cert.transcript() if not t["passed"]]
    if bad:
        raise AssertionError(f"certificate self-check failed: {bad}")
    return cert


@dataclass
class CheckReport:
    ok: bool
    failures: list[str]


def check_cert(obj: dict) -> CheckReport:
    """Re-verify a certificate from its JSON: group closure, every product, projections,
    orders, injectivity, the recorded transcript, and the construction parameters."""
    failures: list[str] = []
    try:
        _check_cert(obj, failures)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        failures.append(f"malformed certificate: {exc!r}")
    return CheckReport(not failures, failures)


def _check_cert(obj: dict, failures: list[str]) -> None:
    if obj.get("schema") != SCHEMA:
        failures.append("unknown schema")
    if obj.get("convention") != CONVENTION:
        failures.append("normal-form convention differs")
    n, k = int(obj["target"]["n"]), int(obj["target"]["k"])
    grp = obj["group"]
    elements = [Perm.parse(s, n) for s in grp["elements"]]
    gens = [Perm.parse(s, n) for s in grp["generators"]]
    if len(set(elements)) != len(elements) or int(grp["order"]) != len(elements):
        failures.append("group element list is inconsistent")
    _, closure = from_perm_gens(n, gens) if gens else (None, None)
    if closure is None or set(closure.images) != set(elements):
        failures.append("generators do not generate the listed elements")
    images = [QElem.from_json(x) for x in obj["images"]]
    if len(images) != len(elements) or any(img.n != n or img.k != k for img in images):
        failures.append("images do not match the target")
        return
    expected = _transcript(elements, images)
    if any(not t["passed"] for t in expected):
        failures.extend(f"check failed: {t['check']}" for t in expected if not t["passed"])
    if obj.get("transcript") != expected:
        failures.append("recorded transcript differs from the recomputed one")
    failures.extend(_check_construction(obj["construction"], n, k, elements))


def _check_construction(con: dict, n: int, k: int, elements: list[Perm]) -> list[str]:
    kind = con.get("kind")
    if kind == "cayley":
        if int(con["order"]) != len(elements) or n != len(elements):
            return ["cayley certificate must act on |G| points"]
        if int(con["k"]) != k:
            return ["construction k differs from target"]
        return []
    if kind in ("semidirect", "prime-power"):
        if kind == "prime-power":
            spec = prime_power_spec(int(con["p"]), int(con["r"]), int(con["d1"]))
            if (spec.n, spec.m, spec.t) != (int(con["n"]), int(con["m"]), int(con["t"])):
                return ["prime-power parameters do not give the recorded (n, m, t)"]
        spec = SemidirectSpec(int(con["n"]), int(con["m"]), int(con["t"]))
        rep = affine_perm_rep(spec).rep
        if spec.n != n or set(rep.images) != set(elements) or int(con["k"]) != k:
            return ["elements are not the affine action of the recorded parameters"]
        return []
    if kind == "example27":
        if con.get("variant") not in ("a", "b") or (n, k) != (9, 2):
            return ["example27 certificates live in B_9/Gamma_2"]
        _, rep = _example27_group(con["variant"])
        if set(rep.images) != set(elements):
            return ["elements are not the order-27 group of the recorded variant"]
        return []
    return [f"unknown construction kind {kind!r}"]


# -- Cayley-type embeddings -----------------------------------------------------------------------

def cayley_embed(G: FinGroup, k: int) -> EmbeddingCert:
    g = math.gcd(G.order, math.factorial(k))
    if g != 1:
        p = min(q for q in range(2, g + 1) if g % q == 0)
        raise GcdObstruction(
            f"gcd(|G|, {k}!) = {g} != 1: G has an element of order {p}, "
            f"but B_n/Gamma_{k} has no elements of order {p}")
    rep = regular_rep(G)
    images = build_section(rep, k)
    return make_cert({"kind": "cayley", "order": G.order, "k": k, "name": G.name}, rep, images, k)


# -- affine semidirect products -------------------------------------------------------------------

@dataclass(frozen=True)
class SemidirectSpec:
    """Z_n x| Z_m with the generator of Z_m acting by multiplication by t."""
    n: int
    m: int
    t: int

    def __post_init__(self):
        if self.n < 3 or self.m < 1 or not 1 <= self.t < self.n:
            raise ValueError("need n >= 3, m >= 1 and 1 <= t < n")
        if math.gcd(self.t, self.n) != 1:
            raise ValueError(f"t = {self.t} is not a unit modulo {self.n}")
        if pow(self.t, self.m, self.n) != 1 % self.n:
            raise ValueError(f"t^m = {self.t}^{self.m} is not 1 modulo {self.n}")

    def hypothesis_gcds(self) -> list[tuple[int, int]]:
        """(l, gcd(t^l - 1, n)) for 1 <= l < m."""
        return [(l, math.gcd(pow(self.t, l) - 1, self.n)) for l in range(1, self.m)]


@dataclass(frozen=True)
class AffineRep:
    spec: SemidirectSpec
    rep: PermRep
    injective: bool

    def element(self, u: int, v: int) -> Perm:
        return self.rep.images[(u % self.spec.n) + self.spec.n * (v % self.spec.m)]


def affine_perm_rep(spec: SemidirectSpec) -> AffineRep:
    """
    The action (u, v): z -> t^v z + u on Z_n, points z relabelled z + 1.

    Element (u, v) has index u + n v. Products follow the left-to-right convention: (u, v) then
    (u', v') is z -> t^(v + v') z + t^v' u + u'.
    """
    n, m, t = spec.n, spec.m, spec.t
    elems = [(u, v) for v in range(m) for u in range(n)]
    idx = {e: i for i, e in enumerate(elems)}
    table = tuple(tuple(idx[((pow(t, v2, n) * u1 + u2) % n, (v1 + v2) % m)] for (u2, v2) in elems)
                  for (u1, v1) in elems)
    gens = (idx[(1 % n, 0)],) + ((idx[(0, 1)],) if m > 1 else ())
    G = FinGroup(table, gens, f"Z{n}x|Z{m}(t={t})")
    images = tuple(Perm(tuple((pow(t, v, n) * z + u) % n + 1 for z in range(n))) for (u, v) in elems)
    rep = PermRep(G, images)
    return AffineRep(spec, rep, rep.is_faithful())


def semidirect_embed(spec: SemidirectSpec, k: int, construction: dict | None = None) -> EmbeddingCert:
    for l, g in spec.hypothesis_gcds():
        if g != 1:
            raise HypothesisViolation(f"gcd(t^l - 1, n) = gcd({spec.t}^{l} - 1, {spec.n}) = {g} != 1 for l = {l}")
    order = spec.n * spec.m
    if math.gcd(order, math.factorial(k)) != 1:
        need = "mn odd" if k == 2 else "gcd(mn, 6) = 1"
        raise HypothesisViolation(f"{need} fails: mn = {order}")
    aff = affine_perm_rep(spec)
    images = build_section(aff.rep, k)
    con = construction or {"kind": "semidirect", "n": spec.n, "m": spec.m, "t": spec.t, "k": k}
    return make_cert(con, aff.rep, images, k)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def prime_power_spec(p: int, r: int, d1: int) -> SemidirectSpec:
    """Smallest t of multiplicative order exactly d1 modulo p^r, with d1 an odd divisor of p - 1."""
    if not _is_prime(p) or p == 2 or r < 1:
        raise ValueError("p must be an odd prime and r >= 1")
    if d1 < 1 or (p - 1) % d1 or d1 % 2 == 0:
        raise ValueError(f"d1 = {d1} must be an odd divisor of p - 1 = {p - 1}")
    q = p ** r
    for t in range(1, q):
        if math.gcd(t, q) == 1 and _mult_order(t, q) == d1:
            spec = SemidirectSpec(q, d1, t)
            if any(g != 1 for _, g in spec.hypothesis_gcds()):
                raise NoSuchT(f"t = {t} violates gcd(t^l - 1, {q}) = 1")
            return spec
    raise NoSuchT(f"no unit of order {d1} modulo {q}")


def _mult_order(t: int, q: int) -> int:
    x, m = t % q, 1
    while x != 1 % q:
        x = x * t % q
        m += 1
    return m


def prime_power_embed(p: int, r: int, d1: int, k: int) -> EmbeddingCert:
    spec = prime_power_spec(p, r, d1)
    con = {"kind": "prime-power", "p": p, "r": r, "d1": d1, "n": spec.n, "m": spec.m, "t": spec.t, "k": k}
    return semidirect_embed(spec, k, con)


# -- torsion ---------------------------------------------------------------------------------------

def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def cycle_type_rep(n: int, lengths) -> Perm:
    cycles, start = [], 1
    for L in lengths:
        cycles.append(tuple(range(start, start + L)))
        start += L
    return Perm.from_cycles(n, cycles)


def torsion_element(n: int, k: int, m: int) -> QElem | None:
    """An element of order exactly m in B_n/Gamma_k, or None when no cycle type of order m lifts."""
    if m < 2:
        raise ValueError("m must be at least 2")
    for lengths in _partitions(n):
        if math.lcm(*lengths) != m:
            continue
        pi = cycle_type_rep(n, lengths)
        _, rep = from_perm_gens(n, [pi])
        try:
            section = build_section(rep, k)
        except SplittingFailed:
            continue
        x = section[rep.index_of(pi)]
        if q_order(x) != m:
            raise AssertionError("split element has the wrong order")
        return x
    return None


# -- the two order-27 examples in B_9/Gamma_2 ----------------------------------------------------

ORBIT_O: tuple[PairIdx, ...] = ((1, 2), (8, 9), (5, 6), (2, 3), (7, 8), (4, 5), (1, 3), (7, 9), (4, 6))

_A_ALPHA, _A_BETA = "(1,2,3)(4,5,6)", "(1,4,7,3,5,8,2,6,9)"
_B_ALPHA, _B_BETA, _B_GAMMA = "(1,4,7)(2,5,8)(3,6,9)", "(4,5,6)(7,9,8)", "(1,2,3)(4,5,6)(7,8,9)"

A_ALPHA_HAT = "s2 s1^-1 s5 s4^-1"
A_W = "s3 s6 s2 s3 s4 s5 s4 s3 s7 s6"
A_B_CORE = "s8 s7 s6 s5 s4^-1 s3^-1 s2^-1 s1^-1"
A_BETA_PREFIX = "A1,2 A8,9^-1"

B_W = "s3 s2 s4 s6 s5 s4 s3 s7 s6"
B_CORE = "s2 s1^-1 s5 s4^-1 s8 s7^-1"
B_BETA_HAT = "s5 s4^-1 s7 s8^-1"

# The drawn braid for alpha-hat b alpha-hat^-1 b^-4, one column per line; letters on the same line
# act on disjoint strands.
FIGURE_ROWS = """
s2 s5 | s1^-1 s4^-1 s6 | s3 s7 | s2 s8 | s3 | s4 | s5 | s4 s6 | s3 s7 | s6 | s5 | s4^-1 s6^-1
s3^-1 s7^-1 | s2^-1 | s1^-1 s3^-1 | s4^-1 | s5^-1 | s4^-1 s6^-1 | s3^-1 | s2^-1 | s1 s3^-1
s2^-1 s4 | s3 s5^-1 | s2 s6 | s1 s3 s7 | s4 | s5 | s4 s6 | s3 | s2 | s1 s3 | s2 s4
s1 s3 s5^-1 | s2 s4 s6^-1 | s1 s3 s5^-1 s7^-1 | s2 s4 s6^-1 s8^-1 | s3 s5^-1 s7^-1
s4 s6^-1 s8^-1 | s3^-1 s5^-1 s7^-1 | s4^-1 s6^-1 s8^-1 | s7^-1 | s6^-1 s8^-1 | s5^-1 s7^-1
s4^-1 s6^-1 | s3^-1 | s2^-1 | s3^-1
"""


def figure_word() -> BraidWord:
    return parse_word(re.sub(r"[|\n]", " ", FIGURE_ROWS), 9)


def _example27_group(variant: str) -> tuple[FinGroup, PermRep]:
    if variant == "a":
        gens = [Perm.parse(_A_ALPHA, 9), Perm.parse(_A_BETA, 9)]
    elif variant == "b":
        gens = [Perm.parse(_B_ALPHA, 9), Perm.parse(_B_BETA, 9)]
    else:
        raise ValueError("variant must be 'a' or 'b'")
    return from_perm_gens(9, gens, name=f"order-27 group ({variant})")


def o_coordinates(g: QElem) -> tuple[int, ...]:
    """Pure part of g projected onto the pair coordinates in ORBIT_O."""
    if not g.pi.is_identity():
        raise ValueError("element is not pure")
    idx = tables(9).pidx
    return tuple(g.p.a[idx[e]] for e in ORBIT_O)


def _require(cond: bool, what: str, log: list[str]) -> None:
    if not cond:
        raise StageMismatch(what)
    log.append(what)


def _extend(rep: PermRep, gen_lifts: dict[int, QElem]) -> list[QElem]:
    """Lift every element along the breadth-first spanning tree of the generators."""
    tree = rep.group.words()
    out: list[QElem | None] = [None] * rep.group.order
    out[0] = QElem.identity(rep.degree, 2)
    pending = list(range(1, rep.group.order))
    while pending:
        rest = []
        for g in pending:
            x, s = tree[g]
            if out[x] is None:
                rest.append(g)
            else:
                out[g] = q_mul(out[x], gen_lifts[s])
        pending = rest
    return out


@dataclass
class Example27:
    variant: str
    cert: EmbeddingCert
    log: list[str]
    orbit_sizes: list[int]
    crossing_identity: tuple[int, ...] | None = None
    generator_orders: dict[str, int | float] = field(default_factory=dict)


def example27(variant: Literal["a", "b"]) -> Example27:
    group, rep = _example27_group(variant)
    log: list[str] = []
    _require(group.order == 27, "the permutation group has order 27", log)
    g1, g2 = rep.gen_images()
    if variant == "a":
        _require(compose(compose(g1, g2), g1.inverse()) == g2 ** 4, "alpha beta alpha^-1 = beta^4", log)
    else:
        gamma = compose(compose(g1, g2), compose(g1.inverse(), g2.inverse()))
        _require(gamma == Perm.parse(_B_GAMMA, 9), "[alpha, beta] = (1,2,3)(4,5,6)(7,8,9)", log)

    # orbit decomposition of the pair basis
    ob = orbit_basis(rep, "pairs")
    sizes = sorted(ob.sizes())
    first = next(o for o in ob.orbits if o.representative == (1, 2))
    _require(set(first.members) == set(ORBIT_O), "orbit of A1,2 is O", log)
    _require(sizes == [9, 27] and all(o.free for o in ob.orbits if len(o.members) == 27),
             "complement of O is one free orbit of size 27", log)
    complement = [e for e in pairs(9) if e not in set(ORBIT_O)]

    result = Example27(variant, None, log, sizes)  # type: ignore[arg-type]
    if variant == "a":
        alpha_hat = parse_word(A_ALPHA_HAT, 9)
        w = parse_word(A_W, 9)
        b = w * parse_word(A_B_CORE, 9) * w.inverse()
        beta_hat = parse_word(A_BETA_PREFIX, 9) * b
        _require(perm_of(alpha_hat) == g1 and perm_of(beta_hat) == g2, "braid words project to alpha, beta", log)
        rel = alpha_hat * b * alpha_hat.inverse() * b ** -4
        fig = figure_word()
        _require(artin_equal(fig, rel), "drawn braid equals alpha-hat b alpha-hat^-1 b^-4", log)
        cx = dict(zip(pairs(9), crossing_numbers(fig)))
        coords = tuple(cx[e] for e in ORBIT_O)
        expected = {(1, 2): 1, (1, 3): -1, (7, 8): -1, (8, 9): 1}
        _require(coords == tuple(expected.get(e, 0) for e in ORBIT_O),
                 "crossing numbers on O: A1,2 A1,3^-1 A7,8^-1 A8,9", log)
        result.crossing_identity = coords
        a, bh = q_of_word(alpha_hat, 2), q_of_word(beta_hat, 2)
        full = q_mul(q_mul(a, bh), q_mul(q_inv(a), q_inv(bh) ** 4))
        _require(not any(o_coordinates(full)), "alpha-hat beta-hat alpha-hat^-1 beta-hat^-4 = 1 modulo H", log)
        gen_lifts = {group.gens[0]: a, group.gens[1]: bh}
        result.generator_orders = {"alpha_hat": q_order(a), "beta_hat": q_order(bh)}
    else:
        wp = parse_word(B_W, 9)
        alpha_hat = wp * parse_word(B_CORE, 9) * wp.inverse()
        beta_hat = parse_word(B_BETA_HAT, 9)
        gamma_hat = parse_word(B_CORE, 9)
        _require(perm_of(alpha_hat) == g1 and perm_of(beta_hat) == g2 and perm_of(gamma_hat) == Perm.parse(_B_GAMMA, 9),
                 "braid words project to alpha, beta, gamma", log)
        a, bh, c = (q_of_word(x, 2) for x in (alpha_hat, beta_hat, gamma_hat))
        orders = {"alpha_hat": q_order(a), "beta_hat": q_order(bh), "gamma_hat": q_order(c)}
        _require(all(v == 3 for v in orders.values()), "alpha-hat, beta-hat, gamma-hat have order 3", log)
        comm = lambda x, y: x * y * x.inverse() * y.inverse()
        _require(artin_equal(comm(beta_hat, gamma_hat), BraidWord(9)), "[beta-hat, gamma-hat] = 1 in B_9", log)
        qc = lambda x, y: q_mul(q_mul(x, y), q_mul(q_inv(x), q_inv(y)))
        _require(not any(o_coordinates(q_mul(qc(a, bh), q_inv(c)))), "[alpha-hat, beta-hat] gamma-hat^-1 = 1 modulo H", log)
        _require(not any(o_coordinates(qc(a, c))), "[alpha-hat, gamma-hat] = 1 modulo H", log)
        gen_lifts = {group.gens[0]: a, group.gens[1]: bh}
        result.generator_orders = orders

    lifts = _extend(rep, gen_lifts)
    images = build_section(rep, 2, lifts, module=complement)
    log.append("split over the span H of the free orbit")
    result.cert = make_cert({"kind": "example27", "variant": variant}, rep, images, 2,
                            notes=list(log))
    return result


def format_order(x: int | float) -> str:
    return "infinite" if x == INFINITE else str(x)


__all__ = [
    "AffineRep", "CheckReport", "EmbeddingCert", "Example27", "GcdObstruction", "HypothesisViolation",
    "NoSuchT", "Obstruction", "SemidirectSpec", "StageMismatch", "affine_perm_rep", "cayley_embed",
    "check_cert", "cycle_type_rep", "example27", "figure_word", "format_order", "o_coordinates",
    "prime_power_embed", "prime_power_spec", "semidirect_embed", "torsion_element", "cyclic",
]
