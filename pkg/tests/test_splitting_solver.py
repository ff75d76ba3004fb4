from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidq.constructions import SemidirectSpec, affine_perm_rep
from braidq.finite_groups import cyclic, from_perm_gens, regular_rep
from braidq.intlin import check_solution, solve_integer
from braidq.perm_core import Perm
from braidq.quotient_group import q_mul, q_order
from braidq.splitting_solver import (
    UNSOLVABLE, Cocycle, ModuleNotInvariant, SplittingFailed, build_section, coboundary_defect,
    pair_module, restricted_cocycle, solve_coboundary,
)


def perm_group(n, *gens):
    return from_perm_gens(n, [Perm.parse(g, n) for g in gens])


# -- integer systems ------------------------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=n, max_size=n), st.integers(-5, 5)),
             min_size=1, max_size=4))))
def test_integer_solver_matches_brute_force(data):
    n, raw = data
    rows = [({c: v for c, v in enumerate(coeffs) if v}, b) for coeffs, b in raw]
    x = solve_integer(rows, n)
    if x is not None:
        assert check_solution(rows, x)
    else:
        assert not any(check_solution(rows, p) for p in itertools.product(range(-15, 16), repeat=n))


def test_integer_solver_is_deterministic():
    rows = [({0: 2, 1: 3, 2: 5}, 7), ({1: 1, 2: -1}, 0)]
    assert solve_integer(rows, 3) == solve_integer(list(rows), 3)


# -- cocycles -------------------------------------------------------------------------------------

CASES = [
    (perm_group(3, "(1,2,3)")[1], 2),
    (perm_group(3, "(1,2)")[1], 2),
    (regular_rep(cyclic(5)), 3),
    (perm_group(9, "(1,2,3)(4,5,6)", "(1,4,7,3,5,8,2,6,9)")[1], 2),
    (affine_perm_rep(SemidirectSpec(7, 3, 2)).rep, 3),
]


@pytest.mark.parametrize("rep,k", CASES)
def test_cocycle_identity_holds_exactly(rep, k):
    M, f = restricted_cocycle(rep, k)
    N = rep.group.order
    triples = itertools.product(range(N), repeat=3)
    if N > 9:
        triples = random.Random(0).sample(list(triples), 2000)
    for g, h, l in triples:
        assert not any(f.identity_defect(g, h, l))
    for g in range(N):
        assert not any(f(0, g)) and not any(f(g, 0))


def test_z3_cocycle_shape():
    _, rep = perm_group(3, "(1,2,3)")
    M, f = restricted_cocycle(rep, 2)
    assert M.rank == 3
    assert len({f(g, h) for g in range(3) for h in range(3)}) > 1


def test_zero_cocycle_gives_zero_cochain():
    _, rep = perm_group(4, "(1,2,3,4)")
    M = pair_module(rep)
    f = Cocycle(rep, M, lambda g, h: (0,) * M.rank)
    d = solve_coboundary(M, f)
    assert all(not any(v) for v in d.values())


def test_z2_does_not_split():
    _, rep = perm_group(3, "(1,2)")
    M, f = restricted_cocycle(rep, 2)
    assert solve_coboundary(M, f) is UNSOLVABLE
    with pytest.raises(SplittingFailed):
        build_section(rep, 2)


def test_z3_splits_at_k2_but_not_k3():
    _, rep = perm_group(3, "(1,2,3)")
    M, f = restricted_cocycle(rep, 2)
    d = solve_coboundary(M, f)
    assert d is not UNSOLVABLE
    for g in range(3):
        for h in range(3):
            assert not any(coboundary_defect(M, f, d, g, h))
    with pytest.raises(SplittingFailed) as info:
        build_section(rep, 3)
    assert info.value.stage == "triples"


@pytest.mark.parametrize("rep,k", [
    (regular_rep(cyclic(5)), 3),
    (affine_perm_rep(SemidirectSpec(7, 3, 2)).rep, 2),
    (regular_rep(cyclic(9)), 2),
])
def test_sections_are_homomorphisms(rep, k):
    s = build_section(rep, k)
    T = rep.group.table
    N = rep.group.order
    for g in range(N):
        assert s[g].pi == rep.images[g]
        assert q_order(s[g]) == rep.group.element_order(g)
        for h in range(N):
            assert q_mul(s[g], s[h]) == s[T[g][h]]


def test_solver_is_deterministic():
    rep = regular_rep(cyclic(5))
    M, f = restricted_cocycle(rep, 2)
    M2, f2 = restricted_cocycle(rep, 2)
    assert solve_coboundary(M, f) == solve_coboundary(M2, f2)


def test_module_must_be_invariant():
    _, rep = perm_group(4, "(1,2,3,4)")
    with pytest.raises(ModuleNotInvariant):
        pair_module(rep, [(1, 2)])
