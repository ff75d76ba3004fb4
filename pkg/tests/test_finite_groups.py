from __future__ import annotations

import json
import math

import pytest

from braidq.constructions import SemidirectSpec, affine_perm_rep
from braidq.finite_groups import (
    CapExceeded, SignObstruction, abelian, cyclic, fixed_point_profile, from_perm_gens, from_table,
    group_from_json, load_group, orbit_basis, regular_rep, symmetric,
)
from braidq.perm_core import Perm, act_pair, compose, pairs

ALPHA_A, BETA_A = "(1,2,3)(4,5,6)", "(1,4,7,3,5,8,2,6,9)"
ALPHA_B, BETA_B = "(1,4,7)(2,5,8)(3,6,9)", "(4,5,6)(7,9,8)"


def perm_group(n, *gens):
    return from_perm_gens(n, [Perm.parse(g, n) for g in gens])


def test_cyclic_three():
    G, rep = perm_group(3, "(1,2,3)")
    assert G.order == 3
    assert rep.images[1] == Perm.parse("(1,2,3)", 3)


def test_first_order_27_group():
    G, rep = perm_group(9, ALPHA_A, BETA_A)
    a, b = rep.gen_images()
    assert G.order == 27 and not G.is_abelian()
    assert compose(compose(a, b), a.inverse()) == b ** 4


def test_second_order_27_group():
    G, rep = perm_group(9, ALPHA_B, BETA_B)
    a, b = rep.gen_images()
    assert G.order == 27
    assert a * b * a.inverse() * b.inverse() == Perm.parse("(1,2,3)(4,5,6)(7,8,9)", 9)
    assert fixed_point_profile(rep) == 3


def test_cap():
    with pytest.raises(CapExceeded):
        from_perm_gens(6, [Perm.parse("(1,2)", 6), Perm.parse("(1,2,3,4,5,6)", 6)], cap=100)


@pytest.mark.parametrize("G", [cyclic(3), cyclic(9), abelian(3, 3), symmetric(3)[0],
                               perm_group(9, ALPHA_A, BETA_A)[0]])
def test_regular_rep_is_free(G):
    rep = regular_rep(G)
    assert rep.degree == G.order and rep.is_faithful()
    assert fixed_point_profile(rep) == 0
    assert all(p.order() == G.element_order(g) for g, p in enumerate(rep.images))


def test_regular_rep_of_z9_is_a_nine_cycle():
    rep = regular_rep(cyclic(9))
    assert [len(c) for c in rep.images[1].cycles()] == [9]


def test_orbits_of_first_example():
    _, rep = perm_group(9, ALPHA_A, BETA_A)
    ob = orbit_basis(rep)
    assert ob.sizes() == [9, 27]
    assert set(ob.orbits[0].members) == {(1, 2), (8, 9), (5, 6), (2, 3), (7, 8), (4, 5), (1, 3), (7, 9), (4, 6)}
    assert [o.free for o in ob.orbits] == [False, True]
    assert ob.orbits[1].representative == (1, 4)


def test_orbit_order_follows_beta_powers():
    # the orbit of A_{1,2} under successive powers of beta
    _, rep = perm_group(9, ALPHA_A, BETA_A)
    beta = rep.gen_images()[1]
    seq = [(1, 2)]
    for _ in range(8):
        seq.append(act_pair(beta, seq[-1]))
    assert seq == [(1, 2), (8, 9), (5, 6), (2, 3), (7, 8), (4, 5), (1, 3), (7, 9), (4, 6)]


def test_z5_pairs_and_triples():
    rep = regular_rep(cyclic(5))
    assert orbit_basis(rep).sizes() == [5, 5]
    tri = orbit_basis(rep, "triples")
    assert sum(tri.sizes()) == math.comb(5, 3) and tri.all_free()


def test_trivial_group_orbits():
    G, rep = from_perm_gens(4, [Perm.identity(4)])
    ob = orbit_basis(rep)
    assert ob.sizes() == [1] * 6 and all(o.free for o in ob.orbits)   # |G| = 1
    G2, rep2 = from_perm_gens(4, [Perm.parse("(1,2)", 4)])
    assert not all(o.free for o in orbit_basis(rep2).orbits)


def test_sign_obstruction():
    _, rep = perm_group(3, "(1,2)")
    with pytest.raises(SignObstruction):
        orbit_basis(rep, "triples")


@pytest.mark.parametrize("rep", [
    regular_rep(cyclic(5)), regular_rep(cyclic(7)), regular_rep(abelian(5, 5)),
    perm_group(7, "(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)")[1],
    affine_perm_rep(SemidirectSpec(11, 5, 3)).rep,
])
def test_freeness_under_hypotheses(rep):
    G = rep.group
    for k in (2, 3):
        if math.gcd(G.order, math.factorial(k)) == 1 and fixed_point_profile(rep) <= k - 1:
            level = "pairs" if k == 2 else "triples"
            assert orbit_basis(rep, level).all_free()


def test_orbit_sizes_partition_the_bases():
    _, rep = perm_group(9, ALPHA_B, BETA_B)
    assert sum(orbit_basis(rep).sizes()) == len(pairs(9))


def test_table_validation():
    with pytest.raises(ValueError):
        from_table([[0, 1], [1, 1]], [1])
    with pytest.raises(ValueError):
        from_table([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [0])
    G = from_table([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [1])
    assert G.order == 3 and G.inv(1) == 2


def test_group_file_loader(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"perm_gens": [ALPHA_B, BETA_B], "n": 9}))
    G, rep = load_group(f)
    assert G.order == 27 and rep is not None
    G2, rep2 = group_from_json({"table": [[0, 1], [1, 0]], "gens": [1]})
    assert G2.order == 2 and rep2 is None
