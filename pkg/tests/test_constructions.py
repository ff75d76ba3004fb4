from __future__ import annotations

import copy
import json
import random

import pytest

from braidq.braid_words import artin_equal, crossing_numbers
from braidq.constructions import (
    ORBIT_O, GcdObstruction, HypothesisViolation, SemidirectSpec, affine_perm_rep, cayley_embed,
    check_cert, example27, figure_word, prime_power_embed, prime_power_spec, semidirect_embed,
    torsion_element,
)
from braidq.finite_groups import abelian, cyclic, fixed_point_profile, symmetric
from braidq.perm_core import Perm, cycle_profile, pairs
from braidq.quotient_group import q_order


@pytest.fixture(scope="module")
def ex27a():
    return example27("a")


@pytest.fixture(scope="module")
def ex27b():
    return example27("b")


@pytest.mark.parametrize("G,k,n", [(cyclic(9), 2, 9), (cyclic(5), 3, 5), (abelian(3, 3), 2, 9)])
def test_cayley_embeddings(G, k, n):
    cert = cayley_embed(G, k)
    assert (cert.n, cert.k, cert.order) == (n, k, G.order)
    assert check_cert(cert.to_json()).ok


@pytest.mark.parametrize("G,k", [(cyclic(3), 3), (cyclic(2), 2), (symmetric(3)[0], 2)])
def test_cayley_obstructions(G, k):
    with pytest.raises(GcdObstruction):
        cayley_embed(G, k)


def test_affine_rep_examples():
    aff = affine_perm_rep(SemidirectSpec(7, 3, 2))
    # z -> 2z on Z_7 is (0)(1,2,4)(3,6,5); points are shifted by one
    assert aff.element(0, 1) == Perm.parse("(2,3,5)(4,7,6)", 7)
    assert cycle_profile(aff.element(0, 1)).fixed_points == 1
    for u in range(1, 7):
        assert cycle_profile(aff.element(u, 0)).fixed_points == 0
    assert aff.injective and fixed_point_profile(aff.rep) == 1


def test_affine_hypothesis_flag():
    spec = SemidirectSpec(9, 3, 4)
    assert spec.hypothesis_gcds()[0] == (1, 3)


def test_semidirect_spec_validation():
    with pytest.raises(ValueError):
        SemidirectSpec(9, 3, 3)
    with pytest.raises(ValueError):
        SemidirectSpec(7, 2, 2)


def test_frobenius_group_of_order_21():
    cert = semidirect_embed(SemidirectSpec(7, 3, 2), 2)
    assert cert.order == 21 and cert.n == 7
    assert check_cert(cert.to_json()).ok


def test_semidirect_violation_names_the_gcd():
    with pytest.raises(HypothesisViolation, match=r"gcd\(4\^1 - 1, 9\) = 3.*l = 1"):
        semidirect_embed(SemidirectSpec(9, 3, 4), 2)


def test_semidirect_parity_hypothesis():
    with pytest.raises(HypothesisViolation):
        semidirect_embed(SemidirectSpec(7, 3, 2), 3)


@pytest.mark.parametrize("p,r,d1,t", [(7, 1, 3, 2), (11, 1, 5, 3), (13, 1, 1, 1), (5, 2, 1, 1)])
def test_prime_power_spec(p, r, d1, t):
    spec = prime_power_spec(p, r, d1)
    assert (spec.n, spec.m, spec.t) == (p ** r, d1, t)
    assert all(g == 1 for _, g in spec.hypothesis_gcds())


def test_prime_power_rejects_bad_inputs():
    with pytest.raises(ValueError):
        prime_power_spec(9, 1, 1)
    with pytest.raises(ValueError):
        prime_power_spec(7, 1, 2)


def test_prime_power_embed_round_trip():
    cert = prime_power_embed(7, 1, 3, 2)
    assert check_cert(cert.to_json()).ok


@pytest.mark.parametrize("n,k,m,found", [(5, 3, 5, True), (4, 2, 2, False), (3, 2, 3, True), (5, 3, 3, False)])
def test_torsion_examples(n, k, m, found):
    x = torsion_element(n, k, m)
    assert (x is not None) == found
    if found:
        assert q_order(x) == m


def test_example27a_stages(ex27a):
    assert ex27a.orbit_sizes == [9, 27]
    assert ex27a.crossing_identity == tuple({(1, 2): 1, (1, 3): -1, (7, 8): -1, (8, 9): 1}.get(e, 0) for e in ORBIT_O)
    assert ex27a.cert.order == 27 and (ex27a.cert.n, ex27a.cert.k) == (9, 2)
    assert check_cert(ex27a.cert.to_json()).ok


def test_example27b_orders(ex27b):
    assert ex27b.generator_orders == {"alpha_hat": 3, "beta_hat": 3, "gamma_hat": 3}
    assert check_cert(ex27b.cert.to_json()).ok


def test_figure_word_is_pure_with_expected_crossings():
    w = figure_word()
    cn = dict(zip(pairs(9), crossing_numbers(w)))
    assert [cn[e] for e in ORBIT_O] == [1, 1, 0, 0, -1, 0, -1, 0, 0]
    assert len(w) == 88
    assert not artin_equal(w, w * w)


def _integer_paths(obj, path=()):
    if isinstance(obj, bool):
        return
    if isinstance(obj, int):
        yield path
    elif isinstance(obj, dict):
        for key, v in obj.items():
            yield from _integer_paths(v, path + (key,))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _integer_paths(v, path + (i,))


def _mutate(obj, path, delta):
    out = copy.deepcopy(obj)
    target = out
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] += delta
    return out


@pytest.mark.parametrize("build", [
    lambda: cayley_embed(cyclic(5), 3),
    lambda: semidirect_embed(SemidirectSpec(7, 3, 2), 2),
    lambda: prime_power_embed(7, 1, 3, 2),
])
def test_check_cert_rejects_single_mutations(build):
    cert = build().to_json()
    assert check_cert(json.loads(json.dumps(cert))).ok
    rng = random.Random(17)
    paths = list(_integer_paths(cert))
    for path in rng.sample(paths, min(40, len(paths))):
        for delta in (1, -1):
            assert not check_cert(_mutate(cert, path, delta)).ok, path


def test_check_cert_rejects_mutated_example27(ex27b):
    cert = ex27b.cert.to_json()
    rng = random.Random(5)
    paths = list(_integer_paths(cert))
    for path in rng.sample(paths, 15):
        assert not check_cert(_mutate(cert, path, 1)).ok, path


def test_certificates_are_deterministic():
    a = json.dumps(cayley_embed(cyclic(7), 3).to_json())
    b = json.dumps(cayley_embed(cyclic(7), 3).to_json())
    assert a == b
