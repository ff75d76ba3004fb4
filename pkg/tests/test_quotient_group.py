from __future__ import annotations

import random

import pytest

from braidq.braid_words import BraidWord, parse_word
from braidq.quotient_group import (
    INFINITE, QElem, cocycle, lift_k, q_inv, q_mul, q_of_word, q_order, q_pow, reduce_k,
)
from braidq.perm_core import Perm


def random_word(rng, n, length):
    return BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)))


@pytest.mark.parametrize("word,n,k,order", [
    ("s5 s4^-1 s7 s8^-1", 9, 2, 3),
    ("s2 s1^-1 s5 s4^-1 s8 s7^-1", 9, 2, 3),
    ("s1", 3, 2, INFINITE),
    ("s5 s4^-1 s7 s8^-1", 9, 3, INFINITE),
    ("", 4, 2, 1),
])
def test_orders(word, n, k, order):
    assert q_order(q_of_word(parse_word(word, n), k)) == order


@pytest.mark.parametrize("k", [2, 3])
def test_words_multiply_like_elements(k):
    rng = random.Random(k)
    for _ in range(80):
        n = rng.randint(2, 6)
        u, v = random_word(rng, n, 9), random_word(rng, n, 9)
        assert q_of_word(u * v, k) == q_mul(q_of_word(u, k), q_of_word(v, k))
        assert q_of_word(u.inverse(), k) == q_inv(q_of_word(u, k))


@pytest.mark.parametrize("k", [2, 3])
def test_order_is_conjugation_invariant(k):
    rng = random.Random(40 + k)
    g = q_of_word(parse_word("s1 s2^-1 s3 s4^-1", 5), k)
    for _ in range(20):
        h = q_of_word(random_word(rng, 5, 8), k)
        assert q_order(q_mul(h, q_mul(g, q_inv(h)))) == q_order(g)


def test_no_even_torsion_in_samples():
    rng = random.Random(2)
    for _ in range(150):
        g = q_of_word(random_word(rng, rng.randint(2, 5), 7), 2)
        order = q_order(g)
        assert order == INFINITE or order % 2 == 1


def test_no_order_two_or_three_at_k3_in_samples():
    rng = random.Random(4)
    for _ in range(100):
        g = q_of_word(random_word(rng, rng.randint(2, 5), 7), 3)
        assert q_order(g) not in (2, 3)


def test_cocycle_normalised_and_defines_products():
    n, k = 4, 3
    rng = random.Random(8)
    ident = Perm.identity(n)
    for _ in range(20):
        p = Perm(tuple(rng.sample(range(1, n + 1), n)))
        assert cocycle(n, k, ident, p).is_identity()
        assert cocycle(n, k, p, ident).is_identity()


def test_projection_between_levels():
    rng = random.Random(6)
    for _ in range(30):
        u = random_word(rng, 5, 10)
        assert reduce_k(q_of_word(u, 3)) == q_of_word(u, 2)
    g = q_of_word(parse_word("s1 s2", 3), 2)
    assert reduce_k(lift_k(g)) == g


def test_power_and_json():
    g = q_of_word(parse_word("s1 s2^-1 s3", 4), 3)
    assert q_pow(g, 3) == q_mul(g, q_mul(g, g))
    assert q_pow(g, -1) == q_inv(g)
    assert QElem.from_json(g.to_json()) == g


def test_mismatched_quotients_rejected():
    with pytest.raises(ValueError):
        q_mul(QElem.identity(3, 2), QElem.identity(3, 3))
