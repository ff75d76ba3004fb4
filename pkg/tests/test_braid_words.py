from __future__ import annotations

import random

import pytest

from braidq.braid_words import (
    AWord, BraidWord, NonPureWord, OddCrossingCount, a_generator, a_word_expand, artin_equal,
    artin_images, crossing_numbers, parse_word, perm_of, section_word, word_from_letters,
)
from braidq.perm_core import Perm, pairs


def test_parse_tokens():
    w = parse_word("s1 s2^-1 s3^2", 4)
    assert w.letters == ((1, 1), (2, -1), (3, 1), (3, 1))
    with pytest.raises(ValueError):
        parse_word("s4", 4)
    with pytest.raises(ValueError):
        parse_word("t1", 4)


def test_braid_relations_hold_in_the_artin_action():
    for n in range(3, 7):
        for i in range(1, n - 1):
            u = word_from_letters(n, [i, i + 1, i])
            v = word_from_letters(n, [i + 1, i, i + 1])
            assert artin_equal(u, v)
        for i in range(1, n):
            for j in range(i + 2, n):
                assert artin_equal(word_from_letters(n, [i, j]), word_from_letters(n, [j, i]))


def test_artin_action_is_faithful_on_small_examples():
    assert not artin_equal(word_from_letters(3, [1, 2]), word_from_letters(3, [2, 1]))
    assert artin_images(word_from_letters(3, [1, -1])) == [(1,), (2,), (3,)]


def test_a_generator_shape():
    assert str(a_generator(4, 1, 3)) == "s2 s1 s1 s2^-1"
    assert perm_of(a_generator(5, 2, 5)).is_identity()
    assert parse_word("A2,4", 4) == a_generator(4, 2, 4)


def test_crossing_numbers_of_generators():
    n = 5
    for idx, (i, j) in enumerate(pairs(n)):
        cn = crossing_numbers(a_generator(n, i, j))
        assert cn == tuple(int(k == idx) for k in range(len(pairs(n))))


def test_crossing_numbers_reject_non_pure_words():
    with pytest.raises(NonPureWord):
        crossing_numbers(parse_word("s1", 3))


def test_odd_crossing_error_type_exists():
    assert issubclass(OddCrossingCount, AssertionError)


def test_section_round_trip_all_of_s5():
    import itertools
    for images in itertools.permutations(range(1, 6)):
        p = Perm(images)
        w = section_word(p)
        assert perm_of(w) == p
        assert len(w) == p.inversions()
        assert all(e == 1 for _, e in w.letters)


def test_a_word_inverse_and_expand():
    aw = AWord(4, (((1, 2), 1), ((2, 4), -1)))
    w = a_word_expand(aw) * a_word_expand(aw.inverse())
    assert artin_equal(w, BraidWord(4))
    assert aw.inverse().inverse() == aw


def test_word_inverse_is_artin_inverse():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 6)
        w = BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(12)))
        assert artin_equal(w * w.inverse(), BraidWord(n))
