import random
from itertools import combinations_with_replacement, product

import pytest

from twistkit.errors import (
    NonIntegralLeadingWeightError,
    RankMismatchError,
    SizeMismatchError,
    VerificationFailedError,
)
from twistkit.exactnum import LaurentPolynomial
from twistkit.weights import (
    WeightMultiset,
    char_power_equal,
    character,
    conclude_equivalence,
    recover_from_symmetric_power,
    symmetric_power,
    tensor_power,
)


def W(*weights):
    return WeightMultiset.from_weights(list(weights))


def test_character_examples():
    assert character(W((1,), (-1,))) == LaurentPolynomial(1, {(1,): 1, (-1,): 1})
    assert character(W((0,), (0,))) == LaurentPolynomial.constant(1, 2)
    assert character(W((2, 0), (0, 1))) == LaurentPolynomial(2, {(2, 0): 1, (0, 1): 1})
    assert character(W((1,), (1,), (0,))).coefficient_sum() == 3


def test_tensor_power_examples():
    # oracle: expand (x+1)^2 = x^2 + 2x + 1 -> weights {2, 1, 1, 0}
    assert tensor_power(W((1,), (0,)), 2) == W((2,), (1,), (1,), (0,))
    w = W((1, 2), (0, -1), (3, 0))
    assert tensor_power(w, 1) == w
    assert tensor_power(W((0,)), 5) == W((0,))


def test_symmetric_power_examples():
    assert symmetric_power(W((1,), (-1,)), 2) == W((2,), (0,), (-2,))
    assert symmetric_power(W((1,), (0,)), 3) == W((3,), (2,), (1,), (0,))
    w = W((1, 2), (0, -1))
    assert symmetric_power(w, 1) == w


def test_power_sizes():
    rng = random.Random(11)
    from math import comb

    for _ in range(25):
        n = rng.randrange(1, 5)
        rank = rng.randrange(1, 3)
        w = WeightMultiset(rank, [tuple(rng.randrange(-3, 4) for _ in range(rank)) for _ in range(n)])
        for k in (1, 2, 3):
            assert len(tensor_power(w, k)) == n**k
            assert len(symmetric_power(w, k)) == comb(n + k - 1, k)


def test_character_of_tensor_power_is_character_power():
    rng = random.Random(12)
    for _ in range(30):
        n = rng.randrange(1, 5)
        rank = rng.randrange(1, 3)
        w = WeightMultiset(rank, [tuple(rng.randrange(-3, 4) for _ in range(rank)) for _ in range(n)])
        k = rng.choice([1, 2, 3])
        assert character(tensor_power(w, k)) == character(w) ** k


def test_recover_example():
    assert recover_from_symmetric_power(W((2,), (0,), (-2,)), 2, 2) == W((1,), (-1,))


def test_recover_round_trip_randomized():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randrange(1, 5)
        rank = rng.randrange(1, 3)
        w = WeightMultiset(rank, [tuple(rng.randrange(-3, 4) for _ in range(rank)) for _ in range(n)])
        k = rng.choice([2, 3])
        s = symmetric_power(w, k)
        assert recover_from_symmetric_power(s, k, n) == w


def test_recover_non_integral_leading_weight():
    with pytest.raises(NonIntegralLeadingWeightError):
        recover_from_symmetric_power(W((1,), (0,), (0,)), 2, 2)


def test_recover_verification_failures():
    # right size, integral lexmax, but not a square: {(2), (1), (0)} would need
    # weights (1), x with (1)+x = (1) and 2x = (0) simultaneously
    with pytest.raises(VerificationFailedError):
        recover_from_symmetric_power(W((2,), (1,), (-2,)), 2, 2)
    with pytest.raises(VerificationFailedError):
        recover_from_symmetric_power(W((2,), (0,)), 2, 2)  # wrong size


def test_char_power_equal_examples():
    w = W((1, 3), (0, 0))
    assert char_power_equal(w, w, 5)
    assert not char_power_equal(W((1,), (0,)), W((2,), (0,)), 2)  # (x+1)^2 != (x^2+1)^2
    assert char_power_equal(W((1,)), W((1,)), 7)


def test_char_power_equal_rank_mismatch():
    with pytest.raises(RankMismatchError):
        char_power_equal(W((1,)), W((1, 0)), 2)


def test_conclude_equivalence():
    w = W((1,), (-1,))
    assert conclude_equivalence(w, W((1,), (-1,)), 3)
    assert not conclude_equivalence(W((1,), (0,)), W((2,), (0,)), 2)
    with pytest.raises(SizeMismatchError):
        conclude_equivalence(W((1,)), W((1,), (0,)), 2)


def test_char_power_rigidity_small_exhaustive():
    # every pair of distinct same-size rank-1 multisets with entries in [-2,2]
    # has distinct character powers for m <= 4
    values = range(-2, 3)
    for n in (1, 2):
        multisets = [WeightMultiset(1, [(v,) for v in combo])
                     for combo in combinations_with_replacement(values, n)]
        for w1, w2 in product(multisets, repeat=2):
            if w1 == w2:
                continue
            for m in range(1, 5):
                assert not char_power_equal(w1, w2, m)
                assert not conclude_equivalence(w1, w2, m)
