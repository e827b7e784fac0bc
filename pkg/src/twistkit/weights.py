"""Torus-weight multisets: power expansions, recovery, character-power tests.

A representation with connected monodromy restricted to a split torus is
modeled by its multiset of integer weight vectors.  Tensor and symmetric
powers act on weights as sums over ordered tuples / unordered multisets;
the recovery routine inverts the symmetric power by peeling weights in
descending lexicographic order and verifying by full forward expansion.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations_with_replacement, product

from .errors import (
    NonIntegralLeadingWeightError,
    RankMismatchError,
    SizeMismatchError,
    TheoremViolationError,
    VerificationFailedError,
)
from .exactnum import LaurentPolynomial


class WeightMultiset:
    """Multiset of integer weight vectors, stored in descending lex order."""

    __slots__ = ("rank", "weights")

    def __init__(self, rank: int, weights):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        ws = tuple(sorted((tuple(int(x) for x in w) for w in weights), reverse=True))
        if not ws:
            raise ValueError("weight multiset must be nonempty")
        if any(len(w) != rank for w in ws):
            raise ValueError(f"every weight must have length {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "weights", ws)

    def __setattr__(self, *args):
        raise AttributeError("WeightMultiset is immutable")

    @classmethod
    def from_weights(cls, weights) -> "WeightMultiset":
        weights = [tuple(int(x) for x in w) for w in weights]
        if not weights:
            raise ValueError("weight multiset must be nonempty")
        return cls(len(weights[0]), weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.rank == other.rank and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.rank, self.weights))

    def __repr__(self) -> str:
        return f"WeightMultiset(rank={self.rank}, weights={list(self.weights)})"

    def counter(self) -> Counter:
        return Counter(self.weights)


def character(w: WeightMultiset) -> LaurentPolynomial:
    """Sum over weights (with multiplicity) of the corresponding monomial."""
    terms: dict[tuple[int, ...], int] = {}
    for wt in w.weights:
        terms[wt] = terms.get(wt, 0) + 1
    return LaurentPolynomial(w.rank, terms)


def _vec_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def tensor_power(w: WeightMultiset, k: int) -> WeightMultiset:
    """All sums of ordered k-tuples of weights; size n^k."""
    if k < 1:
        raise ValueError("power must be positive")
    zero = (0,) * w.rank
    sums = []
    for combo in product(w.weights, repeat=k):
        acc = zero
        for wt in combo:
            acc = _vec_add(acc, wt)
        sums.append(acc)
    return WeightMultiset(w.rank, sums)


def symmetric_power(w: WeightMultiset, k: int) -> WeightMultiset:
    """Sums over unordered k-multisets of weight positions; size C(n+k-1, k)."""
    if k < 1:
        raise ValueError("power must be positive")
    zero = (0,) * w.rank
    sums = []
    for combo in combinations_with_replacement(range(len(w.weights)), k):
        acc = zero
        for i in combo:
            acc = _vec_add(acc, w.weights[i])
        sums.append(acc)
    return WeightMultiset(w.rank, sums)


def recover_from_symmetric_power(s: WeightMultiset, k: int, n: int) -> WeightMultiset:
    """The unique size-n multiset w with symmetric_power(w, k) = s, if it exists.

    The top weight is lexmax(s)/k.  With a recovered prefix R, every sum of
    k weights not yet explained contains an unrecovered weight, and
    replacing its other factors by the top weight lexicographically
    dominates, so the lexmax unexplained sum is (k-1)*top + next weight.
    The greedy peel can be fooled by multiplicity collisions, so the result
    is verified by full forward expansion.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    from math import comb

    if len(s) != comb(n + k - 1, k):
        raise VerificationFailedError(
            f"size {len(s)} is not C({n}+{k}-1, {k}) = {comb(n + k - 1, k)}"
        )
    available = s.counter()
    top_sum = max(available)
    if any(c % k for c in top_sum):
        raise NonIntegralLeadingWeightError(f"lexmax {top_sum} is not divisible by {k}")
    top = tuple(c // k for c in top_sum)
    recovered = [top]
    while len(recovered) < n:
        explained = Counter()
        for combo in combinations_with_replacement(range(len(recovered)), k):
            acc = (0,) * s.rank
            for i in combo:
                acc = _vec_add(acc, recovered[i])
            explained[acc] += 1
        residual = available - explained
        if explained - available:
            raise VerificationFailedError("explained sums exceed the input multiset")
        if not residual:
            raise VerificationFailedError("ran out of unexplained sums before recovering n weights")
        nxt_sum = max(residual)
        nxt = tuple(a - (k - 1) * t for a, t in zip(nxt_sum, top))
        recovered.append(nxt)
    result = WeightMultiset(s.rank, recovered)
    if symmetric_power(result, k) != s:
        raise VerificationFailedError("input is not a k-th symmetric power of any size-n multiset")
    return result


def char_power_equal(w1: WeightMultiset, w2: WeightMultiset, m: int) -> bool:
    """Whether character(w1)^m = character(w2)^m exactly."""
    if w1.rank != w2.rank:
        raise RankMismatchError(f"rank {w1.rank} vs {w2.rank}")
    if m < 1:
        raise ValueError("power must be positive")
    return character(w1) ** m == character(w2) ** m


def conclude_equivalence(w1: WeightMultiset, w2: WeightMultiset, m: int) -> bool:
    """char_power_equal, plus the guarantee that a true answer forces w1 = w2.

    For connected (torus) monodromy, equal character powers imply equal
    weight multisets; that implication is asserted on every call and a
    failure raises TheoremViolationError rather than returning quietly.
    """
    if w1.rank != w2.rank:
        raise RankMismatchError(f"rank {w1.rank} vs {w2.rank}")
    if len(w1) != len(w2):
        raise SizeMismatchError(f"size {len(w1)} vs {len(w2)}")
    equal_powers = char_power_equal(w1, w2, m)
    if equal_powers and w1 != w2:
        raise TheoremViolationError(
            f"character powers agree at m={m} but weight multisets differ: "
            f"{list(w1.weights)} vs {list(w2.weights)}"
        )
    return equal_powers
