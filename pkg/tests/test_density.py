import random
from fractions import Fraction

import pytest

from twistkit.arith import sieve_primes
from twistkit.density import (
    ClassStableSet,
    ComponentModel,
    PrimeSet,
    chebotarev_density,
    empirical_upper_density,
    find_component_in,
    format_cycles,
    generate_group,
    lift_density,
    parse_cycles,
    perm_compose,
    perm_inverse,
    sample_frobenius,
    threshold,
)
from twistkit.errors import GroupTooLargeError, NotStableError, UsageError


def s3():
    gens = [parse_cycles("(1 2 3)", 3), parse_cycles("(1 2)", 3)]
    return ComponentModel(3, gens, [parse_cycles("(1 2 3)", 3)])


def s4_over_a4():
    gens = [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)]
    normal = [parse_cycles("(1 2 3)", 4), parse_cycles("(2 3 4)", 4)]
    return ComponentModel(4, gens, normal)


# -- exact density arithmetic -------------------------------------------------


def test_threshold_examples():
    assert threshold(1, 7) == 0
    assert threshold(2, 3) == Fraction(1, 2)
    assert threshold(3, 3) == Fraction(2, 3)


def test_lift_density_examples():
    for d in range(1, 8):
        assert lift_density(Fraction(1), d) == 1
        assert lift_density(1 - Fraction(1, d), d) == 0
    assert lift_density(Fraction(9, 10), 2) == Fraction(4, 5)


def test_lift_density_positive_iff_above_threshold():
    rng = random.Random(3)
    for _ in range(100):
        d = rng.randrange(1, 9)
        delta = Fraction(rng.randrange(0, 33), 32)
        if delta > 1:
            continue
        assert (lift_density(delta, d) > 0) == (delta > 1 - Fraction(1, d))


def test_empirical_density_examples():
    primes = sieve_primes(1000)
    full = PrimeSet(tuple(primes), 1000)
    rep = empirical_upper_density(full, [100, 1000])
    assert rep.empirical == 1
    assert rep.running_sup == 1
    empty = PrimeSet((), 1000)
    rep = empirical_upper_density(empty, [1000])
    assert rep.empirical == 0


def test_empirical_density_one_mod_four():
    primes = sieve_primes(100000)
    s = PrimeSet(tuple(p for p in primes if p % 4 == 1), 100000)
    rep = empirical_upper_density(s, [1000, 10000, 100000])
    assert abs(rep.empirical - Fraction(1, 2)) < Fraction(2, 100)
    assert rep.running_sup >= rep.empirical


def test_primeset_validation():
    with pytest.raises(UsageError):
        PrimeSet((4,), 10)
    with pytest.raises(UsageError):
        PrimeSet((5, 3), 10)
    with pytest.raises(UsageError):
        PrimeSet((13,), 10)


def test_checkpoint_validation():
    s = PrimeSet((2, 3, 5), 10)
    with pytest.raises(UsageError):
        empirical_upper_density(s, [5])  # last != cutoff
    with pytest.raises(UsageError):
        empirical_upper_density(s, [10, 5])


# -- permutations and groups --------------------------------------------------


def test_cycle_parse_format_round_trip():
    for text, degree in (("(1 2 3)", 3), ("(1 2)(3 4)", 4), ("()", 5), ("(2 4)", 4)):
        p = parse_cycles(text, degree)
        assert parse_cycles(format_cycles(p), degree) == p


def test_compose_inverse():
    p = parse_cycles("(1 2 3)", 4)
    q = parse_cycles("(3 4)", 4)
    # (p*q)(x) = p(q(x)): q sends 3->4 (0-based 2->3), p fixes 3, so 2 -> 3
    assert perm_compose(p, q)[2] == 3
    assert perm_compose(p, perm_inverse(p)) == (0, 1, 2, 3)


def test_generate_group_sizes():
    assert len(generate_group([parse_cycles("(1 2 3 4 5)", 5)], 5)) == 5
    assert len(generate_group([parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)], 4)) == 24
    with pytest.raises(GroupTooLargeError):
        gens = [parse_cycles("(1 2)", 9), parse_cycles("(1 2 3 4 5 6 7 8 9)", 9)]
        generate_group(gens, 9)  # S9 has 362880 elements


def test_component_model_structure():
    model = s3()
    assert len(model) == 6
    assert model.c == 2
    assert model.component_representative(0) == (0, 1, 2)
    with pytest.raises(UsageError):
        # <(1 2)> is not normal in S3
        ComponentModel(3, model.generators, [parse_cycles("(1 2)", 3)])


def test_class_stable_set_checks():
    model = s3()
    with pytest.raises(NotStableError):
        ClassStableSet(model, [parse_cycles("(1 2)", 3)])  # single transposition
    # in S3 the transposition class is the whole odd coset
    cls_set = ClassStableSet.conjugacy_class_closure(model, [parse_cycles("(1 2)", 3)])
    assert len(cls_set.elements) == 3
    assert cls_set.is_coset_union
    assert cls_set.elements == ClassStableSet.coset_of(model, parse_cycles("(1 2)", 3)).elements
    # in S4 the 6 transpositions are a proper subset of the 12 odd permutations
    m4 = s4_over_a4()
    transpositions = ClassStableSet.conjugacy_class_closure(m4, [parse_cycles("(1 2)", 4)])
    assert len(transpositions.elements) == 6
    assert not transpositions.is_coset_union


def test_chebotarev_exact_examples():
    model = s3()
    assert chebotarev_density(model, ClassStableSet.whole_group(model)) == 1
    odd = ClassStableSet.coset_of(model, parse_cycles("(1 2)", 3))
    assert chebotarev_density(model, odd) == Fraction(1, 2)
    m4 = s4_over_a4()
    four_cycles = ClassStableSet.conjugacy_class_closure(m4, [parse_cycles("(1 2 3 4)", 4)])
    assert len(four_cycles.elements) == 6  # 6 four-cycles inside 12 odd permutations
    assert chebotarev_density(m4, four_cycles) == 0


def test_chebotarev_density_is_multiple_of_one_over_c():
    model = s4_over_a4()
    for x in (
        ClassStableSet.whole_group(model),
        ClassStableSet.empty(model),
        ClassStableSet.conjugacy_class_closure(model, [parse_cycles("(1 2 3 4)", 4)]),
    ):
        d = chebotarev_density(model, x)
        assert (d * model.c).denominator == 1


def test_find_component_examples():
    model = s3()
    assert find_component_in(model, ClassStableSet.whole_group(model)) == 0
    assert find_component_in(model, ClassStableSet.empty(model)) is None
    m4 = s4_over_a4()
    odd = ClassStableSet.conjugacy_class_closure(
        m4, [parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)]
    )
    assert len(odd.elements) == 12
    idx = find_component_in(m4, odd)
    assert idx is not None and m4.components[idx] <= odd.elements


def test_find_component_iff_positive_density():
    model = s3()
    for x in (
        ClassStableSet.whole_group(model),
        ClassStableSet.empty(model),
        ClassStableSet.coset_of(model, parse_cycles("(1 2)", 3)),
        ClassStableSet.conjugacy_class_closure(model, [parse_cycles("(1 2)", 3)]),
    ):
        assert (find_component_in(model, x) is not None) == (chebotarev_density(model, x) > 0)


# -- sampling -----------------------------------------------------------------


def test_sampler_exact_endpoints():
    model = s3()
    assert sample_frobenius(model, ClassStableSet.whole_group(model), 500, 9).empirical == 1
    assert sample_frobenius(model, ClassStableSet.empty(model), 500, 9).empirical == 0


def test_sampler_binomial_bound_and_determinism():
    model = s3()
    odd = ClassStableSet.coset_of(model, parse_cycles("(1 2)", 3))
    rep = sample_frobenius(model, odd, 100000, 1)
    assert rep == sample_frobenius(model, odd, 100000, 1)
    assert abs(rep.empirical - Fraction(1, 2)) <= Fraction(5, 1000)


def test_sampler_tracks_exact_density_on_coset_unions():
    rng = random.Random(44)
    m4 = s4_over_a4()
    odd_coset = ClassStableSet.coset_of(m4, parse_cycles("(1 2)", 4))
    for seed in (rng.randrange(2**32) for _ in range(3)):
        rep = sample_frobenius(m4, odd_coset, 20000, seed)
        p = chebotarev_density(m4, odd_coset)
        # 3*sqrt(p(1-p)/n) with p = 1/2, n = 20000 is < 0.0107
        assert abs(rep.empirical - p) <= Fraction(107, 10000)
