"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
print.  Tolerances are pinned here, not deferred anywhere.
"""

import functools
import json
import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial

from twistkit.cli import main as cli_main
from twistkit.density import (
    ClassStableSet,
    ComponentModel,
    chebotarev_density,
    lift_density,
    parse_cycles,
    sample_frobenius,
    threshold,
)
from twistkit.localfield import (
    LocalFieldSpec,
    as_matrix,
    charpoly,
    mat_mul,
    mat_pow,
    max_roots_of_unity,
    power_conjugate_exponent,
    uniform_exponent,
)
from twistkit.modular import find_twist, fundamental_discriminant, legendre, power_locus
from twistkit.weights import (
    WeightMultiset,
    char_power_equal,
    character,
    conclude_equivalence,
    recover_from_symmetric_power,
    symmetric_power,
    tensor_power,
)

from test_localfield import mat_inv_unimodular, rand_semisimple, unimodular


def criterion(num, desc):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nFAIL criterion {num}: {desc}")
                raise
            print(f"\nPASS criterion {num}: {desc}")

        return wrapper

    return deco


@criterion(1, "twist recovery end-to-end: unique conductor-4 match, < 60 s, clean negative control")
def test_criterion_1_twist_recovery(tmp_path, capsys, table_11, table_23):
    f_path, g_path = tmp_path / "f.jsonl", tmp_path / "g.jsonl"
    start = time.monotonic()
    assert cli_main(["ap", "--curve", "1,1", "--max-prime", "10000", "--out", str(f_path)]) == 0
    assert cli_main(["ap", "--curve", "1,-1", "--max-prime", "10000", "--out", str(g_path)]) == 0
    capsys.readouterr()
    code = cli_main(["twist", str(f_path), str(g_path), "--max-conductor", "8", "--json"])
    elapsed = time.monotonic() - start
    out = capsys.readouterr().out
    assert code == 0
    body = json.loads(out)
    assert [m["conductor"] for m in body["matches"]] == [4]
    assert elapsed < 60.0, f"end-to-end took {elapsed:.1f}s"

    # independent verification of the match on every checked prime
    from twistkit.formats import read_eigenvalue_jsonl

    with open(f_path) as fh:
        f = read_eigenvalue_jsonl(fh)
    with open(g_path) as fh:
        g = read_eigenvalue_jsonl(fh)
    common = sorted(set(f.entries) & set(g.entries))
    assert body["primes_checked"] == len(common)
    d = fundamental_discriminant(-1)
    for p in common:
        assert g.entries[p] == legendre(d, p) * f.entries[p]

    # negative control: two unrelated non-CM curves, zero matches
    rep = find_twist(table_11, table_23, 8)
    assert rep.matches == ()


@criterion(2, "power locus: density exactly 1 on the twist pair, < 0.2 on the unrelated pair")
def test_criterion_2_power_locus(table_11, table_11_twisted, table_23):
    loc = power_locus(table_11, table_11_twisted)
    assert loc.density_report.empirical == 1
    assert set(loc.primes.values()) <= {1, 2}
    loc2 = power_locus(table_11, table_23)
    assert loc2.density_report.empirical < Fraction(2, 10)


@criterion(3, "Hasse bound a_p^2 <= 4p on >= 1200 primes per generated curve")
def test_criterion_3_hasse(table_11, table_11_twisted, table_23):
    for table in (table_11, table_11_twisted, table_23):
        assert len(table.entries) >= 1200
        for p, ap in table.entries.items():
            assert ap * ap <= 4 * p
        table.verify_hasse()


@criterion(4, "exponent bounds: m0(2,4) = 30, sharp = 840, paper = 30! (33 digits, checked mod 1e9+7)")
def test_criterion_4_bounds():
    assert max_roots_of_unity(2, 4) == (30, (4, 1))
    rep = uniform_exponent(2, LocalFieldSpec(2, 1))
    assert rep.sharp_exponent == 840
    paper = rep.paper_exponent
    assert paper == factorial(30)
    assert len(str(paper)) == 33
    mod = 10**9 + 7
    acc = 1
    for k in range(1, 31):  # independent factorial
        acc = acc * k % mod
    assert paper % mod == acc


@criterion(5, "power-conjugacy oracle: pinned examples plus 100 randomized pairs vs direct scan")
def test_criterion_5_oracle():
    rot = [[0, -1], [1, 0]]
    refl = [[1, 0], [0, -1]]
    assert power_conjugate_exponent(rot, refl) == 4
    assert power_conjugate_exponent([[2, 0], [0, 3]], [[2, 0], [0, 5]]) is None

    def direct_scan(a, b, limit=120):
        a, b = as_matrix(a), as_matrix(b)
        pa, pb = a, b
        for m in range(1, limit + 1):
            if charpoly(pa) == charpoly(pb):
                return m
            pa, pb = mat_mul(pa, a), mat_mul(pb, b)
        return None

    # the pinned absence survives exhausting every exponent <= 120
    assert direct_scan([[2, 0], [0, 3]], [[2, 0], [0, 5]]) is None

    rng = random.Random(20260810)
    checked = 0
    while checked < 100:
        n = rng.randrange(1, 4)
        a = rand_semisimple(rng, n)
        kind = rng.randrange(3)
        if kind == 0:
            b = rand_semisimple(rng, n)
        else:
            p = unimodular(rng, n)
            conj = mat_mul(mat_mul(p, as_matrix(a)), mat_inv_unimodular(p))
            b = conj if kind == 1 else tuple(tuple(-x for x in row) for row in conj)
        m = power_conjugate_exponent(a, b)
        assert m == power_conjugate_exponent(b, a), "oracle must be symmetric"
        oracle = direct_scan(a, b)
        if m is not None and m <= 120:
            assert oracle == m
        else:
            assert oracle is None
        if m is not None:
            am, bm = as_matrix(a), as_matrix(b)
            for t in (2, 3):
                assert charpoly(mat_pow(am, m * t)) == charpoly(mat_pow(bm, m * t))
        checked += 1


@criterion(6, "weight recovery round trip and tensor character identity on 200 randomized multisets")
def test_criterion_6_weight_recovery():
    rng = random.Random(6617)
    for _ in range(200):
        n = rng.randrange(1, 5)
        rank = rng.randrange(1, 3)
        w = WeightMultiset(rank, [tuple(rng.randrange(-3, 4) for _ in range(rank)) for _ in range(n)])
        k = rng.choice([2, 3])
        assert recover_from_symmetric_power(symmetric_power(w, k), k, n) == w
        assert character(tensor_power(w, k)) == character(w) ** k


@criterion(7, "character-power rigidity: exhaustive small search finds no false equality")
def test_criterion_7_rigidity():
    values = range(-2, 3)
    for n in (1, 2, 3):
        multisets = [
            WeightMultiset(1, [(v,) for v in combo])
            for combo in combinations_with_replacement(values, n)
        ]
        for w1, w2 in product(multisets, repeat=2):
            if w1 == w2:
                continue
            for m in range(1, 5):
                assert not char_power_equal(w1, w2, m)
    # conclude_equivalence never reports a theorem violation on randomized inputs
    rng = random.Random(77)
    for _ in range(200):
        n = rng.randrange(1, 4)
        rank = rng.randrange(1, 3)
        w1 = WeightMultiset(rank, [tuple(rng.randrange(-2, 3) for _ in range(rank)) for _ in range(n)])
        w2 = (
            w1
            if rng.random() < 0.5
            else WeightMultiset(rank, [tuple(rng.randrange(-2, 3) for _ in range(rank)) for _ in range(n)])
        )
        conclude_equivalence(w1, w2, rng.randrange(1, 5))  # must never raise


@criterion(8, "algebraic Chebotarev: exact 1/2 and 0, sampling within 0.005, byte-stable")
def test_criterion_8_chebotarev(capsys, tmp_path):
    s3 = ComponentModel(
        3, [parse_cycles("(1 2 3)", 3), parse_cycles("(1 2)", 3)], [parse_cycles("(1 2 3)", 3)]
    )
    odd = ClassStableSet.coset_of(s3, parse_cycles("(1 2)", 3))
    assert chebotarev_density(s3, odd) == Fraction(1, 2)

    s4 = ComponentModel(
        4,
        [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)],
        [parse_cycles("(1 2 3)", 4), parse_cycles("(2 3 4)", 4)],
    )
    four_cycles = ClassStableSet.conjugacy_class_closure(s4, [parse_cycles("(1 2 3 4)", 4)])
    assert chebotarev_density(s4, four_cycles) == 0

    rep = sample_frobenius(s3, odd, 100000, 1)
    assert abs(rep.empirical - Fraction(1, 2)) <= Fraction(5, 1000)  # 3-sigma binomial bound
    assert rep == sample_frobenius(s3, odd, 100000, 1)

    grp = tmp_path / "s3.grp"
    grp.write_text("degree 3\ngen (1 2 3)\ngen (1 2)\nnormal (1 2 3)\n")
    args = ["cheb", "--group", str(grp), "--xset", "coset:(1 2)", "--sample", "100000", "--seed", "1"]
    assert cli_main(args) == 0
    out1 = capsys.readouterr().out
    assert cli_main(args) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2 and out1  # byte-identical runs


@criterion(9, "threshold and lift arithmetic exact: 1/2, 2/3, 4/5, boundary 0")
def test_criterion_9_thresholds():
    assert threshold(2, 3) == Fraction(1, 2)
    assert threshold(3, 3) == Fraction(2, 3)
    assert lift_density(Fraction(9, 10), 2) == Fraction(4, 5)
    for d in range(1, 10):
        assert lift_density(1 - Fraction(1, d), d) == 0
