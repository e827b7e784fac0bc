"""The checked-in format examples under tests/data/ stay parseable and correct."""

import pathlib

from twistkit.density import chebotarev_density, parse_cycles
from twistkit.formats import (
    parse_group_text,
    parse_weights_text,
    parse_xset,
    read_eigenvalue_jsonl,
)
from twistkit.modular import find_twist
from twistkit.weights import WeightMultiset

DATA = pathlib.Path(__file__).parent / "data"


def test_golden_eigenvalue_tables_twist():
    with open(DATA / "demo_curve.jsonl") as fh:
        f = read_eigenvalue_jsonl(fh)
    with open(DATA / "demo_twist.jsonl") as fh:
        g = read_eigenvalue_jsonl(fh)
    assert f.label == "demo_curve" and g.label == "demo_twist"
    rep = find_twist(f, g, 8)
    assert [cond for _, cond in rep.matches] == [4]


def test_golden_group_file():
    model = parse_group_text((DATA / "s3_over_a3.grp").read_text())
    odd = parse_xset(model, "coset:(1 2)")
    assert chebotarev_density(model, odd) * 2 == 1
    assert parse_cycles("(1 2 3)", 3) in model.normal


def test_golden_weights_file():
    w = parse_weights_text((DATA / "pair.weights").read_text())
    assert w == WeightMultiset(1, [(1,), (-1,)])
