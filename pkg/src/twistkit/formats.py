"""File formats: eigenvalue JSONL, weight-multiset text, permutation-group text.

Eigenvalue tables are JSON lines: a header record
``{"label": ..., "level_hint": ..., "weight": ...}`` followed by one record
``{"p": <int>, "ap": "<decimal integer>"}`` per prime, primes strictly
ascending.  Cyclotomic ``ap`` vectors are reserved by the format but not
accepted yet.

Weight multisets are plain text: one weight per line as comma-separated
integers, multiplicity by repetition; ``#`` starts a comment.

Groups are plain text: a ``degree N`` line, then ``gen <cycles>`` and
``normal <cycles>`` lines in 1-based cycle notation, e.g. ``(1 2 3)(4 5)``.
"""

from __future__ import annotations

import json
from typing import IO

from .density import ClassStableSet, ComponentModel, parse_cycles
from .errors import FormatError, UsageError
from .modular import EigenvalueTable
from .weights import WeightMultiset

# -- eigenvalue tables -------------------------------------------------------


def write_eigenvalue_jsonl(table: EigenvalueTable, fh: IO[str]) -> None:
    header = {"label": table.label, "level_hint": table.level_hint, "weight": table.weight}
    fh.write(json.dumps(header, sort_keys=True) + "\n")
    for p in table.primes:
        ap = table.entries[p]
        if not isinstance(ap, int):
            raise FormatError("only integer eigenvalues can be serialized (cyclotomic form reserved)")
        fh.write(json.dumps({"ap": str(ap), "p": p}, sort_keys=True) + "\n")


def read_eigenvalue_jsonl(fh: IO[str]) -> EigenvalueTable:
    lines = [ln for ln in fh if ln.strip()]
    if not lines:
        raise FormatError("empty eigenvalue file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad header line: {exc}") from exc
    for key in ("label", "level_hint", "weight"):
        if key not in header:
            raise FormatError(f"header missing {key!r}")
    entries: dict[int, int] = {}
    last_p = 0
    for ln in lines[1:]:
        try:
            rec = json.loads(ln)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad record: {exc}") from exc
        if "p" not in rec or "ap" not in rec:
            raise FormatError(f"record missing p/ap: {rec}")
        p = rec["p"]
        if not isinstance(p, int):
            raise FormatError(f"prime must be a JSON integer: {rec}")
        if p <= last_p:
            raise FormatError(f"primes must be strictly ascending; {p} after {last_p}")
        last_p = p
        ap = rec["ap"]
        if isinstance(ap, list):
            raise FormatError("cyclotomic eigenvalue vectors are reserved and not yet accepted")
        if not isinstance(ap, str):
            raise FormatError(f"ap must be a decimal string: {rec}")
        try:
            entries[p] = int(ap, 10)
        except ValueError as exc:
            raise FormatError(f"ap is not a decimal integer: {ap!r}") from exc
    try:
        return EigenvalueTable(
            label=str(header["label"]),
            level_hint=int(header["level_hint"]),
            weight=int(header["weight"]),
            entries=entries,
        )
    except UsageError as exc:
        raise FormatError(str(exc)) from exc


# -- weight multisets --------------------------------------------------------


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_weights_text(text: str) -> WeightMultiset:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("no weights found")
    weights = []
    for line in lines:
        try:
            weights.append(tuple(int(tok) for tok in line.split(",")))
        except ValueError as exc:
            raise FormatError(f"bad weight line {line!r}") from exc
    if len({len(w) for w in weights}) != 1:
        raise FormatError("all weights must have the same rank")
    return WeightMultiset.from_weights(weights)


def format_weights_text(w: WeightMultiset) -> str:
    return "\n".join(",".join(str(x) for x in wt) for wt in w.weights) + "\n"


# -- permutation groups ------------------------------------------------------


def parse_group_text(text: str) -> ComponentModel:
    degree = None
    gen_specs: list[str] = []
    normal_specs: list[str] = []
    for line in _content_lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "degree":
            try:
                degree = int(rest)
            except ValueError as exc:
                raise FormatError(f"bad degree line {line!r}") from exc
        elif key == "gen":
            gen_specs.append(rest)
        elif key == "normal":
            normal_specs.append(rest)
        else:
            raise FormatError(f"unknown directive {key!r}")
    if degree is None or degree < 1:
        raise FormatError("group file needs a positive 'degree N' line first")
    if not gen_specs:
        raise FormatError("group file needs at least one 'gen' line")
    if not normal_specs:
        raise FormatError("group file needs at least one 'normal' line")
    gens = [parse_cycles(s, degree) for s in gen_specs]
    normal = [parse_cycles(s, degree) for s in normal_specs]
    return ComponentModel(degree, gens, normal)


def parse_xset(model: ComponentModel, selector: str) -> ClassStableSet:
    """Build a conjugation-stable set from a selector string.

    Selectors: ``all``, ``none``, ``class:<cycles>`` (conjugacy-class
    closure), ``coset:<cycles>`` (the component containing the element);
    unions join parts with ``+``.
    """
    selector = selector.strip()
    if selector == "all":
        return ClassStableSet.whole_group(model)
    if selector == "none":
        return ClassStableSet.empty(model)
    result = None
    for part in selector.split("+"):
        part = part.strip()
        kind, _, cycles = part.partition(":")
        if kind not in ("class", "coset") or not cycles:
            raise FormatError(f"bad xset part {part!r}; expected class:<cycles> or coset:<cycles>")
        perm = parse_cycles(cycles, model.degree)
        piece = (
            ClassStableSet.conjugacy_class_closure(model, [perm])
            if kind == "class"
            else ClassStableSet.coset_of(model, perm)
        )
        result = piece if result is None else result.union(piece)
    return result
