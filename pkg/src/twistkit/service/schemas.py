"""Pydantic request/response models for the service.

All exact values cross the wire losslessly: rationals as strings like
"3/4", huge integers as decimal strings, everything else as Python ints
(arbitrary precision).  Request models reject unknown fields.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -- shared ------------------------------------------------------------------


class DensityReportModel(StrictModel):
    count: int
    total: int
    empirical: str
    running_sup: str
    checkpoints: list[tuple[int, int, int]]


class TableEntryModel(StrictModel):
    p: int
    ap: str


class TableModel(StrictModel):
    label: str
    level_hint: int
    weight: int
    entries: list[TableEntryModel]


class CharacterModel(StrictModel):
    modulus: int
    exponents: list[int]
    order: int
    conductor: int


# -- localfield ---------------------------------------------------------------


class BoundRequest(StrictModel):
    n: int = Field(ge=1)
    ell: int = Field(ge=2)
    degree: int = Field(default=1, ge=1)


class BoundResponse(StrictModel):
    n: int
    ell: int
    degree: int
    degree_bound: int
    m0: int
    witness_f: int
    witness_a: int
    sharp_exponent: int
    paper_exponent_factorial_of: int
    paper_exponent: str | None
    paper_exponent_digits: int | None


class CandidatesRequest(StrictModel):
    n: int = Field(ge=1)


class CandidatesResponse(StrictModel):
    n: int
    exponents: list[int]
    lcm: int


class PowerExponentRequest(StrictModel):
    a: list[list[int | str]]
    b: list[list[int | str]]


class PowerExponentResponse(StrictModel):
    exponent: int | None


# -- density ------------------------------------------------------------------


class ThresholdRequest(StrictModel):
    c1: int = Field(ge=1)
    c2: int = Field(ge=1)


class ValueResponse(StrictModel):
    value: str


class LiftRequest(StrictModel):
    delta: str
    d: int = Field(ge=1)


class EmpiricalRequest(StrictModel):
    members: list[int]
    cutoff: int
    checkpoints: list[int]


class ChebRequest(StrictModel):
    group_text: str
    xset: str = "all"
    trials: int | None = Field(default=None, ge=1)
    seed: int = 0


class ChebResponse(StrictModel):
    group_order: int
    normal_order: int
    components: int
    density: str
    component_index: int | None
    component: str | None
    is_coset_union: bool
    sample: DensityReportModel | None


# -- weights ------------------------------------------------------------------


class WeightsExpandRequest(StrictModel):
    weights: list[list[int]]
    k: int = Field(ge=1)
    kind: str = Field(pattern="^(tensor|symmetric)$")


class WeightsResponse(StrictModel):
    weights: list[list[int]]


class WeightsRecoverRequest(StrictModel):
    weights: list[list[int]]
    k: int = Field(ge=1)
    n: int = Field(ge=1)


class WeightsPowerRequest(StrictModel):
    w1: list[list[int]]
    w2: list[list[int]]
    m: int = Field(ge=1)
    conclude: bool = False


class WeightsPowerResponse(StrictModel):
    equal: bool
    multisets_equal: bool | None


# -- modular ------------------------------------------------------------------


class ApRequest(StrictModel):
    a: int
    b: int
    max_prime: int = Field(ge=5)
    label: str | None = None
    threads: int = Field(default=1, ge=1, le=64)


class LocusRequest(StrictModel):
    f: TableModel
    g: TableModel
    check_hasse: bool = True


class LocusResponse(StrictModel):
    exponents: list[tuple[int, int]]
    density: DensityReportModel


class TwistRequest(StrictModel):
    f: TableModel
    g: TableModel
    max_conductor: int = Field(ge=1)
    check_hasse: bool = True
    assume_non_cm: bool = True


class TwistResponse(StrictModel):
    locus: LocusResponse
    matches: list[CharacterModel]
    primes_checked: int
    search_bound: int
    anomaly: bool
    non_cm_declared: bool
