"""FastAPI app wiring the core modules behind JSON endpoints.

Domain errors map to HTTP 400 (bad input) and verification anomalies to
HTTP 409; both carry a ``detail`` string.  The thin-client CLI turns those
into exit codes 1 and 2.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..density import (
    ClassStableSet,
    DensityReport,
    PrimeSet,
    chebotarev_density,
    empirical_upper_density,
    find_component_in,
    format_cycles,
    lift_density,
    sample_frobenius,
    threshold,
)
from ..errors import UsageError, VerificationAnomaly
from ..formats import parse_group_text, parse_xset
from ..localfield import (
    LocalFieldSpec,
    candidate_global_exponents,
    power_conjugate_exponent,
    uniform_exponent,
)
from ..modular import (
    EigenvalueTable,
    EllipticCurve,
    PowerLocus,
    ap_table,
    power_locus,
    twist_pipeline,
)
from ..weights import (
    WeightMultiset,
    char_power_equal,
    conclude_equivalence,
    recover_from_symmetric_power,
    symmetric_power,
    tensor_power,
)
from . import schemas as S

# beyond this the factorial exponent is too large to materialize in a response
PAPER_EXPONENT_CAP = 10_000


def _report_model(report: DensityReport) -> S.DensityReportModel:
    return S.DensityReportModel(
        count=report.count,
        total=report.total,
        empirical=str(report.empirical),
        running_sup=str(report.running_sup),
        checkpoints=list(report.checkpoints),
    )


def _table_from_model(model: S.TableModel) -> EigenvalueTable:
    entries: dict[int, int] = {}
    last = 0
    for entry in model.entries:
        if entry.p <= last:
            raise UsageError(f"primes must be strictly ascending; {entry.p} after {last}")
        last = entry.p
        try:
            entries[entry.p] = int(entry.ap, 10)
        except ValueError as exc:
            raise UsageError(f"ap is not a decimal integer: {entry.ap!r}") from exc
    return EigenvalueTable(
        label=model.label, level_hint=model.level_hint, weight=model.weight, entries=entries
    )


def _table_to_model(table: EigenvalueTable) -> S.TableModel:
    return S.TableModel(
        label=table.label,
        level_hint=table.level_hint,
        weight=table.weight,
        entries=[S.TableEntryModel(p=p, ap=str(table.entries[p])) for p in table.primes],
    )


def _locus_model(locus: PowerLocus) -> S.LocusResponse:
    return S.LocusResponse(
        exponents=sorted(locus.primes.items()),
        density=_report_model(locus.density_report),
    )


def _weight_multiset(rows: list[list[int]]) -> WeightMultiset:
    return WeightMultiset.from_weights(rows)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc


def _parse_matrix(rows: list[list[int | str]]):
    try:
        return tuple(tuple(Fraction(x) for x in row) for row in rows)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational matrix entry: {exc}") from exc


def create_app() -> FastAPI:
    app = FastAPI(title="twistkit", version=__version__)

    @app.exception_handler(UsageError)
    async def _usage_error(request: Request, exc: UsageError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(VerificationAnomaly)
    async def _anomaly(request: Request, exc: VerificationAnomaly):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    # -- localfield

    @app.post("/bound", response_model=S.BoundResponse)
    def bound(req: S.BoundRequest) -> S.BoundResponse:
        report = uniform_exponent(req.n, LocalFieldSpec(req.ell, req.degree))
        paper = digits = None
        if report.m0 <= PAPER_EXPONENT_CAP:
            value = report.paper_exponent
            paper, digits = str(value), len(str(value))
        return S.BoundResponse(
            n=req.n,
            ell=req.ell,
            degree=req.degree,
            degree_bound=report.degree_bound,
            m0=report.m0,
            witness_f=report.witness[0],
            witness_a=report.witness[1],
            sharp_exponent=report.sharp_exponent,
            paper_exponent_factorial_of=report.m0,
            paper_exponent=paper,
            paper_exponent_digits=digits,
        )

    @app.post("/localfield/candidates", response_model=S.CandidatesResponse)
    def candidates(req: S.CandidatesRequest) -> S.CandidatesResponse:
        from math import lcm

        exps = sorted(candidate_global_exponents(req.n))
        acc = 1
        for w in exps:
            acc = lcm(acc, w)
        return S.CandidatesResponse(n=req.n, exponents=exps, lcm=acc)

    @app.post("/localfield/power-exponent", response_model=S.PowerExponentResponse)
    def power_exponent(req: S.PowerExponentRequest) -> S.PowerExponentResponse:
        m = power_conjugate_exponent(_parse_matrix(req.a), _parse_matrix(req.b))
        return S.PowerExponentResponse(exponent=m)

    # -- density

    @app.post("/density/threshold", response_model=S.ValueResponse)
    def density_threshold(req: S.ThresholdRequest) -> S.ValueResponse:
        return S.ValueResponse(value=str(threshold(req.c1, req.c2)))

    @app.post("/density/lift", response_model=S.ValueResponse)
    def density_lift(req: S.LiftRequest) -> S.ValueResponse:
        return S.ValueResponse(value=str(lift_density(_parse_fraction(req.delta), req.d)))

    @app.post("/density/empirical", response_model=S.DensityReportModel)
    def density_empirical(req: S.EmpiricalRequest) -> S.DensityReportModel:
        s = PrimeSet(tuple(req.members), req.cutoff)
        return _report_model(empirical_upper_density(s, req.checkpoints))

    @app.post("/cheb", response_model=S.ChebResponse)
    def cheb(req: S.ChebRequest) -> S.ChebResponse:
        model = parse_group_text(req.group_text)
        xset = parse_xset(model, req.xset)
        idx = find_component_in(model, xset)
        sample = None
        if req.trials is not None:
            sample = _report_model(sample_frobenius(model, xset, req.trials, req.seed))
        return S.ChebResponse(
            group_order=len(model),
            normal_order=len(model.normal),
            components=model.c,
            density=str(chebotarev_density(model, xset)),
            component_index=idx,
            component=None if idx is None else format_cycles(model.component_representative(idx)),
            is_coset_union=xset.is_coset_union,
            sample=sample,
        )

    # -- weights

    @app.post("/weights/expand", response_model=S.WeightsResponse)
    def weights_expand(req: S.WeightsExpandRequest) -> S.WeightsResponse:
        w = _weight_multiset(req.weights)
        out = tensor_power(w, req.k) if req.kind == "tensor" else symmetric_power(w, req.k)
        return S.WeightsResponse(weights=[list(wt) for wt in out.weights])

    @app.post("/weights/recover", response_model=S.WeightsResponse)
    def weights_recover(req: S.WeightsRecoverRequest) -> S.WeightsResponse:
        s = _weight_multiset(req.weights)
        out = recover_from_symmetric_power(s, req.k, req.n)
        return S.WeightsResponse(weights=[list(wt) for wt in out.weights])

    @app.post("/weights/power-check", response_model=S.WeightsPowerResponse)
    def weights_power_check(req: S.WeightsPowerRequest) -> S.WeightsPowerResponse:
        w1, w2 = _weight_multiset(req.w1), _weight_multiset(req.w2)
        if req.conclude:
            equal = conclude_equivalence(w1, w2, req.m)
            return S.WeightsPowerResponse(equal=equal, multisets_equal=w1 == w2)
        return S.WeightsPowerResponse(equal=char_power_equal(w1, w2, req.m), multisets_equal=None)

    # -- modular

    @app.post("/ap", response_model=S.TableModel)
    def ap(req: S.ApRequest) -> S.TableModel:
        table = ap_table(EllipticCurve(req.a, req.b), req.max_prime, label=req.label, threads=req.threads)
        return _table_to_model(table)

    @app.post("/locus", response_model=S.LocusResponse)
    def locus(req: S.LocusRequest) -> S.LocusResponse:
        f, g = _table_from_model(req.f), _table_from_model(req.g)
        if req.check_hasse:
            for t in (f, g):
                if t.weight == 2:
                    t.verify_hasse()
        return _locus_model(power_locus(f, g))

    @app.post("/twist", response_model=S.TwistResponse)
    def twist(req: S.TwistRequest) -> S.TwistResponse:
        f, g = _table_from_model(req.f), _table_from_model(req.g)
        if req.check_hasse:
            for t in (f, g):
                if t.weight == 2:
                    t.verify_hasse()
        result = twist_pipeline(f, g, req.max_conductor, non_cm_declared=req.assume_non_cm)
        matches = [
            S.CharacterModel(
                modulus=chi.modulus,
                exponents=list(chi.exponents),
                order=chi.order,
                conductor=cond,
            )
            for chi, cond in result.twist.matches
        ]
        return S.TwistResponse(
            locus=_locus_model(result.locus),
            matches=matches,
            primes_checked=result.twist.primes_checked,
            search_bound=result.twist.search_bound,
            anomaly=result.anomaly,
            non_cm_declared=result.non_cm_declared,
        )

    return app


app = create_app()
