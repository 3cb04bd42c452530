"""FastAPI surface over the census laboratory.

Censuses live in process memory, keyed by threshold; building or loading
replaces any census already stored at the same threshold. Domain failures
from the library surface as 422, missing data as 404.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException

from ..analysis import expansion_coefficients, fit_dkn, fit_error_term, ratio_table
from ..census import CensusSeries, GapCensus, build_census, export_census, load_series
from ..errors import CensusValidationError
from ..moments import moment_report
from ..singular import twin_prime_constant
from .schemas import (
    CensusBuildRequest,
    CensusDetail,
    CensusLoadRequest,
    CensusSummary,
    DknFitRequest,
    DknFitResponse,
    ErrorFitRequest,
    ErrorFitResponse,
    ExpansionRequest,
    ExpansionResponse,
    GapCountResponse,
    HealthResponse,
    MomentRequest,
    MomentResponse,
    RatioTableRequest,
    RatioTableResponse,
    RatioTableRow,
    TwinConstantResponse,
)

app = FastAPI(title="gaplab", version="0.1.0")

STORE: dict[int, GapCensus] = {}


def _summary(census: GapCensus) -> CensusSummary:
    return CensusSummary(
        x=census.x,
        pi_x=census.pi_x,
        p_last=census.p_last,
        distinct_gaps=len(census.counts),
        max_gap=census.max_gap,
    )


def _get_census(x: int) -> GapCensus:
    census = STORE.get(x)
    if census is None:
        raise HTTPException(status_code=404, detail=f"no census loaded at x={x}")
    return census


def _series(x_min: int | None = None, x_max: int | None = None) -> CensusSeries:
    chosen = [
        STORE[x]
        for x in sorted(STORE)
        if (x_min is None or x >= x_min) and (x_max is None or x <= x_max)
    ]
    if not chosen:
        raise HTTPException(status_code=404, detail="no censuses loaded in that range")
    try:
        return CensusSeries(tuple(chosen))
    except CensusValidationError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", censuses_loaded=len(STORE))


@app.post("/census/build", response_model=list[CensusSummary])
def census_build(request: CensusBuildRequest) -> list[CensusSummary]:
    try:
        series = build_census(
            request.limit,
            request.exponents,
            segment_bits=request.segment_bits,
            threads=request.threads,
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    if request.persist_dir is not None:
        out_dir = Path(request.persist_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            for census in series:
                export_census(census, out_dir / f"census_{census.x}.txt")
        except OSError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
    for census in series:
        STORE[census.x] = census
    return [_summary(c) for c in series]


@app.post("/census/load", response_model=list[CensusSummary])
def census_load(request: CensusLoadRequest) -> list[CensusSummary]:
    try:
        series = load_series(request.directory)
    except (OSError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    for census in series:
        STORE[census.x] = census
    return [_summary(c) for c in series]


@app.get("/census", response_model=list[CensusSummary])
def census_list() -> list[CensusSummary]:
    return [_summary(STORE[x]) for x in sorted(STORE)]


@app.get("/census/{x}", response_model=CensusDetail)
def census_detail(x: int) -> CensusDetail:
    census = _get_census(x)
    return CensusDetail(
        x=census.x,
        pi_x=census.pi_x,
        p_last=census.p_last,
        distinct_gaps=len(census.counts),
        max_gap=census.max_gap,
        counts=census.counts,
    )


@app.get("/census/{x}/gaps/{d}", response_model=GapCountResponse)
def gap_count(x: int, d: int) -> GapCountResponse:
    census = _get_census(x)
    try:
        count = census.lookup(d)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return GapCountResponse(x=x, d=d, count=count)


@app.post("/moments", response_model=MomentResponse)
def moments(request: MomentRequest) -> MomentResponse:
    census = _get_census(request.x)
    try:
        report = moment_report(census, request.k, request.predictors)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return MomentResponse(
        x=report.x,
        k=report.k,
        exact=report.exact,
        predictions=report.predictions,
        ratios=report.ratios,
    )


@app.post("/tables/ratio", response_model=RatioTableResponse)
def tables_ratio(request: RatioTableRequest) -> RatioTableResponse:
    series = _series(request.x_min, request.x_max)
    try:
        table = ratio_table(series, request.k)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    rows = [RatioTableRow(x=r.x, hb=r.hb, closed=r.closed, pnt=r.pnt) for r in table.rows]
    return RatioTableResponse(k=table.k, rows=rows)


@app.post("/fit/error", response_model=ErrorFitResponse)
def fit_error(request: ErrorFitRequest) -> ErrorFitResponse:
    series = _series(request.x_min, request.x_max)
    try:
        fit = fit_error_term(series, request.k, request.predictor)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return ErrorFitResponse(
        k=fit.k,
        predictor=fit.predictor,
        amplitude=fit.amplitude,
        alpha=fit.alpha,
        pointwise_amplitude=fit.pointwise_amplitude,
        residual_rms=fit.residual_rms,
        window=list(fit.window),
    )


@app.post("/fit/dkn", response_model=DknFitResponse)
def fit_dkn_endpoint(request: DknFitRequest) -> DknFitResponse:
    series = _series(request.x_min, request.x_max)
    try:
        fit = fit_dkn(series, request.k, request.order)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return DknFitResponse(
        k=fit.k,
        order=fit.order,
        coefficients=list(fit.coefficients),
        condition_number=fit.condition_number,
    )


@app.post("/expand", response_model=ExpansionResponse)
def expand(request: ExpansionRequest) -> ExpansionResponse:
    try:
        series = expansion_coefficients(request.variant, request.k, request.order)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return ExpansionResponse(
        variant=request.variant,
        k=request.k,
        order=request.order,
        coefficients=[str(c) for c in series.coeffs],
        decimals=[float(c) for c in series.coeffs],
    )


@app.get("/constants/c2", response_model=TwinConstantResponse)
def constants_c2(prime_limit: int = 10**7) -> TwinConstantResponse:
    try:
        result = twin_prime_constant(prime_limit)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return TwinConstantResponse(
        value=result.value, prime_limit=result.prime_limit, tail_bound=result.tail_bound
    )
