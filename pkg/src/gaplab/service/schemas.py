"""Request and response bodies for the HTTP service."""
from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    censuses_loaded: int


class CensusBuildRequest(BaseModel):
    limit: int = Field(ge=2, description="inclusive sieve bound")
    exponents: list[int] = Field(min_length=1, description="checkpoints x = 2^j")
    segment_bits: int = Field(default=1 << 22)
    threads: int = Field(default=1, ge=1)
    persist_dir: str | None = Field(default=None, description="also export files here")


class CensusLoadRequest(BaseModel):
    directory: str


class CensusSummary(BaseModel):
    x: int
    pi_x: int
    p_last: int | None
    distinct_gaps: int
    max_gap: int


class CensusDetail(CensusSummary):
    counts: dict[int, int]


class GapCountResponse(BaseModel):
    x: int
    d: int
    count: int


class MomentRequest(BaseModel):
    x: int
    k: float = Field(ge=0)
    predictors: list[str] = ["hb", "closed", "pnt"]


class MomentResponse(BaseModel):
    x: int
    k: float
    exact: int | float
    predictions: dict[str, float]
    ratios: dict[str, float]


class RatioTableRequest(BaseModel):
    k: int = Field(ge=2, le=4)
    x_min: int | None = None
    x_max: int | None = None


class RatioTableRow(BaseModel):
    x: int
    hb: float
    closed: float
    pnt: float


class RatioTableResponse(BaseModel):
    k: int
    rows: list[RatioTableRow]


class ErrorFitRequest(BaseModel):
    k: float
    predictor: str = "hb"
    x_min: int | None = None
    x_max: int | None = None


class ErrorFitResponse(BaseModel):
    k: float
    predictor: str
    amplitude: float
    alpha: float
    pointwise_amplitude: float
    residual_rms: float
    window: list[int]


class DknFitRequest(BaseModel):
    k: int = Field(ge=1)
    order: int = Field(ge=0)
    x_min: int | None = None
    x_max: int | None = None


class DknFitResponse(BaseModel):
    k: int
    order: int
    coefficients: list[float]
    condition_number: float


class ExpansionRequest(BaseModel):
    variant: str
    k: float
    order: int = Field(default=4, ge=0, le=8)


class ExpansionResponse(BaseModel):
    variant: str
    k: float
    order: int
    coefficients: list[str]
    decimals: list[float]


class TwinConstantResponse(BaseModel):
    value: float
    prime_limit: int
    tail_bound: float
