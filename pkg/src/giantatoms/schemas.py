"""Request and response models for the HTTP service."""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, Field, field_validator

ConfigName = Literal["small", "separated", "braided", "nested", "custom"]
PairName = Literal["ac", "bd", "ab", "cd", "ad", "bc"]
MethodName = Literal["amplitude", "lindblad"]


class LayoutSpec(BaseModel):
    """Connection-point positions, in units of the base spacing."""

    a: list[float]
    b: list[float]
    c: list[float]
    d: list[float]


class _SimulationRequest(BaseModel):
    config: ConfigName = "small"
    layout: LayoutSpec | None = None
    phi: float = 0.0
    gamma: float = Field(1.0, gt=0.0)
    initial_sign: int = 1

    @field_validator("initial_sign")
    @classmethod
    def _sign(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError("initial_sign must be +1 or -1")
        return value


class CoefficientsRequest(BaseModel):
    config: ConfigName = "small"
    layout: LayoutSpec | None = None
    phi: float = 0.0
    gamma: float = Field(1.0, gt=0.0)


class CoefficientsResponse(BaseModel):
    lamb_shift: dict[str, float]
    g_ab: float
    g_cd: float
    gamma_individual: dict[str, float]
    gamma_ab: float
    gamma_cd: float
    gamma: float
    phi: float


class EvolveRequest(_SimulationRequest):
    t_max: float = 10.0
    steps: int = Field(500, ge=1, description="number of intervals; rows = steps + 1")
    method: MethodName = "amplitude"


class EvolveResponse(BaseModel):
    t: list[float]
    c_ac: list[float]
    c_bd: list[float]
    c_ab: list[float]
    c_cd: list[float]
    c_ad: list[float]
    c_bc: list[float]
    norm: list[float]


class SweepRequest(_SimulationRequest):
    pair: PairName = "bd"
    phi_min: float = 0.0
    phi_max: float = 2.0 * math.pi
    phi_steps: int = Field(400, ge=1, description="number of intervals")
    t_max: float = 10.0
    t_steps: int = Field(500, ge=1, description="number of intervals")
    method: MethodName = "amplitude"


class SweepResponse(BaseModel):
    pair: PairName
    phi: list[float]
    t: list[float]
    values: list[list[float]]  # values[i_phi][i_t]


class PeakRequest(_SimulationRequest):
    pair: PairName = "bd"
    t_horizon: float = Field(50.0, gt=0.0)
    method: MethodName = "amplitude"


class PeakResponse(BaseModel):
    phi: float
    t_at_peak: float
    value: float
    t_window_lo: float
    t_window_hi: float
    coarse_samples: int
    refine_tolerance: float


class CheckRecord(BaseModel):
    name: str
    expected: float
    got: float
    tolerance: float
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    num_checks: int
    num_failed: int
    checks: list[CheckRecord]
