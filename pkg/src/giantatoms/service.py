"""FastAPI service exposing the simulator.

Every endpoint is a stateless wrapper around the core package, so requests
are independent and safe to issue concurrently.  Run with

    uvicorn giantatoms.service:app
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__
from .coefficients import CoefficientSet, coefficients_for
from .layouts import ConnectionLayout, layout_from_dict
from .schemas import (
    CoefficientsRequest,
    CoefficientsResponse,
    EvolveRequest,
    EvolveResponse,
    PeakRequest,
    PeakResponse,
    SweepRequest,
    SweepResponse,
    VerifyResponse,
)
from .sweeps import evolve_series, find_peak, sweep_grid
from .verification import run_all_checks

app = FastAPI(
    title="giantatoms",
    version=__version__,
    description="Entanglement transfer between atom pairs coupled to two "
                "independent 1-D waveguides.",
)


def _resolve(config: str, layout, phi: float, gamma: float) -> CoefficientSet:
    lay: ConnectionLayout | None = None
    if config == "custom":
        if layout is None:
            raise HTTPException(422, "custom config requires a layout")
        lay = layout_from_dict(layout.model_dump())
    try:
        return coefficients_for(config, phi, gamma, lay)
    except ValueError as exc:
        raise HTTPException(422, str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/coefficients", response_model=CoefficientsResponse)
def coefficients(request: CoefficientsRequest) -> CoefficientsResponse:
    coeffs = _resolve(request.config, request.layout, request.phi, request.gamma)
    return CoefficientsResponse(**coeffs.as_dict())


@app.post("/evolve", response_model=EvolveResponse)
def evolve(request: EvolveRequest) -> EvolveResponse:
    coeffs = _resolve(request.config, request.layout, request.phi, request.gamma)
    times = np.linspace(0.0, request.t_max, request.steps + 1)
    try:
        series = evolve_series(coeffs, times, method=request.method,
                               initial_sign=request.initial_sign)
    except ValueError as exc:
        raise HTTPException(422, str(exc)) from exc
    conc = series.concurrence
    return EvolveResponse(
        t=series.times.tolist(),
        c_ac=conc["ac"].tolist(),
        c_bd=conc["bd"].tolist(),
        c_ab=conc["ab"].tolist(),
        c_cd=conc["cd"].tolist(),
        c_ad=conc["ad"].tolist(),
        c_bc=conc["bc"].tolist(),
        norm=series.norm.tolist(),
    )


@app.post("/sweep", response_model=SweepResponse)
def sweep(request: SweepRequest) -> SweepResponse:
    layout = None
    if request.config == "custom":
        if request.layout is None:
            raise HTTPException(422, "custom config requires a layout")
        layout = layout_from_dict(request.layout.model_dump())
    phis = np.linspace(request.phi_min, request.phi_max, request.phi_steps + 1)
    times = np.linspace(0.0, request.t_max, request.t_steps + 1)
    try:
        grid = sweep_grid(request.config, request.pair, phis, times,
                          gamma=request.gamma, layout=layout,
                          method=request.method,
                          initial_sign=request.initial_sign)
    except ValueError as exc:
        raise HTTPException(422, str(exc)) from exc
    return SweepResponse(
        pair=request.pair,
        phi=grid.phi_values.tolist(),
        t=grid.t_values.tolist(),
        values=grid.values.tolist(),
    )


@app.post("/peaks", response_model=PeakResponse)
def peaks(request: PeakRequest) -> PeakResponse:
    coeffs = _resolve(request.config, request.layout, request.phi, request.gamma)
    try:
        report = find_peak(coeffs, request.pair, t_horizon=request.t_horizon,
                           method=request.method,
                           initial_sign=request.initial_sign)
    except ValueError as exc:
        raise HTTPException(422, str(exc)) from exc
    return PeakResponse(**report.as_dict())


@app.post("/verify", response_model=VerifyResponse)
def verify() -> VerifyResponse:
    report = run_all_checks()
    return VerifyResponse(**report.to_dict())
