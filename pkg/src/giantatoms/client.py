"""Thin client for the simulator service.

Without a base URL each request is dispatched to the FastAPI app in-process
through an ASGI transport (no socket, no server): the CLI then runs
single-process and fully deterministic while still exercising the exact wire
contract.  Point base_url at a running server to go over the network instead.
"""

from __future__ import annotations

import asyncio

import httpx
from pydantic import BaseModel

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

_IN_PROCESS_URL = "http://giantatoms.internal"


class ServiceError(RuntimeError):
    """Raised when the service rejects a request or fails."""


class SimulatorClient:
    def __init__(self, base_url: str | None = None, timeout: float = 600.0):
        self._timeout = timeout
        self._remote = (httpx.Client(base_url=base_url, timeout=timeout)
                        if base_url is not None else None)

    def close(self) -> None:
        if self._remote is not None:
            self._remote.close()

    def __enter__(self) -> "SimulatorClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _request(self, path: str, body: dict | None) -> httpx.Response:
        try:
            if self._remote is not None:
                return self._remote.post(path, json=body)
            # the ASGI transport is async only; drive it with a private loop
            return asyncio.run(self._in_process(path, body))
        except httpx.HTTPError as exc:
            raise ServiceError(f"request to {path} failed: {exc}") from exc

    async def _in_process(self, path: str, body: dict | None) -> httpx.Response:
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url=_IN_PROCESS_URL,
                                     timeout=self._timeout) as client:
            return await client.post(path, json=body)

    def _post(self, path: str, payload: BaseModel | None, response_model):
        body = payload.model_dump(mode="json") if payload is not None else None
        response = self._request(path, body)
        if response.status_code != 200:
            raise ServiceError(_describe_error(path, response))
        return response_model.model_validate(response.json())

    def coefficients(self, request: CoefficientsRequest) -> CoefficientsResponse:
        return self._post("/coefficients", request, CoefficientsResponse)

    def evolve(self, request: EvolveRequest) -> EvolveResponse:
        return self._post("/evolve", request, EvolveResponse)

    def sweep(self, request: SweepRequest) -> SweepResponse:
        return self._post("/sweep", request, SweepResponse)

    def peaks(self, request: PeakRequest) -> PeakResponse:
        return self._post("/peaks", request, PeakResponse)

    def verify(self) -> VerifyResponse:
        return self._post("/verify", None, VerifyResponse)


def _describe_error(path: str, response: httpx.Response) -> str:
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = None
    if isinstance(detail, list):  # pydantic validation errors
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            parts.append(f"{loc}: {item.get('msg', 'invalid')}")
        detail = "; ".join(parts)
    if not detail:
        detail = response.text.strip() or "no detail"
    return f"{path} returned {response.status_code}: {detail}"
