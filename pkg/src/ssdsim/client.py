"""Client for the simulation service.

The CLI always talks to the service through this class.  Without a server
URL it mounts the ASGI app in-process, so single-machine use needs no
running daemon while exercising the same request/response path.
"""

from __future__ import annotations

import asyncio
from typing import Optional

import httpx


class ServiceError(RuntimeError):
    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service returned {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class ApiClient:
    def __init__(self, server: Optional[str] = None):
        self._server = server

    def _make_client(self) -> httpx.AsyncClient:
        if self._server:
            return httpx.AsyncClient(base_url=self._server, timeout=300.0)
        from .service import create_app
        transport = httpx.ASGITransport(app=create_app())
        return httpx.AsyncClient(transport=transport, base_url="http://ssdsim.local",
                                 timeout=300.0)

    def _request(self, method: str, path: str, payload: Optional[dict] = None) -> dict:
        async def go():
            async with self._make_client() as client:
                response = await client.request(method, path, json=payload)
                if response.status_code >= 400:
                    try:
                        detail = response.json().get("detail", response.text)
                    except Exception:
                        detail = response.text
                    raise ServiceError(response.status_code, str(detail))
                return response.json()
        return asyncio.run(go())

    def health(self) -> dict:
        return self._request("GET", "/health")

    def timing(self, config: dict) -> dict:
        return self._request("POST", "/timing", {"config": config})

    def simulate(self, **payload) -> dict:
        return self._request("POST", "/simulate", payload)

    def sweep(self, **payload) -> dict:
        return self._request("POST", "/sweep", payload)

    def verify(self, tolerance: float, config: dict) -> dict:
        return self._request("POST", "/verify", {"tolerance": tolerance, "config": config})
