"""Clients used by the CLI: in-process, or over HTTP against ``igt serve``."""
from __future__ import annotations

from typing import Any

from .errors import IGTError, ResourceLimitError, SpecError
from .service import schemas


class LocalClient:
    """Calls the service handlers directly, without a server."""

    def call(self, endpoint: str, request: Any) -> Any:
        from .service import handlers

        func = {
            "build": handlers.build_group,
            "lattice": handlers.lattice,
            "graph": handlers.graph,
            "check": handlers.check,
            "classify": handlers.classify,
            "verify": handlers.verify,
            "match": handlers.match,
        }[endpoint]
        return func(request)


class HttpClient:
    def __init__(self, base_url: str, timeout: float = 900.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout

    def call(self, endpoint: str, request: Any) -> Any:
        import httpx

        resp = httpx.post(
            f"{self.base_url}/{endpoint}", json=request.model_dump(), timeout=self.timeout
        )
        if resp.status_code == 413:
            raise ResourceLimitError(resp.json().get("detail", "resource guard exceeded"))
        if resp.status_code in (400, 422):
            raise SpecError(str(resp.json().get("detail")))
        if resp.status_code != 200:
            raise IGTError(f"server returned {resp.status_code}: {resp.text}")
        data = resp.json()
        model = _RESPONSE_MODELS.get(endpoint)
        return model(**data) if model else data


_RESPONSE_MODELS = {
    "build": schemas.GroupResponse,
    "lattice": schemas.LatticeResponse,
    "graph": schemas.GraphResponse,
    "check": schemas.CheckResponse,
    "classify": schemas.ClassifyResponse,
    "match": schemas.MatchResponse,
}
