"""HTTP face of the toolkit: one POST endpoint per command.

Responses carry the same envelope the CLI prints; HTTP status stays 200
for pass/fail/inconclusive (the verdict is data, not transport failure)
and 422 for invalid configurations.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, ParseError, UsageError
from . import runner

app = FastAPI(title="minmax-hyper", version=__version__)


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok", "version": __version__,
            "commands": sorted(runner.HANDLERS)}


def _make_endpoint(command: str, model):
    def endpoint(request):
        try:
            return JSONResponse(runner.run(command, request))
        except (ParseError, DomainError, UsageError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    endpoint.__name__ = command.replace("-", "_")
    endpoint.__annotations__ = {"request": model, "return": JSONResponse}
    return endpoint


for _command, (_model, _) in runner.HANDLERS.items():
    app.post(f"/v1/{_command}", name=_command)(_make_endpoint(_command, _model))
