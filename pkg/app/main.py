"""
Tournament Linkage - Main FastAPI Application
"""
import os
import json
from contextlib import asynccontextmanager
from typing import Iterator, List, Literal, Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from sse_starlette.sse import EventSourceResponse
from pydantic import BaseModel, Field
from dotenv import load_dotenv

from app.linkage.flows import strong_connectivity
from app.linkage.linkage_pairs import find_linkage_pair, route
from app.linkage.linker import Linker, LinkRequest, verify_linkage
from app.linkage.oracle import OracleBudget, bf_strong_connectivity
from app.linkage.resources.config import DEFAULT_CONFIG
from app.linkage.tournament import Tournament, parse
from app.linkage.utils.errors import (
    InputError,
    LinkagePairError,
    LinkageToolkitError,
    OracleBudgetExceeded,
)
from app.linkage.utils.models import Path

load_dotenv()

# Global linker instance
linker: Optional[Linker] = None


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager"""
    global linker
    linker = Linker()
    yield


app = FastAPI(
    title=DEFAULT_CONFIG.service.title,
    description=DEFAULT_CONFIG.service.description,
    version=DEFAULT_CONFIG.service.version,
    lifespan=lifespan,
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(OracleBudgetExceeded)
async def budget_error_handler(request: Request, exc: OracleBudgetExceeded):
    return JSONResponse(status_code=413, content={"detail": str(exc)})


@app.exception_handler(LinkageToolkitError)
async def toolkit_error_handler(request: Request, exc: LinkageToolkitError):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


class KappaRequest(BaseModel):
    """Request model for strong connectivity"""
    tournament: str
    method: Literal["exact", "brute"] = "exact"


class LinkBody(BaseModel):
    """Request model for linking"""
    tournament: str
    pairs: List[List[int]]
    force: bool = False


class LinkagePairRequest(BaseModel):
    """Request model for linkage pair search"""
    tournament: str
    m: int
    perms: int = Field(default=10, ge=0)
    seed: int = 0


class VerifyRequest(BaseModel):
    """Request model for path verification"""
    tournament: str
    pairs: List[List[int]]
    paths: List[List[int]]


def _tournament(text: str) -> Tournament:
    tournament = parse(text)
    limit = DEFAULT_CONFIG.service.max_vertices
    if tournament.n > limit:
        raise HTTPException(status_code=413, detail=f"tournament has {tournament.n} vertices, limit {limit}")
    return tournament


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "service": "tournament-linkage"}


@app.post("/api/kappa")
def kappa(request: KappaRequest):
    """Strong connectivity, by flows or by the exhaustive oracle"""
    tournament = _tournament(request.tournament)
    if request.method == "brute":
        return {"kappa": bf_strong_connectivity(tournament, OracleBudget())}
    return {"kappa": strong_connectivity(tournament)}


def link_stream(tournament: Tournament, request: LinkRequest, force: bool) -> Iterator[str]:
    """Stream linker events using SSE"""
    for event in linker.link_stream(tournament, request, force=force):
        yield json.dumps(event)


@app.post("/api/link")
def link(body: LinkBody):
    """Link terminal pairs using SSE streaming"""
    if not linker:
        raise HTTPException(status_code=500, detail="Linker not initialized")

    tournament = _tournament(body.tournament)
    request = LinkRequest.from_pairs(body.pairs)
    request.check_range(tournament)
    return EventSourceResponse(
        link_stream(tournament, request, body.force),
        media_type="text/event-stream",
    )


@app.post("/api/linkage-pair")
def linkage_pair(request: LinkagePairRequest):
    """Find a linkage pair and route random permutations through it"""
    tournament = _tournament(request.tournament)
    pair = find_linkage_pair(tournament, request.m)
    rng = np.random.default_rng(request.seed)
    verified = True
    try:
        for _ in range(request.perms):
            route(tournament, pair, [int(j) for j in rng.permutation(pair.m)])
    except LinkagePairError:
        verified = False
    return {"mode": pair.mode, "X": list(pair.xs), "Y": list(pair.ys), "verified": verified}


@app.post("/api/verify")
def verify(request: VerifyRequest):
    """Verify a set of paths against terminal pairs"""
    tournament = _tournament(request.tournament)
    link_request = LinkRequest.from_pairs(request.pairs)
    try:
        paths = [Path(tuple(vertices)) for vertices in request.paths]
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    report = verify_linkage(tournament, link_request, paths)
    return {"ok": report.ok, "violation": report.violation}


if __name__ == "__main__":
    import uvicorn
    port = int(os.getenv("PORT", 8000))
    uvicorn.run("app.main:app", host="0.0.0.0", port=port, reload=True)
