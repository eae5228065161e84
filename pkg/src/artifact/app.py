"""HTTP service exposing the same handlers as the CLI."""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import schemas as S
from . import service

app = FastAPI(title="artifact", version="0.1.0")


def _call(fn, req):
    try:
        return fn(req)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except OSError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/graph/info", response_model=S.GraphInfoResponse)
def graph_info(req: S.GraphRequest):
    return _call(service.graph_info, req)


@app.post("/graph/reduce", response_model=S.GraphReduceResponse)
def graph_reduce(req: S.GraphRequest):
    return _call(service.graph_reduce, req)


@app.post("/graph/sum", response_model=S.GraphSumResponse)
def graph_sum(req: S.GraphSumRequest):
    return _call(service.graph_sum, req)


@app.post("/hopf/check", response_model=S.HopfCheckResponse)
def hopf_check(req: S.HopfRequest):
    return _call(service.hopf_check, req)


@app.post("/hopf/pairs", response_model=S.HopfPairsResponse)
def hopf_pairs(req: S.HopfRequest):
    return _call(service.hopf_pairs, req)


@app.post("/hopf/integrals", response_model=S.HopfIntegralsResponse)
def hopf_integrals(req: S.HopfRequest):
    return _call(service.hopf_integrals, req)


@app.post("/lattice/verify", response_model=S.LatticeVerifyResponse)
def lattice_verify(req: S.LatticeVerifyRequest):
    return _call(service.lattice_verify, req)


@app.post("/lattice/move", response_model=S.LatticeMoveResponse)
def lattice_move(req: S.LatticeMoveRequest):
    return _call(service.lattice_move, req)


@app.post("/protect/compute", response_model=S.ProtectComputeResponse)
def protect_compute(req: S.ProtectComputeRequest):
    return _call(service.protect_compute, req)


@app.post("/protect/table", response_model=S.ProtectTableResponse)
def protect_table(req: S.ProtectTableRequest):
    return _call(service.protect_table, req)


@app.post("/protect/oracle-group", response_model=S.OracleResponse)
def protect_oracle(req: S.OracleRequest):
    return _call(service.protect_oracle, req)


@app.post("/protect/excision", response_model=S.ExcisionResponse)
def protect_excision(req: S.ExcisionRequest):
    return _call(service.protect_excision, req)


@app.post("/protect/reduce-bosonisation", response_model=S.BosonisationResponse)
def protect_bosonisation(req: S.BosonisationRequest):
    return _call(service.protect_bosonisation, req)


@app.post("/acceptance", response_model=S.AcceptanceResponse)
def acceptance(req: S.AcceptanceRequest):
    return _call(service.run_acceptance, req)
