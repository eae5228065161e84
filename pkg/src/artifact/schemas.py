"""Request and response models shared by the HTTP service and the CLI."""
from __future__ import annotations

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field


class GraphModel(BaseModel):
    rho: List[List[int]]
    cilia: List[int]
    pt: int


class MoveModel(BaseModel):
    kind: str
    args: List[int]


# a graph is either "std:g,a", a path to a JSON file, or inline data
GraphRef = Union[GraphModel, str]
HopfRef = Union[Dict[str, Any], str]


class GraphRequest(BaseModel):
    graph: GraphRef


class GraphInfoResponse(BaseModel):
    genus: int
    boundary: int
    euler: int
    vertices: int
    edges: int
    faces: int
    cilia: List[int]
    pt: int


class GraphReduceResponse(BaseModel):
    standard: GraphModel
    genus: int
    boundary: int
    word: List[MoveModel]


class GraphSumRequest(BaseModel):
    first: GraphRef
    second: GraphRef


class GraphSumResponse(BaseModel):
    graph: GraphModel
    relabel: Dict[int, int]
    genus: int
    boundary: int


class HopfRequest(BaseModel):
    hopf: HopfRef


class HopfCheckResponse(BaseModel):
    dim: int
    basis: List[str]
    errors: List[str]
    semisimple: bool
    cosemisimple: bool
    s4_formula: bool
    ok: bool


class PairModel(BaseModel):
    index: int
    p: str
    chi: str
    modular: bool
    zeta: str


class HopfPairsResponse(BaseModel):
    pairs: List[PairModel]
    rejected: List[str] = Field(default_factory=list)


class HopfIntegralsResponse(BaseModel):
    left_integral: str
    distinguished_character: str
    distinguished_grouplike: str


class LatticeVerifyRequest(BaseModel):
    hopf: HopfRef
    pair: int = 0
    graph: GraphRef
    seed: int = 0
    words: int = 1
    local: bool = True


class LatticeVerifyResponse(BaseModel):
    dim: int
    seed: int
    algebra: List[str]
    bimodule: List[str]
    checks: Dict[str, List[str]]
    ok: bool


class LatticeMoveRequest(BaseModel):
    hopf: HopfRef
    pair: int = 0
    graph: GraphRef
    word: List[MoveModel]


class LatticeMoveResponse(BaseModel):
    final: GraphModel
    cilium_map: Dict[int, int]
    errors: List[str]
    ok: bool


class ProtectComputeRequest(BaseModel):
    hopf: HopfRef
    pair: int = 0
    graph: GraphRef
    coeff: Union[Dict[str, Any], str] = "one-dim:1,eps"
    sequential: bool = False


class ProtectComputeResponse(BaseModel):
    dim_cotensor: int
    dim_tensor_over: int
    dim_bitensor: int


class ProtectTableRequest(BaseModel):
    hopf: HopfRef = "builtin:sweedler"
    pair: int = 0
    graph: GraphRef = "std:1,0"


class TableRow(BaseModel):
    g: str
    chi: str
    dim_cotensor: int
    dim_tensor_over: int
    dim_bitensor: int


class ProtectTableResponse(BaseModel):
    pair: PairModel
    inflated: bool
    rows: List[TableRow]


class OracleRequest(BaseModel):
    group: str
    genus: int
    p: str = "e"
    chi: str = "triv"
    lattice: bool = False


class OracleResponse(BaseModel):
    dim: int
    lattice_dim: Optional[int] = None
    ok: bool


class ExcisionRequest(BaseModel):
    hopf: HopfRef
    pair: int = 0
    first: GraphRef
    second: GraphRef
    coeff: Union[Dict[str, Any], str] = "one-dim:1,eps"
    second_coeff: Optional[Union[Dict[str, Any], str]] = None


class ExcisionResponse(BaseModel):
    dim_bit_gamma: int
    dim_bit_delta: int
    dim_bit_sum: int
    dim_R: int
    dim_aux: int
    dim_S: int
    dim_ker_nu: int
    dim_coker_kappa: int
    dim_cbit: int
    checks: Dict[str, bool]
    ok: bool


class BosonisationRequest(BaseModel):
    taft: int = 2
    pair: int = 0
    graph: GraphRef = "std:1,0"


class IsotypicPiece(BaseModel):
    g: str
    chi: str
    multiplicity: int


class ReductionRow(BaseModel):
    g: str
    chi: str
    lhs: int
    rhs: int
    ok: bool


class BosonisationResponse(BaseModel):
    dim_coH: int
    dim_intersection: int
    dim_reduced: int
    decomposition: List[IsotypicPiece]
    reduction: List[ReductionRow]
    ok: bool


class AcceptanceRequest(BaseModel):
    seed: int = 0
    only: Optional[List[int]] = None


class CriterionResult(BaseModel):
    number: int
    name: str
    ok: bool
    detail: Dict[str, Any]


class AcceptanceResponse(BaseModel):
    seed: int
    results: List[CriterionResult]
    ok: bool
