"""Request handlers: resolve references, call the core, build response models.

Both the HTTP app and the command line go through these functions.
"""
from __future__ import annotations

import json
import os
import random

from . import acceptance
from .graphs import (
    GraphError, KitaevGraph, Move, connected_sum, invariants, parse_graph_spec, reduce_to_standard,
    validate,
)
from .hopf import (
    HopfAlgebra, HopfError, builtin, character_label, characters, distinguished, element_label,
    is_cosemisimple, is_semisimple, check_s4, left_integrals, load_hopf, pairs_in_involution,
)
from .lattice import ExtendedSpace, check_intertwining, mu_word, verify_report, word_cilium_map
from .protect import (
    ProtectError, bosonisation_reduce, excision_protected, filler, group_oracle, inflate,
    one_dim_objects, protected_space, reduction_check, closed_graph, taft_projection,
)
from .reps import ModComod, induced_bimodule, one_dim, unit_bimodule
from . import schemas as S


class InputError(ValueError):
    pass


# --- reference resolution ---------------------------------------------------------

def load_graph(ref) -> KitaevGraph:
    if isinstance(ref, S.GraphModel):
        graph = KitaevGraph.from_json(ref.model_dump())
    elif isinstance(ref, dict):
        graph = KitaevGraph.from_json(ref)
    else:
        graph = parse_graph_spec(ref)
    errs = validate(graph)
    if errs:
        raise GraphError("; ".join(errs))
    return graph


def graph_model(graph: KitaevGraph) -> S.GraphModel:
    return S.GraphModel(**graph.to_json())


def resolve_hopf(ref) -> HopfAlgebra:
    if isinstance(ref, dict):
        return HopfAlgebra.from_json(ref)
    return load_hopf(ref)


def resolve_pair(H, index):
    pairs = pairs_in_involution(H)
    if not 0 <= index < len(pairs):
        raise InputError(f"pair index {index} out of range (there are {len(pairs)} pairs)")
    return pairs[index]


def pair_model(H, index, pair) -> S.PairModel:
    return S.PairModel(index=index, **pair.describe(H))


def parse_element(H, text: str):
    if text in ("e", "1", "id"):
        return dict(H.unit)
    if text in H.labels:
        return {H.labels.index(text): H.field.one}
    raise InputError(f"unknown basis element {text!r}")


def parse_character(H, text: str):
    chars = characters(H)
    if text in ("triv", "eps", "trivial"):
        return list(H.counit)
    if text in ("sign", "alpha", "alt"):
        for chi in chars:
            if chi != list(H.counit) and all(c in (0, 1, -1) for c in chi):
                return chi
        raise InputError("no sign character")
    if text.isdigit():
        k = int(text)
        if k >= len(chars):
            raise InputError(f"character index {k} out of range")
        return chars[k]
    try:
        vals = [H.field.parse(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"cannot parse character {text!r}") from exc
    if vals not in chars:
        raise InputError(f"{text!r} is not a character")
    return vals


def resolve_coeff(H, pair, ref) -> ModComod:
    if isinstance(ref, dict):
        return ModComod.from_json(H, ref)
    if ref == "unit-U":
        return unit_bimodule(H)[1]
    if ref == "filler":
        return filler(H, pair)
    if ref.startswith("one-dim:"):
        g, chi = _split_pair(ref[8:])
        return one_dim(H, parse_element(H, g), parse_character(H, chi))
    if ref.startswith("inf:"):
        proj = _projection_for(H)
        g, chi = _split_pair(ref[4:])
        return inflate(proj, one_dim(proj.H, parse_element(proj.H, g), parse_character(proj.H, chi)))
    if os.path.exists(ref):
        with open(ref) as fh:
            return ModComod.from_json(H, json.load(fh))
    raise InputError(f"unknown coefficient {ref!r}")


def _split_pair(text):
    g, sep, chi = text.partition(",")
    if not sep:
        raise InputError("expected g,chi")
    return g, chi


def _projection_for(H):
    N = int(round(H.n ** 0.5))
    if N * N != H.n or H.labels[:2] != ["1", "h"]:
        raise InputError("inflation needs a Taft algebra")
    proj = taft_projection(N)
    if proj.A.mul != H.mul:
        raise InputError("inflation needs a Taft algebra")
    return proj


# --- graphs ------------------------------------------------------------------------

def graph_info(req: S.GraphRequest) -> S.GraphInfoResponse:
    G = load_graph(req.graph)
    genus, boundary, euler = invariants(G)
    verts, edges, faces = G.derive()
    return S.GraphInfoResponse(genus=genus, boundary=boundary, euler=euler, vertices=len(verts),
                               edges=len(edges), faces=len(faces), cilia=list(G.cilia), pt=G.pt)


def graph_reduce(req: S.GraphRequest) -> S.GraphReduceResponse:
    G = load_graph(req.graph)
    std, word = reduce_to_standard(G)
    genus, boundary, _ = invariants(std)
    return S.GraphReduceResponse(standard=graph_model(std), genus=genus, boundary=boundary,
                                 word=[S.MoveModel(kind=m.kind, args=list(m.args)) for m in word])


def graph_sum(req: S.GraphSumRequest) -> S.GraphSumResponse:
    G, D = load_graph(req.first), load_graph(req.second)
    out, relabel = connected_sum(G, D)
    genus, boundary, _ = invariants(out)
    return S.GraphSumResponse(graph=graph_model(out), relabel=relabel, genus=genus, boundary=boundary)


# --- Hopf algebras ---------------------------------------------------------------------

def hopf_check(req: S.HopfRequest) -> S.HopfCheckResponse:
    H = resolve_hopf(req.hopf)
    errs = H.check_axioms()
    s4 = check_s4(H) if not errs else False
    return S.HopfCheckResponse(dim=H.n, basis=list(H.labels), errors=errs, semisimple=is_semisimple(H),
                               cosemisimple=is_cosemisimple(H), s4_formula=s4, ok=not errs and s4)


def hopf_pairs(req: S.HopfRequest) -> S.HopfPairsResponse:
    H = resolve_hopf(req.hopf)
    pairs, rejected = pairs_in_involution(H, with_rejected=True)
    return S.HopfPairsResponse(
        pairs=[pair_model(H, i, p) for i, p in enumerate(pairs)],
        rejected=[f"{element_label(H, p)} / {character_label(H, chi)}: {why}" for p, chi, why in rejected])


def hopf_integrals(req: S.HopfRequest) -> S.HopfIntegralsResponse:
    H = resolve_hopf(req.hopf)
    ints = left_integrals(H)
    if len(ints) != 1:
        raise HopfError("space of left integrals is not one-dimensional")
    alpha, a = distinguished(H)
    return S.HopfIntegralsResponse(left_integral=element_label(H, ints[0]),
                                   distinguished_character=character_label(H, alpha),
                                   distinguished_grouplike=element_label(H, a))


# --- lattice ------------------------------------------------------------------------------

def lattice_verify(req: S.LatticeVerifyRequest) -> S.LatticeVerifyResponse:
    H = resolve_hopf(req.hopf)
    pair = resolve_pair(H, req.pair)
    M = induced_bimodule(H, pair)
    G = load_graph(req.graph)
    algebra = H.check_axioms()
    bimod = M.check_hopf_bimodule() + M.check_involution()
    space = ExtendedSpace(G, M)
    rep = verify_report(space, random.Random(req.seed), words=req.words, local=req.local)
    ok = not algebra and not bimod and not any(rep.values())
    return S.LatticeVerifyResponse(dim=space.dim, seed=req.seed, algebra=algebra, bimodule=bimod,
                                   checks=rep, ok=ok)


def lattice_move(req: S.LatticeMoveRequest) -> S.LatticeMoveResponse:
    H = resolve_hopf(req.hopf)
    M = induced_bimodule(H, resolve_pair(H, req.pair))
    G = load_graph(req.graph)
    word = [Move.from_json([m.kind, *m.args]) for m in req.word]
    space = ExtendedSpace(G, M)
    mat, new = mu_word(space, word)
    errs = check_intertwining(space, word, mat, new)
    return S.LatticeMoveResponse(final=graph_model(new.graph), cilium_map=word_cilium_map(G, word),
                                 errors=errs, ok=not errs)


# --- protected spaces -----------------------------------------------------------------------

def protect_compute(req: S.ProtectComputeRequest) -> S.ProtectComputeResponse:
    H = resolve_hopf(req.hopf)
    pair = resolve_pair(H, req.pair)
    X = resolve_coeff(H, pair, req.coeff)
    r = protected_space(H, pair, load_graph(req.graph), X, sequential=req.sequential)
    return S.ProtectComputeResponse(**r.to_json())


def protect_table(req: S.ProtectTableRequest) -> S.ProtectTableResponse:
    H = resolve_hopf(req.hopf)
    pair = resolve_pair(H, req.pair)
    G = load_graph(req.graph)
    try:
        proj = _projection_for(H)
    except InputError:
        proj = None
    small = proj.H if proj else H
    rows = []
    for (gl, cl), X in one_dim_objects(small):
        coeff = inflate(proj, X) if proj else X
        r = protected_space(H, pair, G, coeff)
        rows.append(S.TableRow(g=gl, chi=cl, **r.to_json()))
    return S.ProtectTableResponse(pair=pair_model(H, req.pair, pair), inflated=proj is not None, rows=rows)


def protect_oracle(req: S.OracleRequest) -> S.OracleResponse:
    name = req.group if req.group.startswith("group:") else f"group:{req.group}"
    try:
        H = builtin(name)
    except HopfError as exc:
        raise InputError(str(exc)) from exc
    p = parse_element(H, req.p)
    chi = parse_character(H, req.chi)
    (p_index,) = p
    dim = group_oracle(H, p_index, chi, req.genus)
    lat = None
    if req.lattice:
        pairs = pairs_in_involution(H)
        pair = next((q for q in pairs if q.p == p and q.chi == chi), None)
        if pair is None:
            raise InputError("(p, chi) is not a usable pair in involution")
        lat = protected_space(H, pair, closed_graph(req.genus), one_dim(H, dict(H.unit), H.counit)).dim_bitensor
    return S.OracleResponse(dim=dim, lattice_dim=lat, ok=lat is None or lat == dim)


def protect_excision(req: S.ExcisionRequest) -> S.ExcisionResponse:
    H = resolve_hopf(req.hopf)
    pair = resolve_pair(H, req.pair)
    X = resolve_coeff(H, pair, req.coeff)
    Y = resolve_coeff(H, pair, req.second_coeff) if req.second_coeff is not None else None
    rep = excision_protected(load_graph(req.first), load_graph(req.second), H, pair, X, Y)
    return S.ExcisionResponse(**rep)


def protect_bosonisation(req: S.BosonisationRequest) -> S.BosonisationResponse:
    proj = taft_projection(req.taft)
    A = proj.A
    pair = resolve_pair(A, req.pair)
    space = ExtendedSpace(load_graph(req.graph), induced_bimodule(A, pair))
    if len(space.graph.cilia) != 1:
        raise InputError("bosonisation reduction expects a graph with a single cilium")
    N = space.cilium_module(space.graph.pt)
    r = bosonisation_reduce(proj, N)
    rows = []
    for (gl, cl), X in one_dim_objects(proj.H):
        c = reduction_check(proj, X, N, r.reduced)
        rows.append(S.ReductionRow(g=gl, chi=cl, **c))
    pieces = [S.IsotypicPiece(g=g, chi=chi, multiplicity=m) for (g, chi), m in r.decomposition.items()]
    return S.BosonisationResponse(dim_coH=r.dim_coinvariant, dim_intersection=r.dim_intersection,
                                  dim_reduced=r.reduced.dim, decomposition=pieces, reduction=rows,
                                  ok=all(x.ok for x in rows))


def run_acceptance(req: S.AcceptanceRequest) -> S.AcceptanceResponse:
    results = [S.CriterionResult(**r) for r in acceptance.run(req.seed, req.only)]
    return S.AcceptanceResponse(seed=req.seed, results=results, ok=all(r.ok for r in results))


INPUT_ERRORS = (InputError, GraphError, HopfError, ProtectError)
