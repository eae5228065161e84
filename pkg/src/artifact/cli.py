"""Command-line front end; a thin client over the request handlers in ``service``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from . import schemas as S
from . import service

DEFAULT_SEED = 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description="Kitaev lattice models over Hopf algebras")
    p.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("graph").add_subparsers(dest="cmd", required=True)
    x = g.add_parser("info")
    x.add_argument("graph")
    x = g.add_parser("reduce")
    x.add_argument("graph")
    x = g.add_parser("sum")
    x.add_argument("first")
    x.add_argument("second")

    h = sub.add_parser("hopf").add_subparsers(dest="cmd", required=True)
    for name in ("check", "pairs", "integrals"):
        x = h.add_parser(name)
        x.add_argument("hopf", nargs="?")
        x.add_argument("--builtin")

    lat = sub.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    x = lat.add_parser("verify")
    _common(x)
    x.add_argument("--seed", type=int, default=DEFAULT_SEED)
    x.add_argument("--words", type=int, default=1)
    x.add_argument("--skip-local", action="store_true")
    x = lat.add_parser("move")
    _common(x)
    x.add_argument("--word", required=True, help='JSON list such as [["slide",1,3],["reverse",2]]')

    pr = sub.add_parser("protect").add_subparsers(dest="cmd", required=True)
    x = pr.add_parser("compute")
    _common(x)
    x.add_argument("--coeff", default="one-dim:1,eps")
    x.add_argument("--sequential", action="store_true")
    x = pr.add_parser("table")
    x.add_argument("--hopf", default="builtin:sweedler")
    x.add_argument("--pair", type=int, default=0)
    x.add_argument("--graph", default="std:1,0")
    x = pr.add_parser("oracle-group")
    x.add_argument("--group", dest="group_name", required=True)
    x.add_argument("--genus", type=int, required=True)
    x.add_argument("--p", default="e")
    x.add_argument("--chi", default="triv")
    x.add_argument("--lattice", action="store_true", help="also compute the lattice dimension")
    x = pr.add_parser("excision")
    x.add_argument("--hopf", default="builtin:sweedler")
    x.add_argument("--pair", type=int, default=0)
    x.add_argument("--first", default="std:1,0")
    x.add_argument("--second", default="std:0,1")
    x.add_argument("--coeff", default="one-dim:1,eps")
    x.add_argument("--second-coeff")
    x = pr.add_parser("reduce-bosonisation")
    x.add_argument("--taft", type=int, default=2)
    x.add_argument("--pair", type=int, default=0)
    x.add_argument("--graph", default="std:1,0")

    x = sub.add_parser("acceptance")
    x.add_argument("--seed", type=int, default=DEFAULT_SEED)
    x.add_argument("--only", type=int, nargs="*")
    return p


def _common(x):
    x.add_argument("--hopf", required=True)
    x.add_argument("--pair", type=int, default=0)
    x.add_argument("--graph", required=True)


def _hopf_ref(args):
    ref = args.builtin or args.hopf
    if not ref:
        raise service.InputError("give a Hopf algebra file or --builtin")
    if args.builtin and not ref.startswith("builtin:"):
        ref = "builtin:" + ref
    return ref


def dispatch(args):
    """Returns (response model, verified flag)."""
    grp, cmd = args.group, getattr(args, "cmd", None)
    if grp == "graph":
        if cmd == "info":
            return service.graph_info(S.GraphRequest(graph=args.graph)), True
        if cmd == "reduce":
            return service.graph_reduce(S.GraphRequest(graph=args.graph)), True
        return service.graph_sum(S.GraphSumRequest(first=args.first, second=args.second)), True
    if grp == "hopf":
        req = S.HopfRequest(hopf=_hopf_ref(args))
        if cmd == "check":
            r = service.hopf_check(req)
            return r, r.ok
        if cmd == "pairs":
            return service.hopf_pairs(req), True
        return service.hopf_integrals(req), True
    if grp == "lattice":
        if cmd == "verify":
            r = service.lattice_verify(S.LatticeVerifyRequest(
                hopf=args.hopf, pair=args.pair, graph=args.graph, seed=args.seed,
                words=args.words, local=not args.skip_local))
            return r, r.ok
        try:
            word = json.loads(args.word)
            moves = [S.MoveModel(kind=m[0], args=list(m[1:])) for m in word]
        except (ValueError, TypeError, IndexError) as exc:
            raise service.InputError(f"malformed move word: {exc}") from exc
        r = service.lattice_move(S.LatticeMoveRequest(hopf=args.hopf, pair=args.pair, graph=args.graph,
                                                      word=moves))
        return r, r.ok
    if grp == "protect":
        if cmd == "compute":
            return service.protect_compute(S.ProtectComputeRequest(
                hopf=args.hopf, pair=args.pair, graph=args.graph, coeff=args.coeff,
                sequential=args.sequential)), True
        if cmd == "table":
            return service.protect_table(S.ProtectTableRequest(hopf=args.hopf, pair=args.pair,
                                                               graph=args.graph)), True
        if cmd == "oracle-group":
            r = service.protect_oracle(S.OracleRequest(group=args.group_name, genus=args.genus, p=args.p,
                                                       chi=args.chi, lattice=args.lattice))
            return r, r.ok
        if cmd == "excision":
            r = service.protect_excision(S.ExcisionRequest(
                hopf=args.hopf, pair=args.pair, first=args.first, second=args.second,
                coeff=args.coeff, second_coeff=args.second_coeff))
            return r, r.ok
        r = service.protect_bosonisation(S.BosonisationRequest(taft=args.taft, pair=args.pair,
                                                               graph=args.graph))
        return r, r.ok
    r = service.run_acceptance(S.AcceptanceRequest(seed=args.seed, only=args.only))
    return r, r.ok


def render_table(resp) -> str:
    if isinstance(resp, S.AcceptanceResponse):
        lines = [f"seed {resp.seed}"]
        for c in resp.results:
            lines.append(f"[{'PASS' if c.ok else 'FAIL'}] {c.number:2d} {c.name}")
        return "\n".join(lines)
    if isinstance(resp, S.ProtectTableResponse):
        p = resp.pair
        lines = [f"pair ({p.p}, {p.chi})" + ("  coefficients Inf(k^g_chi)" if resp.inflated else ""),
                 f"{'g':>6} {'chi':>12} {'cot':>5} {'tens':>5} {'bit':>5}"]
        for r in resp.rows:
            lines.append(f"{r.g:>6} {r.chi:>12} {r.dim_cotensor:5d} {r.dim_tensor_over:5d} {r.dim_bitensor:5d}")
        return "\n".join(lines)
    data = resp.model_dump()
    width = max((len(k) for k in data), default=0)
    return "\n".join(f"{k:<{width}}  {json.dumps(v, sort_keys=True)}" for k, v in data.items())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        resp, verified = dispatch(args)
    except (ValueError, OSError, ValidationError) as exc:
        # every core error type derives from ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "table":
        print(render_table(resp))
    else:
        print(json.dumps(resp.model_dump(), indent=2, sort_keys=True))
    return 0 if verified else 1


if __name__ == "__main__":
    sys.exit(main())
