"""Kitaev graphs as reduced presentations (rho, C, pt) and their structure-group moves.

Half-edges are positive integers.  The edge involution is always the parity
involution kappa = (1 2)(3 4)..., so edge i is the pair (2i-1, 2i) with source
2i-1.  A graph's half-edge set is the orbit of its cilia under <rho, kappa>.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


def kappa(h: int) -> int:
    return h + 1 if h % 2 else h - 1


def edge_of(h: int) -> int:
    return (h + 1) // 2


def is_source(h: int) -> bool:
    return h % 2 == 1


class Perm:
    """Finitely supported permutation of the positive integers."""

    __slots__ = ("_map",)

    def __init__(self, mapping=None):
        m = {int(k): int(v) for k, v in (mapping or {}).items() if k != v}
        if sorted(m) != sorted(m.values()):
            raise ValueError("not a bijection on its support")
        self._map = m

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]]):
        m = {}
        for cyc in cycles:
            cyc = list(cyc)
            for i, x in enumerate(cyc):
                if x in m:
                    raise ValueError(f"{x} appears twice in cycle notation")
                m[x] = cyc[(i + 1) % len(cyc)]
        return cls(m)

    def __call__(self, x: int) -> int:
        return self._map.get(x, x)

    @property
    def support(self):
        return frozenset(self._map)

    def inverse(self):
        return Perm({v: k for k, v in self._map.items()})

    def __mul__(self, other):
        # (self * other)(x) = self(other(x))
        pts = set(self._map) | set(other._map)
        return Perm({x: self(other(x)) for x in pts})

    def __eq__(self, other):
        return isinstance(other, Perm) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def cycles(self, points=None):
        pts = sorted(points) if points is not None else sorted(self._map)
        seen, out = set(), []
        for x in pts:
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = self(x)
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = self(y)
            out.append(cyc)
        return out

    def commutes_with_kappa(self) -> bool:
        return all(self(kappa(x)) == kappa(self(x)) for x in self._map)

    def __repr__(self):
        cs = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class KitaevGraph:
    rho: Perm
    cilia: tuple
    pt: int
    half_edges: tuple = field(init=False, compare=False, repr=False)
    hset: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "cilia", tuple(sorted(set(self.cilia))))
        rinv = self.rho.inverse()
        seen = set()
        todo = list(self.cilia)
        while todo:
            h = todo.pop()
            if h in seen:
                continue
            seen.add(h)
            todo.extend((self.rho(h), kappa(h), rinv(h)))
        object.__setattr__(self, "half_edges", tuple(sorted(seen)))
        object.__setattr__(self, "hset", frozenset(seen))

    # -- derived combinatorics --------------------------------------------
    def vertex(self, h):
        cyc = [h]
        x = self.rho(h)
        while x != h:
            cyc.append(x)
            x = self.rho(x)
        return cyc

    def face(self, h):
        """Face through h, listed along rho^{-1} kappa starting at h."""
        rinv = self.rho.inverse()
        cyc = [h]
        x = rinv(kappa(h))
        while x != h:
            cyc.append(x)
            x = rinv(kappa(x))
        return cyc

    def vertex_of_cilium(self, c):
        return self.vertex(c)

    def face_of_cilium(self, c):
        return self.face(self.rho.inverse()(c))

    @property
    def edges(self):
        return sorted({edge_of(h) for h in self.half_edges})

    def derive(self):
        rinv = self.rho.inverse()
        verts = [self.vertex(c) for c in self.cilia]
        faces = [self.face(rinv(c)) for c in self.cilia]
        covered = {h for v in verts for h in v}
        for h in self.half_edges:
            if h not in covered:
                verts.append(self.vertex(h))
                covered.update(verts[-1])
        fcov = {h for f in faces for h in f}
        for h in self.half_edges:
            if h not in fcov:
                faces.append(self.face(h))
                fcov.update(faces[-1])
        edges = [(2 * e - 1, 2 * e) for e in self.edges]
        return _dedupe_cycles(verts), edges, _dedupe_cycles(faces)

    def to_json(self):
        cyc = self.rho.cycles(self.half_edges)
        return {"rho": cyc, "cilia": list(self.cilia), "pt": self.pt}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            rho = Perm.from_cycles(data["rho"])
            return cls(rho, tuple(data["cilia"]), int(data["pt"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph json: {exc}") from exc

    def key(self):
        return (tuple(self.rho(h) for h in self.half_edges), self.half_edges, self.cilia, self.pt)

    def __eq__(self, other):
        return isinstance(other, KitaevGraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"KitaevGraph(rho={self.rho!r}, cilia={list(self.cilia)}, pt={self.pt})"


def _dedupe_cycles(cycles):
    seen, out = set(), []
    for c in cycles:
        k = frozenset(c)
        if k not in seen:
            seen.add(k)
            out.append(c)
    return out


def derive(graph: KitaevGraph):
    errs = validate(graph)
    if errs:
        raise GraphError("; ".join(errs))
    return graph.derive()


def validate(graph: KitaevGraph) -> list:
    errs = []
    if graph.pt not in graph.cilia:
        errs.append("pt not in C")
    if not graph.cilia:
        return errs or ["pt not in C"]
    if any(h <= 0 for h in graph.cilia) or any(h <= 0 for h in graph.rho.support):
        errs.append("half-edges must be positive integers")
        return errs
    gamma = set(graph.half_edges)
    if not graph.rho.support <= gamma:
        errs.append("rho moves half-edges outside the orbit of the cilia")
    if len(gamma) % 2:
        errs.append("odd number of half-edges")
    # transitivity: the orbit of one half-edge must be everything
    start = graph.cilia[0]
    comp = {start}
    todo = [start]
    rinv = graph.rho.inverse()
    while todo:
        h = todo.pop()
        for x in (graph.rho(h), rinv(h), kappa(h)):
            if x not in comp:
                comp.add(x)
                todo.append(x)
    if comp != gamma:
        errs.append("not connected")
    verts = {}
    for h in gamma:
        verts.setdefault(frozenset(graph.vertex(h)), None)
    faces = {}
    for h in gamma:
        faces.setdefault(frozenset(graph.face(h)), None)
    vc = [frozenset(graph.vertex(c)) for c in graph.cilia]
    fc = [frozenset(graph.face(rinv(c))) for c in graph.cilia]
    if len(set(vc)) != len(vc) or len(vc) != len(verts):
        errs.append("not well-ciliated: cilia do not biject with vertices")
    if len(set(fc)) != len(fc) or len(fc) != len(faces):
        errs.append("not well-ciliated: cilia do not biject with faces")
    return errs


def invariants(graph: KitaevGraph):
    verts, edges, faces = derive(graph)
    euler = len(verts) - len(edges) + len(faces)
    if euler % 2:
        raise GraphError("odd Euler characteristic")
    genus = 1 - euler // 2
    if genus < 0:
        raise GraphError("negative genus")
    # cross-check with the half-edge count formula
    assert genus == 1 - len(graph.cilia) + len(graph.half_edges) // 4
    return genus, len(faces), euler


def standard_graph(g: int, a: int) -> KitaevGraph:
    if g < 0 or a < 0 or g + a == 0:
        raise GraphError("standard graph needs g + a > 0")
    main, cilia, fixed = [], [1], []
    for k in range(g):
        o = 4 * k
        main += [o + 1, o + 3, o + 2, o + 4]
    for j in range(a):
        o = 4 * g + 4 * j
        main += [o + 1, o + 4, o + 2]
        fixed.append(o + 3)
        cilia.append(o + 3)
    rho = Perm.from_cycles([main] + [[x] for x in fixed])
    return KitaevGraph(rho, tuple(cilia), 1)


def parse_graph_spec(text: str) -> KitaevGraph:
    """``std:g,a`` or a path to a JSON graph file."""
    if text.startswith("std:"):
        parts = text[4:].split(",")
        if len(parts) != 2 or not all(x.strip().isdigit() for x in parts):
            raise GraphError(f"expected std:g,a with non-negative integers, got {text!r}")
        return standard_graph(int(parts[0]), int(parts[1]))
    with open(text) as fh:
        return KitaevGraph.from_json(json.load(fh))


# --- structure group -------------------------------------------------------

class Move(NamedTuple):
    kind: str  # "reverse", "swap", "slide"
    args: tuple

    def to_json(self):
        return [self.kind, *self.args]

    @classmethod
    def from_json(cls, item):
        kind, *args = item
        if kind not in ("reverse", "swap", "slide"):
            raise GraphError(f"unknown move {kind!r}")
        if len(args) != (2 if kind == "slide" else 1):
            raise GraphError(f"wrong arity for {kind}")
        return cls(kind, tuple(int(a) for a in args))


def EdgeReversal(i):
    return Move("reverse", (i,))


def EdgePermutation(i):
    return Move("swap", (i,))


def Slide(a, b):
    return Move("slide", (a, b))


def reversal_perm(i):
    return Perm({2 * i - 1: 2 * i, 2 * i: 2 * i - 1})


def swap_perm(i):
    return Perm({2 * i - 1: 2 * i + 1, 2 * i + 1: 2 * i - 1, 2 * i: 2 * i + 2, 2 * i + 2: 2 * i})


def apply_reordering(graph: KitaevGraph, sigma: Perm) -> KitaevGraph:
    if not sigma.commutes_with_kappa():
        raise GraphError("reordering does not commute with the edge involution")
    return KitaevGraph(sigma * graph.rho * sigma.inverse(),
                       tuple(sigma(c) for c in graph.cilia), sigma(graph.pt))


def slide_condition(graph: KitaevGraph, a: int, b: int) -> int:
    """1 or 2 if the slide s_{a,b} acts non-trivially, else 0."""
    G = graph.hset
    if a not in G or b not in G:
        return 0
    r, ka = graph.rho, kappa(a)
    if r(a) == b and b not in graph.cilia and len({b, r(b), ka}) == 3:
        return 1
    if r(b) == ka and ka not in graph.cilia and len({b, ka, r(a)}) == 3:
        return 2
    return 0


def apply_slide(graph: KitaevGraph, a: int, b: int) -> KitaevGraph:
    cond = slide_condition(graph, a, b)
    if not cond:
        return graph
    r, ka = graph.rho, kappa(a)
    if cond == 1:
        s = Perm.from_cycles([[b, r(b), ka]])
    else:
        s = Perm.from_cycles([[b, ka, r(a)]])
    tau = Perm({ka: b, b: ka})
    return KitaevGraph(s * r, tuple(tau(c) for c in graph.cilia), tau(graph.pt))


def apply_move(graph: KitaevGraph, mv: Move) -> KitaevGraph:
    if mv.kind == "reverse":
        return apply_reordering(graph, reversal_perm(mv.args[0]))
    if mv.kind == "swap":
        return apply_reordering(graph, swap_perm(mv.args[0]))
    return apply_slide(graph, *mv.args)


def apply_word(graph: KitaevGraph, word, trace=None) -> KitaevGraph:
    """Apply moves left to right; optionally collect intermediate graphs."""
    for mv in word:
        graph = apply_move(graph, mv)
        if trace is not None:
            trace.append(graph)
    return graph


def cilium_map(graph: KitaevGraph, mv: Move):
    """Where each cilium of ``graph`` goes under the move."""
    if mv.kind == "reverse":
        s = reversal_perm(mv.args[0])
    elif mv.kind == "swap":
        s = swap_perm(mv.args[0])
    else:
        a, b = mv.args
        if not slide_condition(graph, a, b):
            return {c: c for c in graph.cilia}
        s = Perm({kappa(a): b, b: kappa(a)})
    return {c: s(c) for c in graph.cilia}


def inverse_word(word):
    # every generator is an involution
    return list(reversed(word))


def valid_slides(graph: KitaevGraph):
    out = []
    r = graph.rho
    for a in graph.half_edges:
        b = r(a)
        if slide_condition(graph, a, b) == 1:
            out.append((a, b))
        ka = kappa(a)
        b2 = r.inverse()(ka)
        if slide_condition(graph, a, b2) == 2:
            out.append((a, b2))
    return out


def random_slides(graph: KitaevGraph, n: int, rng: random.Random):
    word = []
    for _ in range(n):
        opts = valid_slides(graph)
        if not opts:
            break
        a, b = rng.choice(opts)
        word.append(Slide(a, b))
        graph = apply_slide(graph, a, b)
    return graph, word


def scramble(graph: KitaevGraph, n: int, rng: random.Random):
    """Random word of slides and reorderings; returns (graph, word)."""
    word = []
    nedges = len(graph.edges)
    for _ in range(n):
        roll = rng.random()
        if roll < 0.6:
            opts = valid_slides(graph)
            if not opts:
                continue
            word.append(Slide(*rng.choice(opts)))
        elif roll < 0.8 or nedges < 2:
            word.append(EdgeReversal(rng.choice(graph.edges)))
        else:
            word.append(EdgePermutation(rng.randrange(1, nedges)))
        graph = apply_move(graph, word[-1])
    return graph, word


# --- connected sums --------------------------------------------------------

def connected_sum(G: KitaevGraph, D: KitaevGraph):
    """Glue D onto G at their distinguished cilia.

    D is shifted by max(half-edges of G), an even number, so the result keeps
    contiguous half-edge labels.  Returns (graph, relabel) where relabel maps
    half-edges of D to the new labels.
    """
    shift = max(G.half_edges)
    relabel = {h: h + shift for h in D.half_edges}
    rd = {relabel[h]: relabel[D.rho(h)] for h in D.half_edges}
    cG, cD = G.pt, relabel[D.pt]
    m = {h: G.rho(h) for h in G.half_edges}
    m.update(rd)
    lastG = G.rho.inverse()(cG)
    lastD = next(h for h, v in rd.items() if v == cD)
    m[lastG] = cD
    m[lastD] = cG
    cilia = tuple(G.cilia) + tuple(relabel[c] for c in D.cilia if relabel[c] != cD)
    return KitaevGraph(Perm(m), cilia, G.pt), relabel


# --- reduction to standard form --------------------------------------------

def canonical_relabel(graph: KitaevGraph):
    """Reordering sigma with sigma . graph canonical; returns (canonical graph, sigma).

    Edges are numbered in order of discovery by a traversal from pt that
    follows rho first and then kappa, oriented by the half-edge seen first.
    """
    label = {}
    nxt = 1
    order = deque([graph.pt])
    seen = set()
    while order:
        h = order.popleft()
        if h in seen:
            continue
        seen.add(h)
        if h not in label:
            label[h] = nxt
            label[kappa(h)] = nxt + 1
            nxt += 2
        # walk the whole vertex of h before crossing edges
        x = graph.rho(h)
        while x != h:
            if x not in label:
                label[x] = nxt
                label[kappa(x)] = nxt + 1
                nxt += 2
            order.append(x)
            x = graph.rho(x)
        order.append(kappa(h))
    # extend to a bijection: unused small labels go to the displaced ones
    spare_src = sorted(x for x in label.values() if x not in label)
    spare_dst = sorted(x for x in label if x not in label.values())
    label.update(zip(spare_src, spare_dst))
    sigma = Perm(label)
    return apply_reordering(graph, sigma), sigma


def _canon_key(graph):
    c, _ = canonical_relabel(graph)
    return c.key()


def decompose_reordering(sigma: Perm, nedges: int):
    """Word of reversals and adjacent edge swaps whose product is sigma."""
    flips = []
    pi = {}
    for i in range(1, nedges + 1):
        img = sigma(2 * i - 1)
        pi[i] = edge_of(img)
        if img % 2 == 0:
            flips.append(i)
    word = [EdgeReversal(i) for i in flips]
    # peel descents: pi = pi' o s_k with s_k applied first
    arr = dict(pi)
    while True:
        k = next((k for k in range(1, nedges) if arr[k] > arr[k + 1]), None)
        if k is None:
            break
        word.append(EdgePermutation(k))
        arr[k], arr[k + 1] = arr[k + 1], arr[k]
    return word


def _step_one(graph: KitaevGraph, word: list) -> KitaevGraph:
    """Move half-edges off non-distinguished vertices toward the distinguished one.

    Progress measure: total valence of the vertices not containing pt, which
    every accepted slide lowers by one.
    """
    while True:
        best = None
        level = _outer_valence(graph)
        for a, b in valid_slides(graph):
            g2 = apply_slide(graph, a, b)
            if _outer_valence(g2) < level:
                best = (a, b, g2)
                break
        if best is None:
            return graph
        a, b, graph = best
        word.append(Slide(a, b))


def _outer_valence(graph):
    home = set(graph.vertex(graph.pt))
    return sum(1 for h in graph.half_edges if h not in home)


def _bfs_path(start: KitaevGraph, target_key, limit=2_000_000):
    """Bidirectional search over canonical classes; returns slide list in start's labels."""
    sk = _canon_key(start)
    if sk == target_key:
        return [sk]
    # forward: canonical key -> (parent key, slide in parent canonical labels)
    fwd = {sk: None}
    bwd = {target_key: None}
    reps = {}
    sc, _ = canonical_relabel(start)
    reps[sk] = sc
    tgt_graph = _graph_from_key(target_key)
    reps[target_key] = tgt_graph
    fq, bq = [sk], [target_key]
    meet = None
    while fq and bq and meet is None:
        if len(fwd) + len(bwd) > limit:
            raise GraphError("reduction search exceeded its state budget")
        grow_fwd = len(fq) <= len(bq)
        q, seen, other = (fq, fwd, bwd) if grow_fwd else (bq, bwd, fwd)
        nq = []
        for k in q:
            g = reps[k]
            for a, b in valid_slides(g):
                g2 = apply_slide(g, a, b)
                c2, _ = canonical_relabel(g2)
                k2 = c2.key()
                if k2 in seen:
                    continue
                seen[k2] = (k, (a, b))
                reps[k2] = c2
                if k2 in other:
                    meet = k2
                    break
                nq.append(k2)
            if meet is not None:
                break
        if grow_fwd:
            fq = nq
        else:
            bq = nq
    if meet is None:
        raise GraphError("no slide path to the standard graph")
    # canonical-class path from start to target
    path = []
    k = meet
    while fwd[k] is not None:
        path.append(k)
        k = fwd[k][0]
    path.append(k)
    path.reverse()
    k = meet
    while bwd[k] is not None:
        k = bwd[k][0]
        path.append(k)
    return path


def _graph_from_key(key):
    images, gamma, cilia, pt = key
    return KitaevGraph(Perm(dict(zip(gamma, images))), cilia, pt)


def reduce_to_standard(graph: KitaevGraph):
    """Return (standard graph, word) with apply_word(graph, word) == standard graph."""
    errs = validate(graph)
    if errs:
        raise GraphError("; ".join(errs))
    g, nb, _ = invariants(graph)
    std = standard_graph(g, nb - 1)
    word = []
    cur = _step_one(graph, word)
    tkey = _canon_key(std)
    path = _bfs_path(cur, tkey)
    for k_next in path[1:]:
        # find a slide on the actual graph whose canonical class is k_next
        for a, b in valid_slides(cur):
            g2 = apply_slide(cur, a, b)
            if _canon_key(g2) == k_next:
                word.append(Slide(a, b))
                cur = g2
                break
        else:  # pragma: no cover - the search guarantees a step exists
            raise GraphError("lost track of reduction path")
    # final relabelling onto the standard presentation
    _, s_cur = canonical_relabel(cur)
    _, s_std = canonical_relabel(std)
    sigma = s_std.inverse() * s_cur
    word += decompose_reordering(sigma, max(max(cur.edges), len(cur.edges)))
    out = apply_word(graph, word)
    if out != std:
        raise GraphError("reduction replay mismatch")
    return std, word
