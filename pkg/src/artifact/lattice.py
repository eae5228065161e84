"""Extended Hilbert spaces of Kitaev graphs and the algebraic structure-group action.

The space is M^{(x)E} with one tensor leg per edge, legs ordered by edge label
and basis vectors indexed mixed-radix with leg 0 most significant.
"""
from __future__ import annotations


from .exact import Matrix
from .graphs import (
    GraphError, KitaevGraph, Move, apply_move, cilium_map, edge_of, is_source, kappa,
    slide_condition, swap_perm,
)
from .hopf import HopfError
from .reps import HopfBimodule, ModComod


class LatticeError(ValueError):
    pass


def lift(O: Matrix, leg: int, nlegs: int, d: int) -> Matrix:
    """I (x) ... (x) O (x) ... (x) I with O on ``leg``."""
    stride = d ** (nlegs - 1 - leg)
    N = d ** nlegs
    rows = []
    orows = O.rows
    for y in range(N):
        w = (y // stride) % d
        base = y - w * stride
        rows.append({base + u * stride: v for u, v in orows[w].items()})
    return Matrix(N, N, rows)


class ExtendedSpace:
    def __init__(self, graph: KitaevGraph, M: HopfBimodule):
        self.graph = graph
        self.M = M
        self.H = M.H
        self.d = M.dim
        self.edges = list(graph.edges)
        self.leg = {e: i for i, e in enumerate(self.edges)}
        self.nlegs = len(self.edges)
        self.dim = self.d ** self.nlegs
        self._small_T = self._target_T()

    def __repr__(self):
        return f"ExtendedSpace(dim={self.dim}, edges={self.edges})"

    def with_graph(self, graph):
        return ExtendedSpace(graph, self.M)

    def identity(self):
        return Matrix.identity(self.dim, self.H.field.one)

    def _check_half_edge(self, h):
        if h not in self.graph.hset:
            raise LatticeError(f"{h} is not a half-edge of the graph")

    def _lift(self, O, h):
        return lift(O, self.leg[edge_of(h)], self.nlegs, self.d)

    # -- single-leg pieces ---------------------------------------------------
    def _target_T(self):
        H, M = self.H, self.M
        out = []
        for j in range(H.n):
            A = Matrix(self.d, self.d)
            for k in range(H.n):
                c = H.S({k: H.field.one}).get(j)
                if c:
                    A = A + M.rco[k].scale(c)
            out.append(A)
        return out

    def small_L(self, h, i):
        """Single-leg matrix of L_h(h_i)."""
        H, M = self.H, self.M
        if is_source(h):
            return M.R(H.S({i: H.field.one}))
        return M.lact[i]

    def small_T(self, h, i):
        """Single-leg matrix of T_h(zeta_i), zeta the dual basis."""
        return self.M.lco[i] if is_source(h) else self._small_T[i]

    # -- half-edge operators ---------------------------------------------------
    def L_basis(self, h):
        return self._cache("L", h, lambda: [self._lift(self.small_L(h, i), h) for i in range(self.H.n)])

    def T_basis(self, h):
        return self._cache("T", h, lambda: [self._lift(self.small_T(h, i), h) for i in range(self.H.n)])

    def _cache(self, kind, key, fn):
        store = self.__dict__.setdefault("_ops", {})
        if (kind, key) not in store:
            store[(kind, key)] = fn()
        return store[(kind, key)]

    def l_operator(self, h, a) -> Matrix:
        self._check_half_edge(h)
        out = Matrix(self.dim, self.dim)
        for i, c in a.items():
            out = out + self.L_basis(h)[i].scale(c)
        return out

    def t_operator(self, h, alpha) -> Matrix:
        self._check_half_edge(h)
        out = Matrix(self.dim, self.dim)
        for i, c in enumerate(alpha):
            if c:
                out = out + self.T_basis(h)[i].scale(c)
        return out

    def psi_on(self, e) -> Matrix:
        return lift(self.M.psi, self.leg[e], self.nlegs, self.d)

    # -- vertex actions and face coactions ------------------------------------
    def vertex_basis(self, c):
        """[A_v(h_i)] for the vertex of cilium c."""
        return self._cache("A", c, lambda: self._vertex(c))

    def _vertex(self, c):
        H = self.H
        v = self.graph.vertex(c)
        cur = list(self.L_basis(v[-1]))
        for h in reversed(v[:-1]):
            Lh = self.L_basis(h)
            nxt = []
            for x in range(H.n):
                acc = Matrix(self.dim, self.dim)
                for (j, k), coef in H.comul[x].items():
                    acc = acc + (cur[k] @ Lh[j]).scale(coef)
                nxt.append(acc)
            cur = nxt
        return cur

    def face_basis(self, c):
        """[B_f(zeta_i)] for the face of cilium c; delta_f(m) = sum h_i (x) B_f(zeta_i) m."""
        return self._cache("B", c, lambda: self._face(c))

    def _face(self, c):
        # The last half-edge of the face carries the first coproduct leg:
        # B_f(a) = T_{k_1}(a_(j)) ... T_{k_j}(a_(1)). The literal left-to-right
        # reading breaks the YD law once H is not cocommutative.
        H = self.H
        f = list(reversed(self.graph.face_of_cilium(c)))
        cur = list(self.T_basis(f[0]))
        for k in f[1:]:
            Tk = self.T_basis(k)
            nxt = [Matrix(self.dim, self.dim) for _ in range(H.n)]
            for x in range(H.n):
                if cur[x].is_zero():
                    continue
                for b in range(H.n):
                    P = None
                    for y, coef in H.mul[x][b].items():
                        if P is None:
                            P = Tk[b] @ cur[x]
                        nxt[y] = nxt[y] + P.scale(coef)
            cur = nxt
        return cur

    def vertex_action(self, c, a) -> Matrix:
        out = Matrix(self.dim, self.dim)
        for i, v in a.items():
            out = out + self.vertex_basis(c)[i].scale(v)
        return out

    def face_coaction(self, c):
        """delta_f as the family of matrices keyed by the H-basis."""
        return self.face_basis(c)

    def cilium_module(self, c) -> ModComod:
        if c not in self.graph.cilia:
            raise LatticeError(f"{c} is not a cilium")
        return ModComod(self.H, self.dim, "ll", self.vertex_basis(c), self.face_basis(c), f"cilium {c}")


# --- verification --------------------------------------------------------------

def verify_local_identities(space: ExtendedSpace, indices=None) -> list:
    """The six interchange relations between L, T and edge reversals on basis inputs.

    Each relation involves at most two tensor legs, and lifting to the full
    space is an injective algebra map, so every relation is checked on the
    legs it touches.
    """
    H, n = space.H, space.H.n
    d = space.d
    idx = list(range(n)) if indices is None else list(indices)
    hs = list(space.graph.half_edges)
    errs = []
    S = [H.S({i: H.field.one}) for i in range(n)]
    small = {h: ([space.small_L(h, i) for i in range(n)], [space.small_T(h, i) for i in range(n)])
             for h in hs}

    def local(h, legs, which, i):
        return lift(small[h][which][i], legs.index(edge_of(h)), len(legs), d)

    def legs_of(*hs_):
        return sorted({edge_of(x) for x in hs_})

    for e in space.edges:
        for h in hs:
            legs = sorted({e, edge_of(h)})
            Psi = lift(space.M.psi, legs.index(e), len(legs), d)
            for i in idx:
                L, T = local(h, legs, 0, i), local(h, legs, 1, i)
                if edge_of(h) == e:
                    k = kappa(h)
                    ok = Psi @ L == local(k, legs, 0, i) @ Psi and Psi @ T == local(k, legs, 1, i) @ Psi
                    tag = "reversal swaps half-edge operators"
                else:
                    ok = Psi @ L == L @ Psi and Psi @ T == T @ Psi
                    tag = "reversal commutes with distant operators"
                if not ok:
                    errs.append(f"{tag}: edge {e}, half-edge {h}, basis {i}")
                    return errs

    for h in hs:
        for k in hs:
            if h == k:
                continue
            legs = legs_of(h, k)
            for i in idx:
                for j in idx:
                    Lh, Lk = local(h, legs, 0, i), local(k, legs, 0, j)
                    Th, Tk = local(h, legs, 1, i), local(k, legs, 1, j)
                    if Lh @ Lk != Lk @ Lh or Th @ Tk != Tk @ Th:
                        errs.append(f"operators at {h} and {k} do not commute (basis {i}, {j})")
                        return errs
                    if k != kappa(h) and Th @ Lk != Lk @ Th:
                        errs.append(f"T at {h} and L at {k} do not commute (basis {i}, {j})")
                        return errs

    for h in hs:
        legs = [edge_of(h)]
        Lb, Tb = small[h]
        Tkb = small[kappa(h)][1]
        for x in idx:
            for y in idx:
                # T_h(b) L_h(a) = b_(2)(S(a_(2))) L_h(a_(1)) T_h(b_(1))
                lhs = Tb[y] @ Lb[x]
                rhs = Matrix(d, d)
                for (a1, a2), ca in H.comul[x].items():
                    for u in range(n):
                        for v, sv in S[a2].items():
                            c = H.mul[u][v].get(y)
                            if c:
                                rhs = rhs + (Lb[a1] @ Tb[u]).scale(ca * c * sv)
                if lhs != rhs:
                    errs.append(f"same half-edge interchange fails at {h}, basis {x}, dual {y}")
                    return errs
                # T_{i(h)}(b) L_h(a) = b_(1)(a_(1)) L_h(a_(2)) T_{i(h)}(b_(2))
                lhs = Tkb[y] @ Lb[x]
                rhs = Matrix(d, d)
                for (a1, a2), ca in H.comul[x].items():
                    for v in range(n):
                        c = H.mul[a1][v].get(y)
                        if c:
                            rhs = rhs + (Lb[a2] @ Tkb[v]).scale(ca * c)
                if lhs != rhs:
                    errs.append(f"opposite half-edge interchange fails at {h}, basis {x}, dual {y}")
                    return errs
    return errs


def verify_extended_yd(space: ExtendedSpace, local=True) -> list:
    """Report of violated identities; empty when the space is a YD module over H^C."""
    n = space.H.n
    errs = []
    if local:
        errs += verify_local_identities(space)
    cil = list(space.graph.cilia)
    for c in cil:
        X = space.cilium_module(c)
        for msg in X.check_module() + X.check_comodule() + X.check_yd():
            errs.append(f"cilium {c}: {msg}")
    for c in cil:
        for d in cil:
            if c == d:
                continue
            Ac, Ad = space.vertex_basis(c), space.vertex_basis(d)
            Bc, Bd = space.face_basis(c), space.face_basis(d)
            for i in range(n):
                for j in range(n):
                    if c < d and Ac[i] @ Ad[j] != Ad[j] @ Ac[i]:
                        errs.append(f"vertex actions at {c} and {d} do not commute ({i}, {j})")
                    if c < d and Bc[i] @ Bd[j] != Bd[j] @ Bc[i]:
                        errs.append(f"face coactions at {c} and {d} do not commute ({i}, {j})")
                    if Ac[i] @ Bd[j] != Bd[j] @ Ac[i]:
                        errs.append(f"vertex action at {c} and face coaction at {d} do not commute ({i}, {j})")
    return errs


# --- structure-group action ------------------------------------------------

def _leg_permutation(space: ExtendedSpace, new: ExtendedSpace, sigma) -> Matrix:
    """Move the content of edge e to edge sigma(e)."""
    d, k = space.d, space.nlegs
    target = [new.leg[edge_of(sigma(2 * e))] for e in space.edges]
    rows = [dict() for _ in range(space.dim)]
    for x in range(space.dim):
        digits = []
        r = x
        for _ in range(k):
            digits.append(r % d)
            r //= d
        digits.reverse()
        newdigits = [0] * k
        for i, u in enumerate(digits):
            newdigits[target[i]] = u
        y = 0
        for u in newdigits:
            y = y * d + u
        rows[y][x] = space.H.field.one
    return Matrix(space.dim, space.dim, rows)


def mu_reversal(space: ExtendedSpace, i: int):
    new = space.with_graph(apply_move(space.graph, Move("reverse", (i,))))
    if i not in space.leg:
        return space.identity(), new
    return space.psi_on(i), new


def mu_swap(space: ExtendedSpace, i: int):
    new = space.with_graph(apply_move(space.graph, Move("swap", (i,))))
    return _leg_permutation(space, new, swap_perm(i)), new


def mu_slide(space: ExtendedSpace, a: int, b: int):
    cond = slide_condition(space.graph, a, b)
    new = space.with_graph(apply_move(space.graph, Move("slide", (a, b))))
    if not cond:
        return space.identity(), new
    H = space.H
    La, Ta = space.L_basis(b), space.T_basis(a)
    out = Matrix(space.dim, space.dim)
    for i in range(H.n):
        if cond == 1:
            Lop = La[i]
        else:
            Lop = space.l_operator(b, H.Sinv({i: H.field.one}))
        out = out + Lop @ Ta[i]
    return out, new


def mu_move(space: ExtendedSpace, mv: Move):
    if mv.kind == "reverse":
        return mu_reversal(space, *mv.args)
    if mv.kind == "swap":
        return mu_swap(space, *mv.args)
    return mu_slide(space, *mv.args)


def mu_word(space: ExtendedSpace, word):
    """Composite matrix of a move word (applied left to right) and the final space."""
    total = space.identity()
    cur = space
    for pos, mv in enumerate(word):
        try:
            mat, cur = mu_move(cur, mv)
        except (GraphError, HopfError, LatticeError) as exc:
            raise LatticeError(f"move {pos} ({mv.kind} {mv.args}) failed: {exc}") from exc
        total = mat @ total
    return total, cur


def word_cilium_map(graph: KitaevGraph, word):
    cmap = {c: c for c in graph.cilia}
    for mv in word:
        step = cilium_map(graph, mv)
        cmap = {c: step[x] for c, x in cmap.items()}
        graph = apply_move(graph, mv)
    return cmap


def check_intertwining(space: ExtendedSpace, word, mat=None, new=None) -> list:
    """mu(x) A_c(h) = A'_{x(c)}(h) mu(x) and the same for the face coactions."""
    if mat is None:
        mat, new = mu_word(space, word)
    cmap = word_cilium_map(space.graph, word)
    errs = []
    for c, c2 in cmap.items():
        A, A2 = space.vertex_basis(c), new.vertex_basis(c2)
        B, B2 = space.face_basis(c), new.face_basis(c2)
        for i in range(space.H.n):
            if mat @ A[i] != A2[i] @ mat:
                errs.append(f"vertex action at cilium {c} not intertwined (basis {i})")
            if mat @ B[i] != B2[i] @ mat:
                errs.append(f"face coaction at cilium {c} not intertwined (basis {i})")
    return errs


def verify_report(space: ExtendedSpace, rng=None, words=1, word_length=6, local=True) -> dict:
    """Named lists of failures for every structural check on one space."""
    from .graphs import EdgePermutation, EdgeReversal, Slide, scramble, valid_slides
    report = {}
    report["local_identities"] = verify_local_identities(space) if local else []
    report["yetter_drinfeld"] = verify_extended_yd(space, local=False)
    inv, tw = [], []
    ident = space.identity()
    for a, b in valid_slides(space.graph):
        m, new = mu_slide(space, a, b)
        back, _ = mu_slide(new, a, b)
        if back @ m != ident:
            inv.append(f"slide ({a}, {b}) is not involutive")
        tw += check_intertwining(space, [Slide(a, b)], m, new)
    for e in space.edges:
        m, new = mu_reversal(space, e)
        if m @ m != ident:
            inv.append(f"reversal of edge {e} is not involutive")
        tw += check_intertwining(space, [EdgeReversal(e)], m, new)
    for i in range(1, len(space.edges)):
        tw += check_intertwining(space, [EdgePermutation(i)])
    if rng is not None:
        for _ in range(words):
            _, word = scramble(space.graph, word_length, rng)
            tw += check_intertwining(space, word)
    report["involutive_moves"] = inv
    report["intertwining"] = tw
    return report
