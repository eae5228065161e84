"""Module-comodules, Yetter-Drinfeld checks and the induced involutive Hopf bimodule.

Conventions (columns of every matrix are images of basis vectors):

* right-right ("rr"): ``act[i]`` is x -> x . h_i, so act(gh) = act(h) act(g);
  the coaction is x -> sum_k coact[k] x (x) h_k.
* left-left ("ll"): ``act[i]`` is m -> h_i . m; the coaction is
  m -> sum_k h_k (x) coact[k] m.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .exact import Echelon, Matrix, format_scalar, solve
from .hopf import HopfAlgebra, HopfError, PairInInvolution, _acc


def lin(H, mats, x, dim):
    """sum_i x_i mats[i] for an element x given as a coordinate dict."""
    out = Matrix(dim, dim)
    for i, c in x.items():
        if c:
            out = out + mats[i].scale(c)
    return out


@dataclass
class ModComod:
    H: HopfAlgebra
    dim: int
    side: str  # "rr" or "ll"
    act: list
    coact: list
    label: str = ""

    def action(self, x) -> Matrix:
        return lin(self.H, self.act, x, self.dim)

    def coaction_by(self, f) -> Matrix:
        """Evaluate the coaction against a functional f (values on the basis)."""
        out = Matrix(self.dim, self.dim)
        for k, c in enumerate(f):
            if c:
                out = out + self.coact[k].scale(c)
        return out

    # -- axioms --------------------------------------------------------------
    def check_module(self) -> list:
        H, n = self.H, self.H.n
        errs = []
        if self.action(H.unit) != Matrix.identity(self.dim):
            errs.append("unit does not act as identity")
        for i in range(n):
            for j in range(n):
                prod = self.action(H.mul[i][j])
                if self.side == "rr":
                    want = self.act[j] @ self.act[i]
                else:
                    want = self.act[i] @ self.act[j]
                if prod != want:
                    errs.append(f"action not multiplicative at {(i, j)}")
                    return errs
        return errs

    def check_comodule(self) -> list:
        H, n = self.H, self.H.n
        errs = []
        cu = Matrix(self.dim, self.dim)
        for k in range(n):
            if H.counit[k]:
                cu = cu + self.coact[k].scale(H.counit[k])
        if cu != Matrix.identity(self.dim):
            errs.append("coaction not counital")
        # both sides: coact[a] coact[b] against comultiplication
        want = {}
        for l in range(n):
            for (a, b), c in H.comul[l].items():
                want.setdefault((a, b), Matrix(self.dim, self.dim))
                want[(a, b)] = want[(a, b)] + self.coact[l].scale(c)
        for a in range(n):
            for b in range(n):
                if self.side == "rr":
                    got = self.coact[a] @ self.coact[b]
                else:
                    got = self.coact[b] @ self.coact[a]
                w = want.get((a, b), Matrix(self.dim, self.dim))
                if got != w:
                    errs.append(f"coaction not coassociative at {(a, b)}")
                    return errs
        return errs

    def check_yd(self, sigma=None) -> list:
        """Yetter-Drinfeld compatibility, optionally twisted by sigma (a map on elements)."""
        H, n, d = self.H, self.H.n, self.dim
        sigma = sigma or (lambda x: x)
        errs = []
        for i in range(n):
            terms = H.delta_n({i: H.field.one}, 3)
            lhs = [self.coact[k] @ self.act[i] for k in range(n)]
            rhs = [Matrix(d, d) for _ in range(n)]
            for (a, b, c), coef in terms.items():
                for j in range(n):
                    if self.side == "ll":
                        # (h.n)_-1 (x) (h.n)_0 = sigma(h1) n_-1 S(h3) (x) h2 . n_0
                        elt = H.prod(sigma({a: 1}), {j: 1}, H.S({c: 1}))
                        op = self.act[b] @ self.coact[j]
                    else:
                        # (n.h)_0 (x) (n.h)_1 = n_0 . h2 (x) S(h1) n_1 sigma(h3)
                        elt = H.prod(H.S({a: 1}), {j: 1}, sigma({c: 1}))
                        op = self.act[b] @ self.coact[j]
                    for k, v in elt.items():
                        rhs[k] = rhs[k] + op.scale(coef * v)
            for k in range(n):
                if lhs[k] != rhs[k]:
                    errs.append(f"Yetter-Drinfeld law fails for basis element {i}, coaction leg {k}")
                    return errs
        return errs

    def check(self, yd=True) -> list:
        errs = self.check_module() + self.check_comodule()
        if yd and not errs:
            errs += self.check_yd()
        return errs

    # -- conversions ---------------------------------------------------------
    def to_json(self):
        def sparse(mats):
            return [[k, i, j, format_scalar(v)] for k, M in enumerate(mats)
                    for i, r in enumerate(M.rows) for j, v in r.items()]
        return {"dim": self.dim, "side": self.side, "action": sparse(self.act), "coaction": sparse(self.coact)}

    @classmethod
    def from_json(cls, H, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            d = int(data["dim"])
            side = data["side"]
            if side not in ("rr", "ll"):
                raise ValueError("side must be rr or ll")

            def mats(entries):
                ms = [Matrix(d, d) for _ in range(H.n)]
                for k, i, j, v in entries:
                    val = H.field.parse(v)
                    if val:
                        ms[k].rows[i][j] = val
                return ms
            return cls(H, d, side, mats(data["action"]), mats(data["coaction"]), data.get("label", ""))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise HopfError(f"malformed module-comodule json: {exc}") from exc


def one_dim(H: HopfAlgebra, g, chi, side="rr", label="") -> ModComod:
    """k^g_chi: action by the character chi, coaction by the group-like g."""
    act = [Matrix(1, 1, [{0: chi[i]} if chi[i] else {}]) for i in range(H.n)]
    coact = [Matrix(1, 1, [{0: g[k]} if g.get(k) else {}]) for k in range(H.n)]
    return ModComod(H, 1, side, act, coact, label)


def trivial(H: HopfAlgebra, side="rr") -> ModComod:
    return one_dim(H, dict(H.unit), H.counit, side, "k^1_eps")


def char_power(H, chi, e):
    """chi^e in convolution; negative powers use chi o S."""
    base = chi if e >= 0 else H.conv_inverse_char(chi)
    out = list(H.counit)
    for _ in range(abs(e)):
        out = _conv(H, out, base)
    return out


def _conv(H, f, g):
    out = []
    for i in range(H.n):
        s = H.field.zero
        for (a, b), c in H.comul[i].items():
            s = s + c * f[a] * g[b]
        out.append(s)
    return out


def grouplike_power(H, p, e):
    base = p if e >= 0 else H.S(p)
    out = dict(H.unit)
    for _ in range(abs(e)):
        out = H.m(out, base)
    return out


def filler(H: HopfAlgebra, pair: PairInInvolution) -> ModComod:
    """k^{p^-2}_{chi^2}, placed at every non-distinguished cilium."""
    return one_dim(H, grouplike_power(H, pair.p, -2), char_power(H, pair.chi, 2), "rr", "filler")


# --- twisted duals -----------------------------------------------------------

def left_dual(Z: ModComod, use_inverse=False) -> ModComod:
    """Turn a right-right object into a left-left one via S (or S^-1).

    Coaction S(z_1) (x) z_0 and action h . z = z . S(h); with ``use_inverse``
    S^-1 replaces S in both.
    """
    H = Z.H
    if Z.side != "rr":
        raise HopfError("left_dual expects a right-right object")
    T = (lambda x: H.Sinv(x)) if use_inverse else (lambda x: H.S(x))
    act = [Z.action(T({i: H.field.one})) for i in range(H.n)]
    coact = [Matrix(Z.dim, Z.dim) for _ in range(H.n)]
    for k in range(H.n):
        for j, c in T({k: H.field.one}).items():
            coact[j] = coact[j] + Z.coact[k].scale(c)
    return ModComod(H, Z.dim, "ll", act, coact, f"dual({Z.label})")


# --- induced involutive Hopf bimodule ----------------------------------------

@dataclass
class HopfBimodule:
    H: HopfAlgebra
    dim: int
    lact: list   # g |> m
    ract: list   # m <| h
    lco: list    # m -> sum_k h_k (x) lco[k] m
    rco: list    # m -> sum_k rco[k] m (x) h_k
    psi: Matrix
    pair: PairInInvolution = None

    def L(self, x):
        return lin(self.H, self.lact, x, self.dim)

    def R(self, x):
        return lin(self.H, self.ract, x, self.dim)

    def three_leg(self):
        """m_-1 (x) m_0 (x) m_1 as matrices keyed by (a, b)."""
        n = self.H.n
        return {(a, b): self.rco[b] @ self.lco[a] for a in range(n) for b in range(n)}

    def check_bicomodule(self) -> list:
        n = self.H.n
        for a in range(n):
            for b in range(n):
                if self.rco[b] @ self.lco[a] != self.lco[a] @ self.rco[b]:
                    return [f"left and right coactions do not commute at {(a, b)}"]
        for i in range(n):
            for j in range(n):
                if self.lact[i] @ self.ract[j] != self.ract[j] @ self.lact[i]:
                    return [f"left and right actions do not commute at {(i, j)}"]
        return []

    def check_hopf_bimodule(self, reading="third", exhaustive=False) -> list:
        """Twisted Hopf bimodule axiom with sigma = S^-2.

        ``reading="third"`` pairs the right coaction leg with sigma(h_(3));
        ``reading="printed"`` uses the two-fold split h_(1), h_(2), h_(2).
        Both sides are multiplicative in g and in h, so by default only
        (generator, 1) and (1, generator) are checked.
        """
        from .hopf import algebra_generators
        H, n, d = self.H, self.H.n, self.dim
        E = lambda i: {i: H.field.one}
        one = sorted(H.unit)[0] if len(H.unit) == 1 and list(H.unit.values())[0] == 1 else None
        if exhaustive or one is None:
            cases = [(g, h) for g in range(n) for h in range(n)]
        else:
            gens = algebra_generators(H)
            cases = [(g, one) for g in gens] + [(one, h) for h in gens]
        legs = self.three_leg()
        live = [(k, M) for k, M in legs.items() if not M.is_zero()]
        for g, h in cases:
            dg = H.delta_n(E(g), 3)
            if reading == "third":
                dh = list(H.delta_n(E(h), 3).items())
            else:
                dh = [((a, b, b), v) for (a, b), v in H.comul[h].items()]
            op = self.lact[g] @ self.ract[h]
            lhs = {}
            for k, M in live:
                P = M @ op
                if not P.is_zero():
                    lhs[k] = P
            rhs = {}
            for (g1, g2, g3), cg in dg.items():
                for (h1, h2, h3), ch in dh:
                    mid = self.lact[g2] @ self.ract[h2]
                    s3 = H.S(E(h3), -2)
                    for (a, b), M in live:
                        left = H.prod(E(g1), E(a), E(h1))
                        right = H.prod(E(g3), E(b), s3)
                        if not left or not right:
                            continue
                        P = mid @ M
                        for u, x in left.items():
                            for w, y in right.items():
                                t = P.scale(cg * ch * x * y)
                                rhs[(u, w)] = rhs[(u, w)] + t if (u, w) in rhs else t
            for k in set(lhs) | set(rhs):
                if lhs.get(k, Matrix(d, d)) != rhs.get(k, Matrix(d, d)):
                    return [f"Hopf bimodule axiom ({reading}) fails at g={g}, h={h}, legs={k}"]
        return []

    def check_involution(self) -> list:
        H, n, d = self.H, self.H.n, self.dim
        errs = []
        if self.psi @ self.psi != Matrix.identity(d):
            errs.append("psi is not an involution")
        for g in range(n):
            for h in range(n):
                lhs = self.psi @ self.lact[g] @ self.ract[h]
                rhs = self.L(H.Sinv({h: 1})) @ self.R(H.S({g: 1})) @ self.psi
                if lhs != rhs:
                    errs.append(f"psi does not intertwine actions at {(g, h)}")
                    return errs
        legs = self.three_leg()
        Smat = [H.S({k: 1}) for k in range(n)]
        Sinv = [H.Sinv({k: 1}) for k in range(n)]
        for a in range(n):
            for b in range(n):
                lhs = self.psi @ legs[(a, b)]
                rhs = Matrix(d, d)
                for a2 in range(n):
                    for b2 in range(n):
                        c = Smat[b2].get(a, 0) * Sinv[a2].get(b, 0)
                        if c:
                            rhs = rhs + (legs[(a2, b2)] @ self.psi).scale(c)
                if lhs != rhs:
                    errs.append(f"psi does not intertwine coactions at {(a, b)}")
                    return errs
        return errs


def induced_bimodule(H: HopfAlgebra, pair: PairInInvolution) -> HopfBimodule:
    n = H.n
    F = H.field
    p, chi, zeta = pair.p, pair.chi, pair.zeta
    chinv = H.conv_inverse_char(chi)
    pinv = H.S(p)
    E = lambda i: {i: F.one}
    lact = [H.left_mult(E(i)) for i in range(n)]
    ract = []
    for i in range(n):
        M = Matrix(n, n)
        for (a, b), c in H.comul[i].items():
            s = c * chinv[b]
            if s:
                M = M + H.right_mult(E(a)).scale(s)
        ract.append(M)
    lco = [Matrix(n, n) for _ in range(n)]
    rco = [Matrix(n, n) for _ in range(n)]
    for i in range(n):
        for (a, b), c in H.comul[i].items():
            lco[a].rows[b][i] = lco[a].rows[b].get(i, 0) + c
            for k, v in H.m(E(b), p).items():
                rco[k].rows[a][i] = rco[k].rows[a].get(i, 0) + c * v
    for M in lco + rco:
        M.rows = [{k: v for k, v in r.items() if v} for r in M.rows]

    def psi_elt(x):
        out = {}
        for (a, b), c in H.delta(x).items():
            s = c * chi[a]
            if s:
                out = H.add(out, H.m(pinv, H.S(E(b))), s * zeta)
        return out

    psi = H.linear_matrix(psi_elt)
    return HopfBimodule(H, n, lact, ract, lco, rco, psi, pair)


def regular_bimodule(H: HopfAlgebra) -> HopfBimodule:
    from .hopf import make_pair
    return induced_bimodule(H, make_pair(H, dict(H.unit), list(H.counit)))


# --- coinvariants ------------------------------------------------------------

def coinvariants(M: HopfBimodule) -> ModComod:
    """M^coinv with the adjoint right action m . h = S(h_1) |> m <| h_2."""
    H, n, d = M.H, M.H.n, M.dim
    rows = []
    for k in range(n):
        A = M.lco[k]
        u = H.unit.get(k)
        if u:
            A = A - Matrix.identity(d, u)
        rows.extend(A.rows)
    basis = Echelon(d).extend(rows).nullspace()
    B = Matrix.from_columns(basis, d)
    m = len(basis)

    def restrict(op):
        out = Matrix(m, m)
        for j, v in enumerate(basis):
            img = op.apply(v)
            x = solve(B, img)
            if x is None:
                raise HopfError("coinvariants are not stable under the structure maps")
            for i, c in enumerate(x):
                if c:
                    out.rows[i][j] = c
        return out

    act = []
    for i in range(n):
        op = Matrix(d, d)
        for (a, b), c in H.comul[i].items():
            op = op + (M.L(H.S({a: 1})) @ M.ract[b]).scale(c)
        act.append(restrict(op))
    coact = [restrict(M.rco[k]) for k in range(n)]
    return ModComod(H, m, "rr", act, coact, "coinv")


def matches_one_dim(X: ModComod, g, chi) -> bool:
    if X.dim != 1:
        return False
    H = X.H
    return all(X.act[i][0, 0] == chi[i] for i in range(H.n)) and \
        all(X.coact[k][0, 0] == g.get(k, 0) for k in range(H.n))


# --- the unit object U -------------------------------------------------------

def unit_bimodule(H: HopfAlgebra):
    """(U_ll, U_rr): the left-left and right-right structures on H (x) H."""
    n = H.n
    F = H.field
    E = lambda i: {i: F.one}
    N = n * n
    idx = lambda g, k: g * n + k

    lact, ract, lco, rco = [], [], [], []
    for h in range(n):
        A = Matrix(N, N)
        for g in range(n):
            for k in range(n):
                for u, c in H.m(E(h), E(g)).items():
                    A.rows[idx(u, k)][idx(g, k)] = c
        lact.append(A)
        R = Matrix(N, N)
        for (h1, h2, h3), c in H.delta_n(E(h), 3).items():
            left_k = H.Sinv(E(h1))
            right_k = H.S(E(h3), 2)
            for g in range(n):
                gh = H.m(E(g), E(h2))
                for k in range(n):
                    kk = H.prod(left_k, E(k), right_k)
                    for u, x in gh.items():
                        for w, y in kk.items():
                            _acc(R.rows[idx(u, w)], idx(g, k), c * x * y)
        ract.append(R)
    lco = [Matrix(N, N) for _ in range(n)]
    rco = [Matrix(N, N) for _ in range(n)]
    for g in range(n):
        for k in range(n):
            for (a, b), c in H.comul[k].items():
                _acc(lco[a].rows[idx(g, b)], idx(g, k), c)
                _acc(rco[b].rows[idx(g, a)], idx(g, k), c)
    U_ll = ModComod(H, N, "ll", lact, lco, "U")
    U_rr = ModComod(H, N, "rr", ract, rco, "U")
    return U_ll, U_rr
