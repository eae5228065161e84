"""Finite-dimensional Hopf algebras given by structure constants.

Elements are sparse coordinate dicts {basis index: scalar}.  ``mul[i][j]`` is
the product h_i h_j, ``comul[i]`` maps (j, k) to the coefficient of h_j (x) h_k
in Delta(h_i), and ``antipode[i]`` is S(h_i).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .exact import Echelon, FieldSpec, Matrix, format_scalar, make_field, solve


def _acc(d, k, v):
    if not v:
        return
    nv = d.get(k, 0) + v
    if nv:
        d[k] = nv
    else:
        d.pop(k, None)


def _clean(d):
    return {k: v for k, v in d.items() if v}


class HopfError(ValueError):
    pass


class HopfAlgebra:
    def __init__(self, field: FieldSpec, labels, mul, unit, comul, counit, antipode, antipode_inv=None):
        self.field = field
        self.labels = list(labels)
        self.n = len(self.labels)
        self.mul = mul
        self.unit = _clean(unit)
        self.comul = comul
        self.counit = list(counit)
        self.antipode = antipode
        if antipode_inv is None:
            antipode_inv = _invert_columns(antipode, self.n)
            if antipode_inv is None:
                raise HopfError("antipode is not invertible")
        self.antipode_inv = antipode_inv

    @property
    def dim(self):
        return self.n

    def __repr__(self):
        return f"HopfAlgebra(dim={self.n}, basis={self.labels})"

    # -- element arithmetic ------------------------------------------------
    def basis(self, i):
        return {i: self.field.one}

    def m(self, x, y):
        out = {}
        for i, a in x.items():
            row = self.mul[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    _acc(out, k, ab * c)
        return out

    def prod(self, *xs):
        out = dict(self.unit)
        for x in xs:
            out = self.m(out, x)
        return out

    def add(self, x, y, s=1):
        out = dict(x)
        for k, v in y.items():
            _acc(out, k, s * v)
        return out

    def scale(self, x, s):
        return _clean({k: v * s for k, v in x.items()})

    def delta(self, x):
        out = {}
        for i, a in x.items():
            for jk, c in self.comul[i].items():
                _acc(out, jk, a * c)
        return out

    def delta_n(self, x, legs):
        """Iterated coproduct with ``legs`` tensor factors, keyed by index tuples."""
        cur = {(i,): a for i, a in x.items() if a}
        for _ in range(legs - 1):
            nxt = {}
            for key, a in cur.items():
                for (j, k), c in self.comul[key[-1]].items():
                    _acc(nxt, key[:-1] + (j, k), a * c)
            cur = nxt
        return cur

    def eps(self, x):
        s = 0
        for i, a in x.items():
            if self.counit[i]:
                s = s + a * self.counit[i]
        return self.field(s)

    def S(self, x, power=1):
        table = self.antipode if power >= 0 else self.antipode_inv
        for _ in range(abs(power)):
            out = {}
            for i, a in x.items():
                for k, c in table[i].items():
                    _acc(out, k, a * c)
            x = out
        return x

    def Sinv(self, x):
        return self.S(x, -1)

    # -- matrices (columns are images of basis vectors) ----------------------
    def left_mult(self, x) -> Matrix:
        M = Matrix(self.n, self.n)
        for j in range(self.n):
            for k, v in self.m(x, {j: 1}).items():
                M.rows[k][j] = v
        return M

    def right_mult(self, x) -> Matrix:
        M = Matrix(self.n, self.n)
        for j in range(self.n):
            for k, v in self.m({j: 1}, x).items():
                M.rows[k][j] = v
        return M

    def linear_matrix(self, fn) -> Matrix:
        M = Matrix(self.n, self.n)
        for j in range(self.n):
            for k, v in fn({j: self.field.one}).items():
                M.rows[k][j] = v
        return M

    @cached_property
    def S_matrix(self):
        return self.linear_matrix(self.S)

    # -- functionals ---------------------------------------------------------
    def evaluate(self, f, x):
        """Apply a functional given by its values on the basis."""
        s = self.field.zero
        for i, a in x.items():
            if f[i]:
                s = s + f[i] * a
        return s

    def conv_inverse_char(self, chi):
        """chi o S, the convolution inverse of a character."""
        return [self.evaluate(chi, self.S({i: 1})) for i in range(self.n)]

    def inverse_grouplike(self, g):
        return self.S(g)

    # -- structure checks ----------------------------------------------------
    def check_axioms(self) -> list:
        errs = []
        n = self.n
        E = [{i: self.field.one} for i in range(n)]
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.m(self.m(E[i], E[j]), E[k]) != self.m(E[i], self.m(E[j], E[k])):
                errs.append(f"associativity fails at {(i, j, k)}")
                break
        for i in range(n):
            if self.m(self.unit, E[i]) != E[i] or self.m(E[i], self.unit) != E[i]:
                errs.append(f"unit law fails at {i}")
                break
        for i in range(n):
            d = self.delta(E[i])
            left, right = {}, {}
            for (j, k), c in d.items():
                for (a, b), c2 in self.comul[j].items():
                    _acc(left, (a, b, k), c * c2)
                for (a, b), c2 in self.comul[k].items():
                    _acc(right, (j, a, b), c * c2)
            if left != right:
                errs.append(f"coassociativity fails at {i}")
                break
        for i in range(n):
            d = self.delta(E[i])
            l, r = {}, {}
            for (j, k), c in d.items():
                _acc(l, k, c * self.counit[j])
                _acc(r, j, c * self.counit[k])
            if l != E[i] or r != E[i]:
                errs.append(f"counit law fails at {i}")
                break
        if self.eps(self.unit) != 1:
            errs.append("counit of unit is not 1")
        if self.delta(self.unit) != {(a, b): x * y for a, x in self.unit.items() for b, y in self.unit.items()
                                     if x * y} and not _tensor_eq(self.delta(self.unit), self.unit, self.unit):
            errs.append("comultiplication does not preserve the unit")
        for i, j in itertools.product(range(n), repeat=2):
            lhs = self.delta(self.m(E[i], E[j]))
            rhs = {}
            for (a, b), c in self.comul[i].items():
                for (x, y), d in self.comul[j].items():
                    for u, e1 in self.mul[a][x].items():
                        for v, e2 in self.mul[b][y].items():
                            _acc(rhs, (u, v), c * d * e1 * e2)
            if lhs != rhs:
                errs.append(f"comultiplication not multiplicative at {(i, j)}")
                break
            if self.eps(self.m(E[i], E[j])) != self.counit[i] * self.counit[j]:
                errs.append(f"counit not multiplicative at {(i, j)}")
                break
        for i in range(n):
            want = self.scale(self.unit, self.counit[i])
            l, r = {}, {}
            for (j, k), c in self.comul[i].items():
                l = self.add(l, self.m(self.S(E[j]), E[k]), c)
                r = self.add(r, self.m(E[j], self.S(E[k])), c)
            if l != want or r != want:
                errs.append(f"antipode law fails at {i}")
                break
        for i in range(n):
            if self.S(self.Sinv(E[i])) != E[i] or self.Sinv(self.S(E[i])) != E[i]:
                errs.append(f"antipode inverse wrong at {i}")
                break
        return errs

    # -- serialisation -------------------------------------------------------
    def to_json(self):
        f = self.field
        mul = [[i, j, k, format_scalar(c)] for i in range(self.n) for j in range(self.n)
               for k, c in self.mul[i][j].items()]
        comul = [[i, j, k, format_scalar(c)] for i in range(self.n) for (j, k), c in self.comul[i].items()]
        return {
            "dim": self.n,
            "cyclotomic_order": f.cyclotomic_order,
            "basis": self.labels,
            "mul": mul,
            "unit": [format_scalar(self.unit.get(i, 0)) for i in range(self.n)],
            "comul": comul,
            "counit": [format_scalar(c) for c in self.counit],
            "antipode": [[format_scalar(self.antipode[i].get(k, 0)) for k in range(self.n)]
                         for i in range(self.n)],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["dim"])
            F = make_field(int(data.get("cyclotomic_order", 1)))
            labels = data.get("basis") or [f"e{i}" for i in range(n)]
            mul = [[{} for _ in range(n)] for _ in range(n)]
            for i, j, k, c in data["mul"]:
                _acc(mul[i][j], k, F.parse(c))
            comul = [{} for _ in range(n)]
            for i, j, k, c in data["comul"]:
                _acc(comul[i], (j, k), F.parse(c))
            counit = [F.parse(c) for c in data["counit"]]
            anti = [_clean({k: F.parse(c) for k, c in enumerate(row)}) for row in data["antipode"]]
            if "unit" in data:
                unit = _clean({k: F.parse(c) for k, c in enumerate(data["unit"])})
            else:
                unit = _find_unit(mul, n, F)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise HopfError(f"malformed Hopf algebra json: {exc}") from exc
        return cls(F, labels, mul, unit, comul, counit, anti)


def _tensor_eq(d, x, y):
    want = {}
    for a, u in x.items():
        for b, v in y.items():
            _acc(want, (a, b), u * v)
    return d == want


def _invert_columns(cols, n):
    # cols[i] is the image of basis vector i; returns the inverse map in the same form
    M = Matrix(n, n)
    for i, col in enumerate(cols):
        for k, v in col.items():
            M.rows[k][i] = v
    inv = []
    for j in range(n):
        x = solve(M, {j: 1})
        if x is None:
            return None
        inv.append(x)
    # inv[j] is the preimage of e_j; that is column j of the inverse matrix
    return [_clean({i: x[i] for i in range(n)}) for x in inv]


def _find_unit(mul, n, F):
    # unit u with u h_j = h_j for all j: linear in u
    rows = []
    rhs = []
    for j in range(n):
        for k in range(n):
            rows.append({i: mul[i][j].get(k, 0) for i in range(n) if mul[i][j].get(k, 0)})
            rhs.append(1 if j == k else 0)
    A = Matrix(len(rows), n, rows)
    x = solve(A, rhs)
    if x is None:
        raise HopfError("algebra has no unit")
    return _clean({i: F(v) for i, v in enumerate(x)})


# --- constructors -----------------------------------------------------------

def group_algebra(table, field: FieldSpec = None, labels=None) -> HopfAlgebra:
    field = field or make_field(1)
    n = len(table)
    if any(len(r) != n for r in table) or any(not 0 <= x < n for r in table for x in r):
        raise HopfError("multiplication table is not square")
    ident = [e for e in range(n) if all(table[e][j] == j and table[j][e] == j for j in range(n))]
    if not ident:
        raise HopfError("no identity element")
    e = ident[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise HopfError("table is not associative")
    inv = []
    for a in range(n):
        bs = [b for b in range(n) if table[a][b] == e]
        if len(bs) != 1 or table[bs[0]][a] != e:
            raise HopfError("table lacks inverses")
        inv.append(bs[0])
    one = field.one
    mul = [[{table[i][j]: one} for j in range(n)] for i in range(n)]
    comul = [{(i, i): one} for i in range(n)]
    counit = [one] * n
    anti = [{inv[i]: one} for i in range(n)]
    H = HopfAlgebra(field, labels or [f"g{i}" for i in range(n)], mul, {e: one}, comul, counit, anti,
                    [{inv[i]: one} for i in range(n)])
    H.group_table = table
    H.group_identity = e
    H.group_inverse = inv
    return H


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def cyclic_group_algebra(n, field=None):
    field = field or make_field(n if n > 2 else 1)
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return group_algebra(cyclic_table(n), field, labels)


def s3_table():
    perms = list(itertools.permutations(range(3)))
    # identity first
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms], perms


def s3_algebra(field=None):
    table, perms = s3_table()
    labels = ["".join(str(x + 1) for x in p) for p in perms]
    return group_algebra(table, field or make_field(1), labels)


def taft_algebra(N: int) -> HopfAlgebra:
    """Basis y^i h^j (index i*N + j) with h^N = 1, y^N = 0, hy = q yh, q = zeta_N."""
    if N < 2:
        raise HopfError("Taft algebras need N >= 2")
    F = make_field(N)
    q = F.zeta
    one = F.one
    n = N * N
    idx = lambda i, j: i * N + (j % N)
    mul = [[{} for _ in range(n)] for _ in range(n)]
    for i, j, k, l in itertools.product(range(N), repeat=4):
        if i + k < N:
            mul[idx(i, j)][idx(k, l)] = {idx(i + k, j + l): q ** (j * k)}
    labels = []
    for i in range(N):
        for j in range(N):
            parts = []
            if i:
                parts.append("y" if i == 1 else f"y^{i}")
            if j:
                parts.append("h" if j == 1 else f"h^{j}")
            labels.append("".join(parts) or "1")
    unit = {0: one}

    def tmul(A, B):
        out = {}
        for (a, b), c in A.items():
            for (x, y), d in B.items():
                for u, e1 in mul[a][x].items():
                    for v, e2 in mul[b][y].items():
                        _acc(out, (u, v), c * d * e1 * e2)
        return out

    dh = {(idx(0, 1), idx(0, 1)): one}
    dy = {(0, idx(1, 0)): one, (idx(1, 0), idx(0, 1)): one}
    comul = []
    for i in range(N):
        for j in range(N):
            d = {(0, 0): one}
            for _ in range(i):
                d = tmul(d, dy)
            for _ in range(j):
                d = tmul(d, dh)
            comul.append(d)
    counit = [one if i == 0 else F.zero for i in range(N) for _ in range(N)]

    def emul(x, y):
        out = {}
        for a, c in x.items():
            for b, d in y.items():
                for k, e in mul[a][b].items():
                    _acc(out, k, c * d * e)
        return out

    Sh = {idx(0, N - 1): one}
    Sy = {idx(1, N - 1): -one}
    anti = []
    for i in range(N):
        for j in range(N):
            x = {0: one}
            for _ in range(j):
                x = emul(x, Sh)
            for _ in range(i):
                x = emul(x, Sy)
            anti.append(x)
    return HopfAlgebra(F, labels, mul, unit, comul, counit, anti)


def sweedler() -> HopfAlgebra:
    return taft_algebra(2)


def dual(H: HopfAlgebra) -> HopfAlgebra:
    n = H.n
    mul = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for (i, j), c in H.comul[k].items():
            _acc(mul[i][j], k, c)
    comul = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in H.mul[i][j].items():
                _acc(comul[k], (i, j), c)
    unit = _clean({i: H.counit[i] for i in range(n)})
    counit = [H.unit.get(i, H.field.zero) for i in range(n)]
    anti = [{} for _ in range(n)]
    for i in range(n):
        for k, c in H.antipode[i].items():
            _acc(anti[k], i, c)
    anti_inv = [{} for _ in range(n)]
    for i in range(n):
        for k, c in H.antipode_inv[i].items():
            _acc(anti_inv[k], i, c)
    labels = [f"{lab}*" for lab in H.labels]
    return HopfAlgebra(H.field, labels, mul, unit, comul, counit, anti, anti_inv)


# --- group-likes, characters, integrals -------------------------------------

def characters(H: HopfAlgebra) -> list:
    """All algebra maps H -> k, as value lists on the basis.

    Values on basis elements are searched among 0 and the roots of unity of
    the field; each candidate branch is pruned by requiring a common left
    eigenvector of the left multiplication operators.
    """
    n = H.n
    F = H.field
    cands = [F.zero] + F.roots_of_unity()
    L = [H.left_mult({i: F.one}) for i in range(n)]
    options = []
    for i in range(n):
        opts = []
        for lam in cands:
            A = L[i] - Matrix.identity(n, lam) if lam else L[i]
            if A.rank() < n:
                opts.append(lam)
        options.append(opts)
    found = []

    def rec(i, ech, vals):
        if i == n:
            chi = list(vals)
            if _is_character(H, chi):
                found.append(chi)
            return
        for lam in options[i]:
            e2 = ech.copy()
            A = L[i] - Matrix.identity(n, lam) if lam else L[i]
            e2.extend(A.columns())
            if e2.rank < n:
                rec(i + 1, e2, vals + [lam])

    rec(0, Echelon(n), [])
    return found


def _is_character(H, chi):
    if H.evaluate(chi, H.unit) != 1:
        return False
    for i in range(H.n):
        for j in range(H.n):
            if H.evaluate(chi, H.mul[i][j]) != chi[i] * chi[j]:
                return False
    return True


def group_likes(H: HopfAlgebra) -> list:
    """Group-like elements as coordinate dicts (characters of the dual)."""
    out = []
    for vals in characters(dual(H)):
        out.append(_clean({i: v for i, v in enumerate(vals)}))
    return out


def is_grouplike(H, g) -> bool:
    return _tensor_eq(H.delta(g), g, g) and H.eps(g) == 1


def left_integrals(H: HopfAlgebra) -> list:
    F = H.field
    rows = []
    for i in range(H.n):
        A = H.left_mult({i: F.one})
        if H.counit[i]:
            A = A - Matrix.identity(H.n, H.counit[i])
        rows.extend(A.rows)
    return Echelon(H.n).extend(rows).nullspace()


def _ratio(x, y):
    # scalar c with x = c y, assuming proportional vectors and y != 0
    k = next(iter(y))
    return x.get(k, 0) / y[k]


def distinguished(H: HopfAlgebra):
    """(alpha, a): the distinguished character and group-like element."""
    ints = left_integrals(H)
    if len(ints) != 1:
        raise HopfError(f"space of left integrals has dimension {len(ints)}")
    lam = ints[0]
    alpha = []
    for i in range(H.n):
        v = H.m(lam, {i: H.field.one})
        c = H.field(_ratio(v, lam))
        if H.scale(lam, c) != v:
            raise HopfError("integral is not an eigenvector of right multiplication")
        alpha.append(c)
    D = dual(H)
    dints = left_integrals(D)
    if len(dints) != 1:
        raise HopfError("dual integrals are not one-dimensional")
    dl = dints[0]
    a = {}
    for i in range(H.n):
        v = D.m(dl, {i: D.field.one})
        c = _ratio(v, dl)
        if c:
            a[i] = H.field(c)
    return alpha, a


def is_semisimple(H: HopfAlgebra) -> bool:
    lam = left_integrals(H)[0]
    return bool(H.eps(lam))


def is_cosemisimple(H: HopfAlgebra) -> bool:
    return is_semisimple(dual(H))


def ad(H: HopfAlgebra, p, chi, x):
    """chi^{-1}(x_1) chi(x_3) p x_2 p^{-1}."""
    chinv = H.conv_inverse_char(chi)
    pinv = H.S(p)
    out = {}
    for (i, j, k), c in H.delta_n(x, 3).items():
        s = c * chinv[i] * chi[k]
        if s:
            out = H.add(out, H.prod(p, {j: s}, pinv))
    return out


def check_s4(H: HopfAlgebra) -> bool:
    alpha, a = distinguished(H)
    ainv = H.S(a)
    for i in range(H.n):
        e = {i: H.field.one}
        if H.S(e, 4) != ad(H, ainv, alpha, e):
            return False
    return True


@dataclass
class PairInInvolution:
    p: dict
    chi: list
    modular: bool
    zeta: object

    def describe(self, H):
        return {"p": element_label(H, self.p), "chi": character_label(H, self.chi),
                "modular": self.modular, "zeta": format_scalar(self.zeta)}


def is_pair_in_involution(H, p, chi) -> bool:
    for i in range(H.n):
        e = {i: H.field.one}
        if H.S(e, 2) != ad(H, p, chi, e):
            return False
    return True


def pairs_in_involution(H: HopfAlgebra, with_rejected=False):
    """All pairs in involution with a usable square root zeta of chi(p)."""
    out, rejected = [], []
    G = group_likes(H)
    X = characters(H)
    for p in G:
        for chi in X:
            if not is_pair_in_involution(H, p, chi):
                continue
            cp = H.evaluate(chi, p)
            if cp == 1:
                out.append(PairInInvolution(p, chi, True, H.field.one))
                continue
            z = H.field.sqrt(cp)
            if z is None:
                rejected.append((p, chi, "chi(p) has no square root in the field"))
            else:
                out.append(PairInInvolution(p, chi, False, z))
    if with_rejected:
        return out, rejected
    return out


def make_pair(H, p, chi) -> PairInInvolution:
    if not is_pair_in_involution(H, p, chi):
        raise HopfError("not a pair in involution")
    cp = H.evaluate(chi, p)
    if cp == 1:
        return PairInInvolution(p, chi, True, H.field.one)
    z = H.field.sqrt(cp)
    if z is None:
        raise HopfError("chi(p) has no square root in the field")
    return PairInInvolution(p, chi, False, z)


def element_label(H, x) -> str:
    if len(x) == 1:
        (i, c), = x.items()
        if c == 1:
            return H.labels[i]
    return " + ".join(f"{format_scalar(c)}*{H.labels[i]}" for i, c in sorted(x.items()))


def character_label(H, chi) -> str:
    if all(c == H.counit[i] for i, c in enumerate(chi)):
        return "eps"
    return "[" + ", ".join(format_scalar(c) for c in chi) + "]"


def algebra_generators(H: HopfAlgebra) -> list:
    """Basis indices that generate H as an algebra, chosen greedily."""
    n = H.n
    gens = []
    span = Echelon(n)
    span.add(dict(H.unit))
    elems = [dict(H.unit)]
    for i in range(n):
        if span.rank == n:
            break
        if span.contains({i: 1}):
            continue
        gens.append(i)
        # close the span under multiplication by the generators
        frontier = list(elems)
        span.add({i: 1})
        elems.append({i: H.field.one})
        frontier.append({i: H.field.one})
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (H.m(x, {g: 1}), H.m({g: 1}, x)):
                    if span.add(y):
                        elems.append(y)
                        frontier.append(y)
    return gens


# --- built-in selection -----------------------------------------------------

def builtin(name: str) -> HopfAlgebra:
    name = name.removeprefix("builtin:")
    if name == "sweedler":
        return sweedler()
    if name.startswith("taft:"):
        return taft_algebra(int(name[5:]))
    if name.startswith("group:Z"):
        return cyclic_group_algebra(int(name[7:]))
    if name == "group:S3":
        return s3_algebra()
    raise HopfError(f"unknown built-in Hopf algebra {name!r}")


def load_hopf(spec: str) -> HopfAlgebra:
    if spec.startswith("builtin:") or spec in ("sweedler",) or spec.startswith(("taft:", "group:")):
        return builtin(spec)
    with open(spec) as fh:
        return HopfAlgebra.from_json(json.load(fh))
