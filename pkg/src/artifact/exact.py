"""Exact arithmetic over cyclotomic fields Q(zeta_N) and a small linear algebra kernel.

Scalars of Q and Q(-1) are plain ``fractions.Fraction``; for larger N they are
``Cyc`` residues modulo the cyclotomic polynomial.  Matrices keep their rows
as sparse dicts because almost every operator in the lattice model is a
signed permutation or close to one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divmod(num, den):
    # coefficient lists, low degree first, integer or Fraction entries
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(int(c) for c in poly)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@dataclass(frozen=True)
class FieldSpec:
    cyclotomic_order: int
    minimal_poly: tuple

    @property
    def degree(self) -> int:
        return len(self.minimal_poly) - 1

    @property
    def plain(self) -> bool:
        # Q and Q(-1) = Q use Fraction scalars directly
        return self.degree == 1

    # -- element constructors -------------------------------------------
    def __call__(self, x):
        if isinstance(x, Cyc):
            return x
        if self.plain:
            return Fraction(x)
        return Cyc.from_rational(_ctx(self.cyclotomic_order), Fraction(x))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def zeta_power(self, e: int):
        N = self.cyclotomic_order
        e %= N
        if N == 1:
            return Fraction(1)
        if N == 2:
            return Fraction(-1) ** e
        return _ctx(N).power_of_zeta(e)

    @property
    def zeta(self):
        return self.zeta_power(1)

    def roots_of_unity(self) -> list:
        """All roots of unity in the field, ordered by exponent of a primitive one."""
        N = self.cyclotomic_order
        order = N if N % 2 == 0 else 2 * N
        out = []
        for e in range(order):
            if N % 2 == 0:
                out.append(self.zeta_power(e))
            else:
                v = self.zeta_power(e // 2 if e % 2 == 0 else (e - 1) // 2)
                out.append(v if e % 2 == 0 else -v)
        # dedupe while keeping order
        seen, res = set(), []
        for v in out:
            k = scalar_key(v)
            if k not in seen:
                seen.add(k)
                res.append(v)
        return res

    def sqrt(self, x):
        """A square root of a root of unity ``x`` inside the field, or None."""
        for r in self.roots_of_unity():
            if r * r == x:
                return r
        return None

    def parse(self, text):
        return parse_scalar(text, self)

    def format(self, x) -> str:
        return format_scalar(x)


def make_field(N: int) -> FieldSpec:
    if not isinstance(N, int) or N < 1:
        raise ValueError("cyclotomic order must be a positive integer")
    if N == 1:
        return FieldSpec(1, (0, 1))
    return FieldSpec(N, cyclotomic_poly(N))


class _Ctx:
    """Reduction data for Q(zeta_N) with degree > 1."""

    def __init__(self, N):
        self.N = N
        self.phi = cyclotomic_poly(N)
        self.d = len(self.phi) - 1
        d = self.d
        # x^k mod phi for k < 2d - 1
        self.red = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        for _ in range(2 * d - 1):
            self.red.append(tuple(cur))
            # multiply by x
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(d):
                    nxt[i] -= top * self.phi[i]
            cur = nxt
        self.zero = Cyc(self, (Fraction(0),) * d)
        self.one = Cyc(self, (Fraction(1),) + (Fraction(0),) * (d - 1))

    def power_of_zeta(self, e):
        e %= self.N
        v = [Fraction(0)] * self.d
        v[0] = Fraction(1)
        z = Cyc(self, tuple(v))
        x = [Fraction(0)] * self.d
        x[1] = Fraction(1)
        xz = Cyc(self, tuple(x))
        for _ in range(e):
            z = z * xz
        return z


@lru_cache(maxsize=None)
def _ctx(N):
    return _Ctx(N)


class Cyc:
    """Element of Q(zeta_N), stored as coefficients of 1, zeta, ..., zeta^(d-1)."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.c = coeffs

    @classmethod
    def from_rational(cls, ctx, q):
        return cls(ctx, (Fraction(q),) + (Fraction(0),) * (ctx.d - 1))

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.ctx is not self.ctx:
                raise TypeError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.from_rational(self.ctx, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.ctx, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.ctx, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.ctx, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ctx.zero
            return Cyc(self.ctx, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ctx.d
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:d])
        red = self.ctx.red
        for k in range(d, 2 * d - 1):
            t = prod[k]
            if t:
                r = red[k]
                for i in range(d):
                    if r[i]:
                        out[i] += t * r[i]
        return Cyc(self.ctx, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # solve (multiplication by self) * v = 1 as a d x d rational system
        d = self.ctx.d
        cols = []
        basis = []
        for i in range(d):
            e = [Fraction(0)] * d
            e[i] = Fraction(1)
            basis.append(Cyc(self.ctx, tuple(e)))
        for b in basis:
            cols.append((self * b).c)
        rows = [{j: cols[j][i] for j in range(d) if cols[j][i]} for i in range(d)]
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        sol = _solve_dense_rational(rows, rhs, d)
        return Cyc(self.ctx, tuple(sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.ctx, tuple(a / other for a in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.ctx.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Cyc) else other
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __repr__(self):
        return format_scalar(self)


def _solve_dense_rational(rows, rhs, n):
    # tiny helper used for Cyc inversion, rows are dicts
    aug = [dict(r) for r in rows]
    for i, r in enumerate(aug):
        if rhs[i]:
            r[n] = rhs[i]
    piv = {}
    for r in aug:
        r = _reduce_row(r, piv)
        if not r:
            continue
        c = min(k for k in r)
        if c == n:
            raise ZeroDivisionError("singular system")
        _insert_pivot(r, c, piv)
    return [piv[i].get(n, Fraction(0)) if i in piv else Fraction(0) for i in range(n)]


def scalar_key(x):
    """Hashable canonical form of a scalar."""
    if isinstance(x, Cyc):
        if not any(x.c[1:]):
            return x.c[0]
        return x.c
    return Fraction(x)


def is_rational(x) -> bool:
    return not isinstance(x, Cyc) or not any(x.c[1:])


# --- scalar text format:  "3/2*z^1 + -1*z^0"  -------------------------------

_TERM = re.compile(r"^\s*([+-]?\s*\d+(?:/\d+)?)?\s*(?:\*?\s*z(?:\^\s*(-?\d+))?)?\s*$")


def parse_scalar(text, field: FieldSpec):
    if isinstance(text, (int, Fraction)):
        return field(text)
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    # split on + and - that start a new term
    parts = re.findall(r"[+-]?[^+-]+", s)
    total = field.zero
    for part in parts:
        m = _TERM.match(part)
        if not m or (m.group(1) is None and "z" not in part):
            raise ValueError(f"cannot parse scalar term {part!r}")
        coef = m.group(1)
        if coef in (None, "+", "-"):
            coef = Fraction(-1 if coef == "-" else 1)
        else:
            coef = Fraction(coef)
        if "z" in part:
            e = int(m.group(2)) if m.group(2) is not None else 1
            total = total + field.zeta_power(e) * coef
        else:
            total = total + coef
    return total


def format_scalar(x) -> str:
    if not isinstance(x, Cyc):
        return str(Fraction(x))
    terms = []
    for e, c in enumerate(x.c):
        if c:
            terms.append(str(c) if e == 0 else f"{c}*z^{e}")
    return " + ".join(terms) if terms else "0"


# --- sparse row echelon machinery -------------------------------------------

def _reduce_row(row, piv):
    """Reduce a sparse row against an RREF pivot table {col: row}; returns the residue."""
    row = dict(row)
    if not piv:
        return row
    # pivot rows vanish on every other pivot column, so one pass suffices
    for c in [c for c in row if c in piv]:
        f = row[c]
        for k, v in piv[c].items():
            nv = row.get(k, 0) - f * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return row


def _insert_pivot(row, c, piv):
    inv = Fraction(1) / row[c]
    row = {k: v * inv for k, v in row.items()}
    # back-substitute into existing pivot rows to keep the table reduced
    for pc, prow in piv.items():
        f = prow.get(c)
        if f:
            for k, v in row.items():
                nv = prow.get(k, 0) - f * v
                if nv:
                    prow[k] = nv
                else:
                    prow.pop(k, None)
    piv[c] = row
    return row


class Echelon:
    """Incrementally built reduced row echelon form of a span of sparse vectors.

    Because the RREF of a span is unique, the resulting bases do not depend on
    insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.piv = {}

    def add(self, vec) -> bool:
        r = _reduce_row(vec, self.piv)
        if not r:
            return False
        _insert_pivot(r, min(r), self.piv)
        return True

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    def reduce(self, vec):
        return _reduce_row(vec, self.piv)

    def contains(self, vec) -> bool:
        return not _reduce_row(vec, self.piv)

    @property
    def rank(self) -> int:
        return len(self.piv)

    def pivots(self):
        return sorted(self.piv)

    def rows(self):
        return [dict(self.piv[c]) for c in sorted(self.piv)]

    def copy(self):
        e = Echelon(self.ncols)
        e.piv = {c: dict(r) for c, r in self.piv.items()}
        return e

    def nullspace(self):
        """Basis of {x : row . x = 0 for every stored row}, one vector per free column."""
        pivset = self.piv
        out = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = {f: Fraction(1)}
            for c, r in pivset.items():
                a = r.get(f)
                if a:
                    v[c] = -a
            out.append(v)
        return out


# --- matrices ---------------------------------------------------------------

class Matrix:
    """Sparse exact matrix; rows are dicts {col: scalar}."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    # construction
    @classmethod
    def from_dense(cls, grid, ncols=None):
        grid = [list(r) for r in grid]
        nr = len(grid)
        nc = ncols if ncols is not None else (len(grid[0]) if grid else 0)
        rows = [{j: v for j, v in enumerate(r) if v} for r in grid]
        return cls(nr, nc, rows)

    @classmethod
    def identity(cls, n, one=1):
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def zeros(cls, nr, nc):
        return cls(nr, nc)

    @classmethod
    def from_columns(cls, cols, nrows):
        m = cls(nrows, len(cols))
        for j, c in enumerate(cols):
            for i, v in _iter_vec(c):
                if v:
                    m.rows[i][j] = v
        return m

    def to_dense(self, zero=0):
        return [[r.get(j, zero) for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def copy(self):
        return Matrix(self.nrows, self.ncols, [dict(r) for r in self.rows])

    def transpose(self):
        t = Matrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                t.rows[j][i] = v
        return t

    T = property(transpose)

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    # arithmetic
    def __add__(self, other):
        _check_shape(self, other)
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for k, v in b.items():
                nv = r.get(k, 0) + v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            rows.append(r)
        return Matrix(self.nrows, self.ncols, rows)

    def __neg__(self):
        return Matrix(self.nrows, self.ncols, [{k: -v for k, v in r.items()} for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return Matrix(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, [{k: v * s for k, v in r.items()} for r in self.rows])

    def __rmul__(self, s):
        return self.scale(s)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            orows = other.rows
            out = []
            for r in self.rows:
                acc = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        nv = acc.get(j, 0) + a * b
                        if nv:
                            acc[j] = nv
                        else:
                            acc.pop(j, None)
                out.append(acc)
            return Matrix(self.nrows, other.ncols, out)
        return self.apply(other)

    def apply(self, vec):
        """Matrix times a sparse (dict) or dense (list) column vector; returns a dict."""
        v = dict(_iter_vec(vec))
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            if len(r) < len(v):
                for k, a in r.items():
                    b = v.get(k)
                    if b:
                        s = s + a * b
            else:
                for k, b in v.items():
                    a = r.get(k)
                    if a:
                        s = s + a * b
            if s:
                out[i] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            _clean(a) == _clean(b) for a, b in zip(self.rows, other.rows))

    __hash__ = None

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self):
        return not any(_clean(r) for r in self.rows)

    def kron(self, other):
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                r = {}
                for j, a in ra.items():
                    base = j * other.ncols
                    for k, b in rb.items():
                        v = a * b
                        if v:
                            r[base + k] = v
                rows.append(r)
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def __pow__(self, e):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        r = Matrix.identity(self.nrows)
        b = self
        while e:
            if e & 1:
                r = r @ b
            b = b @ b
            e >>= 1
        return r

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows)})"

    # linear algebra
    def echelon(self):
        return Echelon(self.ncols).extend(self.rows)

    def rank(self):
        return self.echelon().rank


def _clean(r):
    return {k: v for k, v in r.items() if v}


def _check_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _iter_vec(v):
    if isinstance(v, dict):
        return v.items()
    return ((i, x) for i, x in enumerate(v) if x)


def dense(vec, n, zero=0):
    out = [zero] * n
    for i, x in _iter_vec(vec):
        out[i] = x
    return out


def rank(A: Matrix) -> int:
    return A.rank()


def kernel_basis(A: Matrix, sparse=False):
    """Basis of ker A; vectors are dense lists unless ``sparse``."""
    vecs = A.echelon().nullspace()
    if sparse:
        return vecs
    return [dense(v, A.ncols) for v in vecs]


def image_basis(A: Matrix, sparse=False):
    """Pivot columns of A (leftmost first), a basis of the column space."""
    cols = A.columns()
    ech = Echelon(A.nrows)
    picked = []
    for c in cols:
        if ech.add(c):
            picked.append(c)
    if sparse:
        return picked
    return [dense(v, A.nrows) for v in picked]


def span_rank(vecs, n) -> int:
    return Echelon(n).extend(vecs).rank


def solve(A: Matrix, b):
    """One solution x of A x = b (free variables zero), or None if inconsistent."""
    n = A.ncols
    bd = dict(_iter_vec(b))
    rows = []
    for i, r in enumerate(A.rows):
        rr = dict(r)
        if bd.get(i):
            rr[n] = bd[i]
        rows.append(rr)
    ech = Echelon(n + 1).extend(rows)
    if n in ech.piv:
        return None
    x = [0] * n
    for c, r in ech.piv.items():
        x[c] = r.get(n, 0)
    return x


def quotient_basis(W, n):
    """Projection onto V/span(W) and a section, for V of dimension n.

    The quotient is coordinatised by the non-pivot columns of the RREF of W.
    Returns (P, S) with P of shape (q, n), S of shape (n, q), P @ S = I.
    """
    ech = Echelon(n)
    for w in W:
        if not ech.add(dict(_iter_vec(w))):
            raise ValueError("not a basis")
    return quotient_maps(ech)


def quotient_maps(ech: Echelon):
    n = ech.ncols
    free = [j for j in range(n) if j not in ech.piv]
    pos = {j: i for i, j in enumerate(free)}
    P = Matrix(len(free), n)
    for j in range(n):
        r = ech.reduce({j: 1})
        for k, v in r.items():
            P.rows[pos[k]][j] = v
    S = Matrix(n, len(free))
    for j in free:
        S.rows[j][pos[j]] = 1
    return P, S


def project(ech: Echelon, vec, free_pos):
    """Coordinates of vec modulo the span held in ech, indexed by free_pos."""
    r = ech.reduce(vec)
    return {free_pos[k]: v for k, v in r.items()}
