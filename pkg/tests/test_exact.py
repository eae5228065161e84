from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact.exact import (
    Echelon, Matrix, cyclotomic_poly, image_basis, kernel_basis, make_field,
    parse_scalar, quotient_basis, rank, solve, totient,
)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def naive_divide(num, den):
    # long division by hand, independent of the library helper
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for s in range(len(q) - 1, -1, -1):
        c = Fraction(num[s + len(den) - 1], den[-1])
        q[s] = c
        for i, d in enumerate(den):
            num[s + i] -= c * d
    assert not any(num)
    return q


def test_make_field_base_cases():
    assert make_field(1).minimal_poly == (0, 1)
    assert make_field(2).minimal_poly == (1, 1)
    assert make_field(2).zeta == -1


def test_phi3_by_division():
    q = naive_divide([-1, 0, 0, 1], [-1, 1])
    assert q == [1, 1, 1]
    assert make_field(3).minimal_poly == (1, 1, 1)


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_degree_and_divisibility(n):
    p = cyclotomic_poly(n)
    assert len(p) - 1 == totient(n)
    assert p[-1] == 1
    naive_divide([-1] + [0] * (n - 1) + [1], list(p))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12])
def test_zeta_is_root(n):
    F = make_field(n)
    z = F.zeta
    assert z ** n == 1
    assert all(z ** k != 1 for k in range(1, n))
    val = F.zero
    for i, c in enumerate(F.minimal_poly):
        val = val + z ** i * c
    assert not val


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(2)) == []
    assert len(kernel_basis(Matrix.zeros(1, 2))) == 2


def test_kernel_over_q_zeta3():
    F = make_field(3)
    z = F.zeta
    A = Matrix.from_dense([[F.one, z], [z * z, F.one]])
    ker = kernel_basis(A)
    assert len(ker) == 1
    assert not A.apply(ker[0])
    # row2 really is zeta^2 * row1
    assert [z * z * x for x in A.to_dense()[0]] == A.to_dense()[1]


def test_image_basis_examples():
    assert image_basis(Matrix.zeros(3, 3)) == []
    assert image_basis(Matrix.identity(3)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    u = [Fraction(1), Fraction(2), Fraction(-1)]
    v = [Fraction(3), Fraction(0), Fraction(5)]
    A = Matrix.from_dense([[a * b for b in v] for a in u])
    img = image_basis(A)
    assert len(img) == 1 == rank(A)
    ratio = img[0][0] / u[0]
    assert [ratio * x for x in u] == img[0]


def test_quotient_basis():
    P, S = quotient_basis([], 3)
    assert P == Matrix.identity(3)
    P, S = quotient_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert P.nrows == 0
    P, S = quotient_basis([[1, 1, 0]], 3)
    assert P.nrows == 2
    assert P @ S == Matrix.identity(2)
    assert not P.apply([1, 1, 0])
    with pytest.raises(ValueError, match="not a basis"):
        quotient_basis([[1, 1, 0], [2, 2, 0]], 3)


def test_solve_and_inconsistent():
    A = Matrix.from_dense([[1, 2], [3, 4]])
    x = solve(A, [5, 6])
    assert A.apply(x) == {0: 5, 1: 6}
    B = Matrix.from_dense([[1, 1], [1, 1]])
    assert solve(B, [1, 2]) is None


def test_parse_scalar():
    F = make_field(4)
    assert parse_scalar("z^2", F) == -1
    assert parse_scalar("1/2*z^1 + 1/2*z^3", F) == 0
    assert parse_scalar("-3/4", F) == Fraction(-3, 4)
    Q = make_field(1)
    assert parse_scalar("7/3", Q) == Fraction(7, 3)


def test_echelon_order_independent():
    vecs = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    a = Echelon(3).extend(vecs).rows()
    b = Echelon(3).extend(reversed(vecs)).rows()
    assert a == b


# ---- property tests ---------------------------------------------------------

rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def cyc(F):
    return st.lists(rat, min_size=F.degree, max_size=F.degree).map(
        lambda cs: sum((F.zeta_power(i) * c for i, c in enumerate(cs)), F.zero))


F3 = make_field(3)
F5 = make_field(5)


@settings(max_examples=1000, deadline=None)
@given(cyc(F5), cyc(F5), cyc(F5))
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == 1


def matrices(F, maxdim=5):
    return st.integers(1, maxdim).flatmap(lambda r: st.integers(1, maxdim).flatmap(
        lambda c: st.lists(st.lists(st.one_of(st.just(F.zero), cyc(F) if F.degree > 1 else rat),
                                    min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices(make_field(1)))
def test_rank_nullity_q(grid):
    A = Matrix.from_dense(grid)
    ker = kernel_basis(A)
    assert rank(A) + len(ker) == A.ncols
    for v in ker:
        assert not A.apply(v)
    assert len(image_basis(A)) == rank(A) == rank(A.transpose())


@settings(max_examples=100, deadline=None)
@given(matrices(F3, 4))
def test_rank_nullity_q_zeta3(grid):
    A = Matrix.from_dense(grid)
    ker = kernel_basis(A)
    assert rank(A) + len(ker) == A.ncols
    for v in ker:
        assert not A.apply(v)
