import json

import pytest
from hypothesis import given, settings, strategies as st

from artifact.hopf import (
    HopfAlgebra, HopfError, algebra_generators, builtin, characters, check_s4, distinguished,
    dual, group_likes, is_cosemisimple, is_pair_in_involution, is_semisimple, left_integrals,
    load_hopf, make_pair, pairs_in_involution,
)

NAMES = ["sweedler", "taft:3", "group:Z2", "group:Z3", "group:Z4", "group:S3"]


def elt(H, label):
    return {H.labels.index(label): H.field.one}


def test_sweedler_relations():
    H = builtin("sweedler")
    h, y = elt(H, "h"), elt(H, "y")
    assert H.m(h, h) == dict(H.unit)
    assert H.m(y, y) == {}
    assert H.m(h, y) == H.scale(elt(H, "yh"), -1)
    assert H.delta(h) == {(1, 1): 1}
    assert H.eps(y) == 0 and H.eps(h) == 1


def test_sweedler_antipode_square_is_conjugation():
    H = builtin("sweedler")
    y = elt(H, "y")
    assert H.S(y, 2) == H.scale(y, -1)
    assert H.S(y, 4) == y


def test_taft3_antipode_order():
    H = builtin("taft:3")
    y = elt(H, "y")
    assert H.S(y, 2) != y
    assert H.S(y, 6) == y


@pytest.mark.parametrize("name", NAMES)
def test_builtins_satisfy_axioms(name):
    H = builtin(name)
    assert H.check_axioms() == []
    assert check_s4(H)


@pytest.mark.parametrize("name,dim,glikes,chars", [
    ("sweedler", 4, 2, 2), ("taft:3", 9, 3, 3), ("group:Z3", 3, 3, 3), ("group:S3", 6, 6, 2),
])
def test_counts(name, dim, glikes, chars):
    H = builtin(name)
    assert H.n == dim
    assert len(group_likes(H)) == glikes
    assert len(characters(H)) == chars


@pytest.mark.parametrize("name,semi", [("sweedler", False), ("taft:3", False), ("group:S3", True)])
def test_semisimplicity(name, semi):
    H = builtin(name)
    assert is_semisimple(H) is semi
    assert is_cosemisimple(H) is semi


@pytest.mark.parametrize("name", NAMES)
def test_left_integral(name):
    H = builtin(name)
    (lam,) = left_integrals(H)
    for i in range(H.n):
        x = H.basis(i)
        assert H.m(x, lam) == H.scale(lam, H.eps(x))


def test_sweedler_not_unimodular():
    H = builtin("sweedler")
    alpha, a = distinguished(H)
    assert alpha != H.counit
    assert a == elt(H, "h")
    (lam,) = left_integrals(H)
    for i in range(H.n):
        # right multiplication by x scales a left integral by alpha(x)
        assert H.m(lam, H.basis(i)) == H.scale(lam, alpha[i])


def test_group_algebra_unimodular():
    H = builtin("group:S3")
    alpha, a = distinguished(H)
    assert alpha == H.counit and a == dict(H.unit)


@pytest.mark.parametrize("name", NAMES)
def test_pairs_are_pairs(name):
    H = builtin(name)
    pairs = pairs_in_involution(H)
    assert pairs
    for pair in pairs:
        assert is_pair_in_involution(H, pair.p, pair.chi)
        assert pair.zeta * pair.zeta == H.evaluate(pair.chi, pair.p)


def test_sweedler_pairs():
    H = builtin("sweedler")
    got = [(p.describe(H)["p"], p.describe(H)["chi"]) for p in pairs_in_involution(H)]
    assert got == [("h", "eps"), ("1", "[1, -1, 0, 0]")]


def test_make_pair_rejects():
    H = builtin("sweedler")
    with pytest.raises(HopfError):
        make_pair(H, dict(H.unit), H.counit)


def test_dual_dimension_and_axioms():
    H = builtin("taft:3")
    D = dual(H)
    assert D.n == H.n
    assert D.check_axioms() == []


def test_generators_span():
    H = builtin("group:S3")
    gens = algebra_generators(H)
    assert 1 <= len(gens) <= 3


def test_json_round_trip(tmp_path):
    H = builtin("taft:3")
    path = tmp_path / "taft.json"
    path.write_text(json.dumps(H.to_json()))
    K = load_hopf(str(path))
    assert K.labels == H.labels and K.mul == H.mul and K.comul == H.comul
    assert K.check_axioms() == []


def test_corrupted_table_is_caught():
    data = builtin("sweedler").to_json()
    # flip the sign of one structure constant
    for row in data["mul"]:
        if row[:2] == [1, 2]:
            row[3] = "1" if row[3] == "-1" else "-1"
    H = HopfAlgebra.from_json(data)
    assert H.check_axioms()


def test_malformed_json():
    with pytest.raises(HopfError):
        HopfAlgebra.from_json({"dim": 2})
    with pytest.raises(HopfError):
        builtin("group:Q8")


def _random_element(H, coeffs):
    return {i: H.field(c) for i, c in enumerate(coeffs[:H.n]) if c}


coeff_lists = st.lists(st.integers(-3, 3), min_size=9, max_size=9)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["sweedler", "taft:3", "group:S3"]), coeff_lists, coeff_lists, coeff_lists)
def test_associative_and_multiplicative(name, a, b, c):
    H = builtin(name)
    x, y, z = (_random_element(H, v) for v in (a, b, c))
    assert H.m(H.m(x, y), z) == H.m(x, H.m(y, z))
    assert H.eps(H.m(x, y)) == H.eps(x) * H.eps(y)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["sweedler", "taft:3", "group:S3"]), coeff_lists)
def test_antipode_convolution(name, a):
    H = builtin(name)
    x = _random_element(H, a)
    # S(x_1) x_2 = eps(x) 1
    out = {}
    for (j, k), c in H.delta(x).items():
        out = H.add(out, H.scale(H.m(H.S(H.basis(j), 1), H.basis(k)), c))
    out = {k: v for k, v in out.items() if v}
    assert out == H.scale(dict(H.unit), H.eps(x))
