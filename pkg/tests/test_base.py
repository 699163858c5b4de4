from itertools import product

import pytest
from hypothesis import given, strategies as st

from awfs.base import is_natural, natural_maps
from awfs.corpus import INVOLUTION, SETS, WALKING_ARROW, involution_quotient, non_complemented_mono
from awfs.errors import ConeMismatch, DomainMismatch

from conftest import arrow_presheaves, finite_sets, involution_presheaves, maps_between

S = SETS


def obj(*labels):
    return S.make_object(list(labels))


def fn(A, B, table):
    return S.make_morphism(A, B, table)


def all_maps(A, B):
    """Every set map A -> B, by itertools (finite-sets only)."""
    for row in product(range(B.sizes[0]), repeat=A.sizes[0]):
        yield S.tabulate(A, B, lambda lv, i: row[i])


# -- identity and composition ---------------------------------------------------------


def test_identity():
    A = obj("a", "b")
    assert fn(A, A, {"a": "a", "b": "b"}) == S.identity(A)
    E = obj()
    assert S.identity(E).maps == ((),)


def test_presheaf_identity_is_levelwise():
    A = WALKING_ARROW.make_object([["p", "q"], ["r"]], {"u": {"r": "q"}})
    idA = WALKING_ARROW.identity(A)
    assert idA.maps == ((0, 1), (0,)) and is_natural(idA)


def test_compose():
    A, B, X = obj("a"), obj("0", "1"), obj("x")
    f = fn(A, B, {"a": "0"})
    g = fn(B, X, {"0": "x", "1": "x"})
    assert S.compose(g, f).table() == {"a": "x"}
    assert S.compose(g, S.identity(B)) == g
    with pytest.raises(DomainMismatch):
        S.compose(f, g)


# -- limits ---------------------------------------------------------------------------


def test_product_labels_and_pairing():
    A = obj("a", "b")
    P = S.product(A, A)
    assert P.obj.labels[0] == ("(a,a)", "(a,b)", "(b,a)", "(b,b)")
    assert S.product(obj(), A).obj.sizes == (0,)
    Z = obj("z0", "z1", "z2")
    B = obj("0", "1")
    f = fn(Z, A, {"z0": "a", "z1": "b", "z2": "a"})
    g = fn(Z, B, {"z0": "1", "z1": "1", "z2": "0"})
    PB = S.product(A, B)
    h = PB.pair(f, g)
    assert S.compose(PB.p1, h) == f and S.compose(PB.p2, h) == g


def test_pullback_examples():
    A, B, C = obj("a", "b"), obj("c"), obj("0", "1")
    f = fn(A, C, {"a": "0", "b": "1"})
    g = fn(B, C, {"c": "0"})
    assert S.pullback(f, g).obj.labels[0] == ("(a,c)",)
    s = fn(A, obj("*"), {"a": "*", "b": "*"})
    assert S.pullback(s, s).obj.sizes == (4,)
    pb = S.pullback(S.identity(C), f)
    assert pb.obj.sizes == A.sizes and S.invert(pb.p2) is not None


def test_mediate_rejects_non_commuting_cone():
    A, C = obj("a", "b"), obj("0", "1")
    f = fn(A, C, {"a": "0", "b": "1"})
    pb = S.pullback(f, f)
    with pytest.raises(ConeMismatch):
        pb.mediate(fn(A, A, {"a": "a", "b": "a"}), S.identity(A))


def test_coproduct_labels_and_copair():
    A, B = obj("a"), obj("b")
    cop = S.coproduct(A, B)
    assert cop.obj.labels[0] == ("l/a", "r/b")
    X = obj("x", "y")
    f, g = fn(A, X, {"a": "y"}), fn(B, X, {"b": "y"})
    assert S.compose(cop.copair(f, g), cop.i1) == f
    assert S.compose(cop.copair(f, g), cop.i2) == g


def test_presheaf_coproduct_is_natural():
    W = WALKING_ARROW
    A = W.make_object([["p"], ["r"]], {"u": {"r": "p"}})
    B = W.make_object([["q", "s"], []], {"u": {}})
    cop = W.coproduct(A, B)
    assert cop.obj.sizes == (3, 1)
    assert cop.obj.restr[[k for k, c, d in W.proper][0]] == (0,)
    assert is_natural(cop.i1) and is_natural(cop.i2)


def test_coequalizer_and_pushout():
    A, B = obj("a"), obj("0", "1")
    f = fn(A, B, {"a": "0"})
    q = S.coequalizer(f, f)
    assert q.obj.labels == B.labels and q.q.is_identity()
    g = fn(A, B, {"a": "1"})
    assert S.coequalizer(f, g).obj.sizes == (1,)
    E, P = obj(), obj("*")
    e = fn(E, P, {})
    assert S.pushout(e, e).obj.sizes == (2,)


def test_coequalizer_labels_are_least_representatives():
    A, B = obj("a"), obj("z", "m", "k")
    f, g = fn(A, B, {"a": "z"}), fn(A, B, {"a": "k"})
    assert S.coequalizer(f, g).obj.labels[0] == ("k", "m")


def test_exponential():
    A, B = obj("a", "b"), obj("0", "1")
    ex = S.exponential(A, B)
    assert ex.obj.sizes == (4,)
    assert S.exponential(obj(), B).obj.sizes == (1,)
    for h in all_maps(S.product(A, A).obj, B):
        c = ex.curry(h, A)
        back = S.compose(ex.eval, S.product_map(c, S.identity(A), S.product(A, A), ex.product))
        assert back == h


# -- split epis and complemented inclusions ---------------------------------------------


def test_split_epi_examples():
    A, P = obj("a", "b"), obj("*")
    fold = fn(A, P, {"a": "*", "b": "*"})
    s = S.is_split_epi(fold)
    assert s.table() == {"*": "a"}
    inj = fn(obj("a"), A, {"a": "a"})
    assert S.is_split_epi(inj) is None


def test_involution_quotient_has_no_natural_section():
    F = involution_quotient()
    f0 = F.f0
    # levelwise surjective, but no natural section
    assert all(set(row) == set(range(n)) for row, n in zip(f0.maps, f0.cod.sizes))
    assert INVOLUTION.is_split_epi(f0) is None
    # a levelwise section exists, it just is not natural
    s = [tuple(0 for _ in range(n)) for n in f0.cod.sizes]
    assert not is_natural(type(f0)(f0.cod, f0.dom, tuple(s)))


def test_complemented_decomposition_examples():
    A, B = obj("a"), obj("a", "b")
    d = S.complemented_decomposition(fn(A, B, {"a": "a"}))
    assert d.complement.labels[0] == ("b",) and d.violations() == []
    assert S.complemented_decomposition(fn(B, A, {"a": "a", "b": "a"})) is None
    F = non_complemented_mono()
    assert WALKING_ARROW.complemented_decomposition(F.f0) is None


def test_equal_morphisms():
    A, P = obj("a", "b"), obj("*")
    s1, s2 = fn(P, A, {"*": "a"}), fn(P, A, {"*": "b"})
    assert S.equal_morphisms(s1, s1)
    assert not S.equal_morphisms(s1, s2)
    with pytest.raises(DomainMismatch):
        S.equal_morphisms(s1, S.identity(A))


def test_make_morphism_rejects_non_natural():
    W = WALKING_ARROW
    A = W.make_object([["p", "q"], ["r"]], {"u": {"r": "p"}})
    assert W.make_morphism(A, A, [{"p": "p", "q": "q"}, {"r": "r"}]).is_identity()
    with pytest.raises(DomainMismatch, match="naturality"):
        W.make_morphism(A, A, [{"p": "q", "q": "q"}, {"r": "r"}])


# -- properties -------------------------------------------------------------------------


@st.composite
def cospans(draw):
    A, B, C = draw(finite_sets(3)), draw(finite_sets(3)), draw(finite_sets(3).filter(lambda X: X.sizes[0] > 0))
    return draw(maps_between(A, C)), draw(maps_between(B, C))


@given(cospans(), finite_sets(2))
def test_pullback_universal_property(fg, Z):
    f, g = fg
    pb = S.pullback(f, g)
    cones = [(h, k) for h in all_maps(Z, f.dom) for k in all_maps(Z, g.dom)
             if S.compose(f, h) == S.compose(g, k)]
    for h, k in cones:
        m = pb.mediate(h, k)
        assert S.compose(pb.p1, m) == h and S.compose(pb.p2, m) == k
        unique = [u for u in all_maps(Z, pb.obj)
                  if S.compose(pb.p1, u) == h and S.compose(pb.p2, u) == k]
        assert unique == [m]


@given(finite_sets(3), finite_sets(3), st.data())
def test_extensivity(A, B, data):
    cop = S.coproduct(A, B)
    Z = data.draw(finite_sets(4))
    if cop.obj.sizes[0] == 0 and Z.sizes[0]:
        return
    f = data.draw(maps_between(Z, cop.obj))
    left, right = S.pullback(f, cop.i1), S.pullback(f, cop.i2)
    whole = S.coproduct(left.obj, right.obj)
    comparison = whole.copair(left.p1, right.p1)
    assert S.invert(comparison) is not None


@given(finite_sets(3), finite_sets(2), finite_sets(2))
def test_distributivity(A, B, C):
    BC = S.coproduct(B, C)
    lhs = S.product(A, BC.obj)
    AB, AC = S.product(A, B), S.product(A, C)
    rhs = S.coproduct(AB.obj, AC.obj)
    canon = rhs.copair(S.product_map(S.identity(A), BC.i1, AB, lhs),
                       S.product_map(S.identity(A), BC.i2, AC, lhs))
    assert S.invert(canon) is not None


@given(finite_sets(4), finite_sets(3), st.data())
def test_split_epi_iff_surjective(A, B, data):
    if B.sizes[0] == 0 and A.sizes[0]:
        return
    f = data.draw(maps_between(A, B))
    s = S.is_split_epi(f)
    surjective = set(f.maps[0]) == set(range(B.sizes[0]))
    assert (s is not None) == surjective
    if s is not None:
        assert S.compose(f, s).is_identity()


@given(finite_sets(3), finite_sets(4), st.data())
def test_complemented_decomposition_sound(A, B, data):
    if B.sizes[0] == 0 and A.sizes[0]:
        return
    f = data.draw(maps_between(A, B))
    d = S.complemented_decomposition(f)
    assert (d is not None) == (len(set(f.maps[0])) == A.sizes[0])
    if d is not None:
        assert d.violations() == []


@given(arrow_presheaves(), arrow_presheaves())
def test_presheaf_products_and_coproducts_natural(A, B):
    W = WALKING_ARROW
    P = W.product(A, B)
    C = W.coproduct(A, B)
    for m in (P.p1, P.p2, C.i1, C.i2):
        assert is_natural(m)


@given(arrow_presheaves(2), arrow_presheaves(2))
def test_presheaf_split_epi_sections_are_natural(A, B):
    W = WALKING_ARROW
    for f in natural_maps(A, B):
        s = W.is_split_epi(f)
        if s is not None:
            assert is_natural(s) and W.compose(f, s).is_identity()


@given(involution_presheaves(), involution_presheaves(2))
def test_involution_exponential_evaluates_naturally(A, B):
    ex = INVOLUTION.exponential(A, B)
    assert is_natural(ex.eval)
    for lv, row in enumerate(ex.obj.restr):
        assert len(row) == ex.obj.sizes[0]


@given(arrow_presheaves(2), arrow_presheaves(2))
def test_presheaf_exponential_curry_eval(A, B):
    W = WALKING_ARROW
    ex = W.exponential(A, B)
    P = W.product(A, A)
    for h in natural_maps(P.obj, B):
        c = ex.curry(h, A)
        assert is_natural(c)
        back = W.compose(ex.eval, W.product_map(c, W.identity(A), P, ex.product))
        assert back == h
        break


def _brute_natural_count(W, D, B):
    """Natural maps D -> B by enumerating every levelwise assignment."""
    n = 0
    spaces = [product(range(B.sizes[lv]), repeat=D.sizes[lv]) for lv in W.levels]
    for rows in product(*[list(sp) for sp in spaces]):
        ok = all(rows[c][D.restr[k][x]] == B.restr[k][rows[d][x]]
                 for k, c, d in W.proper for x in range(D.sizes[d]))
        n += ok
    return n


def test_presheaf_exponential_counts():
    W = WALKING_ARROW
    A = W.make_object([["p", "q"], ["r"]], {"u": {"r": "p"}})
    B = W.make_object([["0", "1"], ["2"]], {"u": {"2": "0"}})
    ex = W.exponential(A, B)
    expect = tuple(_brute_natural_count(W, W.product(W.representable(c), A).obj, B) for c in W.levels)
    assert ex.obj.sizes == expect == (4, 2)
