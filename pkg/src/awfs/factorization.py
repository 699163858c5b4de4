"""The two functorial factorizations and their (co)monad structure maps.

(C, TF):  f = TF(f) ∘ C(f) through E(f), with E(f)_0 = X0 + Y0 and E(f)_1 the
          pullback of TF0×TF0 against (d1, d0) of Y.
(TC, F):  f = F(f) ∘ TC(f) through E(W f), where W(f): X -> Map(f) sends x to
          (x, f x, id) and F(f) projects a mapping-path object to its Y end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonCommutingSquare
from .internal import (InternalCategory, InternalFunctor, compose_functors, functor_from,
                       identity_functor, power_by_I, product_functor, product_internal,
                       pullback_internal)


def _memo(obj, key, build):
    cache = obj.__dict__.setdefault("_awfs_memo", {})
    if key not in cache:
        cache[key] = build()
    return cache[key]


def forget(obj):
    """Drop the factorizations and other constructions cached on obj."""
    obj.__dict__.pop("_awfs_memo", None)


@dataclass(frozen=True, eq=False)
class Square:
    """A commutative square  bottom ∘ f = g ∘ top  from f to g."""

    f: InternalFunctor
    g: InternalFunctor
    top: InternalFunctor
    bottom: InternalFunctor

    def commutes(self):
        return compose_functors(self.g, self.top) == compose_functors(self.bottom, self.f)

    def check(self):
        if not self.commutes():
            raise NonCommutingSquare("square does not commute")
        return self


def identity_square(f):
    return Square(f, f, identity_functor(f.src), identity_functor(f.tgt))


def paste(s2, s1):
    """Horizontal composite: s1: f -> g then s2: g -> h."""
    return Square(s1.f, s2.g, compose_functors(s2.top, s1.top), compose_functors(s2.bottom, s1.bottom))


# -- (C, TF) -------------------------------------------------------------------------------


class ECategory(InternalCategory):
    """E(f) for f: X -> Y."""

    def __init__(self, f):
        X, Y = f.src, f.tgt
        b = X.base
        self.f = f
        self.sum = cop = b.coproduct(X.ob, Y.ob)
        self.tf0 = cop.copair(f.f0, b.identity(Y.ob))
        self.EE = EE = b.product(cop.obj, cop.obj)
        YY = b.product(Y.ob, Y.ob)
        self.pb = pb = b.pullback(b.product_map(self.tf0, self.tf0, EE, YY), YY.pair(Y.d1, Y.d0))
        d1 = b.compose(EE.p1, pb.p1)
        d0 = b.compose(EE.p2, pb.p1)
        i = pb.mediate(EE.pair(b.identity(cop.obj), b.identity(cop.obj)), b.compose(Y.i, self.tf0))
        inv = None
        if Y.inv is not None:
            inv = b.tabulate(pb.obj, pb.obj, self._inv)

        def mul(lv, a, c):
            k1, y1 = pb.pairs[lv][a]
            k2, y2 = pb.pairs[lv][c]
            return pb.lookup(lv, EE.index(lv, EE.split(lv, k1)[0], EE.split(lv, k2)[1]), Y.mul(lv, y1, y2))

        name = f"E({X.name or '?'}→{Y.name or '?'})"
        super().__init__(cop.obj, pb.obj, d1, d0, i, mul, inv=inv, name=name)

    def _inv(self, lv, a):
        k, y = self.pb.pairs[lv][a]
        e1, e2 = self.EE.split(lv, k)
        return self.arrow(lv, e2, e1, self.f.tgt.inv.maps[lv][y])

    def left(self, lv, x):
        return x

    def right(self, lv, y):
        return self.sum.right(lv, y)

    def which(self, lv, e):
        return self.sum.which(lv, e)

    def arrow(self, lv, e1, e2, y):
        """The arrow e1 -> e2 lying over y (None when y has the wrong ends)."""
        return self.pb.lookup(lv, self.EE.index(lv, e1, e2), y)

    def decode(self, lv, a):
        k, y = self.pb.pairs[lv][a]
        e1, e2 = self.EE.split(lv, k)
        return e1, e2, y


@dataclass(frozen=True, eq=False)
class CofTrivFibFactorization:
    f: InternalFunctor
    E: ECategory
    C: InternalFunctor
    TF: InternalFunctor

    @property
    def eta(self):
        """Unit square f -> TF(f)."""
        return Square(self.f, self.TF, self.C, identity_functor(self.f.tgt))

    @property
    def epsilon(self):
        """Counit square C(f) -> f."""
        return Square(self.C, self.f, identity_functor(self.f.src), self.TF)


def factorize_cof_trivfib(f):
    def build():
        X, Y = f.src, f.tgt
        b = X.base
        E = ECategory(f)
        XX = b.product(X.ob, X.ob)
        C1 = E.pb.mediate(b.compose(b.product_map(E.sum.i1, E.sum.i1, XX, E.EE), XX.pair(X.d1, X.d0)), f.f1)
        C = InternalFunctor(X, E, E.sum.i1, C1)
        TF = InternalFunctor(E, Y, E.tf0, E.pb.p2)
        return CofTrivFibFactorization(f, E, C, TF)

    return _memo(f, "ctf", build)


def e_functorial(sq):
    """E(u, v): E(f) -> E(g) for a commutative square (u, v): f -> g."""
    sq.check()
    Ef = factorize_cof_trivfib(sq.f).E
    Eg = factorize_cof_trivfib(sq.g).E
    b = Ef.base
    u, v = sq.top, sq.bottom
    ob = Ef.sum.copair(b.compose(Eg.sum.i1, u.f0), b.compose(Eg.sum.i2, v.f0))
    ends = b.product_map(ob, ob, Ef.EE, Eg.EE)
    ar = Eg.pb.mediate(b.compose(ends, Ef.pb.p1), b.compose(v.f1, Ef.pb.p2))
    return InternalFunctor(Ef, Eg, ob, ar)


def tf_multiplication(f):
    """μ^f: E(TF f) -> E(f)."""
    A = factorize_cof_trivfib(f)
    B = factorize_cof_trivfib(A.TF)
    E, EE = A.E, B.E
    b = E.base
    ob = EE.sum.copair(b.identity(E.ob), E.sum.i2)
    ends = b.product_map(ob, ob, EE.EE, E.EE)
    ar = E.pb.mediate(b.compose(ends, EE.pb.p1), EE.pb.p2)
    return InternalFunctor(EE, E, ob, ar)


def c_comultiplication(f):
    """δ^f: E(f) -> E(C f); the X0 summand goes to the first X0 copy."""
    A = factorize_cof_trivfib(f)
    B = factorize_cof_trivfib(A.C)
    E, EC = A.E, B.E
    b = E.base
    ob = E.sum.copair(EC.sum.i1, b.compose(EC.sum.i2, E.sum.i2))
    ends = b.product_map(ob, ob, E.EE, EC.EE)
    ar = EC.pb.mediate(b.compose(ends, E.pb.p1), b.identity(E.ar))
    return InternalFunctor(E, EC, ob, ar)


# -- mapping path object and (TC, F) ---------------------------------------------------------


class MappingPath:
    """Map(f) = pullback of f×1: X×Y -> Y×Y against the endpoints Y^I -> Y×Y."""

    def __init__(self, f):
        X, Y = f.src, f.tgt
        b = X.base
        self.f = f
        self.YI = YI = power_by_I(Y)
        self.iso = YI.isoobj
        self.XY = XY = product_internal(X, Y)
        YY = product_internal(Y, Y)
        _, ends = YI.endpoints(YY)
        f1 = product_functor(f, identity_functor(Y), XY, YY)
        self.cat = M = pullback_internal(f1, ends, name=f"Map({X.name or '?'}→{Y.name or '?'})")
        self.pX = compose_functors(XY.p1, M.p1)
        self.pY = compose_functors(XY.p2, M.p1)
        self.pI = M.p2
        to_iso = self.iso.from_arrow
        w0 = M.P0.mediate(XY.P0.pair(b.identity(X.ob), f.f0),
                          b.tabulate(X.ob, YI.ob, lambda lv, x: to_iso(lv, Y.ident(lv, f.ob(lv, x)))))

        def sq(lv, a):
            s = to_iso(lv, Y.ident(lv, f.ob(lv, X.src(lv, a))))
            t = to_iso(lv, Y.ident(lv, f.ob(lv, X.tgt(lv, a))))
            return YI.square(lv, s, f.arr(lv, a), f.arr(lv, a), t)

        w1 = M.P1.mediate(XY.P1.pair(b.identity(X.ar), f.f1), b.tabulate(X.ar, YI.ar, sq))
        self.W = InternalFunctor(X, M, w0, w1)

    def obj(self, lv, x, y, alpha):
        """Object (x, y, α: f x -> y), α an arrow of Y."""
        M = self.cat
        k = self.iso.from_arrow(lv, alpha)
        return M.P0.lookup(lv, self.XY.P0.index(lv, x, y), k)

    def decode_obj(self, lv, m):
        """(x, y, α) with α as an arrow of Y."""
        xy, k = self.cat.P0.pairs[lv][m]
        x, y = self.XY.P0.split(lv, xy)
        return x, y, self.iso.to_arrow(lv, k)

    def arr(self, lv, a, b_, m1, m2):
        """Arrow m1 -> m2 with components a in X, b in Y (None if the square fails)."""
        M, YI = self.cat, self.YI
        _, _, al1 = self.decode_obj(lv, m1)
        _, _, al2 = self.decode_obj(lv, m2)
        frm = self.iso.from_arrow
        s = YI.square(lv, frm(lv, al1), self.f.arr(lv, a), b_, frm(lv, al2))
        if s is None:
            return None
        return M.P1.lookup(lv, self.XY.P1.index(lv, a, b_), s)

    def decode_arr(self, lv, k):
        ab, _ = self.cat.P1.pairs[lv][k]
        return self.XY.P1.split(lv, ab)


def mapping_path_object(f):
    return _memo(f, "map", lambda: MappingPath(f))


@dataclass(frozen=True, eq=False)
class TrivCofFibFactorization:
    f: InternalFunctor
    map: MappingPath
    W: InternalFunctor
    ctf: CofTrivFibFactorization  # factorization of W(f)
    TC: InternalFunctor
    F: InternalFunctor

    @property
    def E(self):
        return self.ctf.E

    @property
    def xi(self):
        """Unit square f -> F(f)."""
        return Square(self.f, self.F, self.TC, identity_functor(self.f.tgt))

    @property
    def sigma(self):
        """Counit square TC(f) -> f."""
        return Square(self.TC, self.f, identity_functor(self.f.src), self.F)


def factorize_trivcof_fib(f):
    def build():
        mp = mapping_path_object(f)
        ctf = factorize_cof_trivfib(mp.W)
        F = compose_functors(mp.pY, ctf.TF)
        return TrivCofFibFactorization(f, mp, mp.W, ctf, ctf.C, F)

    return _memo(f, "tcf", build)


def map_functorial(sq):
    """Map(u, v): Map(f) -> Map(g)."""
    sq.check()
    Mf, Mg = mapping_path_object(sq.f), mapping_path_object(sq.g)
    u, v = sq.top, sq.bottom

    def ob(lv, m):
        x, y, al = Mf.decode_obj(lv, m)
        return Mg.obj(lv, u.ob(lv, x), v.ob(lv, y), v.arr(lv, al))

    def ar(lv, k):
        a, b_ = Mf.decode_arr(lv, k)
        m1, m2 = Mf.cat.src(lv, k), Mf.cat.tgt(lv, k)
        return Mg.arr(lv, u.arr(lv, a), v.arr(lv, b_), ob(lv, m1), ob(lv, m2))
    return functor_from(Mf.cat, Mg.cat, ob, ar)


def w_square(sq):
    """The square (u, Map(u, v)): W(f) -> W(g)."""
    return Square(mapping_path_object(sq.f).W, mapping_path_object(sq.g).W, sq.top, map_functorial(sq))


def f_functorial(sq):
    """E(W(u, v)): E(W f) -> E(W g), the middle map of F on squares."""
    return e_functorial(w_square(sq))


def f_multiplication(f):
    """κ^f: E(W F f) -> E(W f)."""
    A = factorize_trivcof_fib(f)
    B = factorize_trivcof_fib(A.F)
    E1, M1 = A.E, A.map
    E2, M2 = B.E, B.map
    Y = f.tgt

    def alpha_of(lv, e):
        """(x, α) for an object e of E(W f): its X-part and the iso f x -> F(f) e."""
        side, v = E1.which(lv, e)
        if side == "l":
            return v, Y.ident(lv, f.ob(lv, v))
        x, _, al = M1.decode_obj(lv, v)
        return x, al

    def ob(lv, o):
        side, v = E2.which(lv, o)
        if side == "l":
            return v
        e, y, gamma = M2.decode_obj(lv, v)
        x, al = alpha_of(lv, e)
        return E1.right(lv, M1.obj(lv, x, y, Y.mul(lv, al, gamma)))

    def ar(lv, k):
        o1, o2, mm = E2.decode(lv, k)
        a1, b1 = M2.decode_arr(lv, mm)
        _, _, m1 = E1.decode(lv, a1)
        a, _ = M1.decode_arr(lv, m1)
        e1, e2 = ob(lv, o1), ob(lv, o2)
        t1 = E1.tf0.maps[lv][e1]
        t2 = E1.tf0.maps[lv][e2]
        return E1.arrow(lv, e1, e2, M1.arr(lv, a, b1, t1, t2))

    return functor_from(E2, E1, ob, ar)


def tc_structure(f):
    """The TC-coalgebra carried by TC(f), via its algebraic trivial cofibration."""
    from .algebras import algtrivcof_to_tc_coalg, trivcof_structure_of

    return _memo(f, "tcs", lambda: algtrivcof_to_tc_coalg(trivcof_structure_of(f)))


def tc_comultiplication(f):
    """ρ_f's middle map E(W f) -> E(W TC f), read off tc_structure."""
    return tc_structure(f).alpha


def f_free_algebra(f):
    """The free F-algebra (F f, κ^f)."""
    from .algebras import FAlgebra

    A = factorize_trivcof_fib(f)
    return FAlgebra(A.F, f_multiplication(f))


def tf_free_algebra(f):
    from .algebras import TFAlgebra

    A = factorize_cof_trivfib(f)
    return TFAlgebra(A.TF, tf_multiplication(f))


def c_cofree_coalgebra(f):
    from .algebras import CCoalgebra

    A = factorize_cof_trivfib(f)
    return CCoalgebra(A.C, c_comultiplication(f))



# -- (co)monad laws --------------------------------------------------------------------------


def _is_id(F):
    return F.f0.is_identity() and F.f1.is_identity()


def _same(F, G):
    return F.f0.maps == G.f0.maps and F.f1.maps == G.f1.maps


def tf_monad_laws(f):
    A = factorize_cof_trivfib(f)
    mu = tf_multiplication(f)
    B = factorize_cof_trivfib(A.TF)
    mu2 = tf_multiplication(A.TF)
    tf_mu = e_functorial(Square(B.TF, A.TF, mu, identity_functor(f.tgt)))
    return {
        "left unit": _is_id(compose_functors(mu, B.C)),
        "right unit": _is_id(compose_functors(mu, e_functorial(A.eta))),
        "associativity": _same(compose_functors(mu, mu2), compose_functors(mu, tf_mu)),
        "algebra square": _same(compose_functors(A.TF, mu), B.TF),
    }


def c_comonad_laws(f):
    A = factorize_cof_trivfib(f)
    delta = c_comultiplication(f)
    B = factorize_cof_trivfib(A.C)
    delta2 = c_comultiplication(A.C)
    c_delta = e_functorial(Square(A.C, B.C, identity_functor(f.src), delta))
    return {
        "left counit": _is_id(compose_functors(B.TF, delta)),
        "right counit": _is_id(compose_functors(e_functorial(A.epsilon), delta)),
        "coassociativity": _same(compose_functors(delta2, delta), compose_functors(c_delta, delta)),
        "coalgebra square": _same(compose_functors(delta, A.C), B.C),
    }


def f_monad_laws(f, associativity=True):
    A = factorize_trivcof_fib(f)
    kappa = f_multiplication(f)
    B = factorize_trivcof_fib(A.F)
    out = {
        "left unit": _is_id(compose_functors(kappa, B.TC)),
        "right unit": _is_id(compose_functors(kappa, f_functorial(A.xi))),
        "algebra square": _same(compose_functors(A.F, kappa), B.F),
    }
    if associativity:
        kappa2 = f_multiplication(A.F)
        f_kappa = f_functorial(Square(factorize_trivcof_fib(A.F).F, A.F, kappa, identity_functor(f.tgt)))
        out["associativity"] = _same(compose_functors(kappa, kappa2), compose_functors(kappa, f_kappa))
    return out


def tc_comonad_laws(f, coassociativity=True):
    """Laws for the comultiplication realised by tc_structure."""
    A = factorize_trivcof_fib(f)
    rho = tc_comultiplication(f)
    B = factorize_trivcof_fib(A.TC)
    out = {
        "left counit": _is_id(compose_functors(B.F, rho)),
        "right counit": _is_id(compose_functors(f_functorial(A.sigma), rho)),
        "coalgebra square": _same(compose_functors(rho, A.TC), B.TC),
    }
    if coassociativity:
        rho2 = tc_comultiplication(A.TC)
        tc_rho = f_functorial(Square(A.TC, B.TC, identity_functor(f.src), rho))
        out["coassociativity"] = _same(compose_functors(rho2, rho), compose_functors(tc_rho, rho))
    return out
