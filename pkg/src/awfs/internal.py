"""Internal categories, groupoids, functors and natural isomorphisms.

Conventions: d1 is the domain map, d0 the codomain map.  The composable-pair
object is the pullback of (d0, d1); its element (f, g) stands for g∘f, and
``X.mul(lv, f, g)`` returns that composite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .base import Base, FiniteCategory, Mor, morphism_violations
from .errors import BaseMismatch, DomainMismatch, InvalidCategory, UnsupportedShape


class InternalCategory:
    def __init__(self, ob, ar, d1, d0, i, mul, inv=None, name=None):
        self.ob, self.ar = ob, ar
        self.d1, self.d0, self.i = d1, d0, i
        self._mul = mul
        self._mul_cache = [{} for _ in ob.base.levels]
        self.inv = inv
        self.name = name

    @property
    def base(self):
        return self.ob.base

    @property
    def is_groupoid(self):
        return self.inv is not None

    def __repr__(self):
        return f"InternalCategory({self.name or ''} ob={self.ob.sizes} ar={self.ar.sizes})"

    def mul(self, lv, f, g):
        """g∘f for a composable pair (cod f = dom g)."""
        cache = self._mul_cache[lv]
        r = cache.get((f, g))
        if r is None:
            r = cache[(f, g)] = self._mul(lv, f, g)
        return r

    @cached_property
    def pairs(self):
        return self.base.pullback(self.d0, self.d1)

    @cached_property
    def m(self):
        P = self.pairs
        return self.base.tabulate(P.obj, self.ar, lambda lv, k: self._mul(lv, *P.pairs[lv][k]))

    @cached_property
    def _homs(self):
        out = []
        for lv in self.base.levels:
            h = {}
            for a, (s, t) in enumerate(zip(self.d1.maps[lv], self.d0.maps[lv])):
                h.setdefault((s, t), []).append(a)
            out.append(h)
        return out

    def hom(self, lv, x, y):
        return self._homs[lv].get((x, y), [])

    @cached_property
    def _outs(self):
        out = []
        for lv in self.base.levels:
            o = [[] for _ in range(self.ob.sizes[lv])]
            for a, s in enumerate(self.d1.maps[lv]):
                o[s].append(a)
            out.append(o)
        return out

    def out_arrows(self, lv, x):
        return self._outs[lv][x]

    def ident(self, lv, x):
        return self.i.maps[lv][x]

    def src(self, lv, a):
        return self.d1.maps[lv][a]

    def tgt(self, lv, a):
        return self.d0.maps[lv][a]

    @cached_property
    def _inverses(self):
        """Per level: arrow -> its inverse (only for invertible arrows)."""
        out = []
        for lv in self.base.levels:
            if self.inv is not None:
                out.append(dict(enumerate(self.inv.maps[lv])))
                continue
            found = {}
            labels = self.ar.labels[lv]
            for a in range(self.ar.sizes[lv]):
                x, y = self.src(lv, a), self.tgt(lv, a)
                cands = [b for b in self.hom(lv, y, x)
                         if self._mul(lv, a, b) == self.ident(lv, x) and self._mul(lv, b, a) == self.ident(lv, y)]
                if cands:
                    found[a] = min(cands, key=lambda b: labels[b])
            out.append(found)
        return out

    def inverse(self, lv, a):
        return self._inverses[lv].get(a)

    @cached_property
    def iso(self):
        return iso_object(self)


class IsoObject:
    """Iso(X)_1 as a subobject of X1 with the chosen inverse."""

    def __init__(self, X):
        base = X.base
        if X.inv is not None:
            self.obj = X.ar
            self.incl = base.identity(X.ar)
            self.inv = X.inv
            self._pos = None
        else:
            invs = X._inverses
            sub = base.subobject(X.ar, lambda lv, a: a in invs[lv])
            self.obj = sub.obj
            self.incl = sub.incl
            self._pos = sub.pos
            self.inv = base.tabulate(sub.obj, sub.obj, lambda lv, k: sub.pos[lv][invs[lv][sub.kept[lv][k]]])

    def to_arrow(self, lv, k):
        return self.incl.maps[lv][k]

    def from_arrow(self, lv, a):
        """Index in Iso(X)_1 of the arrow a, or None when a is not invertible."""
        if self._pos is None:
            return a
        return self._pos[lv].get(a)


def iso_object(X):
    return IsoObject(X)


@dataclass(frozen=True, eq=False)
class InternalFunctor:
    src: InternalCategory
    tgt: InternalCategory
    f0: Mor
    f1: Mor

    def __eq__(self, other):
        if not isinstance(other, InternalFunctor):
            return NotImplemented
        return (self.f0.maps == other.f0.maps and self.f1.maps == other.f1.maps
                and self.f0.dom == other.f0.dom and self.f0.cod == other.f0.cod
                and self.f1.dom == other.f1.dom and self.f1.cod == other.f1.cod)

    def __hash__(self):
        return hash((self.f0.maps, self.f1.maps))

    def __repr__(self):
        return f"InternalFunctor({self.src.name or '?'} -> {self.tgt.name or '?'})"

    def ob(self, lv, x):
        return self.f0.maps[lv][x]

    def arr(self, lv, a):
        return self.f1.maps[lv][a]


def identity_functor(X):
    b = X.base
    return InternalFunctor(X, X, b.identity(X.ob), b.identity(X.ar))


def compose_functors(g, f):
    b = f.src.base
    return InternalFunctor(f.src, g.tgt, b.compose(g.f0, f.f0), b.compose(g.f1, f.f1))


def functor_from(X, Y, fn0, fn1):
    b = X.base
    return InternalFunctor(X, Y, b.tabulate(X.ob, Y.ob, fn0), b.tabulate(X.ar, Y.ar, fn1))


def functor_violations(F):
    X, Y = F.src, F.tgt
    out = []
    if F.f0.dom != X.ob or F.f0.cod != Y.ob or F.f1.dom != X.ar or F.f1.cod != Y.ar:
        return ["functor: carriers do not match"]
    out += ["f0: " + v for v in morphism_violations(F.f0)]
    out += ["f1: " + v for v in morphism_violations(F.f1)]
    if out:
        return out
    for lv in X.base.levels:
        f0, f1 = F.f0.maps[lv], F.f1.maps[lv]
        for a in range(X.ar.sizes[lv]):
            if f0[X.src(lv, a)] != Y.src(lv, f1[a]) or f0[X.tgt(lv, a)] != Y.tgt(lv, f1[a]):
                out.append(f"functor: domain/codomain not preserved at {X.ar.labels[lv][a]}")
        for x in range(X.ob.sizes[lv]):
            if f1[X.ident(lv, x)] != Y.ident(lv, f0[x]):
                out.append(f"functor: identity not preserved at {X.ob.labels[lv][x]}")
        if out:
            return out
        for a, b in X.pairs.pairs[lv]:
            if f1[X.mul(lv, a, b)] != Y.mul(lv, f1[a], f1[b]):
                out.append(f"functor: composition not preserved at ({X.ar.labels[lv][a]},{X.ar.labels[lv][b]})")
    return out


# -- validation ---------------------------------------------------------------------------


def validate_internal_category(X):
    """List of violated laws (empty when X is an internal category/groupoid)."""
    out = []
    for name in ("d1", "d0", "i"):
        out += [f"{name}: {v}" for v in morphism_violations(getattr(X, name))]
    if X.inv is not None:
        out += [f"inv: {v}" for v in morphism_violations(X.inv)]
    if out:
        return out
    base = X.base
    arl = X.ar.labels
    for lv in base.levels:
        for x in range(X.ob.sizes[lv]):
            e = X.ident(lv, x)
            if X.src(lv, e) != x or X.tgt(lv, e) != x:
                out.append(f"identity: i({X.ob.labels[lv][x]}) has wrong endpoints")
    if out:
        return out
    comp = {}
    for lv in base.levels:
        for a, b in X.pairs.pairs[lv]:
            try:
                c = X.mul(lv, a, b)
            except (KeyError, IndexError, TypeError):
                c = None
            if c is None or not 0 <= c < X.ar.sizes[lv]:
                out.append(f"composition: missing entry for ({arl[lv][a]},{arl[lv][b]})")
                continue
            comp[(lv, a, b)] = c
            if X.src(lv, c) != X.src(lv, a) or X.tgt(lv, c) != X.tgt(lv, b):
                out.append(f"domain/codomain: {arl[lv][b]}∘{arl[lv][a]} has wrong endpoints")
    if out:
        return out
    for lv in base.levels:
        for a in range(X.ar.sizes[lv]):
            if comp[(lv, X.ident(lv, X.src(lv, a)), a)] != a or comp[(lv, a, X.ident(lv, X.tgt(lv, a)))] != a:
                out.append(f"unit: fails at {arl[lv][a]}")
        for a, b in X.pairs.pairs[lv]:
            ab = comp[(lv, a, b)]
            for c in X.out_arrows(lv, X.tgt(lv, b)):
                if comp[(lv, ab, c)] != comp[(lv, a, comp[(lv, b, c)])]:
                    out.append(f"associativity: fails at ({arl[lv][a]},{arl[lv][b]},{arl[lv][c]})")
        if X.inv is not None:
            for a in range(X.ar.sizes[lv]):
                b = X.inv.maps[lv][a]
                if X.src(lv, b) != X.tgt(lv, a) or X.tgt(lv, b) != X.src(lv, a) or \
                        comp[(lv, a, b)] != X.ident(lv, X.src(lv, a)) or \
                        comp[(lv, b, a)] != X.ident(lv, X.tgt(lv, a)):
                    out.append(f"inverse: fails at {arl[lv][a]}")
    if out:
        return out
    if morphism_violations(X.m):
        out.append("naturality: composition")
    return out


def check_category(X):
    v = validate_internal_category(X)
    if v:
        raise InvalidCategory("; ".join(v))
    return X


# -- constructions -------------------------------------------------------------------------


def from_tables(base, ob, ar, d1, d0, i, comp, inv=None, name=None):
    """Internal category from base carriers and per-level composition dicts
    {(f, g): g∘f} keyed by element positions."""
    comp = [dict(c) for c in comp]

    def mul(lv, f, g):
        return comp[lv][(f, g)]

    return InternalCategory(ob, ar, d1, d0, i, mul, inv=inv, name=name)


def underline(C: FiniteCategory, base: Base, name=None):
    """The constant internal category on a finite category C."""
    v = C.violations()
    if v:
        raise InvalidCategory("; ".join(v))
    ob = base.copower(C.objects)
    ar = base.copower(C.arrows)
    op, ap = C.obj_pos, C.arr_pos
    d1 = base.tabulate(ar, ob, lambda lv, a: op[C.src[C.arrows[a]]])
    d0 = base.tabulate(ar, ob, lambda lv, a: op[C.tgt[C.arrows[a]]])
    i = base.tabulate(ob, ar, lambda lv, x: ap[C.identities[C.objects[x]]])
    table = {(ap[f], ap[g]): ap[h] for (g, f), h in C.comp.items()}
    inv = None
    invs = {}
    for a in C.arrows:
        for b in C.arrows:
            if C.src[b] == C.tgt[a] and C.tgt[b] == C.src[a] and \
                    C.comp[(b, a)] == C.identities[C.src[a]] and C.comp[(a, b)] == C.identities[C.tgt[a]]:
                invs[ap[a]] = ap[b]
                break
    if len(invs) == len(C.arrows):
        inv = base.tabulate(ar, ar, lambda lv, a: invs[a])

    def mul(lv, f, g):
        return table[(f, g)]

    return InternalCategory(ob, ar, d1, d0, i, mul, inv=inv, name=name or C.name)


def discrete(Z, name=None):
    """The discrete internal category on a base object."""
    b = Z.base
    idm = b.identity(Z)
    return InternalCategory(Z, Z, idm, idm, idm, lambda lv, f, g: f, inv=idm, name=name)


class ProductCategory(InternalCategory):
    def __init__(self, X, Y, name=None):
        if X.base != Y.base:
            raise BaseMismatch("product_internal: different bases")
        b = X.base
        self.X, self.Y = X, Y
        self.P0 = P0 = b.product(X.ob, Y.ob)
        self.P1 = P1 = b.product(X.ar, Y.ar)
        d1 = b.product_map(X.d1, Y.d1, P1, P0)
        d0 = b.product_map(X.d0, Y.d0, P1, P0)
        i = b.product_map(X.i, Y.i, P0, P1)
        inv = b.product_map(X.inv, Y.inv, P1, P1) if X.inv is not None and Y.inv is not None else None

        def mul(lv, f, g):
            a, b_ = P1.split(lv, f)
            c, d = P1.split(lv, g)
            return P1.index(lv, X.mul(lv, a, c), Y.mul(lv, b_, d))

        super().__init__(P0.obj, P1.obj, d1, d0, i, mul, inv=inv,
                         name=name or f"{X.name}×{Y.name}")
        self.p1 = InternalFunctor(self, X, P0.p1, P1.p1)
        self.p2 = InternalFunctor(self, Y, P0.p2, P1.p2)

    def pair(self, F, G):
        return InternalFunctor(F.src, self, self.P0.pair(F.f0, G.f0), self.P1.pair(F.f1, G.f1))


def product_internal(X, Y, name=None):
    return ProductCategory(X, Y, name=name)


def product_functor(F, G, dom=None, cod=None):
    dom = dom or product_internal(F.src, G.src)
    cod = cod or product_internal(F.tgt, G.tgt)
    return cod.pair(compose_functors(F, dom.p1), compose_functors(G, dom.p2))



class CoproductCategory(InternalCategory):
    def __init__(self, X, Y, name=None):
        if X.base != Y.base:
            raise BaseMismatch("coproduct_internal: different bases")
        b = X.base
        self.X, self.Y = X, Y
        self.C0 = C0 = b.coproduct(X.ob, Y.ob)
        self.C1 = C1 = b.coproduct(X.ar, Y.ar)
        d1 = b.coproduct_map(X.d1, Y.d1, C1, C0)
        d0 = b.coproduct_map(X.d0, Y.d0, C1, C0)
        i = b.coproduct_map(X.i, Y.i, C0, C1)
        inv = b.coproduct_map(X.inv, Y.inv, C1, C1) if X.inv is not None and Y.inv is not None else None

        def mul(lv, f, g):
            (s, a), (_, c) = C1.which(lv, f), C1.which(lv, g)
            if s == "l":
                return C1.left(lv, X.mul(lv, a, c))
            return C1.right(lv, Y.mul(lv, a, c))

        super().__init__(C0.obj, C1.obj, d1, d0, i, mul, inv=inv,
                         name=name or f"{X.name}+{Y.name}")
        self.i1 = InternalFunctor(X, self, C0.i1, C1.i1)
        self.i2 = InternalFunctor(Y, self, C0.i2, C1.i2)

    def copair(self, F, G):
        return InternalFunctor(self, F.tgt, self.C0.copair(F.f0, G.f0), self.C1.copair(F.f1, G.f1))


def coproduct_internal(X, Y, name=None):
    return CoproductCategory(X, Y, name=name)


class PullbackCategory(InternalCategory):
    """Pullback of internal functors F: X -> Z and G: Y -> Z."""

    def __init__(self, F, G, name=None):
        if F.tgt is not G.tgt and F.f0.cod != G.f0.cod:
            raise DomainMismatch("pullback_internal: functors have different targets")
        b = F.src.base
        X, Y = F.src, G.src
        self.F, self.G = F, G
        self.P0 = P0 = b.pullback(F.f0, G.f0)
        self.P1 = P1 = b.pullback(F.f1, G.f1)
        d1 = P0.mediate(b.compose(X.d1, P1.p1), b.compose(Y.d1, P1.p2))
        d0 = P0.mediate(b.compose(X.d0, P1.p1), b.compose(Y.d0, P1.p2))
        i = P1.mediate(b.compose(X.i, P0.p1), b.compose(Y.i, P0.p2))
        inv = None
        if X.inv is not None and Y.inv is not None:
            inv = P1.mediate(b.compose(X.inv, P1.p1), b.compose(Y.inv, P1.p2))

        def mul(lv, f, g):
            a, b_ = P1.pairs[lv][f]
            c, d = P1.pairs[lv][g]
            return P1.lookup(lv, X.mul(lv, a, c), Y.mul(lv, b_, d))

        super().__init__(P0.obj, P1.obj, d1, d0, i, mul, inv=inv, name=name)
        self.p1 = InternalFunctor(self, X, P0.p1, P1.p1)
        self.p2 = InternalFunctor(self, Y, P0.p2, P1.p2)

    def mediate(self, H, K):
        return InternalFunctor(H.src, self, self.P0.mediate(H.f0, K.f0), self.P1.mediate(H.f1, K.f1))


def pullback_internal(F, G, name=None):
    return PullbackCategory(F, G, name=name)


class PowerI(InternalCategory):
    """X^I: objects Iso(X)_1, arrows commuting squares (α, u, v, α') with
    α'∘u = v∘α.  Since α is invertible, v is determined by (α, u, α')."""

    def __init__(self, X, name=None):
        b = X.base
        self.X = X
        iso = X.iso
        self.isoobj = iso
        to_a = iso.to_arrow
        squares, pos = [], []
        for lv in b.levels:
            by_src = {}
            for al in range(iso.obj.sizes[lv]):
                by_src.setdefault(X.src(lv, to_a(lv, al)), []).append(al)
            rows = []
            for al in range(iso.obj.sizes[lv]):
                a = to_a(lv, al)
                back = X.inverse(lv, a)
                for u in X.out_arrows(lv, X.src(lv, a)):
                    for al2 in by_src.get(X.tgt(lv, u), ()):
                        v = X.mul(lv, X.mul(lv, back, u), to_a(lv, al2))
                        rows.append((al, u, v, al2))
            rows.sort()
            squares.append(rows)
            pos.append({r: n for n, r in enumerate(rows)})
        self._squares, self._pos = squares, pos
        restr = []
        for k, c, d in b.ends:
            ri, ra = iso.obj.restr[k], X.ar.restr[k]
            restr.append(tuple(pos[c][(ri[al], ra[u], ra[v], ri[al2])] for al, u, v, al2 in squares[d]))

        def labeler():
            il, al_ = iso.obj.labels, X.ar.labels
            return [[f"(({il[lv][p]},{al_[lv][u]}),({al_[lv][v]},{il[lv][q]}))" for p, u, v, q in squares[lv]]
                    for lv in b.levels]

        carrier = b.raw([len(r) for r in squares], restr, labeler=labeler)
        d1 = b.tabulate(carrier, iso.obj, lambda lv, s: squares[lv][s][0])
        d0 = b.tabulate(carrier, iso.obj, lambda lv, s: squares[lv][s][3])

        def ident(lv, al):
            a = to_a(lv, al)
            return self.square(lv, al, X.ident(lv, X.src(lv, a)), X.ident(lv, X.tgt(lv, a)), al)

        i = b.tabulate(iso.obj, carrier, ident)

        def mul(lv, f, g):
            al, u, v, _ = squares[lv][f]
            _, u2, v2, al3 = squares[lv][g]
            return self.square(lv, al, X.mul(lv, u, u2), X.mul(lv, v, v2), al3)

        inv = None
        if X.inv is not None:
            inv = b.tabulate(carrier, carrier, lambda lv, s: self._inv(lv, s))
        super().__init__(iso.obj, carrier, d1, d0, i, mul, inv=inv, name=name or f"{X.name}^I")

    def parts(self, lv, s):
        return self._squares[lv][s]

    def _inv(self, lv, s):
        al, u, v, al2 = self.parts(lv, s)
        X = self.X
        return self.square(lv, al2, X.inv.maps[lv][u], X.inv.maps[lv][v], al)

    def square(self, lv, al, u, v, al2):
        """Index of the square (α, u, v, α') (α, α' as Iso indices); None if absent."""
        return self._pos[lv].get((al, u, v, al2))

    def endpoints(self, XX=None):
        """The functor X^I -> X × X sending α to (dom α, cod α)."""
        X = self.X
        XX = XX or product_internal(X, X)
        to_a = self.isoobj.to_arrow
        F = functor_from(self, XX,
                         lambda lv, al: XX.P0.index(lv, X.src(lv, to_a(lv, al)), X.tgt(lv, to_a(lv, al))),
                         lambda lv, s: XX.P1.index(lv, self.parts(lv, s)[1], self.parts(lv, s)[2]))
        return XX, F


def power_by_I(X, name=None):
    return PowerI(X, name=name)


# -- evaluation objects ------------------------------------------------------------------


SHAPES = ("∅", "1", "2", "1+1", "P", "I")


@dataclass(frozen=True)
class EvaluationObject:
    shape: str
    carrier: object
    maps: dict


def evaluate(X, shape):
    """Hom(shape, X) by the closed formulas for the generating shapes."""
    b = X.base
    if shape in ("∅", "0"):
        return EvaluationObject("∅", b.terminal(), {})
    if shape == "1":
        return EvaluationObject("1", X.ob, {"ob": b.identity(X.ob)})
    if shape == "2":
        return EvaluationObject("2", X.ar, {"d1": X.d1, "d0": X.d0})
    if shape == "1+1":
        P = b.product(X.ob, X.ob)
        return EvaluationObject("1+1", P.obj, {"p1": P.p1, "p2": P.p2})
    if shape == "P":
        ends = b.product(X.ob, X.ob)
        e = ends.pair(X.d1, X.d0)
        P = b.pullback(e, e)
        return EvaluationObject("P", P.obj, {"p1": P.p1, "p2": P.p2})
    if shape == "I":
        iso = X.iso
        return EvaluationObject("I", iso.obj, {"incl": iso.incl, "inv": iso.inv})
    raise UnsupportedShape(shape)


# -- full faithfulness and natural isomorphisms --------------------------------------------


def comparison(F):
    """w: X1 -> (X0×X0) ×_{Y0×Y0} Y1 together with the pullback."""
    X, Y = F.src, F.tgt
    b = X.base
    XX = b.product(X.ob, X.ob)
    YY = b.product(Y.ob, Y.ob)
    P = b.pullback(b.product_map(F.f0, F.f0, XX, YY), YY.pair(Y.d1, Y.d0))
    w = P.mediate(XX.pair(X.d1, X.d0), F.f1)
    return P, w


def is_fully_faithful(F):
    """Inverse of the comparison w when it is invertible, else None."""
    P, w = comparison(F)
    return F.src.base.invert(w)


@dataclass(frozen=True, eq=False)
class InternalNatIso:
    source: InternalFunctor
    target: InternalFunctor
    component: Mor

    def at(self, lv, x):
        return self.component.maps[lv][x]


def validate_nat_iso(alpha, f=None, g=None):
    if isinstance(alpha, InternalNatIso):
        f, g, comp = alpha.source, alpha.target, alpha.component
    else:
        comp = alpha
    X, Y = f.src, f.tgt
    out = []
    if g.src is not X and g.src.ob != X.ob:
        return ["nat iso: functors not parallel"]
    if comp.dom != X.ob or comp.cod != Y.ar:
        return ["nat iso: component has wrong carriers"]
    out += ["component: " + v for v in morphism_violations(comp)]
    if out:
        return out
    for lv in X.base.levels:
        c = comp.maps[lv]
        for x in range(X.ob.sizes[lv]):
            if Y.src(lv, c[x]) != f.ob(lv, x) or Y.tgt(lv, c[x]) != g.ob(lv, x):
                out.append(f"domain/codomain: component at {X.ob.labels[lv][x]}")
            elif Y.inverse(lv, c[x]) is None:
                out.append(f"not invertible: component at {X.ob.labels[lv][x]}")
        if out:
            return out
        for a in range(X.ar.sizes[lv]):
            x, y = X.src(lv, a), X.tgt(lv, a)
            if Y.mul(lv, f.arr(lv, a), c[y]) != Y.mul(lv, c[x], g.arr(lv, a)):
                out.append(f"naturality: square at {X.ar.labels[lv][a]}")
    return out


def identity_nat_iso(F):
    b = F.src.base
    Y = F.tgt
    return InternalNatIso(F, F, b.compose(Y.i, F.f0))


def categories_equal(X, Y, labels=True):
    """Tablewise equality of internal categories; labels=False compares only
    carrier sizes, restrictions and structure maps."""
    if labels and (X.ob != Y.ob or X.ar != Y.ar):
        return False
    for A, B in ((X.ob, Y.ob), (X.ar, Y.ar)):
        if A.sizes != B.sizes or A.restr != B.restr:
            return False
    if X.d1.maps != Y.d1.maps or X.d0.maps != Y.d0.maps or X.i.maps != Y.i.maps:
        return False
    if (X.inv is None) != (Y.inv is None) or (X.inv is not None and X.inv.maps != Y.inv.maps):
        return False
    return X.m.maps == Y.m.maps
