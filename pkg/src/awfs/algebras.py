"""(Co)algebra records, the hand-specified structures they correspond to, the
translations between them, and the canonical lift."""

from __future__ import annotations

from dataclasses import dataclass

from .base import Decomposition, Mor, morphism_violations
from .errors import InvalidAlgebra, InvalidStructure, NonCommutingSquare
from .factorization import (Square, _memo, e_functorial, f_functorial, factorize_cof_trivfib,
                            factorize_trivcof_fib)
from .internal import (InternalFunctor, InternalNatIso, comparison, compose_functors, functor_from,
                       functor_violations, identity_functor, validate_nat_iso)

# -- records ---------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FAlgebra:
    f: InternalFunctor
    phi: InternalFunctor  # E(W f) -> X


@dataclass(frozen=True, eq=False)
class TFAlgebra:
    f: InternalFunctor
    phi: InternalFunctor  # E(f) -> X


@dataclass(frozen=True, eq=False)
class CCoalgebra:
    f: InternalFunctor
    alpha: InternalFunctor  # Y -> E(f)


@dataclass(frozen=True, eq=False)
class TCCoalgebra:
    f: InternalFunctor
    alpha: InternalFunctor  # Y -> E(W f)


class CleavageDomain:
    """X0 ×_{Y0} Iso(Y)_1, pulled back along the domain map of Iso(Y)_1."""

    def __init__(self, f):
        X, Y = f.src, f.tgt
        b = X.base
        self.f = f
        self.iso = Y.iso
        self.pb = b.pullback(f.f0, b.compose(Y.d1, self.iso.incl))
        self.obj = self.pb.obj

    def index(self, lv, x, gamma):
        k = self.iso.from_arrow(lv, gamma)
        return None if k is None else self.pb.lookup(lv, x, k)

    def decode(self, lv, k):
        x, g = self.pb.pairs[lv][k]
        return x, self.iso.to_arrow(lv, g)


def cleavage_domain(f):
    return _memo(f, "cleavage-domain", lambda: CleavageDomain(f))


@dataclass(frozen=True, eq=False)
class ClovenIsofibration:
    f: InternalFunctor
    k: Mor  # cleavage domain -> X1; k(x, γ) has domain x and lies over γ

    @property
    def domain(self):
        return cleavage_domain(self.f)

    def lift(self, lv, x, gamma):
        return self.k.maps[lv][self.domain.index(lv, x, gamma)]


@dataclass(frozen=True, eq=False)
class AlgTrivCofibration:
    g: InternalFunctor
    r: InternalFunctor
    j: Decomposition
    beta: InternalNatIso  # g∘r ⇒ id


@dataclass(frozen=True, eq=False)
class AlgSplitEpiEq:
    f: InternalFunctor
    s: InternalFunctor
    beta: InternalNatIso  # id ⇒ s∘f


@dataclass(frozen=True, eq=False)
class AlgCompInclObj:
    f: InternalFunctor
    j: Decomposition


# -- validation -------------------------------------------------------------------------------


def _functor_eq(F, G):
    return F.f0.maps == G.f0.maps and F.f1.maps == G.f1.maps


def _check_functor(name, F, src, tgt):
    out = []
    if F.f0.dom != src.ob or F.f0.cod != tgt.ob:
        return [f"{name}: wrong source or target"]
    out += [f"{name}: {v}" for v in functor_violations(F)]
    return out


def validate_structure(rec):
    """List of violated invariants of any of the eight structure records."""
    if isinstance(rec, FAlgebra):
        A = factorize_trivcof_fib(rec.f)
        out = _check_functor("phi", rec.phi, A.E, rec.f.src)
        if out:
            return out
        if not _functor_eq(compose_functors(rec.f, rec.phi), A.F):
            out.append("algebra: f∘φ ≠ F(f)")
        u = compose_functors(rec.phi, A.TC)
        if not (u.f0.is_identity() and u.f1.is_identity()):
            out.append("algebra: φ∘TC(f) ≠ id")
        return out
    if isinstance(rec, TFAlgebra):
        A = factorize_cof_trivfib(rec.f)
        out = _check_functor("phi", rec.phi, A.E, rec.f.src)
        if out:
            return out
        if not _functor_eq(compose_functors(rec.f, rec.phi), A.TF):
            out.append("algebra: f∘φ ≠ TF(f)")
        u = compose_functors(rec.phi, A.C)
        if not (u.f0.is_identity() and u.f1.is_identity()):
            out.append("algebra: φ∘C(f) ≠ id")
        return out
    if isinstance(rec, CCoalgebra):
        A = factorize_cof_trivfib(rec.f)
        out = _check_functor("alpha", rec.alpha, rec.f.tgt, A.E)
        if out:
            return out
        if not _functor_eq(compose_functors(rec.alpha, rec.f), A.C):
            out.append("coalgebra: α∘f ≠ C(f)")
        u = compose_functors(A.TF, rec.alpha)
        if not (u.f0.is_identity() and u.f1.is_identity()):
            out.append("coalgebra: TF(f)∘α ≠ id")
        return out
    if isinstance(rec, TCCoalgebra):
        A = factorize_trivcof_fib(rec.f)
        out = _check_functor("alpha", rec.alpha, rec.f.tgt, A.E)
        if out:
            return out
        if not _functor_eq(compose_functors(rec.alpha, rec.f), A.TC):
            out.append("coalgebra: α∘f ≠ TC(f)")
        u = compose_functors(A.F, rec.alpha)
        if not (u.f0.is_identity() and u.f1.is_identity()):
            out.append("coalgebra: F(f)∘α ≠ id")
        return out
    if isinstance(rec, ClovenIsofibration):
        return _cleavage_violations(rec)
    if isinstance(rec, AlgTrivCofibration):
        return _trivcof_violations(rec)
    if isinstance(rec, AlgSplitEpiEq):
        return _splitepi_violations(rec)
    if isinstance(rec, AlgCompInclObj):
        if rec.j.f.maps != rec.f.f0.maps:
            return ["decomposition: not a decomposition of f0"]
        return rec.j.violations()
    raise TypeError(f"not a structure record: {type(rec).__name__}")


def _cleavage_violations(c):
    f = c.f
    X = f.src
    D = cleavage_domain(f)
    if c.k.dom != D.obj or c.k.cod != X.ar:
        return ["cleavage: wrong carriers"]
    out = ["cleavage: " + v for v in morphism_violations(c.k)]
    if out:
        return out
    for lv in X.base.levels:
        labels = D.obj.labels[lv]
        for n in range(D.obj.sizes[lv]):
            x, gamma = D.decode(lv, n)
            a = c.k.maps[lv][n]
            if X.src(lv, a) != x or f.arr(lv, a) != gamma:
                out.append(f"cleavage: lift at {labels[n]} does not split (d1, f1)")
            elif X.inverse(lv, a) is None:
                out.append(f"cleavage: lift at {labels[n]} lies outside Iso(X)_1")
    return out


def _trivcof_violations(t):
    g, r = t.g, t.r
    A, Y = g.src, g.tgt
    out = _check_functor("r", r, Y, A)
    if out:
        return out
    u = compose_functors(r, g)
    if not (u.f0.is_identity() and u.f1.is_identity()):
        out.append("retraction: r∘g ≠ id")
    out += ["beta: " + v for v in validate_nat_iso(t.beta.component, compose_functors(g, r), identity_functor(Y))]
    if t.j.f.maps != g.f0.maps:
        out.append("decomposition: not a decomposition of g0")
    else:
        out += t.j.violations()
    if not out:
        for lv in Y.base.levels:
            for a in range(A.ob.sizes[lv]):
                y = g.ob(lv, a)
                if t.beta.at(lv, y) != Y.ident(lv, y):
                    out.append(f"beta: component at the image object {Y.ob.labels[lv][y]} is not an identity")
    return out


def _splitepi_violations(e):
    f, s = e.f, e.s
    X, Y = f.src, f.tgt
    out = _check_functor("s", s, Y, X)
    if out:
        return out
    u = compose_functors(f, s)
    if not (u.f0.is_identity() and u.f1.is_identity()):
        out.append("section: f∘s ≠ id")
    out += ["beta: " + v for v in validate_nat_iso(e.beta.component, identity_functor(X), compose_functors(s, f))]
    if not out:
        for lv in X.base.levels:
            for x in range(X.ob.sizes[lv]):
                if f.arr(lv, e.beta.at(lv, x)) != Y.ident(lv, f.ob(lv, x)):
                    out.append(f"beta: component at {X.ob.labels[lv][x]} is not vertical over f")
    return out


def _require(rec, exc=InvalidStructure):
    v = validate_structure(rec)
    if v:
        raise exc("; ".join(v))
    return rec


# -- F-algebras and cloven isofibrations ---------------------------------------------------------


def canonical_path_arrow(f, lv, x, gamma):
    """The arrow ι(x) -> ι(x, γ) of E(W f) over the Map arrow (id_x, γ)."""
    A = factorize_trivcof_fib(f)
    E, M = A.E, A.map
    X, Y = f.src, f.tgt
    m = M.obj(lv, x, Y.tgt(lv, gamma), gamma)
    w = M.W.ob(lv, x)
    return E.arrow(lv, E.left(lv, x), E.right(lv, m), M.arr(lv, X.ident(lv, x), gamma, w, m))


def f_algebra_to_cloven(a):
    _require(a, InvalidAlgebra)
    f = a.f
    D = cleavage_domain(f)
    b = f.src.base

    def k(lv, n):
        x, gamma = D.decode(lv, n)
        return a.phi.arr(lv, canonical_path_arrow(f, lv, x, gamma))

    return _require(ClovenIsofibration(f, b.tabulate(D.obj, f.src.ar, k)))


def cloven_to_f_algebra(c):
    _require(c)
    f = c.f
    X = f.src
    A = factorize_trivcof_fib(f)
    E, M = A.E, A.map

    def lift_of(lv, e):
        """L(e): identity for ι(x), the chosen lift k(x, α) for (x, y, α)."""
        side, v = E.which(lv, e)
        if side == "l":
            return X.ident(lv, v)
        x, _, al = M.decode_obj(lv, v)
        return c.lift(lv, x, al)

    def ob(lv, e):
        return X.tgt(lv, lift_of(lv, e))

    def ar(lv, k):
        e1, e2, m = E.decode(lv, k)
        a, _ = M.decode_arr(lv, m)
        back = X.inverse(lv, lift_of(lv, e1))
        return X.mul(lv, X.mul(lv, back, a), lift_of(lv, e2))

    return _require(FAlgebra(f, functor_from(E, X, ob, ar)))


# -- TC-coalgebras and algebraic trivial cofibrations ----------------------------------------------


def decomposition_from_complement(f, keep):
    """Decomposition of f: A -> B with the complement given as a predicate on B."""
    b = f.dom.base
    sub = b.subobject(f.cod, keep)
    cop = b.coproduct(f.dom, sub.obj)
    j = cop.copair(f, sub.incl)
    inv = b.invert(j)
    if inv is None:
        raise InvalidStructure("decomposition: witness not invertible")
    return Decomposition(f, sub.obj, j, sub.incl, cop, inv)


def tc_coalg_to_algtrivcof(c):
    _require(c)
    g, alpha = c.f, c.alpha
    A = factorize_trivcof_fib(g)
    E, M = A.E, A.map
    Y = g.tgt
    b = Y.base
    r = compose_functors(M.pX, compose_functors(A.ctf.TF, alpha))

    def comp(lv, y):
        _, _, al = M.decode_obj(lv, E.tf0.maps[lv][alpha.ob(lv, y)])
        return al

    beta = InternalNatIso(compose_functors(g, r), identity_functor(Y), b.tabulate(Y.ob, Y.ar, comp))
    j = decomposition_from_complement(g.f0, lambda lv, y: E.which(lv, alpha.ob(lv, y))[0] == "r")
    return _require(AlgTrivCofibration(g, r, j, beta))


def algtrivcof_to_tc_coalg(t):
    _require(t)
    g, r, beta = t.g, t.r, t.beta
    A = factorize_trivcof_fib(g)
    E, M = A.E, A.map
    Y = g.tgt

    def hat(lv, y):
        return M.obj(lv, r.ob(lv, y), y, beta.at(lv, y))

    def ob(lv, y):
        a = t.j.preimage(lv, y)
        if a is not None:
            return E.left(lv, a)
        return E.right(lv, hat(lv, y))

    def ar(lv, h):
        y1, y2 = Y.src(lv, h), Y.tgt(lv, h)
        e1, e2 = ob(lv, y1), ob(lv, y2)
        m = M.arr(lv, r.arr(lv, h), h, E.tf0.maps[lv][e1], E.tf0.maps[lv][e2])
        return E.arrow(lv, e1, e2, m)

    return _require(TCCoalgebra(g, functor_from(Y, E, ob, ar)))


def trivcof_structure_of(f):
    """(TC f, r, j, β) read off the construction of E(W f)."""
    A = factorize_trivcof_fib(f)
    E, M = A.E, A.map
    X = f.src
    b = X.base
    g = A.TC
    r = compose_functors(M.pX, A.ctf.TF)

    def comp(lv, e):
        side, v = E.which(lv, e)
        if side == "l":
            return E.ident(lv, e)
        x, _, al = M.decode_obj(lv, v)
        return E.arrow(lv, E.left(lv, x), e, M.arr(lv, X.ident(lv, x), al, M.W.ob(lv, x), v))

    beta = InternalNatIso(compose_functors(g, r), identity_functor(E), b.tabulate(E.ob, E.ar, comp))
    j = b.complemented_decomposition(g.f0)
    return _require(AlgTrivCofibration(g, r, j, beta))


# -- TF-algebras and split epi equivalences ---------------------------------------------------------


def y_inclusion(f):
    """The canonical functor Y -> E(f), y ↦ r/y."""
    E = factorize_cof_trivfib(f).E
    Y = f.tgt
    return functor_from(Y, E, lambda lv, y: E.right(lv, y),
                        lambda lv, h: E.arrow(lv, E.right(lv, Y.src(lv, h)), E.right(lv, Y.tgt(lv, h)), h))


def tf_algebra_to_splitepieq(a):
    _require(a)
    f, phi = a.f, a.phi
    E = factorize_cof_trivfib(f).E
    X, Y = f.src, f.tgt
    s = compose_functors(phi, y_inclusion(f))

    def comp(lv, x):
        fx = f.ob(lv, x)
        return phi.arr(lv, E.arrow(lv, E.left(lv, x), E.right(lv, fx), Y.ident(lv, fx)))

    beta = InternalNatIso(identity_functor(X), compose_functors(s, f), X.base.tabulate(X.ob, X.ar, comp))
    return _require(AlgSplitEpiEq(f, s, beta))


def splitepi_structure_of(f, witness):
    """A split epi equivalence on a trivial fibration from its witness: the
    object section, with arrows and β transported back through full faithfulness."""
    X, Y = f.src, f.tgt
    b = X.base
    P, _ = comparison(f)
    XX = b.product(X.ob, X.ob)
    s0, back = witness.section, witness.ff

    def over(lv, x1, x2, h):
        return back.maps[lv][P.lookup(lv, XX.index(lv, x1, x2), h)]

    s = functor_from(Y, X, lambda lv, y: s0.maps[lv][y],
                     lambda lv, h: over(lv, s0.maps[lv][Y.src(lv, h)], s0.maps[lv][Y.tgt(lv, h)], h))

    def comp(lv, x):
        fx = f.ob(lv, x)
        return over(lv, x, s0.maps[lv][fx], Y.ident(lv, fx))

    beta = InternalNatIso(identity_functor(X), compose_functors(s, f), b.tabulate(X.ob, X.ar, comp))
    return _require(AlgSplitEpiEq(f, s, beta))


def splitepieq_to_tf_algebra(e):
    _require(e)
    f, s, beta = e.f, e.s, e.beta
    E = factorize_cof_trivfib(f).E
    X = f.src

    def to_section(lv, v):
        """B(v): φ0(v) -> s(TF v), an isomorphism."""
        side, w = E.which(lv, v)
        if side == "l":
            return beta.at(lv, w)
        return X.ident(lv, s.ob(lv, w))

    def ob(lv, v):
        side, w = E.which(lv, v)
        return w if side == "l" else s.ob(lv, w)

    def ar(lv, k):
        e1, e2, h = E.decode(lv, k)
        return X.mul(lv, X.mul(lv, to_section(lv, e1), s.arr(lv, h)), X.inverse(lv, to_section(lv, e2)))

    return _require(TFAlgebra(f, functor_from(E, X, ob, ar)))


# -- C-coalgebras and complemented inclusions on objects -------------------------------------------


def c_coalg_to_compincl(c):
    _require(c)
    E = factorize_cof_trivfib(c.f).E
    j = decomposition_from_complement(c.f.f0, lambda lv, y: E.which(lv, c.alpha.ob(lv, y))[0] == "r")
    return _require(AlgCompInclObj(c.f, j))


def compincl_to_c_coalg(a):
    _require(a)
    f = a.f
    E = factorize_cof_trivfib(f).E
    Y = f.tgt

    def ob(lv, y):
        x = a.j.preimage(lv, y)
        return E.left(lv, x) if x is not None else E.right(lv, y)

    def ar(lv, h):
        return E.arrow(lv, ob(lv, Y.src(lv, h)), ob(lv, Y.tgt(lv, h)), h)

    return _require(CCoalgebra(f, functor_from(Y, E, ob, ar)))


# -- lifting ----------------------------------------------------------------------------------------


def canonical_lift(left, right, top, bottom):
    """Diagonal B -> X for a square (top, bottom): l -> r, as φ ∘ E(W(top, bottom)) ∘ α."""
    l, r = left.f, right.f
    sq = Square(l, r, top, bottom)
    if not sq.commutes():
        raise NonCommutingSquare("canonical_lift: square does not commute")
    _require(left)
    _require(right)
    mid = f_functorial(sq)
    return compose_functors(right.phi, compose_functors(mid, left.alpha))


def structure_square_preserved(rec1, rec2, sq):
    """Whether a square between the underlying maps of two records of the same
    kind preserves the chosen structure."""
    if isinstance(rec1, FAlgebra):
        mid = f_functorial(sq)
        return _functor_eq(compose_functors(sq.top, rec1.phi), compose_functors(rec2.phi, mid))
    if isinstance(rec1, TFAlgebra):
        mid = e_functorial(sq)
        return _functor_eq(compose_functors(sq.top, rec1.phi), compose_functors(rec2.phi, mid))
    if isinstance(rec1, TCCoalgebra):
        mid = f_functorial(sq)
        return _functor_eq(compose_functors(mid, rec1.alpha), compose_functors(rec2.alpha, sq.bottom))
    if isinstance(rec1, CCoalgebra):
        mid = e_functorial(sq)
        return _functor_eq(compose_functors(mid, rec1.alpha), compose_functors(rec2.alpha, sq.bottom))
    if isinstance(rec1, ClovenIsofibration):
        u, v = sq.top, sq.bottom
        for lv in u.src.base.levels:
            for n in range(rec1.domain.obj.sizes[lv]):
                x, gamma = rec1.domain.decode(lv, n)
                if u.arr(lv, rec1.k.maps[lv][n]) != rec2.lift(lv, u.ob(lv, x), v.arr(lv, gamma)):
                    return False
        return True
    if isinstance(rec1, AlgTrivCofibration):
        u, v = sq.top, sq.bottom
        if not _functor_eq(compose_functors(u, rec1.r), compose_functors(rec2.r, v)):
            return False
        Y = rec1.g.tgt
        for lv in Y.base.levels:
            for y in range(Y.ob.sizes[lv]):
                if v.arr(lv, rec1.beta.at(lv, y)) != rec2.beta.at(lv, v.ob(lv, y)):
                    return False
                if rec1.j.in_complement(lv, y) != rec2.j.in_complement(lv, v.ob(lv, y)):
                    return False
        return True
    if isinstance(rec1, AlgSplitEpiEq):
        u, v = sq.top, sq.bottom
        if not _functor_eq(compose_functors(u, rec1.s), compose_functors(rec2.s, v)):
            return False
        X = rec1.f.src
        return all(u.arr(lv, rec1.beta.at(lv, x)) == rec2.beta.at(lv, u.ob(lv, x))
                   for lv in X.base.levels for x in range(X.ob.sizes[lv]))
    if isinstance(rec1, AlgCompInclObj):
        v = sq.bottom
        Y = rec1.f.tgt
        return all(rec1.j.in_complement(lv, y) == rec2.j.in_complement(lv, v.ob(lv, y))
                   for lv in Y.base.levels for y in range(Y.ob.sizes[lv]))
    raise TypeError(type(rec1).__name__)

