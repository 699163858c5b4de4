"""Classification of internal functors into the model-structure classes, the
generating sets, and lifting problems solved by search."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import AlgTrivCofibration, ClovenIsofibration, cleavage_domain, validate_structure
from .base import Decomposition, Mor, morphism_violations
from .csp import CSP
from .errors import InvalidStructure, NonCommutingSquare
from .factorization import Square, _memo, mapping_path_object
from .internal import (InternalFunctor, InternalNatIso, comparison, compose_functors, discrete, functor_from,
                       identity_functor, is_fully_faithful, product_functor, product_internal, underline)
from .search import functors, nat_isos
from .shapes import EMPTY, ONE, ONE_PLUS_ONE, PARALLEL, TWO, WALKING_ISO


@dataclass(frozen=True, eq=False)
class EsoSplitting:
    f: InternalFunctor
    s: Mor  # Y0 -> Map(f)_0

    def violations(self):
        M = mapping_path_object(self.f)
        if self.s.dom != self.f.tgt.ob or self.s.cod != M.cat.ob:
            return ["eso splitting: wrong carriers"]
        out = morphism_violations(self.s)
        b = self.f.src.base
        if not out and not b.compose(M.pY.f0, self.s).is_identity():
            out.append("eso splitting: pY∘s ≠ id")
        return out

    def at(self, lv, y):
        """(x, α: f x -> y) chosen for y."""
        x, _, al = mapping_path_object(self.f).decode_obj(lv, self.s.maps[lv][y])
        return x, al


@dataclass(frozen=True, eq=False)
class TrivialFibrationWitness:
    section: Mor  # Y0 -> X0
    ff: Mor  # inverse of the full-faithfulness comparison


@dataclass(frozen=True, eq=False)
class WeakEquivalenceWitness:
    ff: Mor
    eso: EsoSplitting


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    f: InternalFunctor
    cofibration: Decomposition | None
    fibration: ClovenIsofibration | None
    weak_equivalence: WeakEquivalenceWitness | None
    trivial_cofibration: AlgTrivCofibration | None
    trivial_fibration: TrivialFibrationWitness | None

    def verdicts(self):
        return {
            "cofibration": self.cofibration is not None,
            "fibration": self.fibration is not None,
            "weak equivalence": self.weak_equivalence is not None,
            "trivial cofibration": self.trivial_cofibration is not None,
            "trivial fibration": self.trivial_fibration is not None,
        }


@dataclass(frozen=True, eq=False)
class GeneratingSets:
    I_maps: list = field(default_factory=list)
    J_maps: list = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class QuasiInverse:
    g: InternalFunctor
    unit: InternalNatIso  # g∘f ⇒ id
    counit: InternalNatIso  # f∘g ⇒ id


# -- classifiers ------------------------------------------------------------------------------


def is_isofibration(f):
    """A cleavage splitting (d1, f1): Iso(X)_1 -> X0 ×_{Y0} Iso(Y)_1, or None."""
    X, Y = f.src, f.tgt
    b = X.base
    D = cleavage_domain(f)
    isoX = X.iso
    q = b.tabulate(isoX.obj, D.obj, lambda lv, k: D.index(lv, X.src(lv, isoX.to_arrow(lv, k)),
                                                          f.arr(lv, isoX.to_arrow(lv, k))))
    s = b.is_split_epi(q)
    if s is None:
        return None
    return ClovenIsofibration(f, b.compose(isoX.incl, s))


def is_cofibration(f):
    return f.src.base.complemented_decomposition(f.f0)


def is_trivial_fibration(f):
    b = f.src.base
    ff = is_fully_faithful(f)
    if ff is None:
        return None
    s = b.is_split_epi(f.f0)
    if s is None:
        return None
    return TrivialFibrationWitness(s, ff)


def eso_splitting(f):
    M = mapping_path_object(f)
    s = f.src.base.is_split_epi(M.pY.f0)
    return None if s is None else EsoSplitting(f, s)


def is_weak_equivalence(f):
    ff = is_fully_faithful(f)
    if ff is None:
        return None
    eso = eso_splitting(f)
    if eso is None:
        return None
    return WeakEquivalenceWitness(ff, eso)


def _ff_preimage(g, ff, lv, x1, x2, h):
    """The arrow x1 -> x2 over h, through the inverse of the comparison."""
    P, XX = _memo(g, "comparison", lambda: (comparison(g)[0], g.src.base.product(g.src.ob, g.src.ob)))
    return ff.maps[lv][P.lookup(lv, XX.index(lv, x1, x2), h)]


def is_trivial_cofibration(f):
    """A retraction r with a natural iso f∘r ≅ id, identities on the image.

    For each object outside the image the first eso choice (x, α) is taken;
    full faithfulness then determines r on arrows, so no backtracking occurs.
    """
    j = is_cofibration(f)
    if j is None:
        return None
    w = is_weak_equivalence(f)
    if w is None:
        return None
    A, Y = f.src, f.tgt
    b = A.base

    def choice(lv, y):
        a = j.preimage(lv, y)
        if a is not None:
            return a, Y.ident(lv, y)
        return w.eso.at(lv, y)

    comp = b.tabulate(Y.ob, Y.ar, lambda lv, y: choice(lv, y)[1])

    def ar(lv, h):
        y1, y2 = Y.src(lv, h), Y.tgt(lv, h)
        (x1, a1), (x2, a2) = choice(lv, y1), choice(lv, y2)
        # a1: f x1 -> y1, then h, then a2^{-1}: y2 -> f x2
        over = Y.mul(lv, Y.mul(lv, a1, h), Y.inverse(lv, a2))
        return _ff_preimage(f, w.ff, lv, x1, x2, over)

    r = functor_from(Y, A, lambda lv, y: choice(lv, y)[0], ar)
    rec = AlgTrivCofibration(f, r, j, InternalNatIso(compose_functors(f, r), identity_functor(Y), comp))
    v = validate_structure(rec)
    if v:
        raise InvalidStructure("; ".join(v))
    return rec


def classify(f):
    return ClassificationReport(
        f,
        is_cofibration(f),
        is_isofibration(f),
        is_weak_equivalence(f),
        is_trivial_cofibration(f),
        is_trivial_fibration(f),
    )


# -- generating sets ------------------------------------------------------------------------


def underline_functor(C, D, on_objects, on_arrows, base):
    """The constant internal functor of a functor between finite categories."""
    X, Y = underline(C, base), underline(D, base)
    return functor_from(X, Y,
                        lambda lv, x: D.obj_pos[on_objects[C.objects[x]]],
                        lambda lv, a: D.arr_pos[on_arrows[C.arrows[a]]])


def generating_sets(base):
    I = [
        underline_functor(EMPTY, ONE, {}, {}, base),
        underline_functor(ONE_PLUS_ONE, TWO, {"0": "0", "1": "1"}, {"id_0": "id_0", "id_1": "id_1"}, base),
        underline_functor(PARALLEL, TWO, {"0": "0", "1": "1"},
                          {"id_0": "id_0", "id_1": "id_1", "u": "u", "v": "u"}, base),
    ]
    J = [underline_functor(ONE, WALKING_ISO, {"•": "0"}, {"id": "id_0"}, base)]
    return GeneratingSets(I, J)


# -- lifting ----------------------------------------------------------------------------------


def _lift_candidates(l, r, top, bottom):
    """Per-element candidate lists for a diagonal B -> X of the square."""
    A, B, X = l.src, l.tgt, r.src
    b = A.base
    ob, ar = [], []
    for lv in b.levels:
        forced = {}
        for a in range(A.ob.sizes[lv]):
            forced.setdefault(l.ob(lv, a), set()).add(top.ob(lv, a))
        row = []
        for y in range(B.ob.sizes[lv]):
            want = bottom.ob(lv, y)
            cs = [x for x in range(X.ob.sizes[lv]) if r.ob(lv, x) == want]
            if y in forced:
                cs = [x for x in cs if {x} == forced[y]]
            row.append(cs)
        ob.append(row)
        forced = {}
        for a in range(A.ar.sizes[lv]):
            forced.setdefault(l.arr(lv, a), set()).add(top.arr(lv, a))
        row = []
        for k in range(B.ar.sizes[lv]):
            want = bottom.arr(lv, k)
            cs = {x for x in range(X.ar.sizes[lv]) if r.arr(lv, x) == want}
            if k in forced:
                cs &= forced[k] if len(forced[k]) == 1 else set()
            row.append(cs)
        ar.append(row)
    return ob, ar


def fillers(sq):
    """All diagonals of a commuting square, lexicographic (objects, then arrows)."""
    sq.check()
    ob, ar = _lift_candidates(sq.f, sq.g, sq.top, sq.bottom)
    yield from functors(sq.f.tgt, sq.g.src, ob, ar)


def find_filler(sq):
    for d in fillers(sq):
        return d
    return None


def _key(F):
    return F.f0.maps, F.f1.maps


def _squares(j, f, DA, DB, lj):
    """Commuting squares (top, bottom) from lj: DA -> DB to f."""
    X, Y = f.src, f.tgt
    for top in functors(DA, X):
        ft = compose_functors(f, top)
        ob, ar = [], []
        for lv in DA.base.levels:
            fo = {}
            for a in range(DA.ob.sizes[lv]):
                fo.setdefault(lj.ob(lv, a), set()).add(ft.ob(lv, a))
            if any(len(v) > 1 for v in fo.values()):
                break
            ob.append([sorted(fo[y]) if y in fo else range(Y.ob.sizes[lv]) for y in range(DB.ob.sizes[lv])])
            fa = {}
            for a in range(DA.ar.sizes[lv]):
                fa.setdefault(lj.arr(lv, a), set()).add(ft.arr(lv, a))
            if any(len(v) > 1 for v in fa.values()):
                break
            ar.append([fa.get(k, range(Y.ar.sizes[lv])) for k in range(DB.ar.sizes[lv])])
        else:
            for bottom in functors(DB, Y, ob, ar):
                yield top, bottom


def _discrete_map(m, src, tgt):
    return InternalFunctor(src, tgt, m, m)


def has_rlp(f, generators):
    """Right lifting against every generator, with fillers chosen naturally:
    squares from y(c)·A at every level c, fillers compatible with restriction."""
    b = f.src.base
    for j in generators:
        A, B = j.src, j.tgt
        reps = [b.representable(c) for c in b.levels]
        stage = []
        for c in b.levels:
            D = discrete(reps[c])
            DA, DB = product_internal(D, A), product_internal(D, B)
            lj = product_functor(identity_functor(D), j, DA, DB)
            sqs = []
            for top, bottom in _squares(j, f, DA, DB, lj):
                fl = list(fillers(Square(lj, f, top, bottom)))
                if not fl:
                    return False
                sqs.append((top, bottom, fl))
            stage.append((D, DA, DB, sqs))
        if not b.proper:
            continue
        offsets, n = [], 0
        for st in stage:
            offsets.append(n)
            n += len(st[3])
        cands = [range(len(fl)) for st in stage for (_, _, fl) in st[3]]
        csp = CSP(cands)
        index = [{(_key(t), _key(bt)): i for i, (t, bt, _) in enumerate(st[3])} for st in stage]
        fill_index = [[{_key(d): i for i, d in enumerate(fl)} for (_, _, fl) in st[3]] for st in stage]
        ix = b.index
        for k, c, d in b.proper:
            # y(k): y(c) -> y(d) restricts level-d squares to level c
            u = ix.arrows[k]
            yk = b.tabulate(reps[c], reps[d], lambda lv, a, u=u: reps[d].labels[lv].index(ix.comp[(u, reps[c].labels[lv][a])]))
            Dc, DAc, DBc, sqc = stage[c]
            Dd, DAd, DBd, sqd = stage[d]
            Dk = _discrete_map(yk, Dc, Dd)
            ka = product_functor(Dk, identity_functor(A), DAc, DAd)
            kb = product_functor(Dk, identity_functor(B), DBc, DBd)
            for i, (top, bottom, fl) in enumerate(sqd):
                key = (_key(compose_functors(top, ka)), _key(compose_functors(bottom, kb)))
                i2 = index[c][key]
                table = [fill_index[c][i2][_key(compose_functors(dd, kb))] for dd in fl]
                csp.eq(offsets[d] + i, offsets[c] + i2, table.__getitem__)
        if csp.first() is None:
            return False
    return True


# -- equivalences by search -------------------------------------------------------------------


def quasi_inverse(f):
    """Brute-force search for g with natural isos g∘f ≅ id and f∘g ≅ id."""
    X, Y = f.src, f.tgt
    for g in functors(Y, X):
        unit = next(nat_isos(compose_functors(g, f), identity_functor(X)), None)
        if unit is None:
            continue
        counit = next(nat_isos(compose_functors(f, g), identity_functor(Y)), None)
        if counit is not None:
            return QuasiInverse(g, unit, counit)
    return None
