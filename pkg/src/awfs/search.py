"""Exhaustive searches over internal functors and natural isomorphisms."""

from .base import Mor
from .csp import CSP
from .internal import InternalFunctor, InternalNatIso


def _offsets(sizes):
    offs, n = [], 0
    for s in sizes:
        offs.append(n)
        n += s
    return offs, n


def _split(sol, offs, sizes):
    return tuple(tuple(sol[o:o + s]) for o, s in zip(offs, sizes))


def object_maps(X, Y, obj_cands=None):
    """Natural maps X0 -> Y0 compatible with nonempty hom-sets of Y."""
    b = X.base
    offs, _ = _offsets(X.ob.sizes)
    cands = []
    for lv in b.levels:
        for x in range(X.ob.sizes[lv]):
            cands.append(obj_cands[lv][x] if obj_cands is not None else range(Y.ob.sizes[lv]))
    csp = CSP(cands)
    for k, c, d in b.proper:
        rd, rc = X.ob.restr[k], Y.ob.restr[k]
        for x in range(X.ob.sizes[d]):
            csp.eq(offs[d] + x, offs[c] + rd[x], rc.__getitem__)
    for lv in b.levels:
        seen = set()
        for a in range(X.ar.sizes[lv]):
            s, t = X.src(lv, a), X.tgt(lv, a)
            if (s, t) in seen:
                continue
            seen.add((s, t))
            csp.pred(offs[lv] + s, offs[lv] + t, lambda u, v, lv=lv: bool(Y.hom(lv, u, v)))
    for sol in csp.solutions():
        yield Mor(X.ob, Y.ob, _split(sol, offs, X.ob.sizes))


def functors(X, Y, obj_cands=None, arr_cands=None):
    """All internal functors X -> Y (optionally constrained per element),
    lexicographic over object assignments, then arrow assignments."""
    b = X.base
    offs, _ = _offsets(X.ar.sizes)
    allowed = None
    if arr_cands is not None:
        allowed = [[set(c) for c in row] for row in arr_cands]
    for f0 in object_maps(X, Y, obj_cands):
        cands = []
        for lv in b.levels:
            m = f0.maps[lv]
            idents = {X.ident(lv, x): x for x in range(X.ob.sizes[lv])}
            for a in range(X.ar.sizes[lv]):
                if a in idents:
                    cs = [Y.ident(lv, m[idents[a]])]
                else:
                    cs = Y.hom(lv, m[X.src(lv, a)], m[X.tgt(lv, a)])
                if allowed is not None:
                    cs = [c for c in cs if c in allowed[lv][a]]
                cands.append(cs)
        if any(not c for c in cands):
            continue
        csp = CSP(cands)
        for k, c, d in b.proper:
            rd, rc = X.ar.restr[k], Y.ar.restr[k]
            for x in range(X.ar.sizes[d]):
                csp.eq(offs[d] + x, offs[c] + rd[x], rc.__getitem__)
        for lv in b.levels:
            o = offs[lv]
            for p, q in X.pairs.pairs[lv]:
                csp.tern(o + p, o + q, o + X.mul(lv, p, q), lambda u, v, lv=lv: Y.mul(lv, u, v))
        for sol in csp.solutions():
            yield InternalFunctor(X, Y, f0, Mor(X.ar, Y.ar, _split(sol, offs, X.ar.sizes)))


def first_functor(X, Y, obj_cands=None, arr_cands=None):
    for F in functors(X, Y, obj_cands, arr_cands):
        return F
    return None


def nat_isos(F, G, prefer_identity=True):
    """Natural isomorphisms F ⇒ G, identities tried first."""
    X, Y = F.src, F.tgt
    b = X.base
    offs, _ = _offsets(X.ob.sizes)
    cands = []
    for lv in b.levels:
        for x in range(X.ob.sizes[lv]):
            cs = [a for a in Y.hom(lv, F.ob(lv, x), G.ob(lv, x)) if Y.inverse(lv, a) is not None]
            if prefer_identity:
                idy = Y.ident(lv, F.ob(lv, x))
                cs.sort(key=lambda a: a != idy)
            cands.append(cs)
    csp = CSP(cands)
    for k, c, d in b.proper:
        rd, rc = X.ob.restr[k], Y.ar.restr[k]
        for x in range(X.ob.sizes[d]):
            csp.eq(offs[d] + x, offs[c] + rd[x], rc.__getitem__)
    for lv in b.levels:
        for a in range(X.ar.sizes[lv]):
            s, t = X.src(lv, a), X.tgt(lv, a)
            fa, ga = F.arr(lv, a), G.arr(lv, a)
            csp.pred(offs[lv] + s, offs[lv] + t,
                     lambda cs, ct, lv=lv, fa=fa, ga=ga: Y.mul(lv, fa, ct) == Y.mul(lv, cs, ga))
    for sol in csp.solutions():
        yield InternalNatIso(F, G, Mor(X.ob, Y.ar, _split(sol, offs, X.ob.sizes)))


def first_nat_iso(F, G):
    for a in nat_isos(F, G):
        return a
    return None
