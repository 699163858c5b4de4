"""Bundled test corpus: small groupoids, every functor between them, and small
presheaf-valued groupoids over the walking arrow and the involution index."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
import random

from .base import Base, Mor
from .errors import InvalidCategory
from .internal import InternalCategory, check_category, underline
from .search import functors
from .shapes import EMPTY, ONE, ONE_PLUS_ONE, TWO, WALKING_ISO, Z2, thin_groupoid

SETS = Base()
WALKING_ARROW = Base(TWO)
INVOLUTION = Base(Z2)


@dataclass(frozen=True)
class CorpusConfig:
    max_objects: int = 3
    include_c2: bool = True


def _sets_fixture_shapes():
    return {
        "∅": EMPTY,
        "T": ONE,
        "D2": ONE_PLUS_ONE,
        "Iw": WALKING_ISO,
        "C2": Z2,
        "D3": thin_groupoid([["0"], ["1"], ["2"]], name="D3"),
        "Iw+T": thin_groupoid([["0", "1"], ["2"]], name="Iw+T"),
        "I3": thin_groupoid([["0", "1", "2"]], name="I3"),
    }


@lru_cache(maxsize=None)
def fixtures(base=SETS):
    """Named constant groupoids over a base, keyed by short name."""
    return {k: underline(C, base, name=k) for k, C in _sets_fixture_shapes().items()}


def groupoids(config=CorpusConfig(), base=SETS):
    out = {}
    for k, X in fixtures(base).items():
        if k == "C2" and not config.include_c2:
            continue
        if X.ob.sizes[0] <= config.max_objects:
            out[k] = X
    return out


@lru_cache(maxsize=None)
def _functor_corpus(config, base):
    gs = groupoids(config, base)
    out = []
    for (a, X), (b, Y) in iproduct(gs.items(), gs.items()):
        for n, F in enumerate(functors(X, Y)):
            out.append((f"{a}→{b}#{n}", F))
    return tuple(out)


def functor_corpus(config=CorpusConfig(), base=SETS):
    """Every internal functor between the corpus groupoids, labelled."""
    return list(_functor_corpus(config, base))


def composable_pairs(corpus):
    """(f, g) with g∘f defined, by identity of the middle category."""
    by_src = {}
    for name, F in corpus:
        by_src.setdefault(id(F.src), []).append((name, F))
    for name, f in corpus:
        for name2, g in by_src.get(id(f.tgt), []):
            yield (name, f), (name2, g)


# -- presheaf-valued groupoids ---------------------------------------------------------------


def levelwise(base, levels, restrictions, name=None):
    """Internal category over a presheaf base from one finite-sets groupoid per
    index object and a functor levels[d] -> levels[c] for each proper index
    arrow c -> d."""
    ix = base.index
    ends = base.ends
    rob, rar = [], []
    for k, c, d in ends:
        a = ix.arrows[k]
        if a in ix.identities.values():
            rob.append(tuple(range(levels[d].ob.sizes[0])))
            rar.append(tuple(range(levels[d].ar.sizes[0])))
        else:
            F = restrictions[a]
            if F.src is not levels[d] or F.tgt is not levels[c]:
                raise InvalidCategory(f"restriction along {a} has the wrong ends")
            rob.append(F.f0.maps[0])
            rar.append(F.f1.maps[0])
    ob = base.raw([L.ob.sizes[0] for L in levels], rob, labels=tuple(L.ob.labels[0] for L in levels))
    ar = base.raw([L.ar.sizes[0] for L in levels], rar, labels=tuple(L.ar.labels[0] for L in levels))

    def per(getter, dom, cod):
        return Mor(dom, cod, tuple(getter(L).maps[0] for L in levels))

    d1 = per(lambda L: L.d1, ar, ob)
    d0 = per(lambda L: L.d0, ar, ob)
    i = per(lambda L: L.i, ob, ar)
    inv = per(lambda L: L.inv, ar, ar) if all(L.inv is not None for L in levels) else None

    def mul(lv, f, g):
        return levels[lv].mul(0, f, g)

    X = InternalCategory(ob, ar, d1, d0, i, mul, inv=inv, name=name)
    check_category(X)
    return X


def _restriction(X, Y, obj):
    return next(functors(X, Y, obj_cands=[[[o] for o in obj]]))


@lru_cache(maxsize=None)
def presheaf_groupoids(base):
    """Small groupoids over the walking arrow or involution index, at most two
    objects per level."""
    F = fixtures(SETS)
    T, D2, Iw, C2 = F["T"], F["D2"], F["Iw"], F["C2"]
    out = {}
    if base is WALKING_ARROW:
        # level "1" restricts to level "0"
        for k in ("T", "D2", "Iw", "C2"):
            out[k] = fixtures(base)[k]
        out["T⇒Iw"] = levelwise(base, [Iw, T], {"u": _restriction(T, Iw, [0])}, name="T⇒Iw")
        out["D2⇒Iw"] = levelwise(base, [Iw, D2], {"u": _restriction(D2, Iw, [0, 1])}, name="D2⇒Iw")
        out["D2⇒T"] = levelwise(base, [T, D2], {"u": _restriction(D2, T, [0, 0])}, name="D2⇒T")
        out["∅⇒T"] = levelwise(base, [T, F["∅"]], {"u": _restriction(F["∅"], T, [])}, name="∅⇒T")
    elif base is INVOLUTION:
        for k in ("T", "D2", "Iw", "C2"):
            out[k] = fixtures(base)[k]
        swap_d2 = _restriction(D2, D2, [1, 0])
        swap_iw = _restriction(Iw, Iw, [1, 0])
        out["D2~"] = levelwise(base, [D2], {"t": swap_d2}, name="D2~")
        out["Iw~"] = levelwise(base, [Iw], {"t": swap_iw}, name="Iw~")
    else:
        raise InvalidCategory("no presheaf corpus for this index")
    return out


@lru_cache(maxsize=None)
def _presheaf_functors(base):
    gs = presheaf_groupoids(base)
    out = []
    for (a, X), (b, Y) in iproduct(gs.items(), gs.items()):
        for n, F in enumerate(functors(X, Y)):
            out.append((f"{a}→{b}#{n}", F))
    return tuple(out)


def presheaf_functor_corpus(base):
    return list(_presheaf_functors(base))


def non_complemented_mono(base=WALKING_ARROW):
    """An object-injective functor whose image has no sub-presheaf complement:
    the point at level 0 included into (one object at 1 over one at 0)."""
    F = fixtures(SETS)
    T, E = F["T"], F["∅"]
    A = levelwise(base, [T, E], {"u": _restriction(E, T, [])}, name="∅⇒T")
    B = fixtures(base)["T"]
    return next(functors(A, B))


def involution_quotient(base=INVOLUTION):
    """D2 with the swap action mapped to the point: split levelwise, but with no
    section compatible with the action."""
    X = presheaf_groupoids(base)["D2~"]
    return next(functors(X, fixtures(base)["T"]))



# -- squares between cloven isofibrations ------------------------------------------------------


def _small_fibrations(max_objects):
    from .model import is_isofibration
    out = []
    for name, f in functor_corpus():
        if f.src.ob.sizes[0] > max_objects:
            continue
        c = is_isofibration(f)
        if c is not None:
            out.append((name, c))
    return out


def cartesian_squares(n=25, seed=0, max_objects=2):
    """A seeded sample of substitution squares: a corpus isofibration pulled back
    along a corpus functor into its codomain. Entries are (label, square, cloven
    pullback)."""
    from .factorization import Square
    from .type_theory import pullback_cloven
    pairs = []
    for name, c in _small_fibrations(max_objects):
        for vname, v in functor_corpus():
            if v.tgt is c.f.tgt and v.src.ob.sizes[0] <= max_objects:
                pairs.append((name, c, vname, v))
    rng = random.Random(seed)
    chosen = rng.sample(pairs, min(n, len(pairs)))
    out = []
    for name, c, vname, v in chosen:
        pb = pullback_cloven(v, c)
        out.append((f"{name} along {vname}", Square(pb.f, c.f, pb.f.src.p1, v), pb))
    return out


def fold_squares(n=10, max_objects=2):
    """Commuting squares f∘fold -> f over the identity, X+X -> X on top; these are
    cartesian only when X is empty, so empty sources are skipped."""
    from .factorization import Square
    from .internal import compose_functors, coproduct_internal, identity_functor
    out = []
    for name, c in _small_fibrations(max_objects):
        X = c.f.src
        if X.ob.sizes[0] == 0:
            continue
        XX = coproduct_internal(X, X)
        fold = XX.copair(identity_functor(X), identity_functor(X))
        g = compose_functors(c.f, fold)
        out.append((f"fold over {name}", Square(g, c.f, fold, identity_functor(c.f.tgt))))
        if len(out) == n:
            break
    return out
