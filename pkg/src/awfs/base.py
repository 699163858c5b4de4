"""Ambient base categories: finite sets and finite presheaves over a finite index.

Finite sets are treated as presheaves over the one-object index with only the
identity, so every construction is written once, levelwise.  Elements are ints
(positions in a carrier); labels are strings built lazily from the canonical
schemes "(x,y)", "l/x", "r/y".
"""

from __future__ import annotations

from dataclasses import dataclass

from .csp import CSP
from .errors import ConeMismatch, DomainMismatch, InvalidCategory


class FiniteCategory:
    """A finite category given by explicit tables.

    ``arrows`` maps arrow name -> (source, target); ``composition`` maps
    (g, f) -> g∘f for every pair with target(f) = source(g).
    """

    def __init__(self, objects, arrows, identities, composition, name=None):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.src = {a: arrows[a][0] for a in arrows}
        self.tgt = {a: arrows[a][1] for a in arrows}
        self.identities = dict(identities)
        self.comp = {tuple(k): v for k, v in dict(composition).items()}
        self.obj_pos = {o: n for n, o in enumerate(self.objects)}
        self.arr_pos = {a: n for n, a in enumerate(self.arrows)}

    def key(self):
        return (self.objects, self.arrows, tuple(sorted(self.src.items())),
                tuple(sorted(self.tgt.items())), tuple(sorted(self.identities.items())),
                tuple(sorted(self.comp.items())))

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FiniteCategory({self.name or len(self.objects)})"

    def hom(self, a, b):
        return [u for u in self.arrows if self.src[u] == a and self.tgt[u] == b]

    def violations(self):
        out = []
        if len(set(self.objects)) != len(self.objects):
            out.append("objects: duplicate labels")
        if len(set(self.arrows)) != len(self.arrows):
            out.append("arrows: duplicate labels")
        for a in self.arrows:
            if self.src[a] not in self.obj_pos or self.tgt[a] not in self.obj_pos:
                out.append(f"arrows: {a} has an unknown endpoint")
        for o in self.objects:
            i = self.identities.get(o)
            if i not in self.src or self.src[i] != o or self.tgt[i] != o:
                out.append(f"identity: bad identity for {o}")
        for (g, f), h in self.comp.items():
            if g not in self.src or f not in self.src or h not in self.src:
                out.append(f"composition: unknown arrow in ({g},{f})")
            elif self.tgt[f] != self.src[g]:
                out.append(f"composition: ({g},{f}) not composable")
            elif (self.src[h], self.tgt[h]) != (self.src[f], self.tgt[g]):
                out.append(f"composition: {g}∘{f} has wrong endpoints")
        if out:
            return out
        for f in self.arrows:
            for g in self.arrows:
                if self.tgt[f] == self.src[g] and (g, f) not in self.comp:
                    out.append(f"composition: missing {g}∘{f}")
        if out:
            return out
        for f in self.arrows:
            if self.comp[(self.identities[self.tgt[f]], f)] != f or \
                    self.comp[(f, self.identities[self.src[f]])] != f:
                out.append(f"unit: fails at {f}")
        for f in self.arrows:
            for g in self.arrows:
                if self.tgt[f] != self.src[g]:
                    continue
                for h in self.arrows:
                    if self.tgt[g] != self.src[h]:
                        continue
                    if self.comp[(h, self.comp[(g, f)])] != self.comp[(self.comp[(h, g)], f)]:
                        out.append(f"associativity: fails at ({h},{g},{f})")
        return out

    def validate(self):
        v = self.violations()
        if v:
            raise InvalidCategory("; ".join(v))
        return self


def category_from_arrows(objects, arrows, composition=None, identities=None, name=None):
    """Convenience constructor: identities default to ``id_<obj>`` entries and
    composites with identities are filled in automatically."""
    arrows = dict(arrows)
    identities = dict(identities or {})
    for o in objects:
        if o not in identities:
            identities[o] = f"id_{o}"
    for o, i in identities.items():
        arrows.setdefault(i, (o, o))
    # identities first keeps enumeration orders stable
    order = [identities[o] for o in objects] + [a for a in arrows if a not in identities.values()]
    arrows = {a: arrows[a] for a in order}
    comp = dict(composition or {})
    for f, (s, t) in arrows.items():
        comp[(identities[t], f)] = f
        comp[(f, identities[s])] = f
    return FiniteCategory(objects, arrows, identities, comp, name=name)


POINT = category_from_arrows(["*"], {}, identities={"*": "id"}, name="point")


class Base:
    """Finite sets (``index=None``) or finite presheaves over ``index``."""

    def __init__(self, index: FiniteCategory | None = None):
        if index is not None:
            index.validate()
        self.index = index if index is not None else POINT
        self.kind = "finite-sets" if index is None else "finite-presheaves"
        ix = self.index
        self.nlevels = len(ix.objects)
        # (arrow position, source level, target level) for non-identity arrows
        idents = set(ix.identities.values())
        self.ends = [(k, ix.obj_pos[ix.src[a]], ix.obj_pos[ix.tgt[a]])
                     for k, a in enumerate(ix.arrows)]
        self.proper = [e for e in self.ends if ix.arrows[e[0]] not in idents]
        self._terminal = None

    def __eq__(self, other):
        return isinstance(other, Base) and self.kind == other.kind and self.index == other.index

    def __hash__(self):
        return hash((self.kind, self.index))

    def __repr__(self):
        if self.kind == "finite-sets":
            return "Base(finite-sets)"
        return f"Base(finite-presheaves over {self.index!r})"

    @property
    def levels(self):
        return range(self.nlevels)

    # -- construction from labels ------------------------------------------------

    def make_object(self, levels, restrictions=None):
        """``levels``: label list (finite sets) or one label list per index object.
        ``restrictions``: index-arrow name -> {label: label}, identities implied."""
        if self.kind == "finite-sets" and (not levels or isinstance(levels[0], str)):
            levels = [levels]
        if isinstance(levels, dict):
            levels = [levels[o] for o in self.index.objects]
        labels = tuple(tuple(str(x) for x in lv) for lv in levels)
        if len(labels) != self.nlevels:
            raise DomainMismatch("wrong number of levels")
        pos = [{x: n for n, x in enumerate(lv)} for lv in labels]
        restr = []
        restrictions = restrictions or {}
        for k, c, d in self.ends:
            name = self.index.arrows[k]
            if c == d and self.index.identities[self.index.objects[c]] == name:
                restr.append(tuple(range(len(labels[d]))))
                continue
            table = restrictions.get(name)
            if table is None:
                raise DomainMismatch(f"missing restriction along {name}")
            try:
                restr.append(tuple(pos[c][str(table[x])] for x in labels[d]))
            except KeyError as e:
                raise DomainMismatch(f"restriction along {name}: unknown label {e}") from None
        obj = Obj(self, tuple(len(lv) for lv in labels), tuple(restr), labels=labels)
        v = object_violations(obj)
        if v:
            raise DomainMismatch("; ".join(v))
        return obj

    def make_morphism(self, dom, cod, tables):
        if isinstance(tables, dict) and self.kind == "finite-sets" and \
                not (set(tables) <= set(self.index.objects) and tables and
                     all(isinstance(t, dict) for t in tables.values())):
            tables = [tables]
        if isinstance(tables, dict):
            tables = [tables[o] for o in self.index.objects]
        maps = []
        for lv in self.levels:
            cpos = cod.positions(lv)
            try:
                maps.append(tuple(cpos[str(tables[lv][x])] for x in dom.labels[lv]))
            except KeyError as e:
                raise DomainMismatch(f"morphism table: unassigned or unknown label {e}") from None
        m = Mor(dom, cod, tuple(maps))
        if not is_natural(m):
            raise DomainMismatch(_naturality_message(m))
        return m

    # -- basic objects -------------------------------------------------------------

    def raw(self, sizes, restr, labels=None, labeler=None):
        return Obj(self, tuple(sizes), tuple(restr), labels=labels, labeler=labeler)

    def initial(self):
        return self.raw([0] * self.nlevels, [() for _ in self.ends], labels=tuple(() for _ in self.levels))

    def terminal(self):
        if self._terminal is None:
            self._terminal = self.raw([1] * self.nlevels, [(0,) for _ in self.ends],
                                      labels=tuple(("*",) for _ in self.levels))
        return self._terminal

    def copower(self, labels):
        """The constant presheaf S·1 on a label list."""
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        return self.raw([n] * self.nlevels, [tuple(range(n)) for _ in self.ends],
                        labels=tuple(labels for _ in self.levels))

    def representable(self, c):
        """y(c): level d holds the index arrows d -> c."""
        ix = self.index
        target = ix.objects[c]
        homs = [[a for a in ix.arrows if ix.tgt[a] == target and ix.src[a] == o] for o in ix.objects]
        pos = [{a: n for n, a in enumerate(h)} for h in homs]
        restr = []
        for k, cc, d in self.ends:
            u = ix.arrows[k]
            restr.append(tuple(pos[cc][ix.comp[(a, u)]] for a in homs[d]))
        return self.raw([len(h) for h in homs], restr, labels=tuple(tuple(h) for h in homs))

    # -- morphisms --------------------------------------------------------------------

    def identity(self, A):
        return Mor(A, A, tuple(tuple(range(n)) for n in A.sizes))

    def compose(self, g, f):
        if f.cod is not g.dom and f.cod != g.dom:
            raise DomainMismatch("compose: codomain of f differs from domain of g")
        return Mor(f.dom, g.cod, tuple(tuple(gm[x] for x in fm) for gm, fm in zip(g.maps, f.maps)))

    def tabulate(self, dom, cod, fn, check=True):
        """Morphism from an elementwise rule ``fn(level, i) -> j``."""
        m = Mor(dom, cod, tuple(tuple(fn(lv, i) for i in range(dom.sizes[lv])) for lv in self.levels))
        if check:
            for lv, row in enumerate(m.maps):
                n = cod.sizes[lv]
                for j in row:
                    if j is None or not 0 <= j < n:
                        raise DomainMismatch("tabulate: value outside the codomain")
            if not is_natural(m):
                raise DomainMismatch(_naturality_message(m))
        return m

    def constant(self, dom, cod, j):
        return self.tabulate(dom, cod, lambda lv, i: j[lv] if isinstance(j, (list, tuple)) else j)

    def equal_morphisms(self, f, g):
        if not (f.dom == g.dom and f.cod == g.cod):
            raise DomainMismatch("equal_morphisms: carriers differ")
        return f.maps == g.maps

    def invert(self, f):
        inv = []
        for lv, row in enumerate(f.maps):
            if len(set(row)) != len(row) or len(row) != f.cod.sizes[lv]:
                return None
            r = [0] * len(row)
            for i, j in enumerate(row):
                r[j] = i
            inv.append(tuple(r))
        return Mor(f.cod, f.dom, tuple(inv))

    # -- limits ------------------------------------------------------------------------

    def product(self, A, B):
        return Product(self, A, B)

    def product_map(self, f, g, P=None, Q=None):
        """f × g between the given (or fresh) products."""
        P = P or self.product(f.dom, g.dom)
        Q = Q or self.product(f.cod, g.cod)
        return Q.pair(self.compose(f, P.p1), self.compose(g, P.p2))

    def pullback(self, f, g):
        return Pullback(self, f, g)

    def subobject(self, A, keep):
        return Subobject(self, A, keep)

    # -- colimits ----------------------------------------------------------------------

    def coproduct(self, A, B):
        return Coproduct(self, A, B)

    def coproduct_map(self, f, g, S=None, T=None):
        S = S or self.coproduct(f.dom, g.dom)
        T = T or self.coproduct(f.cod, g.cod)
        return S.copair(self.compose(T.i1, f), self.compose(T.i2, g))

    def coequalizer(self, f, g):
        return Coequalizer(self, f, g)

    def pushout(self, f, g):
        return Pushout(self, f, g)

    # -- exponentials ------------------------------------------------------------------

    def exponential(self, A, B):
        return Exponential(self, A, B)

    # -- split epis and complemented inclusions --------------------------------------

    def is_split_epi(self, f):
        """A section s with f∘s = id, or None.  Least-label preimages for finite
        sets; first natural section in enumeration order for presheaves."""
        A, B = f.dom, f.cod
        cands = []
        for lv in self.levels:
            pre = [[] for _ in range(B.sizes[lv])]
            for i, j in enumerate(f.maps[lv]):
                pre[j].append(i)
            labels = A.labels[lv]
            for p in pre:
                if not p:
                    return None
                p.sort(key=lambda i: labels[i])
            cands.append(pre)
        if not self.proper:
            return Mor(B, A, tuple(tuple(p[0] for p in pre) for pre in cands))
        for s in natural_maps(B, A, cands):
            return s
        return None

    def complemented_decomposition(self, f):
        A, B = f.dom, f.cod
        image = []
        for lv in self.levels:
            row = f.maps[lv]
            if len(set(row)) != len(row):
                return None
            image.append(set(row))
        for k, c, d in self.proper:
            r = B.restr[k]
            for y in range(B.sizes[d]):
                if y not in image[d] and r[y] in image[c]:
                    return None
        sub = self.subobject(B, lambda lv, y: y not in image[lv])
        cop = self.coproduct(A, sub.obj)
        j = cop.copair(f, sub.incl)
        inv = self.invert(j)
        assert inv is not None
        return Decomposition(f, sub.obj, j, sub.incl, cop, inv)


# ---------------------------------------------------------------------------------------


class Obj:
    """A finite presheaf: per-level sizes, restriction tables, lazy labels."""

    __slots__ = ("base", "sizes", "restr", "_labels", "_labeler", "_pos")

    def __init__(self, base, sizes, restr, labels=None, labeler=None):
        self.base = base
        self.sizes = sizes
        self.restr = restr
        self._labels = labels
        self._labeler = labeler
        self._pos = None

    @property
    def labels(self):
        if self._labels is None:
            self._labels = tuple(tuple(lv) for lv in self._labeler())
            self._labeler = None
        return self._labels

    def positions(self, lv):
        if self._pos is None:
            self._pos = [None] * len(self.sizes)
        if self._pos[lv] is None:
            self._pos[lv] = {x: n for n, x in enumerate(self.labels[lv])}
        return self._pos[lv]

    def index_of(self, label, lv=0):
        return self.positions(lv)[label]

    def elements(self):
        for lv, n in enumerate(self.sizes):
            for i in range(n):
                yield lv, i

    def size(self):
        return sum(self.sizes)

    def __len__(self):
        return sum(self.sizes)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Obj):
            return NotImplemented
        return (self.sizes == other.sizes and self.restr == other.restr
                and self.base == other.base and self.labels == other.labels)

    def __hash__(self):
        return hash((self.sizes, self.restr))

    def __repr__(self):
        if self.base.nlevels == 1:
            lab = self.labels[0]
            shown = ", ".join(lab[:6]) + (", ..." if len(lab) > 6 else "")
            return f"Obj{{{shown}}}"
        return f"Obj(sizes={self.sizes})"


class Mor:
    __slots__ = ("dom", "cod", "maps")

    def __init__(self, dom, cod, maps):
        self.dom = dom
        self.cod = cod
        self.maps = maps

    def __call__(self, lv, i):
        return self.maps[lv][i]

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        return self.maps == other.maps and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash(self.maps)

    def __repr__(self):
        if self.dom.base.nlevels == 1 and self.dom.sizes[0] <= 8:
            d, c = self.dom.labels[0], self.cod.labels[0]
            return "Mor(" + ", ".join(f"{d[i]}↦{c[j]}" for i, j in enumerate(self.maps[0])) + ")"
        return f"Mor({self.dom.sizes}→{self.cod.sizes})"

    def table(self, lv=0):
        d, c = self.dom.labels[lv], self.cod.labels[lv]
        return {d[i]: c[j] for i, j in enumerate(self.maps[lv])}

    def is_identity(self):
        return all(row == tuple(range(len(row))) for row in self.maps)


def object_violations(A):
    out = []
    base = A.base
    for lv, lab in enumerate(A.labels):
        if len(set(lab)) != len(lab):
            out.append(f"labels: duplicates at level {base.index.objects[lv]}")
    ix = base.index
    for k, c, d in base.ends:
        r = A.restr[k]
        if len(r) != A.sizes[d] or any(not 0 <= x < A.sizes[c] for x in r):
            out.append(f"restriction: {ix.arrows[k]} is not a function")
            return out
    for k, c, d in base.ends:
        if ix.identities[ix.objects[c]] == ix.arrows[k] and A.restr[k] != tuple(range(A.sizes[c])):
            out.append(f"functoriality: identity {ix.arrows[k]} restricts non-trivially")
    for (g, f), h in ix.comp.items():
        rf, rg, rh = (A.restr[ix.arr_pos[a]] for a in (f, g, h))
        if any(rh[x] != rf[rg[x]] for x in range(len(rh))):
            out.append(f"functoriality: restriction along {g}∘{f}")
    return out


def naturality_failure(m):
    """(arrow name, element label) where m fails to commute with restriction, or None."""
    A, B = m.dom, m.cod
    for k, c, d in A.base.proper:
        ra, rb = A.restr[k], B.restr[k]
        mc, md = m.maps[c], m.maps[d]
        for x in range(A.sizes[d]):
            if mc[ra[x]] != rb[md[x]]:
                return A.base.index.arrows[k], A.labels[d][x]
    return None


def is_natural(m):
    return naturality_failure(m) is None


def _naturality_message(m):
    k, x = naturality_failure(m)
    return f"naturality fails along {k} at {x}"


def morphism_violations(m):
    out = []
    for lv in m.dom.base.levels:
        row = m.maps[lv]
        if len(row) != m.dom.sizes[lv] or any(not 0 <= j < m.cod.sizes[lv] for j in row):
            out.append("assignment: not a total function")
            return out
    if not is_natural(m):
        out.append(_naturality_message(m))
    return out


def natural_maps(dom, cod, candidates=None):
    """Enumerate natural maps dom -> cod, values restricted to ``candidates``
    (per level, per element, in the given order).  Yields Mor values lazily."""
    base = dom.base
    offs, n = [], 0
    for lv in base.levels:
        offs.append(n)
        n += dom.sizes[lv]
    cands = []
    for lv in base.levels:
        for i in range(dom.sizes[lv]):
            cands.append(candidates[lv][i] if candidates is not None else range(cod.sizes[lv]))
    csp = CSP(cands)
    for k, c, d in base.proper:
        rd, rc = dom.restr[k], cod.restr[k]
        for x in range(dom.sizes[d]):
            csp.eq(offs[d] + x, offs[c] + rd[x], rc.__getitem__)
    for sol in csp.solutions():
        yield Mor(dom, cod, tuple(tuple(sol[offs[lv]:offs[lv] + dom.sizes[lv]]) for lv in base.levels))


# -- universal constructions -------------------------------------------------------------


class Product:
    def __init__(self, base, A, B):
        self.base, self.A, self.B = base, A, B
        nb = B.sizes
        restr = []
        for k, c, d in base.ends:
            ra, rb, m = A.restr[k], B.restr[k], nb[c]
            restr.append(tuple(ra[i] * m + rb[j] for i in range(A.sizes[d]) for j in range(nb[d])))

        def labeler():
            return [[f"({x},{y})" for x in A.labels[lv] for y in B.labels[lv]] for lv in base.levels]

        self.obj = base.raw([a * b for a, b in zip(A.sizes, nb)], restr, labeler=labeler)
        self.p1 = Mor(self.obj, A, tuple(tuple(k // nb[lv] for k in range(self.obj.sizes[lv])) for lv in base.levels))
        self.p2 = Mor(self.obj, B, tuple(tuple(k % nb[lv] for k in range(self.obj.sizes[lv])) for lv in base.levels))

    def index(self, lv, i, j):
        return i * self.B.sizes[lv] + j

    def split(self, lv, k):
        return divmod(k, self.B.sizes[lv])

    def pair(self, f, g):
        if f.dom != g.dom or f.cod != self.A or g.cod != self.B:
            raise DomainMismatch("pair: legs do not match the product")
        nb = self.B.sizes
        return Mor(f.dom, self.obj, tuple(tuple(a * nb[lv] + b for a, b in zip(f.maps[lv], g.maps[lv]))
                                          for lv in self.base.levels))

    def __iter__(self):
        return iter((self.obj, self.p1, self.p2))


class Pullback:
    """Pullback of f: A -> C and g: B -> C; elements are pairs (x, y) with
    f(x) = g(y) in lexicographic order."""

    def __init__(self, base, f, g):
        if f.cod != g.cod:
            raise DomainMismatch("pullback: legs have different codomains")
        self.base, self.f, self.g = base, f, g
        A, B = f.dom, g.dom
        self.A, self.B = A, B
        pairs, index = [], []
        for lv in base.levels:
            byval = {}
            for j, v in enumerate(g.maps[lv]):
                byval.setdefault(v, []).append(j)
            ps = [(i, j) for i, v in enumerate(f.maps[lv]) for j in byval.get(v, ())]
            pairs.append(ps)
            index.append({p: n for n, p in enumerate(ps)})
        self.pairs, self._index = pairs, index
        restr = []
        for k, c, d in base.ends:
            ra, rb, ic = A.restr[k], B.restr[k], index[c]
            restr.append(tuple(ic[(ra[i], rb[j])] for i, j in pairs[d]))

        def labeler():
            return [[f"({A.labels[lv][i]},{B.labels[lv][j]})" for i, j in pairs[lv]] for lv in base.levels]

        self.obj = base.raw([len(p) for p in pairs], restr, labeler=labeler)
        self.p1 = Mor(self.obj, A, tuple(tuple(i for i, _ in p) for p in pairs))
        self.p2 = Mor(self.obj, B, tuple(tuple(j for _, j in p) for p in pairs))

    def lookup(self, lv, i, j):
        return self._index[lv].get((i, j))

    def mediate(self, h1, h2):
        if h1.dom != h2.dom or h1.cod != self.A or h2.cod != self.B:
            raise ConeMismatch("mediate: legs do not match the pullback")
        rows = []
        for lv in self.base.levels:
            ix = self._index[lv]
            row = []
            for a, b in zip(h1.maps[lv], h2.maps[lv]):
                k = ix.get((a, b))
                if k is None:
                    raise ConeMismatch("mediate: cone does not commute")
                row.append(k)
            rows.append(tuple(row))
        return Mor(h1.dom, self.obj, tuple(rows))

    def __iter__(self):
        return iter((self.obj, self.p1, self.p2))


class Subobject:
    def __init__(self, base, A, keep):
        self.base, self.A = base, A
        kept = [[i for i in range(A.sizes[lv]) if keep(lv, i)] for lv in base.levels]
        pos = [{i: n for n, i in enumerate(k)} for k in kept]
        restr = []
        for k, c, d in base.ends:
            r = A.restr[k]
            try:
                restr.append(tuple(pos[c][r[i]] for i in kept[d]))
            except KeyError:
                raise DomainMismatch("subobject: not closed under restriction") from None

        def labeler():
            return [[A.labels[lv][i] for i in kept[lv]] for lv in base.levels]

        self.kept, self.pos = kept, pos
        self.obj = base.raw([len(k) for k in kept], restr, labeler=labeler)
        self.incl = Mor(self.obj, A, tuple(tuple(k) for k in kept))

    def restrict(self, f):
        """Corestrict f: Z -> A through the subobject."""
        return Mor(f.dom, self.obj, tuple(tuple(self.pos[lv][j] for j in f.maps[lv]) for lv in self.base.levels))


class Coproduct:
    def __init__(self, base, A, B):
        self.base, self.A, self.B = base, A, B
        na = A.sizes
        restr = []
        for k, c, d in base.ends:
            restr.append(tuple(A.restr[k]) + tuple(na[c] + j for j in B.restr[k]))

        def labeler():
            return [[f"l/{x}" for x in A.labels[lv]] + [f"r/{y}" for y in B.labels[lv]] for lv in base.levels]

        self.obj = base.raw([a + b for a, b in zip(na, B.sizes)], restr, labeler=labeler)
        self.i1 = Mor(A, self.obj, tuple(tuple(range(n)) for n in na))
        self.i2 = Mor(B, self.obj, tuple(tuple(range(na[lv], na[lv] + B.sizes[lv])) for lv in base.levels))

    def left(self, lv, i):
        return i

    def right(self, lv, j):
        return self.A.sizes[lv] + j

    def which(self, lv, k):
        """('l', i) or ('r', j)."""
        na = self.A.sizes[lv]
        return ("l", k) if k < na else ("r", k - na)

    def copair(self, f, g):
        if f.cod != g.cod or f.dom != self.A or g.dom != self.B:
            raise DomainMismatch("copair: legs do not match the coproduct")
        return Mor(self.obj, f.cod, tuple(f.maps[lv] + g.maps[lv] for lv in self.base.levels))

    def __iter__(self):
        return iter((self.obj, self.i1, self.i2))


class Coequalizer:
    def __init__(self, base, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            raise DomainMismatch("coequalizer: not a parallel pair")
        self.base = base
        B = f.cod
        self.B = B
        cls = []
        for lv in base.levels:
            parent = list(range(B.sizes[lv]))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in zip(f.maps[lv], g.maps[lv]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            roots = [find(x) for x in range(B.sizes[lv])]
            order = sorted(set(roots))
            rank = {r: n for n, r in enumerate(order)}
            cls.append(tuple(rank[r] for r in roots))
        self.q_maps = tuple(cls)
        sizes = [max(c) + 1 if c else 0 for c in cls]
        restr = []
        for k, c, d in base.ends:
            t = [None] * sizes[d]
            for y in range(B.sizes[d]):
                t[cls[d][y]] = cls[c][B.restr[k][y]]
            restr.append(tuple(t))

        def labeler():
            out = []
            for lv in base.levels:
                lab = [None] * sizes[lv]
                for y, q in enumerate(cls[lv]):
                    x = B.labels[lv][y]
                    if lab[q] is None or x < lab[q]:
                        lab[q] = x
                out.append(lab)
            return out

        self.obj = base.raw(sizes, restr, labeler=labeler)
        self.q = Mor(B, self.obj, self.q_maps)

    def comediate(self, h):
        rows = []
        for lv in self.base.levels:
            row = [None] * self.obj.sizes[lv]
            for y, q in enumerate(self.q_maps[lv]):
                v = h.maps[lv][y]
                if row[q] is None:
                    row[q] = v
                elif row[q] != v:
                    raise ConeMismatch("comediate: map does not coequalize")
            rows.append(tuple(row))
        return Mor(self.obj, h.cod, tuple(rows))


class Pushout:
    def __init__(self, base, f, g):
        if f.dom != g.dom:
            raise DomainMismatch("pushout: legs have different domains")
        self.base = base
        self.sum = base.coproduct(f.cod, g.cod)
        self.coeq = base.coequalizer(base.compose(self.sum.i1, f), base.compose(self.sum.i2, g))
        self.obj = self.coeq.obj
        self.inj1 = base.compose(self.coeq.q, self.sum.i1)
        self.inj2 = base.compose(self.coeq.q, self.sum.i2)

    def comediate(self, h1, h2):
        return self.coeq.comediate(self.sum.copair(h1, h2))


class Exponential:
    """B^A: at level c, natural maps y(c) × A -> B; carrier sorted by label."""

    def __init__(self, base, A, B):
        self.base, self.A, self.B = base, A, B
        self.reps, self.prods, self.tables, self.pos = [], [], [], []
        for c in base.levels:
            Y = base.representable(c)
            P = base.product(Y, A)
            fams = list(natural_maps(P.obj, B))
            labelled = sorted(((self._label(P, m), m.maps) for m in fams))
            self.reps.append(Y)
            self.prods.append(P)
            self.tables.append([t for _, t in labelled])
            self.pos.append({t: n for n, (_, t) in enumerate(labelled)})
        restr = []
        ix = base.index
        for k, c, d in base.ends:
            w = ix.arrows[k]
            row = []
            for theta in self.tables[d]:
                new = []
                for e in base.levels:
                    Yc, Yd = self.reps[c], self.reps[d]
                    na = A.sizes[e]
                    ent = []
                    for ui, u in enumerate(Yc.labels[e]):
                        ud = Yd.index_of(ix.comp[(w, u)], e)
                        for a in range(na):
                            ent.append(theta[e][ud * na + a])
                    new.append(tuple(ent))
                row.append(self.pos[c][tuple(new)])
            restr.append(tuple(row))
        self.obj = base.raw([len(t) for t in self.tables], restr,
                            labels=tuple(tuple(self._label(self.prods[c], Mor(None, None, t)) for t in self.tables[c])
                                         for c in base.levels))
        self.product = base.product(self.obj, A)
        ev = []
        for c in base.levels:
            idc = self.reps[c].index_of(ix.identities[ix.objects[c]], c)
            na = A.sizes[c]
            ev.append(tuple(self.tables[c][t][c][idc * na + a] for t in range(self.obj.sizes[c]) for a in range(na)))
        self.eval = Mor(self.product.obj, B, tuple(ev))

    def _label(self, P, m):
        base, A, B = self.base, self.A, self.B
        if base.kind == "finite-sets":
            return "{" + ",".join(f"{A.labels[0][a]}:{B.labels[0][b]}" for a, b in enumerate(m.maps[0])) + "}"
        parts = []
        for e in base.levels:
            for k, b in enumerate(m.maps[e]):
                parts.append(f"{P.obj.labels[e][k]}:{B.labels[e][b]}")
        return "{" + ";".join(parts) + "}"

    def curry(self, h, Z):
        """Transpose of h: Z × A -> B, where h's domain is product(Z, A)."""
        base, A = self.base, self.A
        if h.dom != base.product(Z, A).obj or h.cod != self.B:
            raise DomainMismatch("curry: h must have domain Z × A and codomain B")
        ix = base.index
        rows = []
        for c in base.levels:
            row = []
            Y = self.reps[c]
            for z in range(Z.sizes[c]):
                theta = []
                for e in base.levels:
                    na = A.sizes[e]
                    ent = []
                    for u in Y.labels[e]:
                        ze = Z.restr[ix.arr_pos[u]][z]
                        for a in range(na):
                            ent.append(h.maps[e][ze * na + a])
                    theta.append(tuple(ent))
                row.append(self.pos[c][tuple(theta)])
            rows.append(tuple(row))
        return Mor(Z, self.obj, tuple(rows))


@dataclass(frozen=True, eq=False)
class Decomposition:
    """f: A -> B exhibited as a coproduct injection A -> A + C ≅ B."""

    f: Mor
    complement: Obj
    witness: Mor  # j: A + C -> B
    incl: Mor  # C -> B
    coproduct: Coproduct
    inverse: Mor

    def violations(self):
        base = self.f.dom.base
        out = []
        if self.witness.dom != self.coproduct.obj or self.witness.cod != self.f.cod:
            out.append("decomposition: witness has wrong carriers")
            return out
        out += morphism_violations(self.witness)
        if base.invert(self.witness) is None:
            out.append("decomposition: witness not invertible")
        if base.compose(self.witness, self.coproduct.i1).maps != self.f.maps:
            out.append("decomposition: witness does not restrict to f")
        return out

    def in_complement(self, lv, y):
        return self.inverse.maps[lv][y] >= self.f.dom.sizes[lv]

    def preimage(self, lv, y):
        k = self.inverse.maps[lv][y]
        return k if k < self.f.dom.sizes[lv] else None
