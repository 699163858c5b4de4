"""Brute-force oracles over plain tables, independent of the library's search,
CSP and construction code. They read only the raw data of a category or
functor (sizes, endpoints, composition, identities) at one level."""

from itertools import product


class Tables:
    """One level of an internal category as plain Python data."""

    def __init__(self, X, lv=0):
        self.n = X.ob.sizes[lv]
        self.m = X.ar.sizes[lv]
        self.src = [X.d1.maps[lv][a] for a in range(self.m)]
        self.tgt = [X.d0.maps[lv][a] for a in range(self.m)]
        self.ident = [X.i.maps[lv][x] for x in range(self.n)]
        self.comp = {}
        for f in range(self.m):
            for g in range(self.m):
                if self.tgt[f] == self.src[g]:
                    self.comp[(f, g)] = X._mul(lv, f, g)  # raw table, g after f

    def hom(self, x, y):
        return [a for a in range(self.m) if self.src[a] == x and self.tgt[a] == y]

    def inverse(self, a):
        for b in self.hom(self.tgt[a], self.src[a]):
            if self.comp[(a, b)] == self.ident[self.src[a]] and self.comp[(b, a)] == self.ident[self.tgt[a]]:
                return b
        return None

    def isos(self):
        return [a for a in range(self.m) if self.inverse(a) is not None]


def functor_tables(F, lv=0):
    return list(F.f0.maps[lv]), list(F.f1.maps[lv])


def brute_functors(X, Y):
    """All (f0, f1) satisfying the functor laws, by full enumeration."""
    A, B = Tables(X), Tables(Y)
    out = []
    for f0 in product(range(B.n), repeat=A.n):
        choices = [B.hom(f0[A.src[a]], f0[A.tgt[a]]) for a in range(A.m)]
        for f1 in product(*choices):
            if any(f1[A.ident[x]] != B.ident[f0[x]] for x in range(A.n)):
                continue
            if all(f1[h] == B.comp[(f1[f], f1[g])] for (f, g), h in A.comp.items()):
                out.append((f0, f1))
    return out


def is_isofibration(F):
    X, Y = Tables(F.src), Tables(F.tgt)
    f0, f1 = functor_tables(F)
    xisos = X.isos()
    for x in range(X.n):
        for g in Y.isos():
            if Y.src[g] != f0[x]:
                continue
            if not any(X.src[a] == x and f1[a] == g for a in xisos):
                return False
    return True


def is_fully_faithful(F):
    X, Y = Tables(F.src), Tables(F.tgt)
    f0, f1 = functor_tables(F)
    for x in range(X.n):
        for x2 in range(X.n):
            img = sorted(f1[a] for a in X.hom(x, x2))
            if img != sorted(Y.hom(f0[x], f0[x2])):
                return False
    return True


def is_eso(F):
    X, Y = Tables(F.src), Tables(F.tgt)
    f0, _ = functor_tables(F)
    isos = Y.isos()
    return all(any(Y.src[a] == f0[x] and Y.tgt[a] == y for x in range(X.n) for a in isos) for y in range(Y.n))


def is_weak_equivalence(F):
    return is_fully_faithful(F) and is_eso(F)


def is_trivial_fibration(F):
    f0, _ = functor_tables(F)
    return is_fully_faithful(F) and set(f0) == set(range(F.tgt.ob.sizes[0]))


def is_cofibration(F):
    f0, _ = functor_tables(F)
    return len(set(f0)) == len(f0)


def is_trivial_cofibration(F):
    return is_cofibration(F) and is_weak_equivalence(F)


def map_size(F):
    """|Map(f)_0| = number of (x, iso out of f x)."""
    X, Y = Tables(F.src), Tables(F.tgt)
    f0, _ = functor_tables(F)
    return sum(1 for x in range(X.n) for a in Y.isos() if Y.src[a] == f0[x])


def pair_tables(F, G):
    """Level-0 tables of the pullback category of F and G, as pairs."""
    A, B = Tables(F.src), Tables(G.src)
    F0, F1 = functor_tables(F)
    G0, G1 = functor_tables(G)
    obs = [(x, y) for x in range(A.n) for y in range(B.n) if F0[x] == G0[y]]
    ars = [(a, b) for a in range(A.m) for b in range(B.m) if F1[a] == G1[b]]
    return A, B, obs, ars


def path_object_size(F):
    """|P(f)_0| = |X_0| + |Map(Δ)_0| for the diagonal Δ: X -> X ×_Y X."""
    A, _, obs, ars = pair_tables(F, F)
    count = 0
    for x in range(A.n):
        for (a, b) in ars:
            # isos in X ×_Y X out of (x, x)
            if A.src[a] == x and A.src[b] == x and A.inverse(a) is not None and A.inverse(b) is not None:
                count += 1
    return A.n + count


def quasi_inverse_exists(F):
    """Some G with G∘F ≅ id and F∘G ≅ id, searching every functor G and every
    family of isomorphism components."""
    X, Y = Tables(F.src), Tables(F.tgt)
    f0, f1 = functor_tables(F)

    def nat_iso_exists(C, h0, h1):
        # C-endofunctor (h0, h1) naturally isomorphic to the identity
        choices = [[a for a in C.hom(h0[x], x) if C.inverse(a) is not None] for x in range(C.n)]
        for comp in product(*choices):
            if all(C.comp[(h1[a], comp[C.tgt[a]])] == C.comp[(comp[C.src[a]], a)] for a in range(C.m)):
                return True
        return False

    for g0, g1 in brute_functors(F.tgt, F.src):
        gf0 = [g0[f0[x]] for x in range(X.n)]
        gf1 = [g1[f1[a]] for a in range(X.m)]
        fg0 = [f0[g0[y]] for y in range(Y.n)]
        fg1 = [f1[g1[b]] for b in range(Y.m)]
        if nat_iso_exists(X, gf0, gf1) and nat_iso_exists(Y, fg0, fg1):
            return True
    return False


def sections_count(p, q):
    """Σ over objects y of the number of sections of q over the strict fibre of
    p at y (functors from the fibre into A lying over the inclusion)."""
    X, A = Tables(p.src), Tables(q.src)
    p0, p1 = functor_tables(p)
    q0, q1 = functor_tables(q)
    total = 0
    for y in range(p.tgt.ob.sizes[0]):
        idy = p.tgt.i.maps[0][y]
        objs = [x for x in range(X.n) if p0[x] == y]
        vert = [h for h in range(X.m) if p1[h] == idy]
        ochoice = [[a for a in range(A.n) if q0[a] == x] for x in objs]
        for so in product(*ochoice):
            s = dict(zip(objs, so))
            achoice = [[k for k in A.hom(s[X.src[h]], s[X.tgt[h]]) if q1[k] == h] for h in vert]
            for sa in product(*achoice):
                t = dict(zip(vert, sa))
                ok = all(t[X.ident[x]] == A.ident[s[x]] for x in objs)
                ok = ok and all(t[X.comp[(f, g)]] == A.comp[(t[f], t[g])]
                                for f in vert for g in vert if X.tgt[f] == X.src[g])
                total += ok
    return total


def hom_over(B, Xc, b, x_map):
    """Number of functors G: B -> Xc with x_map∘G = b (counting by brute force)."""
    n = 0
    b0, b1 = functor_tables(b)
    m0, m1 = functor_tables(x_map)
    for g0, g1 in brute_functors(B, Xc):
        if all(m0[g0[i]] == b0[i] for i in range(len(g0))) and all(m1[g1[i]] == b1[i] for i in range(len(g1))):
            n += 1
    return n
