"""Named finite categories: the generating shapes and the small groupoids used
as fixtures."""

from itertools import product as iproduct

from .base import FiniteCategory, category_from_arrows

EMPTY = FiniteCategory([], {}, {}, {}, name="∅")
ONE = category_from_arrows(["•"], {}, identities={"•": "id"}, name="1")
TWO = category_from_arrows(["0", "1"], {"u": ("0", "1")}, name="2")
ONE_PLUS_ONE = category_from_arrows(["0", "1"], {}, name="1+1")
PARALLEL = category_from_arrows(["0", "1"], {"u": ("0", "1"), "v": ("0", "1")}, name="P")
WALKING_ISO = category_from_arrows(
    ["0", "1"], {"u": ("0", "1"), "v": ("1", "0")},
    {("u", "v"): "id_1", ("v", "u"): "id_0"}, name="I")
Z2 = category_from_arrows(["•"], {"t": ("•", "•")}, {("t", "t"): "id"}, identities={"•": "id"}, name="C2")


def thin_groupoid(blocks, name=None):
    """The groupoid with exactly one arrow x -> y whenever x, y share a block."""
    objects = [x for blk in blocks for x in blk]
    block_of = {x: n for n, blk in enumerate(blocks) for x in blk}
    arrows = {}
    identities = {}
    for x in objects:
        identities[x] = f"id_{x}"
    for x, y in iproduct(objects, objects):
        if x != y and block_of[x] == block_of[y]:
            arrows[f"{x}>{y}"] = (x, y)

    def name_of(x, y):
        return identities[x] if x == y else f"{x}>{y}"

    comp = {}
    for x, y, z in iproduct(objects, objects, objects):
        if block_of[x] == block_of[y] == block_of[z]:
            comp[(name_of(y, z), name_of(x, y))] = name_of(x, z)
    return category_from_arrows(objects, arrows, comp, identities=identities, name=name)


def discrete_category(objects, name=None):
    return category_from_arrows(list(objects), {}, name=name)


def coproduct_category(C, D, name=None):
    """Disjoint union; labels prefixed by l/ and r/."""
    objs = [f"l/{o}" for o in C.objects] + [f"r/{o}" for o in D.objects]
    arrows, ids, comp = {}, {}, {}
    for tag, K in (("l", C), ("r", D)):
        for a in K.arrows:
            arrows[f"{tag}/{a}"] = (f"{tag}/{K.src[a]}", f"{tag}/{K.tgt[a]}")
        for o in K.objects:
            ids[f"{tag}/{o}"] = f"{tag}/{K.identities[o]}"
        for (g, f), h in K.comp.items():
            comp[(f"{tag}/{g}", f"{tag}/{f}")] = f"{tag}/{h}"
    return FiniteCategory(objs, arrows, ids, comp, name=name)
