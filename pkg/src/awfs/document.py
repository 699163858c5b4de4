"""JSON document format: a base, named internal categories, functors and
structures, all given by explicit labels.

Finite-sets documents give each table directly; presheaf documents key every
table by index object and add restriction tables per index arrow. Composition
is a list of triples [g, f, g∘f]; composites with identities are implied.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebras import (AlgCompInclObj, AlgSplitEpiEq, AlgTrivCofibration, ClovenIsofibration,
                       cleavage_domain, decomposition_from_complement, validate_structure)
from .base import Base, category_from_arrows
from .errors import AwfsError, DomainMismatch, ParseError, ValidationError
from .internal import (InternalFunctor, InternalNatIso, compose_functors, from_tables, functor_violations,
                       identity_functor, validate_internal_category)
from .shapes import TWO, Z2

NAMED_INDEXES = {"walking-arrow": TWO, "involution": Z2}
STRUCTURE_KINDS = ("cloven-isofibration", "trivial-cofibration", "split-epi-equivalence",
                   "complemented-inclusion")


@dataclass
class Document:
    base: Base
    base_spec: object
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    structures: dict = field(default_factory=dict)
    refs: dict = field(default_factory=dict)  # structure name -> referenced item names

    def category_name(self, X):
        for k, v in self.categories.items():
            if v is X:
                return k
        return None


# -- helpers ------------------------------------------------------------------------------------


def _need(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise ValidationError("reference", f"{where}: missing field {key!r}")
    return d[key]


def _per_level(base, value, where):
    """One entry per index object; finite-sets documents give the entry bare."""
    if base.kind == "finite-sets":
        return [value]
    if not isinstance(value, dict):
        raise ValidationError("reference", f"{where}: expected a table keyed by index object")
    try:
        return [value[o] for o in base.index.objects]
    except KeyError as e:
        raise ValidationError("reference", f"{where}: no entry for index object {e}") from None


def _pack(base, per_level):
    if base.kind == "finite-sets":
        return per_level[0]
    return {o: v for o, v in zip(base.index.objects, per_level)}


def _parse_base(spec):
    if spec in (None, "finite-sets"):
        return Base()
    if isinstance(spec, dict) and "index" in spec:
        ix = spec["index"]
        if isinstance(ix, str):
            if ix not in NAMED_INDEXES:
                raise ValidationError("base", f"unknown index {ix!r}")
            return Base(NAMED_INDEXES[ix])
        objs = [str(o) for o in _need(ix, "objects", "index")]
        arrows = {str(a): tuple(map(str, st)) for a, st in ix.get("arrows", {}).items()}
        comp = {(str(g), str(f)): str(h) for g, f, h in ix.get("comp", [])}
        C = category_from_arrows(objs, arrows, comp, identities=ix.get("identities"), name="index")
        v = C.violations()
        if v:
            raise ValidationError(v[0].split(":")[0], "; ".join(v))
        return Base(C)
    raise ValidationError("base", f"unrecognized base {spec!r}")


# -- categories -----------------------------------------------------------------------------------


def _level_tables(objs, arrows, idents, comp, where):
    """Label tables for one level: arrow list in identities-first order and the
    composition dict keyed by labels, with identity composites filled in."""
    objs = [str(o) for o in objs]
    arrows = {str(a): tuple(map(str, st)) for a, st in arrows.items()}
    idents = {o: str((idents or {}).get(o, f"id_{o}")) for o in objs}
    for o, i in idents.items():
        if i in arrows and arrows[i] != (o, o):
            raise ValidationError("identity", f"{where}: {i} is not a loop at {o}")
        arrows.setdefault(i, (o, o))
    for a, (s, t) in arrows.items():
        if s not in idents or t not in idents:
            raise ValidationError("reference", f"{where}: arrow {a} has an unknown endpoint")
    order = [idents[o] for o in objs] + [a for a in arrows if a not in idents.values()]
    table = {}
    for entry in comp:
        if len(entry) != 3:
            raise ValidationError("composition", f"{where}: entries are [g, f, g∘f]")
        g, f, h = map(str, entry)
        for a in (g, f, h):
            if a not in arrows:
                raise ValidationError("reference", f"{where}: composition mentions unknown arrow {a!r}")
        table[(g, f)] = h
    for a, (s, t) in arrows.items():
        table.setdefault((idents[t], a), a)
        table.setdefault((a, idents[s]), a)
    return objs, order, arrows, idents, table


def parse_category(base, spec, name):
    where = f"category {name}"
    lv_objs = _per_level(base, _need(spec, "objects", where), where + " objects")
    lv_arrs = _per_level(base, spec.get("arrows", {} if base.kind == "finite-sets" else
                                        {o: {} for o in base.index.objects}), where + " arrows")
    ids = spec.get("identities")
    lv_ids = _per_level(base, ids, where + " identities") if ids is not None else [None] * base.nlevels
    cm = spec.get("comp")
    lv_comp = _per_level(base, cm, where + " comp") if cm is not None else [[]] * base.nlevels
    levels = [_level_tables(*t, where) for t in zip(lv_objs, lv_arrs, lv_ids, lv_comp)]

    restr = spec.get("restrictions", {})
    ob_r, ar_r = {}, {}
    for k, c, d in base.proper:
        a = base.index.arrows[k]
        r = _need(restr, a, where + " restrictions")
        ob_r[a] = {str(x): str(y) for x, y in _need(r, "objects", f"{where} restriction {a}").items()}
        ar_r[a] = {str(x): str(y) for x, y in r.get("arrows", {}).items()}
        # identities restrict to identities unless stated
        for o in levels[d][0]:
            if o in ob_r[a]:
                ar_r[a].setdefault(levels[d][3][o], levels[c][3][ob_r[a][o]])
    try:
        ob = base.make_object([L[0] for L in levels], ob_r)
        ar = base.make_object([L[1] for L in levels], ar_r)
    except DomainMismatch as e:
        raise ValidationError("naturality" if "natural" in str(e) else "restriction", f"{where}: {e}") from None
    try:
        d1 = base.make_morphism(ar, ob, [{a: L[2][a][0] for a in L[1]} for L in levels])
        d0 = base.make_morphism(ar, ob, [{a: L[2][a][1] for a in L[1]} for L in levels])
        i = base.make_morphism(ob, ar, [L[3] for L in levels])
    except DomainMismatch as e:
        raise ValidationError("naturality", f"{where}: {e}") from None
    comp = []
    for lv, L in enumerate(levels):
        pos = ar.positions(lv)
        comp.append({(pos[f], pos[g]): pos[h] for (g, f), h in L[4].items()})
    X = from_tables(base, ob, ar, d1, d0, i, comp, name=name)
    v = validate_internal_category(X)
    if v:
        raise ValidationError(v[0].split(":")[0], f"{where}: " + "; ".join(v))
    inv = _inverse_table(X)
    if inv is not None:
        X = from_tables(base, ob, ar, d1, d0, i, comp, inv=inv, name=name)
    return X


def _inverse_table(X):
    maps = []
    for lv in X.base.levels:
        row = []
        for a in range(X.ar.sizes[lv]):
            b = X.inverse(lv, a)
            if b is None:
                return None
            row.append(b)
        maps.append(row)
    return X.base.tabulate(X.ar, X.ar, lambda lv, a: maps[lv][a])


# -- functors and structures -----------------------------------------------------------------------


def parse_functor(doc, spec, name):
    where = f"functor {name}"
    try:
        X = doc.categories[_need(spec, "source", where)]
        Y = doc.categories[_need(spec, "target", where)]
    except KeyError as e:
        raise ValidationError("reference", f"{where}: unknown category {e}") from None
    b = doc.base
    obt = [{str(k): str(v) for k, v in t.items()}
           for t in _per_level(b, _need(spec, "objects", where), where + " objects")]
    arspec = spec.get("arrows")
    art = ([{str(k): str(v) for k, v in t.items()} for t in _per_level(b, arspec, where + " arrows")]
           if arspec is not None else [{} for _ in b.levels])
    for lv in b.levels:
        # identity arrows may be omitted
        for x in range(X.ob.sizes[lv]):
            xl = X.ob.labels[lv][x]
            if xl in obt[lv]:
                y = Y.ob.positions(lv).get(obt[lv][xl])
                if y is not None:
                    art[lv].setdefault(X.ar.labels[lv][X.ident(lv, x)], Y.ar.labels[lv][Y.ident(lv, y)])
    try:
        f0 = b.make_morphism(X.ob, Y.ob, obt)
        f1 = b.make_morphism(X.ar, Y.ar, art)
    except DomainMismatch as e:
        law = "naturality" if "naturality" in str(e) else "reference"
        raise ValidationError(law, f"{where}: {e}") from None
    F = InternalFunctor(X, Y, f0, f1)
    v = functor_violations(F)
    if v:
        raise ValidationError("functoriality", f"{where}: " + "; ".join(v))
    return F


def _functor_ref(doc, spec, key, where):
    n = _need(spec, key, where)
    if n not in doc.functors:
        raise ValidationError("reference", f"{where}: unknown functor {n!r}")
    return n, doc.functors[n]


def _complement(doc, f, spec, where):
    b = doc.base
    given = spec.get("complement")
    if given is None:
        image = [set(f.f0.maps[lv]) for lv in b.levels]
        keep = lambda lv, y: y not in image[lv]
    else:
        sets = [set(map(str, s)) for s in _per_level(b, given, where + " complement")]
        keep = lambda lv, y: f.tgt.ob.labels[lv][y] in sets[lv]
    try:
        return decomposition_from_complement(f.f0, keep)
    except AwfsError as e:
        raise ValidationError("decomposition", f"{where}: {e}") from None


def _component_table(doc, C, tgt, value, where):
    """{object label: arrow label} per level -> Mor C.ob -> tgt.ar."""
    b = doc.base
    try:
        return b.make_morphism(C.ob, tgt.ar, [{str(k): str(v) for k, v in t.items()}
                                              for t in _per_level(b, value, where)])
    except DomainMismatch as e:
        raise ValidationError("naturality" if "naturality" in str(e) else "reference", f"{where}: {e}") from None


def parse_structure(doc, spec, name):
    from .model import is_isofibration, is_trivial_cofibration

    where = f"structure {name}"
    kind = _need(spec, "kind", where)
    if kind not in STRUCTURE_KINDS:
        raise ValidationError("reference", f"{where}: unknown kind {kind!r}")
    fname, f = _functor_ref(doc, spec, "functor", where)
    refs = {"functor": fname}
    b = doc.base
    if kind == "cloven-isofibration":
        lifts = spec.get("lifts", "auto")
        if lifts == "auto":
            rec = is_isofibration(f)
            if rec is None:
                raise ValidationError("cleavage", f"{where}: {fname} is not an isofibration")
        else:
            X, Y = f.src, f.tgt
            D = cleavage_domain(f)
            rows = _per_level(b, lifts, where + " lifts")
            table = []
            for lv in b.levels:
                given = {}
                for x, g, k in rows[lv]:
                    try:
                        given[(X.ob.index_of(str(x), lv), Y.ar.index_of(str(g), lv))] = \
                            X.ar.index_of(str(k), lv)
                    except (KeyError, ValueError):
                        raise ValidationError("reference", f"{where}: unknown label in lift {[x, g, k]}") from None
                row = []
                for n in range(D.obj.sizes[lv]):
                    x, g = D.decode(lv, n)
                    k = given.get((x, g))
                    if k is None and g == Y.ident(lv, f.ob(lv, x)):
                        k = X.ident(lv, x)
                    if k is None:
                        raise ValidationError("cleavage", f"{where}: no lift given for "
                                              f"({X.ob.labels[lv][x]}, {Y.ar.labels[lv][g]})")
                    row.append(k)
                table.append(row)
            try:
                rec = ClovenIsofibration(f, b.tabulate(D.obj, X.ar, lambda lv, n: table[lv][n]))
            except DomainMismatch as e:
                raise ValidationError("naturality", f"{where}: {e}") from None
    elif kind == "trivial-cofibration":
        if spec.get("retraction", "auto") == "auto":
            rec = is_trivial_cofibration(f)
            if rec is None:
                raise ValidationError("retraction", f"{where}: {fname} is not a trivial cofibration")
        else:
            rname, r = _functor_ref(doc, spec, "retraction", where)
            refs["retraction"] = rname
            Y = f.tgt
            comp = _component_table(doc, Y, Y, _need(spec, "beta", where), where + " beta")
            beta = InternalNatIso(compose_functors(f, r), identity_functor(Y), comp)
            rec = AlgTrivCofibration(f, r, _complement(doc, f, spec, where), beta)
    elif kind == "split-epi-equivalence":
        sname, s = _functor_ref(doc, spec, "section", where)
        refs["section"] = sname
        X = f.src
        comp = _component_table(doc, X, X, _need(spec, "beta", where), where + " beta")
        rec = AlgSplitEpiEq(f, s, InternalNatIso(identity_functor(X), compose_functors(s, f), comp))
    else:
        rec = AlgCompInclObj(f, _complement(doc, f, spec, where))
    v = validate_structure(rec)
    if v:
        raise ValidationError(v[0].split(":")[0], f"{where}: " + "; ".join(v))
    doc.refs[name] = refs
    return rec


# -- documents -----------------------------------------------------------------------------------


def load_document(data):
    if not isinstance(data, dict):
        raise ValidationError("reference", "document must be an object")
    base = _parse_base(data.get("base"))
    doc = Document(base, data.get("base", "finite-sets"))
    for name in sorted(data.get("categories", {})):
        doc.categories[name] = parse_category(base, data["categories"][name], name)
    for name in sorted(data.get("functors", {})):
        doc.functors[name] = parse_functor(doc, data["functors"][name], name)
    for name in sorted(data.get("structures", {})):
        doc.structures[name] = parse_structure(doc, data["structures"][name], name)
    return doc


def parse_document(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return load_document(data)


def category_to_dict(X, levels_only=False):
    b = X.base
    objs, arrows, ids, comp = [], [], [], []
    for lv in b.levels:
        ol, al = X.ob.labels[lv], X.ar.labels[lv]
        objs.append(list(ol))
        arrows.append({al[a]: [ol[X.src(lv, a)], ol[X.tgt(lv, a)]] for a in range(X.ar.sizes[lv])})
        ids.append({ol[x]: al[X.ident(lv, x)] for x in range(X.ob.sizes[lv])})
        comp.append([[al[g], al[f], al[X.mul(lv, f, g)]] for f, g in X.pairs.pairs[lv]])
    out = {"objects": _pack(b, objs), "arrows": _pack(b, arrows), "identities": _pack(b, ids),
           "comp": _pack(b, comp)}
    if b.proper:
        out["restrictions"] = {}
        for k, c, d in b.proper:
            a = b.index.arrows[k]
            out["restrictions"][a] = {
                "objects": {X.ob.labels[d][x]: X.ob.labels[c][X.ob.restr[k][x]] for x in range(X.ob.sizes[d])},
                "arrows": {X.ar.labels[d][x]: X.ar.labels[c][X.ar.restr[k][x]] for x in range(X.ar.sizes[d])},
            }
    return out


def _table(m):
    b = m.dom.base
    return _pack(b, [{m.dom.labels[lv][i]: m.cod.labels[lv][j] for i, j in enumerate(m.maps[lv])}
                     for lv in b.levels])


def functor_to_dict(F, src, tgt):
    return {"source": src, "target": tgt, "objects": _table(F.f0), "arrows": _table(F.f1)}


def structure_to_dict(rec, refs):
    b = rec.f.src.base if hasattr(rec, "f") else rec.g.src.base
    if isinstance(rec, ClovenIsofibration):
        X, Y = rec.f.src, rec.f.tgt
        D = rec.domain
        rows = []
        for lv in b.levels:
            row = []
            for n in range(D.obj.sizes[lv]):
                x, g = D.decode(lv, n)
                row.append([X.ob.labels[lv][x], Y.ar.labels[lv][g], X.ar.labels[lv][rec.k.maps[lv][n]]])
            rows.append(row)
        return {"kind": "cloven-isofibration", "functor": refs["functor"], "lifts": _pack(b, rows)}
    if isinstance(rec, AlgTrivCofibration):
        out = {"kind": "trivial-cofibration", "functor": refs["functor"]}
        if "retraction" not in refs:
            out["retraction"] = "auto"
            return out
        Y = rec.g.tgt
        out["retraction"] = refs["retraction"]
        out["beta"] = _table(rec.beta.component)
        out["complement"] = _pack(b, [sorted(Y.ob.labels[lv][y] for y in range(Y.ob.sizes[lv])
                                             if rec.j.in_complement(lv, y)) for lv in b.levels])
        return out
    if isinstance(rec, AlgSplitEpiEq):
        return {"kind": "split-epi-equivalence", "functor": refs["functor"], "section": refs["section"],
                "beta": _table(rec.beta.component)}
    Y = rec.f.tgt
    return {"kind": "complemented-inclusion", "functor": refs["functor"],
            "complement": _pack(b, [sorted(Y.ob.labels[lv][y] for y in range(Y.ob.sizes[lv])
                                           if rec.j.in_complement(lv, y)) for lv in b.levels])}


def document_to_dict(doc):
    out = {"base": doc.base_spec,
           "categories": {k: category_to_dict(X) for k, X in doc.categories.items()}}
    out["functors"] = {k: functor_to_dict(F, doc.category_name(F.src), doc.category_name(F.tgt))
                       for k, F in doc.functors.items()}
    out["structures"] = {k: structure_to_dict(s, doc.refs[k]) for k, s in doc.structures.items()}
    return out


def dump_document(doc):
    return json.dumps(document_to_dict(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
