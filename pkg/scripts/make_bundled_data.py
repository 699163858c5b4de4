"""Regenerate the machine-built bundled documents in src/awfs/data/ from the
corpus fixtures. iw.json is hand-written and left alone."""

import json
from itertools import product
from pathlib import Path

from awfs.corpus import INVOLUTION, WALKING_ARROW, fixtures, involution_quotient, presheaf_groupoids
from awfs.document import Document, document_to_dict
from awfs.internal import product_internal
from awfs.model import is_isofibration, is_trivial_cofibration
from awfs.search import functors

OUT = Path(__file__).resolve().parents[1] / "src" / "awfs" / "data"


def build(base, base_spec, cats, extra=()):
    doc = Document(base, base_spec, categories=dict(cats))
    for (a, X), (b, Y) in product(cats.items(), cats.items()):
        for n, F in enumerate(functors(X, Y)):
            doc.functors[f"{a}->{b}#{n}"] = F
    for name, F in extra:
        doc.functors[name] = F
    for name in sorted(doc.functors):
        F = doc.functors[name]
        c = is_isofibration(F)
        if c is not None:
            doc.structures[f"fib:{name}"] = c
            doc.refs[f"fib:{name}"] = {"functor": name}
        t = is_trivial_cofibration(F)
        if t is not None:
            doc.structures[f"tc:{name}"] = t
            doc.refs[f"tc:{name}"] = {"functor": name}
    return doc


def write(name, doc):
    data = document_to_dict(doc)
    # derived structures are stored as "auto" so the files stay small
    for k, s in data["structures"].items():
        if s["kind"] == "cloven-isofibration":
            s.pop("lifts")
    (OUT / f"{name}.json").write_text(json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False) + "\n",
                                      encoding="utf-8")


def main():
    F = fixtures()
    cats = {k: F[k] for k in ("T", "D2", "Iw", "C2")}
    IC = product_internal(F["Iw"], F["C2"], name="IwxC2")
    doc = build(F["T"].base, "finite-sets", cats)
    doc.categories["IwxC2"] = IC
    doc.functors["proj"] = IC.p1
    doc.structures["fib:proj"] = is_isofibration(IC.p1)
    doc.refs["fib:proj"] = {"functor": "proj"}
    write("corpus", doc)

    g = presheaf_groupoids(WALKING_ARROW)
    write("walking_arrow", build(WALKING_ARROW, {"index": "walking-arrow"},
                                 {k: g[k] for k in ("T", "Iw", "T⇒Iw", "D2⇒T")}))
    g = presheaf_groupoids(INVOLUTION)
    write("involution", build(INVOLUTION, {"index": "involution"}, {k: g[k] for k in ("T", "D2~", "Iw~")}))


if __name__ == "__main__":
    main()
