"""Command-line front end: parse one document, run one command, print a JSON
report. Exit status 0 = ok, 1 = bad input, 2 = a checked property failed."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources

from . import algebras as alg
from .document import parse_document
from .errors import AwfsError, InvalidStructure, UnknownCommand, ValidationError
from .factorization import Square, factorize_cof_trivfib, factorize_trivcof_fib
from .internal import compose_functors, identity_functor
from .model import classify, find_filler, is_isofibration
from . import type_theory as tt

OK, INVALID, FAILED = 0, 1, 2

COMMANDS = ("validate", "classify", "factorize", "translate", "lift", "frobenius", "sigma", "pi",
            "path-object", "id-type", "verify-ttawfs")

# hand-specified kind -> ((co)algebra name, to-algebra, from-algebra)
TRANSLATIONS = {
    "cloven-isofibration": ("f-algebra", alg.cloven_to_f_algebra, alg.f_algebra_to_cloven),
    "trivial-cofibration": ("tc-coalgebra", alg.algtrivcof_to_tc_coalg, alg.tc_coalg_to_algtrivcof),
    "split-epi-equivalence": ("tf-algebra", alg.splitepieq_to_tf_algebra, alg.tf_algebra_to_splitepieq),
    "complemented-inclusion": ("c-coalgebra", alg.compincl_to_c_coalg, alg.c_coalg_to_compincl),
}


@dataclass
class Report:
    command: str
    args: dict
    body: dict = field(default_factory=dict)
    status: int = OK

    def to_dict(self):
        return {"command": self.command, "args": self.args, "status": ["ok", "invalid", "failed"][self.status],
                **self.body}


def emit(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- summaries -------------------------------------------------------------------------------------


def _per_level(base, rows):
    if base.kind == "finite-sets":
        return rows[0]
    return {o: r for o, r in zip(base.index.objects, rows)}


def summarize_category(X):
    b = X.base
    return {"objects": _per_level(b, [list(X.ob.labels[lv]) for lv in b.levels]),
            "sizes": _per_level(b, [[X.ob.sizes[lv], X.ar.sizes[lv]] for lv in b.levels]),
            "groupoid": X.is_groupoid}


def summarize_functor(F):
    b = F.src.base
    return _per_level(b, [{F.src.ob.labels[lv][x]: F.tgt.ob.labels[lv][F.ob(lv, x)]
                           for x in range(F.src.ob.sizes[lv])} for lv in b.levels])


def _same(F, G):
    return F.f0.maps == G.f0.maps and F.f1.maps == G.f1.maps


# -- lookups ----------------------------------------------------------------------------------------


def _functor(doc, name):
    if name in doc.functors:
        return doc.functors[name]
    if name in doc.structures:
        s = doc.structures[name]
        return s.g if isinstance(s, alg.AlgTrivCofibration) else s.f
    raise ValidationError("reference", f"unknown functor {name!r}")


def _fibration(doc, name):
    s = doc.structures.get(name)
    if isinstance(s, alg.ClovenIsofibration):
        return s
    if s is not None:
        raise ValidationError("reference", f"{name!r} is not a cloven isofibration")
    c = is_isofibration(_functor(doc, name))
    if c is None:
        raise ValidationError("cleavage", f"{name!r} is not an isofibration")
    return c


def _trivcof(doc, name):
    from .model import is_trivial_cofibration
    s = doc.structures.get(name)
    if isinstance(s, alg.AlgTrivCofibration):
        return s
    if s is not None:
        raise ValidationError("reference", f"{name!r} is not a trivial cofibration structure")
    t = is_trivial_cofibration(_functor(doc, name))
    if t is None:
        raise ValidationError("retraction", f"{name!r} is not a trivial cofibration")
    return t


def _first_functor_name(doc, given):
    if given:
        return given
    if not doc.functors:
        raise ValidationError("reference", "document has no functors")
    return sorted(doc.functors)[0]


# -- commands ---------------------------------------------------------------------------------------


def cmd_validate(doc, a, rep):
    rep.body["categories"] = {k: summarize_category(X) for k, X in sorted(doc.categories.items())}
    rep.body["functors"] = sorted(doc.functors)
    rep.body["structures"] = {k: doc.refs[k]["functor"] for k in sorted(doc.structures)}
    rep.body["valid"] = True


def cmd_classify(doc, a, rep):
    names = [a.functor] if a.functor else sorted(doc.functors)
    rep.body["verdicts"] = {n: classify(_functor(doc, n)).verdicts() for n in names}


def cmd_factorize(doc, a, rep):
    name = _first_functor_name(doc, a.functor)
    f = _functor(doc, name)
    if a.system == "ctf":
        A = factorize_cof_trivfib(f)
        left, right = A.C, A.TF
    else:
        A = factorize_trivcof_fib(f)
        left, right = A.TC, A.F
    E = A.E
    rep.body["functor"] = name
    rep.body["E_0"] = _per_level(f.src.base, list(E.ob.sizes))
    rep.body["E_1"] = _per_level(f.src.base, list(E.ar.sizes))
    rep.body["middle"] = summarize_category(E)
    rep.body["left"] = summarize_functor(left)
    ok = _same(compose_functors(right, left), f)
    rep.body["composite_is_input"] = ok
    if not ok:
        rep.status = FAILED


def cmd_translate(doc, a, rep):
    name = a.structure
    if name not in doc.structures:
        raise ValidationError("reference", f"unknown structure {name!r}")
    rec = doc.structures[name]
    kind = next(k for k, v in _kinds().items() if isinstance(rec, v))
    partner, there, back = TRANSLATIONS[kind]
    if a.source and a.source != kind:
        raise ValidationError("reference", f"{name!r} is a {kind}, not a {a.source}")
    if a.to and a.to != partner:
        raise ValidationError("reference", f"a {kind} translates to a {partner}, not {a.to}")
    out = there(rec)
    again = back(out)
    same = alg.validate_structure(out) == [] and _records_equal(rec, again)
    rep.body.update({"structure": name, "from": kind, "to": partner, "validates": not alg.validate_structure(out),
                     "round_trip_identity": same})
    if not same:
        rep.status = FAILED


def _kinds():
    return {"cloven-isofibration": alg.ClovenIsofibration, "trivial-cofibration": alg.AlgTrivCofibration,
            "split-epi-equivalence": alg.AlgSplitEpiEq, "complemented-inclusion": alg.AlgCompInclObj}


def _records_equal(r, s):
    if isinstance(r, alg.ClovenIsofibration):
        return r.k.maps == s.k.maps
    if isinstance(r, alg.AlgTrivCofibration):
        return _same(r.r, s.r) and r.beta.component.maps == s.beta.component.maps and \
            r.j.inverse.maps == s.j.inverse.maps
    if isinstance(r, alg.AlgSplitEpiEq):
        return _same(r.s, s.s) and r.beta.component.maps == s.beta.component.maps
    return r.j.inverse.maps == s.j.inverse.maps


def cmd_lift(doc, a, rep):
    top, bottom = _functor(doc, a.top), _functor(doc, a.bottom)
    if a.left in doc.structures and a.right in doc.structures:
        left = alg.algtrivcof_to_tc_coalg(_trivcof(doc, a.left))
        right = alg.cloven_to_f_algebra(_fibration(doc, a.right))
        d = alg.canonical_lift(left, right, top, bottom)
        rep.body["method"] = "canonical"
    else:
        d = find_filler(Square(_functor(doc, a.left), _functor(doc, a.right), top, bottom))
        rep.body["method"] = "search"
    if d is None:
        rep.body["filler"] = None
        rep.status = FAILED
        return
    rep.body["filler"] = summarize_functor(d)
    l, r = _functor(doc, a.left), _functor(doc, a.right)
    ok = _same(compose_functors(d, l), top) and _same(compose_functors(r, d), bottom)
    rep.body["triangles_commute"] = ok
    if not ok:
        rep.status = FAILED


def cmd_frobenius(doc, a, rep):
    out = tt.frobenius(_trivcof(doc, a.trivcof), _fibration(doc, a.fibration))
    v = alg.validate_structure(out.structure)
    P = out.g.src
    b = P.base
    rep.body.update({
        "pullback": summarize_category(P),
        "retraction": summarize_functor(out.r),
        "complement": _per_level(b, [sorted(out.g.tgt.ob.labels[lv][x] for x in range(out.g.tgt.ob.sizes[lv])
                                            if out.j.in_complement(lv, x)) for lv in b.levels]),
        "validates": not v,
    })
    if v:
        rep.status = FAILED


def cmd_sigma(doc, a, rep):
    c = tt.sigma(_fibration(doc, a.outer), _fibration(doc, a.inner))
    v = alg.validate_structure(c)
    rep.body.update({"composite": summarize_functor(c.f), "validates": not v})
    if v:
        rep.status = FAILED


def cmd_pi(doc, a, rep):
    p, q = _fibration(doc, a.along), _fibration(doc, a.family)
    out = tt.pi(p, q)
    nF, nG, ok = tt.pi_adjunction_report(out, identity_functor(p.f.tgt))
    indep = tt.pi_composition_independent(p, q)
    rep.body.update({"pi": summarize_category(out.category), "over_base": summarize_functor(out.functor),
                     "adjunction": {"hom_over_base": nF, "hom_over_fibre": nG, "transposes_inverse": ok},
                     "factorization_independent": indep})
    if not (ok and nF == nG and indep):
        rep.status = FAILED


def cmd_path_object(doc, a, rep):
    P = tt.path_object(_fibration(doc, a.fibration))
    v = P.violations()
    rep.body.update({"path_object": summarize_category(P.category), "refl": summarize_functor(P.lam),
                     "factors_diagonal": not any("Δ" in x for x in v), "validates": not v})
    if v:
        rep.status = FAILED


def cmd_id_type(doc, a, rep):
    I = tt.id_type(_fibration(doc, a.fibration))
    v = alg.validate_structure(I.id)
    rep.body.update({"id": summarize_category(I.id.f.src), "context": summarize_category(I.id.f.tgt),
                     "refl": summarize_functor(I.refl), "validates": not v})
    if v:
        rep.status = FAILED


def cmd_verify_ttawfs(doc, a, rep):
    fibs, tcs = [], []
    for name in sorted(doc.structures):
        s = doc.structures[name]
        if isinstance(s, alg.ClovenIsofibration):
            fibs.append((name, s))
        elif isinstance(s, alg.AlgTrivCofibration):
            tcs.append((name, s))
    r = tt.verify_ttawfs(fibs, tcs, pi_limit=a.pi_limit, stability=a.stability)
    rows = sorted(r.results, key=lambda x: (x.axiom, x.instance))
    rep.body["results"] = [{"axiom": x.axiom, "instance": x.instance, "passed": x.passed, "detail": x.detail}
                           for x in rows]
    rep.body["passed"] = r.passed
    if not r.passed:
        rep.status = FAILED


HANDLERS = {"validate": cmd_validate, "classify": cmd_classify, "factorize": cmd_factorize,
            "translate": cmd_translate, "lift": cmd_lift, "frobenius": cmd_frobenius, "sigma": cmd_sigma,
            "pi": cmd_pi, "path-object": cmd_path_object, "id-type": cmd_id_type,
            "verify-ttawfs": cmd_verify_ttawfs}


def execute(command, doc, args=None):
    """Run one command on a parsed document; args is an argparse namespace."""
    if command not in HANDLERS:
        raise UnknownCommand(command)
    args = args or build_parser().parse_args([command])
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "input", "bundled")}
    rep = Report(command, echo)
    HANDLERS[command](doc, args, rep)
    return rep


# -- entry point ------------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="awfs", description="Algebraic factorization systems on internal groupoids.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("input", nargs="?", default="-", help="document path, or - for stdin")
        s.add_argument("--bundled", help="use a bundled document by name instead of a path")
        return s

    cmd("validate", "parse and validate a document")
    cmd("classify", "model-structure verdicts").add_argument("--functor")
    s = cmd("factorize", "functorial factorization")
    s.add_argument("--functor")
    s.add_argument("--system", choices=("ctf", "tcf"), default="ctf")
    s = cmd("translate", "structure to (co)algebra and back")
    s.add_argument("--structure", required=True)
    s.add_argument("--from", dest="source")
    s.add_argument("--to")
    s = cmd("lift", "diagonal filler for a square")
    for k in ("left", "right", "top", "bottom"):
        s.add_argument(f"--{k}", required=True)
    s = cmd("frobenius", "pull a trivial cofibration back along a fibration")
    s.add_argument("--trivcof", required=True)
    s.add_argument("--fibration", required=True)
    s = cmd("sigma", "composite of cloven isofibrations")
    s.add_argument("--outer", required=True)
    s.add_argument("--inner", required=True)
    s = cmd("pi", "dependent product")
    s.add_argument("--along", required=True)
    s.add_argument("--family", required=True)
    cmd("path-object", "path object of a fibration").add_argument("--fibration", required=True)
    cmd("id-type", "identity type of a fibration").add_argument("--fibration", required=True)
    s = cmd("verify-ttawfs", "run the type-theoretic axioms over the document's structures")
    s.add_argument("--stability", choices=("strict", "pseudo"), default="strict")
    s.add_argument("--pi-limit", type=int, default=6)
    return p


def bundled_names():
    return sorted(p.name[:-5] for p in resources.files("awfs.data").iterdir() if p.name.endswith(".json"))


def read_bundled(name):
    f = resources.files("awfs.data") / f"{name}.json"
    if not f.is_file():
        raise ValidationError("reference", f"no bundled document {name!r}; have {', '.join(bundled_names())}")
    return f.read_text(encoding="utf-8")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.bundled:
            text = read_bundled(args.bundled)
        elif args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        doc = parse_document(text)
        rep = execute(args.command, doc, args)
    except (AwfsError, OSError) as e:
        status = FAILED if isinstance(e, InvalidStructure) and not isinstance(e, ValidationError) else INVALID
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return status
    sys.stdout.write(emit(rep))
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
