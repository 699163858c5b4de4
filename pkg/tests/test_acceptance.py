"""Acceptance criteria, one group of tests per criterion.  The terminal summary
prints a PASS/FAIL line for each criterion (see conftest).  AWFS_FULL=1 widens
the sampled (co)associativity checks of criterion 3 to the whole corpus."""

import os
import random
import time

import pytest

from awfs import algebras as A
from awfs.corpus import (INVOLUTION, SETS, WALKING_ARROW, cartesian_squares, composable_pairs, fold_squares,
                         functor_corpus, groupoids, involution_quotient, presheaf_functor_corpus)
from awfs.factorization import (Square, c_comonad_laws, f_free_algebra, f_monad_laws, factorize_cof_trivfib,
                                factorize_trivcof_fib, forget, tc_comonad_laws, tc_structure, tf_free_algebra,
                                tf_monad_laws)
from awfs.internal import categories_equal, compose_functors, identity_functor, product_functor, product_internal
from awfs.model import (classify, generating_sets, has_rlp, is_cofibration, is_isofibration, is_trivial_cofibration,
                        is_trivial_fibration, is_weak_equivalence, quasi_inverse)
from awfs.search import functors
from awfs.type_theory import (frobenius, is_pullback_square, path_object, pi, pi_adjunction_report,
                              pi_composition_independent, pullback_cloven, stability_check)

import oracles as O

FULL = os.environ.get("AWFS_FULL") == "1"

C1 = pytest.mark.criterion(1, "factorization identities TF∘C = f, F∘TC = f")
C2 = pytest.mark.criterion(2, "factors classify as C, TF, TC, F")
C3 = pytest.mark.criterion(3, "(co)monad and coalgebra laws")
C4 = pytest.mark.criterion(4, "translation isomorphisms round trip")
C5 = pytest.mark.criterion(5, "RLP characterizations against I and J")
C6 = pytest.mark.criterion(6, "Frobenius output validates; exact along identity")
C7 = pytest.mark.criterion(7, "path objects: ρ∘λ = Δ, stability, |P(Iw→T)| = 10")
C8 = pytest.mark.criterion(8, "Π adjunction, factorization independence, Π_id(q) = q")
C9 = pytest.mark.criterion(9, "weak equivalences: ff+eso ⇔ quasi-inverse, 2-out-of-3")
C10 = pytest.mark.criterion(10, "presheaf instances re-run criteria 1-5; non-split section")
C11 = pytest.mark.criterion(11, "A × c preserves (trivial) cofibrations")


def same(F, G):
    return F.f0.maps == G.f0.maps and F.f1.maps == G.f1.maps


def is_id(F):
    return F.f0.is_identity() and F.f1.is_identity()


def fibrations(corpus):
    return [(n, c) for n, f in corpus if (c := is_isofibration(f)) is not None]


def trivial_cofibrations(corpus):
    return [(n, t) for n, f in corpus if (t := is_trivial_cofibration(f)) is not None]


@pytest.fixture(scope="module")
def fibs(corpus):
    return fibrations(corpus)


# -- shared checks, reused for the presheaf instances -----------------------------------------


def check_factorization_identities(corpus):
    for name, f in corpus:
        a = factorize_cof_trivfib(f)
        assert same(compose_functors(a.TF, a.C), f), name
        b = factorize_trivcof_fib(f)
        assert same(compose_functors(b.F, b.TC), f), name


def check_factor_classes(corpus):
    for name, f in corpus:
        a = factorize_cof_trivfib(f)
        b = factorize_trivcof_fib(f)
        assert is_cofibration(a.C) is not None, name
        assert is_trivial_fibration(a.TF) is not None, name
        assert is_trivial_cofibration(b.TC) is not None, name
        assert is_isofibration(b.F) is not None, name


def check_laws(corpus, assoc=lambda f: True):
    for name, f in corpus:
        assert all(tf_monad_laws(f).values()), name
        assert all(c_comonad_laws(f).values()), name
        full = assoc(f)
        assert all(f_monad_laws(f, associativity=full).values()), name
        assert all(tc_comonad_laws(f, coassociativity=full).values()), name
        assert A.validate_structure(tc_structure(f)) == [], name
        forget(f)


def check_round_trips(corpus):
    counts = dict.fromkeys(("cloven", "trivcof", "splitepi", "compincl"), 0)
    for name, f in corpus:
        c = is_isofibration(f)
        if c is not None:
            a = A.cloven_to_f_algebra(c)
            assert A.f_algebra_to_cloven(a).k.maps == c.k.maps, name
            assert same(A.cloven_to_f_algebra(A.f_algebra_to_cloven(a)).phi, a.phi), name
            counts["cloven"] += 1
        t = is_trivial_cofibration(f)
        if t is not None:
            k = A.algtrivcof_to_tc_coalg(t)
            t2 = A.tc_coalg_to_algtrivcof(k)
            assert same(t2.r, t.r) and t2.beta.component.maps == t.beta.component.maps, name
            assert t2.j.inverse.maps == t.j.inverse.maps, name
            assert same(A.algtrivcof_to_tc_coalg(t2).alpha, k.alpha), name
            counts["trivcof"] += 1
        w = is_trivial_fibration(f)
        if w is not None:
            e = A.splitepi_structure_of(f, w)
            a = A.splitepieq_to_tf_algebra(e)
            e2 = A.tf_algebra_to_splitepieq(a)
            assert same(e2.s, e.s) and e2.beta.component.maps == e.beta.component.maps, name
            assert same(A.splitepieq_to_tf_algebra(e2).phi, a.phi), name
            counts["splitepi"] += 1
        d = is_cofibration(f)
        if d is not None:
            k = A.compincl_to_c_coalg(A.AlgCompInclObj(f, d))
            a2 = A.c_coalg_to_compincl(k)
            assert a2.j.inverse.maps == d.inverse.maps, name
            assert same(A.compincl_to_c_coalg(a2).alpha, k.alpha), name
            counts["compincl"] += 1
        forget(f)
    return counts


def check_rlp(corpus, base):
    g = generating_sets(base)
    for name, f in corpus:
        assert has_rlp(f, g.J_maps) == (is_isofibration(f) is not None), name
        assert has_rlp(f, g.I_maps) == (is_trivial_fibration(f) is not None), name


# -- 1 ------------------------------------------------------------------------------------------


@C1
def test_factorization_identities(corpus):
    start = time.perf_counter()
    check_factorization_identities(corpus)
    elapsed = time.perf_counter() - start
    assert len(corpus) == 321
    names = {n.split("→")[0] for n, _ in corpus} | {n.split("→")[1].split("#")[0] for n, _ in corpus}
    assert {"T", "D2", "Iw", "C2"} <= names
    assert elapsed <= 60, f"{elapsed:.1f}s"


# -- 2 ------------------------------------------------------------------------------------------


@C2
def test_factor_classification(corpus):
    check_factor_classes(corpus)


# -- 3 ------------------------------------------------------------------------------------------


def _assoc_selection(corpus):
    """Every functor whose source has at most two objects, plus a seeded sample
    of twelve with three-object sources (all of them under AWFS_FULL=1)."""
    big = [id(f) for _, f in corpus if f.src.ob.sizes[0] > 2]
    keep = set(big) if FULL else set(random.Random(0).sample(big, 12))
    return lambda f: f.src.ob.sizes[0] <= 2 or id(f) in keep


@C3
def test_monad_and_comonad_laws(corpus):
    check_laws(corpus, _assoc_selection(corpus))


@C3
def test_free_structures_satisfy_laws(corpus):
    for name, f in corpus:
        assert A.validate_structure(tf_free_algebra(f)) == [], name
        assert A.validate_structure(f_free_algebra(f)) == [], name
        forget(f)


# -- 4 ------------------------------------------------------------------------------------------


@C4
def test_object_round_trips(corpus):
    counts = check_round_trips(corpus)
    # class sizes frozen from the brute-force oracle
    assert counts == {"cloven": 132, "trivcof": 36, "splitepi": 31, "compincl": 103}


@C4
def test_round_trips_on_structure_morphisms(corpus):
    n = 0
    for label, sq, pb in cartesian_squares(20, seed=1):
        orig = is_isofibration(sq.g)
        assert A.structure_square_preserved(pb, orig, sq), label
        assert A.structure_square_preserved(A.cloven_to_f_algebra(pb), A.cloven_to_f_algebra(orig), sq), label
        n += 1
    assert n == 20
    m = 0
    small = [(k, F) for k, F in corpus if F.src.ob.sizes[0] <= 2 and F.tgt.ob.sizes[0] <= 2]
    fibs = fibrations(small)
    for name, t in trivial_cofibrations(small):
        for fname, c in fibs:
            if c.f.tgt is not t.g.tgt or m == 20:
                continue
            out = frobenius(t, c)
            sq = Square(out.g, t.g, out.pullback.p1, c.f)
            assert A.structure_square_preserved(out.structure, t, sq), (name, fname)
            assert A.structure_square_preserved(A.algtrivcof_to_tc_coalg(out.structure),
                                                A.algtrivcof_to_tc_coalg(t), sq), (name, fname)
            m += 1
    assert m == 20


# -- 5 ------------------------------------------------------------------------------------------


@C5
def test_rlp_characterizations(corpus):
    check_rlp(corpus, SETS)


# -- 6 ------------------------------------------------------------------------------------------


@C6
def test_frobenius_validates(corpus, fibs):
    n = 0
    for tn, t in trivial_cofibrations(corpus):
        for fn, c in fibs:
            if t.g.tgt is c.f.tgt:
                assert A.validate_structure(frobenius(t, c).structure) == [], (tn, fn)
                n += 1
    assert n == 662


@C6
def test_frobenius_along_identity_exact(corpus):
    for name, t in trivial_cofibrations(corpus):
        out = frobenius(t, is_isofibration(identity_functor(t.g.tgt)))
        assert same(out.g, t.g) and same(out.r, t.r), name
        assert out.beta.component.maps == t.beta.component.maps, name
        assert out.j.inverse.maps == t.j.inverse.maps, name


# -- 7 ------------------------------------------------------------------------------------------


@C7
def test_path_objects_factor_diagonal(fibs):
    for name, c in fibs:
        P = path_object(c)
        assert same(compose_functors(P.rho, P.lam), P.diagonal), name
        assert P.category.ob.sizes[0] == O.path_object_size(c.f), name
        forget(c.f)


@C7
def test_iw_over_point_path_object(fx):
    c = is_isofibration(next(functors(fx["Iw"], fx["T"])))
    P = path_object(c, deep=True)
    assert P.category.ob.sizes == (10,) == (O.path_object_size(c.f),)
    assert P.violations(deep=True) == []


@C7
def test_non_cartesian_squares_unstable():
    squares = fold_squares(10)
    assert len(squares) == 10
    for name, sq in squares:
        assert sq.commutes() and not is_pullback_square(sq), name
        assert not stability_check(sq), name
        assert not stability_check(sq, "pseudo"), name


@C7
def test_cartesian_squares_pseudo_stable():
    squares = cartesian_squares(25, seed=0)
    assert len(squares) == 25
    for name, sq, _ in squares:
        assert is_pullback_square(sq), name
        assert stability_check(sq, "pseudo"), name


@C7
@pytest.mark.xfail(strict=True, reason="strict stability holds on 20 of the 25 squares; the mapping-path "
                                       "construction only reindexes up to equivalence")
def test_cartesian_squares_strictly_stable():
    failing = [name for name, sq, _ in cartesian_squares(25, seed=0) if not stability_check(sq)]
    assert failing == [], failing


# -- 8 ------------------------------------------------------------------------------------------


def _fibred_pairs(fibs, limit):
    for pn, p in fibs:
        for qn, q in fibs:
            if q.f.tgt is p.f.src and q.f.src.ob.sizes[0] + p.f.src.ob.sizes[0] + p.f.tgt.ob.sizes[0] <= limit:
                yield pn, p, qn, q


@C8
def test_pi_adjunction(corpus, fibs):
    n = 0
    for pn, p, qn, q in _fibred_pairs(fibs, 6):
        out = None
        for bn, b in corpus:
            if b.tgt is not p.f.tgt:
                continue
            if q.f.src.ob.sizes[0] + p.f.src.ob.sizes[0] + p.f.tgt.ob.sizes[0] + b.src.ob.sizes[0] > 6:
                continue
            out = out or pi(p, q)
            nF, nG, ok = pi_adjunction_report(out, b)
            assert ok and nF == nG, (pn, qn, bn)
            n += 1
    assert n == 1653


@C8
def test_pi_factorization_independence(fibs):
    n = 0
    for pn, p, qn, q in _fibred_pairs(fibs, 6):
        assert pi_composition_independent(p, q), (pn, qn)
        n += 1
    assert n > 0


@C8
def test_pi_along_identity_exact(fibs):
    for name, q in fibs:
        out = pi(is_isofibration(identity_functor(q.f.tgt)), q)
        assert categories_equal(out.category, q.f.src, labels=False), name
        assert same(out.functor, q.f) and out.cleavage.k.maps == q.k.maps, name


# -- 9 ------------------------------------------------------------------------------------------


@C9
def test_weak_equivalence_agreement(corpus):
    for name, f in corpus:
        we = is_weak_equivalence(f) is not None
        assert we == (quasi_inverse(f) is not None) == O.quasi_inverse_exists(f), name


@C9
def test_two_out_of_three(corpus):
    we = {id(f): is_weak_equivalence(f) is not None for _, f in corpus}
    n = 0
    for (n1, f), (n2, g) in composable_pairs(corpus):
        gf = is_weak_equivalence(compose_functors(g, f)) is not None
        if we[id(f)] + we[id(g)] + gf >= 2:
            assert we[id(f)] and we[id(g)] and gf, (n1, n2)
        n += 1
    assert n > 0


# -- 10 -----------------------------------------------------------------------------------------


@C10
@pytest.mark.parametrize("base", [WALKING_ARROW, INVOLUTION], ids=["walking-arrow", "involution"])
def test_presheaf_instances(base):
    start = time.perf_counter()
    corpus = presheaf_functor_corpus(base)
    for f in (lambda: check_factorization_identities(corpus), lambda: check_factor_classes(corpus),
              lambda: check_laws(corpus), lambda: check_round_trips(corpus), lambda: check_rlp(corpus, base)):
        f()
    assert time.perf_counter() - start <= 300


@C10
def test_natural_section_counterexample_reported_non_split():
    F = involution_quotient()
    f0 = F.f0
    assert all(set(row) == set(range(n)) for row, n in zip(f0.maps, f0.cod.sizes))
    assert INVOLUTION.is_split_epi(f0) is None
    assert is_trivial_fibration(F) is None


# -- 11 -----------------------------------------------------------------------------------------


@C11
def test_product_preserves_cofibrations(corpus):
    gs = groupoids()
    n = 0
    for name, c in corpus:
        v = classify(c).verdicts()
        if not v["cofibration"]:
            continue
        for a, X in gs.items():
            Ac = product_functor(identity_functor(X), c, product_internal(X, c.src), product_internal(X, c.tgt))
            w = classify(Ac).verdicts()
            assert w["cofibration"], (a, name)
            if v["trivial cofibration"]:
                assert w["trivial cofibration"], (a, name)
            n += 1
    assert n == 103 * len(gs)
