import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from awfs.corpus import (INVOLUTION, SETS, WALKING_ARROW, fixtures, functor_corpus,  # noqa: E402
                         presheaf_functor_corpus)
from awfs.factorization import forget  # noqa: E402

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def fx():
    return fixtures(SETS)


@pytest.fixture(scope="session")
def corpus():
    return functor_corpus()


@pytest.fixture(scope="module", autouse=True)
def _release_constructions():
    """Factorizations are cached on the long-lived corpus functors; drop them
    after each module so memory stays bounded over the whole suite."""
    yield
    for _, f in functor_corpus():
        forget(f)
    for base in (WALKING_ARROW, INVOLUTION):
        for _, f in presheaf_functor_corpus(base):
            forget(f)


# -- acceptance reporting: one PASS/FAIL line per criterion ---------------------------


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): test belongs to acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True, "notes": []})
    if rep.when == "call" or rep.failed or rep.skipped:
        if rep.failed or rep.skipped:
            entry["ok"] = False
            why = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
            entry["notes"].append(f"{item.name} ({why})")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        line = f"criterion {n:>2} {'PASS' if e['ok'] else 'FAIL'}  {e['title']}"
        if e["notes"]:
            line += "  [" + "; ".join(e["notes"]) + "]"
        terminalreporter.write_line(line)


def find(corpus, prefix, pred=lambda F: True):
    """First corpus functor whose label starts with ``prefix`` and satisfies pred."""
    for name, F in corpus:
        if name.startswith(prefix) and pred(F):
            return F
    raise LookupError(prefix)


# -- hypothesis strategies for base objects ------------------------------------------


@st.composite
def finite_sets(draw, max_size=4):
    n = draw(st.integers(0, max_size))
    return SETS.make_object([f"e{i}" for i in range(n)])


@st.composite
def maps_between(draw, A, B):
    if B.sizes[0] == 0:
        if A.sizes[0]:
            return None
        return SETS.tabulate(A, B, lambda lv, i: 0)
    row = draw(st.lists(st.integers(0, B.sizes[0] - 1), min_size=A.sizes[0], max_size=A.sizes[0]))
    return SETS.tabulate(A, B, lambda lv, i: row[i])


@st.composite
def arrow_presheaves(draw, max_size=3):
    """Presheaf over the walking arrow 0 -u-> 1: level 1 restricts to level 0."""
    n0 = draw(st.integers(1, max_size))
    n1 = draw(st.integers(0, max_size))
    r = draw(st.lists(st.integers(0, n0 - 1), min_size=n1, max_size=n1))
    lv0 = [f"a{i}" for i in range(n0)]
    lv1 = [f"b{i}" for i in range(n1)]
    return WALKING_ARROW.make_object([lv0, lv1], {"u": {f"b{i}": f"a{r[i]}" for i in range(n1)}})


@st.composite
def involution_presheaves(draw, max_size=4):
    """A finite set with an involution, as a presheaf over the one-object index."""
    n = draw(st.integers(0, max_size))
    perm = list(range(n))
    free = list(range(n))
    pairs = draw(st.integers(0, n // 2))
    for _ in range(pairs):
        a = free.pop(0)
        b = free.pop(draw(st.integers(0, len(free) - 1)))
        perm[a], perm[b] = b, a
    lab = [f"x{i}" for i in range(n)]
    return INVOLUTION.make_object([lab], {"t": {lab[i]: lab[perm[i]] for i in range(n)}})
