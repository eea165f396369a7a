import random

import pytest
from hypothesis import strategies as st

from singular_hecke.braid import BraidWord, Letter, NEG, POS, SING
from singular_hecke.coeffs import NVARS, LaurentPoly, RationalFn

_ACCEPTANCE = []


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SINGULAR_HECKE_CACHE", str(tmp_path / "trace-cache.tsv"))


@pytest.fixture
def acceptance():
    """Record one line per acceptance criterion; printed in the terminal summary."""

    def record(number, title, ok, elapsed, limit, detail=""):
        _ACCEPTANCE.append((number, title, ok, elapsed, limit, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, limit, detail in sorted(_ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        tail = f" -- {detail}" if detail else ""
        terminalreporter.write_line(
            f"[{status}] criterion {number}: {title} ({elapsed:.2f}s, limit {limit}s){tail}")


# -- strategies ------------------------------------------------------------

# keep polynomials in a few variables so products stay small
_SMALL_VARS = (0, 1, 2, 3)


def _exponent(draw_tuple):
    e = [0] * NVARS
    for idx, k in zip(_SMALL_VARS, draw_tuple):
        e[idx] = k
    return tuple(e)


laurent_polys = st.dictionaries(
    st.tuples(*(st.integers(-2, 2) for _ in _SMALL_VARS)).map(_exponent),
    st.integers(-5, 5),
    max_size=4,
).map(LaurentPoly)

nonzero_polys = laurent_polys.filter(lambda p: not p.is_zero())

rational_fns = st.builds(RationalFn, laurent_polys, nonzero_polys)


@st.composite
def braid_words(draw, max_strands=4, max_length=8, max_singular=2, inverses=True):
    n = draw(st.integers(1, max_strands))
    if n == 1:
        return BraidWord(1, ())
    kinds = [POS, NEG] if inverses else [POS]
    letters = draw(st.lists(st.tuples(st.sampled_from(kinds), st.integers(1, n - 1)), max_size=max_length))
    d = draw(st.integers(0, min(max_singular, len(letters))))
    slots = draw(st.permutations(range(len(letters)))) if letters else []
    letters = [Letter(SING if p in set(slots[:d]) else k, i) for p, (k, i) in enumerate(letters)]
    return BraidWord(n, tuple(letters))


def rng(seed):
    return random.Random(seed)
