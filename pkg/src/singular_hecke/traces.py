"""The basis T_0^d .. T_d^d of Markov traces on singular Hecke algebras.

Everything is driven by the Ocneanu trace of the 2^d resolutions of a
word: T_k^d(w) = k! (d-k)! * (sum of T_0^0 over resolutions with exactly k
singular letters turned into positive crossings).  The recursive
definition through the desingularization maps is kept as an independent
cross-check.
"""

from __future__ import annotations

import itertools
import math
import threading
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from .braid import BraidWord, Letter, POS, SING, WordSum
from .cache import TraceCache
from .coeffs import ONE, ZERO, RationalFn, const, var
from .hecke import HeckeElem, ocneanu_trace
from .singular import g0, g1
from .xypoly import InvariantPoly

S = var("s")

_MEMO: Dict[BraidWord, RationalFn] = {}
_MEMO_LOCK = threading.Lock()
_FILE_CACHE: Optional[TraceCache] = None


def configure_cache(path: Optional[Union[str, Path]]) -> Optional[TraceCache]:
    """Attach (or with None detach) the persistent trace cache."""
    global _FILE_CACHE
    _FILE_CACHE = TraceCache(Path(path)) if path is not None else None
    return _FILE_CACHE


def clear_memo():
    with _MEMO_LOCK:
        _MEMO.clear()


def t00(w: BraidWord) -> RationalFn:
    """Ocneanu trace of a non-singular word."""
    if w.d:
        raise ValueError(f"{w} has singular letters; resolve it first")
    hit = _MEMO.get(w)
    if hit is not None:
        return hit
    h = HeckeElem.from_word(w)
    value = None
    if _FILE_CACHE is not None:
        key = f"{h.n}|{h.render()}"
        value = _FILE_CACHE.get(key)
        if value is None:
            value = ocneanu_trace(h)
            _FILE_CACHE.put(key, value)
    else:
        value = ocneanu_trace(h)
    with _MEMO_LOCK:
        _MEMO[w] = value
    return value


def _t00_many(words: Sequence[BraidWord], jobs: int = 1) -> List[RationalFn]:
    if jobs <= 1 or len(words) < 2:
        return [t00(w) for w in words]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        values = list(pool.map(t00, words))
    with _MEMO_LOCK:
        for w, v in zip(words, values):
            _MEMO.setdefault(w, v)
    return values


def resolution_traces(w: BraidWord, jobs: int = 1):
    """[(S, T_0^0(w(S)))] in resolution order."""
    res = w.resolutions()
    values = _t00_many([r for _, r in res], jobs)
    return [(subset, v) for (subset, _), v in zip(res, values)]


def _sums_by_size(w: BraidWord, jobs: int = 1) -> List[RationalFn]:
    sums = [ZERO] * (w.d + 1)
    for subset, value in resolution_traces(w, jobs):
        sums[len(subset)] = sums[len(subset)] + value
    return sums


def _weight(k: int, d: int) -> int:
    return math.factorial(k) * math.factorial(d - k)


def trace_vector(w: BraidWord, jobs: int = 1) -> List[RationalFn]:
    """(T_0^d(w), ..., T_d^d(w))."""
    d = w.d
    return [c * _weight(k, d) for k, c in enumerate(_sums_by_size(w, jobs))]


def basis_trace(k: int, w: BraidWord, jobs: int = 1) -> RationalFn:
    if not 0 <= k <= w.d:
        raise ValueError(f"trace index {k} outside 0..{w.d}")
    return trace_vector(w, jobs)[k]


def _as_sum(expr) -> WordSum:
    return WordSum.of(expr) if isinstance(expr, BraidWord) else expr


def _degree(expr: WordSum) -> Optional[int]:
    degrees = expr.degrees()
    if len(degrees) > 1:
        raise ValueError("combination is not homogeneous in the singular degree")
    return next(iter(degrees), None)


def combination_trace_vector(expr) -> List[RationalFn]:
    """Trace vector of a homogeneous linear combination of words."""
    expr = _as_sum(expr)
    d = _degree(expr)
    if d is None:
        return []
    vec = [ZERO] * (d + 1)
    for w, c in expr:
        vec = [a + c * b for a, b in zip(vec, trace_vector(w))]
    return vec


def _recursive(k: int, expr: WordSum, alternative: bool) -> RationalFn:
    d = _degree(expr)
    if d is None:
        return ZERO
    if not 0 <= k <= d:
        raise ValueError(f"trace index {k} outside 0..{d}")
    if d == 0:
        total = ZERO
        for w, c in expr:
            total = total + c * t00(w)
        return total
    if alternative and 1 <= k <= d - 1:
        return _recursive(k - 1, g1(expr), alternative)
    if k < d:
        return _recursive(k, g0(expr), alternative)
    return _recursive(d - 1, g1(expr), alternative)


def basis_trace_recursive(k: int, expr, route: str = "primary") -> RationalFn:
    """T_k^d through the desingularization maps.

    route "primary": T_k^d = T_k^{d-1} o g0 for k < d and T_{d-1}^{d-1} o g1 for k = d.
    route "alternative": T_k^d = T_{k-1}^{d-1} o g1 whenever 1 <= k <= d-1.
    """
    if route not in ("primary", "alternative"):
        raise ValueError(f"unknown route {route!r}")
    return _recursive(k, _as_sum(expr), route == "alternative")


TraceFn = Callable[[WordSum], RationalFn]


def phi(which: int, trace: TraceFn) -> TraceFn:
    """Lift a degree d trace to degree d+1 through g0 (which=0) or g1 (which=1)."""
    g = g0 if which == 0 else g1
    return lambda expr: trace(g(_as_sum(expr)))


def universal_trace(w: BraidWord, jobs: int = 1) -> InvariantPoly:
    """sum_S s^|S| X^|S| Y^(d-|S|) T_0^0(w(S)); coefficients in (s, q, z)."""
    sums = _sums_by_size(w, jobs)
    return InvariantPoly(w.d, {k: c * S ** k for k, c in enumerate(sums)})


def universal_trace_from_basis(w: BraidWord, jobs: int = 1) -> InvariantPoly:
    d = w.d
    vec = trace_vector(w, jobs)
    return InvariantPoly(d, {k: vec[k] * S ** k * const(_weight(k, d)).inv() for k in range(d + 1)})


def gamma_word(b: int, d: int) -> BraidWord:
    """t_d ... t_2 t_1 s_1 s_2 ... s_b on max(2, d+1) strands."""
    n = max(2, d + 1)
    letters = [Letter(SING, i) for i in range(d, 0, -1)] + [Letter(POS, i) for i in range(1, b + 1)]
    return BraidWord(n, tuple(letters))


def independence_matrix(d: int) -> List[List[RationalFn]]:
    """Entry (a, b) is T_a^d evaluated on gamma_word(b, d)."""
    columns = [trace_vector(gamma_word(b, d)) for b in range(d + 1)]
    return [[columns[b][a] for b in range(d + 1)] for a in range(d + 1)]


def determinant(matrix: Sequence[Sequence[RationalFn]]) -> RationalFn:
    n = len(matrix)
    total = ZERO
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = ONE
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
            if term.is_zero():
                break
        total = total + (-term if inversions % 2 else term)
    return total


def markov_class_eq(a, b) -> bool:
    """Equality of two singular braids (or combinations) under all basis traces.

    Two single words are compared through their normalized basis invariants,
    which absorb stabilizations.  Combinations are compared through raw trace
    vectors, which are stable under adding strands.
    """
    if isinstance(a, BraidWord) and isinstance(b, BraidWord):
        if a.d != b.d:
            raise ValueError(f"degree mismatch: {a.d} vs {b.d}")
        from .invariant import basis_invariants

        return basis_invariants(a) == basis_invariants(b)
    va, vb = combination_trace_vector(a), combination_trace_vector(b)
    if va and vb and len(va) != len(vb):
        raise ValueError("degree mismatch")
    width = max(len(va), len(vb))
    va = va + [ZERO] * (width - len(va))
    vb = vb + [ZERO] * (width - len(vb))
    return all(x == y for x, y in zip(va, vb))
