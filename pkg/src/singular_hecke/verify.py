"""Property suites behind ``singular-hecke verify``.

Each suite returns a :class:`SuiteReport`; a case is one checked instance.
Lemma-style identities report one of four states: VerifiedExactly (exact
Hecke computation), VerifiedSyntactically (equal spanning-set coordinates),
ProbePassed (all trace probes vanished) or Failed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .braid import (
    BraidWord,
    Letter,
    NEG,
    POS,
    SING,
    WordSum,
    random_markov_walk,
    random_word,
)
from .coeffs import ONE, ZERO, const, eval_at, var
from .hecke import (
    HeckeElem,
    b_element,
    b_inverse,
    c_element,
    delta0,
    omega0,
)
from .invariant import (
    basis_invariants,
    canonical_invariant,
    desing_check,
    invariant_raw,
    resolution_invariant,
    skein_check,
)
from .singular import INCONCLUSIVE, VERIFIED_SYNTACTICALLY, compare_spanning, probe_zero
from .traces import (
    basis_trace_recursive,
    determinant,
    independence_matrix,
    trace_vector,
)

Q = var("q")
Z = var("z")

VERIFIED_EXACTLY = "VerifiedExactly"
PROBE_PASSED = "ProbePassed"
PASSED = "Passed"
FAILED = "Failed"

GOOD = {VERIFIED_EXACTLY, VERIFIED_SYNTACTICALLY, PROBE_PASSED, PASSED}


@dataclass
class CaseResult:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in GOOD

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{tag} {self.name}: {self.status}{tail}"


@dataclass
class SuiteReport:
    suite: str
    cases: List[CaseResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.cases)

    def add(self, name: str, ok: bool, detail: str = "", status: Optional[str] = None):
        self.cases.append(CaseResult(name, status or (PASSED if ok else FAILED), detail))

    def summary(self) -> str:
        return f"{self.suite}: {self.passed}/{len(self.cases)} passed"


@dataclass
class SuiteOptions:
    d: int = 2
    n: int = 4
    seed: int = 0
    trials: int = 20
    max_length: int = 8


# -- word-level helpers ---------------------------------------------------

def _w(n: int, *letters: Letter) -> WordSum:
    return WordSum.of(BraidWord(n, tuple(letters)))


def _sig(n: int, i: int) -> WordSum:
    return _w(n, Letter(POS, i))


def _tau(n: int, i: int, a: int = 1) -> WordSum:
    return _w(n, *([Letter(SING, i)] * a))


def _one(n: int) -> WordSum:
    return _w(n)


def _b(n: int, i: int, j: int) -> WordSum:
    return _sig(n, i) + _sig(n, j) - _one(n) * (Q - 1)


def _spanning_dependency_factor(n: int, i: int, j: int) -> WordSum:
    si, sj = _sig(n, i), _sig(n, j)
    return si * sj + sj * si - si * (Q - 1) - sj * (Q - 1) + _one(n) * (Q * Q - Q + 1)


def _c(n: int, i: int, j: int) -> WordSum:
    si, sj = _sig(n, i), _sig(n, j)
    return si * sj * 2 - si * (Q - 1) - sj * (Q - 1) + _one(n) * (Q * Q + 1)


def singular_identities() -> List[Tuple[str, WordSum, WordSum]]:
    """(name, lhs, rhs) for the relations checked by trace probes."""
    out = []
    for a in (1, 2):
        n = 3
        for i, j in ((1, 2), (2, 1)):
            tag = f"[i={i},j={j},a={a}]"
            si, sj = _sig(n, i), _sig(n, j)
            ti, tj = _tau(n, i, a), _tau(n, j, a)
            braid = si * sj * si
            p = _spanning_dependency_factor(n, i, j)
            out.append((f"spanning_dependency{tag}", ti * p, tj * p))
            out.append((f"adjacent_exchange{tag}", si * tj,
                        tj * braid * Q ** -1 - ti * braid * Q ** -1 + tj * si))
            out.append((f"adjacent_exchange_reversed{tag}", sj * ti,
                        tj * _b(n, i, j) - ti * (si - _one(n) * (Q - 1))))
            out.append((f"B_conjugation{tag}", _b(n, i, j) * ti, tj * _b(n, i, j)))
    for a in (1, 2):
        n = 4
        for i, j in ((1, 3), (3, 1)):
            tag = f"[i={i},j={j},a={a}]"
            out.append((f"far_commutation{tag}", _sig(n, i) * _tau(n, j, a), _tau(n, j, a) * _sig(n, i)))
        c13 = _c(n, 1, 3)
        out.append((f"C_relation[i=1,j=3,a={a}]", _tau(n, 1, a) * c13, _tau(n, 3, a) * c13))
    for a in (1, 2):
        for b in (1, 2):
            n = 4
            diff = _sig(n, 3) - _sig(n, 1)
            lhs = _tau(n, 1, a) * _tau(n, 3, b) * diff
            rhs = ((_tau(n, 2, b) * _tau(n, 1, a) + _tau(n, 2, a) * _tau(n, 3, b)) * diff
                   + _tau(n, 2, a + b) * (_b(n, 1, 2) - _b(n, 2, 3)))
            out.append((f"three_tau_relation[a={a},b={b}]", lhs, rhs))
    return out


def hecke_identities() -> List[Tuple[str, HeckeElem, HeckeElem]]:
    """(name, lhs, rhs) for the identities decided exactly in H(B_n)."""
    out = []
    for i, j in ((1, 2), (2, 1)):
        b, binv = b_element(3, i, j), b_inverse(3, i, j)
        out.append((f"B_inverse[i={i},j={j}]", b * binv, HeckeElem.one(3)))
        out.append((f"B_inverse_left[i={i},j={j}]", binv * b, HeckeElem.one(3)))
    s = {i: HeckeElem.gen(4, i) for i in (1, 2, 3)}
    diff = s[1] - s[3]
    out.append(("sigma_difference_square", diff * diff, HeckeElem.one(4) * (Q + 1) ** 2 - c_element(4, 1, 3)))
    w0 = omega0(4)
    inner = s[1] * w0 * Q + w0 * s[3] * Q + s[1] * w0 * s[3] * (Q - 1) - s[1] * w0 * s[3] * s[2]
    out.append(("C13_factorization", c_element(4, 1, 3), inner * (s[1] - (Q - 1)) * Q ** -2))
    d0 = delta0(2)
    zs = HeckeElem.one(2) * Z - HeckeElem.gen(2, 1)
    out.append(("delta0_inverse", d0 * zs, HeckeElem.one(2)))
    out.append(("delta0_inverse_left", zs * d0, HeckeElem.one(2)))
    return out


def suite_lemmas(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("lemmas")
    for name, lhs, rhs in hecke_identities():
        ok = lhs == rhs
        report.add(name, ok, status=VERIFIED_EXACTLY if ok else FAILED)
    for name, lhs, rhs in singular_identities():
        if max(lhs.strands, rhs.strands) > max(opts.n, 3):
            continue
        syntactic = compare_spanning(lhs, rhs)
        probe = probe_zero(lhs - rhs, trials=opts.trials, seed=opts.seed)
        status = PROBE_PASSED if probe.passed else FAILED
        detail = f"{probe.probes} probes" if probe.passed else probe.describe()
        report.add(name, probe.passed, f"{detail}; spanning-set comparison: {syntactic}", status)
    return report


# -- random instance generators -------------------------------------------

def _random_instance(rng: random.Random, opts: SuiteOptions, min_strands: int = 2) -> BraidWord:
    n = rng.randint(min_strands, max(opts.n, min_strands))
    d = rng.randint(0, opts.d)
    length = rng.randint(d, max(d, opts.max_length))
    return random_word(rng, n, length, d)


def suite_skein(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("skein")
    rng = random.Random(opts.seed)
    for k in range(opts.trials):
        w = _random_instance(rng, opts)
        i = rng.randrange(1, w.strands)
        ok = skein_check(w, i, "canonical") and skein_check(w, i, "raw")
        report.add(f"skein[{k}] w={w.format() or '(empty)'} n={w.strands} i={i}", ok)
    return report


def suite_desing(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("desing")
    rng = random.Random(opts.seed)
    local = SuiteOptions(max(opts.d - 1, 0), opts.n, opts.seed, opts.trials, opts.max_length)
    for k in range(opts.trials):
        w = _random_instance(rng, local)
        i = rng.randrange(1, w.strands)
        ok = desing_check(w, i, "resolution") and desing_check(w, i, "raw")
        report.add(f"desing[{k}] w={w.format() or '(empty)'} n={w.strands} i={i}", ok)
    return report


def markov_pairs(opts: SuiteOptions, max_steps: int = 6, max_strands: int = 5):
    rng = random.Random(opts.seed)
    for k in range(opts.trials):
        w = _random_instance(rng, SuiteOptions(opts.d, min(opts.n, max_strands), opts.seed, opts.trials, 6))
        steps = rng.randint(1, max_steps)
        yield w, random_markov_walk(w, steps, rng.randrange(1 << 30), max_strands)


def suite_markov(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("markov")
    for k, (w, v) in enumerate(markov_pairs(opts)):
        ok = invariant_raw(w) == invariant_raw(v)
        report.add(f"markov[{k}] {w.format() or '(empty)'} (n={w.strands}) ~ {v.format()} (n={v.strands})",
                   ok, status=PASSED if ok else FAILED)
    return report


def suite_independence(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("independence")
    for d in range(0, opts.d + 1):
        m = independence_matrix(d)
        at_zero = [[eval_at(e, "z", 0) for e in row] for row in m]
        expected = [[(const(math.factorial(d - a) * math.factorial(a)) * Q ** a if a == b else ZERO)
                     for b in range(d + 1)] for a in range(d + 1)]
        ok = at_zero == expected
        diag = ", ".join(at_zero[a][a].render() for a in range(d + 1))
        report.add(f"independence[d={d}] diagonal at z=0", ok, f"diag = ({diag})")
        det0 = determinant(at_zero)
        report.add(f"independence[d={d}] determinant at z=0", not det0.is_zero(), f"det = {det0.render()}")
    return report


def suite_traces(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("traces")
    rng = random.Random(opts.seed)
    for d in range(1, opts.d + 1):
        for k in range(opts.trials):
            n = rng.randint(2, max(opts.n, 2))
            w = random_word(rng, n, rng.randint(d, max(d, opts.max_length)), d)
            closed = trace_vector(w)
            ok = all(closed[j] == basis_trace_recursive(j, w, "primary")
                     and closed[j] == basis_trace_recursive(j, w, "alternative") for j in range(d + 1))
            report.add(f"traces[d={d},{k}] {w.format()} (n={n})", ok)
    return report


def universality_pairs(opts: SuiteOptions):
    """Half Markov-equivalent pairs, half independent random pairs."""
    rng = random.Random(opts.seed)
    for k in range(opts.trials):
        d = rng.randint(0, opts.d)
        n = rng.randint(2, max(opts.n, 2))
        w = random_word(rng, n, rng.randint(d, max(d, 6)), d)
        if k % 2 == 0:
            v = random_markov_walk(w, rng.randint(1, 4), rng.randrange(1 << 30), 5)
        else:
            v = random_word(rng, rng.randint(2, max(opts.n, 2)), rng.randint(d, max(d, 6)), d)
        yield w, v


def suite_universality(opts: SuiteOptions) -> SuiteReport:
    report = SuiteReport("universality")
    for k, (w, v) in enumerate(universality_pairs(opts)):
        same_inv = invariant_raw(w) == invariant_raw(v)
        same_basis = basis_invariants(w) == basis_invariants(v)
        report.add(f"universality[{k}] {w.format()} vs {v.format()}", same_inv == same_basis,
                   f"invariant equal: {same_inv}, basis equal: {same_basis}")
    return report


SUITES: Dict[str, Callable[[SuiteOptions], SuiteReport]] = {
    "skein": suite_skein,
    "desing": suite_desing,
    "markov": suite_markov,
    "lemmas": suite_lemmas,
    "independence": suite_independence,
    "traces": suite_traces,
    "universality": suite_universality,
}


def run_suite(name: str, opts: SuiteOptions) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(opts)
