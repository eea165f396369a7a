"""Singular Hecke algebra: rewriting words into tau-prefix * Hecke-basis form.

Every word is rewritten as a sum of terms tau_{i_1} ... tau_{i_d} T_w.  The
tau prefixes are put in a canonical order up to far commutation.  Since
these elements only span the algebra, agreement of two rewritten forms
proves equality while disagreement proves nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .braid import NEG, POS, SING, BraidWord, Letter, WordSum, random_word
from .coeffs import ONE, RationalFn
from .hecke import Q, Q_INV, HeckeElem, Perm, apply_gen, identity

TauWord = Tuple[int, ...]

VERIFIED_SYNTACTICALLY = "VerifiedSyntactically"
INCONCLUSIVE = "Inconclusive"


def canonical_tau(taus: Iterable[int]) -> TauWord:
    """Lexicographically least word equivalent under t_k t_l = t_l t_k, |k-l| >= 2."""
    rest = list(taus)
    out = []
    while rest:
        best = None
        for p, a in enumerate(rest):
            if all(abs(a - b) >= 2 for b in rest[:p]) and (best is None or a < rest[best]):
                best = p
        out.append(rest.pop(best))
    return tuple(out)


class SingularElem:
    """Map from canonical tau-words to Hecke elements on a common strand count."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[TauWord, HeckeElem]] = None):
        self.n = n
        self.terms: Dict[TauWord, HeckeElem] = {}
        for tau, h in (terms or {}).items():
            self._add(canonical_tau(tau), h)

    def _add(self, tau: TauWord, h: HeckeElem):
        old = self.terms.get(tau)
        new = h if old is None else old + h
        if new.is_zero():
            self.terms.pop(tau, None)
        else:
            self.terms[tau] = new

    @property
    def degrees(self) -> set:
        return {len(t) for t in self.terms}

    def __add__(self, other: "SingularElem") -> "SingularElem":
        n = max(self.n, other.n)
        out = SingularElem(n)
        for src in (self, other):
            for tau, h in src.terms.items():
                out._add(tau, h.embed(n))
        return out

    def __mul__(self, c) -> "SingularElem":
        out = SingularElem(self.n)
        for tau, h in self.terms.items():
            out._add(tau, h * c)
        return out

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def embed(self, n: int) -> "SingularElem":
        return SingularElem(n, {t: h.embed(n) for t, h in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SingularElem):
            return NotImplemented
        n = max(self.n, other.n)
        return self.embed(n).terms == other.embed(n).terms

    def is_zero(self) -> bool:
        return not self.terms

    def render(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for tau in sorted(self.terms):
            label = " ".join(f"t{i}" for i in tau) if tau else "1"
            lines.append(f"{label} ⊗ {self.terms[tau].render()}")
        return "\n".join(lines)

    __str__ = render


# T_w * tau_j expressed as sum_k tau_k * H_k
_PUSH_MEMO: Dict[Tuple[Perm, int], Dict[int, HeckeElem]] = {}


def _merge(acc: Dict[int, HeckeElem], part: Dict[int, HeckeElem], fn=None):
    for k, h in part.items():
        if fn is not None:
            h = fn(h)
        old = acc.get(k)
        new = h if old is None else old + h
        if new.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = new


def _push_tau(w: Perm, j: int) -> Dict[int, HeckeElem]:
    key = (w, j)
    hit = _PUSH_MEMO.get(key)
    if hit is not None:
        return hit
    n = len(w)
    descent = next((a for a in range(1, n) if w[a - 1] > w[a]), None)
    if descent is None:
        result = {j: HeckeElem.one(n)}
    else:
        a = descent
        shorter = apply_gen(w, a)  # T_w = T_shorter * s_a
        result = {}
        if a == j or abs(a - j) >= 2:
            _merge(result, _push_tau(shorter, j), lambda h: h.mul_gen(a))
        else:
            # s_a t_j = q^{-1} t_j s_a s_j s_a - q^{-1} t_a s_a s_j s_a + t_j s_a
            braid = (a, j, a)
            _merge(result, _push_tau(shorter, j), lambda h: h.mul_word(braid) * Q_INV + h.mul_gen(a))
            _merge(result, _push_tau(shorter, a), lambda h: h.mul_word(braid) * -Q_INV)
    _PUSH_MEMO[key] = result
    return result


def _rewrite_word(w: BraidWord, n: int) -> Dict[TauWord, HeckeElem]:
    state: Dict[TauWord, HeckeElem] = {(): HeckeElem.one(n)}
    for letter in w.letters:
        i = letter.index
        if letter.kind == POS:
            state = {t: h.mul_gen(i) for t, h in state.items()}
        elif letter.kind == NEG:
            state = {t: h.mul_gen_inv(i) for t, h in state.items()}
        else:
            new: Dict[TauWord, HeckeElem] = {}
            for tau, h in state.items():
                for perm, c in h.terms.items():
                    for k, part in _push_tau(perm, i).items():
                        key = canonical_tau(tau + (k,))
                        _merge(new, {key: part * c})
            state = new
        state = {t: h for t, h in state.items() if not h.is_zero()}
    return state


def rewrite_to_spanning(expr: Union[BraidWord, WordSum], strands: Optional[int] = None) -> SingularElem:
    """Coordinates of a word (or combination of words) in the spanning set."""
    if isinstance(expr, BraidWord):
        expr = WordSum.of(expr)
    n = max(expr.strands, strands or 1)
    out = SingularElem(n)
    for w, c in expr:
        for tau, h in _rewrite_word(w, n).items():
            out._add(tau, h * c)
    return out


def compare_spanning(a, b) -> str:
    if rewrite_to_spanning(a) == rewrite_to_spanning(b):
        return VERIFIED_SYNTACTICALLY
    return INCONCLUSIVE


# -- desingularization maps -------------------------------------------------

def _replace_tau(w: BraidWord, replace: bool) -> WordSum:
    if w.d == 0:
        raise ValueError("the desingularization maps need at least one singular letter")
    out = WordSum()
    for p in w.singular_positions():
        letters = list(w.letters)
        if replace:
            letters[p] = Letter(POS, letters[p].index)
        else:
            del letters[p]
        out = out + w.with_letters(letters)
    return out


def _lift(fn, expr) -> WordSum:
    if isinstance(expr, BraidWord):
        return fn(expr)
    out = WordSum()
    for w, c in expr:
        out = out + fn(w) * c
    return out


def g0(expr) -> WordSum:
    """Sum over singular letters of the word with that letter deleted."""
    return _lift(lambda w: _replace_tau(w, False), expr)


def g1(expr) -> WordSum:
    """Sum over singular letters of the word with that letter made positive."""
    return _lift(lambda w: _replace_tau(w, True), expr)


# -- probing -----------------------------------------------------------------

@dataclass
class ProbeResult:
    passed: bool
    probes: int
    witness: Optional[Tuple[BraidWord, BraidWord, int, RationalFn]] = None

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return f"ProbePassed ({self.probes} probes)"
        g, d, k, value = self.witness
        return f"Failed: T[{k}]([{g}] * expr * [{d}]) = {value.render()}"


def _probe_words(rng: random.Random, n: int, count: int, max_len: int):
    yield BraidWord(n), BraidWord(n)
    for _ in range(count - 1):
        with_tau = rng.random() < 0.5
        lengths = (rng.randrange(max_len + 1), rng.randrange(max_len + 1))
        words = [random_word(rng, n, L) for L in lengths]
        if with_tau:
            side = rng.randrange(2)
            w = words[side]
            pos = rng.randrange(len(w) + 1)
            letters = list(w.letters)
            letters.insert(pos, Letter(SING, rng.randrange(1, n)))
            words[side] = w.with_letters(letters)
        yield words[0], words[1]


def probe_zero(expr: WordSum, trials: int = 20, seed: int = 0, max_len: int = 4) -> ProbeResult:
    """Necessary test for expr = 0: every basis trace of gamma*expr*delta vanishes."""
    from .traces import trace_vector

    if isinstance(expr, BraidWord):
        expr = WordSum.of(expr)
    if len(expr.degrees()) > 1:
        raise ValueError("probe_zero needs a combination homogeneous in the singular degree")
    n = expr.strands
    expr = expr.embed(n)
    rng = random.Random(seed)
    count = 0
    for gamma, delta in _probe_words(rng, n, trials, max_len):
        count += 1
        vec = None
        for w, c in expr:
            tv = trace_vector(gamma * w * delta)
            part = [c * x for x in tv]
            vec = part if vec is None else [a + b for a, b in zip(vec, part)]
        for k, value in enumerate(vec or []):
            if not value.is_zero():
                return ProbeResult(False, count, (gamma, delta, k, value))
    return ProbeResult(True, count)
