"""The invariant of singular links and its normal forms.

Raw form: z^-(n-1) v^(e-n+1) times the universal trace, under q = s^2 and
z = (s^2 - 1)/(1 - s^2 v^2).  Resolution form: the weighted sum of the
classical invariant over all resolutions, which is the raw form with X
replaced by (v/s) X.  Canonical form: the resolution form rewritten in
t = s v and x = s - 1/s.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .braid import NEG, POS, SING, BraidWord, Letter
from .coeffs import (
    ONE_POLY,
    REGISTRY,
    LaurentPoly,
    RationalFn,
    as_rational,
    substitute,
    var,
)
from .traces import resolution_traces, trace_vector, universal_trace
from .xypoly import CANONICAL, RAW, InvariantPoly

Q, Z, S, V, T, X_SKEIN = (var(n) for n in ("q", "z", "s", "v", "t", "x"))

# q = s^2, y = v^2 and y = (z - q + 1)/(q z)  =>  z = (s^2 - 1)/(1 - s^2 v^2)
HOMFLY_BINDINGS = {"q": S ** 2, "z": (S ** 2 - 1) / (1 - S ** 2 * V ** 2)}
RESCALE_TO_RESOLUTION = V / S


class NotExpressible(ArithmeticError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


def normalization(w: BraidWord) -> RationalFn:
    n = w.strands
    return Z ** (-(n - 1)) * V ** (w.epsilon - n + 1)


def _to_sv(r: RationalFn) -> RationalFn:
    return substitute(r, HOMFLY_BINDINGS)


def invariant_raw(w: BraidWord, jobs: int = 1) -> InvariantPoly:
    norm = normalization(w)
    return universal_trace(w, jobs).map(lambda c: _to_sv(c * norm))


def classical_invariant(w: BraidWord) -> RationalFn:
    """HOMFLY value in (s, v) of a non-singular word."""
    return invariant_raw(w).coefficient(0)


def resolution_invariant(w: BraidWord, jobs: int = 1) -> InvariantPoly:
    """sum_S X^|S| Y^(d-|S|) times the classical invariant of w(S)."""
    coeffs: Dict[int, RationalFn] = {}
    resolutions = dict(w.resolutions())
    for subset, value in resolution_traces(w, jobs):
        r = resolutions[subset]
        term = _to_sv(value * normalization(r))
        k = len(subset)
        coeffs[k] = coeffs[k] + term if k in coeffs else term
    return InvariantPoly(w.d, coeffs)


def basis_invariants(w: BraidWord, jobs: int = 1) -> List[RationalFn]:
    """Normalized basis traces: z^-(n-1) v^(e-n+1) T_k^d(w) in (s, v)."""
    norm = normalization(w)
    return [_to_sv(c * norm) for c in trace_vector(w, jobs)]


# -- canonical (t, x) form ------------------------------------------------

_T = REGISTRY.index("t")
_S = REGISTRY.index("s")
_SQUARE_MINUS_ONE = LaurentPoly.var("s", 2) - 1


def _x_power(k: int) -> Dict[int, int]:
    """(s - 1/s)^k as {s-exponent: coefficient}."""
    from math import comb

    return {k - 2 * j: comb(k, j) * (-1) ** j for j in range(k + 1)}


def _s_poly_to_x(coeffs: Dict[int, int], shift: int) -> Dict[int, int]:
    """Rewrite sum c_e s^(e+shift) as sum a_k x^k; raises on leftover."""
    rem = {e + shift: c for e, c in coeffs.items() if c}
    out: Dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < 0:
            break
        a = rem[top]
        out[top] = a
        for e, c in _x_power(top).items():
            v = rem.get(e, 0) - a * c
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    if rem:
        residual = " + ".join(f"{c}*s^{e}" for e, c in sorted(rem.items()))
        raise NotExpressible(f"leftover terms {residual} are not a polynomial in x", residual)
    return out


def canonical_coefficient(r) -> RationalFn:
    """Rewrite an (s, v) expression as a Laurent polynomial in (t, x)."""
    r = as_rational(r)
    if r.variables() - {"s", "v"}:
        raise NotExpressible(f"unexpected variables in {r.render()}", r.render())
    r = substitute(r, {"v": T / S})
    num, den = r.num, r.den
    m = 0
    while not den.is_monomial():
        q = den.divexact(_SQUARE_MINUS_ONE)
        if q is None:
            break
        den = q
        m += 1
    if not den.is_monomial():
        q = num.divexact(den)
        if q is None:
            raise NotExpressible(f"denominator {den.render()} is not a power of s^2 - 1", r.render())
        num, den = q, ONE_POLY
    (mono_exp, mono_c), = den.terms.items()
    if mono_exp[_T] or any(e for i, e in enumerate(mono_exp) if i not in (_S, _T)):
        raise NotExpressible(f"unexpected denominator {den.render()}", r.render())
    # num / (mono_c * s^a * (s^2 - 1)^m) with s^2 - 1 = s x
    shift = -mono_exp[_S] - m
    by_t: Dict[int, Dict[int, int]] = {}
    for e, c in num.terms.items():
        if c % mono_c:
            raise NotExpressible(f"non-integral coefficient in {r.render()}", r.render())
        by_t.setdefault(e[_T], {})[e[_S]] = c // mono_c
    terms = {}
    for te, scoeffs in by_t.items():
        try:
            xs = _s_poly_to_x(scoeffs, shift)
        except NotExpressible as exc:
            raise NotExpressible(f"t^{te} coefficient: {exc}", exc.residual) from None
        for k, a in xs.items():
            e = [0] * len(REGISTRY)
            e[_T] = te
            e[REGISTRY.index("x")] = k - m
            terms[tuple(e)] = a
    return RationalFn(LaurentPoly(terms))


def to_canonical(p: InvariantPoly) -> InvariantPoly:
    return p.map(canonical_coefficient, mode=CANONICAL)


def canonical_invariant(w: BraidWord, jobs: int = 1) -> InvariantPoly:
    return to_canonical(resolution_invariant(w, jobs))


# -- relation checks ----------------------------------------------------------

FORMS = ("canonical", "raw", "resolution")


def invariant(w: BraidWord, form: str = "canonical", jobs: int = 1) -> InvariantPoly:
    if form == "canonical":
        return canonical_invariant(w, jobs)
    if form == "raw":
        return invariant_raw(w, jobs)
    if form == "resolution":
        return resolution_invariant(w, jobs)
    raise ValueError(f"unknown form {form!r}")


def _skein_vars(form: str) -> Tuple[RationalFn, RationalFn]:
    if form == "canonical":
        return T, X_SKEIN
    return S * V, S - S ** -1


def _append(w: BraidWord, letter: Letter) -> BraidWord:
    return w.with_letters(w.letters + (letter,))


def _prepend(w: BraidWord, letter: Letter) -> BraidWord:
    return w.with_letters((letter,) + w.letters)


def skein_check(w: BraidWord, i: int, form: str = "canonical") -> bool:
    """t^-1 I(w s_i) - t I(w s_i^-1) = x I(w)."""
    t, x = _skein_vars(form)
    plus = invariant(_append(w, Letter(POS, i)), form)
    minus = invariant(_append(w, Letter(NEG, i)), form)
    zero = invariant(w, form)
    return plus * t ** -1 - minus * t == zero * x


def desing_check(w: BraidWord, i: int, form: str = "resolution") -> bool:
    """I(t_i w) = X I(s_i w) + Y I(w); in raw form X carries the factor s/v."""
    lhs = invariant(_prepend(w, Letter(SING, i)), form)
    plus = invariant(_prepend(w, Letter(POS, i)), form)
    zero = invariant(w, form)
    if form == "raw":
        plus = plus * (S / V)
    return lhs == plus.times_x() + zero.times_y()
