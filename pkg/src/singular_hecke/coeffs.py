"""Exact sparse Laurent polynomials and rational functions.

Every expression lives over one fixed, ordered variable registry
``q, z, s, v, t, x, X, Y``.  Exponent vectors carry one slot per registry
variable and may be negative.  Relations between the variables
(``q = s^2``, ``t = s v`` and so on) are never applied implicitly; they are
introduced only through :func:`substitute`.

Fractions are normalized cheaply (monomial content, integer content, sign and
an exact-division attempt) rather than by a full multivariate gcd.  Equality
of fractions is decided by cross multiplication, so it is always exact.
"""

from __future__ import annotations

import math
import operator
import re
from typing import Dict, Iterable, Mapping, Tuple, Union

Exponent = Tuple[int, ...]


class VarRegistry:
    """Ordered, immutable set of variable names."""

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None


REGISTRY = VarRegistry(("q", "z", "s", "v", "t", "x", "X", "Y"))
NVARS = len(REGISTRY)
ZERO_EXP: Exponent = (0,) * NVARS


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


def _exp_of(powers: Mapping[str, int]) -> Exponent:
    e = [0] * NVARS
    for name, k in powers.items():
        e[REGISTRY.index(name)] += k
    return tuple(e)


def _render_monomial(exp: Exponent) -> str:
    parts = []
    for name, k in zip(REGISTRY.names, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _colex_key(exp: Exponent) -> Exponent:
    return exp[::-1]


class LaurentPoly:
    """Finite map from exponent vectors to nonzero Python integers."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        self.terms: Dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            if len(e) != NVARS:
                raise ValueError(f"exponent vector {e} has wrong length")
            if c:
                self.terms[tuple(e)] = int(c)
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Exponent, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls._wrap({ZERO_EXP: int(c)} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls._wrap({_exp_of({name: power}): 1})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff: int = 1) -> "LaurentPoly":
        return cls._wrap({_exp_of(powers): coeff} if coeff else {})

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ZERO_EXP in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get(ZERO_EXP, 0)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(REGISTRY.names[i] for i, k in enumerate(e) if k)
        return used

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return ZERO_EXP
        return tuple(map(min, zip(*self.terms)))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return ZERO_EXP
        return tuple(map(max, zip(*self.terms)))

    def leading(self) -> Tuple[Exponent, int]:
        """Lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    def content(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            c2 = out.get(e, 0) + c
            if c2:
                out[e] = c2
            else:
                del out[e]
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._wrap({})
            return LaurentPoly._wrap({e: c * other for e, c in self.terms.items()})
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) < len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exponent, int] = {}
        add = operator.add
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(add, e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial() or abs(next(iter(self.terms.values()))) != 1:
                raise DivisionByZero(f"negative power of non-unit {self}")
            (e, c), = self.terms.items()
            return LaurentPoly._wrap({tuple(k * a for a in e): c ** (-k)})
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Exponent) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exp``."""
        if exp == ZERO_EXP:
            return self
        add = operator.add
        return LaurentPoly._wrap({tuple(map(add, e, exp)): c for e, c in self.terms.items()})

    def exact_div_int(self, k: int) -> "LaurentPoly":
        return LaurentPoly._wrap({e: c // k for e, c in self.terms.items()})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient ``self / other`` with integer coefficients, or None."""
        if not other.terms:
            raise DivisionByZero("division by the zero polynomial")
        if not self.terms:
            return self
        if other.is_monomial():
            (e, c), = other.terms.items()
            if any(v % c for v in self.terms.values()):
                return None
            neg = tuple(-a for a in e)
            return LaurentPoly._wrap({tuple(map(operator.add, f, neg)): v // c for f, v in self.terms.items()})
        # shift both into honest polynomials, then lex long division
        ma, mb = self.min_exponents(), other.min_exponents()
        a = self.shift(tuple(-k for k in ma))
        b = other.shift(tuple(-k for k in mb))
        lb, cb = b.leading()
        rem = dict(a.terms)
        quot: Dict[Exponent, int] = {}
        sub = operator.sub
        while rem:
            lr = max(rem)
            cr = rem[lr]
            de = tuple(map(sub, lr, lb))
            if min(de) < 0 or cr % cb:
                return None
            cq = cr // cb
            quot[de] = cq
            add = operator.add
            for e, c in b.terms.items():
                f = tuple(map(add, e, de))
                v = rem.get(f, 0) - cq * c
                if v:
                    rem[f] = v
                else:
                    rem.pop(f, None)
        shift = tuple(map(sub, ma, mb))
        return LaurentPoly._wrap(quot).shift(shift)

    # -- comparison, hashing, evaluation ------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({ZERO_EXP: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def eval_mod(self, point: Tuple[int, ...], prime: int) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for base, k in zip(point, e):
                if k:
                    term = term * pow(base, k, prime) % prime
            total += term
        return total % prime

    def coefficient_map(self, name: str) -> Dict[int, "LaurentPoly"]:
        """Group terms by the exponent of one variable."""
        idx = REGISTRY.index(name)
        groups: Dict[int, Dict[Exponent, int]] = {}
        for e, c in self.terms.items():
            k = e[idx]
            rest = e[:idx] + (0,) + e[idx + 1:]
            groups.setdefault(k, {})[rest] = c
        return {k: LaurentPoly._wrap(t) for k, t in groups.items()}

    # -- rendering --------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _colex_key(item[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = _render_monomial(e)
            out.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(out)

    __str__ = render

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"


ONE_POLY = LaurentPoly.constant(1)
ZERO_POLY = LaurentPoly.constant(0)


def _as_poly(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    return NotImplemented


# Fixed evaluation point for hashing fractions; equal fractions agree here.
_HASH_PRIME = (1 << 61) - 1
_HASH_POINT = (1000003, 1000033, 1000037, 1000039, 1000081, 1000099, 1000117, 1000121)


class RationalFn:
    """Quotient of two Laurent polynomials, kept lightly normalized.

    The stored denominator is an honest polynomial with no monomial factor,
    primitive relative to the numerator, and with positive leading
    coefficient.  When the numerator is divisible by it the denominator
    collapses to 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num) if not isinstance(num, LaurentPoly) else num
        den = _as_poly(den) if not isinstance(den, LaurentPoly) else den
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFn parts must be int or LaurentPoly")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFn":
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def var(cls, name: str, power: int = 1) -> "RationalFn":
        return cls._raw(LaurentPoly.var(name, power), ONE_POLY)

    @classmethod
    def const(cls, c: int) -> "RationalFn":
        return cls._raw(LaurentPoly.constant(c), ONE_POLY)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_laurent(self) -> bool:
        return self.den == ONE_POLY

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den is other.den or self.den == other.den:
            if self.den == ONE_POLY:
                return RationalFn._raw(self.num + other.num, ONE_POLY)
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if self.den == ONE_POLY:
                return RationalFn._raw(self.num * other, ONE_POLY)
            return RationalFn(self.num * other, self.den)
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return RationalFn._raw(self.num * other.num, ONE_POLY)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RationalFn":
        if not self.num.terms:
            raise DivisionByZero("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _as_rat(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if self.den == ONE_POLY:
            return RationalFn._raw(self.num ** k, ONE_POLY)
        return RationalFn(self.num ** k, self.den ** k)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self._hash is None:
            d = self.den.eval_mod(_HASH_POINT, _HASH_PRIME)
            if d == 0:
                self._hash = 0
            else:
                n = self.num.eval_mod(_HASH_POINT, _HASH_PRIME)
                self._hash = hash(n * pow(d, -1, _HASH_PRIME) % _HASH_PRIME)
        return self._hash

    def render(self) -> str:
        if self.den == ONE_POLY:
            return self.num.render()
        return f"({self.num.render()}) / ({self.den.render()})"

    __str__ = render

    def __repr__(self):
        return f"RationalFn({self.render()!r})"


def _as_rat(value):
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, int):
        return RationalFn._raw(LaurentPoly.constant(value), ONE_POLY)
    if isinstance(value, LaurentPoly):
        return RationalFn._raw(value, ONE_POLY)
    return NotImplemented


def as_rational(value) -> RationalFn:
    r = _as_rat(value)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {type(value).__name__} to RationalFn")
    return r


def _normalize(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if not num.terms:
        return ZERO_POLY, ONE_POLY
    m = den.min_exponents()
    if m != ZERO_EXP:
        neg = tuple(-k for k in m)
        den = den.shift(neg)
        num = num.shift(neg)
    g = math.gcd(num.content(), den.content())
    if den.leading()[1] < 0:
        g = -g
    if g != 1:
        num = num.exact_div_int(g)
        den = den.exact_div_int(g)
    if den.is_constant() or len(den.terms) == 1:
        return num, den
    q = num.divexact(den)
    if q is not None:
        return q, ONE_POLY
    return num, den


def _cancel(num: LaurentPoly, den: LaurentPoly, factors: Iterable[LaurentPoly]):
    for f in factors:
        if f.is_constant() or f.is_monomial():
            continue
        while True:
            qd = den.divexact(f)
            if qd is None:
                break
            qn = num.divexact(f)
            if qn is None:
                break
            num, den = qn, qd
    return num, den


def _poly_substitute(p: LaurentPoly, bindings: Mapping[int, RationalFn]):
    """Substitute into one Laurent polynomial; returns (num, den) unnormalized."""
    if not p.terms:
        return ZERO_POLY, ONE_POLY
    lo = p.min_exponents()
    hi = p.max_exponents()
    lows = {i: min(lo[i], 0) for i in bindings}
    highs = {i: max(hi[i], 0) for i in bindings}
    for i, r in bindings.items():
        if lows[i] < 0 and r.is_zero():
            raise DivisionByZero(f"negative power of {REGISTRY.names[i]} bound to zero")
    cache: Dict[Tuple[int, int, int], LaurentPoly] = {}

    def power(i: int, which: int, k: int) -> LaurentPoly:
        key = (i, which, k)
        if key not in cache:
            base = bindings[i].num if which == 0 else bindings[i].den
            cache[key] = base ** k
        return cache[key]

    num = ZERO_POLY
    for e, c in p.terms.items():
        rest = list(e)
        term = LaurentPoly.constant(c)
        for i in bindings:
            k = e[i]
            rest[i] = 0
            term = term * power(i, 0, k - lows[i]) * power(i, 1, highs[i] - k)
        num = num + term.shift(tuple(rest))
    den = ONE_POLY
    for i in bindings:
        den = den * power(i, 1, highs[i]) * power(i, 0, -lows[i])
    return num, den


def substitute(r, bindings: Mapping[str, object]) -> RationalFn:
    """Simultaneous substitution ``var -> value`` into ``r``."""
    r = as_rational(r)
    idx = {REGISTRY.index(name): as_rational(value) for name, value in bindings.items()}
    if not idx:
        return r
    n1, d1 = _poly_substitute(r.num, idx)
    n2, d2 = _poly_substitute(r.den, idx)
    if not n2.terms:
        raise DivisionByZero("substitution sends the denominator to zero")
    num, den = n1 * d2, d1 * n2
    factors = []
    for b in idx.values():
        factors.extend([b.num, b.den])
    num, den = _cancel(num, den, factors)
    return RationalFn(num, den)


def eval_at(r, variable: str, value) -> RationalFn:
    """Specialize one variable; a vanishing denominator raises PoleAtPoint."""
    try:
        return substitute(r, {variable: value})
    except DivisionByZero as exc:
        raise PoleAtPoint(f"{r} has a pole at {variable} = {as_rational(value)}") from exc


def var(name: str, power: int = 1) -> RationalFn:
    return RationalFn.var(name, power)


def const(c: int) -> RationalFn:
    return RationalFn.const(c)


ONE = const(1)
ZERO = const(0)

_TERM_FACTOR = re.compile(r"^([A-Za-z])(?:\^(-?\d+))?$")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :meth:`LaurentPoly.render`."""
    text = text.strip()
    if text == "0":
        return ZERO_POLY
    terms: Dict[Exponent, int] = {}
    for chunk in text.split(" + "):
        parts = chunk.strip().split("*")
        try:
            coeff = int(parts[0])
        except ValueError:
            raise ValueError(f"bad coefficient in term {chunk!r}") from None
        powers: Dict[str, int] = {}
        for factor in parts[1:]:
            m = _TERM_FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in term {chunk!r}")
            powers[m.group(1)] = powers.get(m.group(1), 0) + int(m.group(2) or 1)
        e = _exp_of(powers)
        terms[e] = terms.get(e, 0) + coeff
    return LaurentPoly(terms)


def parse_expr(text: str) -> RationalFn:
    """Inverse of :meth:`RationalFn.render`."""
    text = text.strip()
    if text.startswith("(") and ") / (" in text and text.endswith(")"):
        num_text, den_text = text[1:-1].split(") / (", 1)
        return RationalFn(parse_poly(num_text), parse_poly(den_text))
    return RationalFn(parse_poly(text))


Scalar = Union[int, LaurentPoly, RationalFn]
