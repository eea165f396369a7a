"""The Hecke algebra H(B_n) with quadratic relation sigma^2 = (q-1) sigma + q.

Elements are stored on the basis T_w indexed by permutations w of
{0..n-1} (one-line notation).  The permutations correspond one to one
with the normal-form words u_2 u_3 ... u_n, where u_k = s_{k-1} s_{k-2} ...
s_{k-m}; such a descriptor (m_2, ..., m_n) is what gets printed.
"""

from __future__ import annotations

import itertools
import threading
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .braid import NEG, POS, SING, BraidWord
from .coeffs import ONE, ZERO, RationalFn, as_rational, const, var

Perm = Tuple[int, ...]

Q = var("q")
Z = var("z")
Q_INV = var("q", -1)
Q_MINUS_1 = Q - 1


class StrandMismatch(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def apply_gen(w: Perm, i: int) -> Perm:
    """w * s_i: swap positions i-1 and i."""
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def length(w: Perm) -> int:
    return sum(1 for a, b in itertools.combinations(w, 2) if a > b)


def perm_descriptor(w: Perm) -> Tuple[int, ...]:
    """Descriptor (m_2, ..., m_n) of the normal-form word of w."""
    w = list(w)
    out = []
    for n in range(len(w), 1, -1):
        p = w.index(n - 1)
        out.append(n - 1 - p)
        del w[p]
    return tuple(reversed(out))


def descriptor_word(desc: Iterable[int]) -> Tuple[int, ...]:
    """Generator indices of the normal-form word for a descriptor."""
    gens = []
    for k, m in enumerate(desc, start=2):
        if not 0 <= m <= k - 1:
            raise ValueError(f"descriptor entry {m} out of range for u_{k}")
        gens.extend(range(k - 1, k - 1 - m, -1))
    return tuple(gens)


def descriptor_perm(desc: Iterable[int]) -> Perm:
    desc = tuple(desc)
    w = identity(len(desc) + 1)
    for i in descriptor_word(desc):
        w = apply_gen(w, i)
    return w


def basis_descriptors(n: int) -> List[Tuple[int, ...]]:
    return list(itertools.product(*(range(k) for k in range(2, n + 1))))


_WORD_CACHE: Dict[Perm, Tuple[int, ...]] = {}


def reduced_word(w: Perm) -> Tuple[int, ...]:
    word = _WORD_CACHE.get(w)
    if word is None:
        word = descriptor_word(perm_descriptor(w))
        _WORD_CACHE[w] = word
    return word


def _add_into(acc: Dict, key, c: RationalFn):
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        new = old + c
        if new.is_zero():
            del acc[key]
        else:
            acc[key] = new


class HeckeElem:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Perm, object]] = None):
        self.n = n
        self.terms: Dict[Perm, RationalFn] = {}
        for w, c in (terms or {}).items():
            if len(w) != n:
                raise StrandMismatch(f"permutation {w} is not on {n} strands")
            c = as_rational(c)
            if not c.is_zero():
                _add_into(self.terms, tuple(w), c)

    @classmethod
    def _wrap(cls, n: int, terms: Dict[Perm, RationalFn]) -> "HeckeElem":
        e = cls.__new__(cls)
        e.n = n
        e.terms = terms
        return e

    @classmethod
    def one(cls, n: int) -> "HeckeElem":
        return cls._wrap(n, {identity(n): ONE})

    @classmethod
    def zero(cls, n: int) -> "HeckeElem":
        return cls._wrap(n, {})

    @classmethod
    def gen(cls, n: int, i: int) -> "HeckeElem":
        return cls.one(n).mul_gen(i)

    @classmethod
    def basis(cls, w: Perm) -> "HeckeElem":
        return cls._wrap(len(w), {tuple(w): ONE})

    @classmethod
    def from_word(cls, w: BraidWord) -> "HeckeElem":
        e = cls.one(w.strands)
        for letter in w.letters:
            if letter.kind == POS:
                e = e.mul_gen(letter.index)
            elif letter.kind == NEG:
                e = e.mul_gen_inv(letter.index)
            else:
                raise ValueError("singular letters do not live in the Hecke algebra")
        return e

    def is_zero(self) -> bool:
        return not self.terms

    def _check_gen(self, i: int):
        if not 1 <= i < self.n:
            raise ValueError(f"generator s{i} out of range for {self.n} strands")

    def mul_gen(self, i: int) -> "HeckeElem":
        self._check_gen(i)
        out: Dict[Perm, RationalFn] = {}
        for w, c in self.terms.items():
            ws = apply_gen(w, i)
            if w[i - 1] < w[i]:
                _add_into(out, ws, c)
            else:
                _add_into(out, w, c * Q_MINUS_1)
                _add_into(out, ws, c * Q)
        return HeckeElem._wrap(self.n, out)

    def mul_gen_inv(self, i: int) -> "HeckeElem":
        # s^{-1} = q^{-1} s - q^{-1}(q-1)
        return self.mul_gen(i) * Q_INV - self * (Q_INV * Q_MINUS_1)

    def left_mul_gen(self, i: int) -> "HeckeElem":
        self._check_gen(i)
        out: Dict[Perm, RationalFn] = {}
        for w, c in self.terms.items():
            # s_i * T_w acts on values i-1 and i
            sw = tuple(i if a == i - 1 else i - 1 if a == i else a for a in w)
            if w.index(i - 1) < w.index(i):
                _add_into(out, sw, c)
            else:
                _add_into(out, w, c * Q_MINUS_1)
                _add_into(out, sw, c * Q)
        return HeckeElem._wrap(self.n, out)

    def mul_word(self, gens: Iterable[int]) -> "HeckeElem":
        e = self
        for i in gens:
            e = e.mul_gen(i)
        return e

    def __add__(self, other):
        if not isinstance(other, HeckeElem):
            other = HeckeElem.one(self.n) * as_rational(other)
        if other.n != self.n:
            raise StrandMismatch(f"cannot add elements on {self.n} and {other.n} strands")
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return HeckeElem._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElem._wrap(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HeckeElem):
            other = HeckeElem.one(self.n) * as_rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            if other.n != self.n:
                raise StrandMismatch(f"cannot multiply elements on {self.n} and {other.n} strands")
            result: Dict[Perm, RationalFn] = {}
            for v, c in other.terms.items():
                part = self.mul_word(reduced_word(v))
                for w, c2 in part.terms.items():
                    _add_into(result, w, c2 * c)
            return HeckeElem._wrap(self.n, result)
        c = as_rational(other)
        if c.is_zero():
            return HeckeElem.zero(self.n)
        return HeckeElem._wrap(self.n, {w: c1 * c for w, c1 in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, HeckeElem):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def coefficient(self, w: Perm) -> RationalFn:
        return self.terms.get(tuple(w), ZERO)

    def embed(self, n: int) -> "HeckeElem":
        if n < self.n:
            raise StrandMismatch("cannot embed into fewer strands")
        tail = tuple(range(self.n, n))
        return HeckeElem._wrap(n, {w + tail: c for w, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: perm_descriptor(item[0]), reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            gens = reduced_word(w)
            label = "*".join(f"s{i}" for i in gens) if gens else "1"
            parts.append(f"({c.render()})*{label}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"HeckeElem({self.n}, {self.render()!r})"


# -- the Ocneanu trace ------------------------------------------------------

_TRACE_MEMO: Dict[Perm, RationalFn] = {(): ONE}
_TRACE_LOCK = threading.Lock()


def _strip(w: Perm) -> Perm:
    k = len(w)
    while k and w[k - 1] == k - 1:
        k -= 1
    return w[:k]


def _perm_trace(w: Perm) -> RationalFn:
    w = _strip(w)
    hit = _TRACE_MEMO.get(w)
    if hit is not None:
        return hit
    n = len(w)
    p = w.index(n - 1)
    m = n - 1 - p
    # T_w = T_beta s_{n-1} s_{n-2} ... s_{n-m}; drop s_{n-1} for a factor z
    beta = HeckeElem.basis(w[:p] + w[p + 1:])
    rest = beta.mul_word(range(n - 2, n - 1 - m, -1))
    total = ZERO
    for v, c in rest.terms.items():
        total = total + c * _perm_trace(v)
    value = Z * total
    with _TRACE_LOCK:
        _TRACE_MEMO[w] = value
    return value


def ocneanu_trace(e: HeckeElem) -> RationalFn:
    total = ZERO
    for w, c in e.terms.items():
        total = total + c * _perm_trace(w)
    return total


# -- named elements ---------------------------------------------------------

def _sigma(n: int, i: int) -> HeckeElem:
    return HeckeElem.gen(n, i)


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def b_element(n: int, i: int, j: int) -> HeckeElem:
    """s_i + s_j - (q-1) for adjacent i, j."""
    _require(abs(i - j) == 1, "B needs adjacent indices")
    return _sigma(n, i) + _sigma(n, j) - Q_MINUS_1


def b_inverse(n: int, i: int, j: int) -> HeckeElem:
    _require(abs(i - j) == 1, "B needs adjacent indices")
    si, sj = _sigma(n, i), _sigma(n, j)
    inner = (Q * Q_MINUS_1 - si * (2 * Q) - sj * (2 * Q) - (si * sj) * Q_MINUS_1
             - (sj * si) * Q_MINUS_1 + (si * sj * si) * 2)
    return inner * (-Q_INV * (Q + 1) ** -2)


def c_element(n: int, i: int, j: int) -> HeckeElem:
    """2 s_i s_j - (q-1) s_i - (q-1) s_j + q^2 + 1 for far-apart i, j."""
    _require(abs(i - j) >= 2, "C needs indices at distance at least 2")
    si, sj = _sigma(n, i), _sigma(n, j)
    return (si * sj) * 2 - si * Q_MINUS_1 - sj * Q_MINUS_1 + (Q * Q + 1)


def omega0(n: int) -> HeckeElem:
    _require(n >= 4, "omega0 lives on at least 4 strands")
    s1, s2, s3 = (_sigma(n, i) for i in (1, 2, 3))
    return (s1 * s2 + s3 * s2 + s1 * s3 - (s1 + s2 + s3) * Q_MINUS_1
            + (Q * Q - Q + 1))


def delta0(n: int) -> HeckeElem:
    _require(n >= 2, "delta0 needs at least 2 strands")
    scale = (Z * Z - Q_MINUS_1 * Z - Q).inv()
    return (_sigma(n, 1) + (Z - Q_MINUS_1)) * scale


def named_elements(n: int, i: int, j: int) -> Dict[str, HeckeElem]:
    """Whichever of the named elements make sense for (n, i, j)."""
    out: Dict[str, HeckeElem] = {}
    if abs(i - j) == 1:
        out["B"] = b_element(n, i, j)
        out["B_inverse"] = b_inverse(n, i, j)
    if abs(i - j) >= 2:
        out["C"] = c_element(n, i, j)
    if n >= 4:
        out["omega0"] = omega0(n)
    if n >= 2:
        out["delta0"] = delta0(n)
    return out
