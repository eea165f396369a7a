"""Homogeneous polynomials in the formal weights X, Y with rational coefficients."""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .coeffs import ZERO, RationalFn, as_rational, substitute

RAW = "raw"
CANONICAL = "canonical"


def weight_label(k: int, m: int) -> str:
    parts = []
    for name, e in (("X", k), ("Y", m)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


class InvariantPoly:
    """sum_k c_k X^k Y^(d-k), stored as {k: c_k} with zero entries dropped."""

    __slots__ = ("d", "coeffs", "mode")

    def __init__(self, d: int, coeffs: Optional[Mapping[int, object]] = None, mode: str = RAW):
        self.d = d
        self.mode = mode
        self.coeffs: Dict[int, RationalFn] = {}
        for k, c in (coeffs or {}).items():
            if not 0 <= k <= d:
                raise ValueError(f"X-degree {k} outside 0..{d}")
            c = as_rational(c)
            if not c.is_zero():
                self.coeffs[k] = self.coeffs.get(k, ZERO) + c
                if self.coeffs[k].is_zero():
                    del self.coeffs[k]

    def coefficient(self, k: int) -> RationalFn:
        """Coefficient of X^k Y^(d-k)."""
        return self.coeffs.get(k, ZERO)

    def items(self) -> Iterator[Tuple[int, RationalFn]]:
        """(X-degree, coefficient) in descending X-degree."""
        for k in sorted(self.coeffs, reverse=True):
            yield k, self.coeffs[k]

    def is_homogeneous(self) -> bool:
        return all(0 <= k <= self.d for k in self.coeffs)

    def map(self, fn: Callable[[RationalFn], RationalFn], mode: Optional[str] = None) -> "InvariantPoly":
        return InvariantPoly(self.d, {k: fn(c) for k, c in self.coeffs.items()}, mode or self.mode)

    def substitute(self, bindings) -> "InvariantPoly":
        return self.map(lambda c: substitute(c, bindings))

    def rescale_x(self, factor) -> "InvariantPoly":
        """Replace X by factor * X."""
        factor = as_rational(factor)
        return InvariantPoly(self.d, {k: c * factor ** k for k, c in self.coeffs.items()}, self.mode)

    def at_x_zero(self) -> RationalFn:
        """Coefficient of Y^d, i.e. the value at X = 0, Y = 1."""
        return self.coefficient(0)

    def times_x(self) -> "InvariantPoly":
        return InvariantPoly(self.d + 1, {k + 1: c for k, c in self.coeffs.items()}, self.mode)

    def times_y(self) -> "InvariantPoly":
        return InvariantPoly(self.d + 1, dict(self.coeffs), self.mode)

    def _check(self, other: "InvariantPoly"):
        if self.d != other.d:
            raise ValueError(f"degree mismatch: {self.d} vs {other.d}")

    def __add__(self, other):
        if not isinstance(other, InvariantPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return InvariantPoly(self.d, out, self.mode)

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        c = as_rational(other)
        return self.map(lambda x: x * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, InvariantPoly):
            return NotImplemented
        if self.d != other.d:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __hash__(self):
        return hash((self.d, frozenset((k, hash(c)) for k, c in self.coeffs.items())))

    def render(self) -> str:
        if self.d == 0:
            return self.coefficient(0).render()
        parts = [f"{weight_label(k, self.d - k)}: {c.render()}" for k, c in self.items()]
        return " ; ".join(parts) if parts else "0"

    __str__ = render

    def __repr__(self):
        return f"InvariantPoly({self.d}, {self.render()!r})"

    def to_json_terms(self):
        return [{"X": k, "Y": self.d - k, "coeff": c.render()} for k, c in self.items()]
