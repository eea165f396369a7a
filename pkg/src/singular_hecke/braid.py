"""Singular braid words: parsing, statistics, resolutions and Markov moves.

Grammar: whitespace-separated tokens.  ``s<i>`` is the positive crossing
sigma_i, ``s<i>'`` its inverse, ``t<i>`` the singular crossing tau_i.  A
suffix ``^<k>`` (k >= 1) repeats a letter.  An optional leading ``n=<k>``
fixes the strand count; otherwise it is one more than the largest index
(one strand for the empty word).
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from .coeffs import ONE, RationalFn, as_rational

POS, NEG, SING = 1, -1, 0


class Letter(NamedTuple):
    kind: int
    index: int

    def inverse(self) -> "Letter":
        if self.kind == SING:
            raise ValueError("singular letters have no inverse")
        return Letter(-self.kind, self.index)

    def token(self) -> str:
        if self.kind == SING:
            return f"t{self.index}"
        return f"s{self.index}" + ("'" if self.kind == NEG else "")


def pos(i: int) -> Letter:
    return Letter(POS, i)


def neg(i: int) -> Letter:
    return Letter(NEG, i)


def sing(i: int) -> Letter:
    return Letter(SING, i)


class ParseError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)


_TOKEN = re.compile(r"^([st])(\d+)(')?(?:\^(\d+))?$")
_STRANDS = re.compile(r"^n=(\d+)$")


def _tokens(text: str) -> Iterator[Tuple[int, str]]:
    for m in re.finditer(r"\S+", text):
        yield m.start(), m.group(0)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(Letter(*l) for l in self.letters))
        if self.strands < 1:
            raise ValueError(f"strand count must be at least 1, got {self.strands}")
        for letter in self.letters:
            if letter.kind not in (POS, NEG, SING):
                raise ValueError(f"bad letter kind {letter.kind}")
            if not 1 <= letter.index <= self.strands - 1:
                raise ValueError(f"generator index {letter.index} out of range for {self.strands} strands")

    # -- construction -----------------------------------------------------

    @classmethod
    def parse(cls, text: str, strands: Optional[int] = None) -> "BraidWord":
        letters: List[Letter] = []
        declared = None
        for k, (col, tok) in enumerate(_tokens(text)):
            m = _STRANDS.match(tok)
            if m:
                if k != 0:
                    raise ParseError("strand declaration must come first", col)
                declared = int(m.group(1))
                if declared < 1:
                    raise ParseError("strand count must be at least 1", col)
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ParseError(f"unrecognized token {tok!r}", col)
            kind_char, idx, prime, power = m.groups()
            if kind_char == "t" and prime:
                raise ParseError("singular letters have no inverse", col)
            index = int(idx)
            if index < 1:
                raise ParseError("generator indices start at 1", col)
            reps = int(power) if power is not None else 1
            if reps < 1:
                raise ParseError("exponent must be at least 1", col)
            kind = SING if kind_char == "t" else (NEG if prime else POS)
            letters.extend([Letter(kind, index)] * reps)
        if declared is not None and strands is not None and declared != strands:
            raise ParseError(f"word declares n={declared} but {strands} strands were requested")
        n = declared if declared is not None else strands
        needed = 1 + max((l.index for l in letters), default=0)
        if n is None:
            n = needed
        elif needed > n:
            raise ParseError(f"generator index {needed - 1} out of range for {n} strands")
        return cls(n, tuple(letters))

    def format(self) -> str:
        parts = []
        for letter, group in itertools.groupby(self.letters):
            k = len(list(group))
            parts.append(letter.token() + (f"^{k}" if k > 1 else ""))
        inferred = 1 + max((l.index for l in self.letters), default=0)
        if self.strands != inferred:
            parts.insert(0, f"n={self.strands}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    # -- statistics -------------------------------------------------------

    @property
    def d(self) -> int:
        return sum(1 for l in self.letters if l.kind == SING)

    @property
    def epsilon(self) -> int:
        return sum(l.kind for l in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def permutation(self) -> Tuple[int, ...]:
        """One-line notation (0-based) of the product of the transpositions."""
        perm = list(range(self.strands))
        for l in self.letters:
            i = l.index
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return tuple(perm)

    def closure_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for start in range(self.strands):
            if not seen[start]:
                cycles += 1
                j = start
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return cycles

    def singular_positions(self) -> List[int]:
        return [p for p, l in enumerate(self.letters) if l.kind == SING]

    # -- algebra on words -------------------------------------------------

    def embed(self, strands: int) -> "BraidWord":
        if strands < self.strands:
            raise ValueError("cannot embed into fewer strands")
        return BraidWord(strands, self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if isinstance(other, BraidWord):
            return BraidWord(max(self.strands, other.strands), self.letters + other.letters)
        return NotImplemented

    def with_letters(self, letters: Iterable[Letter]) -> "BraidWord":
        return BraidWord(self.strands, tuple(letters))

    def rotate(self, k: int = 1) -> "BraidWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return self.with_letters(self.letters[k:] + self.letters[:k])

    def resolutions(self) -> List[Tuple[frozenset, "BraidWord"]]:
        """All 2^d resolutions: a singular slot in S becomes a positive crossing,
        the others are deleted.  Slots are numbered 1..d left to right and the
        list is ordered by the bitmask of S."""
        sing_pos = self.singular_positions()
        d = len(sing_pos)
        out = []
        for mask in range(1 << d):
            chosen = {sing_pos[j] for j in range(d) if mask >> j & 1}
            letters = []
            for p, l in enumerate(self.letters):
                if l.kind != SING:
                    letters.append(l)
                elif p in chosen:
                    letters.append(Letter(POS, l.index))
            subset = frozenset(j + 1 for j in range(d) if mask >> j & 1)
            out.append((subset, self.with_letters(letters)))
        return out


def word(text: str, strands: Optional[int] = None) -> BraidWord:
    return BraidWord.parse(text, strands)


# -- Markov moves ---------------------------------------------------------

def markov_conjugate(w: BraidWord, g: Letter) -> BraidWord:
    """g w g^{-1} for a crossing letter g."""
    g = Letter(*g)
    if g.kind == SING:
        raise ValueError("conjugation needs an invertible letter")
    if not 1 <= g.index < w.strands:
        raise ValueError(f"conjugating letter index {g.index} out of range")
    return w.with_letters((g,) + w.letters + (g.inverse(),))


def markov_stabilize(w: BraidWord, sign: int) -> BraidWord:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(w.strands + 1, w.letters + (Letter(sign, w.strands),))


def can_destabilize(w: BraidWord) -> bool:
    if w.strands < 2 or not w.letters:
        return False
    last = w.letters[-1]
    top = w.strands - 1
    return last.kind != SING and last.index == top and all(l.index != top for l in w.letters[:-1])


def markov_destabilize(w: BraidWord) -> BraidWord:
    if not can_destabilize(w):
        raise ValueError(f"{w} does not end in a removable stabilization")
    return BraidWord(w.strands - 1, w.letters[:-1])


def random_markov_walk(w: BraidWord, steps: int, seed: int, max_strands: int = 5) -> BraidWord:
    """Apply ``steps`` Markov moves chosen uniformly among the applicable ones."""
    rng = random.Random(seed)
    for _ in range(steps):
        moves = []
        if w.letters:
            moves.append("rotate")
        if w.strands >= 2:
            moves.append("conjugate")
        if w.strands < max_strands:
            moves += ["stab+", "stab-"]
        if can_destabilize(w):
            moves.append("destab")
        if not moves:
            break
        move = rng.choice(moves)
        if move == "rotate":
            w = w.rotate(rng.randrange(1, len(w.letters) + 1))
        elif move == "conjugate":
            w = markov_conjugate(w, Letter(rng.choice((POS, NEG)), rng.randrange(1, w.strands)))
        elif move == "stab+":
            w = markov_stabilize(w, 1)
        elif move == "stab-":
            w = markov_stabilize(w, -1)
        else:
            w = markov_destabilize(w)
    return w


def random_word(rng: random.Random, strands: int, length: int, singular: int = 0,
                inverses: bool = True) -> BraidWord:
    """Random word with exactly ``singular`` tau letters among ``length`` letters."""
    if strands < 2:
        return BraidWord(strands, ())
    length = max(length, singular)
    slots = set(rng.sample(range(length), singular))
    kinds = (POS, NEG) if inverses else (POS,)
    letters = []
    for p in range(length):
        kind = SING if p in slots else rng.choice(kinds)
        letters.append(Letter(kind, rng.randrange(1, strands)))
    return BraidWord(strands, tuple(letters))


# -- formal linear combinations -------------------------------------------

WordLike = Union[BraidWord, "WordSum"]


class WordSum:
    """Finite formal combination of braid words with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[BraidWord, RationalFn]] = None):
        self.terms: Dict[BraidWord, RationalFn] = {}
        for w, c in (terms or {}).items():
            self._add(w, as_rational(c))

    @classmethod
    def of(cls, w: WordLike, coeff=1) -> "WordSum":
        if isinstance(w, WordSum):
            return w * coeff
        return cls({w: coeff})

    def _add(self, w: BraidWord, c: RationalFn):
        total = self.terms.get(w)
        total = c if total is None else total + c
        if total.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = total

    @property
    def strands(self) -> int:
        return max((w.strands for w in self.terms), default=1)

    def degrees(self) -> set:
        return {w.d for w in self.terms}

    def embed(self, strands: int) -> "WordSum":
        return WordSum({w.embed(strands): c for w, c in self.terms.items()})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        other = _as_sum(other)
        if other is NotImplemented:
            return NotImplemented
        out = WordSum(self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return WordSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_sum(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Scalars scale; words and sums concatenate on the right."""
        if isinstance(other, (BraidWord, WordSum)):
            other = _as_sum(other)
            out = WordSum()
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out._add(w1 * w2, c1 * c2)
            return out
        c = as_rational(other)
        return WordSum({w: c1 * c for w, c1 in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, BraidWord):
            return WordSum.of(other) * self
        return self * other

    def __eq__(self, other):
        other = _as_sum(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda item: (item[0].strands, item[0].format())):
            parts.append(f"({c.render()})*[{w.format()}]")
        return " + ".join(parts)

    __str__ = format

    def __repr__(self):
        return f"WordSum({self.format()!r})"


def _as_sum(value):
    if isinstance(value, WordSum):
        return value
    if isinstance(value, BraidWord):
        return WordSum({value: ONE})
    return NotImplemented
