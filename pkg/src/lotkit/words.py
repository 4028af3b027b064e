"""Words over finite alphabets, stored as syllable runs.

A :class:`Word` is a tuple of ``(symbol, exponent)`` syllables with nonzero
exponents and no two adjacent syllables on the same symbol.  Building a word
from arbitrary syllables therefore *is* free reduction; every Word value is
freely reduced.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError, ValidationError

Letter = tuple  # (symbol, +1 | -1)

SYMBOL_RE = r"[A-Za-z][0-9]*"
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<sym>" + SYMBOL_RE + r")|(?P<open>\()|(?P<close>\))"
    r"|(?P<one>1)|(?P<pow>\^\s*(?P<exp>[+-]?\d+)))"
)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of generator names."""

    symbols: tuple

    def __post_init__(self):
        syms = tuple(self.symbols)
        object.__setattr__(self, "symbols", syms)
        if len(set(syms)) != len(syms):
            raise ValidationError(f"duplicate symbols in alphabet {syms}")
        for s in syms:
            if not isinstance(s, str) or not re.fullmatch(SYMBOL_RE, s):
                raise ValidationError(f"bad symbol name {s!r}")

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, s):
        return s in self.symbols

    def index(self, s):
        return self.symbols.index(s)


def _normalize(syllables: Iterable) -> tuple:
    out: list = []
    for sym, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == sym:
            e = out[-1][1] + exp
            if e:
                out[-1] = (sym, e)
            else:
                out.pop()
        else:
            out.append((sym, int(exp)))
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    syllables: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "syllables", _normalize(self.syllables))

    # construction -----------------------------------------------------
    @classmethod
    def from_letters(cls, letters: Iterable) -> "Word":
        return cls(tuple((s, e) for s, e in letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    @classmethod
    def letter(cls, sym: str, exp: int = 1) -> "Word":
        return cls(((sym, exp),))

    # inspection -------------------------------------------------------
    def letters(self) -> list:
        out = []
        for sym, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            out.extend([(sym, sign)] * abs(exp))
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __iter__(self) -> Iterator:
        return iter(self.syllables)

    def symbols(self) -> frozenset:
        return frozenset(s for s, _ in self.syllables)

    def is_empty(self) -> bool:
        return not self.syllables

    def exponent_sum(self, sym: str) -> int:
        return sum(e for s, e in self.syllables if s == sym)

    # algebra ----------------------------------------------------------
    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.syllables)))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.syllables * n)

    def subword(self, start: int, stop: int) -> "Word":
        """Letter-indexed slice ``[start, stop)``."""
        return Word.from_letters(self.letters()[start:stop])

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


class CyclicForms(NamedTuple):
    cyclic_reduction: Word
    all_rotations: list
    inverse: Word


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    parts = []
    for sym, exp in w.syllables:
        parts.append(sym if exp == 1 else f"{sym}^{exp}")
    return " ".join(parts)


def parse_word(text: str) -> Word:
    """Parse ``y z^2 x``, ``a b^-1``, ``(a c b)^2`` or ``1`` (empty word)."""
    pos = 0
    stack: list = [[]]
    text = text.strip()
    if not text:
        raise ParseError("empty word text (write 1 for the identity)")
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        pos = m.end()
        if m.group("sym"):
            stack[-1].append([(m.group("sym"), 1)])
        elif m.group("one"):
            stack[-1].append([])
        elif m.group("open"):
            stack.append([])
        elif m.group("close"):
            if len(stack) == 1:
                raise ParseError(f"unbalanced ')' in {text!r}")
            group = stack.pop()
            stack[-1].append([syl for item in group for syl in item])
        else:
            if not stack[-1]:
                raise ParseError(f"exponent without base in {text!r}")
            exp = int(m.group("exp"))
            base = Word(tuple(stack[-1][-1]))
            stack[-1][-1] = list((base ** exp).syllables)
    if len(stack) != 1:
        raise ParseError(f"unbalanced '(' in {text!r}")
    return Word(tuple(syl for item in stack[0] for syl in item))


def free_reduce(syllables: Iterable | Word) -> Word:
    """Unique freely reduced word equal to the input in the free group."""
    if isinstance(syllables, Word):
        return syllables
    return Word(tuple(syllables))


def involutory_reduce(w: Word, killed: Iterable = (), alphabet: Alphabet | None = None) -> Word:
    """Reduce modulo ``s^2 = 1`` for every symbol and ``k = 1`` for killed ones.

    The result is an alternating word with all exponents ``+1``.
    """
    killed = frozenset(killed)
    if alphabet is not None:
        bad = (killed | w.symbols()) - set(alphabet)
        if bad:
            raise ValidationError(f"symbols {sorted(bad)} not in alphabet")
    out: list = []
    for sym, exp in w.syllables:
        if sym in killed or exp % 2 == 0:
            continue
        if out and out[-1] == sym:
            out.pop()
        else:
            out.append(sym)
    return Word(tuple((s, 1) for s in out))


def prod(x: str, y: str, k: int) -> Word:
    """Alternating word ``x y x y ...`` of length ``k``."""
    if k < 0:
        raise ValueError("prod length must be nonnegative")
    if x == y:
        raise ValueError("prod needs two distinct symbols")
    return Word(tuple(((x, 1) if i % 2 == 0 else (y, 1)) for i in range(k)))


def cyclic_reduce(w: Word) -> Word:
    syl = list(w.syllables)
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        sym = syl[0][0]
        e = syl[0][1] + syl[-1][1]
        middle = syl[1:-1]
        syl = ([(sym, e)] + middle) if e else middle
    return Word(tuple(syl))


def rotations(w: Word) -> list:
    """All letter-level cyclic rotations, starting with ``w`` itself."""
    letters = w.letters()
    if not letters:
        return [w]
    return [Word.from_letters(letters[i:] + letters[:i]) for i in range(len(letters))]


def cyclic_ops(w: Word) -> CyclicForms:
    return CyclicForms(cyclic_reduce(w), rotations(w), w.inverse())


def is_cyclically_reduced(w: Word) -> bool:
    return len(w.syllables) < 2 or w.syllables[0][0] != w.syllables[-1][0]


def cyclic_canonical(w: Word) -> Word:
    """Least rotation of the cyclic reduction; equal iff conjugate-by-rotation."""
    return min(rotations(cyclic_reduce(w)), key=lambda u: u.syllables)


def substitute(w: Word, images: dict) -> Word:
    """Apply the homomorphism sending each symbol to ``images[symbol]``."""
    out = Word()
    for sym, exp in w.syllables:
        out = out * (images[sym] ** exp)
    return out


@dataclass(frozen=True)
class DihedralWord:
    """Strictly alternating positive word in two symbols."""

    a: str
    b: str
    letters: tuple = ()

    def __post_init__(self):
        for i, s in enumerate(self.letters):
            if s not in (self.a, self.b):
                raise ValidationError(f"{s!r} is not one of {self.a!r}, {self.b!r}")
            if i and self.letters[i - 1] == s:
                raise ValidationError("letters do not alternate")

    @classmethod
    def from_word(cls, w: Word, a: str, b: str) -> "DihedralWord":
        if any(abs(e) != 1 for _, e in w.syllables):
            raise ValidationError(f"{w} is not an alternating word")
        return cls(a, b, tuple(s for s, _ in w.syllables))

    def __len__(self):
        return len(self.letters)

    def to_word(self) -> Word:
        return Word(tuple((s, 1) for s in self.letters))


def cyclic_involutory_reduce(w: Word, killed: Iterable = ()) -> Word:
    """Involutory reduction followed by cancelling equal first/last letters."""
    syms = [s for s, _ in involutory_reduce(cyclic_reduce(w), killed).syllables]
    i, j = 0, len(syms) - 1
    while i < j and syms[i] == syms[j]:
        i += 1
        j -= 1
    return Word(tuple((s, 1) for s in syms[i:j + 1]))
