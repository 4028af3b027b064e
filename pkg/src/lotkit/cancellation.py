"""Small cancellation: symmetrized sets, pieces, C'(lambda), T(4) and Dehn's algorithm.

Pieces follow the classical convention: a piece is a common prefix of two
*distinct* words of the symmetrized set.  For a proper power ``s^n`` the
rotations by multiples of ``|s|`` are the same word and give no piece.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ValidationError
from .presentation import Presentation
from .words import Word, cyclic_reduce

C16 = "C16"
C14T4 = "C14T4"
ONE_RELATOR_TORSION = "one_relator_torsion"


def _letters(w: Word) -> tuple:
    return tuple(w.letters())


def _word(letters) -> Word:
    return Word.from_letters(letters)


def _inv_letters(t: tuple) -> tuple:
    return tuple((s, -e) for s, e in reversed(t))


@dataclass(frozen=True)
class SymmetrizedSet:
    members: tuple        # letter tuples, sorted
    origin: dict = field(compare=False, default_factory=dict)   # member -> index of source relator

    def words(self) -> list:
        return [_word(m) for m in self.members]

    def __len__(self):
        return len(self.members)


def symmetrized_set(p: Presentation) -> SymmetrizedSet:
    origin = {}
    for k, r in enumerate(p.relators):
        base = _letters(cyclic_reduce(r))
        if not base:
            raise ValidationError(f"relator {k} is trivial after cyclic reduction")
        for s in (base, _inv_letters(base)):
            for i in range(len(s)):
                origin.setdefault(s[i:] + s[:i], k)
    members = tuple(sorted(origin, key=lambda t: (len(t), t)))
    return SymmetrizedSet(members, origin)


def _common_prefix(u: tuple, v: tuple) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


@dataclass(frozen=True)
class PieceTable:
    symmetrized: SymmetrizedSet
    pieces: dict              # (i, j) member indices, i != j -> maximal common prefix (letters), only nonempty
    max_piece: dict           # relator index -> longest piece length among its members
    lengths: tuple            # relator lengths after cyclic reduction

    def to_json(self) -> dict:
        return {
            "max_piece": {str(k): v for k, v in sorted(self.max_piece.items())},
            "relator_lengths": list(self.lengths),
            "pieces": sorted({str(_word(p)) for p in self.pieces.values()}),
        }


def pieces(p: Presentation) -> PieceTable:
    if not p.relators:
        raise ValidationError("presentation has no relators")
    sym = symmetrized_set(p)
    ms = sym.members
    table = {}
    max_piece = {k: 0 for k in range(len(p.relators))}
    for i, j in combinations(range(len(ms)), 2):
        n = _common_prefix(ms[i], ms[j])
        if n:
            piece = ms[i][:n]
            table[(i, j)] = piece
            table[(j, i)] = piece
            for k in (sym.origin[ms[i]], sym.origin[ms[j]]):
                max_piece[k] = max(max_piece[k], n)
    lengths = tuple(len(cyclic_reduce(r)) for r in p.relators)
    return PieceTable(sym, table, max_piece, lengths)


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "witness": self.witness}


def _parse_lambda(lam) -> Fraction:
    return lam if isinstance(lam, Fraction) else Fraction(str(lam))


def check_metric(p: Presentation, lam, table: PieceTable | None = None) -> ConditionResult:
    """C'(lambda): every piece u of a member r has ``|u| < lambda |r|`` (strict)."""
    lam = _parse_lambda(lam)
    table = table or pieces(p)
    ms = table.symmetrized.members
    worst = None
    for (i, j), piece in sorted(table.pieces.items()):
        r = ms[i]
        if len(piece) >= lam * len(r):
            ratio = Fraction(len(piece), len(r))
            if worst is None or ratio > worst[0]:
                worst = (ratio, i, j, piece)
    if worst is None:
        return ConditionResult(True)
    ratio, i, j, piece = worst
    return ConditionResult(False, {
        "piece": str(_word(piece)), "length": len(piece),
        "relator": str(_word(ms[i])), "other": str(_word(ms[j])),
        "ratio": str(ratio), "lambda": str(lam),
    })


def check_T4(p: Presentation, table: PieceTable | None = None) -> ConditionResult:
    """T(4): no r1, r2, r3 (no successive pair mutually inverse) with all of
    r1 r2, r2 r3, r3 r1 cancelling.  Cancellation in ``u v`` means
    ``last(u) = first(v)^-1``; we look for directed triangles in that graph.
    """
    sym = (table.symmetrized if table else symmetrized_set(p))
    ms = sym.members
    inv_of = {m: _inv_letters(m) for m in ms}
    by_first = {}
    for k, m in enumerate(ms):
        by_first.setdefault(m[0], []).append(k)
    succ = []
    for k, m in enumerate(ms):
        last = m[-1]
        want = (last[0], -last[1])
        succ.append([j for j in by_first.get(want, []) if ms[j] != inv_of[m]])
    for i in range(len(ms)):
        for j in succ[i]:
            for k in succ[j]:
                if i in succ[k]:
                    return ConditionResult(False, {"triple": [str(_word(ms[t])) for t in (i, j, k)]})
    return ConditionResult(True)


def relator_root(r: Word) -> tuple:
    """Maximal n with ``r = s^n``; returns ``(s, n)``."""
    letters = _letters(r)
    n = len(letters)
    if not n:
        raise ValidationError("relator_root of the empty word")
    for p in range(1, n + 1):
        if n % p == 0 and letters == letters[:p] * (n // p):
            s = _word(letters[:p])
            assert s ** (n // p) == r
            return s, n // p
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class DehnVerdict:
    verdict: str          # yes | unknown
    routes: tuple
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict == "yes"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "routes": list(self.routes), "details": self.details}


def is_dehn_presentation(p: Presentation) -> DehnVerdict:
    routes = []
    details = {}
    table = pieces(p)
    c16 = check_metric(p, Fraction(1, 6), table)
    c14 = check_metric(p, Fraction(1, 4), table)
    t4 = check_T4(p, table)
    details["C'(1/6)"] = c16.to_json()
    details["C'(1/4)"] = c14.to_json()
    details["T(4)"] = t4.to_json()
    if c16:
        routes.append(C16)
    if c14 and t4:
        routes.append(C14T4)
    if len(p.relators) == 1:
        s, n = relator_root(cyclic_reduce(p.relators[0]))
        details["root"] = {"word": str(s), "exponent": n}
        if n >= 2:
            routes.append(ONE_RELATOR_TORSION)
    return DehnVerdict("yes" if routes else "unknown", tuple(routes), details)


@dataclass(frozen=True)
class DehnResult:
    reduced: Word
    trivial: bool
    trace: tuple      # ((position, removed, inserted, relator), ...)

    def to_json(self) -> dict:
        return {
            "reduced": str(self.reduced),
            "trivial": self.trivial,
            "trace": [{"position": pos, "removed": str(u), "inserted": str(v), "relator": str(r)}
                      for pos, u, v, r in self.trace],
        }


def dehn_reduce(p: Presentation, w: Word, require_dehn: bool = True) -> DehnResult:
    """Dehn's algorithm: replace a subword making up more than half of a
    symmetrized relator by the inverse of the rest, leftmost then longest first."""
    if require_dehn and not is_dehn_presentation(p):
        raise ValidationError("presentation is not certified Dehn (C'(1/6), C'(1/4)-T(4) or torsion)")
    ms = symmetrized_set(p).members
    by_first = {}
    for m in ms:
        by_first.setdefault(m[0], []).append(m)
    cur = list(w.letters())
    trace = []
    while True:
        best = None
        for pos in range(len(cur)):
            for m in by_first.get(cur[pos], []):
                n = _common_prefix(tuple(cur[pos:pos + len(m)]), m)
                if 2 * n > len(m) and (best is None or n > best[1]):
                    best = (pos, n, m)
            if best is not None:
                break
        if best is None:
            break
        pos, n, m = best
        removed = tuple(cur[pos:pos + n])
        inserted = _inv_letters(m[n:])
        new = _letters(_word(cur[:pos] + list(inserted) + cur[pos + n:]))
        assert len(new) < len(cur), "Dehn step did not shorten the word"
        trace.append((pos, _word(removed), _word(inserted), _word(m)))
        cur = list(new)
    reduced = _word(cur)
    return DehnResult(reduced, not cur, tuple(trace))
