"""Semi-decision for ``w = 1``: search over relator insertions on cyclic words.

States are cyclic words (canonical least rotation of the cyclic reduction);
a move inserts any symmetrized relator at any position and reduces.  A word
is trivial iff it is conjugate to a trivial word, so working cyclically is
sound.  The search is best-first by length, which is what makes the braid
relation examples finish in a few hundred states.  It can only ever answer
``trivial`` (with a trace) or ``unknown``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from ..errors import ValidationError
from ..presentation import Presentation
from ..words import Word

DEFAULT_BUDGET = 1_000_000


def _encode(w: Word, index: dict) -> list:
    out = []
    for sym, sign in w.letters():
        if sym not in index:
            raise ValidationError(f"symbol {sym!r} is not a generator")
        out.append(sign * index[sym])
    return out


def _free(seq) -> list:
    out: list = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic(seq) -> list:
    s = _free(seq)
    i, j = 0, len(s) - 1
    while i < j and s[i] == -s[j]:
        i += 1
        j -= 1
    return s[i:j + 1]


def _canon(seq) -> tuple:
    if not seq:
        return ()
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def _inverse(seq) -> list:
    return [-x for x in reversed(seq)]


@dataclass(frozen=True)
class TrivializerResult:
    status: str              # trivial | unknown
    states: int
    budget: int
    trace: tuple = ()        # ((inserted relator rotation, position, resulting cyclic word), ...)

    @property
    def trivial(self) -> bool:
        return self.status == "trivial"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "states": self.states,
            "budget": self.budget,
            "trace": [{"insert": str(r), "position": pos, "result": str(w)} for r, pos, w in self.trace],
        }


def bounded_trivializer(p: Presentation, w: Word, budget: int = DEFAULT_BUDGET) -> TrivializerResult:
    gens = list(p.generators)
    index = {g: i + 1 for i, g in enumerate(gens)}

    def decode(seq) -> Word:
        return Word(tuple((gens[abs(x) - 1], 1 if x > 0 else -1) for x in seq))

    symmetrized = set()
    for r in p.relators:
        base = _cyclic(_encode(r, index))
        for s in (base, _inverse(base)):
            for i in range(len(s)):
                symmetrized.add(tuple(s[i:] + s[:i]))
    rels = sorted(symmetrized, key=lambda t: (len(t), t))

    start = _canon(_cyclic(_encode(w, index)))
    parent = {start: None}
    heap = [(len(start), 0, start)]
    tick = 1
    while heap:
        _, _, state = heapq.heappop(heap)
        if not state:
            steps = []
            cur = state
            while parent[cur] is not None:
                prev, rel, pos = parent[cur]
                steps.append((decode(rel), pos, decode(cur)))
                cur = prev
            return TrivializerResult("trivial", len(parent), budget, tuple(reversed(steps)))
        letters = list(state)
        n = len(letters)
        for pos in range(max(n, 1)):
            rotated = letters[pos:] + letters[:pos]
            for rel in rels:
                nxt = _canon(_cyclic(list(rel) + rotated))
                if nxt in parent:
                    continue
                parent[nxt] = (state, rel, pos)
                if len(parent) > budget:
                    return TrivializerResult("unknown", len(parent), budget)
                heapq.heappush(heap, (len(nxt), tick, nxt))
                tick += 1
    return TrivializerResult("unknown", len(parent), budget)
