"""Finite group presentations and their text format.

File format::

    gens: a b c
    rels: a b a b^-1 a^-1 b^-1 ; (a c)^2

``rels`` may be repeated or span several lines; relators are separated by
``;``.  An equation ``u = v`` is accepted and stored as ``u v^-1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .words import Alphabet, Word, format_word, parse_word


@dataclass(frozen=True)
class Presentation:
    generators: Alphabet
    relators: tuple = ()

    def __post_init__(self):
        if not isinstance(self.generators, Alphabet):
            object.__setattr__(self, "generators", Alphabet(tuple(self.generators)))
        rels = tuple(self.relators)
        object.__setattr__(self, "relators", rels)
        gens = set(self.generators)
        for r in rels:
            if not isinstance(r, Word):
                raise ValidationError(f"relator {r!r} is not a Word")
            bad = r.symbols() - gens
            if bad:
                raise ValidationError(f"relator {r} uses unknown generators {sorted(bad)}")

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        if self.relators:
            lines.append("rels: " + " ; ".join(format_word(r) for r in self.relators))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [format_word(r) for r in self.relators],
        }

    def __str__(self):
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"


def parse_relator(text: str) -> Word:
    if "=" in text:
        lhs, _, rhs = text.partition("=")
        if "=" in rhs:
            raise ParseError(f"more than one '=' in {text!r}")
        return parse_word(lhs) * parse_word(rhs).inverse()
    return parse_word(text)


def parse_presentation(text: str) -> Presentation:
    gens = None
    rels: list = []
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("gens", "rels"):
            current = key.strip()
            line = rest
        if current == "gens":
            if gens is not None and line.strip():
                gens.extend(line.split())
            else:
                gens = line.split()
        elif current == "rels":
            rels.extend(parse_relator(chunk) for chunk in line.split(";") if chunk.strip())
        else:
            raise ParseError(f"expected 'gens:' or 'rels:' line, got {raw!r}")
    if not gens:
        raise ParseError("presentation has no 'gens:' line")
    return Presentation(Alphabet(tuple(gens)), tuple(rels))
