"""Normal forms in free products of cyclic groups and bounded relation search."""
from __future__ import annotations

from ..errors import ValidationError
from ..words import Word
from .cosets import FreenessReport

MAX_WITNESSES = 20


def _balanced(e: int, n: int) -> int:
    """Representative of ``e mod n`` in ``(-n/2, n/2]``; ``n = 0`` means infinite order."""
    if not n:
        return e
    e %= n
    return e - n if e > n // 2 else e


def _factor_orders(factors) -> dict:
    orders = {}
    for sym, n in factors:
        if n < 0 or n == 1:
            raise ValidationError(f"factor {sym}: order must be 0 (infinite) or >= 2")
        orders[sym] = int(n)
    return orders


def free_product_normal_form(factors, w: Word) -> Word:
    """Alternating product of nontrivial factor syllables with balanced exponents."""
    orders = _factor_orders(factors)
    out: list = []
    for sym, exp in w.syllables:
        if sym not in orders:
            raise ValidationError(f"symbol {sym!r} is not a free factor")
        if out and out[-1][0] == sym:
            e = _balanced(out[-1][1] + exp, orders[sym])
            if e:
                out[-1] = (sym, e)
            else:
                out.pop()
        else:
            e = _balanced(exp, orders[sym])
            if e:
                out.append((sym, e))
    return Word(tuple(out))


def bounded_freeness_check(factors, gens, L: int) -> FreenessReport:
    """Evaluate every freely reduced word of length <= L in ``gens``.

    Returns ``relation_witness`` with the first trivial word found (shortest,
    then in generator order g1, g1^-1, g2, ...), plus every witness of that
    length in ``data['witnesses']``; otherwise ``no_relation_up_to_L``.
    """
    if L < 1:
        raise ValidationError("bound L must be >= 1")
    gens = list(gens)
    names = [f"g{i + 1}" for i in range(len(gens))]
    letters = [(i, s) for i in range(len(gens)) for s in (1, -1)]
    images = {(i, s): free_product_normal_form(factors, gens[i] if s > 0 else gens[i].inverse())
              for i, s in letters}
    checked = 0
    # level-by-level so the first witness is a shortest one
    level = [((), Word())]
    for length in range(1, L + 1):
        witnesses = []
        nxt = []
        for prefix, value in level:
            for i, s in letters:
                if prefix and prefix[-1] == (i, -s):
                    continue
                word = prefix + ((i, s),)
                val = free_product_normal_form(factors, value * images[(i, s)])
                checked += 1
                if not val:
                    witnesses.append(word)
                nxt.append((word, val))
        if witnesses:
            def fmt(word):
                return Word(tuple((names[i], s) for i, s in word))
            return FreenessReport(
                "relation_witness", witness=fmt(witnesses[0]),
                data={"length": length, "words_checked": checked, "generators": names,
                      "witnesses": [fmt(w) for w in witnesses[:MAX_WITNESSES]]},
            )
        level = nxt
    return FreenessReport("no_relation_up_to_L", data={"bound": L, "words_checked": checked,
                                                       "generators": names})
