"""Words in free groups.

A word is a tuple of ``(generator, exponent)`` letters with exponent +1 or
-1, read left to right as a group product.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Tuple

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


def reduce(w: Iterable[Letter]) -> Word:
    out = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def mul(*ws: Word) -> Word:
    return reduce(letter for w in ws for letter in w)


def cyclic_reduce(w: Word) -> Word:
    w = reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return w[i:j + 1]


def rotations(w: Word):
    for i in range(len(w)):
        yield w[i:] + w[:i]


def cyclic_canonical(w: Word) -> Word:
    """Least rotation of ``w`` or of its inverse; identifies conjugate relators."""
    w = cyclic_reduce(w)
    if not w:
        return w
    return min(min(rotations(w)), min(rotations(inverse(w))))


def substitute(w: Word, images: Mapping[str, Word]) -> Word:
    out = []
    for g, e in w:
        img = images.get(g, ((g, 1),))
        out.extend(img if e == 1 else inverse(img))
    return reduce(out)


def occurrences(w: Word, g: str) -> int:
    return sum(1 for h, _ in w if h == g)


def exponent_sum(w: Word, g: str) -> int:
    return sum(e for h, e in w if h == g)


def power(g: str, k: int) -> Word:
    return tuple((g, 1 if k > 0 else -1) for _ in range(abs(k)))


def format_word(w: Word) -> str:
    """``(("t",1),("t",1),("u",-1))`` -> ``"t^2*u^-1"``; the empty word is ``"1"``."""
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        g, e = w[i]
        j = i
        while j < len(w) and w[j] == (g, e):
            j += 1
        k = (j - i) * e
        parts.append(g if k == 1 else f"{g}^{k}")
        i = j
    return "*".join(parts)


def all_reduced_words(generators, radius: int):
    """Every reduced word of length at most ``radius``, shortlex ordered."""
    letters = [(g, 1) for g in generators] + [(g, -1) for g in generators]
    layer = [()]
    out = [()]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[-1][0] == a[0] and w[-1][1] == -a[1]:
                    continue
                nxt.append(w + (a,))
        out.extend(nxt)
        layer = nxt
    return out


def parse_word(text: str) -> Word:
    """Inverse of :func:`format_word`: ``"t^2*u^-1"`` -> word; ``"1"`` or ``""`` is empty."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for part in text.split("*"):
        name, _, exp = part.strip().partition("^")
        if not name:
            raise ValueError(f"bad word {text!r}")
        k = int(exp) if exp else 1
        out.extend(power(name, k))
    return reduce(out)
