"""Reference implementations used only to check the real ones.

Kept deliberately naive and slicing-based so they stay independent of the
production code paths they verify.
"""

from __future__ import annotations

from typing import Sequence


def oracle_fragments(s: Sequence[str], r: Sequence[str]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Repeatedly take the longest S-prefix-anchored common substring.

    At each summary position, try every length from longest to shortest and
    every report start from left to right; the first hit is the fragment
    (longest length, earliest report occurrence). Returns
    [(summary_span, report_span), ...] with half-open spans.
    """
    s = list(s)
    r = list(r)
    out = []
    i = 0
    while i < len(s):
        found = None
        for length in range(len(s) - i, 0, -1):
            window = s[i : i + length]
            for j in range(0, len(r) - length + 1):
                if r[j : j + length] == window:
                    found = (length, j)
                    break
            if found:
                break
        if found:
            length, j = found
            out.append(((i, i + length), (j, j + length)))
            i += length
        else:
            i += 1
    return out


def oracle_score(s: Sequence[str], r: Sequence[str]) -> float:
    total = 0.0
    for (si, se), _ in oracle_fragments(s, r):
        length = se - si
        total += length + 0.1 * length**2
    return total / len(s)
