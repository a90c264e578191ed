"""Pure-Python hot kernels.

Same contract as the compiled ``_ckernels`` module; used when the extension
is not built or when ``BUBBLEPAT_PURE=1``.
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=4096)
def value_neighbours(pattern: tuple) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """For each index j, the earlier indices holding the nearest smaller and
    nearest larger value (-1 when there is none)."""
    below = []
    above = []
    for j, v in enumerate(pattern):
        lo = hi = -1
        for i in range(j):
            w = pattern[i]
            if w < v and (lo < 0 or w > pattern[lo]):
                lo = i
            elif w > v and (hi < 0 or w < pattern[hi]):
                hi = i
        below.append(lo)
        above.append(hi)
    return tuple(below), tuple(above)


def contains(text, pattern, anchored=False) -> bool:
    """True iff ``text`` has a subsequence order isomorphic to ``pattern``.

    With ``anchored`` the occurrence must use the last entry of ``text``.
    """
    k = len(pattern)
    n = len(text)
    if k == 0:
        return True
    if k > n:
        return False
    pattern = tuple(pattern)
    below, above = value_neighbours(pattern)
    floor = min(text) - 1
    ceil = max(text) + 1
    matched = [0] * k

    def place(j, start):
        b = below[j]
        a = above[j]
        lo = matched[b] if b >= 0 else floor
        hi = matched[a] if a >= 0 else ceil
        if anchored and j == k - 1:
            candidates = range(n - 1, n) if start <= n - 1 else ()
        else:
            candidates = range(start, n - k + j + 1)
        for i in candidates:
            v = text[i]
            if lo < v < hi:
                if j == k - 1:
                    return True
                matched[j] = v
                if place(j + 1, i + 1):
                    return True
        return False

    return place(0, 0)


def avoids_all(text, patterns, anchored=False) -> bool:
    for p in patterns:
        if contains(text, p, anchored):
            return False
    return True


def bubble(p) -> tuple:
    """One bubble-sort pass: each left-to-right maximum is carried to the
    slot just before the next one."""
    out = []
    held = None
    for v in p:
        if held is None:
            held = v
        elif v > held:
            out.append(held)
            held = v
        else:
            out.append(v)
    if held is not None:
        out.append(held)
    return tuple(out)


def bubble_power(p, k: int) -> tuple:
    p = tuple(p)
    for _ in range(k):
        p = bubble(p)
    return p


def stack_pass(p) -> tuple:
    """One pass through a stack, popping whenever the top is smaller than
    the incoming entry."""
    stack = []
    out = []
    for v in p:
        while stack and stack[-1] < v:
            out.append(stack.pop())
        stack.append(v)
    out.extend(reversed(stack))
    return tuple(out)


def is_increasing(p) -> bool:
    return all(p[i] < p[i + 1] for i in range(len(p) - 1))


def deletions(p) -> list:
    """Standardized one-point deletions, by deleted position."""
    out = []
    for i, v in enumerate(p):
        out.append(tuple(w - 1 if w > v else w for j, w in enumerate(p) if j != i))
    return out


def first_missing_deletion(p, members) -> int:
    """Position of the first one-point deletion of ``p`` not in ``members``,
    or -1 when every deletion is a member."""
    for i, q in enumerate(deletions(p)):
        if q not in members:
            return i
    return -1
