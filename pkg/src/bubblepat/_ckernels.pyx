# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; mirrors bubblepat._pykernels."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.limits cimport LONG_MIN, LONG_MAX


cdef long* _to_c(object seq, Py_ssize_t n) except NULL:
    cdef long* buf = <long*>PyMem_Malloc((n if n > 0 else 1) * sizeof(long))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef bint _contains(const long* t, Py_ssize_t n, const long* p, Py_ssize_t k,
                    bint anchored, Py_ssize_t* work) noexcept nogil:
    # work holds 4*k slots: below, above, next-candidate position, matched value
    cdef Py_ssize_t* below = work
    cdef Py_ssize_t* above = work + k
    cdef Py_ssize_t* pos = work + 2 * k
    cdef Py_ssize_t* val = work + 3 * k
    cdef Py_ssize_t i, j, lo_i, hi_i, stop
    cdef long v, w, lo, hi
    cdef bint found

    if k == 0:
        return True
    if k > n:
        return False
    for j in range(k):
        lo_i = -1
        hi_i = -1
        v = p[j]
        for i in range(j):
            w = p[i]
            if w < v:
                if lo_i < 0 or w > p[lo_i]:
                    lo_i = i
            elif w > v:
                if hi_i < 0 or w < p[hi_i]:
                    hi_i = i
        below[j] = lo_i
        above[j] = hi_i

    j = 0
    pos[0] = 0
    while True:
        lo = <long>val[below[j]] if below[j] >= 0 else LONG_MIN
        hi = <long>val[above[j]] if above[j] >= 0 else LONG_MAX
        i = pos[j]
        stop = n - k + j
        if anchored and j == k - 1:
            if i > n - 1:
                i = n
            else:
                i = n - 1
        found = False
        while i <= stop:
            v = t[i]
            if v > lo and v < hi:
                found = True
                break
            i += 1
        if found:
            if j == k - 1:
                return True
            val[j] = v
            pos[j] = i
            j += 1
            pos[j] = i + 1
        else:
            if j == 0:
                return False
            j -= 1
            pos[j] += 1


def contains(text, pattern, bint anchored=False):
    """True iff ``text`` has a subsequence order isomorphic to ``pattern``."""
    cdef Py_ssize_t n = len(text), k = len(pattern)
    cdef long* t
    cdef long* p
    cdef Py_ssize_t* work
    cdef bint r
    if k == 0:
        return True
    if k > n:
        return False
    t = _to_c(text, n)
    try:
        p = _to_c(pattern, k)
        try:
            work = <Py_ssize_t*>PyMem_Malloc(4 * k * sizeof(Py_ssize_t))
            if work == NULL:
                raise MemoryError()
            r = _contains(t, n, p, k, anchored, work)
            PyMem_Free(work)
        finally:
            PyMem_Free(p)
    finally:
        PyMem_Free(t)
    return r


def avoids_all(text, patterns, bint anchored=False):
    cdef Py_ssize_t n = len(text), k, kmax = 0
    cdef long* t
    cdef long* p
    cdef Py_ssize_t* work
    cdef bint hit
    for pat in patterns:
        k = len(pat)
        if k == 0:
            return False
        if k > kmax:
            kmax = k
    if kmax == 0:
        return True
    t = _to_c(text, n)
    work = <Py_ssize_t*>PyMem_Malloc(4 * kmax * sizeof(Py_ssize_t))
    try:
        if work == NULL:
            raise MemoryError()
        for pat in patterns:
            k = len(pat)
            if k > n:
                continue
            p = _to_c(pat, k)
            hit = _contains(t, n, p, k, anchored, work)
            PyMem_Free(p)
            if hit:
                return False
        return True
    finally:
        PyMem_Free(work)
        PyMem_Free(t)


def bubble(p):
    """One bubble-sort pass."""
    cdef Py_ssize_t n = len(p), i, o = 0
    cdef long* t
    cdef long held, v
    if n == 0:
        return ()
    t = _to_c(p, n)
    out = [None] * n
    try:
        held = t[0]
        for i in range(1, n):
            v = t[i]
            if v > held:
                out[o] = held
                held = v
            else:
                out[o] = v
            o += 1
        out[o] = held
    finally:
        PyMem_Free(t)
    return tuple(out)


def bubble_power(p, Py_ssize_t k):
    cdef Py_ssize_t n = len(p), i, r
    cdef long* t
    cdef long held, v
    if n == 0 or k <= 0:
        return tuple(p)
    t = _to_c(p, n)
    try:
        for r in range(k):
            held = t[0]
            for i in range(1, n):
                v = t[i]
                if v > held:
                    t[i - 1] = held
                    held = v
                else:
                    t[i - 1] = v
            t[n - 1] = held
        return tuple([t[i] for i in range(n)])
    finally:
        PyMem_Free(t)


def stack_pass(p):
    """One pass through a stack."""
    cdef Py_ssize_t n = len(p), i, top = 0, o = 0
    cdef long* t
    cdef long* stack
    cdef long v
    if n == 0:
        return ()
    t = _to_c(p, n)
    stack = <long*>PyMem_Malloc(n * sizeof(long))
    out = [None] * n
    try:
        for i in range(n):
            v = t[i]
            while top > 0 and stack[top - 1] < v:
                top -= 1
                out[o] = stack[top]
                o += 1
            stack[top] = v
            top += 1
        while top > 0:
            top -= 1
            out[o] = stack[top]
            o += 1
    finally:
        PyMem_Free(stack)
        PyMem_Free(t)
    return tuple(out)


def is_increasing(p):
    cdef Py_ssize_t i, n = len(p)
    for i in range(n - 1):
        if p[i] >= p[i + 1]:
            return False
    return True


cdef tuple _deletion(const long* t, Py_ssize_t n, Py_ssize_t i):
    cdef Py_ssize_t j, o = 0
    cdef long v = t[i], w
    out = [None] * (n - 1)
    for j in range(n):
        if j == i:
            continue
        w = t[j]
        out[o] = w - 1 if w > v else w
        o += 1
    return tuple(out)


def deletions(p):
    """Standardized one-point deletions, by deleted position."""
    cdef Py_ssize_t n = len(p), i
    cdef long* t = _to_c(p, n)
    try:
        return [_deletion(t, n, i) for i in range(n)]
    finally:
        PyMem_Free(t)


def first_missing_deletion(p, members):
    """Position of the first one-point deletion of ``p`` not in ``members``,
    or -1 when every deletion is a member."""
    cdef Py_ssize_t n = len(p), i
    cdef long* t = _to_c(p, n)
    try:
        for i in range(n):
            if _deletion(t, n, i) not in members:
                return i
        return -1
    finally:
        PyMem_Free(t)
