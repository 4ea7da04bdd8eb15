# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled word kernel; behaviourally identical to pushcalc._purewords."""

from libc.stdlib cimport free, malloc


cdef inline tuple _as_tuple(long* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = buf[i]
    return tuple(out)


def reduce_letters(letters):
    cdef tuple src = tuple(letters)
    cdef Py_ssize_t n = len(src)
    if n == 0:
        return src
    cdef long* buf = <long*> malloc(n * sizeof(long))
    if buf is NULL:
        raise MemoryError
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i
    cdef long x
    try:
        for i in range(n):
            x = src[i]
            if top > 0 and buf[top - 1] == -x:
                top -= 1
            else:
                buf[top] = x
                top += 1
        return _as_tuple(buf, top)
    finally:
        free(buf)


def concat(a, b):
    cdef tuple ta = a
    cdef tuple tb = b
    cdef Py_ssize_t i = len(ta)
    cdef Py_ssize_t j = 0
    cdef Py_ssize_t n = len(tb)
    while i > 0 and j < n and <long> ta[i - 1] == -<long> tb[j]:
        i -= 1
        j += 1
    return ta[:i] + tb[j:]


def invert(a):
    cdef tuple ta = a
    cdef Py_ssize_t n = len(ta)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = -<long> ta[n - 1 - i]
    return tuple(out)


def substitute(images, letters):
    cdef tuple imgs = tuple(images)
    cdef tuple src = tuple(letters)
    cdef Py_ssize_t nsrc = len(src)
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t i, j, m
    cdef long x, y
    cdef tuple img
    for i in range(nsrc):
        x = src[i]
        img = imgs[(x if x > 0 else -x) - 1]
        total += len(img)
    if total == 0:
        return ()
    cdef long* buf = <long*> malloc(total * sizeof(long))
    if buf is NULL:
        raise MemoryError
    cdef Py_ssize_t top = 0
    try:
        for i in range(nsrc):
            x = src[i]
            if x > 0:
                img = imgs[x - 1]
                m = len(img)
                for j in range(m):
                    y = <long> img[j]
                    if top > 0 and buf[top - 1] == -y:
                        top -= 1
                    else:
                        buf[top] = y
                        top += 1
            else:
                img = imgs[-x - 1]
                m = len(img)
                for j in range(m):
                    y = -<long> img[m - 1 - j]
                    if top > 0 and buf[top - 1] == -y:
                        top -= 1
                    else:
                        buf[top] = y
                        top += 1
        return _as_tuple(buf, top)
    finally:
        free(buf)
