# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewrite kernels. Must agree with srskit._kernel.pure bit for bit."""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_GET_SIZE
from libc.string cimport memcmp

BACKEND_NAME = "compiled"


def find_redex(tuple lhss, bytes w, Py_ssize_t start=0):
    cdef const char* cw = PyBytes_AS_STRING(w)
    cdef Py_ssize_t n = PyBytes_GET_SIZE(w)
    cdef Py_ssize_t m = len(lhss)
    cdef Py_ssize_t pos, i, li
    cdef Py_ssize_t best_i, best_len
    cdef bytes l
    cdef const char* cl
    if start < 0:
        start = 0
    for pos in range(start, n):
        best_i = -1
        best_len = 0
        for i in range(m):
            l = <bytes> lhss[i]
            li = PyBytes_GET_SIZE(l)
            if li > best_len and pos + li <= n:
                cl = PyBytes_AS_STRING(l)
                if memcmp(cw + pos, cl, li) == 0:
                    best_i = i
                    best_len = li
        if best_i >= 0:
            return pos, best_i
    return None


def normalize_bytes(tuple lhss, tuple rhss, bytes w, long max_steps=-1):
    cdef Py_ssize_t m = len(lhss)
    if m == 0:
        return w
    cdef Py_ssize_t max_lhs = 0
    cdef Py_ssize_t i
    for i in range(m):
        if PyBytes_GET_SIZE(<bytes> lhss[i]) > max_lhs:
            max_lhs = PyBytes_GET_SIZE(<bytes> lhss[i])
    cdef long steps = 0
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t pos
    cdef object hit
    while True:
        hit = find_redex(lhss, w, lo)
        if hit is None:
            return w
        if 0 <= max_steps <= steps:
            return None
        pos = <Py_ssize_t> hit[0]
        i = <Py_ssize_t> hit[1]
        w = w[:pos] + (<bytes> rhss[i]) + w[pos + PyBytes_GET_SIZE(<bytes> lhss[i]):]
        steps += 1
        lo = pos - max_lhs + 1
        if lo < 0:
            lo = 0


def suffix_push(tuple lhss, tuple rhss, bytes w, int sym):
    cdef Py_ssize_t n = PyBytes_GET_SIZE(w)
    cdef Py_ssize_t m = len(lhss)
    cdef const char* cw = PyBytes_AS_STRING(w)
    cdef Py_ssize_t i, li
    cdef Py_ssize_t best = -1
    cdef Py_ssize_t best_len = 0
    cdef bytes l
    cdef const char* cl
    for i in range(m):
        l = <bytes> lhss[i]
        li = PyBytes_GET_SIZE(l)
        if li > best_len and li <= n + 1:
            cl = PyBytes_AS_STRING(l)
            if (<unsigned char> cl[li - 1]) == (<unsigned char> sym):
                if li == 1 or memcmp(cw + n - (li - 1), cl, li - 1) == 0:
                    best = i
                    best_len = li
    if best < 0:
        return w + bytes((sym,))
    return w[: n + 1 - best_len] + (<bytes> rhss[best])
