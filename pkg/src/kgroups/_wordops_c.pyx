# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled letter crunching; must agree with _wordops_py byte for byte.

See _wordops_py for the encoding and the admissibility notes on the
heuristic parameters.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

from cpython.bytes cimport PyBytes_FromStringAndSize

BACKEND = "c"

DEF MAX_TABLES = 16


cdef struct HParams:
    int ntables
    const unsigned char *tables[MAX_TABLES]
    long maxw[MAX_TABLES]
    long grid_amax


cdef Py_ssize_t _push(unsigned char *buf, Py_ssize_t top,
                      const unsigned char *src, Py_ssize_t n) noexcept nogil:
    """Append src to the reduced stack buf of height top; return new height."""
    cdef Py_ssize_t i
    for i in range(n):
        if top > 0 and (buf[top - 1] ^ src[i]) == 1:
            top -= 1
        else:
            buf[top] = src[i]
            top += 1
    return top


def free_reduce(bytes data):
    cdef const unsigned char *p = data
    cdef Py_ssize_t n = len(data)
    cdef unsigned char *buf = <unsigned char *> malloc(n if n else 1)
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t top = _push(buf, 0, p, n)
    try:
        return PyBytes_FromStringAndSize(<char *> buf, top)
    finally:
        free(buf)


def invert(bytes a):
    cdef const unsigned char *p = a
    cdef Py_ssize_t n = len(a)
    cdef unsigned char *buf = <unsigned char *> malloc(n if n else 1)
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = p[n - 1 - i] ^ 1
    try:
        return PyBytes_FromStringAndSize(<char *> buf, n)
    finally:
        free(buf)


def concat(bytes a, bytes b):
    cdef const unsigned char *pa = a
    cdef const unsigned char *pb = b
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t i = na, j = 0
    while i > 0 and j < nb and (pa[i - 1] ^ pb[j]) == 1:
        i -= 1
        j += 1
    cdef Py_ssize_t total = i + (nb - j)
    cdef unsigned char *buf = <unsigned char *> malloc(total if total else 1)
    if buf == NULL:
        raise MemoryError()
    if i:
        memcpy(buf, pa, i)
    if nb - j:
        memcpy(buf + i, pb + j, nb - j)
    try:
        return PyBytes_FromStringAndSize(<char *> buf, total)
    finally:
        free(buf)


def insert_reduce(bytes word, Py_ssize_t pos, bytes rv):
    cdef const unsigned char *pw = word
    cdef const unsigned char *pv = rv
    cdef Py_ssize_t n = len(word), nv = len(rv)
    cdef unsigned char *buf = <unsigned char *> malloc(n + nv if n + nv else 1)
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t top
    memcpy(buf, pw, pos)
    top = _push(buf, pos, pv, nv)
    top = _push(buf, top, pw + pos, n - pos)
    try:
        return PyBytes_FromStringAndSize(<char *> buf, top)
    finally:
        free(buf)


cdef int _parse_hparams(object hparams, HParams *hp, list keepalive) except -1:
    cdef object tables, tbl
    cdef Py_ssize_t k
    hp.ntables = 0
    hp.grid_amax = 0
    if hparams is None:
        return 0
    tables, grid_amax = hparams
    if len(tables) > MAX_TABLES:
        raise ValueError("too many heuristic tables")
    for k in range(len(tables)):
        tbl, maxw = tables[k]
        if len(tbl) != 256:
            raise ValueError("heuristic tables must have 256 entries")
        keepalive.append(tbl)
        hp.tables[k] = <const unsigned char *> (<bytes> tbl)
        hp.maxw[k] = maxw
    hp.ntables = len(tables)
    hp.grid_amax = grid_amax
    return 0


cdef long _heur(const unsigned char *w, Py_ssize_t n, HParams *hp) noexcept nogil:
    cdef long h = 0, s, v, cx, area
    cdef int t
    cdef Py_ssize_t i
    for t in range(hp.ntables):
        s = 0
        for i in range(n):
            s += <long> hp.tables[t][w[i]] - 128
        if s < 0:
            s = -s
        v = (s + hp.maxw[t] - 1) // hp.maxw[t]
        if v > h:
            h = v
    if hp.grid_amax:
        cx = 0
        area = 0
        for i in range(n):
            if w[i] == 0:
                cx += 1
            elif w[i] == 1:
                cx -= 1
            elif w[i] == 2:
                area += cx
            elif w[i] == 3:
                area -= cx
        if area < 0:
            area = -area
        v = (area + hp.grid_amax - 1) // hp.grid_amax
        if v > h:
            h = v
    return h


def heuristic(bytes state, hparams):
    cdef HParams hp
    cdef list keepalive = []
    _parse_hparams(hparams, &hp, keepalive)
    cdef const unsigned char *p = state
    return _heur(p, len(state), &hp)


def expand(bytes state, variants, Py_ssize_t len_cap, hparams):
    cdef HParams hp
    cdef list keepalive = []
    _parse_hparams(hparams, &hp, keepalive)

    cdef const unsigned char *pw = state
    cdef Py_ssize_t n = len(state)
    cdef Py_ssize_t nvars = len(variants), maxv = 0, k
    for k in range(nvars):
        if len(variants[k]) > maxv:
            maxv = len(variants[k])
    cdef unsigned char *buf = <unsigned char *> malloc(n + maxv if n + maxv else 1)
    if buf == NULL:
        raise MemoryError()

    cdef list out = []
    cdef Py_ssize_t pos, top, nv
    cdef const unsigned char *pv
    cdef bytes rv
    try:
        for k in range(nvars):
            rv = variants[k]
            pv = rv
            nv = len(rv)
            for pos in range(n + 1):
                memcpy(buf, pw, pos)
                top = _push(buf, pos, pv, nv)
                top = _push(buf, top, pw + pos, n - pos)
                if top <= len_cap:
                    out.append((PyBytes_FromStringAndSize(<char *> buf, top),
                                pos, k, _heur(buf, top, &hp)))
    finally:
        free(buf)
    return out
