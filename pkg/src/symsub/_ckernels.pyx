# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pykernels``.

``lp_mul`` takes a dense int64 path when the exponent span is short and the
coefficient bound rules out overflow, and a dict path otherwise.
"""
from libc.stdlib cimport malloc, calloc, free

BACKEND = "cython"

cdef long long _LIM = 1LL << 62
cdef Py_ssize_t _SPAN = 512


def lp_add(dict a, dict b):
    cdef dict out
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def lp_sub(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = -c
        else:
            v = v - c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


cdef dict _mul_generic(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t e, ea, eb
    for ka, ca in a.items():
        ea = ka
        for kb, cb in b.items():
            eb = kb
            e = ea + eb
            v = out.get(e)
            out[e] = ca * cb if v is None else v + ca * cb
    return {k: c for k, c in out.items() if c}


cdef object _bound(dict a):
    cdef object m = 0
    for c in a.values():
        if c > m:
            m = c
        elif -c > m:
            m = -c
    return m


def lp_mul(dict a, dict b):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return {}
    if la == 1 and lb == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        return {ea + eb: ca * cb}
    cdef Py_ssize_t amin = min(a), amax = max(a), bmin = min(b), bmax = max(b)
    cdef Py_ssize_t na = amax - amin + 1, nb = bmax - bmin + 1
    if na > _SPAN or nb > _SPAN:
        return _mul_generic(a, b)
    if _bound(a) * _bound(b) * min(la, lb) >= _LIM:
        return _mul_generic(a, b)
    cdef long long *xa = <long long *> calloc(na, sizeof(long long))
    cdef long long *xb = <long long *> calloc(nb, sizeof(long long))
    cdef long long *xo = <long long *> calloc(na + nb - 1, sizeof(long long))
    cdef Py_ssize_t i, j
    cdef long long ci
    cdef dict out = {}
    try:
        for k, c in a.items():
            xa[<Py_ssize_t> k - amin] = c
        for k, c in b.items():
            xb[<Py_ssize_t> k - bmin] = c
        for i in range(na):
            ci = xa[i]
            if ci == 0:
                continue
            for j in range(nb):
                if xb[j] != 0:
                    xo[i + j] += ci * xb[j]
        for i in range(na + nb - 1):
            if xo[i] != 0:
                out[i + amin + bmin] = xo[i]
    finally:
        free(xa)
        free(xb)
        free(xo)
    return out


def spmv(dict cols, dict vec):
    cdef dict out = {}
    cdef dict col
    for k, x in vec.items():
        col = cols.get(k)
        if not col:
            continue
        for r, a in col.items():
            v = out.get(r)
            out[r] = a * x if v is None else v + a * x
    return {r: v for r, v in out.items() if v != 0}


def spmm(dict a_cols, dict b_cols):
    cdef dict out = {}
    cdef dict col
    for c, vec in b_cols.items():
        col = spmv(a_cols, vec)
        if col:
            out[c] = col
    return out
