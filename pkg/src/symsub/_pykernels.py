"""Pure-Python reference kernels.

Laurent polynomials are dicts exponent -> nonzero int.  Sparse matrices are
column dicts ``{col: {row: value}}`` with arbitrary ring entries.
"""

BACKEND = "python"


def lp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v += c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def lp_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = -c
        else:
            v -= c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def lp_mul(a, b):
    if len(a) == 1 and len(b) == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        return {ea + eb: ca * cb}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e)
            out[e] = ca * cb if v is None else v + ca * cb
    return {e: c for e, c in out.items() if c}


def spmv(cols, vec):
    """Apply a column-dict matrix to a sparse vector ``{index: value}``."""
    out = {}
    for k, x in vec.items():
        col = cols.get(k)
        if not col:
            continue
        for r, a in col.items():
            v = out.get(r)
            out[r] = a * x if v is None else v + a * x
    return {r: v for r, v in out.items() if v != 0}


def spmm(a_cols, b_cols):
    """Column-dict product ``A @ B``."""
    out = {}
    for c, vec in b_cols.items():
        col = spmv(a_cols, vec)
        if col:
            out[c] = col
    return out
