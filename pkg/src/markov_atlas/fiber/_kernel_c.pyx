# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fiber enumeration kernel.

Same contract as `_kernel_py`: tables are non-decreasing tuples of
labeling bitmasks, marginal keys are bytes of per-edge cell counts.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.long cimport PyLong_FromLong
from cpython.ref cimport Py_INCREF


cdef inline object _units_tuple(int* units, int total):
    """Fresh tuple of ints; compensates PyTuple_SET_ITEM's stolen ref."""
    cdef object tup = PyTuple_New(total)
    cdef object val
    cdef int e
    for e in range(total):
        val = PyLong_FromLong(units[e])
        Py_INCREF(val)
        PyTuple_SET_ITEM(tup, e, val)
    return tup

KERNEL_ID = "c"

from . import _kernel_py

CapExceeded = _kernel_py.CapExceeded


cdef int* _bump_flat(int n, object edges, int* nedges_out) except NULL:
    """bump[mask * nedges + e] = flat cell index for edge e."""
    cdef int nedges = len(edges)
    cdef int num = 1 << n
    cdef size_t size = num * nedges
    cdef int* bump = <int*>malloc(sizeof(int) * (size if size else 1))
    if bump == NULL:
        raise MemoryError()
    cdef int mask, e, i, j, cell
    cdef list elist = [(int(a), int(b)) for a, b in edges]
    for mask in range(num):
        for e in range(nedges):
            i = elist[e][0]
            j = elist[e][1]
            cell = (((mask >> i) & 1) << 1) | ((mask >> j) & 1)
            bump[mask * nedges + e] = 4 * e + cell
    nedges_out[0] = nedges
    return bump


def group_tables(int n, edges, int total, long cap=0):
    """All tables with exactly `total` units, grouped by marginal key."""
    cdef dict groups = {}
    cdef int nedges = 0
    cdef int* bump
    cdef int num = 1 << n
    if total == 0:
        groups[bytes(4 * len(edges))] = [()]
        return groups
    bump = _bump_flat(n, edges, &nedges)
    cdef int ncells = 4 * nedges
    cdef int* cells = <int*>malloc(sizeof(int) * (ncells if ncells else 1))
    cdef int* units = <int*>malloc(sizeof(int) * total)
    cdef int* nxt = <int*>malloc(sizeof(int) * (total + 1))
    if cells == NULL or units == NULL or nxt == NULL:
        free(bump); free(cells); free(units); free(nxt)
        raise MemoryError()
    cdef char* buf = <char*>malloc(ncells if ncells else 1)
    if buf == NULL:
        free(bump); free(cells); free(units); free(nxt)
        raise MemoryError()
    memset(cells, 0, sizeof(int) * ncells)
    cdef long count = 0
    cdef int depth = 0, m, e
    cdef bytes key
    cdef list bucket
    cdef object tup
    nxt[0] = 0
    try:
        while depth >= 0:
            if depth == total:
                count += 1
                if cap and count > cap:
                    raise CapExceeded
                for e in range(ncells):
                    buf[e] = <char>cells[e]
                key = PyBytes_FromStringAndSize(buf, ncells)
                tup = _units_tuple(units, total)
                bucket = <list>groups.get(key)
                if bucket is None:
                    groups[key] = [tup]
                else:
                    bucket.append(tup)
                depth -= 1
                for e in range(nedges):
                    cells[bump[units[depth] * nedges + e]] -= 1
                continue
            m = nxt[depth]
            if m >= num:
                depth -= 1
                if depth >= 0:
                    for e in range(nedges):
                        cells[bump[units[depth] * nedges + e]] -= 1
                continue
            nxt[depth] = m + 1
            for e in range(nedges):
                cells[bump[m * nedges + e]] += 1
            units[depth] = m
            nxt[depth + 1] = m
            depth += 1
    finally:
        free(bump); free(cells); free(units); free(nxt); free(buf)
    return groups


def fiber_tables(int n, edges, budgets, int total, candidates=None,
                 long cap=0):
    """All tables with exactly `total` units whose per-edge cell counts
    equal `budgets` (length 4 * len(edges))."""
    cdef int nedges = 0
    cdef int* bump
    cdef list out = []
    cdef int ncells = 4 * len(edges)
    if len(budgets) != ncells:
        raise ValueError("budgets length mismatch")
    if total == 0:
        if all(b == 0 for b in budgets):
            out.append(())
        return out
    cdef list cand
    if candidates is None:
        cand = list(range(1 << n))
    else:
        cand = sorted(candidates)
    cdef int ncand = len(cand)
    bump = _bump_flat(n, edges, &nedges)
    cdef int* budg = <int*>malloc(sizeof(int) * (ncells if ncells else 1))
    cdef int* cells = <int*>malloc(sizeof(int) * (ncells if ncells else 1))
    cdef int* units = <int*>malloc(sizeof(int) * total)
    cdef int* nxt = <int*>malloc(sizeof(int) * (total + 1))
    cdef int* cmask = <int*>malloc(sizeof(int) * (ncand if ncand else 1))
    if budg == NULL or cells == NULL or units == NULL or nxt == NULL \
            or cmask == NULL:
        free(bump); free(budg); free(cells); free(units); free(nxt)
        free(cmask)
        raise MemoryError()
    cdef int e
    for e in range(ncells):
        budg[e] = budgets[e]
    for e in range(ncand):
        cmask[e] = cand[e]
    memset(cells, 0, sizeof(int) * ncells)
    cdef int depth = 0, ci, mask, idx
    cdef object tup, val
    cdef bint ok
    nxt[0] = 0
    try:
        while depth >= 0:
            if depth == total:
                if cap and len(out) >= cap:
                    raise CapExceeded
                tup = PyTuple_New(total)
                for e in range(total):
                    val = PyLong_FromLong(cmask[units[e]])
                    Py_INCREF(val)
                    PyTuple_SET_ITEM(tup, e, val)
                out.append(tup)
                depth -= 1
                mask = cmask[units[depth]]
                for e in range(nedges):
                    cells[bump[mask * nedges + e]] -= 1
                continue
            ci = nxt[depth]
            if ci >= ncand:
                depth -= 1
                if depth >= 0:
                    mask = cmask[units[depth]]
                    for e in range(nedges):
                        cells[bump[mask * nedges + e]] -= 1
                continue
            nxt[depth] = ci + 1
            mask = cmask[ci]
            ok = True
            for e in range(nedges):
                idx = bump[mask * nedges + e]
                cells[idx] += 1
                if cells[idx] > budg[idx]:
                    ok = False
            if ok:
                units[depth] = ci
                nxt[depth + 1] = ci
                depth += 1
            else:
                for e in range(nedges):
                    cells[bump[mask * nedges + e]] -= 1
    finally:
        free(bump); free(budg); free(cells); free(units); free(nxt)
        free(cmask)
    return out


cdef int _flat_norm(int* flat, int t, int a, int b) nogil:
    """L1 distance between sorted rows a and b of a flat (f x t) array."""
    cdef int i = 0, j = 0, inter = 0
    cdef int* ra = flat + a * t
    cdef int* rb = flat + b * t
    while i < t and j < t:
        if ra[i] == rb[j]:
            inter += 1
            i += 1
            j += 1
        elif ra[i] < rb[j]:
            i += 1
        else:
            j += 1
    return 2 * (t - inter)


cdef int* _flatten(tables, int* f_out, int* t_out) except NULL:
    cdef int f = len(tables)
    cdef int t = len(tables[0]) if f else 0
    cdef int* flat = <int*>malloc(sizeof(int) * (f * t if f * t else 1))
    if flat == NULL:
        raise MemoryError()
    cdef int i, k
    for i in range(f):
        row = tables[i]
        if len(row) != t:
            free(flat)
            raise ValueError("tables must share a common total")
        for k in range(t):
            flat[i * t + k] = row[k]
    f_out[0] = f
    t_out[0] = t
    return flat


def component_labels(tables, int max_norm):
    """Union-find labels of the graph joining tables at L1 distance
    <= max_norm.  Labels are root indices."""
    cdef int f = 0, t = 0
    if len(tables) == 0:
        return []
    cdef int* flat = _flatten(tables, &f, &t)
    cdef int* parent = <int*>malloc(sizeof(int) * f)
    if parent == NULL:
        free(flat)
        raise MemoryError()
    cdef int i, j, ri, rj
    for i in range(f):
        parent[i] = i
    try:
        with nogil:
            for i in range(f):
                for j in range(i + 1, f):
                    ri = i
                    while parent[ri] != ri:
                        parent[ri] = parent[parent[ri]]
                        ri = parent[ri]
                    rj = j
                    while parent[rj] != rj:
                        parent[rj] = parent[parent[rj]]
                        rj = parent[rj]
                    if ri == rj:
                        continue
                    if _flat_norm(flat, t, i, j) <= max_norm:
                        parent[ri] = rj
        out = []
        for i in range(f):
            ri = i
            while parent[ri] != ri:
                ri = parent[ri]
            out.append(ri)
        return out
    finally:
        free(flat)
        free(parent)


def bottleneck_norm(tables):
    """Largest edge norm on a minimum spanning tree of the fiber under
    L1 distance (0 for fibers of size <= 1)."""
    cdef int f = 0, t = 0
    if len(tables) <= 1:
        return 0
    cdef int* flat = _flatten(tables, &f, &t)
    cdef long INF = 1 << 60
    cdef long* dist = <long*>malloc(sizeof(long) * f)
    cdef char* used = <char*>malloc(f)
    if dist == NULL or used == NULL:
        free(flat); free(dist); free(used)
        raise MemoryError()
    cdef int i, u, it
    cdef long du, best = 0, d
    for i in range(f):
        dist[i] = INF
        used[i] = 0
    dist[0] = 0
    try:
        with nogil:
            for it in range(f):
                u = -1
                du = INF
                for i in range(f):
                    if not used[i] and dist[i] < du:
                        du = dist[i]
                        u = i
                used[u] = 1
                if du > best:
                    best = du
                for i in range(f):
                    if not used[i]:
                        d = _flat_norm(flat, t, u, i)
                        if d < dist[i]:
                            dist[i] = d
        return best
    finally:
        free(flat)
        free(dist)
        free(used)
