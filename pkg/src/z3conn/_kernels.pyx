# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled boundary-enumeration kernels.

Mirror of ``_pykernels``; see that module for the index encoding.
"""

from libc.stdlib cimport malloc, free


cdef inline long _mod(long a, long k) nogil:
    a %= k
    return a + k if a < 0 else a


cdef long _setup(int n, int k, long* pw):
    cdef long p = 1
    cdef int v
    for v in range(n - 1):
        pw[v] = p
        p *= k
    if n > 0:
        pw[n - 1] = 0
    return p


def sweep_boundaries(int n, int k, tails, heads):
    cdef int m = len(tails)
    cdef long* pw = <long*> malloc(max(n, 1) * sizeof(long))
    cdef long size = _setup(n, k, pw)
    cdef bytearray cur_b = bytearray(size)
    cdef bytearray nxt_b
    cdef unsigned char[:] cur = cur_b
    cdef unsigned char[:] nxt
    cdef long idx, j, pt, ph, dt, dh
    cdef int e, f, t, h
    cur[0] = 1
    try:
        for e in range(m):
            t = tails[e]
            h = heads[e]
            pt = pw[t]
            ph = pw[h]
            nxt_b = bytearray(size)
            nxt = nxt_b
            for idx in range(size):
                if not cur[idx]:
                    continue
                dt = (idx // pt) % k if pt else 0
                dh = (idx // ph) % k if ph else 0
                for f in range(1, k):
                    j = idx
                    if pt:
                        j += (_mod(dt + f, k) - dt) * pt
                    if ph:
                        j += (_mod(dh - f, k) - dh) * ph
                    nxt[j] = 1
            cur_b = nxt_b
            cur = nxt
    finally:
        free(pw)
    return cur_b


def gray_boundaries(int n, int k, tails, heads):
    cdef int m = len(tails)
    cdef long* pw = <long*> malloc(max(n, 1) * sizeof(long))
    cdef long size = _setup(n, k, pw)
    cdef bytearray seen_b = bytearray(size)
    cdef unsigned char[:] seen = seen_b
    cdef int* d = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* tl = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* hd = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* a = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* o = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* foc = <int*> malloc((m + 1) * sizeof(int))
    cdef long idx = 0, count
    cdef int j, r = k - 1, step, t, h, old, v
    try:
        for v in range(n):
            d[v] = 0
        for j in range(m):
            tl[j] = tails[j]
            hd[j] = heads[j]
            d[tl[j]] = _mod(d[tl[j]] + 1, k)
            d[hd[j]] = _mod(d[hd[j]] - 1, k)
            a[j] = 0
            o[j] = 1
            foc[j] = j
        foc[m] = m
        for v in range(n - 1):
            idx += d[v] * pw[v]
        seen[idx] = 1
        count = 1
        if r < 2 or m == 0:
            return seen_b
        with nogil:
            while True:
                j = foc[0]
                foc[0] = 0
                if j == m:
                    break
                step = o[j]
                a[j] += step
                if a[j] == 0 or a[j] == r - 1:
                    o[j] = -step
                    foc[j] = foc[j + 1]
                    foc[j + 1] = j + 1
                t = tl[j]
                h = hd[j]
                old = d[t]
                d[t] = _mod(old + step, k)
                idx += (d[t] - old) * pw[t]
                old = d[h]
                d[h] = _mod(old - step, k)
                idx += (d[h] - old) * pw[h]
                if not seen[idx]:
                    seen[idx] = 1
                    count += 1
                    if count == size:
                        break
    finally:
        free(pw); free(d); free(tl); free(hd); free(a); free(o); free(foc)
    return seen_b


def orientation_boundaries(int n, tails, heads):
    cdef int m = len(tails)
    cdef int k = 3
    cdef long* pw = <long*> malloc(max(n, 1) * sizeof(long))
    cdef long size = _setup(n, k, pw)
    cdef bytearray seen_b = bytearray(size)
    cdef unsigned char[:] seen = seen_b
    cdef int* d = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* tl = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* hd = <int*> malloc(max(m, 1) * sizeof(int))
    cdef char* fwd = <char*> malloc(max(m, 1) * sizeof(char))
    cdef long idx = 0, count
    cdef unsigned long long i, total
    cdef int j, step, t, h, old, v
    try:
        for v in range(n):
            d[v] = 0
        for j in range(m):
            tl[j] = tails[j]
            hd[j] = heads[j]
            fwd[j] = 1
            d[tl[j]] = _mod(d[tl[j]] + 1, k)
            d[hd[j]] = _mod(d[hd[j]] - 1, k)
        for v in range(n - 1):
            idx += d[v] * pw[v]
        seen[idx] = 1
        count = 1
        total = (<unsigned long long> 1) << m
        with nogil:
            i = 1
            while i < total:
                j = 0
                while not ((i >> j) & 1):
                    j += 1
                step = -2 if fwd[j] else 2
                fwd[j] = not fwd[j]
                t = tl[j]
                h = hd[j]
                old = d[t]
                d[t] = _mod(old + step, k)
                idx += (d[t] - old) * pw[t]
                old = d[h]
                d[h] = _mod(old - step, k)
                idx += (d[h] - old) * pw[h]
                if not seen[idx]:
                    seen[idx] = 1
                    count += 1
                    if count == size:
                        break
                i += 1
    finally:
        free(pw); free(d); free(tl); free(hd); free(fwd)
    return seen_b
