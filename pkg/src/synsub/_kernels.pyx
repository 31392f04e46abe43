# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of :mod:`synsub._pykernels`; same inputs, same outputs."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline bint key_less(int64_t[7] a, int64_t[7] b):
    cdef int i
    for i in range(7):
        if a[i] != b[i]:
            return a[i] < b[i]
    return False


def sst_scan(codes_in, int k, int H):
    cdef const int64_t[::1] codes = np.ascontiguousarray(codes_in, dtype=np.int64)
    cdef int64_t[::1] pw = np.ones(H + 2, dtype=np.int64)
    cdef int64_t[::1] off = np.zeros(H + 2, dtype=np.int64)
    cdef Py_ssize_t i, L
    for i in range(1, H + 2):
        pw[i] = pw[i - 1] * k
    for L in range(2, H + 2):
        off[L] = off[L - 1] + pw[L - 1]
    if codes.shape[0] != off[H + 1]:
        raise ValueError("code array does not match alphabet size and horizon")
    cdef int64_t[::1] length = np.zeros(off[H + 1], dtype=np.int64)
    for L in range(1, H + 1):
        for i in range(off[L], off[L + 1]):
            length[i] = L

    cdef int64_t ncls = (np.max(codes_in) + 1) if codes.shape[0] else 0
    if ncls < 1:
        ncls = 1
    cdef int64_t[::1] stamp = np.full(ncls, -1, dtype=np.int64)
    cdef int64_t[::1] fn = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] fnv = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] f1 = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] f1v = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] m1 = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] r2 = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] r2v = np.zeros(ncls, dtype=np.int64)
    cdef int64_t[::1] touched = np.zeros(ncls, dtype=np.int64)

    cdef int64_t[7] best_key
    cdef int64_t[7] key
    cdef bint have_best = False
    cdef int64_t best_c = 0, best_r = 0, best_u = 0, best_v = 0, best_la = 0
    cdef int64_t examined = 0
    cdef int64_t gid = 0
    cdef int64_t t, la, lb, a_val, b_val, nv, v, mu, lv, r, mr, rv, c, cv, ntouched, ti

    for t in range(H):
        nv = off[H - t + 1]
        for la in range(t + 1):
            lb = t - la
            for a_val in range(pw[la]):
                for b_val in range(pw[lb]):
                    gid += 1
                    ntouched = 0
                    for v in range(nv):
                        mu = codes[v]
                        if mu < 0:
                            continue
                        lv = length[v]
                        r = off[t + lv] + ((a_val * pw[lv] + v - off[lv]) * pw[lb] + b_val)
                        mr = codes[r]
                        examined += 1
                        if stamp[mu] != gid:
                            stamp[mu] = gid
                            fn[mu] = -1
                            f1[mu] = -1
                            r2[mu] = -1
                            touched[ntouched] = mu
                            ntouched += 1
                        if mr < 0:
                            if fn[mu] < 0:
                                fn[mu] = r
                                fnv[mu] = v
                        elif f1[mu] < 0:
                            f1[mu] = r
                            f1v[mu] = v
                            m1[mu] = mr
                        elif r2[mu] < 0 and mr != m1[mu]:
                            r2[mu] = r
                            r2v[mu] = v
                    for ti in range(ntouched):
                        mu = touched[ti]
                        if f1[mu] < 0:
                            continue
                        r = fn[mu]
                        rv = fnv[mu]
                        if r2[mu] >= 0 and (r < 0 or r2[mu] < r):
                            r = r2[mu]
                            rv = r2v[mu]
                        if r >= 0:
                            c = f1[mu]
                            cv = f1v[mu]
                            key[0] = length[c] + length[r]; key[1] = c; key[2] = r
                            key[3] = length[cv]; key[4] = cv; key[5] = rv; key[6] = la
                            if not have_best or key_less(key, best_key):
                                best_key[:] = key
                                have_best = True
                                best_c = c; best_r = r; best_u = cv; best_v = rv; best_la = la
                        if r2[mu] >= 0:
                            c = r2[mu]
                            cv = r2v[mu]
                            r = f1[mu]
                            rv = f1v[mu]
                            if fn[mu] >= 0 and fn[mu] < r:
                                r = fn[mu]
                                rv = fnv[mu]
                            key[0] = length[c] + length[r]; key[1] = c; key[2] = r
                            key[3] = length[cv]; key[4] = cv; key[5] = rv; key[6] = la
                            if not have_best or key_less(key, best_key):
                                best_key[:] = key
                                have_best = True
                                best_c = c; best_r = r; best_u = cv; best_v = rv; best_la = la
    if not have_best:
        return int(examined), None
    return int(examined), (int(best_c), int(best_r), int(best_u), int(best_v), int(best_la))


def ic_scan(codes_in, int k, int H, int variant):
    cdef const int64_t[::1] codes = np.ascontiguousarray(codes_in, dtype=np.int64)
    cdef int64_t[::1] pw = np.ones(H + 2, dtype=np.int64)
    cdef int64_t[::1] off = np.zeros(H + 2, dtype=np.int64)
    cdef Py_ssize_t i
    cdef int64_t L, val, w, j, p, s, first_j, examined = 0
    cdef bint ok, found
    for i in range(1, H + 2):
        pw[i] = pw[i - 1] * k
    for i in range(2, H + 2):
        off[i] = off[i - 1] + pw[i - 1]
    if codes.shape[0] != off[H + 1]:
        raise ValueError("code array does not match alphabet size and horizon")
    for L in range(2, H + 1):
        for val in range(pw[L]):
            w = off[L] + val
            if codes[w] < 0:
                continue
            examined += 1
            first_j = L - 1 if variant == 2 else 1
            found = False
            for j in range(first_j, L):
                p = off[j] + val // pw[L - j]
                s = off[L - j] + val % pw[L - j]
                ok = codes[p] >= 0 and codes[s] >= 0
                if variant == 0:
                    if ok:
                        found = True
                        break
                elif not ok:
                    return int(examined), int(w), int(j)
            if variant == 0 and not found:
                return int(examined), int(w), 0
    return int(examined), -1, 0
