# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the numpy sweep kernels in _kernels_py.

Same signatures, same results; selected at import time by ringline.kernels
when the extension was built.
"""
import numpy as np

cimport numpy as cnp

BACKEND = "cy"


def eval_words_e(mul_t, add_t, neg_t, int one, int zero, digits):
    cdef const cnp.int32_t[:, ::1] mt = np.ascontiguousarray(mul_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] at = np.ascontiguousarray(add_t, dtype=np.int32)
    cdef const cnp.int32_t[::1] ng = np.ascontiguousarray(neg_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] dg = np.ascontiguousarray(digits, dtype=np.int32)
    cdef Py_ssize_t n = dg.shape[0], w = dg.shape[1], col, k
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cur_arr = np.empty(w, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] prev_arr = np.empty(w, dtype=np.int32)
    cdef cnp.int32_t[::1] cur = cur_arr, prev = prev_arr
    cdef int p2, p1, c
    for col in range(w):
        p1 = zero
        c = one
        for k in range(n):
            p2 = p1
            p1 = c
            c = at[mt[p1, dg[k, col]], ng[p2]]
        cur[col] = c
        prev[col] = p1
    return cur_arr, prev_arr


def eval_words_eword(mul_t, add_t, neg_t, int one, int zero, digits):
    cdef const cnp.int32_t[:, ::1] mt = np.ascontiguousarray(mul_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] at = np.ascontiguousarray(add_t, dtype=np.int32)
    cdef const cnp.int32_t[::1] ng = np.ascontiguousarray(neg_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] dg = np.ascontiguousarray(digits, dtype=np.int32)
    cdef Py_ssize_t n = dg.shape[0], w = dg.shape[1], col, k
    cdef cnp.ndarray[cnp.int32_t, ndim=1] aa = np.empty(w, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] bb = np.empty(w, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cc = np.empty(w, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dd = np.empty(w, dtype=np.int32)
    cdef cnp.int32_t[::1] av = aa, bv = bb, cv = cc, dv = dd
    cdef int a, b, c, d, t, na
    for col in range(w):
        a = one
        b = zero
        c = zero
        d = one
        for k in range(n):
            t = dg[k, col]
            na = at[mt[a, t], ng[b]]
            b = a
            a = na
            na = at[mt[c, t], ng[d]]
            d = c
            c = na
        av[col] = a
        bv[col] = b
        cv[col] = c
        dv[col] = d
    return aa, bb, cc, dd


def eval_poly_words(mul_t, add_t, int zero, coeff_idx, mono_flat, mono_off, digits):
    cdef const cnp.int32_t[:, ::1] mt = np.ascontiguousarray(mul_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] at = np.ascontiguousarray(add_t, dtype=np.int32)
    cdef const cnp.int32_t[::1] cf = np.ascontiguousarray(coeff_idx, dtype=np.int32)
    cdef const cnp.int32_t[::1] mf = np.ascontiguousarray(mono_flat, dtype=np.int32)
    cdef const cnp.int64_t[::1] mo = np.ascontiguousarray(mono_off, dtype=np.int64)
    cdef const cnp.int32_t[:, ::1] dg = np.ascontiguousarray(digits, dtype=np.int32)
    cdef Py_ssize_t n = dg.shape[0], w = dg.shape[1], col, m, p
    cdef Py_ssize_t nmono = cf.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(w, dtype=np.int32)
    cdef cnp.int32_t[::1] ov = out
    cdef int acc, term, row
    cdef bint alive
    for col in range(w):
        acc = zero
        for m in range(nmono):
            term = cf[m]
            alive = True
            for p in range(mo[m], mo[m + 1]):
                row = mf[p]
                if row >= n:
                    alive = False
                    break
                term = mt[term, dg[row, col]]
            if alive:
                acc = at[acc, term]
        ov[col] = acc
    return out


def batch_invertible(mul_t, add_t, int one, int zero, a, b, c, d, chunk=None):
    cdef const cnp.int32_t[:, ::1] mt = np.ascontiguousarray(mul_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] at = np.ascontiguousarray(add_t, dtype=np.int32)
    cdef const cnp.int32_t[::1] av = np.ascontiguousarray(a, dtype=np.int32)
    cdef const cnp.int32_t[::1] bv = np.ascontiguousarray(b, dtype=np.int32)
    cdef const cnp.int32_t[::1] cv = np.ascontiguousarray(c, dtype=np.int32)
    cdef const cnp.int32_t[::1] dv = np.ascontiguousarray(d, dtype=np.int32)
    cdef Py_ssize_t n = mt.shape[0], w = av.shape[0], i, x, y
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] flags = np.zeros(w, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] pa = np.full(w, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] pb = np.full(w, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] qc = np.full(w, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] qd = np.full(w, -1, dtype=np.int32)
    cdef cnp.uint8_t[::1] fv = flags
    cdef cnp.int32_t[::1] pav = pa, pbv = pb, qcv = qc, qdv = qd
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen_arr = np.zeros(n * n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_arr
    cdef int ma, mb, mc, md, u, v
    cdef Py_ssize_t flat
    cdef bint ok
    cdef Py_ssize_t e1 = one * n + zero, e2 = zero * n + one
    for i in range(w):
        ma = av[i]; mb = bv[i]; mc = cv[i]; md = dv[i]
        seen[:] = 0
        ok = True
        for x in range(n):
            for y in range(n):
                u = at[mt[x, ma], mt[y, mc]]
                v = at[mt[x, mb], mt[y, md]]
                flat = u * n + v
                if seen[flat]:
                    ok = False
                    break
                seen[flat] = 1
                if flat == e1:
                    pav[i] = <cnp.int32_t> x
                    pbv[i] = <cnp.int32_t> y
                elif flat == e2:
                    qcv[i] = <cnp.int32_t> x
                    qdv[i] = <cnp.int32_t> y
            if not ok:
                break
        fv[i] = 1 if ok else 0
        if not ok:
            pav[i] = -1; pbv[i] = -1; qcv[i] = -1; qdv[i] = -1
    return flags.astype(bool), pa, pb, qc, qd


def right_unimodular(mul_t, add_t, int one):
    cdef const cnp.int32_t[:, ::1] mt = np.ascontiguousarray(mul_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] at = np.ascontiguousarray(add_t, dtype=np.int32)
    cdef Py_ssize_t n = mt.shape[0], a, b, p, r
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] ov = out
    cdef bint hit
    for a in range(n):
        for b in range(n):
            hit = False
            for p in range(n):
                for r in range(n):
                    if at[mt[a, p], mt[b, r]] == one:
                        hit = True
                        break
                if hit:
                    break
            ov[a, b] = 1 if hit else 0
    return out.astype(bool)


def identity_words_upto(mul_t, add_t, neg_t, int one, int zero, int max_len, chunk=None):
    cdef const cnp.int32_t[:, ::1] mt = np.ascontiguousarray(mul_t, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] at = np.ascontiguousarray(add_t, dtype=np.int32)
    cdef const cnp.int32_t[::1] ng = np.ascontiguousarray(neg_t, dtype=np.int32)
    cdef Py_ssize_t n = mt.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] stack = np.zeros(max(max_len, 1), dtype=np.int32)
    cdef cnp.int32_t[::1] sv = stack
    # partial products along the word prefix, entries row-major per depth
    cdef cnp.ndarray[cnp.int32_t, ndim=2] prod = np.zeros((max_len + 1, 4), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] pv = prod
    found = []
    cdef Py_ssize_t depth
    cdef int length, t, a, b, c, d
    pv[0, 0] = one; pv[0, 1] = zero; pv[0, 2] = zero; pv[0, 3] = one
    for length in range(max_len + 1):
        if length == 0:
            found.append((0, ()))
            continue
        depth = 0
        sv[0] = -1
        while depth >= 0:
            t = sv[depth] + 1
            if t >= n:
                depth -= 1
                continue
            sv[depth] = t
            a = pv[depth, 0]; b = pv[depth, 1]
            c = pv[depth, 2]; d = pv[depth, 3]
            pv[depth + 1, 0] = at[mt[a, t], ng[b]]
            pv[depth + 1, 1] = a
            pv[depth + 1, 2] = at[mt[c, t], ng[d]]
            pv[depth + 1, 3] = c
            if depth + 1 == length:
                if (pv[depth + 1, 0] == one and pv[depth + 1, 1] == zero
                        and pv[depth + 1, 2] == zero and pv[depth + 1, 3] == one):
                    word_list = []
                    for k in range(length):
                        word_list.append(int(sv[k]))
                    found.append((length, tuple(word_list)))
            else:
                depth += 1
                sv[depth] = -1
    found.sort()
    out = np.full((len(found), max_len), -1, dtype=np.int32)
    for r, (length, word) in enumerate(found):
        if length:
            out[r, :length] = word
    return out
