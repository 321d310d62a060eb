"""Vectorized numpy implementations of the sweep kernels.

Every function here has a matching compiled twin in _kernels_cy; the two are
interchangeable and are cross-checked by the test suite.  All ring data comes
in as int32 numpy op tables, words as (n, W) digit arrays of element indices.
"""
from __future__ import annotations

import numpy as np

BACKEND = "py"


def eval_words_e(mul_t, add_t, neg_t, one, zero, digits):
    """Evaluate the e-recurrence along each word column.

    Returns (e_n, e_nm1): the value at the full word and at the word minus its
    last letter, so one pass yields both first-row entries.
    """
    n, w = digits.shape
    prev1 = np.full(w, zero, dtype=np.int32)  # e(-1) = 0
    cur = np.full(w, one, dtype=np.int32)  # e(0) = 1
    for k in range(n):
        prev2, prev1 = prev1, cur
        cur = add_t[mul_t[prev1, digits[k]], neg_t[prev2]]
    return cur, prev1


def eval_words_eword(mul_t, add_t, neg_t, one, zero, digits):
    """Entries (a, b, c, d) of the generator-word product for each column."""
    n, w = digits.shape
    a = np.full(w, one, dtype=np.int32)
    b = np.full(w, zero, dtype=np.int32)
    c = np.full(w, zero, dtype=np.int32)
    d = np.full(w, one, dtype=np.int32)
    for k in range(n):
        t = digits[k]
        # right-multiply by (t 1 / -1 0)
        a, b = add_t[mul_t[a, t], neg_t[b]], a
        c, d = add_t[mul_t[c, t], neg_t[d]], c
    return a, b, c, d


def eval_poly_words(mul_t, add_t, zero, coeff_idx, mono_flat, mono_off, digits):
    """Evaluate a polynomial given as flattened monomials at each word column.

    coeff_idx[m] is the ring element for monomial m's integer coefficient,
    mono_flat holds 0-based digit-row indices, mono_off delimits monomials.
    Indeterminates beyond the digit rows read as zero (positional padding).
    """
    n, w = digits.shape
    acc = np.full(w, zero, dtype=np.int32)
    dead = None
    for m in range(len(coeff_idx)):
        term = np.full(w, coeff_idx[m], dtype=np.int32)
        alive = True
        for p in range(mono_off[m], mono_off[m + 1]):
            row = mono_flat[p]
            if row >= n:
                alive = False
                break
            term = mul_t[term, digits[row]]
        if alive:
            acc = add_t[acc, term]
    return acc


def batch_invertible(mul_t, add_t, one, zero, a, b, c, d, chunk=None):
    """Invertibility of 2x2 matrices by injectivity of the row action.

    Input entry arrays of shape (W,); returns (flags, pa, pb, qc, qd) where
    the p/q arrays hold the inverse rows when invertible, -1 otherwise.
    """
    n = mul_t.shape[0]
    w = a.shape[0]
    if chunk is None:
        chunk = max(1, (1 << 22) // (n * n))
    xs = np.repeat(np.arange(n, dtype=np.int32), n)
    ys = np.tile(np.arange(n, dtype=np.int32), n)
    flags = np.zeros(w, dtype=bool)
    pa = np.full(w, -1, dtype=np.int32)
    pb = np.full(w, -1, dtype=np.int32)
    qc = np.full(w, -1, dtype=np.int32)
    qd = np.full(w, -1, dtype=np.int32)
    e1 = one * n + zero
    e2 = zero * n + one
    for lo in range(0, w, chunk):
        hi = min(lo + chunk, w)
        ab = a[lo:hi, None]
        bb = b[lo:hi, None]
        cb = c[lo:hi, None]
        db = d[lo:hi, None]
        img1 = add_t[mul_t[xs[None, :], ab], mul_t[ys[None, :], cb]].astype(np.int64)
        img2 = add_t[mul_t[xs[None, :], bb], mul_t[ys[None, :], db]].astype(np.int64)
        flat = img1 * n + img2
        srt = np.sort(flat, axis=1)
        ok = (np.diff(srt, axis=1) != 0).all(axis=1)
        flags[lo:hi] = ok
        hit1 = flat == e1
        hit2 = flat == e2
        rows = np.nonzero(ok)[0]
        if rows.size:
            i1 = hit1[rows].argmax(axis=1)
            i2 = hit2[rows].argmax(axis=1)
            pa[lo + rows] = xs[i1]
            pb[lo + rows] = ys[i1]
            qc[lo + rows] = xs[i2]
            qd[lo + rows] = ys[i2]
    return flags, pa, pb, qc, qd


def right_unimodular(mul_t, add_t, one):
    """Boolean (N, N) array: can a*p + b*r reach 1 for the pair (a, b)."""
    n = mul_t.shape[0]
    reach = np.zeros((n, n), dtype=bool)
    for x in range(n):
        reach[x, mul_t[x]] = True  # xR as a membership row
    # target[b] = set of y with (1 - y) in bR, as a bool row over y
    neg = np.nonzero(add_t == one)  # y + z = 1 pairs
    complement = np.empty(n, dtype=np.int64)
    complement[neg[0]] = neg[1]
    target = np.zeros((n, n), dtype=bool)
    for b in range(n):
        target[b, complement[mul_t[b]]] = True
    return (reach.astype(np.int32) @ target.T.astype(np.int32)) > 0


def identity_words_upto(mul_t, add_t, neg_t, one, zero, max_len, chunk=1 << 20):
    """All words of length <= max_len whose generator product is the identity.

    Returns an int32 array of shape (K, max_len) padded with -1, rows sorted
    by (length, lexicographic digits).
    """
    n = mul_t.shape[0]
    found = []
    for length in range(max_len + 1):
        total = n**length
        for lo in range(0, max(total, 1), chunk):
            hi = min(lo + chunk, total)
            if hi <= lo:
                break
            idx = np.arange(lo, hi, dtype=np.int64)
            digits = np.empty((length, hi - lo), dtype=np.int32)
            rem = idx
            for k in range(length - 1, -1, -1):
                digits[k] = rem % n
                rem = rem // n
            a, b, c, d = eval_words_eword(mul_t, add_t, neg_t, one, zero, digits)
            hit = (a == one) & (b == zero) & (c == zero) & (d == one)
            for col in np.nonzero(hit)[0]:
                word = digits[:, col]
                found.append((length, tuple(int(x) for x in word)))
    found.sort()
    out = np.full((len(found), max_len), -1, dtype=np.int32)
    for r, (length, word) in enumerate(found):
        out[r, :length] = word
    return out
