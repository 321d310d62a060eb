"""Parity between the numpy kernels and the compiled extension, plus
brute-force cross-checks of what the kernels compute."""

import numpy as np
import pytest

from ringline import _kernels_py as kpy
from ringline import elemgrp, freealg
from ringline.jordan import _compile_poly
from ringline.presets import ring_preset

try:
    from ringline import _kernels_cy as kcy
except ImportError:
    kcy = None

BACKENDS = [kpy] + ([kcy] if kcy is not None else [])


def _tables(name):
    r = ring_preset(name)
    return r, r.mul_table, r.add_table, r.neg_table, r.one, r.zero


def _random_digits(ring, length, width, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, ring.size, size=(length, width), dtype=np.int32)


@pytest.mark.skipif(kcy is None, reason="compiled extension not built")
@pytest.mark.parametrize("rname", ["zmod6", "m2f2", "bm3"])
def test_eval_words_parity(rname):
    ring, mt, at, ng, one, zero = _tables(rname)
    digits = _random_digits(ring, 5, 4000, seed=7)
    for out_py, out_cy in zip(
        kpy.eval_words_e(mt, at, ng, one, zero, digits),
        kcy.eval_words_e(mt, at, ng, one, zero, digits),
    ):
        assert np.array_equal(np.asarray(out_py), np.asarray(out_cy))
    for out_py, out_cy in zip(
        kpy.eval_words_eword(mt, at, ng, one, zero, digits),
        kcy.eval_words_eword(mt, at, ng, one, zero, digits),
    ):
        assert np.array_equal(np.asarray(out_py), np.asarray(out_cy))


def test_eval_words_e_matches_symbolic_substitution():
    ring, mt, at, ng, one, zero = _tables("zmod6")
    digits = _random_digits(ring, 4, 64, seed=3)
    en, enm1 = kpy.eval_words_e(mt, at, ng, one, zero, digits)
    f4, f3 = freealg.e_rec(4), freealg.e_rec(3)
    for col in range(64):
        vals = [ring.elem(int(v)) for v in digits[:, col]]
        assert int(en[col]) == freealg.substitute(f4, vals, ring=ring).index
        assert int(enm1[col]) == freealg.substitute(f3, vals[:3], ring=ring).index


def test_eval_words_eword_matches_matrix_product():
    ring, mt, at, ng, one, zero = _tables("bm2")
    digits = _random_digits(ring, 3, 40, seed=5)
    a, b, c, d = kpy.eval_words_eword(mt, at, ng, one, zero, digits)
    for col in range(40):
        M = elemgrp.E_word(ring, tuple(int(v) for v in digits[:, col]))
        assert (int(a[col]), int(b[col]), int(c[col]), int(d[col])) == M.key()


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_eval_poly_words_matches_substitution(impl):
    ring, mt, at, ng, one, zero = _tables("zmod4")
    f = freealg.e_ij(1, 3) * freealg.te_ij(1, 2)
    coeff, flat, off = _compile_poly(f, ring)
    digits = _random_digits(ring, 3, 50, seed=11)
    got = impl.eval_poly_words(mt, at, zero, coeff, flat, off, digits)
    for col in range(50):
        vals = [ring.elem(int(v)) for v in digits[:, col]]
        assert int(got[col]) == freealg.substitute(f, vals, ring=ring).index


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_batch_invertible_against_explicit_inverses(impl):
    ring, mt, at, ng, one, zero = _tables("zmod6")
    rng = np.random.default_rng(2)
    n = 300
    a, b, c, d = (rng.integers(0, 6, size=n, dtype=np.int32) for _ in range(4))
    flags, pa, pb, qc, qd = impl.batch_invertible(mt, at, one, zero, a, b, c, d)
    for k in range(n):
        M = elemgrp.Mat2(ring, int(a[k]), int(b[k]), int(c[k]), int(d[k]))
        inv = elemgrp.invert(M)
        if isinstance(inv, elemgrp.NonInvertible):
            assert not flags[k]
            assert pa[k] == -1
        else:
            assert flags[k]
            got = elemgrp.Mat2(ring, int(pa[k]), int(pb[k]), int(qc[k]), int(qd[k]))
            assert (got * M).is_identity(), k


@pytest.mark.skipif(kcy is None, reason="compiled extension not built")
def test_batch_invertible_parity():
    ring, mt, at, ng, one, zero = _tables("m2f2")
    rng = np.random.default_rng(9)
    n = 500
    a, b, c, d = (rng.integers(0, 16, size=n, dtype=np.int32) for _ in range(4))
    out_py = kpy.batch_invertible(mt, at, one, zero, a, b, c, d)
    out_cy = kcy.batch_invertible(mt, at, one, zero, a, b, c, d)
    for x, y in zip(out_py, out_cy):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_right_unimodular_brute_force(impl):
    ring, mt, at, ng, one, zero = _tables("zmod6")
    got = impl.right_unimodular(mt, at, one)
    for a in range(6):
        for b in range(6):
            want = any(
                ring.add(ring.mul(a, p), ring.mul(b, r)) == one
                for p in range(6)
                for r in range(6)
            )
            assert bool(got[a, b]) == want


def test_identity_words_found_and_sorted():
    ring, mt, at, ng, one, zero = _tables("zmod4")
    words = kpy.identity_words_upto(mt, at, ng, one, zero, 3)
    rows = [tuple(int(x) for x in row) for row in words]
    assert rows == sorted(rows, key=lambda r: (sum(x >= 0 for x in r), r))
    assert (-1, -1, -1) in rows  # the empty word
    assert (3, 3, 3) in rows  # E(-1)^3 = I in every ring
    for row in rows:
        word = tuple(int(x) for x in row if x >= 0)
        assert elemgrp.E_word(ring, word).is_identity()


@pytest.mark.skipif(kcy is None, reason="compiled extension not built")
def test_identity_words_parity():
    ring, mt, at, ng, one, zero = _tables("zmod6")
    wp = kpy.identity_words_upto(mt, at, ng, one, zero, 3)
    wc = kcy.identity_words_upto(mt, at, ng, one, zero, 3)
    assert np.array_equal(np.asarray(wp), np.asarray(wc))


def test_kernel_backend_env_override(monkeypatch):
    import importlib

    import ringline.kernels as kmod

    monkeypatch.setenv("RINGLINE_KERNELS", "py")
    mod = importlib.reload(kmod)
    assert mod.backend_name() == "py"
    monkeypatch.delenv("RINGLINE_KERNELS")
    importlib.reload(kmod)
