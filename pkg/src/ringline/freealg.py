"""Exact arithmetic in the free integer algebra on indeterminates x1, x2, ...

A monomial is a word: a tuple of 1-based indeterminate indices, read left to
right.  Words do not commute, so ``(1, 2)`` and ``(2, 1)`` are distinct.  A
polynomial is a table mapping words to nonzero integer coefficients; the empty
word is the constant term.  All arithmetic is exact over the integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Word = tuple


def mono_key(word: Word) -> tuple:
    """Sort key for the canonical term order: degree first, then lex."""
    return (len(word), word)


class FreePoly:
    """Noncommutative polynomial with integer coefficients.

    Immutable once built; the term table never stores zero coefficients, so
    equality and hashing are structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        table = {}
        if terms:
            for word, coeff in terms.items():
                if coeff:
                    table[tuple(word)] = int(coeff)
        object.__setattr__(self, "terms", table)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("FreePoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "FreePoly":
        return cls()

    @classmethod
    def const(cls, c: int) -> "FreePoly":
        return cls({(): c})

    @classmethod
    def gen(cls, i: int) -> "FreePoly":
        if i < 1:
            raise ValueError(f"indeterminate index must be >= 1, got {i}")
        return cls({(i,): 1})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        table = dict(self.terms)
        for word, coeff in other.terms.items():
            new = table.get(word, 0) + coeff
            if new:
                table[word] = new
            else:
                table.pop(word, None)
        return FreePoly(table)

    __radd__ = __add__

    def __neg__(self):
        return FreePoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        table: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                new = table.get(word, 0) + c1 * c2
                if new:
                    table[word] = new
                else:
                    del table[word]
        return FreePoly(table)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = FreePoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    # -- queries -----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def max_index(self) -> int:
        """Largest indeterminate index appearing, 0 if none do."""
        return max((max(w) for w in self.terms if w), default=0)

    def sorted_terms(self) -> list[tuple[Word, int]]:
        """Terms ordered by descending degree, then ascending word lex."""
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.sorted_terms():
            body = " ".join(f"x{i}" for i in word)
            mag = abs(coeff)
            if not word:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag} {body}"
            if not parts:
                parts.append(text if coeff > 0 else f"- {text}")
            else:
                parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self):
        return f"FreePoly({self})"


def _coerce(value):
    if isinstance(value, FreePoly):
        return value
    if isinstance(value, int):
        return FreePoly.const(value)
    return NotImplemented


# -- module-level operation aliases ---------------------------------------


def poly_add(f: FreePoly, g: FreePoly) -> FreePoly:
    return f + g


def poly_mul(f: FreePoly, g: FreePoly) -> FreePoly:
    return f * g


def poly_neg(f: FreePoly) -> FreePoly:
    return -f


ZERO = FreePoly.zero()
ONE = FreePoly.const(1)


# -- substitution ----------------------------------------------------------


def substitute(f: FreePoly, values: Sequence, *, ring=None):
    """Positional substitution x_i -> values[i-1], with 0 beyond the list.

    With FreePoly values (or an empty list and no ring) the result is again a
    FreePoly.  With ring elements the result is an element of that ring; pass
    ``ring=`` explicitly when ``values`` may be empty.
    """
    values = list(values)
    if ring is None and all(isinstance(v, FreePoly) for v in values):
        out = FreePoly.zero()
        for word, coeff in f.terms.items():
            term = FreePoly.const(coeff)
            for i in word:
                if i <= len(values):
                    term = term * values[i - 1]
                else:
                    term = FreePoly.zero()
                    break
            out = out + term
        return out
    if ring is None:
        ring = values[0].ring
    acc = ring.zero_elem()
    for word, coeff in f.terms.items():
        term = ring.scalar_elem(coeff)
        dead = False
        for i in word:
            if i <= len(values):
                term = term * values[i - 1]
            else:
                dead = True
                break
        if not dead:
            acc = acc + term
    return acc


# -- the e-polynomial family ----------------------------------------------


@lru_cache(maxsize=None)
def e_rec(n: int) -> FreePoly:
    """Recursively defined polynomial family: e(-2) = -1, e(-1) = 0, e(0) = 1
    and e(n) = e(n-1) * x_n - e(n-2) for n >= 1."""
    if n < -2:
        raise ValueError(f"index must be >= -2, got {n}")
    if n == -2:
        return FreePoly.const(-1)
    if n == -1:
        return FreePoly.zero()
    if n == 0:
        return FreePoly.const(1)
    return e_rec(n - 1) * FreePoly.gen(n) - e_rec(n - 2)


def _window(i: int, j: int, reverse: bool) -> list[FreePoly]:
    idx = range(i, j + 1)
    if reverse:
        idx = reversed(idx)
    return [FreePoly.gen(k) for k in idx]


@lru_cache(maxsize=None)
def e_ij(i: int, j: int) -> FreePoly:
    """Windowed family e_i^j = e(j-i+1) evaluated at x_i, ..., x_j."""
    _check_window(i, j)
    return substitute(e_rec(j - i + 1), _window(i, j, reverse=False))


@lru_cache(maxsize=None)
def te_ij(i: int, j: int) -> FreePoly:
    """Reversed-window family: e(j-i+1) evaluated at x_j, ..., x_i."""
    _check_window(i, j)
    return substitute(e_rec(j - i + 1), _window(i, j, reverse=True))


def _check_window(i: int, j: int):
    if i < 1:
        raise ValueError(f"lower index must be >= 1, got {i}")
    if j < i - 3:
        raise ValueError(f"upper index must be >= {i - 3}, got {j}")


# -- symbolic 2x2 matrices -------------------------------------------------


@dataclass(frozen=True)
class SymMat2:
    """2x2 matrix with FreePoly entries, row-major (a b / c d)."""

    a: FreePoly
    b: FreePoly
    c: FreePoly
    d: FreePoly

    @classmethod
    def identity(cls) -> "SymMat2":
        return cls(ONE, ZERO, ZERO, ONE)

    def __mul__(self, other: "SymMat2") -> "SymMat2":
        return SymMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def entries(self) -> tuple[FreePoly, FreePoly, FreePoly, FreePoly]:
        return (self.a, self.b, self.c, self.d)


def sym_gen_matrix(i: int) -> SymMat2:
    """The symbolic generator (x_i  1 / -1  0)."""
    return SymMat2(FreePoly.gen(i), ONE, -ONE, ZERO)


def sym_E(n: int) -> SymMat2:
    """Closed form for the product of the first n generators via e_ij."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return SymMat2(e_ij(1, n), e_ij(1, n - 1), -e_ij(2, n), -e_ij(2, n - 1))


def sym_E_inv(n: int) -> SymMat2:
    """Closed form for the inverse of sym_E(n) via the reversed family."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return SymMat2(-te_ij(2, n - 1), -te_ij(1, n - 1), te_ij(2, n), te_ij(1, n))


# -- symbolic verification sweeps -----------------------------------------


def verify_e_identities(max_index: int = 8) -> list[dict]:
    """Check the four two-sided recurrences for all 1 <= i <= j <= max_index.

    Returns one record per identity with a pass flag and the first failing
    (i, j) pair, if any.
    """
    checks = {
        "right-expansion-e": lambda i, j: e_ij(i, j)
        == e_ij(i, j - 1) * FreePoly.gen(j) - e_ij(i, j - 2),
        "right-expansion-te": lambda i, j: te_ij(i, j)
        == te_ij(i + 1, j) * FreePoly.gen(i) - te_ij(i + 2, j),
        "left-expansion-e": lambda i, j: e_ij(i, j)
        == FreePoly.gen(i) * e_ij(i + 1, j) - e_ij(i + 2, j),
        "left-expansion-te": lambda i, j: te_ij(i, j)
        == FreePoly.gen(j) * te_ij(i, j - 1) - te_ij(i, j - 2),
    }
    records = []
    for name, check in checks.items():
        failure = None
        count = 0
        for i in range(1, max_index + 1):
            for j in range(i, max_index + 1):
                count += 1
                if not check(i, j):
                    failure = (i, j)
                    break
            if failure:
                break
        records.append(
            {"name": name, "checked": count, "passed": failure is None, "witness": failure}
        )
    return records


def verify_first_row_forms(max_n: int = 8) -> list[dict]:
    """Check the closed matrix forms against the literal generator products.

    For each n <= max_n: the product of the n symbolic generators equals
    sym_E(n), and sym_E(n) * sym_E_inv(n) is the identity matrix.
    """
    records = []
    prod = SymMat2.identity()
    ok_form = True
    ok_inv = True
    wit_form = None
    wit_inv = None
    for n in range(0, max_n + 1):
        if n > 0:
            prod = prod * sym_gen_matrix(n)
        if prod.entries() != sym_E(n).entries():
            ok_form = False
            wit_form = wit_form or n
        if (sym_E(n) * sym_E_inv(n)).entries() != SymMat2.identity().entries():
            ok_inv = False
            wit_inv = wit_inv or n
    records.append(
        {"name": "generator-product-form", "checked": max_n + 1, "passed": ok_form, "witness": wit_form}
    )
    records.append(
        {"name": "two-sided-inverse-form", "checked": max_n + 1, "passed": ok_inv, "witness": wit_inv}
    )
    return records


def verify_hat_word_inverse(max_n: int = 4) -> dict:
    """The length-3n hat word (0, -x_n, 0, ..., 0, -x_1, 0) inverts E symbolically."""
    ok = True
    witness = None
    for n in range(0, max_n + 1):
        prod = SymMat2.identity()
        for i in range(1, n + 1):
            prod = prod * sym_gen_matrix(i)
        inv = SymMat2.identity()
        for i in range(n, 0, -1):
            inv = inv * SymMat2(ZERO, ONE, -ONE, ZERO)
            inv = inv * SymMat2(-FreePoly.gen(i), ONE, -ONE, ZERO)
            inv = inv * SymMat2(ZERO, ONE, -ONE, ZERO)
        if (prod * inv).entries() != SymMat2.identity().entries():
            ok = False
            witness = n
            break
    return {"name": "hat-word-inverse", "checked": max_n + 1, "passed": ok, "witness": witness}


def verify_window_shifts(max_n: int = 6) -> dict:
    """Prepending a fresh letter or appending one leaves the value alone:
    e_1^n(T) = e_2^(n+1)(s, T) and e_1^n(T) = e_1^n(T, v), checked with
    symbolic s, v disjoint from the window."""
    ok = True
    witness = None
    for n in range(0, max_n + 1):
        s = FreePoly.gen(n + 2)
        v = FreePoly.gen(n + 3)
        window = [FreePoly.gen(k) for k in range(1, n + 1)]
        lhs = e_ij(1, n)
        prepend = substitute(e_ij(2, n + 1), [s] + window)
        append = substitute(e_ij(1, n), window + [v])
        if lhs != prepend or lhs != append:
            ok = False
            witness = n
            break
    return {"name": "window-shift-rewrites", "checked": max_n + 1, "passed": ok, "witness": witness}
