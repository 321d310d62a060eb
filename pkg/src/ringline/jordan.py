"""Jordan homomorphisms between finite rings.

A map a -> a^alpha is stored as a total index table.  Construction validates
additivity, unitality and the law (aba)^alpha = a^alpha b^alpha a^alpha
exhaustively and fails loudly with a witness otherwise; homomorphism and
antihomomorphism flags then classify the map, with "proper" meaning neither.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .freealg import FreePoly, substitute
from .rings import (
    FiniteRing,
    RingSpec,
    build_ring,
    regular_representation,
    subring_closure,
    _digits_to_index,
    _index_to_digits,
)

WORK_BUDGET = 10**7
SAMPLE_COUNT = 10**5


class MapValidationError(ValueError):
    """A proposed map fails one of the defining axioms; carries a witness."""

    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class AdditivityError(MapValidationError):
    pass


class UnitalityError(MapValidationError):
    pass


class JordanLawError(MapValidationError):
    pass


@dataclass(frozen=True)
class MapSpec:
    """Constructor tree for a map between rings.

    kinds: identity | table(values) | product(factor specs) |
    herzer(alpha2 rows over the base) | compose(inner, mid ringspec, outer) |
    transpose | regular_rep
    """

    kind: str
    params: tuple = ()

    @classmethod
    def identity(cls) -> "MapSpec":
        return cls("identity")

    @classmethod
    def table(cls, values: Sequence[int]) -> "MapSpec":
        return cls("table", (tuple(int(v) for v in values),))

    @classmethod
    def product(cls, *factor_specs: "MapSpec") -> "MapSpec":
        return cls("product", tuple(factor_specs))

    @classmethod
    def herzer(cls, alpha2_rows) -> "MapSpec":
        rows = tuple(tuple(v for v in row) for row in alpha2_rows)
        return cls("herzer", (rows,))

    @classmethod
    def compose(cls, inner: "MapSpec", mid: RingSpec, outer: "MapSpec") -> "MapSpec":
        return cls("compose", (inner, mid, outer))

    @classmethod
    def transpose(cls) -> "MapSpec":
        return cls("transpose")

    @classmethod
    def regular_rep(cls) -> "MapSpec":
        return cls("regular_rep")

    def to_dict(self) -> dict:
        if self.kind == "identity":
            return {"kind": "identity"}
        if self.kind == "table":
            return {"kind": "table", "values": list(self.params[0])}
        if self.kind == "product":
            return {"kind": "product", "factors": [s.to_dict() for s in self.params]}
        if self.kind == "herzer":
            return {"kind": "herzer", "alpha2": [list(r) for r in self.params[0]]}
        if self.kind == "compose":
            inner, mid, outer = self.params
            return {
                "kind": "compose",
                "inner": inner.to_dict(),
                "mid": mid.to_dict(),
                "outer": outer.to_dict(),
            }
        if self.kind == "transpose":
            return {"kind": "transpose"}
        if self.kind == "regular_rep":
            return {"kind": "regular_rep"}
        raise ValueError(f"unknown map kind {self.kind!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "MapSpec":
        kind = data["kind"]
        if kind == "identity":
            return cls.identity()
        if kind == "table":
            return cls.table(data["values"])
        if kind == "product":
            return cls.product(*(cls.from_dict(f) for f in data["factors"]))
        if kind == "herzer":
            return cls.herzer(tuple(tuple(r) for r in data["alpha2"]))
        if kind == "compose":
            return cls.compose(
                cls.from_dict(data["inner"]),
                RingSpec.from_dict(data["mid"]),
                cls.from_dict(data["outer"]),
            )
        if kind == "transpose":
            return cls.transpose()
        if kind == "regular_rep":
            return cls.regular_rep()
        raise ValueError(f"unknown map kind {kind!r}")


@dataclass
class JordanMap:
    """A validated Jordan homomorphism given by a total index table."""

    domain: FiniteRing
    codomain: FiniteRing
    values: np.ndarray
    spec: MapSpec
    additive: bool
    unital: bool
    jordan_law: bool
    is_homomorphism: bool
    is_antihomomorphism: bool
    homo_witness: Optional[tuple[int, int]]
    anti_witness: Optional[tuple[int, int]]
    image: tuple[int, ...]
    image_closure: frozenset
    image_closed: bool
    closure_witness: Optional[tuple[str, int, int, int]]

    @property
    def proper(self) -> bool:
        return not self.is_homomorphism and not self.is_antihomomorphism

    def apply(self, i: int) -> int:
        return int(self.values[self.domain.element_index(i)])

    def __call__(self, i: int) -> int:
        return self.apply(i)

    def apply_seq(self, word: Sequence) -> tuple[int, ...]:
        return tuple(self.apply(t) for t in word)

    def as_fn(self) -> Callable[[int], int]:
        values = self.values
        return lambda i: int(values[i])

    def classification(self) -> dict:
        return {
            "domain": self.domain.label,
            "codomain": self.codomain.label,
            "additive": self.additive,
            "unital": self.unital,
            "jordan_law": self.jordan_law,
            "is_homomorphism": self.is_homomorphism,
            "is_antihomomorphism": self.is_antihomomorphism,
            "proper": self.proper,
            "image_closed": self.image_closed,
            "image_size": len(self.image),
            "closure_size": len(self.image_closure),
        }


# -- construction --------------------------------------------------------------


def build_map(spec: MapSpec, domain: FiniteRing, codomain: FiniteRing) -> JordanMap:
    values = np.asarray(_build_values(spec, domain, codomain), dtype=np.int32)
    if values.shape != (domain.size,):
        raise ValueError("value table does not cover the domain")
    if values.min() < 0 or values.max() >= codomain.size:
        raise ValueError("value table leaves the codomain")
    values.setflags(write=False)

    _check_additive(domain, codomain, values)
    if int(values[domain.one]) != codomain.one:
        raise UnitalityError("1 is not sent to 1", witness=(domain.one, int(values[domain.one])))
    _check_jordan(domain, codomain, values)

    homo_w = _find_product_witness(domain, codomain, values, reverse=False)
    anti_w = _find_product_witness(domain, codomain, values, reverse=True)
    image = tuple(sorted({int(v) for v in values}))
    closure, closed = subring_closure(codomain, image)
    closure_w = None if closed else _closure_witness(codomain, image)
    return JordanMap(
        domain=domain,
        codomain=codomain,
        values=values,
        spec=spec,
        additive=True,
        unital=True,
        jordan_law=True,
        is_homomorphism=homo_w is None,
        is_antihomomorphism=anti_w is None,
        homo_witness=homo_w,
        anti_witness=anti_w,
        image=image,
        image_closure=closure,
        image_closed=closed,
        closure_witness=closure_w,
    )


def _build_values(spec: MapSpec, domain: FiniteRing, codomain: FiniteRing):
    if spec.kind == "identity":
        if domain.spec != codomain.spec:
            raise ValueError("identity needs equal domain and codomain")
        return np.arange(domain.size, dtype=np.int32)
    if spec.kind == "table":
        return np.asarray(spec.params[0], dtype=np.int32)
    if spec.kind == "transpose":
        if domain.spec.kind != "matrix" or domain.spec != codomain.spec:
            raise ValueError("transpose needs a matrix ring as domain and codomain")
        m = domain.msize
        base = domain.base
        out = np.empty(domain.size, dtype=np.int32)
        for i in range(domain.size):
            d = _index_to_digits(i, m * m, base.size)
            t = [d[c * m + r] for r in range(m) for c in range(m)]
            out[i] = _digits_to_index(t, base.size)
        return out
    if spec.kind == "product":
        if domain.spec.kind != "product" or codomain.spec.kind != "product":
            raise ValueError("product map needs product rings")
        dfs, cfs = domain.factors, codomain.factors
        if len(spec.params) != len(dfs) or len(dfs) != len(cfs):
            raise ValueError("factor count mismatch")
        fmaps = [build_map(s, df, cf) for s, df, cf in zip(spec.params, dfs, cfs)]
        radii_d = [f.size for f in dfs]
        radii_c = [f.size for f in cfs]
        out = np.empty(domain.size, dtype=np.int32)
        for i in range(domain.size):
            comps = _index_to_digits(i, len(dfs), radii_d)
            mapped = [fm.apply(c) for fm, c in zip(fmaps, comps)]
            out[i] = _digits_to_index(mapped, radii_c)
        return out
    if spec.kind == "herzer":
        return _herzer_values(spec, domain, codomain)
    if spec.kind == "compose":
        inner_spec, mid_spec, outer_spec = spec.params
        mid = build_ring(mid_spec, cap=80000)
        inner = build_map(inner_spec, domain, mid)
        outer = build_map(outer_spec, mid, codomain)
        return outer.values[inner.values]
    if spec.kind == "regular_rep":
        target, values = regular_representation(domain)
        if target is not codomain:
            raise ValueError("codomain is not the regular representation target")
        return np.asarray(values, dtype=np.int32)
    raise ValueError(f"unknown map kind {spec.kind!r}")


def _herzer_values(spec: MapSpec, domain: FiniteRing, codomain: FiniteRing):
    if domain.spec.kind != "bm" or domain.spec != codomain.spec:
        raise ValueError("herzer map needs equal bm domain and codomain")
    base = domain.base
    mdim = domain.mdim
    rows = spec.params[0]
    if len(rows) != mdim or any(len(r) != mdim for r in rows):
        raise ValueError(f"alpha2 must be a {mdim}x{mdim} matrix over the base")
    mat = [[base.element_index(v) for v in row] for row in rows]
    out = np.empty(domain.size, dtype=np.int32)
    radix = base.size
    for i in range(domain.size):
        d = _index_to_digits(i, mdim + 1, radix)
        b, m = d[0], d[1:]
        new_m = [
            _dot(base, m, [mat[u][j] for u in range(mdim)]) for j in range(mdim)
        ]
        out[i] = _digits_to_index([b] + new_m, radix)
    return out


def _dot(base: FiniteRing, xs, ys) -> int:
    acc = base.zero
    for x, y in zip(xs, ys):
        acc = base.add(acc, base.mul(x, y))
    return acc


# -- validation ----------------------------------------------------------------


def _check_additive(domain: FiniteRing, codomain: FiniteRing, values) -> None:
    if domain.add_table is not None and codomain.add_table is not None:
        lhs = values[domain.add_table]
        rhs = codomain.add_table[values[:, None], values[None, :]]
        if not (lhs == rhs).all():
            a, b = (int(v[0]) for v in np.nonzero(lhs != rhs))
            raise AdditivityError(
                f"map is not additive at ({domain.name(a)}, {domain.name(b)})",
                witness=(a, b),
            )
        return
    for a in range(domain.size):
        for b in range(domain.size):
            lhs = values[domain.add(a, b)]
            rhs = codomain.add(int(values[a]), int(values[b]))
            if lhs != rhs:
                raise AdditivityError(
                    f"map is not additive at ({domain.name(a)}, {domain.name(b)})",
                    witness=(a, b),
                )


def _check_jordan(domain: FiniteRing, codomain: FiniteRing, values) -> None:
    if domain.mul_table is not None and codomain.mul_table is not None:
        n = domain.size
        ab = domain.mul_table
        aba = domain.mul_table[ab, np.arange(n, dtype=np.int32)[:, None]]
        lhs = values[aba]
        fab = codomain.mul_table[values[:, None], values[None, :]]
        rhs = codomain.mul_table[fab, values[:, None]]
        if not (lhs == rhs).all():
            a, b = (int(v[0]) for v in np.nonzero(lhs != rhs))
            raise JordanLawError(
                f"(aba)^alpha != a^alpha b^alpha a^alpha at ({domain.name(a)}, {domain.name(b)})",
                witness=(a, b),
            )
        return
    for a in range(domain.size):
        fa = int(values[a])
        for b in range(domain.size):
            aba = domain.mul(domain.mul(a, b), a)
            rhs = codomain.mul(codomain.mul(fa, int(values[b])), fa)
            if int(values[aba]) != rhs:
                raise JordanLawError(
                    f"(aba)^alpha != a^alpha b^alpha a^alpha at ({domain.name(a)}, {domain.name(b)})",
                    witness=(a, b),
                )


def _find_product_witness(domain, codomain, values, reverse: bool):
    """First pair (a, b) with (ab)^alpha != the (anti)homomorphism image, or None."""
    if domain.mul_table is not None and codomain.mul_table is not None:
        lhs = values[domain.mul_table]
        if reverse:
            rhs = codomain.mul_table[values[None, :], values[:, None]]
        else:
            rhs = codomain.mul_table[values[:, None], values[None, :]]
        bad = lhs != rhs
        if not bad.any():
            return None
        a, b = (int(v[0]) for v in np.nonzero(bad))
        return (a, b)
    for a in range(domain.size):
        fa = int(values[a])
        for b in range(domain.size):
            fb = int(values[b])
            rhs = codomain.mul(fb, fa) if reverse else codomain.mul(fa, fb)
            if int(values[domain.mul(a, b)]) != rhs:
                return (a, b)
    return None


def _closure_witness(codomain: FiniteRing, image) -> Optional[tuple[str, int, int, int]]:
    """A pair of image elements whose sum or product escapes the image."""
    members = set(image)
    for op_name in ("mul", "add"):
        op = codomain.mul if op_name == "mul" else codomain.add
        for x in image:
            for y in image:
                z = op(x, y)
                if z not in members:
                    return (op_name, x, y, z)
    return None


# -- reports -------------------------------------------------------------------


def verify_unit_behavior(jmap: JordanMap) -> dict:
    """Units map to units, compatibly with inversion."""
    dom, cod = jmap.domain, jmap.codomain
    checked = 0
    for u in dom.units():
        fu = jmap.apply(u)
        if not cod.is_unit(fu) or cod.inverse(fu) != jmap.apply(dom.inverse(u)):
            return {
                "name": "unit-behavior",
                "target": _pair_label(jmap),
                "checked": checked,
                "passed": False,
                "witness": {"unit": dom.name(u)},
            }
        checked += 1
    return {
        "name": "unit-behavior",
        "target": _pair_label(jmap),
        "checked": checked,
        "passed": True,
        "witness": None,
    }


def _pair_label(jmap: JordanMap) -> str:
    return f"{jmap.spec.kind}:{jmap.domain.label}->{jmap.codomain.label}"


def _compile_poly(f: FreePoly, ring: FiniteRing):
    """Flatten a polynomial for the word-evaluation kernel over ``ring``."""
    coeffs, flat, offsets = [], [], [0]
    for word, coeff in f.sorted_terms():
        coeffs.append(ring.scalar(coeff))
        flat.extend(i - 1 for i in word)
        offsets.append(len(flat))
    return (
        np.asarray(coeffs, dtype=np.int32),
        np.asarray(flat, dtype=np.int32),
        np.asarray(offsets, dtype=np.int64),
    )


def _word_batches(size: int, length: int, budget: int, seed: int):
    """Either all words of the length (exhaustive) or a fixed-seed sample."""
    total = size**length
    if total <= budget:
        idx = np.arange(total, dtype=np.int64)
        mode = "exhaustive"
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        idx = rng.integers(0, total, size=SAMPLE_COUNT, dtype=np.int64)
        mode = "sampled"
    digits = np.empty((length, idx.shape[0]), dtype=np.int32)
    rem = idx.copy()
    for k in range(length - 1, -1, -1):
        digits[k] = rem % size
        rem = rem // size
    return digits, mode


def _eval_poly_on_words(f: FreePoly, ring: FiniteRing, digits) -> np.ndarray:
    if ring.mul_table is not None:
        coeff, flat, off = _compile_poly(f, ring)
        return kernels.eval_poly_words(
            ring.mul_table, ring.add_table, ring.zero, coeff, flat, off, digits
        )
    out = np.empty(digits.shape[1], dtype=np.int32)
    for col in range(digits.shape[1]):
        values = [ring.elem(int(v)) for v in digits[:, col]]
        out[col] = substitute(f, values, ring=ring).index
    return out


def test_j_polynomial(
    f: FreePoly,
    corpus: Sequence[JordanMap],
    max_seq_len: int = 3,
    budget: int = WORK_BUDGET,
    seed: int = 0,
    label: Optional[str] = None,
) -> list[dict]:
    """Check f(T)^alpha = f(T^alpha) over all T up to the length cap, per map."""
    reports = []
    shown = label if label is not None else str(f)
    for jmap in corpus:
        dom, cod = jmap.domain, jmap.codomain
        checked, modes, witness, passed = 0, set(), None, True
        for length in range(max_seq_len + 1):
            digits, mode = _word_batches(dom.size, length, budget, seed)
            modes.add(mode)
            lhs = jmap.values[_eval_poly_on_words(f, dom, digits)]
            rhs = _eval_poly_on_words(f, cod, jmap.values[digits])
            bad = lhs != rhs
            if bad.any():
                col = int(np.nonzero(bad)[0][0])
                word = tuple(int(v) for v in digits[:, col])
                witness = {
                    "word": [dom.name(t) for t in word],
                    "lhs": cod.name(int(lhs[col])),
                    "rhs": cod.name(int(rhs[col])),
                }
                passed = False
            checked += digits.shape[1]
            if not passed:
                break
        reports.append(
            {
                "name": f"j-polynomial[{shown}]",
                "target": _pair_label(jmap),
                "mode": "sampled" if "sampled" in modes else "exhaustive",
                "checked": checked,
                "passed": passed,
                "witness": witness,
            }
        )
    return reports


def test_thm_inv0(
    jmap: JordanMap,
    max_seq_len: int = 3,
    budget: int = WORK_BUDGET,
    seed: int = 0,
) -> dict:
    """Unit leading entries stay units; vanishing second entries stay zero.

    For every T up to the length cap: if the leading entry e(n) at T is a
    unit then so is e(n) at T^alpha, and if additionally e(n-1) at T is 0
    then e(n-1) at T^alpha is 0.
    """
    dom, cod = jmap.domain, jmap.codomain
    if dom.mul_table is None or cod.mul_table is None:
        raise ValueError("this sweep needs op tables on both rings")
    unit_d = np.zeros(dom.size, dtype=bool)
    unit_d[list(dom.units())] = True
    unit_c = np.zeros(cod.size, dtype=bool)
    unit_c[list(cod.units())] = True
    checked, modes, witness, passed = 0, set(), None, True
    for length in range(max_seq_len + 1):
        digits, mode = _word_batches(dom.size, length, budget, seed)
        modes.add(mode)
        en, enm1 = kernels.eval_words_e(
            dom.mul_table, dom.add_table, dom.neg_table, dom.one, dom.zero, digits
        )
        men, menm1 = kernels.eval_words_e(
            cod.mul_table, cod.add_table, cod.neg_table, cod.one, cod.zero,
            jmap.values[digits],
        )
        lead_unit = unit_d[en]
        bad = (lead_unit & ~unit_c[men]) | (
            lead_unit & (enm1 == dom.zero) & (menm1 != cod.zero)
        )
        if bad.any():
            col = int(np.nonzero(bad)[0][0])
            witness = {"word": [dom.name(int(v)) for v in digits[:, col]]}
            passed = False
        checked += digits.shape[1]
        if not passed:
            break
    return {
        "name": "entry-transfer",
        "target": _pair_label(jmap),
        "mode": "sampled" if "sampled" in modes else "exhaustive",
        "checked": checked,
        "passed": passed,
        "witness": witness,
    }
