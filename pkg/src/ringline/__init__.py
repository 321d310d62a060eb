"""Exact computations around E2(R), Jordan maps, and the projective line.

Layered bottom-up: ``freealg`` (integer polynomials in non-commuting
letters), ``rings`` (finite rings with multiplication tables),
``elemgrp`` (the elementary group E2 and its relation sweeps),
``jordan`` (Jordan homomorphisms between finite rings), ``projline``
(the projective line, distant graph, induced point maps, harmonic
quadruples), ``chains`` (chain geometries of subfields and the
preservation criterion), and ``suites`` (named verification suites with
deterministic reports).
"""

from .report import VERSION as __version__  # noqa: F401

from .freealg import FreePoly, SymMat2, e_ij, e_rec, sym_E, sym_E_inv, te_ij  # noqa: F401
from .rings import (  # noqa: F401
    FiniteRing,
    NotAUnitError,
    RingSpec,
    RingTooLargeError,
    build_ring,
    regular_representation,
    subring_as_ring,
    subring_closure,
)
from .elemgrp import (  # noqa: F401
    E,
    E_word,
    Mat2,
    NonInvertible,
    NonInvertibleError,
    enumerate_E2,
    n_alpha,
    word_inverse,
)
from .jordan import JordanMap, MapSpec, build_map, test_j_polynomial, test_thm_inv0  # noqa: F401
from .projline import (  # noqa: F401
    InducedMap,
    Line,
    LineContext,
    check_equivariance,
    check_prop45,
    enumerate_line,
    extend_map,
    harmonic,
    induced_map,
    line_context,
)
from .chains import (  # noqa: F401
    Chain,
    SubfieldK,
    check_condition_31,
    check_thm52,
    enumerate_chains,
    find_subfields,
)
from .presets import corpus_rings, jordan_corpus, map_preset, ring_preset  # noqa: F401
from .report import RunReport  # noqa: F401
from .suites import run_suite, suite_names  # noqa: F401
