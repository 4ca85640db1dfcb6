"""Exact bigraded cohomology and double cohomology of moment-angle complexes.

Two independent pipelines compute the same invariants:

* ``hochster``: per-subset reduced (co)homology of full subcomplexes,
  assembled into the bigraded groups, with the connecting differential
  between bidegrees and its double (co)homology;
* ``koszul``: the finite bigraded differential algebra R(K) with both
  differentials, cohomology, descended second differential, and the cup
  product over a field.

Bidegrees are stored internally as pairs ``(k, l)`` with ``k >= 0`` and
displayed as ``(-k, 2l)``.  All integral computation is exact, over Z,
via Smith normal form; field computations run over Q or F_p.
"""

from .complexes import (
    ComplexError,
    SimplicialComplex,
    boundary_simplex,
    cycle,
    disjoint_points,
    join,
    rp2_minimal,
    simplex,
    square_edge,
    two_squares,
    two_triangles,
    zoo,
)
from .errors import VerificationError
from .hochster import (
    double_cohomology,
    double_field,
    double_homology,
    hochster_cohomology,
    hochster_field,
    hochster_homology,
)
from .koszul import (
    KoszulFieldAlgebra,
    RComplex,
    cohomology_via_koszul,
    d_prime_acyclicity,
    hh_via_koszul,
    hochster_koszul_iso,
)
from .verification import run_checks

__version__ = "0.1.0"

__all__ = [
    "ComplexError",
    "KoszulFieldAlgebra",
    "RComplex",
    "SimplicialComplex",
    "VerificationError",
    "boundary_simplex",
    "cohomology_via_koszul",
    "cycle",
    "d_prime_acyclicity",
    "disjoint_points",
    "double_cohomology",
    "double_field",
    "double_homology",
    "hh_via_koszul",
    "hochster_cohomology",
    "hochster_field",
    "hochster_homology",
    "hochster_koszul_iso",
    "join",
    "rp2_minimal",
    "run_checks",
    "simplex",
    "square_edge",
    "two_squares",
    "two_triangles",
    "zoo",
]
