"""bellkit: desk-scale verifiers for quantum no-go arguments.

Subpackages cover dense small-space linear algebra (`hilbert`), Pauli
observables and the GHZ pentagram (`observables`), the GHZ/Bell no-go
verifiers (`nogo`), the pure-state mixture model (`kolmogorov`), and the
setting-choice experiment harness (`superdet`).  `bellkit.cli` exposes all
of it as a command line with seeded, byte-reproducible reports.
"""

from .backend import backend_name
from .errors import (
    AntipodalViolation,
    BellkitError,
    CollinearDirections,
    DimensionMismatch,
    DuplicateIndexError,
    EmptyEigenspace,
    EmptyIntersectionNotCertified,
    IncompleteAssignment,
    NonCommuting,
    PauliSyntaxError,
    UnsupportedEvent,
)
from .hilbert import (
    Operator,
    Projection,
    StateVector,
    Subspace,
    born_probability,
    commutes,
    intersect,
    measure_commuting,
    projector,
    sample_commuting,
    simultaneous_eigenstate,
    singlet_state,
    span,
    subspace_sum,
    tensor,
)
from .observables import (
    Direction,
    ParityConstraint,
    PauliString,
    PentagramSpec,
    bell_directions,
    parse_pauli,
    pentagram,
    render_pauli,
    spin_observable,
    to_operator,
    verify_line_products,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # errors
    "BellkitError",
    "DimensionMismatch",
    "NonCommuting",
    "EmptyEigenspace",
    "PauliSyntaxError",
    "DuplicateIndexError",
    "IncompleteAssignment",
    "CollinearDirections",
    "UnsupportedEvent",
    "AntipodalViolation",
    "EmptyIntersectionNotCertified",
    # hilbert
    "StateVector",
    "Operator",
    "Projection",
    "Subspace",
    "tensor",
    "commutes",
    "born_probability",
    "span",
    "intersect",
    "subspace_sum",
    "projector",
    "simultaneous_eigenstate",
    "measure_commuting",
    "sample_commuting",
    "singlet_state",
    # observables
    "PauliString",
    "parse_pauli",
    "render_pauli",
    "to_operator",
    "Direction",
    "spin_observable",
    "bell_directions",
    "ParityConstraint",
    "PentagramSpec",
    "pentagram",
    "verify_line_products",
]
