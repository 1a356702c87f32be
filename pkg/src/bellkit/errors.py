"""Exception types shared across the package."""


class BellkitError(Exception):
    """Base class for all bellkit errors."""


class DimensionMismatch(BellkitError, ValueError):
    """Operands live in Hilbert spaces of different dimension."""


class NonCommuting(BellkitError, ValueError):
    """An operation that requires commuting operators received ones that don't."""


class EmptyEigenspace(BellkitError, ValueError):
    """The requested joint eigenspace has dimension zero."""


class PauliSyntaxError(BellkitError, ValueError):
    """A Pauli-string expression could not be tokenized."""


class DuplicateIndexError(PauliSyntaxError):
    """A Pauli-string expression assigns two factors to one particle."""


class IncompleteAssignment(BellkitError, ValueError):
    """An assignment does not cover the observable set an audit needs."""


class CollinearDirections(BellkitError, ValueError):
    """Two directions are parallel or antiparallel where distinct rays are required."""


class UnsupportedEvent(BellkitError, ValueError):
    """An event mixes generator kinds the mixture model does not define."""


class AntipodalViolation(BellkitError, ValueError):
    """A sphere-function candidate is not odd under the antipodal map."""


class EmptyIntersectionNotCertified(BellkitError, ValueError):
    """The caller supplied predicates without certifying their empty intersection."""
