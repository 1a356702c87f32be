"""Dense complex linear algebra over small Hilbert spaces (dim <= 2**10).

State vectors are kept unit-norm with a canonical global phase (the first
amplitude of modulus > 1e-9 is real and positive), so "equal up to phase"
reduces to plain closeness of amplitudes.  Subspaces carry orthonormal
bases; rank decisions use a fixed singular-value cutoff.  All values are
immutable after construction.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyEigenspace, NonCommuting
from .rng import generator

# Algebraic identities (commutation, hermiticity, norms) are checked at
# 1e-9; numerically derived vectors at 1e-8.  Dimensions stay <= 1024, so
# double precision leaves ample headroom.
ATOL_ALGEBRA = 1e-9
ATOL_VECTOR = 1e-8
SVD_CUTOFF = 1e-9
# Born weights below this are treated as exact zeros when sampling.
PROB_FLOOR = 1e-12

__all__ = [
    "ATOL_ALGEBRA",
    "ATOL_VECTOR",
    "SVD_CUTOFF",
    "StateVector",
    "Operator",
    "Projection",
    "Subspace",
    "tensor",
    "product_state",
    "commutes",
    "born_probability",
    "span",
    "intersect",
    "subspace_sum",
    "complement",
    "projector",
    "simultaneous_eigenstate",
    "measure_commuting",
    "sample_commuting",
    "singlet_state",
]


def _as_complex_matrix(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix contains non-finite entries")
    return m


class StateVector:
    """A unit vector with canonical phase."""

    __slots__ = ("dim", "amplitudes")

    def __init__(self, amplitudes):
        arr = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if arr.size == 0:
            raise ValueError("state vector needs at least one amplitude")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("state vector contains non-finite amplitudes")
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > ATOL_ALGEBRA:
            raise ValueError(f"state vector is not normalized: norm={norm!r}")
        arr = arr / norm
        anchor = int(np.flatnonzero(np.abs(arr) > ATOL_ALGEBRA)[0])
        arr = arr * np.exp(-1j * np.angle(arr[anchor]))
        arr[anchor] = abs(arr[anchor])
        arr.setflags(write=False)
        object.__setattr__(self, "dim", arr.size)
        object.__setattr__(self, "amplitudes", arr)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @classmethod
    def from_components(cls, pairs: Sequence[Sequence[float]]) -> StateVector:
        """Build from ``[[re, im], ...]`` pairs (the JSON wire form)."""
        return cls([complex(re, im) for re, im in pairs])

    def to_components(self) -> list[list[float]]:
        return [[float(a.real), float(a.imag)] for a in self.amplitudes]

    def inner(self, other: StateVector) -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def isclose(self, other: StateVector, tol: float = ATOL_VECTOR) -> bool:
        """Equality up to global phase (both sides are canonical)."""
        return self.dim == other.dim and bool(
            np.allclose(self.amplitudes, other.amplitudes, atol=tol, rtol=0.0)
        )

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


class Operator:
    """A dense linear operator; no structure assumed beyond finiteness."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix):
        m = _as_complex_matrix(matrix)
        m.setflags(write=False)
        object.__setattr__(self, "dim", m.shape[0])
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("Operator is immutable")

    def apply(self, psi: StateVector) -> np.ndarray:
        _check_dims(self.dim, psi.dim)
        return self.matrix @ psi.amplitudes

    def is_hermitian(self, tol: float = ATOL_ALGEBRA) -> bool:
        return bool(np.abs(self.matrix - self.matrix.conj().T).max() <= tol)

    def is_involution(self, tol: float = ATOL_ALGEBRA) -> bool:
        """True iff the operator squares to the identity (so spectrum is +-1)."""
        return bool(
            np.abs(self.matrix @ self.matrix - np.eye(self.dim)).max() <= tol
        )

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class Projection(Operator):
    """An orthogonal projection: Hermitian and idempotent within 1e-9."""

    def __init__(self, matrix):
        super().__init__(matrix)
        m = self.matrix
        if np.abs(m - m.conj().T).max() > ATOL_ALGEBRA:
            raise ValueError("projection matrix is not Hermitian")
        if np.abs(m @ m - m).max() > ATOL_ALGEBRA:
            raise ValueError("projection matrix is not idempotent")

    @classmethod
    def identity(cls, dim: int) -> Projection:
        return cls(np.eye(dim))

    @classmethod
    def zero(cls, dim: int) -> Projection:
        return cls(np.zeros((dim, dim)))

    @classmethod
    def onto_state(cls, psi: StateVector) -> Projection:
        a = psi.amplitudes
        return cls(np.outer(a, a.conj()))

    def rank(self) -> int:
        # trace of an orthogonal projection is its rank
        return int(round(self.matrix.trace().real))


class Subspace:
    """A subspace given by an orthonormal basis (possibly empty)."""

    __slots__ = ("dim_ambient", "basis")

    def __init__(self, dim_ambient: int, basis):
        b = np.asarray(basis, dtype=np.complex128)
        if b.size == 0:
            b = b.reshape(dim_ambient, 0)
        if b.ndim != 2 or b.shape[0] != dim_ambient:
            raise ValueError(f"basis shape {b.shape} does not match dim {dim_ambient}")
        gram = b.conj().T @ b
        if gram.size and np.abs(gram - np.eye(b.shape[1])).max() > ATOL_ALGEBRA * 10:
            raise ValueError("basis columns are not orthonormal")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "dim_ambient", dim_ambient)
        object.__setattr__(self, "basis", b)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, dim_ambient: int) -> Subspace:
        return cls(dim_ambient, np.zeros((dim_ambient, 0)))

    @classmethod
    def full(cls, dim_ambient: int) -> Subspace:
        return cls(dim_ambient, np.eye(dim_ambient))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def basis_vectors(self) -> list[StateVector]:
        return [StateVector(self.basis[:, k]) for k in range(self.dim)]

    def contains(self, psi: StateVector, tol: float = ATOL_VECTOR) -> bool:
        _check_dims(self.dim_ambient, psi.dim)
        v = psi.amplitudes
        residual = v - self.basis @ (self.basis.conj().T @ v)
        return bool(np.linalg.norm(residual) <= tol)

    def __repr__(self):
        return f"Subspace(dim_ambient={self.dim_ambient}, dim={self.dim})"


def _check_dims(a: int, b: int):
    if a != b:
        raise DimensionMismatch(f"dimension mismatch: {a} != {b}")


def tensor(a: Operator, b: Operator) -> Operator:
    """Kronecker product; dim = dim(a) * dim(b)."""
    return Operator(np.kron(a.matrix, b.matrix))


def product_state(a: StateVector, b: StateVector) -> StateVector:
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def commutes(a: Operator, b: Operator, tol: float = ATOL_ALGEBRA) -> bool:
    """True iff the max entry of AB - BA is below ``tol``."""
    _check_dims(a.dim, b.dim)
    delta = a.matrix @ b.matrix - b.matrix @ a.matrix
    return bool(np.abs(delta).max() <= tol)


def born_probability(psi: StateVector, p: Projection) -> float:
    """<psi|P|psi>, clamped to [0, 1] at the tolerance boundaries."""
    _check_dims(psi.dim, p.dim)
    value = float(np.vdot(psi.amplitudes, p.matrix @ psi.amplitudes).real)
    return min(1.0, max(0.0, value))


def span(vectors: Iterable[StateVector], dim_ambient: int | None = None) -> Subspace:
    """Orthonormal span, with rank cut at singular values < 1e-9."""
    vecs = list(vectors)
    if not vecs:
        if dim_ambient is None:
            raise ValueError("span of an empty list needs an explicit dim_ambient")
        return Subspace.zero(dim_ambient)
    dim = vecs[0].dim
    if dim_ambient is not None and dim_ambient != dim:
        raise DimensionMismatch(f"dimension mismatch: {dim_ambient} != {dim}")
    for v in vecs[1:]:
        _check_dims(dim, v.dim)
    return _span_columns(np.column_stack([v.amplitudes for v in vecs]))


def _span_columns(matrix: np.ndarray) -> Subspace:
    dim = matrix.shape[0]
    if matrix.shape[1] == 0:
        return Subspace.zero(dim)
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    rank = int(np.count_nonzero(s > SVD_CUTOFF))
    return Subspace(dim, u[:, :rank])


def complement(s: Subspace) -> Subspace:
    """Orthogonal complement."""
    if s.dim == 0:
        return Subspace.full(s.dim_ambient)
    u, sv, _ = np.linalg.svd(s.basis, full_matrices=True)
    rank = int(np.count_nonzero(sv > SVD_CUTOFF))
    return Subspace(s.dim_ambient, u[:, rank:])


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    """Smallest subspace containing both."""
    _check_dims(s.dim_ambient, t.dim_ambient)
    return _span_columns(np.hstack([s.basis, t.basis]))


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection, via the complement of the sum of complements."""
    _check_dims(s.dim_ambient, t.dim_ambient)
    return complement(subspace_sum(complement(s), complement(t)))


def projector(s: Subspace) -> Projection:
    """Sum of |b><b| over the basis."""
    return Projection(s.basis @ s.basis.conj().T)


def _validate_pm_observables(ops: Sequence[Operator]):
    if not ops:
        raise ValueError("need at least one operator")
    dim = ops[0].dim
    for op in ops:
        _check_dims(dim, op.dim)
        if not op.is_hermitian() or not op.is_involution():
            raise ValueError("operator does not have a +-1 spectrum")
    for i, a in enumerate(ops):
        for b in ops[i + 1 :]:
            if not commutes(a, b):
                raise NonCommuting("operators do not pairwise commute")


def simultaneous_eigenstate(
    ops: Sequence[Operator], eigenvalues: Sequence[int]
) -> tuple[StateVector, int]:
    """A unit vector with op_i psi = eigenvalue_i psi, plus the eigenspace dimension.

    The operators must pairwise commute and have +-1 spectra.  If the joint
    eigenspace has dimension > 1 an arbitrary basis vector of it is returned.
    Raises EmptyEigenspace when no such vector exists.
    """
    if len(ops) != len(eigenvalues):
        raise ValueError("one eigenvalue per operator required")
    if any(e not in (1, -1) for e in eigenvalues):
        raise ValueError("eigenvalues must be +-1")
    _validate_pm_observables(ops)
    dim = ops[0].dim
    # For commuting involutions the eigenprojections (I +- op)/2 commute, so
    # their product is the orthogonal projection onto the joint eigenspace.
    joint = np.eye(dim, dtype=np.complex128)
    for op, ev in zip(ops, eigenvalues):
        joint = joint @ (np.eye(dim) + ev * op.matrix) / 2.0
    evals, evecs = np.linalg.eigh(joint)
    space_dim = int(np.count_nonzero(evals > 0.5))
    if space_dim == 0:
        raise EmptyEigenspace(
            f"no joint eigenstate for the requested eigenvalues {tuple(eigenvalues)}"
        )
    psi = StateVector(evecs[:, -1])
    for op, ev in zip(ops, eigenvalues):
        if np.abs(op.apply(psi) - ev * psi.amplitudes).max() > ATOL_VECTOR:
            raise ArithmeticError("eigenstate residual above tolerance")
    return psi, space_dim


def _joint_outcome_distribution(
    psi: StateVector, ops: Sequence[Operator]
) -> tuple[np.ndarray, np.ndarray]:
    """All joint +-1 outcomes of commuting involutions with their Born weights.

    Returns (signs, probs): signs has shape (2**k, k), probs sums to 1.
    Weights below PROB_FLOOR are zeroed exactly, so analytically forbidden
    outcomes are never sampled.
    """
    _validate_pm_observables(ops)
    _check_dims(ops[0].dim, psi.dim)
    branches: list[tuple[np.ndarray, tuple[int, ...]]] = [(psi.amplitudes, ())]
    for op in ops:
        nxt = []
        for vec, signs in branches:
            image = op.matrix @ vec
            nxt.append(((vec + image) / 2.0, signs + (1,)))
            nxt.append(((vec - image) / 2.0, signs + (-1,)))
        branches = nxt
    signs = np.array([s for _, s in branches], dtype=np.int8)
    probs = np.array([np.linalg.norm(v) ** 2 for v, _ in branches])
    probs[probs < PROB_FLOOR] = 0.0
    probs /= probs.sum()
    return signs, probs


def sample_commuting(
    psi: StateVector, ops: Sequence[Operator], shots: int, seed: int
) -> np.ndarray:
    """Joint outcomes of simultaneously measuring commuting +-1 observables.

    Returns an (shots, len(ops)) int8 array of +-1, drawn from the Born joint
    distribution over the common eigenbasis.  Deterministic given the seed.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    signs, probs = _joint_outcome_distribution(psi, ops)
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    draws = generator(seed).random(shots)
    return signs[np.searchsorted(cum, draws, side="right")]


def measure_commuting(psi: StateVector, ops: Sequence[Operator], seed: int) -> list[int]:
    """One joint outcome; see sample_commuting."""
    return [int(v) for v in sample_commuting(psi, ops, 1, seed)[0]]


def singlet_state() -> StateVector:
    """The antisymmetric two-spin state (|01> - |10>)/sqrt(2).

    With this sign the probability of equal outcomes at relative angle theta
    is sin^2(theta/2) for every direction pair, and equal-direction outcomes
    are perfectly anticorrelated.
    """
    s = 1.0 / np.sqrt(2.0)
    return StateVector([0.0, s, -s, 0.0])
