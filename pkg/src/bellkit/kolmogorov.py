"""The pure-state mixture model over symbolic events.

Hidden variables are unit vectors of the system's Hilbert space.  A
projection A is answered 1 by exactly the states inside its range, so the
event X_A is the unit sphere of that range; a direction event X_a (on a
two-spin space) collects the product states that answer "spin up along a"
at either station.  Events are kept in a complement-free union-of-
intersections normal form, and the mixture of an event is the Born weight
of the projector onto the subspace its member states span.

The two generator kinds never mix inside one event: the mixture of such a
hybrid is not defined here, and span_of_event refuses it.

The model deliberately makes strange assertions true: every direction event
has mixture 1 on the singlet state, yet three pairwise distinct directions
have *empty* triple intersection, certified by exact enumeration of the
(at most two) states shared by each pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CollinearDirections,
    DimensionMismatch,
    NonCommuting,
    UnsupportedEvent,
)
from .hilbert import (
    ATOL_ALGEBRA,
    ATOL_VECTOR,
    Operator,
    Projection,
    StateVector,
    Subspace,
    _span_columns,
    born_probability,
    commutes,
    intersect,
    projector,
    singlet_state,
    span,
    subspace_sum,
)
from .observables import Direction, parse_pauli, qubit_state, to_operator

__all__ = [
    "SubspaceSphere",
    "DirectionSet",
    "Event",
    "GeneralizedModel",
    "singlet_model",
    "model_from_json",
    "hidden_value",
    "direction_set_contains",
    "pairwise_intersection_elements",
    "span_of_event",
    "rho",
    "AdditivityCheck",
    "check_additivity",
    "refines",
    "monotonicity_audit",
    "RedSmallHeavyReport",
    "red_small_heavy_demo",
    "random_commuting_projections",
]


class SubspaceSphere:
    """Generator X_A: the unit vectors of a projection's range."""

    __slots__ = ("projection",)

    def __init__(self, projection: Projection):
        object.__setattr__(self, "projection", projection)

    def __setattr__(self, name, value):
        raise AttributeError("SubspaceSphere is immutable")

    def __eq__(self, other):
        return isinstance(other, SubspaceSphere) and np.array_equal(
            self.projection.matrix, other.projection.matrix
        )

    def __hash__(self):
        return hash((self.projection.dim, self.projection.matrix.tobytes()))

    def __repr__(self):
        return f"SubspaceSphere(dim={self.projection.dim}, rank={self.projection.rank()})"


@dataclass(frozen=True)
class DirectionSet:
    """Generator X_a: two-spin product states |a> (x) v or v (x) |a>."""

    direction: Direction


Generator = SubspaceSphere | DirectionSet


class Event:
    """Union-of-intersections over generators, without complements.

    ``clauses`` is a set of intersection clauses, each a set of generators.
    The empty clause set is the empty event; a clause with no generators is
    the full event (an intersection over nothing).
    """

    __slots__ = ("clauses",)

    def __init__(self, clauses: Iterable[Iterable[Generator]]):
        normal = frozenset(frozenset(clause) for clause in clauses)
        if frozenset() in normal:
            normal = frozenset({frozenset()})
        object.__setattr__(self, "clauses", normal)

    def __setattr__(self, name, value):
        raise AttributeError("Event is immutable")

    @classmethod
    def empty(cls) -> Event:
        return cls([])

    @classmethod
    def full(cls) -> Event:
        return cls([[]])

    @classmethod
    def of_sphere(cls, projection: Projection) -> Event:
        return cls([[SubspaceSphere(projection)]])

    @classmethod
    def of_direction(cls, direction: Direction) -> Event:
        return cls([[DirectionSet(direction)]])

    @property
    def is_empty(self) -> bool:
        return not self.clauses

    @property
    def is_full(self) -> bool:
        return frozenset() in self.clauses

    def union(self, other: Event) -> Event:
        return Event(self.clauses | other.clauses)

    def intersect(self, other: Event) -> Event:
        return Event(c | d for c in self.clauses for d in other.clauses)

    __or__ = union
    __and__ = intersect

    def __eq__(self, other):
        return isinstance(other, Event) and self.clauses == other.clauses

    def __hash__(self):
        return hash(self.clauses)

    def __repr__(self):
        return f"Event(clauses={len(self.clauses)})"


@dataclass(frozen=True)
class GeneralizedModel:
    """A prepared state plus the projection generators under discussion."""

    dim: int
    psi: StateVector
    generators: tuple[Projection, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.psi.dim != self.dim:
            raise DimensionMismatch(f"state dim {self.psi.dim} != model dim {self.dim}")
        for g in self.generators:
            if g.dim != self.dim:
                raise DimensionMismatch(f"generator dim {g.dim} != model dim {self.dim}")


def singlet_model(generators: Sequence[Projection] = ()) -> GeneralizedModel:
    return GeneralizedModel(dim=4, psi=singlet_state(), generators=tuple(generators))


def model_from_json(text: str) -> GeneralizedModel:
    """Load ``{"dim": int, "state": [[re,im]...], "generators": [...]}``.

    Each generator is either a Pauli-string (meaning the projector onto its
    +1 eigenspace, i.e. the "answers yes" test) or an explicit matrix of
    [re, im] entry pairs.
    """
    import json

    data = json.loads(text)
    dim = int(data["dim"])
    n_particles = dim.bit_length() - 1
    if dim <= 0 or 2**n_particles != dim:
        raise ValueError(f"model dim must be a power of two, got {dim}")
    psi = StateVector.from_components(data["state"])
    generators = []
    for spec in data.get("generators", []):
        if isinstance(spec, str):
            op = to_operator(parse_pauli(spec, n_particles=n_particles))
            generators.append(Projection((np.eye(dim) + op.matrix) / 2.0))
        else:
            matrix = np.array(
                [[complex(re, im) for re, im in row] for row in spec], dtype=np.complex128
            )
            generators.append(Projection(matrix))
    return GeneralizedModel(dim=dim, psi=psi, generators=tuple(generators))


def hidden_value(lam: StateVector, a: Projection) -> int:
    """1 iff the state is a +1 eigenvector of the projection, else 0.

    Superpositions answer 0 even when their Born probability is strictly
    positive; this all-or-nothing behaviour is the model's point.
    """
    if lam.dim != a.dim:
        raise DimensionMismatch(f"state dim {lam.dim} != projection dim {a.dim}")
    return int(np.linalg.norm(a.matrix @ lam.amplitudes - lam.amplitudes) < ATOL_VECTOR)


def direction_set_contains(d: Direction, psi: StateVector, tol: float = ATOL_VECTOR) -> bool:
    """Membership test for X_d: is psi of the form |d> (x) v or v (x) |d>?"""
    if psi.dim != 4:
        raise DimensionMismatch("direction events live on the two-spin space (dim 4)")
    m = psi.amplitudes.reshape(2, 2)
    q = qubit_state(d)
    residual = np.eye(2) - np.outer(q, q.conj())
    first_slot = np.linalg.norm(residual @ m)
    second_slot = np.linalg.norm(residual @ m.T)
    return bool(min(first_slot, second_slot) < tol)


def pairwise_intersection_elements(a: Direction, b: Direction) -> list[StateVector]:
    """The exact elements of X_a intersected with X_b: |a>(x)|b> and |b>(x)|a>.

    Case analysis over the four form combinations: two product states with
    the same slot fixed to different directions would need |a> proportional
    to |b>, which non-collinearity rules out, and the two cross cases each
    pin both factors.
    """
    if abs(abs(a.dot(b)) - 1.0) < ATOL_ALGEBRA:
        raise CollinearDirections(f"directions {a} and {b} are collinear")
    qa, qb = qubit_state(a), qubit_state(b)
    return [StateVector(np.kron(qa, qb)), StateVector(np.kron(qb, qa))]


def _range_subspace(p: Projection) -> Subspace:
    return _span_columns(np.asarray(p.matrix))


def _direction_clause_span(directions: list[Direction]) -> Subspace:
    if len(directions) == 1:
        q = qubit_state(directions[0])
        basis = [np.kron(q, e) for e in np.eye(2)] + [np.kron(e, q) for e in np.eye(2)]
        return span([StateVector(v) for v in basis], dim_ambient=4)
    elements = pairwise_intersection_elements(directions[0], directions[1])
    for d in directions[2:]:
        elements = [e for e in elements if direction_set_contains(d, e)]
    return span(elements, dim_ambient=4)


def span_of_event(m: GeneralizedModel, e: Event) -> Subspace:
    """The subspace generated by an event's member states.

    Intersection clauses become subspace intersections (with direction
    clauses reduced by exact element enumeration); the union becomes the
    subspace sum of the clause spans.
    """
    if e.is_empty:
        return Subspace.zero(m.dim)
    total = Subspace.zero(m.dim)
    for clause in e.clauses:
        if not clause:
            return Subspace.full(m.dim)
        spheres = [g for g in clause if isinstance(g, SubspaceSphere)]
        directions = [g.direction for g in clause if isinstance(g, DirectionSet)]
        if spheres and directions:
            raise UnsupportedEvent(
                "events mixing subspace-sphere and direction generators have no defined mixture"
            )
        if directions:
            if m.dim != 4:
                raise UnsupportedEvent("direction events require a dim-4 model")
            clause_span = _direction_clause_span(directions)
        else:
            clause_span = Subspace.full(m.dim)
            for g in spheres:
                if g.projection.dim != m.dim:
                    raise DimensionMismatch(
                        f"generator dim {g.projection.dim} != model dim {m.dim}"
                    )
                clause_span = intersect(clause_span, _range_subspace(g.projection))
        total = subspace_sum(total, clause_span)
    return total


def rho(m: GeneralizedModel, e: Event) -> float:
    """Mixture of an event: Born weight of the projector onto its span."""
    return born_probability(m.psi, projector(span_of_event(m, e)))


@dataclass(frozen=True)
class AdditivityCheck:
    residual: float


def check_additivity(m: GeneralizedModel, a: Projection, b: Projection) -> AdditivityCheck:
    """|rho(X_A & X_B) + rho(X_A | X_B) - rho(X_A) - rho(X_B)| for commuting A, B.

    A shared eigenbasis splits all four spans into sums over common
    eigenvectors, so the residual vanishes (well below 1e-10 numerically).
    """
    if not commutes(Operator(a.matrix), Operator(b.matrix)):
        raise NonCommuting("additivity identity only holds for commuting projections")
    ea, eb = Event.of_sphere(a), Event.of_sphere(b)
    residual = abs(rho(m, ea & eb) + rho(m, ea | eb) - rho(m, ea) - rho(m, eb))
    return AdditivityCheck(residual=residual)


def refines(e1: Event, e2: Event) -> bool:
    """Syntactic containment: every clause of e1 extends some clause of e2."""
    return all(any(c1 >= c2 for c2 in e2.clauses) for c1 in e1.clauses)


def monotonicity_audit(m: GeneralizedModel, e1: Event, e2: Event) -> bool:
    """For syntactically nested events, check rho(e1) <= rho(e2) + 1e-10."""
    if not refines(e1, e2):
        raise ValueError("e1 does not syntactically refine e2")
    return rho(m, e1) <= rho(m, e2) + 1e-10


@dataclass(frozen=True)
class RedSmallHeavyReport:
    """Three full-measure direction events whose triple intersection is empty.

    ``pair_elements`` counts the enumerated members of each pairwise
    intersection; ``third_memberships`` records, for each such member, the
    exact membership test against the remaining direction (all False makes
    the triple intersection empty)."""

    rhos: tuple[float, float, float]
    pair_elements: tuple[int, int, int]
    third_memberships: tuple[bool, ...]
    triple_empty: bool

    def holds(self, tol: float = 1e-10) -> bool:
        return self.triple_empty and all(abs(r - 1.0) <= tol for r in self.rhos)

    def to_dict(self) -> dict:
        return {
            "rhos": list(self.rhos),
            "pair_elements": list(self.pair_elements),
            "triple_empty": self.triple_empty,
            "holds": self.holds(),
        }


def red_small_heavy_demo(directions: Sequence[Direction]) -> RedSmallHeavyReport:
    """On the singlet: every X_d has mixture 1, yet the triple intersection
    of three pairwise non-collinear direction events is exactly empty."""
    if len(directions) != 3:
        raise ValueError("exactly three directions required")
    m = singlet_model()
    rhos = tuple(rho(m, Event.of_direction(d)) for d in directions)
    pair_elements = []
    memberships: list[bool] = []
    pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
    for i, j, k in pairs:
        elements = pairwise_intersection_elements(directions[i], directions[j])
        pair_elements.append(len(elements))
        memberships.extend(direction_set_contains(directions[k], e) for e in elements)
    return RedSmallHeavyReport(
        rhos=rhos,
        pair_elements=tuple(pair_elements),
        third_memberships=tuple(memberships),
        triple_empty=not any(memberships),
    )


def random_commuting_projections(
    dim: int, rng: np.random.Generator
) -> tuple[Projection, Projection]:
    """A commuting pair built from a shared Haar-random eigenbasis."""
    gaussian = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(gaussian)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    masks = rng.integers(0, 2, size=(2, dim))
    a = Projection(q @ np.diag(masks[0]) @ q.conj().T)
    b = Projection(q @ np.diag(masks[1]) @ q.conj().T)
    return a, b
