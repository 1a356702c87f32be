"""Pauli-string observables, spin directions, and the GHZ pentagram data.

The pentagram is a ten-node, five-line constraint set: four lines must have
operator product +I and the fifth (the horizontal one) -I, with every node
sitting on exactly two lines.  It is stored as plain data so other
contextuality sets can be loaded from JSON and audited the same way.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Mapping

import numpy as np

from .errors import DuplicateIndexError, PauliSyntaxError
from .hilbert import ATOL_ALGEBRA, Operator, commutes

__all__ = [
    "PAULI",
    "PauliString",
    "parse_pauli",
    "render_pauli",
    "to_operator",
    "Direction",
    "spin_observable",
    "qubit_state",
    "bell_directions",
    "ParityConstraint",
    "PentagramSpec",
    "LineCheck",
    "pentagram",
    "parity_constraints",
    "verify_line_products",
    "constraint_set_from_json",
    "constraint_set_to_json",
]

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_TERM = re.compile(r"^([IXYZ])([0-9]+)$")


@dataclass(frozen=True)
class PauliString:
    """A product of single-particle Pauli factors; absent indices mean identity."""

    n_particles: int
    factors: Mapping[int, str]

    def __post_init__(self):
        object.__setattr__(self, "factors", dict(sorted(self.factors.items())))
        if self.n_particles < 1:
            raise ValueError("n_particles must be >= 1")
        for idx, letter in self.factors.items():
            if not 1 <= idx <= self.n_particles:
                raise ValueError(f"particle index {idx} out of range 1..{self.n_particles}")
            if letter not in ("X", "Y", "Z"):
                raise ValueError(f"unknown Pauli letter {letter!r}")

    def __hash__(self):
        return hash((self.n_particles, tuple(self.factors.items())))

    def __eq__(self, other):
        return (
            isinstance(other, PauliString)
            and self.n_particles == other.n_particles
            and dict(self.factors) == dict(other.factors)
        )

    def weight(self) -> int:
        return len(self.factors)

    def render(self) -> str:
        return render_pauli(self)

    def __str__(self):
        return self.render()


def parse_pauli(text: str, n_particles: int | None = None) -> PauliString:
    """Parse ``"X1*Y2*Y3"`` style expressions.

    Terms are separated by ``*`` or whitespace; each term is a letter in
    {I, X, Y, Z} followed by a decimal particle index >= 1 (case-insensitive).
    The particle count defaults to the largest index seen and can be widened
    with ``n_particles``.
    """
    segments = [seg.strip() for seg in text.upper().split("*")]
    if not all(segments):
        raise PauliSyntaxError(f"empty term in Pauli expression: {text!r}")
    tokens = [token for seg in segments for token in seg.split()]
    if not tokens:
        raise PauliSyntaxError(f"empty Pauli expression: {text!r}")
    factors: dict[int, str] = {}
    seen: set[int] = set()
    max_index = 0
    for token in tokens:
        m = _TERM.match(token)
        if m is None:
            raise PauliSyntaxError(f"bad token {token!r} in {text!r}")
        letter, idx = m.group(1), int(m.group(2))
        if idx < 1:
            raise PauliSyntaxError(f"particle index must be >= 1 in {token!r}")
        if idx in seen:
            raise DuplicateIndexError(f"two factors on particle {idx} in {text!r}")
        seen.add(idx)
        max_index = max(max_index, idx)
        if letter != "I":
            factors[idx] = letter
    n = max_index if n_particles is None else n_particles
    if n < max_index:
        raise ValueError(f"n_particles={n} below largest index {max_index}")
    return PauliString(n, factors)


def render_pauli(p: PauliString) -> str:
    """Canonical form: ascending indices, uppercase, ``*``-separated."""
    if not p.factors:
        return f"I{p.n_particles}"
    return "*".join(f"{letter}{idx}" for idx, letter in p.factors.items())


def to_operator(p: PauliString) -> Operator:
    """Kronecker product of the factors, identity on absent indices; dim 2**n."""
    mats = [PAULI[p.factors.get(i, "I")] for i in range(1, p.n_particles + 1)]
    return Operator(reduce(np.kron, mats))


@dataclass(frozen=True)
class Direction:
    """A unit 3-vector."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > ATOL_ALGEBRA:
            raise ValueError(f"direction is not a unit vector: norm={norm!r}")

    @classmethod
    def from_array(cls, v) -> Direction:
        v = np.asarray(v, dtype=float).reshape(3)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def to_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def antipode(self) -> Direction:
        return Direction(-self.x, -self.y, -self.z)

    def dot(self, other: Direction) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def angle_to(self, other: Direction) -> float:
        return math.acos(min(1.0, max(-1.0, self.dot(other))))


def spin_observable(d: Direction) -> Operator:
    """d.x * sigma_x + d.y * sigma_y + d.z * sigma_z (eigenvalues +-1)."""
    return Operator(
        [[d.z, d.x - 1j * d.y], [d.x + 1j * d.y, -d.z]]
    )


def qubit_state(d: Direction) -> "np.ndarray":
    """The +1 eigenvector of spin_observable(d), as a canonical amplitude pair."""
    theta = math.acos(min(1.0, max(-1.0, d.z)))
    phi = math.atan2(d.y, d.x)
    amps = np.array(
        [math.cos(theta / 2), math.sin(theta / 2) * complex(math.cos(phi), math.sin(phi))],
        dtype=np.complex128,
    )
    if abs(amps[0]) <= ATOL_ALGEBRA:
        amps = np.array([0.0, 1.0], dtype=np.complex128)
    return amps


def bell_directions() -> tuple[Direction, Direction, Direction]:
    """Three coplanar directions with pairwise 120-degree angles."""
    s = math.sqrt(3.0) / 2.0
    return (
        Direction(0.0, 0.0, 1.0),
        Direction(s, 0.0, -0.5),
        Direction(-s, 0.0, -0.5),
    )


@dataclass(frozen=True)
class ParityConstraint:
    """The count of +1 outcomes over ``observables`` must have this parity."""

    observables: tuple[PauliString, ...]
    required_parity: str  # "even" | "odd"

    def __post_init__(self):
        if self.required_parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        if len(set(self.observables)) != len(self.observables):
            raise ValueError("constraint observables must be distinct")

    def satisfied_by(self, values: Mapping[PauliString, int]) -> bool:
        yes = sum(1 for obs in self.observables if values[obs] == 1)
        return (yes % 2 == 0) == (self.required_parity == "even")


@dataclass(frozen=True)
class PentagramSpec:
    """Nodes, lines (as node indices) and the required line products."""

    n_particles: int
    nodes: tuple[PauliString, ...]
    lines: tuple[tuple[int, ...], ...]
    required_products: tuple[int, ...]

    def __post_init__(self):
        if len(self.lines) != len(self.required_products):
            raise ValueError("one required product per line")
        for sign in self.required_products:
            if sign not in (1, -1):
                raise ValueError("required products must be +-1")
        for line in self.lines:
            for idx in line:
                if not 0 <= idx < len(self.nodes):
                    raise ValueError(f"line references missing node {idx}")

    def line_operators(self, line_index: int) -> list[Operator]:
        return [to_operator(self.nodes[i]) for i in self.lines[line_index]]

    def node_line_count(self) -> list[int]:
        counts = [0] * len(self.nodes)
        for line in self.lines:
            for idx in line:
                counts[idx] += 1
        return counts


# Figure layout: node 0 is the apex, nodes 1..4 the horizontal row, then the
# inner nodes row by row.  Lines 0..3 are the star rays (product +I); line 4
# is the horizontal row (product -I).
_PENTAGRAM_DATA = {
    "n_particles": 3,
    "nodes": [
        "Y1",
        "X1*X2*X3",
        "Y1*Y2*X3",
        "Y1*X2*Y3",
        "X1*Y2*Y3",
        "X3",
        "Y3",
        "X1",
        "Y2",
        "X2",
    ],
    "lines": [
        [4, 6, 7, 8],
        [0, 2, 5, 8],
        [0, 3, 6, 9],
        [1, 5, 7, 9],
        [1, 2, 3, 4],
    ],
    "required_products": [1, 1, 1, 1, -1],
}


def pentagram() -> PentagramSpec:
    """The ten-observable, five-line parity constraint set."""
    return constraint_set_from_json(json.dumps(_PENTAGRAM_DATA))


def constraint_set_from_json(text: str) -> PentagramSpec:
    """Load a constraint set from its JSON schema.

    Schema: ``{"n_particles": int, "nodes": [str...], "lines": [[int...]...],
    "required_products": [+-1...]}``.
    """
    data = json.loads(text)
    n = int(data["n_particles"])
    nodes = tuple(parse_pauli(s, n_particles=n) for s in data["nodes"])
    lines = tuple(tuple(int(i) for i in line) for line in data["lines"])
    products = tuple(int(s) for s in data["required_products"])
    return PentagramSpec(n, nodes, lines, products)


def constraint_set_to_json(spec: PentagramSpec) -> str:
    return json.dumps(
        {
            "n_particles": spec.n_particles,
            "nodes": [node.render() for node in spec.nodes],
            "lines": [list(line) for line in spec.lines],
            "required_products": list(spec.required_products),
        },
        indent=2,
        sort_keys=True,
    )


def parity_constraints(spec: PentagramSpec | None = None) -> list[ParityConstraint]:
    """The single-spin parity requirements carried by the +I lines.

    For each line with required product +1, the product of the single-spin
    outcomes must equal the multi-spin node's required eigenvalue (taken from
    the -I line it also sits on); over three +-1 outcomes, a product of -1
    means an even number of +1s, and +1 an odd number.
    """
    spec = pentagram() if spec is None else spec
    # eigenvalue each multi-spin node must have: its required product within
    # the unique line of weight-3 nodes
    node_required: dict[int, int] = {}
    for line, product in zip(spec.lines, spec.required_products):
        if all(spec.nodes[i].weight() > 1 for i in line):
            # the -I line fixes the joint eigenvalues only up to the product;
            # the conventional split is +1 everywhere except the last node
            for pos, idx in enumerate(line):
                node_required[idx] = product if pos == len(line) - 1 else 1
    constraints = []
    for line, product in zip(spec.lines, spec.required_products):
        singles = tuple(spec.nodes[i] for i in line if spec.nodes[i].weight() == 1)
        multis = [i for i in line if spec.nodes[i].weight() > 1]
        if len(singles) != 3 or len(multis) != 1:
            continue
        reduced = product * node_required[multis[0]]
        constraints.append(
            ParityConstraint(singles, "even" if reduced == -1 else "odd")
        )
    return constraints


@dataclass(frozen=True)
class LineCheck:
    line: int
    commuting: bool
    product_sign: int  # +-1, or 0 if the product is not +-I
    max_error: float
    matches_required: bool


def verify_line_products(spec: PentagramSpec, tol: float = 1e-12) -> list[LineCheck]:
    """Check, per line, pairwise commutation and the ordered operator product.

    The product is compared entrywise against required_product * I; failures
    are reported, never raised.
    """
    results = []
    for k, (line, required) in enumerate(zip(spec.lines, spec.required_products)):
        ops = spec.line_operators(k)
        commuting = all(
            commutes(a, b) for i, a in enumerate(ops) for b in ops[i + 1 :]
        )
        product = reduce(lambda acc, op: acc @ op.matrix, ops, np.eye(2**spec.n_particles))
        eye = np.eye(2**spec.n_particles)
        err_plus = float(np.abs(product - eye).max())
        err_minus = float(np.abs(product + eye).max())
        if err_plus <= tol or err_minus <= tol:
            sign, err = (1, err_plus) if err_plus <= err_minus else (-1, err_minus)
        else:
            sign, err = 0, min(err_plus, err_minus)
        results.append(
            LineCheck(
                line=k,
                commuting=commuting,
                product_sign=sign,
                max_error=err,
                matches_required=commuting and sign == required,
            )
        )
    return results
