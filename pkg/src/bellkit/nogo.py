"""Exhaustive and analytic verifiers for the GHZ and Bell no-go arguments.

The GHZ side enumerates all 64 +-1 assignments to the six single-spin tests
and confirms none satisfies the four parity requirements.  The Bell side
audits finite assignment sequences against the singlet targets (3/4 equal-
outcome frequency for distinct 120-degree directions, 0 for equal ones) and
decides, as a tiny linear feasibility problem, that no mixture of the 64
assignments comes within 4% of those targets.  A sampling auditor checks
candidate +-1 sphere functions against the cos^2(theta/2) same-value law.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import backend
from ._linprog import solve_lp
from .errors import AntipodalViolation, IncompleteAssignment
from .hilbert import (
    Projection,
    StateVector,
    born_probability,
    simultaneous_eigenstate,
    singlet_state,
    tensor,
)
from .observables import (
    Direction,
    PauliString,
    parity_constraints,
    parse_pauli,
    pentagram,
    spin_observable,
)
from .rng import generator

__all__ = [
    "Observable",
    "Assignment",
    "CountEntry",
    "FrequencyTable",
    "GHZ_OBSERVABLES",
    "BELL_DIRECTION_NAMES",
    "BELL_OBSERVABLES",
    "ghz_state",
    "ghz_constraint_check",
    "ghz_satisfaction_table",
    "GhzSearchResult",
    "ghz_exhaustive_search",
    "singlet_same_probability",
    "singlet_same_probability_born",
    "ChosenPairs",
    "bell_chosen_pairs",
    "BellAudit",
    "bell_frequency_audit",
    "bell_frequency_audit_codes",
    "bell_equality_matrix",
    "HullCheck",
    "bell_hull_infeasibility",
    "bell_hull_threshold",
    "SphereAudit",
    "spin_half_candidate_audit",
    "hemisphere_candidate",
    "constant_candidate",
    "write_assignments_csv",
    "read_assignments_csv",
]

Observable = PauliString | str

# the six single-spin GHZ tests, in code-bit order (bit k set <-> value +1)
GHZ_OBSERVABLES: tuple[PauliString, ...] = tuple(
    parse_pauli(s, n_particles=3) for s in ("X1", "Y1", "X2", "Y2", "X3", "Y3")
)

BELL_DIRECTION_NAMES = ("a", "b", "c")
# station-1 then station-2 values per direction, in code-bit order
BELL_OBSERVABLES: tuple[str, ...] = tuple(
    f"s{k}_{d}" for k in (1, 2) for d in BELL_DIRECTION_NAMES
)

_BELL_PAIR_KEYS = tuple(f"{i}:{j}" for i in BELL_DIRECTION_NAMES for j in BELL_DIRECTION_NAMES)


@dataclass(frozen=True)
class Assignment:
    """A total map from a finite observable set to +-1 (the hidden variable)."""

    values: Mapping[Observable, int]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))
        for obs, v in self.values.items():
            if v not in (1, -1):
                raise ValueError(f"assignment value for {obs} must be +-1, got {v!r}")

    def __getitem__(self, obs: Observable) -> int:
        return self.values[obs]

    def covers(self, observables: Iterable[Observable]) -> bool:
        return all(obs in self.values for obs in observables)

    @classmethod
    def from_code(cls, code: int, observables: Sequence[Observable]) -> Assignment:
        """Decode a bitmask over ``observables``; set bit k means value +1."""
        if not 0 <= code < 2 ** len(observables):
            raise ValueError(f"code {code} out of range for {len(observables)} observables")
        return cls({obs: 1 if (code >> k) & 1 else -1 for k, obs in enumerate(observables)})

    def to_code(self, observables: Sequence[Observable]) -> int:
        code = 0
        for k, obs in enumerate(observables):
            if obs not in self.values:
                raise IncompleteAssignment(f"assignment does not cover {obs}")
            if self.values[obs] == 1:
                code |= 1 << k
        return code


@dataclass(frozen=True)
class CountEntry:
    events: int
    hits: int

    def __post_init__(self):
        if not 0 <= self.hits <= self.events:
            raise ValueError(f"need 0 <= hits <= events, got {self.hits}/{self.events}")

    @property
    def frequency(self) -> float | None:
        return self.hits / self.events if self.events > 0 else None


@dataclass(frozen=True)
class FrequencyTable:
    """Per-key counts with optional target frequencies."""

    counts: Mapping[str, CountEntry]
    targets: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(self.counts))
        object.__setattr__(self, "targets", dict(self.targets))

    def frequency(self, key: str) -> float | None:
        return self.counts[key].frequency

    def deviation(self, key: str) -> float | None:
        f = self.frequency(key)
        if f is None or key not in self.targets:
            return None
        return abs(f - self.targets[key])

    def max_deviation(self) -> tuple[float, str]:
        best = None
        for key in self.counts:
            d = self.deviation(key)
            if d is not None and (best is None or d > best[0]):
                best = (d, key)
        if best is None:
            raise ValueError("no keys with both counts and targets")
        return best

    def to_dict(self) -> dict:
        out = {}
        for key, entry in self.counts.items():
            row = {"events": entry.events, "hits": entry.hits}
            if entry.events > 0:
                row["frequency"] = entry.frequency
            if key in self.targets:
                row["target"] = self.targets[key]
                if entry.events > 0:
                    row["deviation"] = self.deviation(key)
            out[key] = row
        return out

    def to_rows(self) -> list[list]:
        rows = [["key", "events", "hits", "frequency", "target", "deviation"]]
        for key, entry in self.counts.items():
            rows.append(
                [
                    key,
                    entry.events,
                    entry.hits,
                    entry.frequency,
                    self.targets.get(key),
                    self.deviation(key) if key in self.targets else None,
                ]
            )
        return rows


# ---------------------------------------------------------------------------
# GHZ side


def ghz_state() -> StateVector:
    """The joint eigenstate of the horizontal-line operators.

    Eigenvalue -1 on the node that carries the -1 label, +1 on the rest;
    the eigenspace is one-dimensional.
    """
    spec = pentagram()
    line = spec.lines[-1]
    ops = spec.line_operators(len(spec.lines) - 1)
    eigenvalues = [1] * (len(line) - 1) + [spec.required_products[-1]]
    state, _ = simultaneous_eigenstate(ops, eigenvalues)
    return state


def ghz_constraint_check(a: Assignment) -> set[int]:
    """The set of violated parity requirements, numbered 1..4."""
    if not a.covers(GHZ_OBSERVABLES):
        missing = [str(o) for o in GHZ_OBSERVABLES if o not in a.values]
        raise IncompleteAssignment(f"assignment misses {missing}")
    violated = set()
    for k, constraint in enumerate(parity_constraints(), start=1):
        if not constraint.satisfied_by(a.values):
            violated.add(k)
    return violated


@lru_cache(maxsize=1)
def ghz_satisfaction_table() -> np.ndarray:
    """(64, 4) uint8 table: entry [code, k] is 1 iff requirement k+1 holds."""
    table = np.zeros((64, 4), dtype=np.uint8)
    for code in range(64):
        violated = ghz_constraint_check(Assignment.from_code(code, GHZ_OBSERVABLES))
        for k in range(4):
            table[code, k] = 0 if (k + 1) in violated else 1
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class GhzSearchResult:
    satisfying_count: int
    per_assignment: tuple[frozenset[int], ...]

    def violation_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for violated in self.per_assignment:
            hist[len(violated)] = hist.get(len(violated), 0) + 1
        return dict(sorted(hist.items()))


def ghz_exhaustive_search() -> GhzSearchResult:
    """Enumerate all 64 assignments; none satisfies all four requirements."""
    per = tuple(
        frozenset(ghz_constraint_check(Assignment.from_code(code, GHZ_OBSERVABLES)))
        for code in range(64)
    )
    return GhzSearchResult(
        satisfying_count=sum(1 for v in per if not v), per_assignment=per
    )


# ---------------------------------------------------------------------------
# Bell side


def singlet_same_probability(theta: float) -> float:
    """Probability of equal singlet outcomes at relative angle theta: sin^2(theta/2)."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must be in [0, pi], got {theta!r}")
    return math.sin(theta / 2.0) ** 2


def singlet_same_probability_born(d1: Direction, d2: Direction) -> float:
    """The same probability computed from Born projectors on the singlet."""
    psi = singlet_state()
    eye = Projection.identity(2)
    total = 0.0
    for sign in (1, -1):
        p1 = Projection((np.eye(2) + sign * spin_observable(d1).matrix) / 2)
        p2 = Projection((np.eye(2) + sign * spin_observable(d2).matrix) / 2)
        joint = Projection(tensor(p1, eye).matrix @ tensor(eye, p2).matrix)
        total += born_probability(psi, joint)
    return total


@dataclass(frozen=True)
class ChosenPairs:
    """Ordered direction pairs (i, j) with v(s1_i) != v(s2_j), plus any
    anticorrelation failures (directions where v(s2_i) != -v(s1_i))."""

    pairs: frozenset[tuple[str, str]]
    star_violations: tuple[str, ...]

    @property
    def respects_anticorrelation(self) -> bool:
        return not self.star_violations


def bell_chosen_pairs(a: Assignment) -> ChosenPairs:
    """Find the mismatched cross pairs of an assignment.

    Anticorrelation failures are reported in the result rather than raised,
    so audits can count them.  For every anticorrelation-respecting
    assignment at least one pair is chosen.
    """
    if not a.covers(BELL_OBSERVABLES):
        missing = [o for o in BELL_OBSERVABLES if o not in a.values]
        raise IncompleteAssignment(f"assignment misses {missing}")
    violations = tuple(
        d for d in BELL_DIRECTION_NAMES if a[f"s2_{d}"] != -a[f"s1_{d}"]
    )
    pairs = frozenset(
        (i, j)
        for i in BELL_DIRECTION_NAMES
        for j in BELL_DIRECTION_NAMES
        if i != j and a[f"s1_{i}"] != a[f"s2_{j}"]
    )
    return ChosenPairs(pairs=pairs, star_violations=violations)


@lru_cache(maxsize=1)
def bell_equality_matrix() -> np.ndarray:
    """(64, 9) int64 matrix: entry [code, 3i+j] is 1 iff v(s1_i) == v(s2_j)."""
    eq = np.zeros((64, 9), dtype=np.int64)
    for code in range(64):
        for i in range(3):
            for j in range(3):
                eq[code, 3 * i + j] = int(((code >> i) & 1) == ((code >> (3 + j)) & 1))
    eq.setflags(write=False)
    return eq


def _bell_targets() -> dict[str, float]:
    return {
        key: 0.0 if key[0] == key[2] else 0.75 for key in _BELL_PAIR_KEYS
    }


@dataclass(frozen=True)
class BellAudit:
    table: FrequencyTable
    max_deviation: float
    witness: str

    def to_dict(self) -> dict:
        return {
            "table": self.table.to_dict(),
            "max_deviation": self.max_deviation,
            "witness": self.witness,
        }


def bell_frequency_audit_codes(codes: np.ndarray) -> BellAudit:
    """Audit a sequence given as an array of 6-bit assignment codes."""
    codes = np.asarray(codes)
    if codes.size == 0:
        raise ValueError("empty assignment sequence")
    hist = backend.kernels.code_histogram(codes, 64)
    hits = hist @ bell_equality_matrix()
    n = int(hist.sum())
    targets = _bell_targets()
    counts = {
        key: CountEntry(events=n, hits=int(h)) for key, h in zip(_BELL_PAIR_KEYS, hits)
    }
    table = FrequencyTable(counts=counts, targets=targets)
    deviation, witness = table.max_deviation()
    return BellAudit(table=table, max_deviation=deviation, witness=witness)


def bell_frequency_audit(seq: Sequence[Assignment]) -> BellAudit:
    """Compare a sequence's nine pair frequencies against the singlet targets.

    Targets are 3/4 for distinct directions and 0 for equal ones; by the
    counting argument over the 64 possible assignments, the largest absolute
    deviation is at least 0.04 for every sequence.
    """
    if len(seq) == 0:
        raise ValueError("empty assignment sequence")
    codes = np.fromiter(
        (a.to_code(BELL_OBSERVABLES) for a in seq), dtype=np.uint16, count=len(seq)
    )
    return bell_frequency_audit_codes(codes)


@dataclass(frozen=True)
class HullCheck:
    epsilon: float
    feasible: bool


def bell_hull_infeasibility(epsilon: float) -> HullCheck:
    """Can any mixture of the 64 assignments sit within epsilon (max-norm)
    of the nine singlet target frequencies?

    Solved as a linear feasibility problem over the 64 mixture weights.
    """
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon must be in [0, 1), got {epsilon!r}")
    vertices = bell_equality_matrix().astype(float)  # (64, 9)
    targets = np.array([_bell_targets()[k] for k in _BELL_PAIR_KEYS])
    a_ub = np.vstack([vertices.T, -vertices.T])
    b_ub = np.concatenate([targets + epsilon, -(targets - epsilon)])
    result = solve_lp(
        np.zeros(64), a_ub=a_ub, b_ub=b_ub, a_eq=np.ones((1, 64)), b_eq=[1.0]
    )
    return HullCheck(epsilon=epsilon, feasible=result.status == "optimal")


def bell_hull_threshold(tol: float = 1e-7) -> float:
    """The epsilon where feasibility flips, located by bisection."""
    lo, hi = 0.0, 1.0 - 1e-12
    if bell_hull_infeasibility(hi).feasible is False:
        raise ArithmeticError("hull unexpectedly infeasible at epsilon ~ 1")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if bell_hull_infeasibility(mid).feasible:
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# Spin-1/2 candidate auditor

Candidate = Callable[[np.ndarray], np.ndarray]


def hemisphere_candidate(axis: Direction | None = None) -> Candidate:
    """sign(v . axis) as a vectorized +-1 function on the sphere."""
    n = np.array([0.0, 0.0, 1.0]) if axis is None else axis.to_array()

    def candidate(points: np.ndarray) -> np.ndarray:
        return np.where(points @ n >= 0.0, 1, -1).astype(np.int8)

    return candidate


def constant_candidate(value: int = 1) -> Candidate:
    """A constant +-1 function; fails the antipodal oddness check."""

    def candidate(points: np.ndarray) -> np.ndarray:
        return np.full(points.shape[0], value, dtype=np.int8)

    return candidate


def _sample_theta_pairs(
    theta: float, samples: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """(x, y) with x uniform on the sphere and y uniform on the theta-circle
    around x: a random direction, then a random equally-inclined second one."""
    x = rng.standard_normal((samples, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    # frame completion: the standard basis vector least aligned with x
    pick = np.argmin(np.abs(x), axis=1)
    e = np.eye(3)[pick]
    u = e - (np.sum(e * x, axis=1, keepdims=True)) * x
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v = np.cross(x, u)
    phi = rng.uniform(0.0, 2.0 * math.pi, samples)
    y = (
        math.cos(theta) * x
        + math.sin(theta) * (np.cos(phi)[:, None] * u + np.sin(phi)[:, None] * v)
    )
    return x, y


@dataclass(frozen=True)
class SphereAudit:
    estimate: float
    target: float
    z_score: float
    samples: int

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "target": self.target,
            "z_score": self.z_score,
            "samples": self.samples,
        }


def spin_half_candidate_audit(
    candidate: Candidate,
    theta: float,
    samples: int,
    seed: int,
    threads: int = 1,
) -> SphereAudit:
    """Estimate a candidate's same-value frequency on theta-circles.

    A function with the spin-1/2 property would give cos^2(theta/2); the
    z-score measures the sampled estimate against that target using the
    binomial standard error.  Candidates must be odd under the antipodal map
    (checked on every sampled base point) and take (n, 3) direction arrays.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta must be in (0, pi), got {theta!r}")
    x, y = _sample_theta_pairs(theta, samples, generator(seed))
    sx = np.asarray(candidate(x), dtype=np.int8)
    if not np.array_equal(np.asarray(candidate(-x), dtype=np.int8), -sx):
        raise AntipodalViolation("candidate is not odd under the antipodal map")
    sy = np.asarray(candidate(y), dtype=np.int8)
    matches = backend.tally_chunked(backend.kernels.equal_count, [sx, sy], samples, threads)
    estimate = matches / samples
    target = math.cos(theta / 2.0) ** 2
    stderr = math.sqrt(target * (1.0 - target) / samples)
    return SphereAudit(
        estimate=estimate,
        target=target,
        z_score=(estimate - target) / stderr,
        samples=samples,
    )


# ---------------------------------------------------------------------------
# Assignment sequences as CSV


def write_assignments_csv(path, seq: Sequence[Assignment], observables=None):
    """One row per assignment; columns named by canonical observable rendering."""
    if len(seq) == 0:
        raise ValueError("empty assignment sequence")
    if observables is None:
        observables = tuple(seq[0].values.keys())
    header = [o.render() if isinstance(o, PauliString) else str(o) for o in observables]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for a in seq:
            writer.writerow([a[o] for o in observables])


def read_assignments_csv(path) -> list[Assignment]:
    """Inverse of write_assignments_csv.

    Column names that parse as Pauli strings become PauliString keys (with
    n_particles equal to the largest index in the header); anything else
    stays a plain string label.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[int(cell) for cell in row] for row in reader if row]
    parsed: list[PauliString | None] = []
    for name in header:
        try:
            parsed.append(parse_pauli(name))
        except ValueError:
            parsed.append(None)
    n = max((p.n_particles for p in parsed if p is not None), default=0)
    keys: list[Observable] = [
        parse_pauli(name, n_particles=n) if p is not None else name
        for name, p in zip(header, parsed)
    ]
    return [Assignment(dict(zip(keys, row))) for row in rows]
