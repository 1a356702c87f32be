"""Round protocols that expose the mixture model's super-deterministic nature.

Each experiment first draws a hidden variable per round (an assignment for
the three-spin setup, a pure state for the two-spin one), then a measurement
setting, then scores the round against the quantum prediction.  A
free-choice (uniform) chooser draws settings from an RNG stream disjoint
from the hidden-variable stream; the super-deterministic (adversarial)
chooser is handed the round's hidden variable and picks a setting it cannot
fail.  With free choice, at most 75% of three-spin rounds can satisfy their
chosen parity line, and a fresh two-spin hidden state is compatible with at
most two of the available directions; the adversarial chooser erases both
effects completely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from . import backend
from .errors import CollinearDirections, EmptyIntersectionNotCertified
from .hilbert import (
    ATOL_ALGEBRA,
    ATOL_VECTOR,
    Operator,
    StateVector,
    sample_commuting,
    singlet_state,
    tensor,
)
from .nogo import (
    Assignment,
    CountEntry,
    FrequencyTable,
    GHZ_OBSERVABLES,
    ghz_satisfaction_table,
)
from .observables import Direction, bell_directions, parity_constraints, spin_observable, qubit_state
from .rng import split

__all__ = [
    "GhzSampler",
    "GhzFixed",
    "GhzSequence",
    "SingletProductSampler",
    "SingletHaarSampler",
    "SingletSequence",
    "Chooser",
    "uniform_chooser",
    "fixed_chooser",
    "adversarial_chooser",
    "RoundRecord",
    "ExperimentReport",
    "run_ghz_rounds",
    "run_singlet_rounds",
    "membership_mask",
    "qm_reference_sample",
    "MinFrequencyResult",
    "min_frequency_audit",
    "ghz_line_predicates",
    "ghz_min_frequency_audit",
    "tight_min_frequency_sequence",
    "ExperimentSpec",
    "experiment_from_json",
    "run_experiment",
]

MAX_DIRECTIONS = 32  # OK sets are carried as uint32 bitmasks


# ---------------------------------------------------------------------------
# Hidden-variable strategies


@dataclass(frozen=True)
class GhzSampler:
    """Fresh uniform assignment each round."""

    kind = "seeded-sampler"

    def codes(self, rounds: int, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, 64, rounds, dtype=np.uint8)

    def describe(self) -> dict:
        return {"setup": "ghz", "kind": "sampler"}


@dataclass(frozen=True)
class GhzFixed:
    """The same assignment every round."""

    code: int
    kind = "fixed-sequence"

    def __post_init__(self):
        if not 0 <= self.code < 64:
            raise ValueError(f"assignment code out of range: {self.code}")

    @classmethod
    def from_assignment(cls, a: Assignment) -> GhzFixed:
        return cls(a.to_code(GHZ_OBSERVABLES))

    def codes(self, rounds: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(rounds, self.code, dtype=np.uint8)

    def describe(self) -> dict:
        return {"setup": "ghz", "kind": "fixed", "code": self.code}


@dataclass(frozen=True)
class GhzSequence:
    """A pre-created assignment sequence, cycled as needed."""

    sequence: tuple[int, ...]
    kind = "fixed-sequence"

    def __post_init__(self):
        if not self.sequence:
            raise ValueError("empty assignment sequence")
        if any(not 0 <= c < 64 for c in self.sequence):
            raise ValueError("assignment codes out of range")

    def codes(self, rounds: int, rng: np.random.Generator) -> np.ndarray:
        return np.resize(np.asarray(self.sequence, dtype=np.uint8), rounds)

    def describe(self) -> dict:
        return {"setup": "ghz", "kind": "sequence", "length": len(self.sequence)}


@dataclass(frozen=True)
class SingletProductSampler:
    """Per round: a random direction from the menu on a random station,
    tensored with a fresh Haar-random qubit on the other one.

    Every such state belongs to the chosen direction's event, so an
    adversarial chooser never has to violate quantum mechanics."""

    kind = "seeded-sampler"

    def states(
        self, rounds: int, directions: Sequence[Direction], rng: np.random.Generator
    ) -> np.ndarray:
        qs = np.stack([qubit_state(d) for d in directions])
        idx = rng.integers(0, len(directions), rounds)
        slot = rng.integers(0, 2, rounds)
        v = rng.standard_normal((rounds, 2)) + 1j * rng.standard_normal((rounds, 2))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        q = qs[idx]
        first = q[:, :, None] * v[:, None, :]  # |d> (x) v
        second = v[:, :, None] * q[:, None, :]  # v (x) |d>
        return np.where((slot == 0)[:, None, None], first, second)

    def describe(self) -> dict:
        return {"setup": "singlet", "kind": "product-sampler"}


@dataclass(frozen=True)
class SingletHaarSampler:
    """Fresh Haar-random pure two-spin state each round (generically it
    belongs to no direction event at all)."""

    kind = "seeded-sampler"

    def states(
        self, rounds: int, directions: Sequence[Direction], rng: np.random.Generator
    ) -> np.ndarray:
        w = rng.standard_normal((rounds, 4)) + 1j * rng.standard_normal((rounds, 4))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        return w.reshape(rounds, 2, 2)

    def describe(self) -> dict:
        return {"setup": "singlet", "kind": "haar-sampler"}


@dataclass(frozen=True)
class SingletSequence:
    """A pre-created sequence of hidden states, cycled as needed."""

    sequence: tuple[StateVector, ...]
    kind = "fixed-sequence"

    def __post_init__(self):
        if not self.sequence:
            raise ValueError("empty state sequence")
        if any(s.dim != 4 for s in self.sequence):
            raise ValueError("singlet hidden states must have dim 4")

    def states(
        self, rounds: int, directions: Sequence[Direction], rng: np.random.Generator
    ) -> np.ndarray:
        stack = np.stack([s.amplitudes.reshape(2, 2) for s in self.sequence])
        reps = -(-rounds // len(self.sequence))
        return np.tile(stack, (reps, 1, 1))[:rounds]

    def describe(self) -> dict:
        return {"setup": "singlet", "kind": "sequence", "length": len(self.sequence)}


# ---------------------------------------------------------------------------
# Setting choosers


@dataclass(frozen=True)
class Chooser:
    """How the per-round measurement setting is picked.

    ``uniform`` draws from its own RNG stream (independent of the hidden
    variable by construction); ``fixed`` always picks one setting;
    ``adversarial`` sees the round's hidden variable first and picks a
    setting that cannot fail, falling back to the first setting when every
    choice fails."""

    method: str
    fixed_setting: int | None = None

    def __post_init__(self):
        if self.method not in ("uniform", "fixed", "adversarial"):
            raise ValueError(f"unknown chooser {self.method!r}")
        if (self.method == "fixed") != (self.fixed_setting is not None):
            raise ValueError("fixed choosers (and only they) need a setting")

    def choose(
        self, ok: np.ndarray, n_settings: int, rng: np.random.Generator
    ) -> np.ndarray:
        """Per-round setting indices; ``ok`` is the (rounds, n_settings)
        boolean table of settings the hidden variable can survive."""
        rounds = ok.shape[0]
        if self.method == "uniform":
            return rng.integers(0, n_settings, rounds, dtype=np.uint8)
        if self.method == "fixed":
            if not 0 <= self.fixed_setting < n_settings:
                raise ValueError(f"fixed setting {self.fixed_setting} out of range")
            return np.full(rounds, self.fixed_setting, dtype=np.uint8)
        return np.argmax(ok, axis=1).astype(np.uint8)

    def describe(self) -> dict:
        if self.method == "fixed":
            return {"method": "fixed", "setting": self.fixed_setting}
        return {"method": self.method}


def uniform_chooser() -> Chooser:
    return Chooser("uniform")


def fixed_chooser(setting: int) -> Chooser:
    return Chooser("fixed", fixed_setting=setting)


def adversarial_chooser() -> Chooser:
    return Chooser("adversarial")


# ---------------------------------------------------------------------------
# Round protocols


@dataclass(frozen=True)
class RoundRecord:
    round: int
    setting: int
    outcomes: tuple[int, ...]
    qm_consistent: bool


@dataclass(frozen=True)
class ExperimentReport:
    setup: str
    rounds: int
    seed: int
    strategy: Mapping[str, object]
    chooser: Mapping[str, object]
    per_setting: FrequencyTable
    violations: int
    records: tuple[RoundRecord, ...] | None = None

    @property
    def violation_frequency(self) -> float:
        return self.violations / self.rounds

    @property
    def satisfaction_frequency(self) -> float:
        return 1.0 - self.violation_frequency

    def to_dict(self) -> dict:
        out = {
            "setup": self.setup,
            "rounds": self.rounds,
            "seed": self.seed,
            "strategy": dict(self.strategy),
            "chooser": dict(self.chooser),
            "per_setting": self.per_setting.to_dict(),
            "violations": self.violations,
            "violation_frequency": self.violation_frequency,
            "satisfaction_frequency": self.satisfaction_frequency,
        }
        if self.records is not None:
            out["records"] = [
                {
                    "round": r.round,
                    "setting": r.setting,
                    "outcomes": list(r.outcomes),
                    "qm_consistent": r.qm_consistent,
                }
                for r in self.records
            ]
        return out


@dataclass(frozen=True)
class _GhzTables:
    sat: np.ndarray
    line_bits: tuple[tuple[int, ...], ...]


def _ghz_tables() -> _GhzTables:
    sat = ghz_satisfaction_table()
    bits = []
    for constraint in parity_constraints():
        bits.append(tuple(GHZ_OBSERVABLES.index(obs) for obs in constraint.observables))
    return _GhzTables(sat=sat, line_bits=tuple(bits))


def run_ghz_rounds(
    strategy,
    chooser: Chooser,
    rounds: int,
    seed: int,
    threads: int = 1,
    collect_records: bool = False,
) -> ExperimentReport:
    """Draw an assignment per round, choose one of the four parity lines,
    and score the assignment's parity on that line.

    Settings are reported 1-based ("1".."4"); the violation target per
    setting is 0, which is what quantum mechanics predicts for the prepared
    state."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    strategy_rng, chooser_rng = split(seed, 2)
    tables = _ghz_tables()
    codes = strategy.codes(rounds, strategy_rng)
    lines = chooser.choose(tables.sat[codes].astype(bool), 4, chooser_rng)
    events, violations = backend.tally_chunked(
        backend.kernels.ghz_line_tally, [codes, lines], rounds, threads, sat=tables.sat
    )
    table = FrequencyTable(
        counts={
            str(k + 1): CountEntry(events=int(events[k]), hits=int(violations[k]))
            for k in range(4)
        },
        targets={str(k + 1): 0.0 for k in range(4)},
    )
    records = None
    if collect_records:
        sat_rows = tables.sat[codes, lines]
        records = tuple(
            RoundRecord(
                round=i,
                setting=int(lines[i]) + 1,
                outcomes=tuple(
                    1 if (int(codes[i]) >> bit) & 1 else -1
                    for bit in tables.line_bits[int(lines[i])]
                ),
                qm_consistent=bool(sat_rows[i]),
            )
            for i in range(rounds)
        )
    return ExperimentReport(
        setup="ghz",
        rounds=rounds,
        seed=seed,
        strategy=strategy.describe(),
        chooser=chooser.describe(),
        per_setting=table,
        violations=int(violations.sum()),
        records=records,
    )


def membership_mask(
    states: np.ndarray, directions: Sequence[Direction], tol: float = ATOL_VECTOR
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact direction-event membership for a batch of two-spin states.

    ``states`` is (rounds, 2, 2).  Returns (ok, first, second): ``first`` and
    ``second`` are the per-station form tests (is the state |d> (x) v,
    resp. v (x) |d>) and ``ok`` their disjunction, each (rounds, n_dirs)."""
    n_dirs = len(directions)
    first = np.empty((states.shape[0], n_dirs), dtype=bool)
    second = np.empty_like(first)
    for j, d in enumerate(directions):
        q = qubit_state(d)
        residual = np.eye(2) - np.outer(q, q.conj())
        r1 = np.einsum("ab,nbc->nac", residual, states)
        r2 = np.einsum("ab,ncb->nac", residual, states)
        first[:, j] = np.sqrt((np.abs(r1) ** 2).sum(axis=(1, 2))) < tol
        second[:, j] = np.sqrt((np.abs(r2) ** 2).sum(axis=(1, 2))) < tol
    return first | second, first, second


def _validate_directions(directions: Sequence[Direction]):
    if len(directions) < 3:
        raise ValueError("need at least 3 directions")
    if len(directions) > MAX_DIRECTIONS:
        raise ValueError(f"at most {MAX_DIRECTIONS} directions supported")
    for i, d in enumerate(directions):
        for e in directions[i + 1 :]:
            if abs(abs(d.dot(e)) - 1.0) < ATOL_ALGEBRA:
                raise CollinearDirections(f"directions {d} and {e} are collinear")


def run_singlet_rounds(
    strategy,
    directions: Sequence[Direction],
    chooser: Chooser,
    rounds: int,
    seed: int,
    threads: int = 1,
    collect_records: bool = False,
) -> ExperimentReport:
    """Draw a hidden pure state per round; both stations measure the chosen
    direction.  The round violates quantum mechanics iff the state lies in
    neither station's form for that direction (both "is spin up" tests
    answer no, where anticorrelation demands exactly one yes)."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    _validate_directions(directions)
    n_dirs = len(directions)
    strategy_rng, chooser_rng = split(seed, 2)
    states = strategy.states(rounds, directions, strategy_rng)
    ok, first, second = membership_mask(states, directions)
    choices = chooser.choose(ok, n_dirs, chooser_rng)
    weights = (1 << np.arange(n_dirs, dtype=np.uint32)).astype(np.uint32)
    masks = (ok.astype(np.uint32) @ weights).astype(np.uint32)
    events, violations = backend.tally_chunked(
        backend.kernels.masked_choice_tally, [masks, choices], rounds, threads, n_settings=n_dirs
    )
    table = FrequencyTable(
        counts={
            str(k): CountEntry(events=int(events[k]), hits=int(violations[k]))
            for k in range(n_dirs)
        },
        targets={str(k): 0.0 for k in range(n_dirs)},
    )
    records = None
    if collect_records:
        rows = np.arange(rounds)
        t1 = first[rows, choices]
        t2 = second[rows, choices]
        okc = ok[rows, choices]
        records = tuple(
            RoundRecord(
                round=i,
                setting=int(choices[i]),
                outcomes=(1 if t1[i] else -1, 1 if t2[i] else -1),
                qm_consistent=bool(okc[i]),
            )
            for i in range(rounds)
        )
    return ExperimentReport(
        setup="singlet",
        rounds=rounds,
        seed=seed,
        strategy=strategy.describe(),
        chooser=chooser.describe(),
        per_setting=table,
        violations=int(violations.sum()),
        records=records,
    )


# ---------------------------------------------------------------------------
# Genuine Born-rule reference sampler


def qm_reference_sample(
    pairs: int,
    seed: int,
    directions: Sequence[Direction] | None = None,
    threads: int = 1,
) -> FrequencyTable:
    """Sample true singlet statistics for every unordered direction pair.

    Each pair's outcomes come from joint Born sampling of the two commuting
    station observables on the singlet; the table reports equal-outcome
    frequencies against the sin^2(theta/2) targets.  Equal directions give
    frequency 0 exactly in every sample."""
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    dirs = tuple(bell_directions() if directions is None else directions)
    names = [chr(ord("a") + i) for i in range(len(dirs))]
    index_pairs = [
        (i, j) for i in range(len(dirs)) for j in range(len(dirs)) if i <= j
    ]
    streams = split(seed, len(index_pairs))
    psi = singlet_state()
    eye = Operator(np.eye(2))
    counts, targets = {}, {}
    for (i, j), stream in zip(index_pairs, streams):
        ops = [tensor(spin_observable(dirs[i]), eye), tensor(eye, spin_observable(dirs[j]))]
        sub_seed = int(stream.integers(0, 2**63))
        outcomes = sample_commuting(psi, ops, shots=pairs, seed=sub_seed)
        equal = backend.tally_chunked(
            backend.kernels.equal_count, [outcomes[:, 0], outcomes[:, 1]], pairs, threads
        )
        key = f"{names[i]}:{names[j]}"
        counts[key] = CountEntry(events=pairs, hits=int(equal))
        # sin^2(theta/2); exactly 0 for a station pair measuring one direction
        targets[key] = 0.0 if i == j else (1.0 - dirs[i].dot(dirs[j])) / 2.0
    return FrequencyTable(counts=counts, targets=targets)


# ---------------------------------------------------------------------------
# Law-of-large-numbers failure audit

Predicate = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MinFrequencyResult:
    frequencies: tuple[float, float, float, float]
    min_frequency: float
    counts: tuple[int, int, int, int]
    items: int

    def to_dict(self) -> dict:
        return {
            "frequencies": list(self.frequencies),
            "min_frequency": self.min_frequency,
            "counts": list(self.counts),
            "items": self.items,
        }


def min_frequency_audit(
    predicates: Sequence[Predicate],
    seq,
    universe=None,
    certified: bool = False,
) -> MinFrequencyResult:
    """Frequencies of four properties with empty common intersection.

    Because every item fails at least one predicate, the four frequencies
    sum to at most 3, so the smallest is at most 0.75 for every sequence.
    The empty intersection must be certified: either pass a finite
    ``universe`` (checked exhaustively, and the sequence must draw from it)
    or set ``certified=True`` to vouch for it.
    """
    if len(predicates) != 4:
        raise ValueError("exactly four predicates required")
    seq = np.asarray(seq)
    if seq.size == 0:
        raise ValueError("empty sequence")
    if universe is not None:
        universe = np.asarray(universe)
        joint = np.ones(universe.shape[0], dtype=bool)
        for pred in predicates:
            joint &= np.asarray(pred(universe), dtype=bool)
        if joint.any():
            raise EmptyIntersectionNotCertified(
                "universe check failed: the four predicates share an item"
            )
        if not np.isin(seq, universe).all():
            raise EmptyIntersectionNotCertified(
                "sequence contains items outside the certified universe"
            )
    elif not certified:
        raise EmptyIntersectionNotCertified(
            "pass a finite universe or certified=True to vouch for emptiness"
        )
    n = seq.shape[0]
    counts = tuple(int(np.count_nonzero(pred(seq))) for pred in predicates)
    frequencies = tuple(c / n for c in counts)
    return MinFrequencyResult(
        frequencies=frequencies,
        min_frequency=min(frequencies),
        counts=counts,
        items=n,
    )


def ghz_line_predicates() -> list[Predicate]:
    """Four vectorized predicates on assignment codes: "satisfies line k"."""
    sat = ghz_satisfaction_table()

    def make(k: int) -> Predicate:
        def predicate(codes: np.ndarray) -> np.ndarray:
            return sat[np.asarray(codes, dtype=np.intp), k].astype(bool)

        return predicate

    return [make(k) for k in range(4)]


def ghz_min_frequency_audit(codes) -> MinFrequencyResult:
    """min_frequency_audit over the GHZ line predicates, certified by
    exhausting the 64-assignment universe."""
    return min_frequency_audit(ghz_line_predicates(), codes, universe=np.arange(64))


def tight_min_frequency_sequence(blocks: int = 1) -> np.ndarray:
    """A sequence hitting the 0.75 bound exactly: blocks of four
    assignments, each violating exactly one distinct line."""
    sat = ghz_satisfaction_table()
    picks = []
    for k in range(4):
        exact = np.flatnonzero((sat.sum(axis=1) == 3) & (sat[:, k] == 0))
        picks.append(int(exact[0]))
    return np.tile(np.array(picks, dtype=np.uint8), blocks)


# ---------------------------------------------------------------------------
# JSON experiment specifications


@dataclass(frozen=True)
class ExperimentSpec:
    setup: str
    rounds: int
    seed: int
    strategy: object
    chooser: Chooser
    directions: tuple[Direction, ...] = field(default_factory=tuple)


def _strategy_from_json(setup: str, data: Mapping) -> object:
    kind = data.get("kind")
    if setup == "ghz":
        if kind == "sampler":
            return GhzSampler()
        if kind == "fixed":
            if "values" in data:
                values = {
                    obs: int(data["values"][obs.render()]) for obs in GHZ_OBSERVABLES
                }
                return GhzFixed.from_assignment(Assignment(values))
            return GhzFixed(int(data["code"]))
        if kind == "sequence":
            return GhzSequence(tuple(int(c) for c in data["codes"]))
    else:
        if kind == "product-sampler":
            return SingletProductSampler()
        if kind == "haar-sampler":
            return SingletHaarSampler()
        if kind == "sequence":
            return SingletSequence(
                tuple(StateVector.from_components(s) for s in data["states"])
            )
    raise ValueError(f"unknown {setup} strategy kind {kind!r}")


def _chooser_from_json(data) -> Chooser:
    if isinstance(data, str):
        return Chooser(data)
    if isinstance(data, Mapping) and set(data) == {"fixed"}:
        return Chooser("fixed", fixed_setting=int(data["fixed"]))
    raise ValueError(f"unknown chooser spec {data!r}")


_EXPERIMENT_KEYS = {"setup", "rounds", "seed", "strategy", "chooser", "directions"}


def experiment_from_json(text: str) -> ExperimentSpec:
    """Parse ``{"setup": "ghz"|"singlet", "rounds": ..., "seed": ...,
    "strategy": {...}, "chooser": ..., "directions": [[x,y,z]...]}``;
    unknown keys are rejected."""
    data = json.loads(text)
    unknown = set(data) - _EXPERIMENT_KEYS
    if unknown:
        raise ValueError(f"unknown experiment keys: {sorted(unknown)}")
    setup = data["setup"]
    if setup not in ("ghz", "singlet"):
        raise ValueError(f"unknown setup {setup!r}")
    directions = tuple(
        Direction.from_array(v) for v in data.get("directions", [])
    )
    if setup == "singlet" and not directions:
        directions = bell_directions()
    return ExperimentSpec(
        setup=setup,
        rounds=int(data["rounds"]),
        seed=int(data["seed"]),
        strategy=_strategy_from_json(setup, data["strategy"]),
        chooser=_chooser_from_json(data["chooser"]),
        directions=directions,
    )


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> ExperimentReport:
    if spec.setup == "ghz":
        chooser = spec.chooser
        if chooser.method == "fixed":
            # lines are 1-based on the wire
            chooser = Chooser("fixed", fixed_setting=chooser.fixed_setting - 1)
        return run_ghz_rounds(spec.strategy, chooser, spec.rounds, spec.seed, threads)
    return run_singlet_rounds(
        spec.strategy, spec.directions, spec.chooser, spec.rounds, spec.seed, threads
    )
