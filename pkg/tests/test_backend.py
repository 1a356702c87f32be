import numpy as np
import pytest

from bellkit import backend
from bellkit.nogo import ghz_satisfaction_table

HAS_COMPILED = "compiled" in backend.available_backends()

needs_compiled = pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernels not built")


def _random_inputs(seed, n=50_000):
    rng = np.random.default_rng(seed)
    return {
        "codes": rng.integers(0, 64, n, dtype=np.uint8),
        "lines": rng.integers(0, 4, n, dtype=np.uint8),
        "masks": rng.integers(0, 2**10, n, dtype=np.uint32),
        "choices": rng.integers(0, 10, n, dtype=np.uint8),
        "a": rng.choice(np.array([-1, 1], dtype=np.int8), n),
        "b": rng.choice(np.array([-1, 1], dtype=np.int8), n),
        "hist_codes": rng.integers(0, 64, n, dtype=np.uint16),
    }


def test_python_backend_selectable():
    mod = backend.get_backend("python")
    assert mod.BACKEND_NAME == "python"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        backend.get_backend("fortran")


@needs_compiled
def test_backends_agree_on_all_kernels():
    py = backend.get_backend("python")
    cy = backend.get_backend("compiled")
    sat = ghz_satisfaction_table()
    for seed in range(5):
        data = _random_inputs(seed)
        for lhs, rhs in zip(
            py.ghz_line_tally(data["codes"], data["lines"], sat),
            cy.ghz_line_tally(data["codes"], data["lines"], sat),
        ):
            assert np.array_equal(lhs, rhs)
        for lhs, rhs in zip(
            py.masked_choice_tally(data["masks"], data["choices"], 10),
            cy.masked_choice_tally(data["masks"], data["choices"], 10),
        ):
            assert np.array_equal(lhs, rhs)
        assert py.equal_count(data["a"], data["b"]) == cy.equal_count(data["a"], data["b"])
        assert np.array_equal(
            py.code_histogram(data["hist_codes"], 64),
            cy.code_histogram(data["hist_codes"], 64),
        )


@pytest.mark.parametrize("name", backend.available_backends())
@pytest.mark.parametrize("threads", [1, 2, 3, 7])
def test_chunked_tally_matches_single_pass(name, threads):
    kernels = backend.get_backend(name)
    sat = ghz_satisfaction_table()
    data = _random_inputs(99, n=10_001)
    whole = kernels.ghz_line_tally(data["codes"], data["lines"], sat)
    chunked = backend.tally_chunked(
        kernels.ghz_line_tally, [data["codes"], data["lines"]], 10_001, threads, sat=sat
    )
    for lhs, rhs in zip(whole, chunked):
        assert np.array_equal(lhs, rhs)
    assert backend.tally_chunked(
        kernels.equal_count, [data["a"], data["b"]], 10_001, threads
    ) == kernels.equal_count(data["a"], data["b"])


def test_kernel_outputs_are_int64():
    kernels = backend.get_backend("python")
    data = _random_inputs(3, n=100)
    events, violations = kernels.ghz_line_tally(
        data["codes"], data["lines"], ghz_satisfaction_table()
    )
    assert events.dtype == np.int64 and violations.dtype == np.int64
    assert events.sum() == 100


@needs_compiled
def test_cli_reports_byte_identical_across_backends(tmp_path):
    # the backend binds at import, so force it per subprocess
    import os
    import subprocess
    import sys

    outputs = []
    for name in ("python", "compiled"):
        out = tmp_path / f"{name}.json"
        env = dict(os.environ, BELLKIT_KERNELS=name)
        subprocess.run(
            [sys.executable, "-m", "bellkit.cli", "run-ghz", "--rounds", "20000",
             "--seed", "5", "--out", str(out)],
            check=True,
            env=env,
        )
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_env_var_drives_default_selection(monkeypatch):
    monkeypatch.setenv("BELLKIT_KERNELS", "python")
    assert backend.get_backend(None).BACKEND_NAME == "python"
    monkeypatch.setenv("BELLKIT_KERNELS", "nonsense")
    with pytest.raises(ValueError):
        backend.get_backend(None)
    monkeypatch.delenv("BELLKIT_KERNELS")
    assert backend.get_backend(None).BACKEND_NAME in ("python", "compiled")
