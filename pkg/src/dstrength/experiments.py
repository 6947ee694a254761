"""Numerical campaigns: separable sweeps, uniform-ensemble limits, decay studies.

The headline experiment enumerates two-qubit separable ensembles on a
deterministic angle grid (or a seeded random sample), evaluates the
normalized discriminating strength DS/sin^2(lambda) of every state through
the batched kernel, and histograms the results.  Local-unitary freedom is
removed up front by gauge fixing: the first A and B Bloch vectors point at
+z and the second A vector lies in the xz half-plane.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from .discrimination import chernoff_decay_check, chernoff_overlap
from .linalg import haar_random_unitary, partial_trace_b, random_density_matrix, kron
from .measures import OptimizerOptions, ds_general, ds_qubit_qudit, rotate_local
from .states import cq_state, uniform_bloch_axes
from .types import BipartiteState, Spectrum

_CHUNK = 1 << 16
_HIST_BINS = 100


def threads_from_env() -> int:
    """Worker count from DSTRENGTH_THREADS (unset -> 1, 0 -> auto)."""
    raw = os.environ.get("DSTRENGTH_THREADS", "").strip()
    if not raw:
        return 1
    n = int(raw)
    if n < 0:
        raise ValueError("DSTRENGTH_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# separable sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    """Grid/sampling plan for the two-qubit separable sweep."""

    n: int                      # ensemble size, 2..4
    resolution: int             # grid points per free angle
    lam: float = math.pi / 2
    seed: int = 0
    max_states: int = 20_000_000
    mode: str = "grid"          # "grid" or "random"
    samples: int = 0            # used in random mode

    def __post_init__(self):
        if not 2 <= self.n <= 4:
            raise ValueError(f"ensemble size {self.n} outside 2..4")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")
        if self.max_states <= 0:
            raise ValueError("max_states must be positive")
        if not 0.0 < self.lam < math.pi:
            raise ValueError(f"lambda={self.lam} outside (0, pi)")
        if self.mode not in ("grid", "random"):
            raise ValueError(f"mode {self.mode!r} not in ('grid', 'random')")
        if self.mode == "random" and self.samples <= 0:
            raise ValueError("random mode needs samples > 0")


@dataclass
class SweepResult:
    config: SweepConfig
    bin_edges: np.ndarray
    counts: np.ndarray
    best_value: float           # max DS / sin^2(lambda)
    best_ds: float
    best_params: dict
    states_evaluated: int
    truncated: bool
    backend: str = field(default_factory=lambda: kernels.BACKEND)


def _axes(config: SweepConfig):
    """Ordered free angles after gauge fixing, with their grid values."""
    r = config.resolution
    prob_vals = (math.pi / 4) * np.arange(1, r + 1) / r
    polar_vals = np.linspace(0.0, math.pi, r)
    azim_vals = 2 * math.pi * np.arange(r) / r
    axes = []
    for name in ("alpha", "beta", "gamma")[: config.n - 1]:
        axes.append((name, "prob", prob_vals))
    axes.append(("theta_u2", "polar", polar_vals))
    for j in range(3, config.n + 1):
        axes.append((f"theta_u{j}", "polar", polar_vals))
        axes.append((f"phi_u{j}", "azimuth", azim_vals))
    for j in range(2, config.n + 1):
        axes.append((f"theta_v{j}", "polar", polar_vals))
        axes.append((f"phi_v{j}", "azimuth", azim_vals))
    return axes


def _decode_grid(flat: np.ndarray, axes) -> dict:
    """Mixed-radix decode of flat grid indices (last axis fastest)."""
    out = {}
    idx = flat.copy()
    for name, _, values in reversed(axes):
        out[name] = values[idx % values.size]
        idx //= values.size
    return out


def _simplex_weights(n: int, angles: dict) -> np.ndarray:
    sa, ca = np.sin(angles["alpha"]), np.cos(angles["alpha"])
    if n == 2:
        raw = np.stack([sa, ca], axis=1)
    elif n == 3:
        sb, cb = np.sin(angles["beta"]), np.cos(angles["beta"])
        raw = np.stack([sa * sb, sa * cb, ca], axis=1)
    else:
        sb, cb = np.sin(angles["beta"]), np.cos(angles["beta"])
        sg, cg = np.sin(angles["gamma"]), np.cos(angles["gamma"])
        raw = np.stack([sa * sb * sg, sa * sb * cg, sa * cb, ca], axis=1)
    return raw / raw.sum(axis=1, keepdims=True)


def _sphere(theta: np.ndarray, phi) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _ensembles_from_angles(n: int, angles: dict):
    m = angles["alpha"].size
    weights = _simplex_weights(n, angles)
    u = np.empty((m, n, 3))
    v = np.empty((m, n, 3))
    u[:, 0] = (0.0, 0.0, 1.0)
    v[:, 0] = (0.0, 0.0, 1.0)
    u[:, 1] = _sphere(angles["theta_u2"], 0.0)
    for j in range(3, n + 1):
        u[:, j - 1] = _sphere(angles[f"theta_u{j}"], angles[f"phi_u{j}"])
    for j in range(2, n + 1):
        v[:, j - 1] = _sphere(angles[f"theta_v{j}"], angles[f"phi_v{j}"])
    return weights, u, v


def _random_angles(axes, rng: np.random.Generator, m: int) -> dict:
    out = {}
    for name, kind, _ in axes:
        if kind == "prob":
            out[name] = rng.uniform(0.0, math.pi / 4, m)
        elif kind == "polar":
            out[name] = rng.uniform(0.0, math.pi, m)
        else:
            out[name] = rng.uniform(0.0, 2 * math.pi, m)
    return out


def sweep_separable(config: SweepConfig) -> SweepResult:
    """Evaluate DS/sin^2(lambda) over the configured separable ensemble set.

    Deterministic for a given config (including thread count changes): chunks
    are generated and reduced in index order.  States beyond max_states are
    skipped and reported through the truncated flag.
    """
    axes = _axes(config)
    if config.mode == "grid":
        total = int(np.prod([vals.size for _, _, vals in axes], dtype=object))
    else:
        total = config.samples
    evaluated = min(total, config.max_states)
    truncated = evaluated < total

    rng = np.random.default_rng(config.seed)
    chunk_bounds = [(lo, min(lo + _CHUNK, evaluated)) for lo in range(0, evaluated, _CHUNK)]

    def make_chunk(lo: int, hi: int) -> dict:
        if config.mode == "grid":
            return _decode_grid(np.arange(lo, hi, dtype=np.int64), axes)
        return _random_angles(axes, rng, hi - lo)

    def eval_chunk(angles: dict):
        weights, u, v = _ensembles_from_angles(config.n, angles)
        xi = kernels.sep_xi_max(weights, u, v)
        vals = np.clip(1.0 - xi, 0.0, 1.0)
        counts, _ = np.histogram(vals, bins=_HIST_BINS, range=(0.0, 1.0))
        k = int(np.argmax(vals))
        best = {name: float(arr[k]) for name, arr in angles.items()}
        return counts, float(vals[k]), best, (weights[k], u[k], v[k])

    counts = np.zeros(_HIST_BINS, dtype=np.int64)
    best_value, best_angles, best_ensemble = -1.0, {}, None

    def reduce_one(chunk_result):
        nonlocal counts, best_value, best_angles, best_ensemble
        c_counts, c_best, c_angles, c_ens = chunk_result
        counts += c_counts
        if c_best > best_value:
            best_value, best_angles, best_ensemble = c_best, c_angles, c_ens

    n_threads = threads_from_env()
    if n_threads > 1:
        # chunks are generated in the submitting thread (keeps random draws
        # ordered) and reduced in index order, so the worker count never
        # changes the result; the window bounds in-flight memory
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            pending = []
            for lo, hi in chunk_bounds:
                pending.append(pool.submit(eval_chunk, make_chunk(lo, hi)))
                if len(pending) >= 2 * n_threads:
                    reduce_one(pending.pop(0).result())
            for fut in pending:
                reduce_one(fut.result())
    else:
        for lo, hi in chunk_bounds:
            reduce_one(eval_chunk(make_chunk(lo, hi)))

    weights, u, v = best_ensemble
    best_params = {
        "angles": best_angles,
        "weights": weights.tolist(),
        "bloch_a": u.tolist(),
        "bloch_b": v.tolist(),
    }
    sin2 = math.sin(config.lam) ** 2
    return SweepResult(
        config=config,
        bin_edges=np.linspace(0.0, 1.0, _HIST_BINS + 1),
        counts=counts,
        best_value=best_value,
        best_ds=best_value * sin2,
        best_params=best_params,
        states_evaluated=evaluated,
        truncated=truncated,
    )


# ---------------------------------------------------------------------------
# uniform pQC limit
# ---------------------------------------------------------------------------

def uniform_pqc_limit(d_list, lam: float):
    """Normalized DS of uniform pure-QC ensembles for each requested size.

    Converges to 2/3 as the axes fill the sphere; the octahedron (d=6) is
    exact.  Works directly on the 3x3 second-moment matrix, so large d is
    cheap and no d x d state is ever built.
    """
    sin2 = math.sin(lam) ** 2
    rows = []
    for d in d_list:
        axes = uniform_bloch_axes(int(d))
        m = axes.T @ axes / axes.shape[0]
        xi_max = float(np.linalg.eigvalsh(m)[-1])
        value = 1.0 - xi_max
        rows.append({"d": int(d), "ds_normalized": value, "ds": value * sin2})
    return rows


# ---------------------------------------------------------------------------
# Theorem-style property suite
# ---------------------------------------------------------------------------

def _random_cpt_on_b(state: BipartiteState, dim_env: int,
                     rng: np.random.Generator) -> BipartiteState:
    """Apply a random Stinespring channel to the B factor (output dim unchanged)."""
    db = state.dim_b
    iso = haar_random_unitary(db * dim_env, rng)[:, :db]
    lift = kron(np.eye(state.dim_a), iso)
    big = lift @ state.rho @ lift.conj().T
    rho = partial_trace_b(big, state.dim_a * db, dim_env)
    return BipartiteState(0.5 * (rho + rho.conj().T), state.dim_a, db)


def property_suite(seed: int, trials: int, lam: float = 1.0) -> list[dict]:
    """Randomized checks of the defining properties of the measure.

    1. classical-quantum states score zero (and the reported worst-case
       Hamiltonian commutes with the state);
    2. invariance under local unitaries on both factors;
    3. monotonicity under channels on the unmeasured factor B;
    4. on pure qubit-qudit states the value increases with the smaller
       Schmidt weight.
    Returns one report entry per property with any counterexamples.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = []

    failures = []
    for t in range(trials):
        db = int(rng.integers(2, 4))
        probs = rng.dirichlet(np.ones(2))
        blocks = [random_density_matrix(db, rng) for _ in range(2)]
        state = cq_state(probs, blocks)
        res = ds_qubit_qudit(state, lam)
        if res.value > 1e-6:
            failures.append({"trial": t, "ds": res.value})
            continue
        if res.value <= 1e-8:
            h_full = kron(res.optimal_hamiltonian.matrix(), np.eye(db))
            comm = state.rho @ h_full - h_full @ state.rho
            if float(np.linalg.norm(comm)) > 1e-5:
                failures.append({"trial": t, "commutator": float(np.linalg.norm(comm))})
    report.append({"property": "cq_states_score_zero", "trials": trials,
                   "failures": failures, "passed": not failures})

    failures = []
    for t in range(trials):
        db = int(rng.integers(2, 4))
        state = BipartiteState(random_density_matrix(2 * db, rng), 2, db)
        base = ds_qubit_qudit(state, lam).value
        wa = haar_random_unitary(2, rng)
        vb = haar_random_unitary(db, rng)
        rotated = BipartiteState(kron(wa, vb) @ state.rho @ kron(wa, vb).conj().T, 2, db)
        moved = ds_qubit_qudit(rotated, lam).value
        if abs(moved - base) > 2e-8:
            failures.append({"trial": t, "base": base, "rotated": moved})
    report.append({"property": "local_unitary_invariance", "trials": trials,
                   "failures": failures, "passed": not failures})

    failures = []
    for t in range(trials):
        db = int(rng.integers(2, 4))
        state = BipartiteState(random_density_matrix(2 * db, rng), 2, db)
        base = ds_qubit_qudit(state, lam).value
        mapped = _random_cpt_on_b(state, int(rng.integers(2, 4)), rng)
        moved = ds_qubit_qudit(mapped, lam).value
        if moved > base + 1e-6:
            failures.append({"trial": t, "base": base, "mapped": moved})
    report.append({"property": "cpt_on_b_monotone", "trials": trials,
                   "failures": failures, "passed": not failures})

    grid = 0.5 * np.arange(1, 51) / 50
    values = []
    for q0 in grid:
        psi = np.zeros(4, dtype=complex)
        psi[0] = math.sqrt(q0)
        psi[3] = math.sqrt(1.0 - q0)
        state = BipartiteState(np.outer(psi, psi.conj()), 2, 2)
        values.append(ds_qubit_qudit(state, lam).value)
    diffs = np.diff(values)
    failures = [] if np.all(diffs > 0) else [{"grid_index": int(np.argmin(diffs))}]
    report.append({"property": "pure_state_schmidt_monotonicity", "trials": grid.size,
                   "failures": failures, "passed": not failures})
    return report


# ---------------------------------------------------------------------------
# decay study
# ---------------------------------------------------------------------------

def decay_study(state: BipartiteState, spectrum: Spectrum, n_max: int,
                opts: OptimizerOptions | None = None) -> dict:
    """Finite-copy error decay at the worst-case rotation of the given state.

    Finds the DS-optimal Hamiltonian, rotates the state by it, and tabulates
    the n-copy Helstrom error against the Chernoff exponent.
    """
    res = ds_general(state, spectrum, opts)
    rotated = rotate_local(state, res.optimal_hamiltonian)
    table = chernoff_decay_check(state.rho, rotated.rho, n_max)
    overlap = chernoff_overlap(state.rho, rotated.rho)
    return {
        "ds": res.value,
        "method": res.method,
        "q": overlap.q,
        "xi": overlap.xi,
        "rows": table["rows"],
    }


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def _sig12(x):
    if isinstance(x, float):
        if not math.isfinite(x):
            return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _sig12(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_sig12(v) for v in x]
    return x


def write_csv(path, fieldnames, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_sig12(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def save_sweep(result: SweepResult, out_dir, prefix: str | None = None):
    os.makedirs(out_dir, exist_ok=True)
    prefix = prefix or f"sweep_n{result.config.n}"
    csv_path = os.path.join(out_dir, f"{prefix}_hist.csv")
    json_path = os.path.join(out_dir, f"{prefix}_summary.json")
    edges = result.bin_edges
    rows = [{"bin_left": edges[i], "bin_right": edges[i + 1],
             "count": int(result.counts[i])} for i in range(result.counts.size)]
    write_csv(csv_path, ["bin_left", "bin_right", "count"], rows)
    write_json(json_path, {
        "config": asdict(result.config),
        "best_value": result.best_value,
        "best_ds": result.best_ds,
        "best_params": result.best_params,
        "states_evaluated": result.states_evaluated,
        "truncated": result.truncated,
        "backend": result.backend,
        "histogram": {"edges": edges.tolist(), "counts": result.counts.tolist()},
    })
    return csv_path, json_path


def save_uniform_pqc(rows, lam: float, out_dir, prefix: str = "uniform_pqc"):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{prefix}.csv")
    json_path = os.path.join(out_dir, f"{prefix}.json")
    write_csv(csv_path, ["d", "ds_normalized", "ds"], rows)
    write_json(json_path, {"lambda": lam, "rows": rows})
    return csv_path, json_path


def save_decay(study: dict, out_dir, prefix: str = "decay"):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{prefix}.csv")
    json_path = os.path.join(out_dir, f"{prefix}.json")
    rows = [{**row, "xi": study["xi"]} for row in study["rows"]]
    write_csv(csv_path, ["n", "p_err", "exponent", "xi"], rows)
    write_json(json_path, study)
    return csv_path, json_path


def save_properties(report, out_dir, prefix: str = "properties"):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{prefix}.csv")
    json_path = os.path.join(out_dir, f"{prefix}.json")
    rows = [{"property": r["property"], "trials": r["trials"],
             "failures": len(r["failures"]), "passed": r["passed"]} for r in report]
    write_csv(csv_path, ["property", "trials", "failures", "passed"], rows)
    write_json(json_path, {"report": report})
    return csv_path, json_path
