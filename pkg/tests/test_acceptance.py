"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a PASS/FAIL line (visible with `pytest -s` or in the
captured output section on failure):

 1. maximally entangled qubit pair hits sin^2(lambda) exactly;
 2. equally weighted GB92 hits (2/3) sin^2(lambda), closed form and optimizer;
 3. the two-qubit QC family peaks at (1/2) sin^2(lambda), on the B92 point;
 4. separable sweeps (N=2/3/4) peak in the documented windows;
 5. uniform ensembles converge to the 2/3 plateau;
 6. the Chernoff overlap reduces to fidelity when one state is pure;
 7. Tr[rho^s T rho^(1-s) T] is minimized at s=1/2;
 8. the four defining properties hold on randomized trials;
 9. the measure matches the rescaled local quantum uncertainty;
10. the finite-copy error respects P <= Q^n / 2;
11. qubit-qutrit pure-QC ensembles never beat (2/3) sin^2(lambda).
"""

import math

import numpy as np
import pytest

import dstrength as ds
from dstrength.discrimination import chernoff_overlap, fidelity, helstrom_error
from dstrength.experiments import (
    SweepConfig,
    decay_study,
    property_suite,
    sweep_separable,
    uniform_pqc_limit,
)
from dstrength.measures import (
    OptimizerOptions,
    ds_general,
    ds_qubit_qudit,
    lemma1_check,
    lqu,
    lqu_ds_small_lambda_check,
)
from dstrength.states import (
    QcQubitParams,
    ds_pqc_closed,
    ds_qc_closed,
    gb92_state,
)
from dstrength.types import BipartiteState, Spectrum
from .conftest import bell_vector


def report(number: int, description: str):
    """Print one pass/fail line per criterion."""
    def decorator(fn):
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"FAIL criterion {number:2d}: {description}")
                raise
            print(f"PASS criterion {number:2d}: {description}")
        wrapper.__name__ = fn.__name__
        return wrapper
    return decorator


def bell_state() -> BipartiteState:
    psi = bell_vector()
    return BipartiteState(np.outer(psi, psi.conj()), 2, 2)


@report(1, "maximally entangled qubit-qudit reaches sin^2(lambda) within 1e-10")
def test_c01_bell_maximum():
    bell = bell_state()
    for lam in (0.3, math.pi / 4, math.pi / 2, 2.5):
        value = ds_qubit_qudit(bell, lam).value
        assert abs(value - math.sin(lam) ** 2) <= 1e-10


@report(2, "EW GB92 scores (2/3) sin^2(lambda): closed form 1e-10, optimizer 1e-5")
def test_c02_ew_gb92():
    lam = 0.9
    target = (2 / 3) * math.sin(lam) ** 2
    closed = ds_pqc_closed([1 / 3, 1 / 3, 1 / 3],
                           [[0, 0, 1], [1, 0, 0], [0, 1, 0]], lam).value
    assert abs(closed - target) <= 1e-10
    state = gb92_state(1 / 3, 1 / 3, 1 / 3)
    found = ds_general(state, Spectrum.qubit(lam),
                       OptimizerOptions(restarts=20, seed=1, force_general=True)).value
    assert abs(found - target) <= 1e-5


@report(3, "QC qubit-qubit family peaks at (1/2) sin^2(lambda) on the B92 point")
def test_c03_qc_maximum():
    for lam in (0.3, 1.0, math.pi / 2, 2.5):
        peak = ds_qc_closed(QcQubitParams(0.5, 1.0, 1.0, math.pi / 2), lam).value
        assert abs(peak - 0.5 * math.sin(lam) ** 2) <= 1e-10
    lam = 1.0
    bound = 0.5 * math.sin(lam) ** 2
    worst_gap = 0.0
    for p in np.linspace(0.0, 1.0, 10):
        for s0 in np.linspace(0.0, 1.0, 10):
            for s1 in np.linspace(0.0, 1.0, 10):
                for phi in np.linspace(0.0, math.pi, 10):
                    params = QcQubitParams(float(p), float(s0), float(s1), float(phi))
                    value = ds_qc_closed(params, lam).value
                    assert value <= bound + 1e-9
                    direct = ds_qubit_qudit(ds.qc_qubit_qubit(params), lam).value
                    worst_gap = max(worst_gap, abs(value - direct))
    assert worst_gap <= 1e-8


@report(4, "separable sweeps: N=2 best in [0.49, 0.5], N=3 and N=4 in [0.47, 0.5]")
def test_c04_separable_sweeps():
    res2 = sweep_separable(SweepConfig(n=2, resolution=9, lam=math.pi / 2))
    assert 0.49 <= res2.best_value <= 0.5 + 1e-6
    res3 = sweep_separable(SweepConfig(n=3, resolution=5, lam=math.pi / 2))
    assert 0.47 <= res3.best_value <= 0.5 + 1e-6
    res4 = sweep_separable(SweepConfig(n=4, resolution=3, lam=math.pi / 2))
    assert 0.47 <= res4.best_value <= 0.5 + 1e-6


@report(5, "uniform ensembles: d=6 exact 2/3 (1e-12), d=1000 within 1e-3")
def test_c05_uniform_pqc_limit():
    rows = uniform_pqc_limit([6, 1000], 1.0)
    assert abs(rows[0]["ds_normalized"] - 2 / 3) <= 1e-12
    assert abs(rows[1]["ds_normalized"] - 2 / 3) <= 1e-3


@report(6, "Chernoff overlap equals fidelity when one state is pure (1e-8)")
def test_c06_fidelity_reduction():
    rng = np.random.default_rng(606)
    for dim in (2, 3, 4):
        for _ in range(200):
            psi = ds.random_pure_state(dim, rng)
            pure = np.outer(psi, psi.conj())
            mixed = ds.random_density_matrix(dim, rng)
            pair = (pure, mixed) if rng.uniform() < 0.5 else (mixed, pure)
            assert abs(chernoff_overlap(*pair).q - fidelity(*pair)) <= 1e-8


@report(7, "s-grid minimum of Tr[rho^s T rho^(1-s) T] sits at 1/2 in 50/50 trials")
def test_c07_lemma_midpoint():
    rng = np.random.default_rng(707)
    hits = 0
    for trial in range(50):
        dim = (2, 3, 4)[trial % 3]
        rho = ds.random_density_matrix(dim, rng)
        theta = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        theta = (theta + theta.conj().T) / 2
        _, _, s_min = lemma1_check(rho, theta)
        hits += (s_min == 0.5)
    assert hits == 50


@report(8, "defining properties 1-3 pass 50 randomized trials; surrogate 4 on a grid")
def test_c08_property_suite():
    report_rows = property_suite(seed=8, trials=50)
    for row in report_rows:
        assert row["passed"], row


@report(9, "qubit probes: DS = LQU sin^2/lam^2 (1e-9); qutrit gap shrinks 4x")
def test_c09_lqu_connection():
    rng = np.random.default_rng(909)
    lam = 0.8
    for _ in range(20):
        db = int(rng.integers(2, 4))
        state = BipartiteState(ds.random_density_matrix(2 * db, rng), 2, db)
        d_val = ds_qubit_qudit(state, lam).value
        u_val = lqu(state, Spectrum.qubit(lam))
        assert abs(d_val - u_val * math.sin(lam) ** 2 / lam ** 2) <= 1e-9
    qutrit = BipartiteState(ds.random_density_matrix(9, np.random.default_rng(42)), 3, 3)
    opts = OptimizerOptions(restarts=10, seed=3, fatol=1e-13, xatol=1e-8)
    rows = lqu_ds_small_lambda_check(qutrit, [0.2, 0.1], opts)
    gap_02, gap_01 = rows[0]["gap"], rows[1]["gap"]
    assert gap_01 <= gap_02 / 4 + 1e-9


@report(10, "finite-copy error obeys P <= Q^n/2 for n <= 6 on b92 and rotated Bell")
def test_c10_chernoff_inequality():
    study = decay_study(ds.b92_state(), Spectrum.qubit(math.pi / 3), 6)
    for row in study["rows"]:
        assert row["p_err"] <= 0.5 * study["q"] ** row["n"] + 1e-10

    bell = bell_state()
    res = ds_qubit_qudit(bell, math.pi / 3)
    rotated = ds.rotate_local(bell, res.optimal_hamiltonian)
    q = chernoff_overlap(bell.rho, rotated.rho).q
    for n in range(1, 7):
        p = helstrom_error(bell.rho, rotated.rho, n)
        assert p <= 0.5 * q ** n + 1e-10


@report(11, "1000 random qubit-qutrit pQC ensembles stay below (2/3) sin^2(lambda)")
def test_c11_pqc_upper_bound():
    rng = np.random.default_rng(1111)
    lam = 1.0
    bound = (2 / 3) * math.sin(lam) ** 2 + 1e-9
    for _ in range(1000):
        # orthonormal triplet in a random orientation
        rot, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        p = rng.dirichlet(np.ones(3))
        assert ds_pqc_closed(p, rot, lam).value <= bound
    for _ in range(1000):
        axes = rng.standard_normal((3, 3))
        axes /= np.linalg.norm(axes, axis=1, keepdims=True)
        p = rng.dirichlet(np.ones(3))
        assert ds_pqc_closed(p, axes, lam).value <= bound
