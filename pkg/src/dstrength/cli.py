"""Command-line interface.

Subcommands: qcb, ds, lqu, helstrom, and experiment {separable-sweep,
uniform-pqc, decay, properties}.  Exit codes are stable: 0 success,
2 parse failure, 3 state-invariant violation, 4 invalid configuration.
Numbers are printed with 12 significant digits; --json switches every
command to a machine-readable payload on stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .discrimination import chernoff_overlap, helstrom_error
from .experiments import (
    SweepConfig,
    decay_study,
    property_suite,
    save_decay,
    save_properties,
    save_sweep,
    save_uniform_pqc,
    sweep_separable,
    uniform_pqc_limit,
    _sig12,
)
from .linalg import CapacityError, ContractViolationError
from .measures import (
    OptimizerOptions,
    ds_general,
    ds_pure,
    lqu,
)
from .linalg import schmidt_decompose, eig_hermitian
from .stateio import StateParseError, load_state, save_state
from .types import Spectrum

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_CONFIG = 4


def _fmt(x) -> str:
    if isinstance(x, float):
        return "inf" if math.isinf(x) else f"{x:.12g}"
    return str(x)


def _emit_json(payload) -> None:
    print(json.dumps(_sig12(payload), sort_keys=True))


def _matrix_payload(m: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _spectrum_from_args(args, dim_a: int) -> Spectrum:
    if getattr(args, "spectrum", None):
        values = [float(tok) for tok in args.spectrum.split(",")]
        if len(values) != dim_a:
            raise ValueError(
                f"spectrum has {len(values)} entries but the probe has dimension {dim_a}")
        return Spectrum(np.array(values))
    if getattr(args, "lam", None) is None:
        raise ValueError("one of --lambda or --spectrum is required")
    if dim_a != 2:
        raise ValueError("--lambda implies a qubit probe; use --spectrum for larger A")
    return Spectrum.qubit(args.lam)


def _ds_result_payload(res) -> dict:
    ham = res.optimal_hamiltonian
    return {
        "value": res.value,
        "method": res.method,
        "spectrum": ham.spectrum.lambdas.tolist(),
        "basis": _matrix_payload(ham.basis),
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_qcb(args) -> int:
    s0 = load_state(args.state0)
    s1 = load_state(args.state1)
    res = chernoff_overlap(s0.rho, s1.rho)
    if args.json:
        _emit_json({"q": res.q, "s_star": res.s_star, "xi": res.xi})
    else:
        print(f"Q = {_fmt(res.q)}")
        print(f"s* = {_fmt(res.s_star)}")
        print(f"xi = {_fmt(res.xi)}")
    return EXIT_OK


def _pick_ds_method(args, state) -> str:
    if args.method != "auto":
        return args.method
    if state.dim_a == 2:
        return "qubit"
    if state.is_pure() and state.dim_a <= 9:
        return "pure"
    return "general"


def cmd_ds(args) -> int:
    state = load_state(args.state)
    spectrum = _spectrum_from_args(args, state.dim_a)
    method = _pick_ds_method(args, state)
    opts = OptimizerOptions(restarts=args.restarts, seed=args.seed)
    if method == "qubit":
        if state.dim_a != 2:
            raise ValueError("--method qubit requires a qubit probe")
        res = ds_general(state, spectrum, opts)  # exact closed form for qubits
    elif method == "pure":
        if not state.is_pure():
            raise ValueError("--method pure requires a pure state")
        w, vecs = eig_hermitian(state.rho)
        q, _, _ = schmidt_decompose(vecs[:, 0], state.dim_a, state.dim_b)
        res = ds_pure(q, spectrum)
    else:
        opts = OptimizerOptions(restarts=args.restarts, seed=args.seed,
                                force_general=True)
        res = ds_general(state, spectrum, opts)
    if args.json:
        _emit_json(_ds_result_payload(res))
    else:
        print(f"DS = {_fmt(res.value)}")
        print(f"method = {res.method}")
        print(f"spectrum = {','.join(_fmt(v) for v in res.optimal_hamiltonian.spectrum.lambdas)}")
        print("basis =")
        for row in res.optimal_hamiltonian.basis:
            print("  " + "  ".join(f"{z.real:+.12g}{z.imag:+.12g}j" for z in row))
    return EXIT_OK


def cmd_lqu(args) -> int:
    state = load_state(args.state)
    spectrum = _spectrum_from_args(args, state.dim_a)
    opts = OptimizerOptions(restarts=args.restarts, seed=args.seed)
    value = lqu(state, spectrum, opts)
    if args.json:
        _emit_json({"lqu": value})
    else:
        print(f"LQU = {_fmt(value)}")
    return EXIT_OK


def cmd_helstrom(args) -> int:
    s0 = load_state(args.state0)
    s1 = load_state(args.state1)
    p = helstrom_error(s0.rho, s1.rho, args.copies)
    if args.json:
        _emit_json({"p_err": p, "copies": args.copies})
    else:
        print(f"P_err({args.copies}) = {_fmt(p)}")
    return EXIT_OK


def cmd_mkstate(args) -> int:
    from . import states as st
    builders = {
        "bell": lambda: _bell_state(),
        "b92": st.b92_state,
        "ew-gb92": lambda: st.gb92_state(1 / 3, 1 / 3, 1 / 3),
    }
    if args.family not in builders:
        raise ValueError(f"unknown family {args.family!r}; "
                         f"choose from {sorted(builders)}")
    save_state(args.out, builders[args.family](), name=args.family)
    print(f"wrote {args.out}")
    return EXIT_OK


def _bell_state():
    from .types import BipartiteState
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1 / math.sqrt(2)
    return BipartiteState(np.outer(psi, psi.conj()), 2, 2)


def cmd_experiment(args) -> int:
    if args.experiment == "separable-sweep":
        config = SweepConfig(n=args.n, resolution=args.resolution, lam=args.lam,
                             seed=args.seed, max_states=args.max_states,
                             mode=args.mode, samples=args.samples)
        result = sweep_separable(config)
        csv_path, json_path = save_sweep(result, args.out)
        payload = {
            "best_value": result.best_value,
            "best_ds": result.best_ds,
            "states_evaluated": result.states_evaluated,
            "truncated": result.truncated,
            "csv": csv_path,
            "json": json_path,
        }
        if args.json:
            _emit_json(payload)
        else:
            print(f"best DS/sin^2(lambda) = {_fmt(result.best_value)} "
                  f"over {result.states_evaluated} states"
                  + (" (truncated)" if result.truncated else ""))
            print(f"files: {csv_path} {json_path}")
        return EXIT_OK

    if args.experiment == "uniform-pqc":
        d_list = [int(tok) for tok in args.d.split(",")]
        rows = uniform_pqc_limit(d_list, args.lam)
        csv_path, json_path = save_uniform_pqc(rows, args.lam, args.out)
        if args.json:
            _emit_json({"rows": rows, "csv": csv_path, "json": json_path})
        else:
            for row in rows:
                print(f"d={row['d']}: DS/sin^2(lambda) = {_fmt(row['ds_normalized'])}")
            print(f"files: {csv_path} {json_path}")
        return EXIT_OK

    if args.experiment == "decay":
        state = load_state(args.state)
        spectrum = _spectrum_from_args(args, state.dim_a)
        opts = OptimizerOptions(restarts=args.restarts, seed=args.seed)
        study = decay_study(state, spectrum, args.n_max, opts)
        csv_path, json_path = save_decay(study, args.out)
        if args.json:
            _emit_json({**{k: study[k] for k in ("ds", "q", "xi")},
                        "rows": study["rows"], "csv": csv_path, "json": json_path})
        else:
            print(f"DS = {_fmt(study['ds'])}  Q = {_fmt(study['q'])}  xi = {_fmt(study['xi'])}")
            for row in study["rows"]:
                print(f"n={row['n']}: P_err = {_fmt(row['p_err'])}  "
                      f"exponent = {_fmt(row['exponent'])}")
            print(f"files: {csv_path} {json_path}")
        return EXIT_OK

    if args.experiment == "properties":
        report = property_suite(args.seed, args.trials)
        csv_path, json_path = save_properties(report, args.out)
        all_passed = all(r["passed"] for r in report)
        if args.json:
            _emit_json({"report": report, "all_passed": all_passed,
                        "csv": csv_path, "json": json_path})
        else:
            for r in report:
                status = "passed" if r["passed"] else "FAILED"
                print(f"{r['property']}: {status} ({r['trials']} trials)")
            print("all properties passed" if all_passed else "some properties FAILED")
            print(f"files: {csv_path} {json_path}")
        return EXIT_OK

    raise ValueError(f"unknown experiment {args.experiment!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_spectrum_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="qubit spectrum {lambda, -lambda}, 0 < lambda < pi")
    p.add_argument("--spectrum", type=str, default=None,
                   help="comma-separated strictly decreasing eigenvalues")


def _add_opt_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dstrength",
        description="Discriminating strength and state-discrimination toolkit")
    parser.add_argument("--json", action="store_true",
                        help="print a JSON payload instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qcb", help="quantum Chernoff overlap of two states")
    p.add_argument("state0")
    p.add_argument("state1")
    p.set_defaults(func=cmd_qcb)

    p = sub.add_parser("ds", help="discriminating strength of a state")
    p.add_argument("state")
    _add_spectrum_flags(p)
    p.add_argument("--method", choices=["auto", "general", "pure", "qubit"],
                   default="auto")
    _add_opt_flags(p)
    p.set_defaults(func=cmd_ds)

    p = sub.add_parser("lqu", help="local quantum uncertainty of a state")
    p.add_argument("state")
    _add_spectrum_flags(p)
    _add_opt_flags(p)
    p.set_defaults(func=cmd_lqu)

    p = sub.add_parser("helstrom", help="n-copy minimum discrimination error")
    p.add_argument("state0")
    p.add_argument("state1")
    p.add_argument("--copies", type=int, default=1)
    p.set_defaults(func=cmd_helstrom)

    p = sub.add_parser("mkstate", help="write a bundled reference state file")
    p.add_argument("family", help="bell | b92 | ew-gb92")
    p.add_argument("out")
    p.set_defaults(func=cmd_mkstate)

    p = sub.add_parser("experiment", help="run a numerical campaign")
    esub = p.add_subparsers(dest="experiment", required=True)

    e = esub.add_parser("separable-sweep")
    e.add_argument("--n", type=int, required=True, help="ensemble size 2..4")
    e.add_argument("--resolution", type=int, required=True)
    e.add_argument("--lambda", dest="lam", type=float, default=math.pi / 2)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--mode", choices=["grid", "random"], default="grid")
    e.add_argument("--samples", type=int, default=0)
    e.add_argument("--max-states", type=int, default=20_000_000)
    e.add_argument("--out", default=".")
    e.set_defaults(func=cmd_experiment)

    e = esub.add_parser("uniform-pqc")
    e.add_argument("--d", type=str, required=True,
                   help="comma-separated ensemble sizes")
    e.add_argument("--lambda", dest="lam", type=float, default=1.0)
    e.add_argument("--out", default=".")
    e.set_defaults(func=cmd_experiment)

    e = esub.add_parser("decay")
    e.add_argument("--state", required=True)
    _add_spectrum_flags(e)
    e.add_argument("--n-max", type=int, default=6)
    _add_opt_flags(e)
    e.add_argument("--out", default=".")
    e.set_defaults(func=cmd_experiment)

    e = esub.add_parser("properties")
    e.add_argument("--trials", type=int, default=50)
    e.add_argument("--seed", type=int, default=7)
    e.add_argument("--out", default=".")
    e.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ContractViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
