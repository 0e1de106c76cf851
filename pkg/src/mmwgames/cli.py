"""Command-line front end.

Subcommands:

    solve    compute a certified approximate equilibrium of a game instance
    verify   check a candidate state pair against an instance and a claim
    cj       convert between observable and super-operator representations
    psdp     approximate a strictly positive SDP in super-operator form
    gen      generate deterministic pseudo-random instances

Exit codes are a stable contract: 0 success, 1 verification failure, 2 input
invalid, 3 numerical failure, 4 certified value too small to invert.
Summaries go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .errors import NumericalError, ValueTooSmall
from .games import (
    Measurement,
    PayoffObservable,
    observable_from_measurement,
    observable_from_superop,
    superop_from_observable,
)
from .linalg import spectral_norm
from .psdp import SuperOpSDP, solve_psdp
from .serialize import (
    SCHEMA_VERSION,
    digest,
    load_document,
    matrix_to_pairs,
    measurement_document,
    observable_document,
    parse_instance,
    psdp_document,
    superop_document,
    write_document,
)
from .solver import SolverParams, equilibrium_gap, solve

# Certificates carry eigensolver-level noise, so claims are compared with a
# small additive slack rather than exactly.
VERIFY_SLACK = 1e-9


def _game_from_document(document: dict) -> PayoffObservable:
    kind, obj = parse_instance(document, expect=("observable", "measurement"))
    if kind == "measurement":
        return observable_from_measurement(obj)
    return obj


def cmd_solve(args) -> int:
    document = load_document(args.input)
    obs = _game_from_document(document)
    params = SolverParams(
        epsilon=args.epsilon,
        mu_override=args.mu,
        iter_override=args.iters,
        record_trace=args.trace,
    )
    started = time.perf_counter()
    result = solve(obs, params)
    elapsed = time.perf_counter() - started
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "result",
        "input_digest": digest(document),
        "n": obs.n,
        "m": obs.m,
        "rho": matrix_to_pairs(result.rho),
        "sigma": matrix_to_pairs(result.sigma),
        "value_lo": result.value_lo,
        "value_mid": result.value_mid,
        "value_hi": result.value_hi,
        "gap": result.gap,
        "certified_epsilon": result.certified_epsilon,
        "iterations": result.iterations,
        "params": {
            "epsilon": params.epsilon,
            "mu_override": params.mu_override,
            "iter_override": params.iter_override,
            "record_trace": params.record_trace,
            "guarantee_on_original": params.guarantee_on_original,
        },
        "wall_time_s": elapsed,
    }
    write_document(args.out, _drop_none(out))
    print(
        f"value in [{result.value_lo:.6g}, {result.value_hi:.6g}], "
        f"certified epsilon = {result.certified_epsilon:.6g}"
    )
    return 0


def cmd_verify(args) -> int:
    obs = _game_from_document(load_document(args.input))
    _, candidate = parse_instance(load_document(args.candidate), expect=("candidate", "result"))
    lo, hi, gap, certified = equilibrium_gap(obs, candidate["rho"], candidate["sigma"])
    claim = candidate["claimed_epsilon"]
    print(f"value_lo = {lo:.12g}")
    print(f"value_hi = {hi:.12g}")
    print(f"gap = {gap:.12g}")
    print(f"certified epsilon = {certified:.12g}")
    if certified <= claim + VERIFY_SLACK:
        print(f"OK: certified epsilon is within the claimed {claim:.6g}")
        return 0
    print(f"FAIL: certified epsilon exceeds the claimed {claim:.6g}")
    return 1


def cmd_cj(args) -> int:
    document = load_document(args.input)
    if args.direction == "to-superop":
        _, obs = parse_instance(document, expect=("observable",))
        write_document(args.out, superop_document(superop_from_observable(obs)))
    else:
        _, phi = parse_instance(document, expect=("superop",))
        write_document(args.out, observable_document(observable_from_superop(phi)))
    return 0


def cmd_psdp(args) -> int:
    document = load_document(args.input)
    _, sdp = parse_instance(document, expect=("psdp",))
    started = time.perf_counter()
    result = solve_psdp(sdp, args.epsilon)
    elapsed = time.perf_counter() - started
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "psdp-result",
        "input_digest": digest(document),
        "n": sdp.n,
        "m": sdp.m,
        "opt_estimate": result.opt_estimate,
        "opt_lo": result.opt_lo,
        "opt_hi": result.opt_hi,
        "alpha": result.alpha,
        "primal_Y": matrix_to_pairs(result.primal_Y),
        "dual_X": matrix_to_pairs(result.dual_X),
        "params": {"epsilon": args.epsilon},
        "wall_time_s": elapsed,
    }
    write_document(args.out, out)
    print(f"opt in [{result.opt_lo:.6g}, {result.opt_hi:.6g}]")
    return 0


def _random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (G + G.conj().T) / 2


def _random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return G @ G.conj().T


def generate_instance(kind: str, n: int, m: int, seed: int) -> dict:
    """Deterministic pseudo-random instance document for the given seed."""
    if n < 1 or m < 1:
        raise ValueError(f"dimensions must be positive, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    d = n * m
    if kind == "observable":
        R = _random_hermitian(rng, d)
        R /= spectral_norm(R)
        return observable_document(PayoffObservable(n, m, R))
    if kind == "psd-observable":
        W = _random_psd(rng, d)
        return observable_document(PayoffObservable(n, m, W / spectral_norm(W)))
    if kind == "measurement":
        raw = [_random_psd(rng, d) for _ in range(3)]
        payoffs = rng.uniform(-1.0, 1.0, size=3)
        total = sum(raw)
        w, V = np.linalg.eigh(total)
        correction = (V * w**-0.5) @ V.conj().T
        operators = {
            f"o{k}": correction @ raw[k] @ correction for k in range(3)
        }
        meas = Measurement(n, m, operators, {f"o{k}": float(payoffs[k]) for k in range(3)})
        return measurement_document(meas)
    if kind == "psdp":
        A = _random_psd(rng, n)
        A = A / spectral_norm(A) + 0.5 * np.eye(n)
        B = _random_psd(rng, m)
        B = B / spectral_norm(B) + 0.5 * np.eye(m)
        W = _random_psd(rng, d)
        return psdp_document(SuperOpSDP(A, B, W / spectral_norm(W), strict=True))
    raise ValueError(f"unknown generator kind {kind!r}")


def cmd_gen(args) -> int:
    write_document(args.out, generate_instance(args.kind, args.n, args.m, args.seed))
    return 0


def _drop_none(document: dict) -> dict:
    """Omit optional fields that were not set (None is not serializable)."""
    cleaned = {}
    for key, value in document.items():
        if isinstance(value, dict):
            cleaned[key] = _drop_none(value)
        elif value is not None:
            cleaned[key] = value
    return cleaned


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmwgames",
        description="Certified equilibria of one-round zero-sum quantum games "
        "and strictly positive SDPs, via matrix multiplicative weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a game instance")
    p.add_argument("input", help="observable or measurement instance file")
    p.add_argument("--epsilon", type=float, required=True, help="target accuracy in (0, 1]")
    p.add_argument("--mu", type=float, default=None, help="override the step size")
    p.add_argument("--iters", type=int, default=None, help="override the iteration count")
    p.add_argument("--trace", action="store_true", help="record payoffs and self-check regret bounds")
    p.add_argument("--out", required=True, help="result file to write")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify a candidate state pair")
    p.add_argument("input", help="observable or measurement instance file")
    p.add_argument("candidate", help="candidate or result file with rho, sigma and a claim")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cj", help="convert between observable and super-operator files")
    p.add_argument("input")
    p.add_argument("--direction", choices=("to-superop", "to-observable"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cj)

    p = sub.add_parser("psdp", help="approximate a strictly positive SDP instance")
    p.add_argument("input", help="psdp instance file")
    p.add_argument("--epsilon", type=float, required=True, help="game accuracy in (0, 1]")
    p.add_argument("--out", required=True, help="result file to write")
    p.set_defaults(func=cmd_psdp)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument(
        "--kind",
        choices=("observable", "psd-observable", "measurement", "psdp"),
        required=True,
    )
    p.add_argument("--n", type=int, default=2, help="Alice dimension (default 2)")
    p.add_argument("--m", type=int, default=2, help="Bob dimension (default 2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
