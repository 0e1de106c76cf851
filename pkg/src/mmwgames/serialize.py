"""Instance and result files.

Files are JSON documents in a canonical text form: object keys sorted,
matrices stored row-major as flat arrays of [re, im] pairs, and every float
rendered with 17 significant digits (enough to round-trip binary64 exactly).
Writing a parsed canonical document reproduces it byte for byte, which makes
outputs diffable and digests stable.

Document kinds:

    observable   n, m, R                      solvable game
    measurement  n, m, labels, payoffs, operators (aligned, sorted by label)
    psdp         n, m, A, B, psi_choi, strict
    superop      n, m, choi                   Choi representation of a map
    candidate    n, m, rho, sigma, claimed_epsilon
    result       written by the CLI solve command; usable as a candidate
    psdp-result  written by the CLI psdp command

Every document carries ``schema_version: 1``.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .games import Measurement, PayoffObservable, GameSuperOp
from .psdp import SuperOpSDP

__all__ = [
    "SCHEMA_VERSION",
    "canonical_text",
    "digest",
    "matrix_to_pairs",
    "matrix_from_pairs",
    "load_document",
    "write_document",
    "parse_instance",
    "observable_document",
    "measurement_document",
    "superop_document",
    "psdp_document",
    "candidate_document",
]

SCHEMA_VERSION = 1

INSTANCE_KINDS = ("observable", "measurement", "psdp", "superop", "candidate")


# ---------------------------------------------------------------------------
# canonical rendering
# ---------------------------------------------------------------------------

def _float_text(x: float) -> str:
    if not math.isfinite(x):
        raise SchemaError(f"non-finite number {x!r} cannot be serialized")
    return format(float(x), ".17g")


def _render(value, indent: int) -> str:
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _float_text(value)
    pad = "  " * (indent + 1)
    close_pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = []
        for key in sorted(value):
            if not isinstance(key, str):
                raise SchemaError(f"object keys must be strings, got {key!r}")
            parts.append(f"{pad}{json.dumps(key)}: {_render(value[key], indent + 1)}")
        return "{\n" + ",\n".join(parts) + "\n" + close_pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (str, bool, int, float)) for v in value):
            return "[" + ", ".join(_render(v, indent) for v in value) + "]"
        parts = [pad + _render(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(parts) + "\n" + close_pad + "]"
    raise SchemaError(f"cannot serialize value of type {type(value).__name__}")


def canonical_text(document: dict) -> str:
    """Render a document in the canonical form, newline terminated."""
    return _render(document, 0) + "\n"


def digest(document: dict) -> str:
    """SHA-256 of the canonical text, used to tie results to their inputs."""
    return hashlib.sha256(canonical_text(document).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# matrix codecs
# ---------------------------------------------------------------------------

def matrix_to_pairs(M) -> list:
    """Flatten a matrix row-major into [re, im] pairs."""
    flat = np.asarray(M, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def matrix_from_pairs(pairs, dim: int, field: str) -> np.ndarray:
    """Rebuild a dim x dim complex matrix from [re, im] pairs."""
    if not isinstance(pairs, list) or len(pairs) != dim * dim:
        found = len(pairs) if isinstance(pairs, list) else type(pairs).__name__
        raise SchemaError(f"{field}: expected {dim * dim} [re, im] pairs, got {found}")
    values = np.empty(dim * dim, dtype=complex)
    for k, pair in enumerate(pairs):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise SchemaError(f"{field}[{k}]: expected a [re, im] pair of numbers")
        if not (math.isfinite(pair[0]) and math.isfinite(pair[1])):
            raise SchemaError(f"{field}[{k}]: non-finite entry")
        values[k] = complex(pair[0], pair[1])
    return values.reshape(dim, dim)


# ---------------------------------------------------------------------------
# field helpers
# ---------------------------------------------------------------------------

def _require(document: dict, field: str, kinds, check=None):
    if field not in document:
        raise SchemaError(f"missing field {field!r}")
    value = document[field]
    if not isinstance(value, kinds) or isinstance(value, bool) and kinds is not bool:
        raise SchemaError(f"{field}: unexpected type {type(value).__name__}")
    if check is not None and not check(value):
        raise SchemaError(f"{field}: invalid value {value!r}")
    return value


def _dims(document: dict) -> tuple[int, int]:
    n = _require(document, "n", int, lambda v: v >= 1)
    m = _require(document, "m", int, lambda v: v >= 1)
    return n, m


def _header(document: dict) -> str:
    if not isinstance(document, dict):
        raise SchemaError("top-level value must be an object")
    version = _require(document, "schema_version", int)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"schema_version: expected {SCHEMA_VERSION}, got {version}")
    return _require(document, "kind", str)


# ---------------------------------------------------------------------------
# document builders
# ---------------------------------------------------------------------------

def observable_document(obs: PayoffObservable) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "observable",
        "n": obs.n,
        "m": obs.m,
        "R": matrix_to_pairs(obs.R),
    }


def superop_document(phi: GameSuperOp) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "superop",
        "n": phi.n,
        "m": phi.m,
        "choi": matrix_to_pairs(phi.choi),
    }


def measurement_document(meas: Measurement) -> dict:
    labels = sorted(meas.operators)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "measurement",
        "n": meas.n,
        "m": meas.m,
        "labels": labels,
        "payoffs": [float(meas.payoffs[label]) for label in labels],
        "operators": [matrix_to_pairs(meas.operators[label]) for label in labels],
    }


def psdp_document(sdp: SuperOpSDP) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "psdp",
        "n": sdp.n,
        "m": sdp.m,
        "A": matrix_to_pairs(sdp.A),
        "B": matrix_to_pairs(sdp.B),
        "psi_choi": matrix_to_pairs(sdp.psi_choi),
        "strict": bool(sdp.strict),
    }


def candidate_document(n: int, m: int, rho, sigma, claimed_epsilon: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "candidate",
        "n": n,
        "m": m,
        "rho": matrix_to_pairs(rho),
        "sigma": matrix_to_pairs(sigma),
        "claimed_epsilon": float(claimed_epsilon),
    }


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_observable(document: dict) -> PayoffObservable:
    n, m = _dims(document)
    R = matrix_from_pairs(_require(document, "R", list), n * m, "R")
    return PayoffObservable(n, m, R)


def _parse_superop(document: dict) -> GameSuperOp:
    n, m = _dims(document)
    choi = matrix_from_pairs(_require(document, "choi", list), n * m, "choi")
    return GameSuperOp(n, m, choi)


def _parse_measurement(document: dict) -> Measurement:
    n, m = _dims(document)
    labels = _require(document, "labels", list)
    payoffs = _require(document, "payoffs", list)
    operators = _require(document, "operators", list)
    if not labels:
        raise SchemaError("labels: must be nonempty")
    if not all(isinstance(label, str) for label in labels):
        raise SchemaError("labels: entries must be strings")
    if len(set(labels)) != len(labels):
        raise SchemaError("labels: duplicate outcome label")
    if len(payoffs) != len(labels) or len(operators) != len(labels):
        raise SchemaError("payoffs/operators: lengths must match labels")
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in payoffs):
        raise SchemaError("payoffs: entries must be numbers")
    ops = {
        label: matrix_from_pairs(op, n * m, f"operators[{k}]")
        for k, (label, op) in enumerate(zip(labels, operators))
    }
    return Measurement(n, m, ops, dict(zip(labels, map(float, payoffs))))


def _parse_psdp(document: dict) -> SuperOpSDP:
    n, m = _dims(document)
    A = matrix_from_pairs(_require(document, "A", list), n, "A")
    B = matrix_from_pairs(_require(document, "B", list), m, "B")
    choi = matrix_from_pairs(_require(document, "psi_choi", list), n * m, "psi_choi")
    strict = _require(document, "strict", bool)
    return SuperOpSDP(A, B, choi, strict)


def _parse_candidate(document: dict) -> dict:
    """Candidate pairs stay as a plain dict; result files double as candidates."""
    n, m = _dims(document)
    rho = matrix_from_pairs(_require(document, "rho", list), n, "rho")
    sigma = matrix_from_pairs(_require(document, "sigma", list), m, "sigma")
    if "claimed_epsilon" in document:
        claim = document["claimed_epsilon"]
    elif "certified_epsilon" in document:
        claim = document["certified_epsilon"]
    else:
        raise SchemaError("missing field 'claimed_epsilon' (or 'certified_epsilon')")
    if not isinstance(claim, (int, float)) or isinstance(claim, bool):
        raise SchemaError("claimed_epsilon: must be a number")
    return {"n": n, "m": m, "rho": rho, "sigma": sigma, "claimed_epsilon": float(claim)}


_PARSERS = {
    "observable": _parse_observable,
    "superop": _parse_superop,
    "measurement": _parse_measurement,
    "psdp": _parse_psdp,
    "candidate": _parse_candidate,
    "result": _parse_candidate,
}


def parse_instance(document: dict, expect: tuple[str, ...] | None = None):
    """Validate a document and build the corresponding object.

    ``expect`` restricts the accepted kinds; a helpful error is raised for
    anything else.
    """
    kind = _header(document)
    if kind not in _PARSERS:
        raise SchemaError(f"kind: unknown kind {kind!r}")
    if expect is not None and kind not in expect:
        raise SchemaError(f"kind: expected one of {list(expect)}, got {kind!r}")
    return kind, _PARSERS[kind](document)


# ---------------------------------------------------------------------------
# file IO
# ---------------------------------------------------------------------------

def load_document(path) -> dict:
    """Read a JSON document, mapping parse errors to SchemaError with position."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise SchemaError(f"{path}: top-level value must be an object")
    return document


def write_document(path, document: dict) -> None:
    Path(path).write_text(canonical_text(document), encoding="utf-8")
