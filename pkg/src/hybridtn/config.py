"""YAML instance configs for the command-line front end.

Example::

    k: 2
    n: 2
    state1:
      root: {haar: 11}
      leaves:
        - {variant: indexed, u0: {haar: 1}, u1: {haar: 2}}
        - {variant: init, u: {gates: ["H I"]}}
    state2:
      root: [[[1, 0], [0, 0], [0, 0], [0, 0]], ...]    # rows of [re, im] pairs
      leaves: {variant: init, u: {haar: 5}}            # one map, reused for every subsystem
    observable: ["ZX", "IY"]                           # or "identity"
    estimation: {engine: svd, mode: exact, shots: 10000, seed: 0, split: stratified}

A matrix is a literal, ``{haar: SEED}``, ``{gates: [layer, ...]}`` (each layer
names one single-qubit gate per qubit, applied first-to-last) or the string
``identity``. When a single leaf map is reused, its Haar seeds are re-derived
per subsystem so the leaves differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import yaml

from .errors import CapacityError, ConfigError, ContractViolation
from .htncore import EstimationConfig, HTNState, IndexedUnitary, InitStateMapped, SubsystemObservable
from .numkit import H, MAX_MATRIX_QUBITS, PAULI_BY_LABEL, haar_random_unitary, kron_all

GATES = dict(PAULI_BY_LABEL)
GATES.update({
    "H": H,
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "TDG": np.diag([1, np.exp(-1j * np.pi / 4)]),
})


@dataclass(frozen=True)
class InstanceConfig:
    k: int
    n: int
    state1: HTNState
    state2: Optional[HTNState]
    observable: object
    estimation: dict


def _seed_for(seed: int, derive: Optional[tuple]) -> np.random.Generator:
    if derive is None:
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=derive))


def parse_matrix(spec, qubits: int, field: str, derive: Optional[tuple] = None) -> np.ndarray:
    if qubits > MAX_MATRIX_QUBITS:
        raise CapacityError(f"{field}: {qubits} qubits exceeds cap {MAX_MATRIX_QUBITS}")
    d = 2**qubits
    if spec == "identity":
        return np.eye(d, dtype=complex)
    if isinstance(spec, dict):
        if "haar" in spec:
            seed = spec["haar"]
            if not isinstance(seed, int):
                raise ConfigError(field, "haar seed must be an integer")
            return haar_random_unitary(qubits, _seed_for(seed, derive))
        if "gates" in spec:
            return _gate_composition(spec["gates"], qubits, field)
        raise ConfigError(field, "matrix table needs a 'haar' or 'gates' key")
    if isinstance(spec, list):
        try:
            rows = [[complex(*e) if isinstance(e, list) else complex(e) for e in row] for row in spec]
            m = np.array(rows, dtype=complex)
        except (TypeError, ValueError) as exc:
            raise ConfigError(field, f"bad matrix literal ({exc})") from exc
        if m.shape != (d, d):
            raise ConfigError(field, f"expected a {d}x{d} matrix, got shape {m.shape}")
        return m
    raise ConfigError(field, f"unrecognised matrix spec {spec!r}")


def _gate_composition(layers, qubits: int, field: str) -> np.ndarray:
    if isinstance(layers, str):
        layers = [layers]
    out = np.eye(2**qubits, dtype=complex)
    for i, layer in enumerate(layers):
        names = str(layer).upper().split()
        if len(names) != qubits:
            raise ConfigError(f"{field}.gates[{i}]", f"need {qubits} gate names, got {len(names)}")
        unknown = [g for g in names if g not in GATES]
        if unknown:
            raise ConfigError(f"{field}.gates[{i}]", f"unknown gate(s) {unknown}")
        out = kron_all(GATES[g] for g in names) @ out
    return out


def _leaf(spec, n: int, field: str, derive: Optional[tuple]):
    if not isinstance(spec, dict):
        raise ConfigError(field, "leaf must be a mapping")
    variant = spec.get("variant")
    try:
        if variant == "indexed":
            for key in ("u0", "u1"):
                if key not in spec:
                    raise ConfigError(f"{field}.{key}", "missing")
            u0 = parse_matrix(spec["u0"], n, f"{field}.u0", derive and derive + (0,))
            u1 = parse_matrix(spec["u1"], n, f"{field}.u1", derive and derive + (1,))
            return IndexedUnitary(u0, u1)
        if variant == "init":
            if "u" not in spec:
                raise ConfigError(f"{field}.u", "missing")
            return InitStateMapped(parse_matrix(spec["u"], n, f"{field}.u", derive))
    except ContractViolation as exc:
        raise ConfigError(field, str(exc)) from exc
    raise ConfigError(f"{field}.variant", f"must be 'indexed' or 'init', got {variant!r}")


def _state(spec, k: int, n: int, field: str) -> HTNState:
    if not isinstance(spec, dict):
        raise ConfigError(field, "state must be a mapping with 'root' and 'leaves'")
    if "root" not in spec:
        raise ConfigError(f"{field}.root", "missing")
    if "leaves" not in spec:
        raise ConfigError(f"{field}.leaves", "missing")
    root = parse_matrix(spec["root"], k, f"{field}.root")
    leaves_spec = spec["leaves"]
    if isinstance(leaves_spec, dict):
        leaves = [_leaf(leaves_spec, n, f"{field}.leaves", (m,)) for m in range(k)]
    elif isinstance(leaves_spec, list):
        if len(leaves_spec) != k:
            raise ConfigError(f"{field}.leaves", f"expected {k} leaves, got {len(leaves_spec)}")
        leaves = [_leaf(s, n, f"{field}.leaves[{m}]", None) for m, s in enumerate(leaves_spec)]
    else:
        raise ConfigError(f"{field}.leaves", "must be a list or a single mapping")
    try:
        return HTNState(root, leaves)
    except ContractViolation as exc:
        raise ConfigError(f"{field}.root", str(exc)) from exc


def _observable(spec, k: int, n: int):
    if spec is None or spec == "identity":
        return None
    if not isinstance(spec, list) or len(spec) != k:
        raise ConfigError("observable", f"must be 'identity' or a list of {k} Pauli strings")
    out = []
    for m, s in enumerate(spec):
        if s == "identity":
            out.append(None)
            continue
        if not isinstance(s, str) or len(s) != n:
            raise ConfigError(f"observable[{m}]", f"need a Pauli string of length {n}")
        try:
            out.append(SubsystemObservable.from_paulis(s.upper()))
        except ContractViolation as exc:
            raise ConfigError(f"observable[{m}]", str(exc)) from exc
    return out


ESTIMATION_KEYS = ("engine", "mode", "shots", "seed", "split", "construction_shots", "contraction_shots")


def _estimation(spec) -> dict:
    if spec is None:
        return {}
    if not isinstance(spec, dict):
        raise ConfigError("estimation", "must be a mapping")
    extra = set(spec) - set(ESTIMATION_KEYS)
    if extra:
        raise ConfigError("estimation", f"unknown keys {sorted(extra)}")
    return dict(spec)


def estimation_config(settings: dict) -> EstimationConfig:
    """Build the estimation config from merged file settings and CLI overrides."""
    try:
        return EstimationConfig(**settings)
    except (ContractViolation, TypeError) as exc:
        raise ConfigError("estimation", str(exc)) from exc


def load_instance(path, need_state2: bool = True) -> InstanceConfig:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError("path", str(exc)) from exc
    except yaml.YAMLError as exc:
        raise ConfigError("yaml", str(exc)) from exc
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a mapping")
    for key in ("k", "n"):
        if not isinstance(raw.get(key), int) or raw[key] < 1:
            raise ConfigError(key, "must be a positive integer")
    k, n = raw["k"], raw["n"]
    s1_spec = raw.get("state1", raw.get("state"))
    if s1_spec is None:
        raise ConfigError("state1", "missing")
    state1 = _state(s1_spec, k, n, "state1")
    state2 = None
    if need_state2:
        if "state2" not in raw:
            raise ConfigError("state2", "missing")
        state2 = _state(raw["state2"], k, n, "state2")
    return InstanceConfig(k, n, state1, state2, _observable(raw.get("observable"), k, n),
                          _estimation(raw.get("estimation")))
