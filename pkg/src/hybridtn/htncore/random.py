"""Seeded random instances for tests, experiments, and CLI configs."""

from __future__ import annotations

import numpy as np

from ..numkit import haar_random_unitary, random_pauli_string
from .model import HTNState, IndexedUnitary, InitStateMapped, SubsystemObservable


def random_htn_state(k: int, n: int, rng: np.random.Generator, variant: str = "indexed") -> HTNState:
    """Haar root and Haar leaves; ``variant`` is ``indexed``, ``init`` or ``mixed``."""
    root = haar_random_unitary(k, rng)
    leaves = []
    for m in range(k):
        kind = variant if variant != "mixed" else ("indexed", "init")[m % 2]
        if kind == "indexed":
            leaves.append(IndexedUnitary(haar_random_unitary(n, rng), haar_random_unitary(n, rng)))
        else:
            leaves.append(InitStateMapped(haar_random_unitary(n, rng)))
    return HTNState(root, leaves)


def random_pauli_observables(k: int, n: int, rng: np.random.Generator) -> list[SubsystemObservable]:
    return [SubsystemObservable.from_paulis("".join(random_pauli_string(n, rng))) for _ in range(k)]
