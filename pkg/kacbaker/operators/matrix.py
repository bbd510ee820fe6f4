"""Finite sections of transfer operators."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from kacbaker.errors import DomainError
from kacbaker.model.params import ModelParams


class Basis(str, Enum):
    MONOMIAL = "monomial"
    HERMITE = "hermite"


@dataclass(frozen=True)
class OperatorMatrix:
    """N x N section of an operator in a fixed basis.

    Rows index the output basis element, columns the input one. ``parity``
    is set on the diagonal blocks returned by ``parity_matrices``.
    """

    entries: np.ndarray
    basis: Basis
    beta: complex
    params: ModelParams
    parity: Optional[str] = None

    def __post_init__(self):
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"operator section must be square and non-empty, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("operator section has non-finite entries")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "basis", Basis(self.basis))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_real_symmetric(self) -> bool:
        a = self.entries
        if np.iscomplexobj(a) and np.any(a.imag != 0.0):
            return False
        return bool(np.array_equal(a.real, a.real.T))

    def trace(self) -> complex:
        return complex(np.trace(self.entries))


@dataclass(frozen=True)
class ParityPair:
    """Even and odd diagonal blocks of a parity-commuting operator section."""

    even: OperatorMatrix
    odd: OperatorMatrix
