"""Model parameters, inverse temperature and periodic spin words."""

import cmath
import math
from dataclasses import dataclass
from typing import Union

from kacbaker.errors import DomainError

# Inverse temperature with the coupling J absorbed (beta stands for J*beta).
Beta = complex
BetaLike = Union[int, float, complex]


def as_beta(value: BetaLike) -> complex:
    """Coerce to a finite complex inverse temperature."""
    try:
        beta = complex(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"beta must be a number, got {value!r}") from exc
    if not cmath.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta!r}")
    return beta


def as_real_beta(value: BetaLike, *, what: str = "operation") -> float:
    """Coerce to a real inverse temperature, rejecting nonzero imaginary parts."""
    beta = as_beta(value)
    if beta.imag != 0.0:
        raise DomainError(f"{what} requires real beta, got {beta!r}")
    return beta.real


@dataclass(frozen=True)
class ModelParams:
    """Decay rate of the Kac-Baker interaction.

    The two-body interaction is -J xi_i xi_j lam^|i-j|; ``gamma`` is the
    decay exponent, lam = exp(-gamma).
    """

    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not (0.0 < lam < 1.0) or not math.isfinite(lam):
            raise DomainError(f"lambda must lie in (0, 1), got {self.lam!r}")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def from_gamma(cls, gamma: float) -> "ModelParams":
        if not gamma > 0:
            raise DomainError(f"gamma must be positive, got {gamma!r}")
        return cls(math.exp(-gamma))

    @property
    def gamma(self) -> float:
        return -math.log(self.lam)

    @property
    def disc_radius_floor(self) -> float:
        """Lower bound lam/(1-lam) for the radius of the holomorphy disc."""
        return self.lam / (1.0 - self.lam)


@dataclass(frozen=True)
class SpinConfig:
    """One period of a periodic spin configuration."""

    spins: tuple[int, ...]

    def __post_init__(self):
        spins = tuple(int(s) for s in self.spins)
        if not spins:
            raise DomainError("a spin word needs at least one site")
        if any(s not in (1, -1) for s in spins):
            raise DomainError(f"spins must be +1 or -1, got {self.spins!r}")
        object.__setattr__(self, "spins", spins)

    @property
    def n(self) -> int:
        return len(self.spins)

    @classmethod
    def from_index(cls, index: int, n: int) -> "SpinConfig":
        """Decode an enumeration index: bit k is site k, bit value 1 is spin +1."""
        if n < 1 or not 0 <= index < (1 << n):
            raise DomainError(f"index {index} out of range for period {n}")
        return cls(tuple(1 if (index >> k) & 1 else -1 for k in range(n)))

    def flipped(self) -> "SpinConfig":
        return SpinConfig(tuple(-s for s in self.spins))
