"""Single-mode harmonic oscillator in the holomorphic representation.

H = hbar*omega*(z d/dz + 1/2); the normalized monomials z**n/sqrt(n!) are its
eigenstates with eigenvalue hbar*omega*(n + 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

from .algebra import (
    MultiIndex,
    OperatorPolynomial,
    PolynomialState,
    RationalComplex,
    z_var,
)

EXP = "exp"
SINH = "sinh"
COSH = "cosh"


@dataclass(frozen=True)
class OscillatorSpec:
    omega: float = 1.0
    hbar: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "hbar", Fraction(self.hbar))
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    def quantum(self) -> Fraction:
        """hbar*omega as an exact rational (exact w.r.t. the stored float)."""
        return Fraction(self.omega) * self.hbar


def hamiltonian(spec: OscillatorSpec, site: int = 0) -> OperatorPolynomial:
    hw = spec.quantum()
    z = MultiIndex.single(z_var(site))
    return OperatorPolynomial({(z, z): RationalComplex(hw),
                               (MultiIndex(), MultiIndex()): RationalComplex(hw / 2)})


def _series_indices(kind: str, n_max: int) -> list[int]:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if kind == EXP:
        return list(range(n_max + 1))
    if kind == SINH:
        return [n for n in range(n_max + 1) if n % 2 == 1]
    if kind == COSH:
        return [n for n in range(n_max + 1) if n % 2 == 0]
    raise ValueError(f"unknown series kind {kind!r}; expected exp, sinh or cosh")


def truncated_series_state(kind: str, n_max: int, site: int = 0) -> PolynomialState:
    """Partial sum of e^z, sinh z or cosh z in the normalized basis: the
    n-th term contributes amplitude 1/sqrt(n!)."""
    zv = z_var(site)
    amps = {}
    for n in _series_indices(kind, n_max):
        m = MultiIndex({zv: n}) if n else MultiIndex()
        amps[m] = 1.0 / math.sqrt(math.factorial(n))
    return PolynomialState(amps)


def per_term_eigenvalue_sum(kind: str, n_max: int, spec: OscillatorSpec) -> Fraction:
    """Sum of hbar*omega*(n + 1/2) over the series terms kept by the
    truncation, i.e. each term's expectation with its normalization factor
    restored.  Exact rational."""
    hw = spec.quantum()
    total = Fraction(0)
    for n in _series_indices(kind, n_max):
        total += hw * (Fraction(n) + Fraction(1, 2))
    return total
