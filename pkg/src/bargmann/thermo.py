"""Eigensolving, partition-function thermodynamics, and Husimi-Q densities.

Conventions: k_B = 1 (temperatures in energy units), natural logarithms.
Entropy is computed algebraically as (<E> - F)/T, exact for a finite
spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import PolynomialState, Var, monomial_norm_sq
from .errors import DimensionTooLarge, NotHermitian, NotNormalized

MAX_DENSE_DIM = 8192
HERMITICITY_TOL = 1e-10
RESIDUAL_FACTOR = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with an a-posteriori residual bound."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    residual_bound: float = 0.0

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        object.__setattr__(self, "eigenvalues", ev)
        if np.any(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be ascending")

    def __len__(self):
        return len(self.eigenvalues)


@dataclass(frozen=True)
class ThermoPoint:
    temperature: float
    Z: float
    free_energy: float
    entropy: float
    mean_energy: float


def _to_dense(H) -> np.ndarray:
    if hasattr(H, "toarray"):
        H = H.toarray()
    A = np.asarray(H, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def eigensolve(H, compute_vectors: bool = True, max_dim: int = MAX_DENSE_DIM) -> Spectrum:
    """Dense Hermitian eigendecomposition with verified residuals.

    Raises NotHermitian when max|H - H^dag| > 1e-10 entry-wise, and
    DimensionTooLarge beyond `max_dim`.
    """
    A = _to_dense(H)
    n = A.shape[0]
    if n > max_dim:
        raise DimensionTooLarge(f"dimension {n} exceeds cap {max_dim}")
    dev = np.abs(A - A.conj().T).max() if n else 0.0
    if dev > HERMITICITY_TOL:
        raise NotHermitian(f"max |H - H^dag| = {dev:.3e} > {HERMITICITY_TOL:.0e}")
    scale = np.abs(A).max() if n else 0.0
    evals, evecs = np.linalg.eigh(A)
    residual = np.linalg.norm(A @ evecs - evecs * evals, axis=0)
    bound = float(residual.max()) if n else 0.0
    cap = RESIDUAL_FACTOR * scale * n
    if bound > cap:
        raise RuntimeError(f"eigendecomposition residual {bound:.3e} exceeds {cap:.3e}")
    return Spectrum(eigenvalues=evals,
                    eigenvectors=evecs if compute_vectors else None,
                    residual_bound=bound)


def partition_function(spec: Spectrum, T: float) -> ThermoPoint:
    """Z, F, S, <E> at temperature T (k_B = 1), overflow-safe via the
    ground-energy shift Z = e^(-E0/T) * sum e^(-(En-E0)/T)."""
    if not T > 0:
        raise ValueError("temperature must be positive")
    E = spec.eigenvalues
    if len(E) == 0:
        raise ValueError("empty spectrum")
    beta = 1.0 / T
    e0 = float(E[0])
    w = np.exp(-beta * (E - e0))
    W = float(w.sum())
    log_z = -beta * e0 + math.log(W)
    try:
        Z = math.exp(log_z)
    except OverflowError:
        Z = math.inf
    F = e0 - T * math.log(W)
    mean_E = float((E * w).sum()) / W
    S = (mean_E - F) / T
    return ThermoPoint(temperature=float(T), Z=Z, free_energy=F,
                       entropy=S, mean_energy=mean_E)


def thermo_sweep(spec: Spectrum, T_grid: Sequence[float]) -> list[ThermoPoint]:
    grid = [float(t) for t in T_grid]
    if any(not t > 0 for t in grid):
        raise ValueError("all temperatures must be positive")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("temperature grid must be ascending")
    return [partition_function(spec, t) for t in grid]


def _f17(x: float) -> str:
    return f"{x:.16e}"


def _f12(x: float) -> str:
    return f"{x:.11e}"


def spectrum_to_json(spec: Spectrum) -> str:
    """{"eigenvalues": [...], "residual_bound": f} with 17 significant digits."""
    vals = ", ".join(_f17(float(x)) for x in spec.eigenvalues)
    return f'{{"eigenvalues": [{vals}], "residual_bound": {_f17(spec.residual_bound)}}}\n'


def thermo_to_csv(points: Iterable[ThermoPoint]) -> str:
    """CSV with header T,Z,F,S,E_mean and 12 significant digits per field."""
    lines = ["T,Z,F,S,E_mean"]
    for p in points:
        lines.append(",".join(_f12(x) for x in
                              (p.temperature, p.Z, p.free_energy, p.entropy, p.mean_energy)))
    return "\n".join(lines) + "\n"


def husimi_q(state: PolynomialState, points: Sequence[Sequence[complex]],
             variables: Sequence[Var] | None = None) -> list[float]:
    """Husimi-Q density Q(z) = pi^-d e^(-|z|^2) |psi(z)|^2 at each point.

    `variables` fixes the phase-space coordinates (ordered); it defaults to
    the state's active variables and must cover them.  Each point supplies
    one complex coordinate per variable.  The state must be normalized to
    1e-10; psi is evaluated with the monomial normalizations restored.
    """
    if abs(state.norm() - 1.0) > 1e-10:
        raise NotNormalized(f"state norm {state.norm()!r} is not 1 within 1e-10")
    if variables is None:
        variables = state.active_variables()
    variables = list(variables)
    missing = set(state.active_variables()) - set(variables)
    if missing:
        raise ValueError(f"variables must cover the state's modes; missing {sorted(missing)}")
    d = len(variables)
    pos = {v: k for k, v in enumerate(variables)}

    # coefficient of prod z^n with normalization restored: amp / sqrt(prod n!)
    monomials = []
    for m, amp in state.items():
        exps = [0] * d
        for v, e in m.items():
            exps[pos[v]] = e
        monomials.append((exps, amp / math.sqrt(monomial_norm_sq(m))))

    out = []
    pref = math.pi ** (-d)
    for pt in points:
        zs = [complex(c) for c in pt]
        if len(zs) != d:
            raise ValueError(f"point has {len(zs)} coordinates, expected {d}")
        psi = 0j
        for exps, c in monomials:
            term = c
            for zv, e in zip(zs, exps):
                if e:
                    term *= zv ** e
            psi += term
        r2 = sum(abs(zv) ** 2 for zv in zs)
        out.append(pref * math.exp(-r2) * abs(psi) ** 2)
    return out
