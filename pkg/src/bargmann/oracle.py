"""Independent ground truth: dense tensor-product spin matrices.

Deliberately naive Kronecker-product construction of the same chain
Hamiltonians, sharing nothing with the holomorphic path beyond the ChainSpec.
Phase convention is Condon-Shortley (real non-negative ladder elements), so
agreement with the sector matrices is entry-wise, not just spectral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import MultiIndex, w_var, z_var
from .chain import ChainSpec
from .errors import DimensionMismatch, DimensionTooLarge, SectorViolation
from .thermo import Spectrum

MAX_ORACLE_DIM = 8192


@dataclass(frozen=True)
class SpinMatrices:
    s: Fraction
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray


def spin_matrices(s, hbar: float = 1.0) -> SpinMatrices:
    """Standard spin-s matrices in the |s, m> basis ordered m = -s..+s."""
    sf = Fraction(s)
    if (2 * sf).denominator != 1 or sf < 0:
        raise ValueError(f"s={s} is not a non-negative half-integer")
    d = int(2 * sf) + 1
    h = float(hbar)
    ms = [float(-sf + k) for k in range(d)]
    sval = float(sf)
    sp = np.zeros((d, d), dtype=np.complex128)
    for k in range(d - 1):
        m = ms[k]
        sp[k + 1, k] = h * np.sqrt(sval * (sval + 1) - m * (m + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    sz = np.diag(np.array(ms, dtype=np.complex128)) * h
    return SpinMatrices(s=sf, sx=sx, sy=sy, sz=sz)


def _embed_pair(a: np.ndarray, b: np.ndarray, i: int, j: int, n: int, d: int) -> np.ndarray:
    ops = [np.eye(d, dtype=np.complex128)] * n
    ops[i] = a
    ops[j] = b
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def oracle_hamiltonian(spec: ChainSpec, max_dim: int = MAX_ORACLE_DIM) -> np.ndarray:
    dim = spec.dimension()
    if dim > max_dim:
        raise DimensionTooLarge(f"dimension {dim} exceeds cap {max_dim}")
    mats = spin_matrices(spec.spin, float(spec.hbar))
    axes = (mats.sx, mats.sy, mats.sz)
    d = int(2 * spec.spin) + 1
    H = np.zeros((dim, dim), dtype=np.complex128)
    for (i, j) in spec.bonds():
        for J, S in zip(spec.couplings, axes):
            if J == 0.0:
                continue
            H += J * _embed_pair(S, S, i, j, spec.n_sites, d)
    return H


def basis_isomorphism(idx: MultiIndex, s, n_sites: int) -> int:
    """Row index of the tensor-product state matching a sector monomial,
    under the per-site m = -s..+s ordering (site 0 slowest)."""
    sf = Fraction(s)
    twos = int(2 * sf)
    seen = 0
    out = 0
    for site in range(n_sites):
        a = idx.get(z_var(site))
        b = idx.get(w_var(site))
        if a + b != twos:
            raise SectorViolation(
                f"site {site}: alpha+beta = {a + b}, expected {twos}")
        seen += (a > 0) + (b > 0)
        out = out * (twos + 1) + a
    if seen != len(idx):
        raise SectorViolation("monomial uses variables outside the chain's sites")
    return out


@dataclass(frozen=True)
class SpectrumComparison:
    dimension: int
    max_abs_diff: float
    tol: float
    passed: bool
    worst: tuple  # (index, a, b, |a-b|) sorted by diff descending

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status}: max |diff| = {self.max_abs_diff:.3e} (tol {self.tol:.3e}, "
                 f"dim {self.dimension})"]
        for idx, a, b, dd in self.worst:
            lines.append(f"  [{idx}] {a:+.12e} vs {b:+.12e}  |diff| = {dd:.3e}")
        return "\n".join(lines)


def compare_spectra(a: Spectrum, b: Spectrum, tol: float) -> SpectrumComparison:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions differ: {len(a)} vs {len(b)}")
    diff = np.abs(a.eigenvalues - b.eigenvalues)
    max_diff = float(diff.max()) if len(a) else 0.0
    order = np.argsort(diff)[::-1][: min(5, len(a))]
    worst = tuple((int(i), float(a.eigenvalues[i]), float(b.eigenvalues[i]), float(diff[i]))
                  for i in order)
    return SpectrumComparison(dimension=len(a), max_abs_diff=max_diff, tol=float(tol),
                              passed=bool(max_diff <= tol), worst=worst)
