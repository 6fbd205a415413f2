"""Truncated Fock-space (number-basis) linear algebra.

Everything here works with dense complex matrices on the first
``n_levels`` oscillator states, in units hbar = m = 1.  Operator products
are corrupted in the last few rows/columns by the truncation, so defect
norms exclude a trailing ``buffer`` block.

This module is the brute-force side of the workbench: it knows nothing
about closed-form metric solutions and is used to adjudicate them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    EigensolverFailureError,
    InvalidParameterError,
    NumericOverflowError,
    SingularTransformError,
    UndefinedDefectError,
)

__all__ = [
    "FockDim",
    "FockOperator",
    "ModelParams",
    "SpectrumResult",
    "ladder_ops",
    "canonical_pair",
    "build_hamiltonian",
    "build_T",
    "mat_exp",
    "similarity_transform",
    "hermiticity_defect",
    "eigenvalues",
    "pt_symmetry_defect",
]

#: condition number beyond which a similarity transform is treated as
#: numerically rank-deficient
_COND_LIMIT = 1e12


@dataclass(frozen=True)
class FockDim:
    """Truncation geometry: matrix dimension plus trailing edge buffer.

    Parameters
    ----------
    n_levels : int
        Number of retained oscillator levels (matrix dimension), >= 16.
    buffer : int
        Trailing rows/columns excluded from defect norms, < n_levels/2.
    """

    n_levels: int
    buffer: int = 8

    def __post_init__(self):
        if self.n_levels < 16:
            raise InvalidParameterError(f"n_levels must be >= 16, got {self.n_levels}")
        if not 0 <= self.buffer < self.n_levels / 2:
            raise InvalidParameterError(
                f"buffer must satisfy 0 <= buffer < n_levels/2, got {self.buffer}"
            )


@dataclass(frozen=True)
class FockOperator:
    """A dense complex matrix acting on the truncated number basis."""

    dim: FockDim
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        n = self.dim.n_levels
        if m.shape != (n, n):
            raise InvalidParameterError(f"entries must be {n}x{n}, got {m.shape}")
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.dim.n_levels

    def interior(self) -> np.ndarray:
        """Entries with the trailing buffer rows and columns removed."""
        k = self.n - self.dim.buffer
        return self.entries[:k, :k]


@dataclass(frozen=True)
class ModelParams:
    """Oscillator pair (omega, alpha) of H = omega(a'a + 1/2) + alpha(a^2 - a'^2)."""

    omega: float
    alpha: float

    def __post_init__(self):
        if not self.omega > 0:
            raise InvalidParameterError(f"omega must be > 0, got {self.omega}")

    @property
    def spectral_scale(self) -> float:
        """sqrt(omega^2 + 4 alpha^2), the level spacing of the real spectrum."""
        return math.hypot(self.omega, 2.0 * self.alpha)


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues sorted by real part plus a residual certificate."""

    eigenvalues: np.ndarray
    max_residual: float


def _ladder_matrix(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, n)), k=1).astype(complex)


def ladder_ops(dim: FockDim) -> tuple[FockOperator, FockOperator]:
    """Return (a, a_dagger) with a[n, n+1] = sqrt(n+1)."""
    a = _ladder_matrix(dim.n_levels)
    return FockOperator(dim, a), FockOperator(dim, a.conj().T)


def canonical_pair(omega: float, dim: FockDim) -> tuple[FockOperator, FockOperator]:
    """Position and momentum matrices for oscillator frequency ``omega``.

    x = (a + a')/sqrt(2 omega),  p = i sqrt(omega/2) (a' - a), so that
    sqrt(omega/2) x + i p / sqrt(2 omega) reassembles a exactly.
    """
    if not omega > 0:
        raise InvalidParameterError(f"omega must be > 0, got {omega}")
    a = _ladder_matrix(dim.n_levels)
    ad = a.conj().T
    x = (a + ad) / math.sqrt(2.0 * omega)
    p = 1j * math.sqrt(omega / 2.0) * (ad - a)
    return FockOperator(dim, x), FockOperator(dim, p)


def build_hamiltonian(params: ModelParams, dim: FockDim) -> FockOperator:
    """H = omega (a'a + 1/2) + alpha (a^2 - a'^2); real, couples n to n, n+-2."""
    n = dim.n_levels
    a = _ladder_matrix(n)
    ad = a.conj().T
    H = params.omega * (ad @ a + 0.5 * np.eye(n)) + params.alpha * (a @ a - ad @ ad)
    return FockOperator(dim, H)


def build_T(eps_metric: float, kappa: float, dim: FockDim) -> FockOperator:
    """Metric generator T = eps a'a + kappa (a^2 - a'^2); real matrix."""
    n = dim.n_levels
    a = _ladder_matrix(n)
    ad = a.conj().T
    T = eps_metric * (ad @ a) + kappa * (a @ a - ad @ ad)
    return FockOperator(dim, T)


# Taylor kernel radius: with ||M|| <= 1 the 30-term series tail is far
# below the 1e-12 backward-error target, and the shallow scaling keeps
# the squaring chain short (squarings amplify rounding).
_EXP_KERNEL_RADIUS = 1.0
_EXP_KERNEL_TERMS = 30


def _mat_exp_array(m: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(m, 1)
    if not np.isfinite(norm):
        raise NumericOverflowError("matrix exponential input has non-finite entries")
    squarings = 0
    if norm > _EXP_KERNEL_RADIUS:
        squarings = int(math.ceil(math.log2(norm / _EXP_KERNEL_RADIUS)))
    b = m / (2.0**squarings)
    result = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, _EXP_KERNEL_TERMS + 1):
        term = term @ b / k
        result += term
    for _ in range(squarings):
        result = result @ result
    if not np.all(np.isfinite(result)):
        raise NumericOverflowError("matrix exponential overflowed")
    return result


def mat_exp(M: FockOperator) -> FockOperator:
    """exp(M) by scaling-and-squaring with a Taylor series kernel.

    Exact on diagonal matrices and on nilpotent matrices up to the series
    precision; the kernel radius targets a relative backward error of
    1e-12 or better.
    """
    return FockOperator(M.dim, _mat_exp_array(M.entries))


def similarity_transform(S: FockOperator, M: FockOperator) -> FockOperator:
    """S M S^-1 via a linear solve against S (no explicit inverse).

    Raises SingularTransformError when S is numerically rank-deficient
    (condition estimate above 1e12); with such conditioning the result
    would carry no trustworthy digits.
    """
    s = S.entries
    cond = np.linalg.cond(s)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise SingularTransformError(f"condition estimate {cond:.3e} exceeds {_COND_LIMIT:.0e}")
    x = s @ M.entries
    # solve Y S = X  <=>  S^T Y^T = X^T
    y = np.linalg.solve(s.T, x.T).T
    return FockOperator(M.dim, y)


def hermiticity_defect(M: FockOperator) -> float:
    """|| M - M' ||_F / (2 ||M||_F) on the buffered interior block, in [0, 1]."""
    mi = M.interior()
    norm = np.linalg.norm(mi)
    if norm == 0.0:
        raise UndefinedDefectError("hermiticity defect of the zero matrix is undefined")
    return float(np.linalg.norm(mi - mi.conj().T) / (2.0 * norm))


def eigenvalues(M: FockOperator, hermitian_hint: bool = False) -> SpectrumResult:
    """Full spectrum sorted by real part, with a residual certificate.

    Every returned pair satisfies ||M v - w v|| / ||v|| < 1e-9; the
    largest residual is reported.  With ``hermitian_hint`` the Hermitian
    solver runs on the symmetrized matrix and the certificate refers to
    it; the caller asserts Hermiticity separately (hermiticity_defect).
    """
    m = M.entries
    if not np.all(np.isfinite(m)):
        raise EigensolverFailureError("matrix has non-finite entries")
    try:
        if hermitian_hint:
            m = (m + m.conj().T) / 2.0
            w, v = np.linalg.eigh(m)
            w = w.astype(complex)
        else:
            w, v = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailureError(str(exc)) from exc
    residuals = np.linalg.norm(m @ v - v * w[None, :], axis=0) / np.linalg.norm(v, axis=0)
    order = np.argsort(w.real, kind="stable")
    result = SpectrumResult(w[order], float(residuals.max()))
    if result.max_residual >= 1e-9:
        raise EigensolverFailureError(
            f"residual certificate failed: {result.max_residual:.3e} >= 1e-9"
        )
    return result


def pt_symmetry_defect(M: FockOperator) -> float:
    """|| P conj(M) P - M ||_F / ||M||_F with P = diag((-1)^n).

    Zero exactly for any real matrix coupling n to n, n+-2 (such as H and
    T with real parameters).
    """
    m = M.entries
    norm = np.linalg.norm(m)
    if norm == 0.0:
        return 0.0
    signs = np.where(np.arange(M.n) % 2 == 0, 1.0, -1.0)
    pmp = signs[:, None] * m.conj() * signs[None, :]
    return float(np.linalg.norm(pmp - m) / norm)
