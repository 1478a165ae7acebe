"""
Matrix plumbing shared by every solver.

Hermitian / skew-Hermitian splitting, definiteness classes, numerical
kernels, the residual <x, Ax> and the trivial / nontrivial taxonomy of
vectors that are orthogonal to their image.

All relative thresholds are measured against the Frobenius norm.
"""

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

__all__ = [
    "FremderError", "DimensionError", "StructureError", "HypothesisError",
    "ScaleError", "SolverConfig", "HermitianParts", "Spectrum",
    "Definiteness", "SolutionKind", "FremderSolution", "as_matrix",
    "as_vector", "norm", "hermitian_parts", "is_hermitian",
    "is_skew_hermitian", "is_normal", "classify_definiteness",
    "kernel_basis", "common_kernel_basis", "normal_spectrum",
    "fremder_residual", "classify_solution", "make_solution",
]

# structure checks (Hermitian / skew declared kinds)
STRUCTURE_TOL = 1e-12
# relative commutator threshold for normality, against ||a||_F**2
NORMAL_TOL = 1e-10


class FremderError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(FremderError, ValueError):
    """Raised for non-square, non-finite or mismatched inputs."""


class StructureError(FremderError, ValueError):
    """Raised when a matrix does not have the structure a routine requires."""


class HypothesisError(FremderError):
    """Raised when a theorem's hypothesis (e.g. semi-definiteness) fails."""


class ScaleError(FremderError, ValueError):
    """Raised when an oracle is asked to work beyond its documented size."""


@dataclass(frozen=True)
class SolverConfig:
    zero_tol: float = 1e-10
    residual_tol: float = 1e-10
    restarts: int = 32
    seed: int = 0
    theta_samples: int = 720

    def __post_init__(self):
        if not (self.zero_tol > 0 and self.residual_tol > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.theta_samples < 1:
            raise ValueError("theta_samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


class HermitianParts(NamedTuple):
    b: np.ndarray
    c: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues and orthonormal eigenvectors (columns) of a normal matrix."""
    values: np.ndarray
    vectors: np.ndarray
    residual_bound: float


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemiDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    NEGATIVE_SEMIDEFINITE = "NegativeSemiDefinite"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"


class SolutionKind(enum.Enum):
    NONTRIVIAL = "Nontrivial"
    TRIVIAL_KERNEL = "TrivialKernel"
    TRIVIAL_ADJOINT_KERNEL = "TrivialAdjointKernel"
    NOT_FREMDER = "NotFremder"

    @property
    def is_trivial(self):
        return self in (SolutionKind.TRIVIAL_KERNEL,
                        SolutionKind.TRIVIAL_ADJOINT_KERNEL)


@dataclass(frozen=True)
class FremderSolution:
    """A unit vector x with its residual <x, Ax> and triviality tag.

    ``coefficients`` holds the weights d_j = |c_j|**2 on the eigenvectors
    when the vector came from the normal-matrix solver, else ``None``.
    """
    vector: np.ndarray
    residual: complex
    kind: SolutionKind
    coefficients: Optional[np.ndarray] = None


def as_matrix(a):
    """Validate ``a`` as a finite square matrix and return a complex copy."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionError("matrix has non-finite entries")
    return m


def as_vector(x, n):
    v = np.array(x, dtype=complex).reshape(-1)
    if v.shape != (n,):
        raise DimensionError(f"expected a vector of length {n}, got shape {np.shape(x)}")
    if not np.all(np.isfinite(v)):
        raise DimensionError("vector has non-finite entries")
    return v


def norm(a):
    """Frobenius norm, scaled first so tiny or huge entries neither underflow nor overflow."""
    a = np.asarray(a)
    m = float(np.abs(a).max()) if a.size else 0.0
    if m == 0.0 or not np.isfinite(m):
        return m
    return m * float(np.linalg.norm(a / m))


def hermitian_parts(a):
    """Split ``a`` into B = (a + a^H)/2 and C = (a - a^H)/2."""
    a = as_matrix(a)
    ah = a.conj().T
    return HermitianParts((a + ah) / 2, (a - ah) / 2)


def is_hermitian(a, tol=STRUCTURE_TOL):
    a = np.asarray(a)
    return norm(a - a.conj().T) <= tol * norm(a)


def is_skew_hermitian(a, tol=STRUCTURE_TOL):
    a = np.asarray(a)
    return norm(a + a.conj().T) <= tol * norm(a)


def is_normal(a, tol=NORMAL_TOL):
    a = np.asarray(a)
    ah = a.conj().T
    return norm(a @ ah - ah @ a) <= tol * norm(a) ** 2


def _sign_class(values, threshold):
    pos = bool(np.any(values > threshold))
    neg = bool(np.any(values < -threshold))
    zero = bool(np.any(np.abs(values) <= threshold))
    if pos and neg:
        return Definiteness.INDEFINITE
    if pos:
        return Definiteness.POSITIVE_SEMIDEFINITE if zero else Definiteness.POSITIVE_DEFINITE
    if neg:
        return Definiteness.NEGATIVE_SEMIDEFINITE if zero else Definiteness.NEGATIVE_DEFINITE
    return Definiteness.ZERO


def classify_definiteness(m, kind="hermitian", cfg=None):
    """
    Definiteness class of a Hermitian or skew-Hermitian matrix.

    For ``kind="skew"`` the signs of the imaginary parts of the eigenvalues
    decide the class. Eigenvalues with modulus at most
    ``cfg.zero_tol * ||m||_F`` count as zero.

    Raises
    ------
    StructureError
        If ``m`` is not of the declared kind within 1e-12 relative.
    """
    cfg = cfg or SolverConfig()
    m = as_matrix(m)
    if kind in ("hermitian", "Hermitian"):
        if not is_hermitian(m):
            raise StructureError("matrix is not Hermitian")
        h = m
    elif kind in ("skew", "skew-hermitian", "SkewHermitian"):
        if not is_skew_hermitian(m):
            raise StructureError("matrix is not skew-Hermitian")
        # eigenvalues of -i*m are the imaginary parts of those of m
        h = -1j * m
    else:
        raise ValueError(f"unknown kind {kind!r}")
    vals = np.linalg.eigvalsh((h + h.conj().T) / 2)
    return _sign_class(vals, cfg.zero_tol * norm(m))


def _null_space(m, zero_tol):
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    keep = s <= zero_tol * smax
    # svd of an n x n matrix returns n singular values
    return vh[keep].conj().T


def kernel_basis(m, cfg=None):
    """Orthonormal basis (as columns) of the numerical null space of ``m``.

    A right singular vector belongs to the kernel when its singular value is
    at most ``cfg.zero_tol`` times the largest one. Returns an ``(n, k)``
    array; ``k == 0`` for a nonsingular matrix.
    """
    cfg = cfg or SolverConfig()
    return _null_space(as_matrix(m), cfg.zero_tol)


def common_kernel_basis(a, cfg=None):
    """Orthonormal basis of ker(a) & ker(a^H)."""
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    n = a.shape[0]
    stacked = np.vstack([a, a.conj().T])
    _, s, vh = np.linalg.svd(stacked)
    smax = s[0] if s.size else 0.0
    keep = np.zeros(n, dtype=bool)
    keep[: s.size] = s <= cfg.zero_tol * smax
    return vh[keep].conj().T


def normal_spectrum(a):
    """Spectrum of a normal matrix from its complex Schur form.

    The Schur vectors of a normal matrix are eigenvectors, so the basis is
    orthonormal even for repeated eigenvalues.
    """
    a = as_matrix(a)
    if not is_normal(a):
        raise StructureError("matrix is not normal")
    t, z = scipy.linalg.schur(a, output="complex")
    values = np.diag(t).copy()
    res = np.linalg.norm(a @ z - z * values, axis=0)
    return Spectrum(values, z, float(res.max()))


def fremder_residual(a, x):
    """<x, Ax>, conjugate-linear in the first slot. No normalization."""
    a = np.asarray(a, dtype=complex)
    x = as_vector(x, a.shape[0])
    return complex(np.vdot(x, a @ x))


def classify_solution(a, x, cfg=None):
    """Tag ``x`` as NotFremder, TrivialKernel, TrivialAdjointKernel or Nontrivial.

    Kernel membership is tested before adjoint-kernel membership.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    x = as_vector(x, a.shape[0])
    xx = float(np.vdot(x, x).real)
    if xx == 0.0:
        raise ValueError("the zero vector is excluded")
    an = norm(a)
    if abs(np.vdot(x, a @ x)) > cfg.residual_tol * an * xx:
        return SolutionKind.NOT_FREMDER
    xn = np.sqrt(xx)
    if np.linalg.norm(a @ x) <= cfg.zero_tol * an * xn:
        return SolutionKind.TRIVIAL_KERNEL
    if np.linalg.norm(a.conj().T @ x) <= cfg.zero_tol * an * xn:
        return SolutionKind.TRIVIAL_ADJOINT_KERNEL
    return SolutionKind.NONTRIVIAL


def make_solution(a, x, cfg=None, kind=None, coefficients=None):
    """Normalize ``x`` and package it with its residual against ``a``."""
    a = as_matrix(a)
    x = as_vector(x, a.shape[0])
    x = x / np.linalg.norm(x)
    if kind is None:
        kind = classify_solution(a, x, cfg)
    return FremderSolution(x, fremder_residual(a, x), kind, coefficients)
