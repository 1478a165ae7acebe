"""
Slow, simple verifiers.

These are deliberately naive so that they can be trusted as independent
checks on the solvers: a supporting-line test for numerical-range
membership, a lattice scan over the simplex, and uniform random sampling
of unit vectors.
"""

import functools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ScaleError, SolverConfig, as_matrix, norm
from .structured import SimplexWeights

__all__ = ["MembershipVerdict", "numerical_range_contains",
           "brute_force_simplex", "random_search", "random_unit_vectors"]

MAX_SIMPLEX_POINTS = 4
_BATCH = 1 << 15


@dataclass(frozen=True)
class MembershipVerdict:
    inside: bool
    margin: float
    theta_samples: int
    certificate_angle: Optional[float] = None


def numerical_range_contains(a, z, cfg=None, tol=None):
    """
    Test whether ``z`` lies in the numerical range of ``a``.

    For each angle t on a uniform grid, h(t) is the largest eigenvalue of the
    Hermitian part of exp(-i t) (a - zI). The numerical range is convex, so
    z is inside iff h(t) >= 0 for every t. The margin is min h over the
    grid; a negative value at any sampled angle is a certificate that z is
    outside. ``tol`` (default ``cfg.zero_tol * ||a||_F``) absorbs rounding.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    n = a.shape[0]
    if tol is None:
        tol = cfg.zero_tol * norm(a)
    shifted = a - complex(z) * np.eye(n)
    theta = 2 * np.pi * np.arange(cfg.theta_samples) / cfg.theta_samples
    rot = np.exp(-1j * theta)[:, None, None] * shifted
    herm = (rot + np.conj(np.swapaxes(rot, 1, 2))) / 2
    h = np.linalg.eigvalsh(herm)[:, -1]
    k = int(np.argmin(h))
    margin = float(h[k])
    if margin < -tol:
        return MembershipVerdict(False, margin, cfg.theta_samples, float(theta[k]))
    return MembershipVerdict(True, margin, cfg.theta_samples)


@functools.lru_cache(maxsize=None)
def _compositions(n, total):
    # all nonnegative integer n-tuples summing to total
    if n == 1:
        return np.array([[total]], dtype=np.int32)
    blocks = []
    for first in range(total + 1):
        rest = _compositions(n - 1, total - first)
        blocks.append(np.column_stack([np.full(len(rest), first, np.int32), rest]))
    return np.vstack(blocks)


@functools.lru_cache(maxsize=8)
def _simplex_lattice(n, grid):
    lattice = _compositions(n, grid) / grid
    _compositions.cache_clear()
    lattice.setflags(write=False)
    return lattice


def brute_force_simplex(points, grid) -> Optional[SimplexWeights]:
    """Scan the simplex lattice with spacing 1/grid for sum d_j p_j closest to 0.

    Returns the best lattice point if |sum d_j p_j| <= 2 * diameter / grid,
    else ``None``. Intended for at most four points.
    """
    p = np.asarray(points, dtype=complex).reshape(-1)
    if p.size == 0:
        raise ValueError("need at least one point")
    if p.size > MAX_SIMPLEX_POINTS:
        raise ScaleError(f"brute_force_simplex handles at most {MAX_SIMPLEX_POINTS} points")
    if grid < 10:
        raise ValueError("grid must be >= 10")
    lattice = _simplex_lattice(p.size, int(grid))
    vals = np.abs(lattice @ p)
    k = int(np.argmin(vals))
    diameter = float(np.abs(p[:, None] - p[None, :]).max())
    if vals[k] > 2 * diameter / grid:
        return None
    d = lattice[k].copy()
    return SimplexWeights(d, tuple(int(j) for j in np.flatnonzero(d > 0)))


def random_unit_vectors(rng, count, n):
    """``count`` complex unit vectors, uniform on the sphere in C^n."""
    g = rng.standard_normal((count, n, 2))
    x = g[..., 0] + 1j * g[..., 1]
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def random_search(a, cfg=None, trials=10_000):
    """Best of ``trials`` random unit vectors at minimizing |<x, Ax>|.

    The sample stream depends only on ``cfg.seed``, so a run with fewer
    trials sees a prefix of the vectors of a longer run.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    if trials < 1:
        raise ValueError("trials must be positive")
    n = a.shape[0]
    rng = np.random.default_rng(cfg.seed)
    best_x, best_r = None, np.inf
    done = 0
    while done < trials:
        count = min(_BATCH, trials - done)
        x = random_unit_vectors(rng, count, n)
        r = np.abs(np.einsum("ki,ki->k", x.conj(), x @ a.T))
        k = int(np.argmin(r))
        if r[k] < best_r:
            best_x, best_r = x[k], float(r[k])
        done += count
    return best_x, best_r
