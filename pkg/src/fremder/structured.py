"""
Constructive solvers for structured matrices.

Hermitian and skew-Hermitian matrices are handled by cancelling one
positive and one negative eigen-direction. Normal matrices reduce to
writing the origin as a convex combination of the eigenvalues in the
complex plane. Matrices with a semi-definite skew (or Hermitian) part
reduce to a Hermitian eigenproblem on the kernel of that part.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from .core import (
    Definiteness, FremderSolution, HypothesisError, SolutionKind,
    SolverConfig, StructureError, as_matrix, classify_definiteness,
    classify_solution, fremder_residual, hermitian_parts, is_hermitian,
    is_normal, is_skew_hermitian, kernel_basis, make_solution,
    normal_spectrum, norm,
)

__all__ = [
    "SimplexWeights", "GeneigPair", "GeneigResult", "solve_hermitian",
    "solve_skew_hermitian", "simplex_weights", "solve_normal",
    "solve_semidefinite_skew", "solve_semidefinite_hermitian",
]

_SEMIDEFINITE = (Definiteness.POSITIVE_SEMIDEFINITE,
                 Definiteness.NEGATIVE_SEMIDEFINITE, Definiteness.ZERO)
_DEFINITE = (Definiteness.POSITIVE_DEFINITE, Definiteness.NEGATIVE_DEFINITE)


@dataclass(frozen=True)
class SimplexWeights:
    weights: np.ndarray
    support: tuple


class GeneigPair(NamedTuple):
    value: complex
    vector: np.ndarray
    residual: complex
    kind: SolutionKind


@dataclass(frozen=True)
class GeneigResult:
    pairs: List[GeneigPair] = field(default_factory=list)
    projector_rank: int = 0


def solve_hermitian(a, cfg=None) -> Optional[FremderSolution]:
    """
    Nontrivial fremdervector of a Hermitian matrix, or ``None``.

    One exists iff ``a`` is indefinite. With (lp, up) the largest eigenpair
    and (ln, un) the smallest, x = sqrt(-ln) up + sqrt(lp) un balances
    |c_p|^2 lp + |c_n|^2 ln = 0.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    if not is_hermitian(a):
        raise StructureError("matrix is not Hermitian")
    if classify_definiteness(a, "hermitian", cfg) is not Definiteness.INDEFINITE:
        return None
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    lam_n, lam_p = w[0], w[-1]
    x = np.sqrt(-lam_n) * v[:, -1] + np.sqrt(lam_p) * v[:, 0]
    return make_solution(a, x, cfg)


def solve_skew_hermitian(a, cfg=None) -> Optional[FremderSolution]:
    """Skew-Hermitian case, via the Hermitian matrix i*a."""
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    if not is_skew_hermitian(a):
        raise StructureError("matrix is not skew-Hermitian")
    h = 1j * a
    sol = solve_hermitian((h + h.conj().T) / 2, cfg)
    if sol is None:
        return None
    return make_solution(a, sol.vector, cfg)


def _angular_hull_weights(points, idx, atol):
    """Convex weights (on at most 3 of ``points[idx]``) summing to the origin.

    All points in ``idx`` are nonzero. Returns ``None`` when the points fit
    in an open half-plane through the origin.
    """
    ang = np.angle(points[idx])
    order = np.argsort(ang, kind="stable")
    sidx = idx[order]
    sang = ang[order]
    m = len(sidx)
    if m == 1:
        return None
    gaps = np.diff(np.append(sang, sang[0] + 2 * np.pi))
    g = int(np.argmax(gaps))
    if gaps[g] > np.pi + atol:
        return None
    if gaps[g] >= np.pi - atol:
        # origin on the hull boundary: the points bounding the gap are opposite
        i, j = sidx[g], sidx[(g + 1) % m]
        ri, rj = abs(points[i]), abs(points[j])
        return {i: rj / (ri + rj), j: ri / (ri + rj)}
    # every gap < pi: a fan triangle from the first point straddles the
    # opposite direction and contains the origin strictly
    rel = np.mod(sang - sang[0], 2 * np.pi)
    k = int(np.searchsorted(rel, np.pi, side="right"))
    tri = [sidx[0], sidx[k - 1], sidx[k]]
    p = points[tri]
    mat = np.array([p.real, p.imag, np.ones(3)])
    d = np.linalg.solve(mat, np.array([0.0, 0.0, 1.0]))
    d = np.clip(d, 0.0, None)
    d /= d.sum()
    out = {}
    for t, dt in zip(tri, d):
        out[t] = out.get(t, 0.0) + dt
    return out


def simplex_weights(points, tol=1e-12) -> Optional[SimplexWeights]:
    """
    Write the origin as a convex combination of points in the complex plane.

    Parameters
    ----------
    points : sequence of complex
        The candidate points (eigenvalues, for the normal solver).
    tol : float
        Points with modulus at most ``tol * max|p|`` count as the origin;
        also the angular tolerance for deciding that the origin lies on the
        hull boundary.

    Returns
    -------
    SimplexWeights or None
        Weights d >= 0 with sum 1 and sum d_j p_j = 0, supported on at most
        three points; ``None`` iff the origin is outside the convex hull.
        Combinations of nonzero points are preferred over a zero point.
    """
    p = np.asarray(points, dtype=complex).reshape(-1)
    if p.size == 0:
        raise ValueError("need at least one point")
    if not np.all(np.isfinite(p)):
        raise ValueError("points must be finite")
    mod = np.abs(p)
    scale = mod.max()
    is_zero = mod <= tol * scale
    nonzero = np.flatnonzero(~is_zero)
    combo = _angular_hull_weights(p, nonzero, tol) if nonzero.size else None
    if combo is None and is_zero.any():
        combo = {int(np.flatnonzero(is_zero)[0]): 1.0}
    if combo is None:
        return None
    d = np.zeros(p.size)
    for j, dj in combo.items():
        d[j] = dj
    support = tuple(int(j) for j in np.flatnonzero(d > 0))
    return SimplexWeights(d, support)


def solve_normal(a, cfg=None) -> Optional[FremderSolution]:
    """Fremdervector of a normal matrix from nonnegative eigenvalue weights.

    x = sum_j sqrt(d_j) phi_j, where the d_j put the origin in the convex
    hull of the eigenvalues. The solution is tagged trivial when its support
    only touches numerically zero eigenvalues.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    if not is_normal(a):
        raise StructureError("matrix is not normal")
    spectrum = normal_spectrum(a)
    sw = simplex_weights(spectrum.values, tol=cfg.zero_tol)
    if sw is None:
        return None
    x = spectrum.vectors @ np.sqrt(sw.weights)
    zero = np.abs(spectrum.values[list(sw.support)]) <= cfg.zero_tol * norm(a)
    if np.all(zero):
        # ker(a) == ker(a^H) for normal a; kernel tag takes precedence
        kind = SolutionKind.TRIVIAL_KERNEL
    else:
        kind = SolutionKind.NONTRIVIAL
    return make_solution(a, x, cfg, kind=kind, coefficients=sw.weights)


def _restricted_eigenpairs(a, herm, skew, cfg, kind, to_value):
    cls = classify_definiteness(skew, kind, cfg)
    if cls is Definiteness.INDEFINITE:
        raise HypothesisError(f"the {'skew-Hermitian' if kind == 'skew' else 'Hermitian'}"
                              " part is indefinite")
    if cls in _DEFINITE:
        return GeneigResult([], 0)
    q = kernel_basis(skew, cfg)
    k = q.shape[1]
    if k == 0:
        return GeneigResult([], 0)
    r = q.conj().T @ herm @ q
    w, y = np.linalg.eigh((r + r.conj().T) / 2)
    pairs = []
    n = a.shape[0]
    for j in range(k):
        z = to_value(float(w[j]))
        x = q @ y[:, j]
        x = x / np.linalg.norm(x)
        shifted = z * np.eye(n) - a
        pairs.append(GeneigPair(z, x, fremder_residual(shifted, x),
                                classify_solution(shifted, x, cfg)))
    return GeneigResult(pairs, k)


def solve_semidefinite_skew(a, cfg=None) -> GeneigResult:
    """
    Fremdervalue / fremdervector pairs when the skew part C is semi-definite.

    With Q an orthonormal basis of ker(C), every eigenpair (z, y) of the
    Hermitian matrix Q^H B Q gives a real z and x = Q y with
    <x, (zI - a) x> = 0. Pairs are tagged with their triviality with respect
    to zI - a.

    Raises
    ------
    HypothesisError
        If C is indefinite. A definite C (trivial kernel) gives an empty
        result instead.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    b, c = hermitian_parts(a)
    return _restricted_eigenpairs(a, b, c, cfg, "skew", lambda w: w)


def solve_semidefinite_hermitian(a, cfg=None) -> GeneigResult:
    """Dual case: the Hermitian part B is semi-definite.

    Runs the skew routine on i*a, whose skew part is i*B; a pair (w, x)
    there maps to the purely imaginary fremdervalue z = -i*w of ``a``.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    b, c = hermitian_parts(1j * a)
    return _restricted_eigenpairs(a, b, c, cfg, "skew", lambda w: -1j * w)
