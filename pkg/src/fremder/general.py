"""
Fremdervectors of arbitrary matrices and fremdervalue screening.

A fremdervector of A lies on the intersection of the two real quadrics
<x, Bx> = 0 and <x, -iCx> = 0 on the unit sphere. Structured inputs are
dispatched to the constructive solvers; everything else goes through a
local Gauss-Newton search with random restarts, which can find solutions
but never proves their absence.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    Definiteness, FremderSolution, SolutionKind, SolverConfig, as_matrix,
    classify_definiteness, classify_solution, hermitian_parts, is_hermitian,
    is_normal, is_skew_hermitian, make_solution, norm,
)
from .oracle import numerical_range_contains, random_unit_vectors
from .structured import solve_hermitian, solve_normal, solve_skew_hermitian

__all__ = ["Status", "NecessaryConditionsReport", "FremdervalueRegion",
           "SolveOutcome", "necessary_conditions", "solve_general",
           "fremdervalue_region", "is_fremdervalue", "sphere_descent"]

MAX_ITER = 100
MAX_HALVINGS = 40
ARMIJO = 1e-4
GRAD_TOL = 1e-12
# relative decrease of f below which an iterate counts as stalled
STALL = 1e-8


class Status(enum.Enum):
    FOUND = "Found"
    NOT_FOUND = "NotFound"
    PROVED_NONE = "ProvedNone"


@dataclass(frozen=True)
class NecessaryConditionsReport:
    b_class: Definiteness
    c_class: Definiteness
    admissible: bool


@dataclass(frozen=True)
class FremdervalueRegion:
    """Rectangle [re_min, re_max] x [im_min, im_max] bounding the fremdervalues.

    A fremdervalue cannot sit on a bound in both coordinates at once. When
    ``exact`` is set (Hermitian or skew-Hermitian input) the admissible set
    is exactly the open interval left over by that rule.
    """
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    corner_rule: bool = True
    exact: bool = False

    def admits(self, z, tol=0.0):
        """False when ``z`` is provably not a fremdervalue."""
        z = complex(z)
        if not (self.re_min - tol <= z.real <= self.re_max + tol):
            return False
        if not (self.im_min - tol <= z.imag <= self.im_max + tol):
            return False
        if self.corner_rule:
            on_re = min(abs(z.real - self.re_min), abs(z.real - self.re_max)) <= tol
            on_im = min(abs(z.imag - self.im_min), abs(z.imag - self.im_max)) <= tol
            if on_re and on_im:
                return False
        return True


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    solution: Optional[FremderSolution] = None
    restarts_used: int = 0
    best_residual: float = math.inf
    method: str = ""


def necessary_conditions(a, cfg=None):
    """Definiteness of B and C; inadmissible means no nontrivial solution."""
    cfg = cfg or SolverConfig()
    b, c = hermitian_parts(a)
    bc = classify_definiteness(b, "hermitian", cfg)
    cc = classify_definiteness(c, "skew", cfg)
    ok = Definiteness.INDEFINITE in (bc, cc)
    return NecessaryConditionsReport(bc, cc, ok)


def fremdervalue_region(a, cfg=None):
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    b, c = hermitian_parts(a)
    lb = np.linalg.eigvalsh(b)
    lc = np.linalg.eigvalsh(-1j * c)
    exact = bool(is_hermitian(a) or is_skew_hermitian(a))
    return FremdervalueRegion(float(lb[0]), float(lb[-1]),
                              float(lc[0]), float(lc[-1]), True, exact)


def sphere_descent(b, h, x, target, max_iter=MAX_ITER):
    """
    Drive (<x,Bx>, <x,Hx>) to zero over unit vectors x.

    ``b`` and ``h`` are Hermitian. Each step is the minimum-norm Gauss-Newton
    correction within the tangent space of the sphere, falling back to the
    projected gradient of f = <x,Bx>^2 + <x,Hx>^2; the step length is set by
    Armijo backtracking on f and the iterate is renormalized.

    Returns ``(x, |r|)`` where r = <x,Bx> + i<x,Hx> is the final residual.
    """
    x = x / np.linalg.norm(x)

    def resid(v):
        return np.vdot(v, b @ v).real, np.vdot(v, h @ v).real

    beta, gamma = resid(x)
    f = beta * beta + gamma * gamma
    for _ in range(max_iter):
        if math.sqrt(f) <= target:
            break
        bx, hx = b @ x, h @ x
        g1 = 2 * (bx - beta * x)
        g2 = 2 * (hx - gamma * x)
        grad = 2 * (beta * g1 + gamma * g2)
        gnorm = np.linalg.norm(grad)
        if gnorm <= GRAD_TOL:
            break
        gram = np.array([[np.vdot(g1, g1).real, np.vdot(g1, g2).real],
                         [np.vdot(g2, g1).real, np.vdot(g2, g2).real]])
        mu = np.linalg.lstsq(gram, np.array([beta, gamma]), rcond=1e-13)[0]
        directions = [-(mu[0] * g1 + mu[1] * g2), -grad]
        f_old = f
        moved = False
        for d in directions:
            slope = np.vdot(grad, d).real
            if not slope < 0:
                continue
            t = 1.0
            for _ in range(MAX_HALVINGS):
                y = x + t * d
                y /= np.linalg.norm(y)
                nb, ng = resid(y)
                fy = nb * nb + ng * ng
                if fy <= f + ARMIJO * t * slope:
                    x, beta, gamma, f = y, nb, ng, fy
                    moved = True
                    break
                t *= 0.5
            if moved:
                break
        if not moved or f > (1 - STALL) * f_old:
            break
    return x, math.sqrt(f)


def _structured_outcome(a, cfg):
    if is_hermitian(a):
        sol, method = solve_hermitian(a, cfg), "hermitian"
    elif is_skew_hermitian(a):
        sol, method = solve_skew_hermitian(a, cfg), "skew-hermitian"
    elif is_normal(a):
        sol, method = solve_normal(a, cfg), "normal"
    else:
        return None
    if sol is not None and sol.kind is SolutionKind.NONTRIVIAL:
        return SolveOutcome(Status.FOUND, sol, 0, abs(sol.residual), method)
    best = abs(sol.residual) if sol is not None else math.inf
    return SolveOutcome(Status.PROVED_NONE, None, 0, best, method)


def solve_general(a, cfg=None):
    """
    Search for a nontrivial fremdervector of an arbitrary square matrix.

    Hermitian, skew-Hermitian and normal inputs are decided exactly. Other
    inputs are first screened by the definiteness of B and C (neither
    indefinite proves absence), then searched with ``cfg.restarts``
    independent random starts; the lowest-index acceptable restart wins.
    ``NotFound`` is not a proof of absence.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    out = _structured_outcome(a, cfg)
    if out is not None:
        return out
    if not necessary_conditions(a, cfg).admissible:
        return SolveOutcome(Status.PROVED_NONE, method="necessary-conditions")

    scale = norm(a)
    b, c = hermitian_parts(a / scale)
    h = -1j * c
    n = a.shape[0]
    rng = np.random.default_rng(cfg.seed)
    best_r = math.inf
    for k in range(cfg.restarts):
        x0 = random_unit_vectors(rng, 1, n)[0]
        x, r = sphere_descent(b, h, x0, cfg.residual_tol)
        if r < best_r:
            best_r = r
        if r <= cfg.residual_tol and classify_solution(a, x, cfg) is SolutionKind.NONTRIVIAL:
            sol = make_solution(a, x, cfg, kind=SolutionKind.NONTRIVIAL)
            return SolveOutcome(Status.FOUND, sol, k + 1, abs(sol.residual), "descent")
    return SolveOutcome(Status.NOT_FOUND, None, cfg.restarts, best_r * scale, "descent")


def is_fremdervalue(a, z, cfg=None):
    """Decide whether z is a fremdervalue of ``a`` by solving for zI - a.

    Before searching, z is screened against the bounding rectangle and
    against the numerical range of ``a``; failing either proves absence.
    The returned solution, if any, is a fremdervector of zI - a.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a)
    z = complex(z)
    if not np.isfinite(z):
        raise ValueError("z must be finite")
    tol = cfg.zero_tol * norm(a)
    if not fremdervalue_region(a, cfg).admits(z, tol):
        return SolveOutcome(Status.PROVED_NONE, method="region")
    if not numerical_range_contains(a, z, cfg).inside:
        return SolveOutcome(Status.PROVED_NONE, method="numerical-range")
    return solve_general(z * np.eye(a.shape[0]) - a, cfg)
