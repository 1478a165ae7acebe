"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of the run."""

import json
import time
from pathlib import Path

import numpy as np
import pytest
import jsonschema
from shapely.geometry import MultiPoint, Point

from fremder import (
    Definiteness, SolutionKind, SolverConfig, Status, brute_force_simplex,
    classify_solution, common_kernel_basis, fremder_residual, is_fremdervalue,
    norm, simplex_weights, solve_general, solve_hermitian, solve_normal,
    solve_semidefinite_skew, solve_skew_hermitian,
)
from fremder.cli import main, report_schema

import matrices
from test_cli import CASES, FIXTURES

RESULTS = []
TIME_LIMIT = 60.0


def record(number, title, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
    return ok


@pytest.fixture
def rng():
    return np.random.default_rng(424242)


def _check_solution(a, sol, tol):
    x = sol.vector
    return (abs(np.linalg.norm(x) - 1) <= 1e-12
            and abs(fremder_residual(a, x)) <= tol * norm(a)
            and abs(sol.residual) <= tol * norm(a))


def test_1_residual_contract(rng):
    cfg = SolverConfig()
    start = time.perf_counter()
    checked, bad, matrices_seen = 0, 0, 0
    for trial in range(2000):
        n = int(rng.integers(2, 17))
        family = trial % 4
        sols = []
        if family == 0:
            a = matrices.hermitian(rng, n)
            sols += [solve_hermitian(a, cfg), solve_general(a, cfg).solution]
        elif family == 1:
            a = matrices.skew_hermitian(rng, n)
            sols += [solve_skew_hermitian(a, cfg), solve_general(a, cfg).solution]
        elif family == 2:
            vals = matrices.complex_gaussian(rng, n) + complex(*rng.normal(0, 1.5, 2))
            a = matrices.with_spectrum(rng, vals)
            sols += [solve_normal(a, cfg), solve_general(a, cfg).solution]
        elif trial % 8 == 3:
            a = matrices.complex_gaussian(rng, n, n)
            sols.append(solve_general(a, cfg).solution)
        else:
            a, _ = matrices.planted(rng, n)
            sols.append(solve_general(a, cfg).solution)
        matrices_seen += 1
        for sol in sols:
            if sol is None:
                continue
            checked += 1
            bad += not _check_solution(a, sol, 1e-10)
    elapsed = time.perf_counter() - start
    ok = bad == 0 and matrices_seen >= 2000 and checked > 1000 and elapsed < TIME_LIMIT
    record(1, "residual contract |<x,Ax>| <= 1e-10 ||A||", ok,
           f"{matrices_seen} matrices, {checked} solutions, {bad} violations, {elapsed:.1f}s")
    assert ok


def _sign_count(h):
    vals = np.linalg.eigvals(h).real
    t = 1e-10 * np.abs(vals).max()
    return bool(np.any(vals > t) and np.any(vals < -t))


def test_2_hermitian_iff(rng):
    cfg = SolverConfig()
    patterns = ["pos", "neg", "psd", "nsd", "indef", "indef"]
    agree, nontrivial_ok = 0, True
    for trial in range(1000):
        n = int(rng.integers(2, 9))
        h, vals = matrices.hermitian_with_pattern(rng, n, patterns[trial % 6])
        indefinite = _sign_count(h)
        assert indefinite == (bool(np.any(vals > 0)) and bool(np.any(vals < 0)))
        sol = solve_hermitian(h, cfg)
        agree += (sol is not None) == indefinite
        if sol is not None:
            nontrivial_ok &= classify_solution(h, sol.vector, cfg) is SolutionKind.NONTRIVIAL
    ok = agree == 1000 and nontrivial_ok
    record(2, "Hermitian solver found iff indefinite", ok, f"{agree}/1000 agree")
    assert ok


def _hull_boundary_distance(points):
    hull = MultiPoint([(p.real, p.imag) for p in points]).convex_hull
    boundary = hull.exterior if hull.geom_type == "Polygon" else hull
    return boundary.distance(Point(0, 0))


def test_3_normal_solver_equivalence(rng):
    grid = 200
    agree, used, excluded = 0, 0, 0
    start = time.perf_counter()
    while used < 500:
        n = int(rng.integers(1, 5))
        pts = matrices.complex_gaussian(rng, n) + complex(*rng.normal(0, 1.2, 2))
        diameter = float(np.abs(pts[:, None] - pts[None, :]).max())
        if _hull_boundary_distance(pts) <= 2 * diameter / grid:
            excluded += 1
            continue
        used += 1
        agree += (simplex_weights(pts) is None) == (brute_force_simplex(pts, grid) is None)
    elapsed = time.perf_counter() - start
    ok = agree == 500 and elapsed < TIME_LIMIT
    record(3, "simplex_weights vs brute-force lattice (grid=200)", ok,
           f"{agree}/500 agree, {excluded} near-boundary sets skipped, {elapsed:.1f}s")
    assert ok


def test_4_geneig_correctness(rng):
    cfg = SolverConfig()
    failures = 0
    for _ in range(200):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, n))
        b = matrices.hermitian(rng, n)
        mu = np.concatenate([np.zeros(k), -rng.uniform(0.3, 3.0, n - k)])
        c = 1j * matrices.with_spectrum(rng, mu)
        c = (c - c.conj().T) / 2
        a = b + c
        res = solve_semidefinite_skew(a, cfg)
        good = len(res.pairs) == k and res.projector_rank == k
        for p in res.pairs:
            z = complex(p.value)
            shifted = z * np.eye(n) - a
            good &= abs(z.imag) <= 1e-10
            good &= np.linalg.norm(c @ p.vector) <= 1e-10 * norm(c)
            good &= abs(fremder_residual(shifted, p.vector)) <= 1e-10 * norm(shifted)
        failures += not good
    ok = failures == 0
    record(4, "geneig pairs real, in ker(C), residual <= 1e-10, count = dim ker(C)", ok,
           f"{200 - failures}/200 instances")
    assert ok


def test_5_region_containment(rng):
    cfg = SolverConfig()
    start = time.perf_counter()
    found, probes, violations = 0, 0, 0
    for _ in range(500):
        n = int(rng.integers(2, 5))
        a = matrices.complex_gaussian(rng, n, n)
        # rectangle computed here, independently of fremdervalue_region
        lb = np.linalg.eigvalsh((a + a.conj().T) / 2)
        lc = np.linalg.eigvalsh((a - a.conj().T) / 2j)
        tol = cfg.zero_tol * norm(a)
        grid = [complex(r, i) for r in np.linspace(lb[0], lb[-1], 3)
                for i in np.linspace(lc[0], lc[-1], 3)]
        xs = matrices.complex_gaussian(rng, 2, n)
        grid += [np.vdot(x, a @ x) / np.vdot(x, x) for x in xs]
        for z in grid:
            probes += 1
            out = is_fremdervalue(a, z, cfg)
            if out.status is not Status.FOUND:
                continue
            found += 1
            inside = (lb[0] - tol <= z.real <= lb[-1] + tol
                      and lc[0] - tol <= z.imag <= lc[-1] + tol)
            on_re = min(abs(z.real - lb[0]), abs(z.real - lb[-1])) <= tol
            on_im = min(abs(z.imag - lc[0]), abs(z.imag - lc[-1])) <= tol
            violations += (not inside) or (on_re and on_im)
    elapsed = time.perf_counter() - start
    ok = violations == 0 and found > 0 and elapsed < TIME_LIMIT
    record(5, "found fremdervalues inside rectangle, corner rule holds", ok,
           f"{found}/{probes} probes found, {violations} violations, {elapsed:.1f}s")
    assert ok


def test_6_hermitian_interval():
    a = np.diag([0.0, 2.0])
    expected = {0.1: Status.FOUND, 1.0: Status.FOUND, 1.9: Status.FOUND,
                0: Status.PROVED_NONE, 2: Status.PROVED_NONE,
                3: Status.PROVED_NONE, 1j: Status.PROVED_NONE}
    got = {z: is_fremdervalue(a, z).status for z in expected}
    ok = got == expected
    record(6, "diag(0,2) fremdervalue statuses", ok,
           ", ".join(f"{z}:{s.value}" for z, s in got.items()))
    assert ok


def test_7_lemma_additivity(rng):
    cfg = SolverConfig()
    held = 0
    for _ in range(100):
        n = int(rng.integers(3, 9))
        k = int(rng.integers(1, n - 1))
        core, u0 = matrices.planted(rng, n - k)
        u = matrices.unitary(rng, n)
        full = np.zeros((n, n), dtype=complex)
        full[:n - k, :n - k] = core
        a = u @ full @ u.conj().T
        x = u[:, :n - k] @ u0
        basis = common_kernel_basis(a, cfg)
        y = basis @ matrices.complex_gaussian(rng, basis.shape[1]) * rng.uniform(0.1, 10)
        if classify_solution(a, x, cfg) is SolutionKind.NOT_FREMDER:
            continue
        held += classify_solution(a, x + y, cfg) is not SolutionKind.NOT_FREMDER
    ok = held == 100
    record(7, "x + y stays a fremdervector for y in ker(A) & ker(A^H)", ok, f"{held}/100")
    assert ok


def test_8_planted_recovery(rng):
    cfg = SolverConfig(restarts=32)
    found = 0
    start = time.perf_counter()
    for _ in range(200):
        a, _ = matrices.planted(rng, int(rng.integers(2, 9)))
        out = solve_general(a, cfg)
        found += (out.status is Status.FOUND
                  and classify_solution(a, out.solution.vector, cfg) is SolutionKind.NONTRIVIAL)
    elapsed = time.perf_counter() - start
    ok = found >= 190 and elapsed < TIME_LIMIT
    record(8, "planted recovery >= 95%", ok, f"{found}/200 in {elapsed:.1f}s")
    assert ok


def test_9_cli_contract(capsys):
    schema = report_schema()
    fixtures = sorted(p.name for p in FIXTURES.iterdir())
    covered = set()
    failures = []
    for name, tail, status, code in CASES:
        got = main([tail[0], str(FIXTURES / name)] + tail[1:])
        rep = json.loads(capsys.readouterr().out)
        try:
            jsonschema.validate(rep, schema)
        except jsonschema.ValidationError as exc:
            failures.append(f"{name}: {exc.message}")
        if got != code or rep["status"] != status:
            failures.append(f"{name} {tail}: {rep['status']}/{got}")
        covered.add((tail[0], status, got))
    commands = {c for c, _, _ in covered}
    codes = {g for _, _, g in covered}
    ok = (not failures and len(fixtures) == 12 and commands == {
        "classify", "fremdervector", "fremdervalue", "geneig"} and codes == {0, 1, 2, 3})
    record(9, "CLI reports schema-valid with documented exit codes", ok,
           f"{len(CASES)} runs over {len(fixtures)} fixtures, exit codes {sorted(codes)}"
           + (f"; {failures}" if failures else ""))
    assert ok
