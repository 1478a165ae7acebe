"""
Command-line front end.

    fremder classify PATH
    fremder fremdervector PATH
    fremder fremdervalue PATH (--z RE,IM | --region)
    fremder geneig PATH [--part skew|hermitian]

One report (schema ``fremder-report/1``) goes to stdout, messages to
stderr. Exit codes: 0 decided, 1 NotFound, 2 input error, 3 hypothesis
error.
"""

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .core import (
    FremderError, HypothesisError, SolverConfig, is_hermitian, is_normal,
    is_skew_hermitian,
)
from .general import (
    Status, fremdervalue_region, is_fremdervalue, necessary_conditions,
    solve_general,
)
from .matrix_io import matrix_digest, read_matrix
from .structured import solve_semidefinite_hermitian, solve_semidefinite_skew

SCHEMA_ID = "fremder-report/1"
EXIT_OK, EXIT_NOT_FOUND, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


def report_schema():
    text = resources.files("fremder").joinpath("report_schema.json").read_text()
    return json.loads(text)


@dataclass
class Report:
    command: str
    input_digest: str
    status: str
    solution: Optional[dict] = None
    region: Optional[dict] = None
    pairs: Optional[list] = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "schema": SCHEMA_ID,
            "command": self.command,
            "input_digest": self.input_digest,
            "status": self.status,
            "solution": self.solution,
            "region": self.region,
            "pairs": self.pairs,
            "diagnostics": {k: str(v) for k, v in self.diagnostics.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        lines = [f"schema: {SCHEMA_ID}"]
        for key, val in self.to_dict().items():
            if key == "schema":
                continue
            lines.extend(_text_lines(key, val))
        return "\n".join(lines)


def _num(x):
    return f"{x:.17g}" if isinstance(x, float) else str(x)


def _text_lines(key, val, indent=""):
    if isinstance(val, dict):
        out = [f"{indent}{key}:"]
        for k, v in val.items():
            out.extend(_text_lines(k, v, indent + "  "))
        return out
    if isinstance(val, list) and val and isinstance(val[0], dict):
        out = [f"{indent}{key}:"]
        for i, item in enumerate(val):
            out.extend(_text_lines(f"[{i}]", item, indent + "  "))
        return out
    if isinstance(val, list):
        return [f"{indent}{key}: " + (" ".join(_flat(val)) if val else "[]")]
    if val is None:
        return [f"{indent}{key}: null"]
    return [f"{indent}{key}: {_num(val)}"]


def _flat(val):
    for v in val:
        if isinstance(v, list):
            yield "(" + ",".join(_num(u) for u in v) + ")"
        else:
            yield _num(v)


def _cpair(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _solution_dict(sol):
    if sol is None:
        return None
    coeffs = None if sol.coefficients is None else [float(d) for d in sol.coefficients]
    return {"vector": [_cpair(v) for v in sol.vector],
            "residual": _cpair(sol.residual),
            "kind": sol.kind.value,
            "coefficients": coeffs}


def _region_dict(reg):
    return {"re_min": reg.re_min, "re_max": reg.re_max,
            "im_min": reg.im_min, "im_max": reg.im_max,
            "exact": reg.exact, "corner_rule": reg.corner_rule}


def _config_diagnostics(cfg):
    return {"zero_tol": _num(cfg.zero_tol), "residual_tol": _num(cfg.residual_tol),
            "restarts": cfg.restarts, "seed": cfg.seed,
            "theta_samples": cfg.theta_samples}


def _outcome_report(command, a, out, cfg):
    diag = _config_diagnostics(cfg)
    diag.update(method=out.method, restarts_used=out.restarts_used,
                best_residual=_num(out.best_residual) if math.isfinite(out.best_residual)
                else "none")
    return Report(command, matrix_digest(a), out.status.value,
                  solution=_solution_dict(out.solution), diagnostics=diag)


def _exit_for(status):
    return EXIT_NOT_FOUND if status == Status.NOT_FOUND.value else EXIT_OK


def cmd_classify(a, cfg, args):
    nc = necessary_conditions(a, cfg)
    diag = _config_diagnostics(cfg)
    diag.update(b_class=nc.b_class.value, c_class=nc.c_class.value,
                admissible=str(nc.admissible).lower(),
                hermitian=str(is_hermitian(a)).lower(),
                skew_hermitian=str(is_skew_hermitian(a)).lower(),
                normal=str(is_normal(a)).lower())
    return Report("classify", matrix_digest(a), "Classified", diagnostics=diag), EXIT_OK


def cmd_fremdervector(a, cfg, args):
    rep = _outcome_report("fremdervector", a, solve_general(a, cfg), cfg)
    return rep, _exit_for(rep.status)


def cmd_fremdervalue(a, cfg, args):
    if args.region:
        reg = fremdervalue_region(a, cfg)
        return Report("fremdervalue", matrix_digest(a), "Region",
                      region=_region_dict(reg),
                      diagnostics=_config_diagnostics(cfg)), EXIT_OK
    rep = _outcome_report("fremdervalue", a, is_fremdervalue(a, args.z, cfg), cfg)
    rep.diagnostics["z"] = f"{args.z.real:.17g},{args.z.imag:.17g}"
    return rep, _exit_for(rep.status)


def cmd_geneig(a, cfg, args):
    solver = solve_semidefinite_hermitian if args.part == "hermitian" else solve_semidefinite_skew
    res = solver(a, cfg)
    pairs = [{"value": _cpair(p.value), "vector": [_cpair(v) for v in p.vector],
              "residual": _cpair(p.residual), "kind": p.kind.value} for p in res.pairs]
    diag = _config_diagnostics(cfg)
    diag.update(part=args.part, projector_rank=res.projector_rank, pair_count=len(pairs))
    return Report("geneig", matrix_digest(a), "Solved", pairs=pairs, diagnostics=diag), EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "fremdervector": cmd_fremdervector,
    "fremdervalue": cmd_fremdervalue,
    "geneig": cmd_geneig,
}


def parse_complex(text):
    """Parse ``"re,im"``, ``"re"`` or a Python complex literal such as ``1+2j``."""
    parts = text.split(",")
    try:
        if len(parts) == 2:
            z = complex(float(parts[0]), float(parts[1]))
        elif len(parts) == 1:
            z = complex(text.replace(" ", ""))
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError("z must be finite")
    return z


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="matrix file (Matrix Market or plain text)")
    common.add_argument("--tol", type=float, default=1e-10, dest="residual_tol",
                        help="relative residual tolerance (default 1e-10)")
    common.add_argument("--zero-tol", type=float, default=1e-10,
                        help="relative zero threshold (default 1e-10)")
    common.add_argument("--restarts", type=int, default=32)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (falls back to $FREMDER_SEED, then 0)")
    common.add_argument("--theta-samples", type=int, default=720)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(
        prog="fremder",
        description="Find and verify vectors orthogonal to their image under a matrix.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common],
                   help="definiteness of the Hermitian/skew parts, normality")
    sub.add_parser("fremdervector", parents=[common],
                   help="search for a nontrivial fremdervector")
    p = sub.add_parser("fremdervalue", parents=[common],
                       help="fremdervalue bounds or a membership test for z")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--z", type=parse_complex, help="candidate value as RE,IM")
    g.add_argument("--region", action="store_true", help="print the bounding rectangle")
    p = sub.add_parser("geneig", parents=[common],
                       help="eigenproblem restricted to the kernel of a semi-definite part")
    p.add_argument("--part", choices=("skew", "hermitian"), default="skew",
                   help="which part is semi-definite (default skew)")
    return parser


def _config(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("FREMDER_SEED")
        seed = int(env) if env else 0
    return SolverConfig(zero_tol=args.zero_tol, residual_tol=args.residual_tol,
                        restarts=args.restarts, seed=seed,
                        theta_samples=args.theta_samples)


def _raw_digest(path):
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return hashlib.sha256(os.fsencode(path)).hexdigest()


def _emit(report, fmt):
    print(report.to_json() if fmt == "json" else report.to_text())


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"fremder: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        a = read_matrix(args.path)
    except FremderError as exc:
        print(f"fremder: {exc}", file=sys.stderr)
        _emit(Report(args.command, _raw_digest(args.path), "InputError",
                     diagnostics={"error": str(exc)}), args.format)
        return EXIT_INPUT
    try:
        report, code = COMMANDS[args.command](a, cfg, args)
    except HypothesisError as exc:
        print(f"fremder: {exc}", file=sys.stderr)
        _emit(Report(args.command, matrix_digest(a), "HypothesisError",
                     diagnostics={"error": str(exc)}), args.format)
        return EXIT_HYPOTHESIS
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
