"""Command-line interface.

Exit status: 0 on success, 1 when an internal consistency check fails,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import __version__, equivariant, kernel, oracle, report, selftest, spectrum
from .errors import ExactModeError, InconsistencyError, InvalidFrameError
from .operators import OperatorKind
from .torus import S4, Frame, Section, l2_inner
from .operators import i2_apply

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE = 0, 1, 2

_OPERATORS = {"i2": "I2", "j": "J", "jp": "Jp", "i2proj": "I2Projected"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    cutoff: int = spectrum.DEFAULT_CUTOFF
    grid_n: int = oracle.DEFAULT_GRID
    p: float | None = None
    output: str = "json"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.cutoff < 2:
            raise UsageError("--cutoff must be at least 2")
        if self.grid_n < 8 or self.grid_n & (self.grid_n - 1):
            raise UsageError("--grid-n must be a power of two >= 8")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--cutoff", type=int, default=spectrum.DEFAULT_CUTOFF,
                        help="largest frequency m, n enumerated (default 30)")
    common.add_argument("--grid-n", type=int, default=oracle.DEFAULT_GRID,
                        help="quadrature grid size, a power of two >= 8 (default 16)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="clifford-spectrum", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="index and nullity of an operator")
    sp.add_argument("--operator", choices=sorted(_OPERATORS), required=True)
    sp.add_argument("--p", type=float, help="exponent for --operator jp")
    sp.add_argument("--with-polys", action="store_true", help="include every block's char poly")

    sub.add_parser("kernel", parents=[common], help="exact structure of Ker(I2)")

    op = sub.add_parser("oracle", help="floating-point cross-checks")
    osub = op.add_subparsers(dest="oracle_command", required=True)
    oh = osub.add_parser("hessian", parents=[common], help="finite-difference Hessian of the bienergy")
    oh.add_argument("--i", required=True, help="1..10 (Killing fields), nu, eta, gamma or theta")
    oh.add_argument("--j", required=True, help="1..10 (Killing fields), nu, eta, gamma or theta")
    ov = osub.add_parser("variation", parents=[common], help="derivatives of E2 along V_nu")
    ov.add_argument("--order", type=int, choices=(1, 2, 3, 4))
    oc = osub.add_parser("conformal", parents=[common], help="Rayleigh quotient of a conformal field")
    oc.add_argument("--a", required=True, help="four comma-separated reals")

    eq = sub.add_parser("equivariant", parents=[common], help="reduced bienergy analysis")
    eq.add_argument("--r1", type=float, default=0.5)
    eq.add_argument("--r2", type=float, default=0.5)

    sub.add_parser("selftest", parents=[common], help="regression table and property checks")
    return ap


# -- commands --------------------------------------------------------------------

def _operator(args: argparse.Namespace) -> OperatorKind:
    name = _OPERATORS[args.operator]
    if name == "Jp":
        if args.p is None:
            raise UsageError("--operator jp needs --p")
        if args.p < 1:
            raise UsageError("--p must be >= 1")
        return OperatorKind.jp(args.p)
    if args.p is not None:
        raise UsageError("--p only applies to --operator jp")
    return OperatorKind(name)


def cmd_spectrum(args: argparse.Namespace, cfg: RunConfig) -> dict[str, Any]:
    op = _operator(args)
    rep = spectrum.index_nullity(op, cfg.cutoff)
    out = report.spectrum_to_json(rep, args.with_polys)
    if op.name in ("J", "I2Projected"):
        j_rep = rep if op.name == "J" else spectrum.index_nullity(OperatorKind.j(), cfg.cutoff)
        out["composition_condition"] = report.composition_to_json(spectrum.composition_condition(j_rep, 2))
    return out


def cmd_kernel(args: argparse.Namespace, cfg: RunConfig) -> dict[str, Any]:
    rep = kernel.verify_kernel()
    if not rep.ok:
        raise InconsistencyError("; ".join(rep.failures))
    return {
        "sections": {f"V{k.id}": report.to_jsonable(k.frame_expr) for k in kernel.killing_sections()},
        "i2_residual_zero": {name: not r for name, r in rep.i2_residuals.items()},
        "pairwise_orthogonal": rep.orthogonal,
        "gram_diagonal": [rep.gram[i, i].to_json() for i in range(rep.gram.dim)],
        "gram_rank": rep.rank,
        "dphi_matches_V1_V2": rep.dphi_ok,
        "projected_kernel_members": rep.projected_kernel,
    }


def _named_section(name: str) -> Section:
    frames = {"nu": Frame.NU, "eta": Frame.ETA, "gamma": Frame.GAMMA, "theta": Frame.THETA}
    if name.lower() in frames:
        return Section.frame(S4, frames[name.lower()])
    try:
        i = int(name)
    except ValueError:
        raise UsageError(f"unknown section {name!r}") from None
    if not 1 <= i <= 10:
        raise UsageError("Killing field index must be in 1..10")
    return kernel.killing_sections()[i - 1].frame_expr


def cmd_oracle(args: argparse.Namespace, cfg: RunConfig) -> dict[str, Any]:
    if args.oracle_command == "hessian":
        v, w = _named_section(args.i), _named_section(args.j)
        n = max(cfg.grid_n, oracle.HESSIAN_GRID)
        fd = oracle.fd_hessian(v, w, n=n)
        exact = l2_inner(i2_apply(v), w)
        ref = float(exact) * oracle.PI2
        ok = abs(fd - ref) <= (1e-4 * abs(ref) if exact else 1e-6 * oracle.PI2)
        return {"i": args.i, "j": args.j, "grid_n": n, "finite_difference": fd,
                "exact_over_pi2": exact, "exact": ref, "agree": ok}
    if args.oracle_command == "variation":
        orders = [args.order] if args.order else [1, 2, 3, 4]
        rows = []
        for k in orders:
            r = oracle.variation_derivatives(k, n=cfg.grid_n)
            tol = 1e-6 * oracle.PI2 if k < 4 else 1e-4 * abs(r.closed_form)
            rows.append({"order": k, "finite_difference": r.value, "closed_form": r.closed_form,
                         "closed_form_over_pi2": oracle.exact_variation_derivative(k),
                         "agree": abs(r.value - r.closed_form) <= tol})
        taus = []
        for t in (0.0, 0.25, 0.5, 1.0, 2.0):
            err = float(np.max(np.abs(oracle.tau_squared(oracle.phi_t(t, cfg.grid_n))
                                      - oracle.closed_form_tau_squared_phi_t(t))))
            taus.append({"t": t, "max_error": err, "agree": err <= 1e-10})
        return {"derivatives": rows, "tau_squared": taus}
    try:
        a = [float(x) for x in args.a.split(",")]
    except ValueError:
        raise UsageError("--a expects four comma-separated reals") from None
    if len(a) != 4 or not any(a):
        raise UsageError("--a expects four reals, not all zero")
    r = oracle.conformal_rayleigh(a, cfg.grid_n)
    a2 = sum(x * x for x in a)
    return {"a": a, "numerator": r.numerator, "denominator": r.denominator, "quotient": r.quotient,
            "expected": {"numerator": -oracle.PI2 * a2, "denominator": 0.75 * oracle.PI2 * a2,
                         "quotient": -4 / 3},
            "quotient_above_mu1": r.quotient > float(oracle.MU1)}


def cmd_equivariant(args: argparse.Namespace, cfg: RunConfig) -> dict[str, Any]:
    if args.r1 <= 0 or args.r2 <= 0:
        raise UsageError("radii must be positive")
    crit = equivariant.reduced_critical(args.r1, args.r2)
    scan = equivariant.scan_isometric_critical(args.r1, args.r2)
    points = []
    for p in crit:
        h = equivariant.reduced_hessian(p)
        points.append({"eta": p.eta, "nu": p.nu, "isometric": p.isometric,
                       "reduced_bienergy": equivariant.reduced_bienergy(p),
                       "quadrature_bienergy": equivariant.quadrature_reduced_bienergy(p, cfg.grid_n),
                       "gradient": list(equivariant.reduced_gradient(p)),
                       "hessian": h.matrix, "index": h.index, "nullity": h.nullity})
    out: dict[str, Any] = {"r1": args.r1, "r2": args.r2, "critical_points": points,
                           "scan_clusters": [list(s) for s in scan], "unique": len(crit) == 1 and len(scan) == 1}
    if math.isclose(args.r1, 0.5) and math.isclose(args.r2, 0.5):
        out["exact_pairings"] = equivariant.exact_hessian_pairings()
    return out


def cmd_selftest(args: argparse.Namespace, cfg: RunConfig) -> dict[str, Any]:
    checks = selftest.run_selftest(cfg.cutoff, cfg.seed)
    return {"passed": all(c.ok for c in checks),
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}


_COMMANDS = {"spectrum": cmd_spectrum, "kernel": cmd_kernel, "oracle": cmd_oracle,
             "equivariant": cmd_equivariant, "selftest": cmd_selftest}


# -- rendering -------------------------------------------------------------------

def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"a", "b"} and all(isinstance(v, str) for v in obj.values()):
            return [pad + _qs2_text(obj)]
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_qs2(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) or _is_qs2(x) for x in obj):
            return [pad + ", ".join(_scalar_text(x) for x in obj)]
        for x in obj:
            sub = _text(x, indent + 1)
            lines.append(pad + "- " + sub[0].strip())
            lines.extend(sub[1:])
    else:
        lines.append(pad + _scalar_text(obj))
    return lines


def _is_qs2(v: Any) -> bool:
    return isinstance(v, dict) and set(v) == {"a", "b"}


def _qs2_text(v: dict[str, str]) -> str:
    a, b = (x[:-2] if x.endswith("/1") else x for x in (v["a"], v["b"]))
    if b == "0":
        return a
    return f"{b}*sqrt2" if a == "0" else f"{a} + ({b})*sqrt2"


def _scalar_text(v: Any) -> str:
    if _is_qs2(v):
        return _qs2_text(v)
    if isinstance(v, list) and not v:
        return "[]"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def render(payload: dict[str, Any], fmt: str) -> str:
    data = report.to_jsonable(payload)
    if fmt == "json":
        return json.dumps(data, indent=2)
    return "\n".join(_text(data))


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(args.command, args.cutoff, args.grid_n, getattr(args, "p", None),
                        args.output, args.seed)
        body = _COMMANDS[args.command](args, cfg)
    except (UsageError, ExactModeError, InvalidFrameError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    payload = {"command": argv, "version": __version__, **body}
    print(render(payload, cfg.output), file=stdout)
    if args.command == "selftest" and not body["passed"]:
        return EXIT_INCONSISTENT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
