"""Command-line interface: ``strohwf <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 validation error (unphysical input, domain violation, non-convergence).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from .config import ConfigSyntaxError, MaterialDatabase, RunConfig, SifConfig, parse_betas, parse_grid
from .errors import StrohWFError
from .presets import SWEEP_GRID
from .materials import stroh_eigenvalues
from .sif import ratio_sweep, sif_betti, sif_three_point_closed
from .stroh import bimaterial_system, stroh_data

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3

CSV_HEADER = "b_over_a,beta,KS_re,KS_im,KA_re,KA_im,ratio"

_K_NOTE = (
    "K follows the normalization in which the interface traction ahead of the "
    "tip is 2 Re(K x^(i eps) w) / sqrt(2 pi x) with w = (-i/2, sqrt(H11/H22)/2); "
    "to compare with sigma_22 = Re(K x^(i eps)) / sqrt(2 pi x) rescale by the "
    "w_2 component. All inputs are nondimensional; supply compliances in "
    "consistent units."
)


def fmt(x: float) -> str:
    """Scientific notation with 15 significant digits."""
    return f"{float(x):.14e}"


def _cplx(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _matrix(m) -> list:
    m = np.asarray(m)
    if np.iscomplexobj(m):
        return [[_cplx(v) for v in row] for row in m]
    return [[float(v) for v in row] for row in m]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--materials",
        metavar="PATH",
        help="material database (name = s11, s12, s22, s66 lines); defaults to $STROHWF_MATERIALS",
    )

    parser = _Parser(
        prog="strohwf",
        description="Weight functions and stress intensity factors for interfacial cracks "
        "between orthotropic materials.",
        epilog=_K_NOTE,
    )
    from . import __version__

    parser.add_argument("--version", action="version", version=f"strohwf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("material", parents=[common], help="anisotropy parameters, Stroh roots and Y")
    p.add_argument("spec", help="material name or inline constants s11,s12,s22,s66")

    p = sub.add_parser("bimaterial", parents=[common], help="interface constants of a material pair")
    p.add_argument("upper")
    p.add_argument("lower")
    p.add_argument("--beta", type=float, help="override the mismatch parameter beta")

    p = sub.add_parser(
        "sweep", parents=[common], help="normalized three-point SIFs over a b/a grid (CSV)", epilog=_K_NOTE
    )
    p.add_argument("--pair", nargs=2, metavar=("UPPER", "LOWER"), required=True)
    p.add_argument("--beta-list", help="comma-separated beta overrides; default: material beta")
    p.add_argument(
        "--grid",
        default=",".join(str(v) for v in SWEEP_GRID),
        help="b/a grid as min,max,count (default %(default)s)",
    )
    p.add_argument("--F", type=float, default=1.0, help="force magnitude (default 1)")
    p.add_argument("--a", type=float, default=1.0, help="distance of the upper force from the tip (default 1)")
    p.add_argument("--workers", type=int, default=1, help="threads used for the sweep")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("sif", parents=[common], help="SIF of a point-force loading from a config file", epilog=_K_NOTE)
    p.add_argument("--config", required=True, help="key = value loading description")
    p.add_argument("--out", help="JSON path (default: stdout)")

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion numbers (default: all)")
    p.add_argument("--out", help="JSON report path")
    return parser


def cmd_material(args, db: MaterialDatabase) -> int:
    mat = db.resolve(args.spec)
    ap = mat.anisotropy
    eig = stroh_eigenvalues(mat)
    data = stroh_data(mat)
    payload = {
        "name": mat.name,
        "compliances": {"s11": mat.s11, "s12": mat.s12, "s22": mat.s22, "s66": mat.s66},
        "strict": mat.strict,
        "lambda": ap.lam,
        "rho": ap.rho,
        "n": ap.n,
        "m": ap.m,
        "degenerate": eig.degenerate,
        "mu1": _cplx(eig.mu1),
        "mu2": _cplx(eig.mu2),
        "Y": _matrix(data.Y),
    }
    _emit(_json(payload), None)
    return EXIT_OK


def cmd_bimaterial(args, db: MaterialDatabase) -> int:
    system = bimaterial_system(db.resolve(args.upper), db.resolve(args.lower), beta=args.beta)
    payload = {
        "upper": system.mat1.name,
        "lower": system.mat2.name,
        "H": _matrix(system.H),
        "H11": system.H11,
        "H22": system.H22,
        "beta": system.beta,
        "beta_material": system.beta_material,
        "epsilon": system.epsilon,
        "delta1": system.delta1,
        "delta2": system.delta2,
        "gamma": system.gamma,
        "Phi": system.Phi,
        "Theta1": system.Theta1,
        "Theta2": system.Theta2,
        "e0": system.e0,
        "cplus": _cplx(system.cplus),
        "cminus": _cplx(system.cminus),
        "w": [_cplx(v) for v in system.w],
        "calA": _matrix(system.calA),
        "calB": _matrix(system.calB),
        "M1": _matrix(system.M1),
    }
    _emit(_json(payload), None)
    return EXIT_OK


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        fields = (r.b_over_a, r.beta, r.KS.real, r.KS.imag, r.KA.real, r.KA.imag, r.ratio)
        buf.write(",".join(fmt(v) for v in fields) + "\n")
    return buf.getvalue()


def cmd_sweep(args, db: MaterialDatabase) -> int:
    grid = parse_grid(args.grid)
    betas = parse_betas(args.beta_list) if args.beta_list else None
    cfg = RunConfig(
        command="sweep",
        materials=tuple(args.pair),
        betas=tuple(betas) if betas is not None else None,
        grid=tuple(float(t) for t in grid),
        out=args.out,
    )
    if args.workers < 1:
        raise ConfigSyntaxError("--workers must be at least 1")
    if not args.a > 0.0 or args.F == 0.0:
        raise ConfigSyntaxError("--a must be positive and --F nonzero")
    system = bimaterial_system(db.resolve(cfg.materials[0]), db.resolve(cfg.materials[1]))
    rows = ratio_sweep(system, args.F, args.a, cfg.grid, cfg.betas, workers=args.workers)
    _emit(sweep_csv(rows), cfg.out)
    return EXIT_OK


def cmd_sif(args, db: MaterialDatabase) -> int:
    cfg = SifConfig.load(args.config)
    system = bimaterial_system(db.resolve(cfg.upper), db.resolve(cfg.lower), beta=cfg.beta)
    quad = sif_betti(system, cfg.loading, rtol=cfg.rtol)

    def block(k):
        return {"KS": _cplx(k.KS), "KA": _cplx(k.KA), "K": _cplx(k.K)}

    payload = {
        "beta": system.beta,
        "epsilon": system.epsilon,
        "betti_quadrature": {
            **block(quad.K),
            "error_estimate": quad.quadrature.error_estimate,
            "evaluations": quad.quadrature.evaluations,
            "conjugate_gap": quad.conjugate_gap,
        },
        "closed_form": None,
        "relative_difference": None,
    }
    shape = cfg.loading.as_three_point()
    if shape is not None:
        closed = sif_three_point_closed(system, *shape)
        payload["closed_form"] = {**block(closed.K), "F": shape[0], "a": shape[1], "b": shape[2]}
        payload["relative_difference"] = abs(quad.K.K - closed.K.K) / abs(closed.K.K)
    _emit(_json(payload), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verification import ALL_CHECKS, run_all

    selected = None
    if args.only:
        selected = {tok.strip() for tok in args.only.split(",")}
        unknown = selected - set(ALL_CHECKS)
        if unknown:
            raise ConfigSyntaxError(f"unknown criteria: {', '.join(sorted(unknown))}")
    results = run_all(selected)
    for res in results:
        sys.stdout.write(res.line() + "\n")
    failures = [r for r in results if not r.passed]
    for res in failures:
        sys.stderr.write(json.dumps(res.as_dict()) + "\n")
    if args.out:
        Path(args.out).write_text(_json([r.as_dict() for r in results]), encoding="utf-8")
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--beta-list -0.5,0.5`` through argparse, which would read it as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--beta-list", "--beta", "--grid"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and (nxt[1:2].isdigit() or nxt[1:2] == "."):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args)
        db = MaterialDatabase.from_environment(args.materials)
        handler = {"material": cmd_material, "bimaterial": cmd_bimaterial, "sweep": cmd_sweep, "sif": cmd_sif}
        return handler[args.command](args, db)
    except ConfigSyntaxError as exc:
        sys.stderr.write(f"strohwf: error: {exc}\n")
        return EXIT_USAGE
    except StrohWFError as exc:
        sys.stderr.write(f"strohwf: invalid input ({type(exc).__name__}): {exc}\n")
        return EXIT_VALIDATION


def run() -> None:
    """Console-script entry point."""
    raise SystemExit(main())
