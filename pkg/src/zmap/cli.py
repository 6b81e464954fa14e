"""Command-line client for the compute service.

Every subcommand builds a request model and dispatches it either to the
in-process runners (default) or to a running service instance given via
``--server``.  Exit status is 0 when the computation met its declared
tolerance, 1 when it did not, and 2 on a reported error; errors are
printed as one-line JSON for machine consumption.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import ZmapError
from .service import runners
from .service.schemas import (
    CompareRequest,
    InstabilityRequest,
    LatticeRequest,
    ModelRequest,
    PainleveRequest,
    ValueRequest,
)

_LOCAL_RUNNERS = {
    "lattice": runners.run_lattice,
    "value": runners.run_value,
    "painleve": runners.run_painleve,
    "model": runners.run_model,
    "instability": runners.run_instability,
    "compare": runners.run_compare,
}


class RemoteError(ZmapError):
    """Error reported by a remote service, keeping its original name."""

    def __init__(self, name: str, message: str):
        super().__init__(message)
        self.name = name


def _dispatch_json(endpoint: str, request, server: str | None) -> dict:
    """Dispatch and return the response as a plain dict."""
    if server is None:
        return _LOCAL_RUNNERS[endpoint](request).model_dump()
    import httpx

    response = httpx.post(f"{server.rstrip('/')}/{endpoint}",
                          json=request.model_dump(), timeout=600.0)
    payload = response.json()
    if response.status_code != 200:
        raise RemoteError(payload.get("error", "RemoteError"),
                          payload.get("message", response.text))
    return payload


def parse_a(text: str) -> str | float:
    """Keep rational strings exact, accept decimals."""
    try:
        Fraction(text)
        return text
    except (ValueError, ZeroDivisionError):
        return float(text)


def _write(path: str | None, content: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(content)
    else:
        with open(path, "w") as fh:
            fh.write(content)


def _lattice_csv(payload: dict) -> str:
    lines = ["n,m,re,im"]
    for n, m, re, im in payload["values"]:
        lines.append(f"{int(n)},{int(m)},{re:.17g},{im:.17g}")
    return "\n".join(lines) + "\n"


def _series_csv(points: list, first_label: str = "n") -> str:
    lines = [f"{first_label},error"]
    for n, e in points:
        lines.append(f"{int(n)},{e:.17g}")
    return "\n".join(lines) + "\n"


def cmd_lattice(args) -> int:
    req = LatticeRequest(a=args.a, N=args.N, method=args.method,
                         precision_bits=args.precision_bits,
                         alternative=args.alternative)
    payload = _dispatch_json("lattice", req, args.server)
    if args.format == "json":
        _write(args.output, json.dumps(payload) + "\n")
    else:
        _write(args.output, _lattice_csv(payload))
    if args.svg:
        from . import svg
        import numpy as np
        from .core import Lattice, MethodTag

        N = payload["N"]
        grid = np.zeros((N + 1, N + 1), dtype=np.complex128)
        for n, m, re, im in payload["values"]:
            grid[int(n), int(m)] = re + 1j * im
        lat = Lattice(a=payload["a"], N=N, values=grid,
                      method_tag=MethodTag(payload["method"]))
        with open(args.svg, "w") as fh:
            fh.write(svg.render_lattice_svg(lat))
    print(f"lattice {payload['method']} a={payload['a']:.6g} N={payload['N']} "
          f"cross_ratio_residual={payload['max_cross_ratio_residual']:.3e} "
          f"constraint_residual={payload['max_constraint_residual']:.3e}",
          file=sys.stderr)
    return 0 if payload["tolerance_met"] else 1


def cmd_value(args) -> int:
    req = ValueRequest(a=args.a, n=args.n, m=args.m, method=args.method,
                       N0=args.N0, r_inner=args.r_inner, r_outer=args.r_outer,
                       precision_bits=args.precision_bits)
    payload = _dispatch_json("value", req, args.server)
    print(json.dumps(payload))
    return 0 if payload["tolerance_met"] else 1


def cmd_painleve(args) -> int:
    req = PainleveRequest(a=args.a, N=args.N,
                          include_values=args.output is not None)
    payload = _dispatch_json("painleve", req, args.server)
    if args.output and payload.get("values"):
        lines = ["n,re,im,abs_err_modulus"]
        for n, re, im, err in payload["values"]:
            lines.append(f"{int(n)},{re:.17g},{im:.17g},{err:.3e}")
        _write(args.output, "\n".join(lines) + "\n")
    summary = {k: payload[k] for k in
               ("a", "N", "iters", "final_residual", "max_modulus_error",
                "x0_re", "x0_im", "x0_seed_error", "tolerance_met")}
    print(json.dumps(summary))
    return 0 if payload["tolerance_met"] else 1


def cmd_model(args) -> int:
    req = ModelRequest(m=args.m, method=args.method, N0=args.N0, K=args.K)
    payload = _dispatch_json("model", req, args.server)
    print(json.dumps(payload))
    return 0 if payload["tolerance_met"] else 1


def cmd_instability(args) -> int:
    req = InstabilityRequest(a=args.a, N=args.N)
    payload = _dispatch_json("instability", req, args.server)
    if args.output_dir:
        import os

        os.makedirs(args.output_dir, exist_ok=True)
        for key in ("naive_diagonal", "dpii_forward", "modulus_indicator"):
            path = os.path.join(args.output_dir, f"{key}.csv")
            _write(path, _series_csv(payload[key]["points"]))
    summary = {
        "a": payload["a"],
        "N": payload["N"],
        "naive_diagonal_final": payload["naive_diagonal"]["points"][-1][1],
        "modulus_final": payload["modulus_indicator"]["points"][-1][1],
        "tolerance_met": payload["tolerance_met"],
    }
    print(json.dumps(summary))
    return 0 if payload["tolerance_met"] else 1


def cmd_compare(args) -> int:
    points = []
    for token in args.points.replace(";", " ").split():
        n_str, m_str = token.split(",")
        points.append((int(n_str), int(m_str)))
    req = CompareRequest(a=args.a, points=points, N0=args.N0, jobs=args.jobs)
    payload = _dispatch_json("compare", req, args.server)
    header = (f"{'n':>3} {'m':>3} {'stable':>24} {'rhp':>24} "
              f"{'|stable-rhp|':>13} {'|stable-asym|':>14}")
    lines = [header]
    for row in payload["rows"]:
        sv = complex(row["stable_re"], row["stable_im"])
        rv = complex(row["rhp_re"], row["rhp_im"])
        lines.append(f"{row['n']:>3} {row['m']:>3} {sv:>24.15g} {rv:>24.15g} "
                     f"{row['stable_vs_rhp']:>13.3e} "
                     f"{row['stable_vs_asymptotic']:>14.3e}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0 if payload["tolerance_met"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("zmap.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zmap",
        description="Compute the discrete conformal map Z^a by stabilized, "
                    "naive and Riemann-Hilbert methods.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running zmap service; default is "
                             "in-process execution")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_a(p):
        p.add_argument("--a", type=parse_a, default="2/3",
                       help="exponent in (0,2); rational strings like 2/3 "
                            "stay exact")

    p = sub.add_parser("lattice", help="compute a full lattice")
    add_a(p)
    p.add_argument("--N", type=int, default=49)
    p.add_argument("--method", default="stable",
                   choices=["naive", "stable", "backward", "oracle"])
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--alternative", action="store_true",
                   help="naive only: fill rows/columns by the constraint")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default="-")
    p.add_argument("--svg", default=None, help="also write an SVG rendering")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("value", help="compute a single map value")
    add_a(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", default="rhp",
                   choices=["rhp", "stable", "oracle"])
    p.add_argument("--N0", type=int, default=42,
                   help="quadrature nodes per circle (rhp)")
    p.add_argument("--r-inner", type=float, default=0.5)
    p.add_argument("--r-outer", type=float, default=3.0)
    p.add_argument("--precision-bits", type=int, default=None)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("painleve", help="solve the separatrix BVP")
    add_a(p)
    p.add_argument("--N", type=int, default=300)
    p.add_argument("--output", default=None,
                   help="write the solution values as CSV")
    p.set_defaults(func=cmd_painleve)

    p = sub.add_parser("model", help="solve the circle model problem")
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--method", default="both",
                   choices=["nystrom", "spectral", "both"])
    p.add_argument("--N0", type=int, default=None)
    p.add_argument("--K", type=int, default=None)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("instability",
                       help="error series of the unstable evolutions")
    add_a(p)
    p.add_argument("--N", type=int, default=49)
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_instability)

    p = sub.add_parser("compare",
                       help="cross-validate stable, RHP and asymptotics")
    add_a(p)
    p.add_argument("--points", default="2,2 4,4 6,8",
                   help="space or semicolon separated n,m pairs")
    p.add_argument("--N0", type=int, default=42)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RemoteError as exc:
        print(json.dumps({"error": exc.name, "message": str(exc)}))
        return 2
    except ZmapError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    except ValueError as exc:
        print(json.dumps({"error": "ValueError", "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
