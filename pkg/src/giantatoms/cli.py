"""Command line for the simulator; a thin client over the HTTP service.

By default the service app is mounted in-process, so invocations are
single-process and byte-for-byte reproducible.  CSV numbers are written with
9 significant digits, comma separated, "\n" line endings.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .client import ServiceError, SimulatorClient
from .schemas import (
    CoefficientsRequest,
    EvolveRequest,
    LayoutSpec,
    PeakRequest,
    SweepRequest,
)

_EVOLVE_HEADER = "t,C_ac,C_bd,C_ab,C_cd,C_ad,C_bc,N"


def parse_phi(text: str) -> float:
    """Phase in radians, or a multiple of pi written as '<real>pi'."""
    raw = text.strip()
    try:
        return float(raw)
    except ValueError:
        pass
    if raw.endswith("pi"):
        try:
            return float(raw[:-2]) * math.pi
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(
        f"cannot parse phase {text!r}; use radians or the '<real>pi' form")


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _layout_spec(args) -> LayoutSpec | None:
    if args.config != "custom":
        return None
    if not getattr(args, "layout", None):
        raise ServiceError("custom config requires --layout FILE")
    try:
        with open(args.layout, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return LayoutSpec(**data)
    except FileNotFoundError:
        raise ServiceError(f"layout file not found: {args.layout}")
    except (ValueError, TypeError) as exc:
        raise ServiceError(f"invalid layout file {args.layout}: {exc}")


def _cmd_coeffs(args, client: SimulatorClient) -> int:
    request = CoefficientsRequest(config=args.config, layout=_layout_spec(args),
                                  phi=args.phi, gamma=args.gamma)
    response = client.coefficients(request)
    _write(json.dumps(response.model_dump(), indent=2) + "\n", args.out)
    return 0


def _cmd_evolve(args, client: SimulatorClient) -> int:
    request = EvolveRequest(
        config=args.config, layout=_layout_spec(args), phi=args.phi,
        gamma=args.gamma, t_max=args.t_max, steps=args.steps,
        method=args.method, initial_sign=args.initial_sign)
    response = client.evolve(request)
    lines = [_EVOLVE_HEADER]
    columns = (response.t, response.c_ac, response.c_bd, response.c_ab,
               response.c_cd, response.c_ad, response.c_bc, response.norm)
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sweep(args, client: SimulatorClient) -> int:
    request = SweepRequest(
        config=args.config, layout=_layout_spec(args), gamma=args.gamma,
        pair=args.pair, phi_min=args.phi_min, phi_max=args.phi_max,
        phi_steps=args.phi_steps, t_max=args.t_max, t_steps=args.t_steps,
        method=args.method, initial_sign=args.initial_sign)
    response = client.sweep(request)
    lines = ["phi,t,C"]
    for i, phi in enumerate(response.phi):
        row = response.values[i]
        for j, t in enumerate(response.t):
            lines.append(f"{_fmt(phi)},{_fmt(t)},{_fmt(row[j])}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_peaks(args, client: SimulatorClient) -> int:
    request = PeakRequest(
        config=args.config, layout=_layout_spec(args), phi=args.phi,
        gamma=args.gamma, pair=args.pair, t_horizon=args.t_horizon,
        method=args.method, initial_sign=args.initial_sign)
    response = client.peaks(request)
    _write(json.dumps(response.model_dump(), indent=2) + "\n", args.out)
    return 0


def _cmd_verify(args, client: SimulatorClient) -> int:
    response = client.verify()
    if args.json:
        _write(json.dumps(response.model_dump(), indent=2) + "\n", args.out)
    else:
        lines = []
        for check in response.checks:
            line = (f"{check.name}: expected={check.expected:.10g} "
                    f"got={check.got:.10g} tol={check.tolerance:.3g} "
                    f"{'PASS' if check.passed else 'FAIL'}")
            if check.detail:
                line += f"  # {check.detail}"
            lines.append(line)
        lines.append(f"{response.num_checks} checks, "
                     f"{response.num_checks - response.num_failed} passed, "
                     f"{response.num_failed} failed")
        _write("\n".join(lines) + "\n", args.out)
    return 0 if response.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giantatoms",
        description="Entanglement transfer between atom pairs on two "
                    "1-D waveguides.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_phi=True):
        p.add_argument("--config", default="small",
                       choices=["small", "separated", "braided", "nested",
                                "custom"])
        p.add_argument("--layout", metavar="FILE",
                       help="JSON layout, required for --config custom")
        if with_phi:
            p.add_argument("--phi", type=parse_phi, default=0.0,
                           help="phase shift (radians or '<real>pi')")
        p.add_argument("--gamma", type=float, default=1.0)
        p.add_argument("--out", metavar="FILE", default=None,
                       help="output file (default stdout)")
        p.add_argument("--initial-sign", dest="initial_sign",
                       choices=["+", "-"], default="+")
        p.add_argument("--server", default=None, metavar="URL",
                       help="base URL of a running service "
                            "(default: in-process)")

    p = sub.add_parser("coeffs", help="emit the coefficient set as JSON")
    common(p)
    p.set_defaults(handler=_cmd_coeffs)

    p = sub.add_parser("evolve", help="concurrence time series as CSV")
    common(p)
    p.add_argument("--t-max", dest="t_max", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=500,
                   help="time intervals; rows = steps + 1")
    p.add_argument("--method", choices=["amplitude", "lindblad"],
                   default="amplitude")
    p.set_defaults(handler=_cmd_evolve)

    p = sub.add_parser("sweep", help="phase x time concurrence grid as CSV")
    common(p, with_phi=False)
    p.add_argument("--pair", default="bd",
                   choices=["ac", "bd", "ab", "cd", "ad", "bc"])
    p.add_argument("--phi-min", dest="phi_min", type=parse_phi, default=0.0)
    p.add_argument("--phi-max", dest="phi_max", type=parse_phi,
                   default=2.0 * math.pi)
    p.add_argument("--phi-steps", dest="phi_steps", type=int, default=400,
                   help="phase intervals; columns = steps + 1")
    p.add_argument("--t-max", dest="t_max", type=float, default=10.0)
    p.add_argument("--t-steps", dest="t_steps", type=int, default=500)
    p.add_argument("--method", choices=["amplitude", "lindblad"],
                   default="amplitude")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("peaks", help="maximal concurrence over a time window")
    common(p)
    p.add_argument("--pair", default="bd",
                   choices=["ac", "bd", "ab", "cd", "ad", "bc"])
    p.add_argument("--t-horizon", dest="t_horizon", type=float, default=50.0)
    p.add_argument("--method", choices=["amplitude", "lindblad"],
                   default="amplitude")
    p.set_defaults(handler=_cmd_peaks)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--json", action="store_true",
                   help="machine-readable report")
    p.add_argument("--out", metavar="FILE", default=None)
    p.add_argument("--server", default=None, metavar="URL")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(args, "initial_sign"):
        args.initial_sign = 1 if args.initial_sign == "+" else -1
    try:
        with SimulatorClient(base_url=args.server) as client:
            return args.handler(args, client)
    except ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
