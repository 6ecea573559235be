"""
Cohomology command
Line bundle O(x C0 + y f) on the Hirzebruch surface F_n
"""
import argparse

from api.schemas import CommandEcho, Provenance, ReportDocument, parse_params
from models.schemas import HirzebruchDivisor
from services import hirzebruch


def register(subparsers) -> None:
    parser = subparsers.add_parser("cohomology", help="Cohomology of O(x C0 + y f) on F_n")
    parser.add_argument("n", type=int, help="Hirzebruch index n >= 0")
    parser.add_argument("x", type=int, help="Coefficient of the minimal section C0")
    parser.add_argument("y", type=int, help="Coefficient of the fiber f")
    parser.set_defaults(handler=run)


def cmd_cohomology(n: int, x: int, y: int, fmt: str = "json") -> ReportDocument:
    """
    **Cohomology**: h^i of a line bundle, its pushforwards to P^1, the
    Riemann-Roch value and the lattice-point count of h^0.
    """
    d = parse_params(HirzebruchDivisor, n=n, x=x, y=y)
    triple = hirzebruch.checked_cohomology(d)
    results = {
        "divisor": d.model_dump(mode="json"),
        "cohomology": triple.model_dump(mode="json"),
        "pushforward": list(hirzebruch.pushforward(d).degrees),
        "r1_pushforward": list(hirzebruch.r1_pushforward(d).degrees),
        "riemann_roch_chi": hirzebruch.riemann_roch_chi(d),
        "h0_lattice_oracle": hirzebruch.h0_lattice_oracle(d),
        "serre_dual": hirzebruch.serre_dual(d).model_dump(mode="json"),
    }
    return ReportDocument(
        command=CommandEcho(command="cohomology", params={"n": n, "x": x, "y": y}, format=fmt),
        results=results,
        provenance=[
            Provenance(path="cohomology", source="derived", note="pushforward to P^1 and the Leray identity"),
            Provenance(path="h0_lattice_oracle", source="derived", note="toric lattice-point count"),
        ],
    )


def run(args: argparse.Namespace) -> ReportDocument:
    return cmd_cohomology(args.n, args.x, args.y, args.format)
