"""
Lattice command
Hyperelliptic polarization L_n on the F0, F1 or F4 model
"""
import argparse

from api.schemas import CommandEcho, Provenance, ReportDocument
from services import picard_lattice
from services.picard_lattice import HyperellipticModel


def register(subparsers) -> None:
    parser = subparsers.add_parser("lattice", help="Picard sublattice of a hyperelliptic K3 model")
    parser.add_argument("model", choices=[m.value for m in HyperellipticModel], help="Scroll type of the double cover")
    parser.add_argument("n", type=int, help="Parameter n of L_n")
    parser.set_defaults(handler=run)


def cmd_lattice(model: str, n: int, fmt: str = "json") -> ReportDocument:
    """
    **Lattice**: genus, primitivity and divisibility of L_n, plus the
    polarization lattice of that genus.
    """
    record = picard_lattice.hyperelliptic_model(HyperellipticModel(model), n)
    results = {
        "model": record.model_dump(mode="json"),
        "polarization_lattice": picard_lattice.polarization_lattice(record.g).model_dump(mode="json"),
        "two_component_condition": picard_lattice.two_component_condition(record.g),
    }
    return ReportDocument(
        command=CommandEcho(command="lattice", params={"model": model, "n": n}, format=fmt),
        results=results,
        provenance=[
            Provenance(path="model.lattice", source="paper", note="intersection matrix of the model"),
            Provenance(path="model.divisibility", source="derived", note="gcd of the coordinates of L_n"),
            Provenance(path="two_component_condition", source="paper", note="g > 9 and g = 1 mod 4"),
        ],
    )


def run(args: argparse.Namespace) -> ReportDocument:
    return cmd_lattice(args.model, args.n, args.format)
