"""
Carpet command
Invariants, uniqueness, Hilbert-point smoothness and components for the carpet on S(a, b)
"""
import argparse
import logging

from api.schemas import CommandEcho, Provenance, ReportDocument, parse_params
from models.schemas import ScrollSpec
from services import carpet, scroll

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("carpet", help="K3 carpet on the scroll S(a, b)")
    parser.add_argument("a", type=int, help="Larger scroll degree")
    parser.add_argument("b", type=int, help="Smaller scroll degree, b >= 1")
    parser.set_defaults(handler=run)


def _provenance(spec: ScrollSpec) -> list:
    prov = [
        Provenance(path="carpet_count", source="paper", note="unique carpet up to scalar"),
        Provenance(path="invariants.chi_O", source="paper", note="numerical K3"),
        Provenance(path="normal_bundle", source="paper", note="(N+1)^2 - 7, no higher cohomology"),
        Provenance(path="smoothness.chi_normal", source="paper", note="(g+1)^2 + 18"),
        Provenance(path="smoothness.smooth_point", source="paper", note="smooth iff a - b <= 2"),
        Provenance(path="hyperplane_section", source="paper", note="canonical ribbon of genus g"),
        Provenance(path="components", source="paper", note="prime component; second one for F_4, g > 9, g = 1 mod 4"),
    ]
    if spec.n >= 3:
        prov.append(Provenance(
            path="smoothness.h1",
            source="derived",
            note="exact for a - b = 3; for a - b >= 4 only the interval is determined",
        ))
    return prov


def cmd_carpet(a: int, b: int, fmt: str = "json") -> ReportDocument:
    """
    **Carpet**: the full record for the K3 carpet on S(a, b).
    """
    spec = parse_params(ScrollSpec, a=a, b=b)
    logger.info(f"carpet report for {spec}")
    results = {
        "scroll": spec.model_dump(mode="json"),
        "invariants": carpet.invariants(spec).model_dump(mode="json"),
        "hyperplane_section": carpet.hyperplane_section_invariants(spec).model_dump(mode="json"),
        "carpet_count": carpet.carpet_count(spec),
        "normal_bundle": scroll.normal_bundle_cohomology(spec).model_dump(mode="json"),
        "normal_twisted": scroll.normal_twist_canonical_cohomology(spec).model_dump(mode="json"),
        "smoothness": carpet.smoothness(spec).model_dump(mode="json"),
        "components": [v.model_dump(mode="json") for v in carpet.component_membership(spec)],
    }
    return ReportDocument(
        command=CommandEcho(command="carpet", params={"a": a, "b": b}, format=fmt),
        results=results,
        provenance=_provenance(spec),
    )


def run(args: argparse.Namespace) -> ReportDocument:
    return cmd_carpet(args.a, args.b, args.format)
