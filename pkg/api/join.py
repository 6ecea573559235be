"""
Join command
Chow ring, canonical class and Fano verdicts for the join of two rational normal curves
"""
import argparse
import logging

from api.schemas import CommandEcho, Provenance, ReportDocument, parse_params
from lib.errors import InvariantViolation, UsageError
from models.schemas import ScrollSpec
from services import join_threefold
from services.join_threefold import JoinParams

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("join", help="Join threefold of curves of degrees n0 and n'")
    parser.add_argument("n0", type=int, nargs="?", help="Degree of C0")
    parser.add_argument("nprime", type=int, nargs="?", help="Degree of C'")
    parser.add_argument(
        "--from-scroll", type=int, nargs=2, metavar=("A", "B"), default=None,
        help="Use the sections of S(A, B): n0 = B, n' = A",
    )
    parser.set_defaults(handler=run)


def cmd_join(n0: int, nprime: int, fmt: str = "json") -> ReportDocument:
    """
    **Join**: the full join threefold report including the check of the
    printed intersection tables.
    """
    params = parse_params(JoinParams, n0=n0, nprime=nprime)
    e1, e2 = join_threefold.section_divisors(params)
    kappa1, kappa2, f = join_threefold.contracted_curves(params)
    matrix = join_threefold.printed_table_check(params)
    anticanonical = join_threefold.verify_anticanonical_carpet(params)

    if not anticanonical:
        raise InvariantViolation(f"K + 2A + 2B + E1 + E2 does not vanish on {params}")
    if not matrix.passed:
        raise InvariantViolation(f"printed tables disagree with the ring on {params}: {matrix.undocumented}")

    results = {
        "params": params.model_dump(mode="json"),
        "canonical_gamma": join_threefold.canonical_gamma(params).as_dict(),
        "section_divisors": {"E1": e1.as_dict(), "E2": e2.as_dict()},
        "contracted_curves": {"kappa1": kappa1.as_dict(), "kappa2": kappa2.as_dict(), "f": f.as_dict()},
        "degree_sigma": join_threefold.degree_sigma(params),
        "fano": join_threefold.fano_report(params).model_dump(mode="json"),
        "anticanonical_carpet": anticanonical,
        "extras": join_threefold.join_extras(params).model_dump(mode="json"),
        "matrix_check": matrix.model_dump(mode="json"),
    }
    return ReportDocument(
        command=CommandEcho(command="join", params={"n0": n0, "nprime": nprime}, format=fmt),
        results=results,
        provenance=[
            Provenance(path="canonical_gamma", source="paper", note="matches the printed class after swapping A and B"),
            Provenance(path="degree_sigma", source="paper", note="the quadric cone when {n0, n'} = {1, 2}"),
            Provenance(path="fano.sigma_fano", source="paper", note="Sigma is Fano in every case"),
            Provenance(path="fano.gamma_weak_fano", source="derived", note="boundary value 2 is only weak Fano"),
            Provenance(path="anticanonical_carpet", source="paper", note="pi^*(K_Sigma + carpet) = 0"),
            Provenance(path="extras", source="derived", note="scroll and carpet classes, E1.E2, E^3"),
        ],
    )


def run(args: argparse.Namespace) -> ReportDocument:
    if args.from_scroll is not None:
        if args.n0 is not None or args.nprime is not None:
            raise UsageError("give either n0 n' or --from-scroll A B, not both")
        params = JoinParams.from_scroll(parse_params(ScrollSpec, a=args.from_scroll[0], b=args.from_scroll[1]))
        return cmd_join(params.n0, params.nprime, args.format)
    if args.n0 is None or args.nprime is None:
        raise UsageError("join needs n0 and n' (or --from-scroll A B)")
    return cmd_join(args.n0, args.nprime, args.format)
