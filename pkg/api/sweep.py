"""
Sweep command
Smoothness table over all scrolls S(a, b) with 1 <= b <= a <= a_max
"""
import argparse
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

from api.schemas import CommandEcho, Provenance, ReportDocument
from lib.config import Config
from lib.errors import UsageError
from models.schemas import ScrollSpec
from services import carpet

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="Smoothness verdicts for every S(a, b) with a <= a_max")
    parser.add_argument("a_max", type=int, nargs="?", default=None, help="Largest scroll degree a")
    parser.set_defaults(handler=run)


def sweep_row(spec: ScrollSpec) -> Dict[str, Any]:
    report = carpet.smoothness(spec)
    return {
        "a": spec.a,
        "b": spec.b,
        "n": spec.n,
        "g": spec.g,
        "chi_normal": report.chi_normal,
        "h0_lo": report.h0.lo,
        "h0_hi": report.h0.hi,
        "h1_lo": report.h1.lo,
        "h1_hi": report.h1.hi,
        "h1_exact": report.h1.exact,
        "smooth": report.smooth_point,
    }


def sweep_rows(a_max: int, workers: Optional[int] = None) -> List[Dict[str, Any]]:
    """Rows ordered by (a, b) regardless of which worker finishes first."""
    if a_max < 1:
        raise UsageError(f"a_max must be at least 1, got {a_max}")
    specs = [ScrollSpec(a=a, b=b) for a in range(1, a_max + 1) for b in range(1, a + 1)]
    if workers is None:
        Config.validate()
        workers = Config.SWEEP_WORKERS
    if workers < 1:
        raise UsageError(f"sweep needs at least one worker, got {workers}")
    logger.info(f"sweeping {len(specs)} scrolls with {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(sweep_row, specs))


def cmd_sweep(a_max: Optional[int] = None, fmt: str = "json") -> ReportDocument:
    """
    **Sweep**: one row per scroll with chi(N), the h^1 interval and the verdict.
    """
    a_max = Config.SCROLL_RANGE_MAX if a_max is None else a_max
    rows = sweep_rows(a_max)
    return ReportDocument(
        command=CommandEcho(command="sweep", params={"a_max": a_max}, format=fmt),
        results={
            "row_count": len(rows),
            "smooth_count": sum(1 for r in rows if r["smooth"]),
        },
        table=rows,
        provenance=[
            Provenance(path="table.chi_normal", source="paper", note="(g+1)^2 + 18"),
            Provenance(path="table.smooth", source="paper", note="smooth iff a - b <= 2"),
            Provenance(path="table.h1_lo", source="derived", note="lower end of the h^1 interval"),
        ],
    )


def run(args: argparse.Namespace) -> ReportDocument:
    return cmd_sweep(args.a_max, args.format)
