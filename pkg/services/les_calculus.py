"""
Dimension chase on the long exact cohomology sequence of

    0 -> A -> B -> C -> 0

for sheaves on a surface. The sequence

    0 -> H0A -> H0B -> H0C -d0-> H1A -> H1B -> H1C -d1-> H2A -> H2B -> H2C -> 0

is exact, so with d_i the rank of the connecting map H^i(C) -> H^(i+1)(A):

    h^i(B) = (h^i(A) - d_(i-1)) + (h^i(C) - d_i),     d_(-1) = d_2 = 0,
    0 <= d_i <= min(h^i(C), h^(i+1)(A)).

`solve` projects the set of nonnegative solutions onto every unknown by
enumerating the connecting ranks and, in each degree, two of the three
dimensions (the third is then forced). Known Euler characteristics couple
the degrees of a slot. An empty solution set raises Contradiction: it means
one of the inputs was transcribed wrongly.
"""
import logging
from collections import defaultdict
from itertools import product
from typing import Dict, Iterator, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field

from lib.errors import Contradiction, InvariantViolation
from models.schemas import CohInfo, Interval

logger = logging.getLogger(__name__)

DEGREES = (0, 1, 2)
SIGNS = (1, -1, 1)
SLOTS = ("left", "middle", "right")

Triple = Tuple[int, int, int]


class SesProblem(BaseModel):
    """Cohomology of the three terms of a short exact sequence plus the connecting ranks."""
    model_config = ConfigDict(frozen=True)

    left: CohInfo = Field(default_factory=CohInfo.unknown, description="Subsheaf A")
    middle: CohInfo = Field(default_factory=CohInfo.unknown, description="Middle term B")
    right: CohInfo = Field(default_factory=CohInfo.unknown, description="Quotient C")
    d0: Interval = Field(default_factory=Interval.unknown, description="Rank of H0(C) -> H1(A)")
    d1: Interval = Field(default_factory=Interval.unknown, description="Rank of H1(C) -> H2(A)")
    label: str = Field(default="", description="Name of the sequence, for logs and reports")

    def slot(self, name: str) -> CohInfo:
        return getattr(self, name)

    @property
    def connecting_ranks(self) -> Tuple[Interval, Interval]:
        return (self.d0, self.d1)

    @property
    def is_exact(self) -> bool:
        return self.left.is_exact and self.middle.is_exact and self.right.is_exact


def _span(iv: Interval) -> range:
    return range(iv.lo, iv.hi + 1)


def _rank_range(own: Interval, cap_c: Interval, cap_a: Interval, which: str) -> range:
    caps = [iv.hi for iv in (own, cap_c, cap_a) if iv.hi is not None]
    if not caps:
        raise InvariantViolation(f"connecting rank {which} is unbounded; problem is underdetermined")
    return range(own.lo, min(caps) + 1)


def _degree_triples(problem: SesProblem, i: int, d_prev: int, d_next: int) -> List[Triple]:
    """All (a, b, c) at degree i compatible with the intervals and fixed ranks."""
    a_iv, b_iv, c_iv = (problem.slot(s).degrees[i] for s in SLOTS)
    shift = d_prev + d_next
    bounded = [iv.bounded for iv in (a_iv, b_iv, c_iv)]
    if sum(bounded) < 2:
        raise InvariantViolation(
            f"degree {i} of '{problem.label}' has two unbounded terms; nothing to chase"
        )

    found: List[Triple] = []
    if bounded[0] and bounded[2]:
        for a, c in product(_span(a_iv), _span(c_iv)):
            found.append((a, a + c - shift, c))
    elif bounded[0] and bounded[1]:
        for a, b in product(_span(a_iv), _span(b_iv)):
            found.append((a, b, b - a + shift))
    else:
        for b, c in product(_span(b_iv), _span(c_iv)):
            found.append((b - c + shift, b, c))

    return [
        (a, b, c) for (a, b, c) in found
        if a in a_iv and b in b_iv and c in c_iv and a >= d_prev and c >= d_next
    ]


def _chi_key(triple: Triple, i: int, known: List[int]) -> Tuple[int, ...]:
    return tuple(SIGNS[i] * triple[k] for k in known)


def _feasible(problem: SesProblem) -> Iterator[Tuple[int, int, Triple, Triple, Triple, List[Triple]]]:
    """
    Yield (d0, d1, t0, t1, t2, bucket) for every feasible combination of the
    first two degrees; `bucket` holds the matching degree-2 triples.
    """
    chis = [problem.slot(s).chi for s in SLOTS]
    known = [k for k, chi in enumerate(chis) if chi is not None]

    d0_range = _rank_range(problem.d0, problem.right.h0, problem.left.h1, "d0")
    d1_range = _rank_range(problem.d1, problem.right.h1, problem.left.h2, "d1")

    for d0, d1 in product(d0_range, d1_range):
        t0s = _degree_triples(problem, 0, 0, d0)
        if not t0s:
            continue
        t1s = _degree_triples(problem, 1, d0, d1)
        if not t1s:
            continue
        t2s = _degree_triples(problem, 2, d1, 0)
        buckets: Dict[Tuple[int, ...], List[Triple]] = defaultdict(list)
        for t2 in t2s:
            buckets[_chi_key(t2, 2, known)].append(t2)
        for t0, t1 in product(t0s, t1s):
            partial = [x + y for x, y in zip(_chi_key(t0, 0, known), _chi_key(t1, 1, known))]
            need = tuple(chis[k] - p for k, p in zip(known, partial))
            bucket = buckets.get(need)
            if bucket:
                yield d0, d1, t0, t1, bucket[0], bucket


def _hull(values: Set[int]) -> Interval:
    return Interval(lo=min(values), hi=max(values))


def solve(problem: SesProblem) -> SesProblem:
    """Tighten every interval of the problem to the projection of its solution set."""
    chis = [problem.slot(s).chi for s in SLOTS]
    if None not in chis and chis[1] != chis[0] + chis[2]:
        raise Contradiction(
            f"'{problem.label}': chi(B) = {chis[1]} but chi(A) + chi(C) = {chis[0] + chis[2]}"
        )

    seen: Dict[Tuple[int, int], Set[int]] = {(s, i): set() for s in range(3) for i in DEGREES}
    ranks: Tuple[Set[int], Set[int]] = (set(), set())
    count = 0
    for d0, d1, t0, t1, _, bucket in _feasible(problem):
        count += 1
        ranks[0].add(d0)
        ranks[1].add(d1)
        for s in range(3):
            seen[(s, 0)].add(t0[s])
            seen[(s, 1)].add(t1[s])
            for t2 in bucket:
                seen[(s, 2)].add(t2[s])

    if count == 0:
        logger.error(f"no feasible assignment for '{problem.label}'")
        raise Contradiction(f"long exact sequence '{problem.label}' has no feasible dimensions")

    logger.debug(f"solved '{problem.label}': {count} feasible (d0, d1, h0, h1) combinations")

    solved: Dict[str, CohInfo] = {}
    for s, name in enumerate(SLOTS):
        h = [_hull(seen[(s, i)]) for i in DEGREES]
        solved[name] = CohInfo(h0=h[0], h1=h[1], h2=h[2], chi=chis[s])

    derived = _derive_chis([solved[name] for name in SLOTS])
    return problem.model_copy(update={
        "left": derived[0],
        "middle": derived[1],
        "right": derived[2],
        "d0": _hull(ranks[0]),
        "d1": _hull(ranks[1]),
    })


def _derive_chis(slots: List[CohInfo]) -> List[CohInfo]:
    chis: List[Optional[int]] = [c.chi for c in slots]
    for _ in range(2):
        for k, c in enumerate(slots):
            if chis[k] is None and c.is_exact:
                chis[k] = c.h0.lo - c.h1.lo + c.h2.lo
        missing = [k for k, chi in enumerate(chis) if chi is None]
        if len(missing) == 1:
            k = missing[0]
            if k == 1:
                chis[1] = chis[0] + chis[2]
            elif k == 0:
                chis[0] = chis[1] - chis[2]
            else:
                chis[2] = chis[1] - chis[0]
    return [c.model_copy(update={"chi": chi}) for c, chi in zip(slots, chis)]


def brute_force_solve(problem: SesProblem) -> SesProblem:
    """
    Reference enumeration over all nine dimensions and both ranks.

    Only for problems whose intervals are all bounded and small; the tests use
    it to pin down `solve`.
    """
    ivs = [problem.slot(name).degrees[i] for name in SLOTS for i in DEGREES]
    if any(not iv.bounded for iv in ivs):
        raise InvariantViolation("brute force needs every interval bounded")
    chis = [problem.slot(s).chi for s in SLOTS]

    left, middle, right = (problem.slot(s) for s in SLOTS)
    d0_range = _rank_range(problem.d0, right.h0, left.h1, "d0")
    d1_range = _rank_range(problem.d1, right.h1, left.h2, "d1")

    seen: Dict[Tuple[int, int], Set[int]] = {(s, i): set() for s in range(3) for i in DEGREES}
    ranks: Tuple[Set[int], Set[int]] = (set(), set())
    spans = [[_span(problem.slot(name).degrees[i]) for i in DEGREES] for name in SLOTS]
    for d0, d1 in product(d0_range, d1_range):
        for a in product(*spans[0]):
            if d0 > a[1] or d1 > a[2]:
                continue
            for c in product(*spans[2]):
                if d0 > c[0] or d1 > c[1]:
                    continue
                b = (a[0] + c[0] - d0, a[1] - d0 + c[1] - d1, a[2] - d1 + c[2])
                if not all(v in iv for v, iv in zip(b, middle.degrees)):
                    continue
                values = (a, b, c)
                if any(chi is not None and v[0] - v[1] + v[2] != chi for v, chi in zip(values, chis)):
                    continue
                ranks[0].add(d0)
                ranks[1].add(d1)
                for s in range(3):
                    for i in DEGREES:
                        seen[(s, i)].add(values[s][i])

    if not ranks[0]:
        raise Contradiction(f"long exact sequence '{problem.label}' has no feasible dimensions")
    solved = []
    for s in range(3):
        h = [_hull(seen[(s, i)]) for i in DEGREES]
        solved.append(CohInfo(h0=h[0], h1=h[1], h2=h[2], chi=chis[s]))
    solved = _derive_chis(solved)
    return problem.model_copy(update={
        "left": solved[0],
        "middle": solved[1],
        "right": solved[2],
        "d0": _hull(ranks[0]),
        "d1": _hull(ranks[1]),
    })


def require_exact(info: CohInfo, what: str) -> CohInfo:
    """Raise InvariantViolation unless every degree collapsed to a single value."""
    if not info.is_exact:
        logger.error(f"{what} did not collapse: {info}")
        raise InvariantViolation(f"{what} is not determined exactly: {info}")
    return info
