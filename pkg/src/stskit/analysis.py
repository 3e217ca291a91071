"""Search and bounding engine: parallel-class enumeration, maximum sets of
disjoint parallel classes, structural upper-bound certificates, and
exact/heuristic chromatic index.

Searches are deterministic given (instance, budget, seed).  A blown budget
never truncates silently: results carry a status of "complete" or
"inconclusive", and inconclusive values are first-class, not exceptions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .constructions import LabelledSTS, sts33_fixture, wilson_schreiber
from .core import (
    Colouring,
    PartialParallelClass,
    TripleSystem,
    m_lower,
    min_pc_for_low_chi,
    verify_colouring,
)
from .factorisation import OneFactorisation, factorise_G
from .numtheory import f_of
from .rng import substream

__all__ = [
    "ChiResult",
    "MaxDisjointResult",
    "PCBoundCertificate",
    "PCEnumeration",
    "PipelineReport",
    "SearchBudget",
    "auto_weighting",
    "chi_lower_from_certificate",
    "chromatic_index_exact",
    "chromatic_index_heuristic",
    "enumerate_parallel_classes",
    "max_disjoint_pcs",
    "pc_bound_mod3",
    "pc_bound_ws",
    "theorem1_pipeline",
]

COMPLETE = "complete"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchBudget:
    """Node/time caps for the exhaustive searches.

    ``max_classes`` optionally caps how many parallel classes an enumeration
    may collect before giving up.  Exceeding any cap yields an explicit
    inconclusive status.
    """

    max_nodes: int = 100_000_000
    max_seconds: float = 60.0
    max_classes: int | None = None

    def __post_init__(self) -> None:
        if self.max_nodes < 0 or self.max_seconds < 0:
            raise ValueError("budget limits must be nonnegative")


DEFAULT_BUDGET = SearchBudget()


class _BudgetStop(Exception):
    pass


class _Meter:
    """Node counter with a coarse wall-clock check every 4096 nodes."""

    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.max_nodes = budget.max_nodes
        self.deadline = time.monotonic() + budget.max_seconds

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _BudgetStop
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _BudgetStop


# ---------------------------------------------------------------------------
# parallel-class enumeration


@dataclass(frozen=True)
class PCEnumeration:
    classes: tuple[PartialParallelClass, ...]
    status: str
    nodes: int


def enumerate_parallel_classes(system: TripleSystem,
                               budget: SearchBudget = DEFAULT_BUDGET) -> PCEnumeration:
    """All parallel classes (v/3 disjoint triples covering every point), by
    exact-cover search branching on the uncovered point with the fewest
    admissible triples.  Output sorted lexicographically by triple indices."""
    v = system.v
    if v % 6 != 3:
        raise ValueError(f"parallel classes need v = 3 mod 6, got v={v}")
    masks = [1 << t[0] | 1 << t[1] | 1 << t[2] for t in system.triples]
    point_triples: list[list[int]] = [[] for _ in range(v)]
    for i, t in enumerate(system.triples):
        for p in t:
            point_triples[p].append(i)
    full = (1 << v) - 1
    meter = _Meter(budget)
    found: list[tuple[int, ...]] = []

    def rec(covered: int, chosen: list[int]) -> None:
        meter.tick()
        if covered == full:
            found.append(tuple(sorted(chosen)))
            if budget.max_classes is not None and len(found) >= budget.max_classes:
                raise _BudgetStop
            return
        best_p = -1
        best: list[int] = []
        for p in range(v):
            if covered >> p & 1:
                continue
            cand = [i for i in point_triples[p] if masks[i] & covered == 0]
            if best_p < 0 or len(cand) < len(best):
                best_p, best = p, cand
                if not cand:
                    return
        for i in best:
            chosen.append(i)
            rec(covered | masks[i], chosen)
            chosen.pop()

    status = COMPLETE
    try:
        rec(0, [])
    except _BudgetStop:
        status = INCONCLUSIVE
    found.sort()
    return PCEnumeration(
        classes=tuple(PartialParallelClass(c) for c in found),
        status=status,
        nodes=meter.nodes,
    )


@dataclass(frozen=True)
class MaxDisjointResult:
    size: int
    witness: tuple[PartialParallelClass, ...]
    status: str
    nodes: int
    upper_bound: int
    n_parallel_classes: int


def max_disjoint_pcs(system: TripleSystem,
                     budget: SearchBudget = DEFAULT_BUDGET) -> MaxDisjointResult:
    """Maximum number of pairwise triple-disjoint parallel classes, by
    branch-and-bound set packing over the enumerated classes.

    Optimal when status is "complete"; on budget exhaustion reports the best
    packing found together with the trivial remaining-class upper bound."""
    enum = enumerate_parallel_classes(system, budget)
    classes = enum.classes
    k = len(classes)
    masks = [0] * k
    for idx, cls in enumerate(classes):
        for i in cls.indices:
            masks[idx] |= 1 << i

    # Greedy seed, then depth-first packing with count + remaining pruning.
    best: list[int] = []
    taken_mask = 0
    for idx in range(k):
        if masks[idx] & taken_mask == 0:
            best.append(idx)
            taken_mask |= masks[idx]
    best_sol = list(best)
    meter = _Meter(budget)

    def pack(cands: list[int], chosen: list[int]) -> None:
        nonlocal best_sol
        meter.tick()
        if len(chosen) > len(best_sol):
            best_sol = list(chosen)
        for j, idx in enumerate(cands):
            if len(chosen) + len(cands) - j <= len(best_sol):
                return
            chosen.append(idx)
            pack([c for c in cands[j + 1:] if masks[c] & masks[idx] == 0], chosen)
            chosen.pop()

    status = enum.status
    if status == COMPLETE:
        try:
            pack(list(range(k)), [])
        except _BudgetStop:
            status = INCONCLUSIVE
    if status == COMPLETE:
        upper = len(best_sol)
    elif enum.status == COMPLETE:
        upper = k  # all classes known, packing unfinished
    else:
        upper = (system.v - 1) // 2  # enumeration unfinished: only the trivial cap
    return MaxDisjointResult(
        size=len(best_sol),
        witness=tuple(classes[i] for i in best_sol),
        status=status,
        nodes=enum.nodes + meter.nodes,
        upper_bound=upper,
        n_parallel_classes=k,
    )


# ---------------------------------------------------------------------------
# bound certificates


@dataclass(frozen=True)
class PCBoundCertificate:
    """A proven upper bound on the number of pairwise disjoint parallel
    classes of the host system, with the data that proves it."""

    bound: int
    method: str
    witness: dict = field(default_factory=dict)


def pc_bound_mod3(system: TripleSystem, weights: Sequence[int]) -> PCBoundCertificate:
    """Upper bound from a Z_3 point weighting under which every triple sums
    to 0 or to one fixed nonzero value s.

    A parallel class partitions the points, so its triple sums add up to the
    total weight (0 mod 3); with class size v/3 the number of zero-sum
    triples it uses is forced to be v/3 mod 3.  Disjoint classes consume
    distinct zero-sum triples, so their number is at most
    floor(t0 / (v/3 mod 3)) where t0 counts zero-sum triples."""
    v = system.v
    if v % 3 != 0:
        raise ValueError(f"weighting bound needs v divisible by 3, got {v}")
    if len(weights) != v or any(w not in (0, 1, 2) for w in weights):
        raise ValueError("weights must assign one of 0,1,2 to every point")
    if sum(weights) % 3 != 0:
        raise ValueError("total point weight must be 0 mod 3")
    t0 = 0
    s = None
    for t in system.triples:
        w = (weights[t[0]] + weights[t[1]] + weights[t[2]]) % 3
        if w == 0:
            t0 += 1
        elif s is None:
            s = w
        elif w != s:
            raise ValueError(f"triple {t} has weight-sum {w}, expected 0 or {s}")
    if s is None:
        raise ValueError("every triple has zero weight-sum; the weighting yields no bound")
    a_min = (v // 3) % 3
    if a_min == 0:
        raise ValueError("v/3 is divisible by 3; the weighting yields no bound")
    return PCBoundCertificate(
        bound=t0 // a_min,
        method="mod3-weighting",
        witness={"weights": tuple(weights), "s": s, "t0": t0, "a_min": a_min},
    )


def auto_weighting(labelled: LabelledSTS) -> list[int]:
    """The natural Z_3 weighting for a labelled construction: the layer index
    for Bose systems, the point mod 3 otherwise."""
    v = labelled.system.v
    if labelled.tag == "bose":
        n = labelled.params["n"]
        return [p // n for p in range(v)]
    return [p % 3 for p in range(v)]


def pc_bound_ws(n: int, fact: OneFactorisation) -> PCBoundCertificate:
    """Upper bound 3 f(n) + 1 for the order-(n+2) system built on ``fact``.

    Any parallel class either (i) contains the all-infinity triple, or (ii)
    contains an infinity triple over a nonzero-weight factor-0 edge, or (iii)
    pairs two zero-weight edges from factors 1 and 2; the factorisation
    properties cap those cases at 1, 2f(n) and f(n) classes respectively.
    Refuses to certify unless the properties verify against f(n)."""
    from .factorisation import verify_factorisation_properties

    f = f_of(n)
    report = verify_factorisation_properties(fact, f)
    if not report.ok:
        raise ValueError(f"factorisation fails the weight properties: {report.first_violation}")
    return PCBoundCertificate(
        bound=3 * f + 1,
        method="ws-weight-argument",
        witness={"n": n, "f": f, "type_i": 1, "type_ii": 2 * f, "type_iii": f},
    )


def chi_lower_from_certificate(v: int, cert: PCBoundCertificate) -> int:
    """Lower bound on the chromatic index implied by a disjoint-PC bound:
    fewer than (v+3)/6 disjoint parallel classes forces index >= (v+3)/2."""
    if cert.bound < min_pc_for_low_chi(v):
        return (v + 3) // 2
    return m_lower(v)


# ---------------------------------------------------------------------------
# chromatic index


@dataclass(frozen=True)
class ChiResult:
    lower: int
    upper: int
    status: str
    colouring: Colouring | None
    nodes: int

    @property
    def value(self) -> int:
        if self.status != COMPLETE:
            raise ValueError(f"chromatic index not pinned: in [{self.lower}, {self.upper}]")
        return self.lower


def _greedy_colouring(system: TripleSystem) -> list[list[int]]:
    masks = [1 << t[0] | 1 << t[1] | 1 << t[2] for t in system.triples]
    classes: list[list[int]] = []
    class_masks: list[int] = []
    for i in range(system.b):
        for c, cm in enumerate(class_masks):
            if cm & masks[i] == 0:
                classes[c].append(i)
                class_masks[c] |= masks[i]
                break
        else:
            classes.append([i])
            class_masks.append(masks[i])
    return classes


def _colouring_from_groups(system: TripleSystem, groups: Sequence[Sequence[int]]) -> Colouring:
    return Colouring(
        host=system,
        classes=tuple(PartialParallelClass(tuple(sorted(g))) for g in groups if g),
    )


def _search_k_colouring(system: TripleSystem, k: int, meter: _Meter) -> list[int] | None:
    """Backtracking k-colourability test; returns an assignment or None.

    Class symmetry is broken by forcing triple 0 into class 0 and opening a
    new class only at the next unused index.  Iterative so the depth (one
    level per triple) cannot hit the interpreter recursion limit; raises
    _BudgetStop on budget exhaustion."""
    b = system.b
    masks = [1 << t[0] | 1 << t[1] | 1 << t[2] for t in system.triples]
    assign = [-1] * b
    class_masks = [0] * k
    used = [0] * (b + 1)  # classes open before triple i
    i = 0
    next_class = [0] * b  # next class index to try for triple i
    while True:
        meter.tick()
        if i == b:
            return list(assign)
        m = masks[i]
        placed = False
        for c in range(next_class[i], min(used[i] + 1, k)):
            if class_masks[c] & m == 0:
                class_masks[c] |= m
                assign[i] = c
                next_class[i] = c + 1
                used[i + 1] = max(used[i], c + 1)
                i += 1
                if i < b:
                    next_class[i] = 0
                placed = True
                break
        if not placed:
            next_class[i] = 0
            i -= 1
            if i < 0:
                return None
            class_masks[assign[i]] &= ~masks[i]
            assign[i] = -1


def chromatic_index_exact(system: TripleSystem,
                          budget: SearchBudget = DEFAULT_BUDGET,
                          pc_certificate: PCBoundCertificate | None = None,
                          upper_witness: Colouring | None = None) -> ChiResult:
    """Exact chromatic index by iterated k-colourability branch-and-bound.

    The lower bound starts at the counting bound for the order and is raised
    to (v+3)/2 when a disjoint-PC certificate with bound < (v+3)/6 is
    supplied; a verified witness colouring caps the upper bound.  If the
    budget runs out the result is the interval bracketing the value."""
    v = system.v
    lower = m_lower(v)
    if pc_certificate is not None and v % 6 == 3:
        lower = max(lower, chi_lower_from_certificate(v, pc_certificate))

    if upper_witness is not None:
        report = verify_colouring(system, upper_witness)
        if not report.ok:
            raise ValueError(f"witness colouring invalid: {report.first_violation}")
        best_col = upper_witness
    else:
        best_col = _colouring_from_groups(system, _greedy_colouring(system))
    upper = best_col.n_classes
    if lower > upper:  # a sound certificate and a verified witness cannot cross
        raise ValueError(f"lower bound {lower} exceeds witness upper bound {upper}; "
                         f"the certificate does not apply to this system")

    meter = _Meter(budget)
    k = lower
    try:
        while k < upper:
            assign = _search_k_colouring(system, k, meter)
            if assign is None:
                lower = k + 1
                k += 1
            else:
                groups: list[list[int]] = [[] for _ in range(k)]
                for i, c in enumerate(assign):
                    groups[c].append(i)
                best_col = _colouring_from_groups(system, groups)
                upper = best_col.n_classes
                break
    except _BudgetStop:
        return ChiResult(lower=lower, upper=upper, status=INCONCLUSIVE,
                         colouring=best_col, nodes=meter.nodes)
    return ChiResult(lower=upper, upper=upper, status=COMPLETE,
                     colouring=best_col, nodes=meter.nodes)


def chromatic_index_heuristic(system: TripleSystem,
                              target: int,
                              seed: int = 0,
                              restarts: int = 12,
                              iterations: int | None = None) -> Colouring | None:
    """Try to colour the triples with at most ``target`` classes.

    Each restart seeds the classes greedily in a random triple order and then
    runs a min-conflicts repair walk: pick a conflicted triple, move it to
    the class where it clashes least (random tie-break, occasional random
    kick).  Returns a verified colouring on success, None on failure; failure
    proves nothing."""
    v = system.v
    if target < m_lower(v):
        raise ValueError(f"target {target} below the counting bound {m_lower(v)}")
    b = system.b
    triples = system.triples
    if iterations is None:
        iterations = max(4000, 250 * b)

    for r in range(restarts):
        rng = substream(seed, "chi-heur", r)
        order = list(range(b))
        rng.shuffle(order)

        assign = [-1] * b
        counts = [[0] * v for _ in range(target)]  # per-class point usage
        for i in order:
            free = [c for c in range(target)
                    if not any(counts[c][p] for p in triples[i])]
            c = rng.choice(free) if free else rng.randrange(target)
            assign[i] = c
            for p in triples[i]:
                counts[c][p] += 1

        def clash(i: int, c: int) -> int:
            a, b2, c2 = triples[i]
            return counts[c][a] + counts[c][b2] + counts[c][c2]

        for _ in range(iterations):
            conflicted = [i for i in range(b) if clash(i, assign[i]) > 3]
            if not conflicted:
                groups: list[list[int]] = [[] for _ in range(target)]
                for i, c in enumerate(assign):
                    groups[c].append(i)
                colouring = _colouring_from_groups(system, groups)
                report = verify_colouring(system, colouring)
                if not report.ok:  # defensive; repair loop guarantees this
                    raise RuntimeError(f"heuristic produced invalid colouring: "
                                       f"{report.first_violation}")
                return colouring
            i = rng.choice(conflicted)
            old = assign[i]
            for p in triples[i]:
                counts[old][p] -= 1
            if rng.random() < 0.08:
                new = rng.randrange(target)
            else:
                scores = [clash(i, c) for c in range(target)]
                best = min(scores)
                new = rng.choice([c for c, sc in enumerate(scores) if sc == best])
            assign[i] = new
            for p in triples[i]:
                counts[new][p] += 1
    return None


# ---------------------------------------------------------------------------
# order-by-order dispatch


@dataclass(frozen=True)
class PipelineReport:
    """Verdict for one order v = 3 mod 6: does some system of order v have
    chromatic index at least (v+3)/2, and by which route."""

    v: int
    route: str           # unique | external | fixture | possible-exception | ws-certificate
    holds: bool | None   # None = undecided at this order
    chi_lower: int | None
    chi_exact: int | None
    pc_bound: int | None
    f_value: int | None
    message: str


def theorem1_pipeline(v: int) -> PipelineReport:
    """Classify order v:

    * v in {3, 9}: the unique systems have chromatic index (v-1)/2.
    * v = 21: relies on the known order-21 systems with no parallel classes
      (external result, reported as such).
    * v = 33: the embedded fixture has at most 5 < 6 disjoint parallel
      classes, hence chromatic index 18 (witnessed by its colouring).
    * v in {45, 75, 129, 513}: possible exception, undecided here.
    * otherwise: build the order-v system from the 1-factorisation of
      G(v-2); its disjoint-PC certificate 3 f(v-2)+1 is checked against
      (v+3)/6, certifying chromatic index >= (v+3)/2.
    """
    if v < 3 or v % 6 != 3:
        raise ValueError(f"v must be 3 mod 6 and >= 3, got {v}")
    if v in (3, 9):
        chi = (v - 1) // 2
        return PipelineReport(
            v=v, route="unique", holds=False, chi_lower=chi, chi_exact=chi,
            pc_bound=None, f_value=None,
            message=f"the unique system of order {v} has chromatic index {chi}",
        )
    if v == 21:
        return PipelineReport(
            v=v, route="external", holds=True, chi_lower=12, chi_exact=None,
            pc_bound=0, f_value=None,
            message="external: known order-21 systems with no parallel classes "
                    "have chromatic index >= 12",
        )
    if v == 33:
        labelled, colouring = sts33_fixture()
        cert = pc_bound_mod3(labelled.system, auto_weighting(labelled))
        chi = chromatic_index_exact(labelled.system, pc_certificate=cert,
                                    upper_witness=colouring)
        return PipelineReport(
            v=v, route="fixture", holds=True, chi_lower=chi.lower,
            chi_exact=chi.value, pc_bound=cert.bound, f_value=None,
            message=f"embedded order-33 system: at most {cert.bound} disjoint "
                    f"parallel classes, chromatic index {chi.value}",
        )
    if v in (45, 75, 129, 513):
        return PipelineReport(
            v=v, route="possible-exception", holds=None, chi_lower=m_lower(v),
            chi_exact=None, pc_bound=3 * f_of(v - 2) + 1, f_value=f_of(v - 2),
            message=f"possible exception: 3 f({v - 2})+1 = {3 * f_of(v - 2) + 1} "
                    f"is not below (v+3)/6 = {(v + 3) // 6}",
        )
    n = v - 2
    fact = factorise_G(n)
    wilson_schreiber(n, fact)  # materialise the witness system
    cert = pc_bound_ws(n, fact)
    threshold = min_pc_for_low_chi(v)
    holds = cert.bound < threshold
    chi_lower = (v + 3) // 2 if holds else m_lower(v)
    if holds:
        message = (f"constructed order-{v} system has at most {cert.bound} "
                   f"disjoint parallel classes < {threshold}, so chromatic "
                   f"index >= {chi_lower}")
    else:
        message = (f"certificate bound {cert.bound} does not beat {threshold}; "
                   f"no conclusion at order {v}")
    return PipelineReport(
        v=v, route="ws-certificate", holds=holds, chi_lower=chi_lower,
        chi_exact=None, pc_bound=cert.bound, f_value=f_of(n), message=message,
    )
