"""Core types for triple systems, partial parallel classes and colourings,
plus the Steiner-property and colouring verifiers and the plain-text file
formats.

All types are immutable values; every operation here is pure.

Conventions: points are always 0..v-1, each triple is stored sorted
ascending, and the triple list is sorted lexicographically.  Constructions
with a natural labelling (cyclic groups, infinity points, grid coordinates)
keep that labelling in a side structure, see :mod:`stskit.constructions`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Colouring",
    "PartialParallelClass",
    "TripleSystem",
    "VerificationReport",
    "format_colouring",
    "format_sts",
    "m_lower",
    "min_pc_for_low_chi",
    "parse_colouring",
    "parse_sts",
    "verify_colouring",
    "verify_sts",
]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a verifier: ok flag, first violation, and total count."""

    ok: bool
    first_violation: str | None = None
    violation_count: int = 0
    n_classes: int | None = None


@dataclass(frozen=True)
class TripleSystem:
    """A set of 3-subsets ("triples") of the points 0..v-1, in canonical order.

    The constructor enforces only well-formedness: point labels in range,
    each triple sorted, the list sorted, and no duplicate triples (duplicates
    are a hard error, never merged).  Whether the system is actually Steiner
    is the job of :func:`verify_sts`, which can also report malformed triples
    with repeated points coming from hand-built or parsed data.
    """

    v: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.v < 1:
            raise ValueError(f"v must be positive, got {self.v}")
        prev = None
        for t in self.triples:
            if len(t) != 3:
                raise ValueError(f"triple {t} does not have 3 entries")
            if not all(isinstance(p, int) and 0 <= p < self.v for p in t):
                raise ValueError(f"triple {t} has a point outside 0..{self.v - 1}")
            if not (t[0] <= t[1] <= t[2]):
                raise ValueError(f"triple {t} is not sorted; use from_triples")
            if prev is not None:
                if t == prev:
                    raise ValueError(f"duplicate triple {t}")
                if t < prev:
                    raise ValueError("triple list is not sorted; use from_triples")
            prev = t

    @classmethod
    def from_triples(cls, v: int, triples: Iterable[Sequence[int]]) -> "TripleSystem":
        """Canonicalise and build: sorts within each triple and sorts the list."""
        canon = sorted(tuple(sorted(t)) for t in triples)
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate triple {a}")
        return cls(v, tuple(canon))  # type: ignore[arg-type]

    @property
    def b(self) -> int:
        return len(self.triples)

    def index_of(self, triple: Sequence[int]) -> int:
        """Index of a triple (any order of its points) in the canonical list."""
        key = tuple(sorted(triple))
        lo, hi = 0, len(self.triples)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.triples[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.triples) and self.triples[lo] == key:
            return lo
        raise KeyError(f"triple {key} not in system")


@dataclass(frozen=True)
class PartialParallelClass:
    """A set of triple indices of a host system, intended pairwise disjoint."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("class indices must be sorted and duplicate-free")
        if self.indices and self.indices[0] < 0:
            raise ValueError("negative triple index")


@dataclass(frozen=True)
class Colouring:
    """An assignment of the host's triples to colour classes."""

    host: TripleSystem
    classes: tuple[PartialParallelClass, ...]

    def __post_init__(self) -> None:
        for cls in self.classes:
            if cls.indices and cls.indices[-1] >= self.host.b:
                raise ValueError(f"class references triple index {cls.indices[-1]} "
                                 f"but the host has only {self.host.b} triples")

    @property
    def n_classes(self) -> int:
        return len(self.classes)


# ---------------------------------------------------------------------------
# bounds


def m_lower(v: int) -> int:
    """Counting lower bound on the chromatic index of any system of order v."""
    if v % 6 == 3:
        return (v - 1) // 2
    if v % 6 == 1:
        return (v + 1) // 2
    raise ValueError(f"order {v} must be 1 or 3 mod 6")


def min_pc_for_low_chi(v: int) -> int:
    """Least number of disjoint parallel classes any system of order v must
    contain if its chromatic index is at most (v+1)/2.

    With p full classes of v/3 triples and the remaining (v+1)/2 - p classes
    holding at most (v-3)/3 triples each, covering all v(v-1)/6 triples forces
    p >= (v+3)/6.  Used contrapositively: fewer than (v+3)/6 disjoint parallel
    classes pushes the chromatic index to at least (v+3)/2.
    """
    if v % 6 != 3:
        raise ValueError(f"order {v} must be 3 mod 6")
    return (v + 3) // 6


# ---------------------------------------------------------------------------
# verification


def verify_sts(system: TripleSystem) -> VerificationReport:
    """Check the Steiner property: every pair in exactly one triple, and the
    triple count v(v-1)/6.

    Reports the first violation found (malformed triple, duplicate pair with
    both offending triples, uncovered pair, or wrong triple count) plus a
    total violation count.
    """
    v = system.v
    if v < 3:
        raise ValueError(f"order {v} too small to verify")
    first: str | None = None
    count = 0

    def hit(msg: str) -> None:
        nonlocal first, count
        count += 1
        if first is None:
            first = msg

    clean: list[tuple[int, tuple[int, int, int]]] = []
    for i, t in enumerate(system.triples):
        if t[0] == t[1] or t[1] == t[2]:
            hit(f"malformed triple {t}: repeated point")
        else:
            clean.append((i, t))

    seen: dict[tuple[int, int], tuple[int, int, int]] = {}
    for _, t in clean:
        for pair in combinations(t, 2):
            other = seen.get(pair)
            if other is None:
                seen[pair] = t
            else:
                hit(f"pair {{{pair[0]},{pair[1]}}} covered twice (triples {other} and {t})")

    missing = v * (v - 1) // 2 - len(seen)
    if missing > 0:
        # Locate the first uncovered pair for the report; count covers the rest.
        found_msg = False
        for pair in combinations(range(v), 2):
            if pair not in seen:
                hit(f"pair {{{pair[0]},{pair[1]}}} not covered")
                found_msg = True
                break
        count += missing - (1 if found_msg else 0)

    expected, rem = divmod(v * (v - 1), 6)
    if rem != 0:
        hit(f"order {v} admits no Steiner triple system (v(v-1)/6 is not an integer)")
    elif len(system.triples) != expected:
        hit(f"triple count {len(system.triples)} != v(v-1)/6 = {expected}")

    return VerificationReport(ok=count == 0, first_violation=first, violation_count=count)


def verify_colouring(system: TripleSystem, colouring: Colouring) -> VerificationReport:
    """Check that the classes partition the triple indices and that no class
    contains two triples sharing a point.  Reports the class count."""
    if colouring.host != system:
        raise ValueError("colouring was built for a different system")
    first: str | None = None
    count = 0

    def hit(msg: str) -> None:
        nonlocal first, count
        count += 1
        if first is None:
            first = msg

    assigned = [0] * system.b
    for c, cls in enumerate(colouring.classes):
        if not cls.indices:
            hit(f"class {c} is empty")
        used: dict[int, int] = {}
        for i in cls.indices:
            assigned[i] += 1
            for p in system.triples[i]:
                j = used.get(p)
                if j is None:
                    used[p] = i
                else:
                    hit(f"class {c}: triples {system.triples[j]} and "
                        f"{system.triples[i]} share point {p}")
    for i, times in enumerate(assigned):
        if times == 0:
            hit(f"triple {system.triples[i]} is in no class")
        elif times > 1:
            hit(f"triple {system.triples[i]} is in {times} classes")

    return VerificationReport(ok=count == 0, first_violation=first,
                              violation_count=count, n_classes=colouring.n_classes)


# ---------------------------------------------------------------------------
# text formats
#
# STS file:        first line "STS v=<v>", then one triple per line as three
#                  space-separated point indices, in canonical order.
# Colouring file:  first line "COLOURING v=<v> k=<classes>", then one line per
#                  class listing the indices of its triples (into the host's
#                  canonical triple list), sorted ascending.
#
# Both are byte-reproducible given the same system.


def format_sts(system: TripleSystem) -> str:
    lines = [f"STS v={system.v}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in system.triples)
    return "\n".join(lines) + "\n"


def parse_sts(text: str) -> TripleSystem:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("STS v="):
        raise ValueError("not an STS file: expected first line 'STS v=<v>'")
    try:
        v = int(lines[0][len("STS v="):])
    except ValueError:
        raise ValueError(f"bad STS header {lines[0]!r}") from None
    triples = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 point indices, got {ln!r}")
        try:
            triples.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer point in {ln!r}") from None
    return TripleSystem.from_triples(v, triples)


def format_colouring(colouring: Colouring) -> str:
    lines = [f"COLOURING v={colouring.host.v} k={colouring.n_classes}"]
    lines.extend(" ".join(str(i) for i in cls.indices) for cls in colouring.classes)
    return "\n".join(lines) + "\n"


def parse_colouring(text: str, host: TripleSystem) -> Colouring:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("COLOURING v="):
        raise ValueError("not a colouring file: expected 'COLOURING v=<v> k=<k>'")
    head = lines[0].split()
    try:
        v = int(head[1][len("v="):])
        k = int(head[2][len("k="):])
    except (IndexError, ValueError):
        raise ValueError(f"bad colouring header {lines[0]!r}") from None
    if v != host.v:
        raise ValueError(f"colouring order {v} does not match system order {host.v}")
    classes = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            idxs = tuple(sorted(int(p) for p in ln.split()))
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer triple index in {ln!r}") from None
        classes.append(PartialParallelClass(idxs))
    if len(classes) != k:
        raise ValueError(f"header promises {k} classes but file has {len(classes)}")
    return Colouring(host=host, classes=tuple(classes))
