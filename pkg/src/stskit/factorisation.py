"""The cubic graph G(n) on Z_n \\ {0} and its special 1-factorisation.

G(n) has an edge {x,-2x} and an edge {x,-x} for every nonzero x; the weight
of an edge {x,y} is x+y mod n.  G(n) splits into one unit-Cayley-graph
component per divisor d > 1 of n, and each component carries an explicit
3-way perfect-matching decomposition whose shape depends on
|<-1,-2>_d| mod 4.  Gluing the components gives a 1-factorisation
{G_0, G_1, G_2} of G(n) in which

* edges of weight x and -x always land in the same factor,
* G_0 has exactly 2 f(n) edges of nonzero weight, and
* G_1 union G_2 has exactly 2 f(n) edges of zero weight,

with f the divisor-sum function from :mod:`stskit.numtheory`.  These three
properties are what the downstream parallel-class bound consumes, and
:func:`verify_factorisation_properties` re-checks them from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import VerificationReport
from .numtheory import divisors_gt1, euler_phi

__all__ = [
    "OneFactorisation",
    "WeightedGraph",
    "build_G",
    "factorise_G",
    "factorise_component",
    "format_factorisation",
    "verify_factorisation_properties",
]

Edge = tuple[int, int]


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """A graph on a subset of Z_n \\ {0}; edge {x,y} has weight x+y mod n."""

    n: int
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def weight(self, edge: Edge) -> int:
        return (edge[0] + edge[1]) % self.n


@dataclass(frozen=True)
class OneFactorisation:
    """Three edge-disjoint perfect matchings partitioning the host's edges."""

    graph: WeightedGraph
    factors: tuple[tuple[Edge, ...], tuple[Edge, ...], tuple[Edge, ...]]


def build_G(n: int) -> WeightedGraph:
    """The graph with vertex set Z_n \\ {0} and edges {x,-2x}, {x,-x}.

    Needs n = 1 mod 6 so that x, -x, -2x are always three distinct vertices;
    the result is 3-regular with 3(n-1)/2 edges.
    """
    if n % 6 != 1 or n < 7:
        raise ValueError(f"n must be 1 mod 6 and >= 7, got {n}")
    edges = set()
    for x in range(1, n):
        edges.add(_pair(x, n - x))
        edges.add(_pair(x, (-2 * x) % n))
    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    if any(degree[x] != 3 for x in range(1, n)) or len(edges) != 3 * (n - 1) // 2:
        raise RuntimeError(f"G({n}) is not cubic; construction bug")
    return WeightedGraph(n=n, vertices=tuple(range(1, n)), edges=tuple(sorted(edges)))


def _unit_cayley_edges(d: int) -> tuple[tuple[int, ...], tuple[Edge, ...]]:
    units = tuple(x for x in range(1, d) if math.gcd(x, d) == 1)
    edges = set()
    for x in units:
        edges.add(_pair(x, d - x))
        edges.add(_pair(x, (-2 * x) % d))
    return units, tuple(sorted(edges))


@lru_cache(maxsize=None)
def factorise_component(d: int) -> OneFactorisation:
    """1-factorisation {M_0,M_1,M_2} of the unit Cayley graph mod d with the
    weight properties described in the module docstring (f(d) there reduces
    to: M_0 has 2*phi(d)/|X| nonzero-weight edges when |X| = 2 mod 4, none
    when |X| = 0 mod 4, and dually for zero weights in M_1 union M_2).

    The component on X = <-1,-2>_d is a union of the (-2)-power cycle(s) and
    the negation matching; the matching goes to M_0 and the cycle edges
    alternate into M_1/M_2, except that when |X| = 2 mod 4 the alternation
    cannot close and one negation edge is traded into each of M_1, M_2 in
    exchange for two cycle edges.  Cosets of X are translated copies.

    d = 3 is rejected: there X = {1,2} and the graph is a single edge, which
    has no decomposition into three perfect matchings.
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"d must be an odd integer >= 3, got {d}")
    if d == 3:
        raise ValueError("d=3 is degenerate: the unit Cayley graph is a single edge")

    neg2 = d - 2
    powers = [1]
    x = neg2
    while x != 1:
        powers.append(x)
        x = x * neg2 % d
    m = len(powers)
    power_set = set(powers)
    neg_in = (d - 1) in power_set

    if neg_in:
        if m % 2 != 0:
            raise RuntimeError(f"-1 in <-2>_{d} forces even order, got {m}")
        s = m // 2
        x_size = m
    else:
        s = m
        x_size = 2 * m
    x_set = power_set | {d - p for p in powers}
    if len(x_set) != x_size:
        raise RuntimeError(f"|<-1,-2>_{d}| mismatch: {len(x_set)} != {x_size}")

    def xs(i: int) -> int:
        # x_i = (-2)^i; only indices 0..s are ever needed.
        if i < s:
            return powers[i] if neg_in else powers[i % m]
        return d - powers[0] if neg_in else powers[0]

    def neg(value: int) -> int:
        return d - value

    h = [[], [], []]  # type: list[list[Edge]]
    if x_size % 4 == 0:
        for i in range(s):
            h[0].append(_pair(xs(i), neg(xs(i))))
        for j in range(0, s - 1, 2):
            h[1].append(_pair(xs(j), xs(j + 1)))
            h[1].append(_pair(neg(xs(j)), neg(xs(j + 1))))
        for j in range(1, s, 2):
            h[2].append(_pair(xs(j), xs(j + 1)))
            h[2].append(_pair(neg(xs(j)), neg(xs(j + 1))))
    else:
        if s < 3:
            raise RuntimeError(f"|X| = 2 mod 4 with s={s} < 3 should be unreachable for d={d}")
        for i in range(1, s - 1):
            h[0].append(_pair(xs(i), neg(xs(i))))
        h[0].append(_pair(xs(s - 1), xs(s)))
        h[0].append(_pair(neg(xs(s - 1)), neg(xs(s))))
        for j in range(0, s - 2, 2):
            h[1].append(_pair(xs(j), xs(j + 1)))
            h[1].append(_pair(neg(xs(j)), neg(xs(j + 1))))
        h[1].append(_pair(xs(s - 1), neg(xs(s - 1))))
        for j in range(1, s - 1, 2):
            h[2].append(_pair(xs(j), xs(j + 1)))
            h[2].append(_pair(neg(xs(j)), neg(xs(j + 1))))
        h[2].append(_pair(xs(0), neg(xs(0))))

    _check_component(d, x_set, h)

    phi = euler_phi(d)
    reps = []
    covered: set[int] = set()
    for a in range(1, d):
        if math.gcd(a, d) == 1 and a not in covered:
            reps.append(a)
            covered.update(a * x % d for x in x_set)
    if len(reps) * x_size != phi:
        raise RuntimeError(f"coset count mismatch mod {d}")

    factors = []
    for hi in h:
        edges = []
        for a in reps:
            edges.extend(_pair(a * u % d, a * v % d) for u, v in hi)
        factors.append(tuple(sorted(edges)))

    units, cay_edges = _unit_cayley_edges(d)
    graph = WeightedGraph(n=d, vertices=units, edges=cay_edges)
    fact = OneFactorisation(graph=graph, factors=tuple(factors))  # type: ignore[arg-type]
    _check_partition(fact)
    return fact


def _check_component(d: int, x_set: set[int], h: list[list[Edge]]) -> None:
    # Defensive: each H_i must be a perfect matching on X and together they
    # must partition the component's edge set.  Unreachable if the index
    # arithmetic above is right.
    comp_edges = set()
    for x in x_set:
        comp_edges.add(_pair(x, d - x))
        comp_edges.add(_pair(x, (-2 * x) % d))
    all_h: set[Edge] = set()
    for i, hi in enumerate(h):
        touched: set[int] = set()
        for u, v in hi:
            if u in touched or v in touched:
                raise RuntimeError(f"H_{i} mod {d} is not a matching at edge {(u, v)}")
            touched.update((u, v))
        if touched != x_set:
            raise RuntimeError(f"H_{i} mod {d} does not cover the component")
        all_h.update(hi)
    if all_h != comp_edges or sum(len(hi) for hi in h) != len(comp_edges):
        raise RuntimeError(f"H_0,H_1,H_2 mod {d} do not partition the component edges")


def _check_partition(fact: OneFactorisation) -> None:
    union: set[Edge] = set()
    total = 0
    for factor in fact.factors:
        union.update(factor)
        total += len(factor)
    if union != set(fact.graph.edges) or total != len(fact.graph.edges):
        raise RuntimeError("factors do not partition the edge set")


def factorise_G(n: int) -> OneFactorisation:
    """1-factorisation of G(n) assembled from the per-divisor component
    factorisations via x -> (n/d) x, which maps units mod d onto the elements
    of additive order d."""
    graph = build_G(n)
    factors: list[list[Edge]] = [[], [], []]
    for d in divisors_gt1(n):
        comp = factorise_component(d)
        mult = n // d
        for i, factor in enumerate(comp.factors):
            factors[i].extend(_pair(mult * u % n, mult * v % n) for u, v in factor)
    fact = OneFactorisation(
        graph=graph,
        factors=tuple(tuple(sorted(f)) for f in factors),  # type: ignore[arg-type]
    )
    _check_partition(fact)
    return fact


def verify_factorisation_properties(fact: OneFactorisation, f_n: int) -> VerificationReport:
    """Re-check, from scratch, everything the parallel-class bound needs:

    1. the three factors are perfect matchings partitioning the host's edges;
    2. for every x != 0, all edges with weight in {x, -x} lie in one factor;
    3. factor 0 has exactly ``2 * f_n`` nonzero-weight edges and factors 1, 2
       together have exactly ``2 * f_n`` zero-weight edges.
    """
    graph = fact.graph
    n = graph.n
    first: str | None = None
    count = 0

    def hit(msg: str) -> None:
        nonlocal first, count
        count += 1
        if first is None:
            first = msg

    union: set[Edge] = set()
    total = 0
    for i, factor in enumerate(fact.factors):
        touched: set[int] = set()
        for u, v in factor:
            if u in touched or v in touched:
                hit(f"factor {i} is not a matching at edge {(u, v)}")
            touched.update((u, v))
        if touched != set(graph.vertices):
            hit(f"factor {i} does not cover every vertex")
        union.update(factor)
        total += len(factor)
    if union != set(graph.edges) or total != len(graph.edges):
        hit("factors do not partition the edge set")

    weight_class_factor: dict[int, tuple[int, Edge]] = {}
    for i, factor in enumerate(fact.factors):
        for edge in factor:
            w = graph.weight(edge)
            if w == 0:
                continue
            key = min(w, n - w)
            prev = weight_class_factor.get(key)
            if prev is None:
                weight_class_factor[key] = (i, edge)
            elif prev[0] != i:
                hit(f"edges {prev[1]} and {edge} have opposite weights "
                    f"but sit in factors {prev[0]} and {i}")

    nonzero_in_0 = sum(1 for e in fact.factors[0] if graph.weight(e) != 0)
    zero_in_12 = sum(1 for i in (1, 2) for e in fact.factors[i] if graph.weight(e) == 0)
    if nonzero_in_0 != 2 * f_n:
        hit(f"factor 0 has {nonzero_in_0} nonzero-weight edges, expected {2 * f_n}")
    if zero_in_12 != 2 * f_n:
        hit(f"factors 1+2 have {zero_in_12} zero-weight edges, expected {2 * f_n}")

    return VerificationReport(ok=count == 0, first_violation=first, violation_count=count)


def format_factorisation(fact: OneFactorisation) -> str:
    """Labelled edge lists: 'FACTOR i' headers then 'x y w' per edge."""
    lines = []
    for i, factor in enumerate(fact.factors):
        lines.append(f"FACTOR {i}")
        lines.extend(f"{u} {v} {fact.graph.weight((u, v))}" for u, v in factor)
    return "\n".join(lines) + "\n"
