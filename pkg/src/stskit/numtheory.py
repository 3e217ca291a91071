"""Exact arithmetic layer: divisors, totients, orders of unit subgroups, and
the divisor-sum functions g, f, psi, psi* that control how many disjoint
parallel classes the triple-system constructions can have.

Everything is exact integer arithmetic; the only float in the module is the
ratio column of :func:`f_growth_table`.

Two routes compute the order of the subgroup of units generated by -1 and -2:

* :func:`subgroup_order` builds the subgroup as an explicit set by
  breadth-first closure under multiplication.  It is the oracle.
* the scan path computes the multiplicative order of -2 from the factorised
  totient and then adjoins -1.  It must (and, per the test suite, does)
  agree with the closure oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

__all__ = [
    "NumberProfile",
    "ScanRow",
    "divisors_gt1",
    "euler_phi",
    "f_growth_table",
    "f_of",
    "g_of",
    "negative_psi_scan",
    "number_profile",
    "psi_of",
    "psi_star_of",
    "scan_exceptions",
    "scan_profiles",
    "subgroup_order",
]


# ---------------------------------------------------------------------------
# factorisation basics


def smallest_prime_factor_sieve(limit: int) -> list[int]:
    """spf[k] = smallest prime factor of k for 2 <= k <= limit (spf[k]=k for primes)."""
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for q in range(p * p, limit + 1, p):
                if spf[q] == q:
                    spf[q] = p
    return spf


def factorise(n: int, spf: list[int] | None = None) -> dict[int, int]:
    """Prime factorisation of n >= 1 as {prime: exponent}, by sieve lookup or
    trial division."""
    if n < 1:
        raise ValueError(f"cannot factorise {n}: must be a positive integer")
    out: dict[int, int] = {}
    if spf is not None and n < len(spf):
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return out
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out[d] = e
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int, spf: list[int] | None = None) -> int:
    phi = 1
    for p, e in factorise(n, spf).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def divisors_gt1(n: int, spf: list[int] | None = None) -> list[int]:
    """All divisors of n greater than 1, sorted ascending."""
    divs = [1]
    for p, e in factorise(n, spf).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    divs.sort()
    return divs[1:]


# ---------------------------------------------------------------------------
# subgroup orders


def subgroup_order(d: int, generators: Iterable[int]) -> int:
    """Order of the subgroup of units mod d generated by ``generators``,
    computed by breadth-first closure under multiplication.

    Rejects even d and generators sharing a factor with d.
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"modulus {d} must be an odd integer >= 3")
    gens = sorted({g % d for g in generators})
    for g in gens:
        if math.gcd(g, d) != 1:
            raise ValueError(f"generator {g} is not a unit mod {d}")
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % d
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def _multiplicative_order(a: int, d: int, exponent: int, exponent_factors: dict[int, int]) -> int:
    # ``exponent`` must be a multiple of the order (phi(d) always is).
    e = exponent
    for p in exponent_factors:
        while e % p == 0 and pow(a, e // p, d) == 1:
            e //= p
    return e


def _neg_double_order(d: int, phi: int, spf: list[int] | None = None) -> int:
    """|<-1,-2>| mod d via the order of -2.

    The subgroup generated by -2 is cyclic of order m; it contains -1 exactly
    when m is even and (-2)^(m/2) = -1, in which case adjoining -1 adds
    nothing.  Otherwise the subgroup doubles.
    """
    m = _multiplicative_order(d - 2, d, phi, factorise(phi, spf))
    if m % 2 == 0 and pow(d - 2, m // 2, d) == d - 1:
        return m
    return 2 * m


# ---------------------------------------------------------------------------
# g, f, psi, psi*


def _g_from_order(phi: int, sub_order: int) -> int:
    if sub_order % 4 == 0:
        return 0
    g, rem = divmod(phi, sub_order)
    if rem:  # impossible by Lagrange; a failure here is an arithmetic bug
        raise RuntimeError(f"subgroup order {sub_order} does not divide phi {phi}")
    return g


def _check_coprime_to_six(n: int, what: str) -> None:
    if n <= 1 or n % 2 == 0 or n % 3 == 0:
        raise ValueError(f"{what} must be > 1 and congruent to 1 or 5 mod 6, got {n}")


def g_of(d: int, spf: list[int] | None = None) -> int:
    """0 when |<-1,-2>_d| is divisible by 4, else phi(d)/|<-1,-2>_d|."""
    _check_coprime_to_six(d, "d")
    phi = euler_phi(d, spf)
    return _g_from_order(phi, _neg_double_order(d, phi, spf))


@dataclass(frozen=True)
class NumberProfile:
    """Per-n record of the arithmetic quantities feeding the bound machinery."""

    n: int
    divisors_gt1: tuple[int, ...]
    phi: int
    sub_order: int
    g: int
    f: int
    psi: int
    psi_star: int


def _build_profile(n: int, spf: list[int] | None = None) -> NumberProfile:
    _check_coprime_to_six(n, "n")
    divs = divisors_gt1(n, spf)
    f = 0
    psi_star = 0
    g_n = 0
    order_n = 0
    phi_n = 0
    for d in divs:
        phi = euler_phi(d, spf)
        order = _neg_double_order(d, phi, spf)
        if order % 2 != 0 or phi % order != 0:
            raise RuntimeError(f"subgroup order {order} mod {d} violates parity/Lagrange")
        g = _g_from_order(phi, order)
        f += g
        psi_star += phi - 18 * g
        if d == n:
            g_n, order_n, phi_n = g, order, phi
    if psi_star != n - 1 - 18 * f:
        raise RuntimeError(f"psi*({n}) != {n}-1-18*f({n}); divisor sum is inconsistent")
    return NumberProfile(
        n=n,
        divisors_gt1=tuple(divs),
        phi=phi_n,
        sub_order=order_n,
        g=g_n,
        f=f,
        psi=phi_n - 18 * g_n,
        psi_star=psi_star,
    )


@lru_cache(maxsize=8192)
def number_profile(n: int) -> NumberProfile:
    """Full :class:`NumberProfile` for n > 1 with n = 1 or 5 mod 6."""
    return _build_profile(n)


def f_of(n: int) -> int:
    return number_profile(n).f


def psi_of(n: int) -> int:
    return number_profile(n).psi


def psi_star_of(n: int) -> int:
    return number_profile(n).psi_star


# ---------------------------------------------------------------------------
# range scans


class ScanRow(NamedTuple):
    n: int
    phi: int
    f: int
    psi: int
    psi_star: int


def _scan_range(lo: int, hi: int) -> list[ScanRow]:
    if hi < 5:
        return []
    spf = smallest_prime_factor_sieve(hi)
    phi_memo: dict[int, int] = {}
    g_memo: dict[int, int] = {}
    rows: list[ScanRow] = []
    for n in range(max(lo, 5), hi + 1):
        r = n % 6
        if r != 1 and r != 5:
            continue
        f = 0
        psi_star = 0
        for d in divisors_gt1(n, spf):
            g = g_memo.get(d)
            if g is None:
                phi = euler_phi(d, spf)
                phi_memo[d] = phi
                g = g_memo[d] = _g_from_order(phi, _neg_double_order(d, phi, spf))
            f += g
            psi_star += phi_memo[d] - 18 * g
        if psi_star != n - 1 - 18 * f:
            raise RuntimeError(f"psi*({n}) != {n}-1-18*f({n}); divisor sum is inconsistent")
        rows.append(ScanRow(n, phi_memo[n], f, phi_memo[n] - 18 * g_memo[n], psi_star))
    return rows


def _scan_chunk(bounds: tuple[int, int]) -> list[ScanRow]:
    return _scan_range(*bounds)


def scan_profiles(limit: int, threads: int = 1) -> list[ScanRow]:
    """Rows (n, phi, f, psi, psi*) for every n = 1 or 5 mod 6 with 1 < n <= limit.

    ``threads`` > 1 partitions the range across a process pool; the merged
    result is identical to the single-process scan.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    if threads <= 1 or limit < 1000:
        return _scan_range(2, limit)
    span = (limit - 1) // threads + 1
    chunks = [(2 + i * span, min(limit, 1 + (i + 1) * span)) for i in range(threads)]
    chunks = [(lo, hi) for lo, hi in chunks if lo <= hi]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_scan_chunk, chunks))
    rows = [row for part in parts for row in part]
    rows.sort()
    return rows


def scan_exceptions(limit: int, threads: int = 1) -> list[int]:
    """All n = 1 or 5 mod 6 with 1 < n <= limit and psi*(n) <= 0, ascending."""
    return [row.n for row in scan_profiles(limit, threads) if row.psi_star <= 0]


def negative_psi_scan(limit: int, threads: int = 1) -> list[tuple[int, int]]:
    """All (n, psi(n)) with psi(n) < 0 in the scan range, ascending by n."""
    return [(row.n, row.psi) for row in scan_profiles(limit, threads) if row.psi < 0]


def f_growth_table(limit: int, step: int = 1) -> list[tuple[int, int, float]]:
    """Every ``step``-th scanned n with its f(n) and the ratio f(n)/n.

    A sampling aid for eyeballing how slowly f grows; makes no asymptotic
    claim.
    """
    if not (limit >= step >= 1):
        raise ValueError(f"need limit >= step >= 1, got limit={limit} step={step}")
    rows = scan_profiles(limit)
    return [(row.n, row.f, row.f / row.n) for i, row in enumerate(rows) if i % step == 0]
