from __future__ import annotations

import pytest

from stskit import TripleSystem

FANO_TRIPLES = [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6),
                (0, 4, 5), (1, 5, 6), (0, 2, 6)]


@pytest.fixture
def fano() -> TripleSystem:
    """The difference-set system on Z_7: {i, 1+i, 3+i}."""
    return TripleSystem.from_triples(7, FANO_TRIPLES)


@pytest.fixture
def sts9_grid() -> TripleSystem:
    """Order 9 as the 3x3 grid: rows, columns, and both diagonal families."""
    cell = lambda r, c: 3 * r + c
    triples = []
    for r in range(3):
        triples.append(tuple(cell(r, c) for c in range(3)))
        triples.append(tuple(cell(c, r) for c in range(3)))
    for s in range(3):
        triples.append(tuple(cell(r, (s + r) % 3) for r in range(3)))
        triples.append(tuple(cell(r, (s - r) % 3) for r in range(3)))
    return TripleSystem.from_triples(9, triples)
