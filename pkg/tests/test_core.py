from __future__ import annotations

from itertools import combinations

import pytest

from stskit import (
    Colouring,
    PartialParallelClass,
    TripleSystem,
    format_colouring,
    format_sts,
    m_lower,
    min_pc_for_low_chi,
    parse_colouring,
    parse_sts,
    verify_colouring,
    verify_sts,
)

from conftest import FANO_TRIPLES


# ---------------------------------------------------------------------------
# TripleSystem construction


def test_from_triples_canonicalises():
    system = TripleSystem.from_triples(7, [(3, 1, 0), (4, 2, 1)])
    assert system.triples == ((0, 1, 3), (1, 2, 4))


def test_duplicate_triples_are_a_hard_error():
    with pytest.raises(ValueError, match="duplicate"):
        TripleSystem.from_triples(7, [(0, 1, 3), (3, 0, 1)])


def test_out_of_range_point_rejected():
    with pytest.raises(ValueError):
        TripleSystem.from_triples(7, [(0, 1, 7)])


def test_index_of_roundtrip(fano):
    for i, t in enumerate(fano.triples):
        assert fano.index_of(t) == i
    with pytest.raises(KeyError):
        fano.index_of((0, 1, 2))


# ---------------------------------------------------------------------------
# verify_sts


def test_fano_verifies(fano):
    report = verify_sts(fano)
    assert report.ok and report.violation_count == 0


def test_sts9_grid_verifies(sts9_grid):
    assert sts9_grid.b == 12  # 9*8/6
    assert verify_sts(sts9_grid).ok


def test_duplicate_pair_reported_with_both_triples():
    # Swapping {0,1,3} for {0,1,4} doubles the pairs {0,4} and {1,4} and
    # uncovers {0,3} and {1,3}; the first violation carries both offenders.
    triples = [t for t in FANO_TRIPLES if t != (0, 1, 3)] + [(0, 1, 4)]
    broken = TripleSystem.from_triples(7, triples)
    report = verify_sts(broken)
    assert not report.ok
    assert "pair {0,4} covered twice" in report.first_violation
    assert "(0, 1, 4)" in report.first_violation and "(0, 4, 5)" in report.first_violation
    assert report.violation_count == 4


def test_uncovered_pair_and_count_violations():
    report = verify_sts(TripleSystem.from_triples(7, [(0, 1, 3)]))
    assert not report.ok
    assert report.violation_count > 1  # many uncovered pairs plus the count


def test_malformed_triple_reported():
    system = TripleSystem(7, ((0, 0, 1), (2, 3, 4)))
    report = verify_sts(system)
    assert not report.ok
    assert "repeated point" in report.first_violation


def test_wrong_order_residue_never_ok():
    report = verify_sts(TripleSystem.from_triples(5, [(0, 1, 2)]))
    assert not report.ok


def test_pair_coverage_is_exactly_one(fano, sts9_grid):
    for system in (fano, sts9_grid):
        cover = {}
        for t in system.triples:
            for pair in combinations(t, 2):
                cover[pair] = cover.get(pair, 0) + 1
        assert all(c == 1 for c in cover.values())
        assert len(cover) == system.v * (system.v - 1) // 2


# ---------------------------------------------------------------------------
# bounds


@pytest.mark.parametrize("v,expected", [(9, 4), (13, 7), (33, 16), (7, 4), (15, 7)])
def test_m_lower(v, expected):
    assert m_lower(v) == expected


def test_m_lower_rejects_bad_residue():
    for v in (8, 11, 12):
        with pytest.raises(ValueError):
            m_lower(v)


@pytest.mark.parametrize("v,expected", [(15, 3), (33, 6), (9, 2)])
def test_min_pc_for_low_chi(v, expected):
    assert min_pc_for_low_chi(v) == expected


def test_min_pc_rejects_wrong_residue():
    with pytest.raises(ValueError):
        min_pc_for_low_chi(13)


# ---------------------------------------------------------------------------
# verify_colouring


def _resolution_of_grid(system: TripleSystem) -> Colouring:
    # Brute-force: partition the 12 triples into 4 disjoint classes of 3.
    masks = [1 << a | 1 << b | 1 << c for a, b, c in system.triples]
    full = (1 << 9) - 1
    classes = []
    for combo in combinations(range(12), 3):
        m = 0
        for i in combo:
            if m & masks[i]:
                break
            m |= masks[i]
        else:
            if m == full:
                classes.append(combo)
    assert len(classes) == 4
    used = set()
    for cls in classes:
        assert not used & set(cls)
        used |= set(cls)
    return Colouring(host=system,
                     classes=tuple(PartialParallelClass(c) for c in classes))


def test_grid_resolution_verifies(sts9_grid):
    colouring = _resolution_of_grid(sts9_grid)
    report = verify_colouring(sts9_grid, colouring)
    assert report.ok and report.n_classes == 4


def test_singleton_classes_always_verify(fano):
    colouring = Colouring(
        host=fano,
        classes=tuple(PartialParallelClass((i,)) for i in range(fano.b)))
    report = verify_colouring(fano, colouring)
    assert report.ok and report.n_classes == 7


def test_intersecting_triples_in_one_class_rejected(fano):
    i, j = fano.index_of((0, 1, 3)), fano.index_of((1, 2, 4))
    rest = [k for k in range(fano.b) if k not in (i, j)]
    classes = [PartialParallelClass(tuple(sorted((i, j))))]
    classes += [PartialParallelClass((k,)) for k in rest]
    report = verify_colouring(fano, Colouring(host=fano, classes=tuple(classes)))
    assert not report.ok
    assert "share point 1" in report.first_violation


def test_missing_and_doubled_triples_reported(fano):
    report = verify_colouring(fano, Colouring(
        host=fano, classes=(PartialParallelClass((0,)), PartialParallelClass((0,)))))
    assert not report.ok
    assert report.violation_count >= 6  # five missing plus the doubled one


def test_colouring_index_out_of_range_rejected(fano):
    with pytest.raises(ValueError):
        Colouring(host=fano, classes=(PartialParallelClass((99,)),))


def _oracle_colouring_ok(system: TripleSystem, classes) -> bool:
    # Independent quadratic check: partition plus pairwise disjointness.
    seen = []
    for cls in classes:
        for i in cls:
            seen.append(i)
        for a in cls:
            for b in cls:
                if a < b and set(system.triples[a]) & set(system.triples[b]):
                    return False
    return sorted(seen) == list(range(system.b)) and all(classes)


def test_verifier_matches_quadratic_oracle(fano, sts9_grid):
    import random

    rng = random.Random(20240901)
    for system in (fano, sts9_grid):
        for _ in range(40):
            k = rng.randrange(2, system.b + 1)
            groups = [[] for _ in range(k)]
            for i in range(system.b):
                groups[rng.randrange(k)].append(i)
            if rng.random() < 0.3 and groups[0]:
                groups[1].append(groups[0][0])  # overlap corruption
            groups = [g for g in groups if g]
            colouring = Colouring(
                host=system,
                classes=tuple(PartialParallelClass(tuple(sorted(set(g)))) for g in groups))
            ours = verify_colouring(system, colouring).ok
            oracle = _oracle_colouring_ok(
                system, [cls.indices for cls in colouring.classes])
            assert ours == oracle


# ---------------------------------------------------------------------------
# text formats


def test_sts_format_roundtrip_is_byte_stable(fano):
    text = format_sts(fano)
    assert text.startswith("STS v=7\n")
    again = parse_sts(text)
    assert again == fano
    assert format_sts(again) == text


def test_colouring_format_roundtrip(sts9_grid):
    colouring = _resolution_of_grid(sts9_grid)
    text = format_colouring(colouring)
    assert text.splitlines()[0] == "COLOURING v=9 k=4"
    again = parse_colouring(text, sts9_grid)
    assert again == colouring
    assert format_colouring(again) == text


@pytest.mark.parametrize("text", [
    "", "BAD\n", "STS v=x\n", "STS v=7\n0 1\n", "STS v=7\n0 1 a\n",
])
def test_parse_sts_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_sts(text)


def test_parse_colouring_rejects_mismatches(fano, sts9_grid):
    colouring = _resolution_of_grid(sts9_grid)
    text = format_colouring(colouring)
    with pytest.raises(ValueError, match="does not match"):
        parse_colouring(text, fano)
    with pytest.raises(ValueError, match="promises"):
        parse_colouring("COLOURING v=9 k=3\n" + "\n".join(text.splitlines()[1:]) + "\n",
                        sts9_grid)
