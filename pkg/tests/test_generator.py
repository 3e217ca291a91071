from __future__ import annotations

from itertools import combinations

import pytest

from stskit import GenerationError, colouring_survey, random_sts, verify_sts


def test_v7_is_valid_and_unique_up_to_labelling():
    # There is only one system of order 7 up to isomorphism, so validity is
    # the whole check.
    system = random_sts(7, seed=1)
    assert system.b == 7
    assert verify_sts(system).ok


def test_v9_is_valid():
    system = random_sts(9, seed=1)
    assert system.b == 12
    assert verify_sts(system).ok


def test_v21_is_valid():
    system = random_sts(21, seed=3)
    assert system.b == 70
    assert verify_sts(system).ok


@pytest.mark.parametrize("v", [13, 15, 19])
def test_pair_coverage_of_generated_systems(v):
    system = random_sts(v, seed=11)
    cover: dict[tuple[int, int], int] = {}
    for t in system.triples:
        for pair in combinations(t, 2):
            cover[pair] = cover.get(pair, 0) + 1
    assert len(cover) == v * (v - 1) // 2
    assert set(cover.values()) == {1}


def test_seed_determinism():
    assert random_sts(15, seed=42) == random_sts(15, seed=42)
    assert random_sts(15, seed=42) != random_sts(15, seed=43)


def test_rejects_bad_orders():
    for v in (6, 8, 11, 5):
        with pytest.raises(ValueError):
            random_sts(v, seed=0)


def test_step_cap_raises_generation_error():
    with pytest.raises(GenerationError, match="steps"):
        random_sts(19, seed=0, max_steps=3)


def test_survey_order9_all_at_counting_bound():
    # The unique order-9 system is resolvable, so target m(9)=4 always works.
    result = colouring_survey(9, count=3, seed=5)
    assert result.counts == {"m": 3, "m+1": 0, "m+2": 0, "fail": 0}
    assert result.generator_failures == 0


def test_survey_order13_reaches_m_or_m_plus_one():
    # Both order-13 systems have chromatic index 7 or 8.
    result = colouring_survey(13, count=4, seed=2)
    assert result.counts["m"] + result.counts["m+1"] == 4
