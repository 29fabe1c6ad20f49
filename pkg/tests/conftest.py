"""Shared fixtures and helpers for the test suite."""

import pytest

from ncsm import Instance, blocks


def tie_instance() -> Instance:
    """Two men after w1, who is indifferent between them; w2 only takes m2.

    Weakly stable matchings exist but no strongly or super strongly stable
    matching does, which makes this the go-to probe for the harder notions.
    """
    return Instance(
        men_prefs=[[(1,)], [(1,), (2,)]],
        women_prefs=[[(1, 2)], [(2,)]],
    )


def crossing_instance() -> Instance:
    """Each man wants only the opposite woman, so every full matching crosses."""
    return Instance(
        men_prefs=[[(2,)], [(1,)]],
        women_prefs=[[(2,)], [(1,)]],
    )


def complete_instance(n: int) -> Instance:
    """Complete strict lists where everyone ranks partners by index."""
    men = [[(j,) for j in range(1, n + 1)] for _ in range(n)]
    women = [[(i,) for i in range(1, n + 1)] for _ in range(n)]
    return Instance(men_prefs=men, women_prefs=women)


def is_stable(inst: Instance, notion: str, matching) -> bool:
    """No acceptable pair outside the matching blocks it."""
    for i, j in inst.acceptable_pairs():
        if matching.partner_of_man(i) == j:
            continue
        if blocks(inst, notion, matching, (i, j)):
            return False
    return True


@pytest.fixture
def no_strong_super_instance() -> Instance:
    return tie_instance()


@pytest.fixture
def crossing_only_instance() -> Instance:
    return crossing_instance()
