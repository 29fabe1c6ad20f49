"""Seeded random instance generation for tests and the CLI."""
from __future__ import annotations

import random

from .core import ContractViolation, Instance


def _order_with_ties(
    rng: random.Random, partners: list[int], tie_prob: float
) -> list[tuple[int, ...]]:
    rng.shuffle(partners)
    ties: list[list[int]] = []
    for p in partners:
        if ties and rng.random() < tie_prob:
            ties[-1].append(p)
        else:
            ties.append([p])
    return [tuple(tie) for tie in ties]


def generate(
    n_men: int,
    n_women: int,
    max_list_len: int | None = None,
    tie_prob: float = 0.0,
    seed: int = 0,
) -> Instance:
    """A random instance with mutual acceptability by construction.

    Each man draws an acceptable set of up to `max_list_len` women (whole
    opposite side when None); women accept exactly the men who listed them.
    Both sides then shuffle their sets independently, and each successive
    partner joins the previous tie group with probability `tie_prob`, so
    tie_prob=0 gives strict lists.  Deterministic for a fixed seed.
    """
    if n_men < 0 or n_women < 0:
        raise ContractViolation("agent counts must be nonnegative")
    if not 0.0 <= tie_prob <= 1.0:
        raise ContractViolation("tie_prob must be within [0, 1]")
    if max_list_len is not None and max_list_len < 0:
        raise ContractViolation("max_list_len must be nonnegative")
    rng = random.Random(seed)
    cap = n_women if max_list_len is None else min(max_list_len, n_women)
    chosen: list[list[int]] = []
    by_woman: list[list[int]] = [[] for _ in range(n_women)]
    for i in range(n_men):
        size = rng.randint(0, cap) if cap else 0
        women = rng.sample(range(1, n_women + 1), size)
        chosen.append(women)
        for j in women:
            by_woman[j - 1].append(i + 1)
    men_prefs = [_order_with_ties(rng, ws, tie_prob) for ws in chosen]
    women_prefs = [_order_with_ties(rng, ms, tie_prob) for ms in by_woman]
    return Instance(men_prefs, women_prefs)


def generate_len1(n: int, seed: int = 0) -> Instance:
    """A random instance where every man lists at most one woman, the shape
    the linear-time solver takes.  Women rank their suitors, with ties."""
    rng = random.Random(seed)
    by_woman: list[list[int]] = [[] for _ in range(n)]
    men_prefs: list[list[tuple[int, ...]]] = []
    for i in range(n):
        if n and rng.random() < 0.9:
            j = rng.randint(1, n)
            men_prefs.append([(j,)])
            by_woman[j - 1].append(i + 1)
        else:
            men_prefs.append([])
    women_prefs = [_order_with_ties(rng, ms, 0.5) for ms in by_woman]
    return Instance(men_prefs, women_prefs)
