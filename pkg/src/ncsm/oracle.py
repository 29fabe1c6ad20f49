"""Exhaustive reference solvers used to cross-check the fast algorithms.

These are deliberately simple: enumerate candidate matchings and filter them
with the definitions from `core`.  Size guards keep accidental huge inputs
from hanging a test run; set NCSM_GUARD_OVERRIDE=1 to lift them.

`brute_exist_ssnm` additionally offers a pruned depth-first search that gives
the same answer as plain enumerate-and-filter but scales to the sparse,
medium-sized instances produced by the formula reduction.  The two methods
are cross-checked against each other in the test suite.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator

from .core import (
    ContractViolation,
    Instance,
    Matching,
    Notion,
    _blocks_by_rank,
    _chain_crosses,
    _partner_ranks,
    check_notion,
    classify,
)

_INF = math.inf


class SizeGuardExceeded(RuntimeError):
    """An oracle refused an input larger than its guard allows."""


@dataclass(frozen=True)
class SizeGuard:
    """Input-size limits for the exhaustive solvers.

    max_agents and max_acceptable_pairs bound all-matchings enumeration.
    Noncrossing enumeration only follows monotone chains, so it tolerates
    more pairs; max_noncrossing_pairs bounds that mode.
    """

    max_agents: int = 14
    max_acceptable_pairs: int = 24
    max_noncrossing_pairs: int = 220


DEFAULT_GUARD = SizeGuard()


def _guard_lifted() -> bool:
    return os.environ.get("NCSM_GUARD_OVERRIDE", "") not in ("", "0")


def _check_noncrossing_guard(instance: Instance, guard: SizeGuard) -> None:
    if _guard_lifted():
        return
    n_pairs = len(instance.acceptable_pairs())
    if n_pairs > guard.max_noncrossing_pairs:
        raise SizeGuardExceeded(
            f"instance has {n_pairs} acceptable pairs; noncrossing enumeration "
            f"is guarded at {guard.max_noncrossing_pairs} "
            "(set NCSM_GUARD_OVERRIDE=1 to lift)"
        )


def _check_all_matchings_guard(instance: Instance, guard: SizeGuard) -> None:
    if _guard_lifted():
        return
    agents = max(instance.n_men, instance.n_women)
    n_pairs = len(instance.acceptable_pairs())
    if agents > guard.max_agents or n_pairs > guard.max_acceptable_pairs:
        raise SizeGuardExceeded(
            f"instance has {agents} agents per side and {n_pairs} acceptable "
            f"pairs; all-matchings enumeration is guarded at "
            f"{guard.max_agents} agents / {guard.max_acceptable_pairs} pairs "
            "(set NCSM_GUARD_OVERRIDE=1 to lift)"
        )


def enumerate_noncrossing_matchings(
    instance: Instance, guard: SizeGuard = DEFAULT_GUARD
) -> Iterator[Matching]:
    """Yield every noncrossing matching, in lexicographic order of the sorted
    pair list (the empty matching first)."""
    _check_noncrossing_guard(instance, guard)
    pairs = instance.acceptable_pairs()
    n = len(pairs)
    chain: list[tuple[int, int]] = []

    def extend(start: int, last_i: int, last_j: int) -> Iterator[Matching]:
        for k in range(start, n):
            i, j = pairs[k]
            if i > last_i and j > last_j:
                chain.append((i, j))
                yield Matching(instance, chain)
                yield from extend(k + 1, i, j)
                chain.pop()

    yield Matching(instance, [])
    yield from extend(0, 0, 0)


def _iter_matchings(instance: Instance, guard: SizeGuard) -> Iterator[Matching]:
    """Yield every matching (crossings allowed), the empty one first."""
    _check_all_matchings_guard(instance, guard)
    pairs = instance.acceptable_pairs()
    n = len(pairs)
    chain: list[tuple[int, int]] = []
    used_men: set[int] = set()
    used_women: set[int] = set()

    def extend(start: int) -> Iterator[Matching]:
        for k in range(start, n):
            i, j = pairs[k]
            if i in used_men or j in used_women:
                continue
            chain.append((i, j))
            used_men.add(i)
            used_women.add(j)
            yield Matching(instance, chain)
            yield from extend(k + 1)
            chain.pop()
            used_men.discard(i)
            used_women.discard(j)

    yield Matching(instance, [])
    yield from extend(0)


def _is_stable(instance: Instance, notion: Notion, matching: Matching) -> bool:
    men_cur, women_cur = _partner_ranks(instance, matching)
    man_partner = matching._man_partner
    for i, j in instance.acceptable_pairs():
        if man_partner.get(i) == j:
            continue
        rm = instance.men_rank[i - 1][j]
        rw = instance.women_rank[j - 1][i]
        if _blocks_by_rank(notion, rm, men_cur[i], rw, women_cur[j]):
            return False
    return True


def iter_stable_matchings(
    instance: Instance, notion: Notion, guard: SizeGuard = DEFAULT_GUARD
) -> Iterator[Matching]:
    """Yield every stable matching (crossings allowed) under `notion`."""
    check_notion(instance, notion)
    for m in _iter_matchings(instance, guard):
        if _is_stable(instance, notion, m):
            yield m


def brute_all_stable(
    instance: Instance, notion: Notion, guard: SizeGuard = DEFAULT_GUARD
) -> list[Matching]:
    """All stable matchings, in enumeration order."""
    return list(iter_stable_matchings(instance, notion, guard))


def brute_max_wsnm(
    instance: Instance, notion: Notion, guard: SizeGuard = DEFAULT_GUARD
) -> tuple[int, Matching] | None:
    """Largest noncrossing matching with no noncrossing blocking pair, found
    by enumeration; None when every noncrossing matching is blocked."""
    check_notion(instance, notion)
    best: tuple[int, Matching] | None = None
    acceptable = instance.acceptable_pairs()
    men_rank = instance.men_rank
    women_rank = instance.women_rank
    for m in enumerate_noncrossing_matchings(instance, guard):
        men_cur, women_cur = _partner_ranks(instance, m)
        man_partner = m._man_partner
        blocked = False
        for i, j in acceptable:
            if man_partner.get(i) == j:
                continue
            if _blocks_by_rank(
                notion, men_rank[i - 1][j], men_cur[i], women_rank[j - 1][i], women_cur[j]
            ) and not _chain_crosses(m.pairs, i, j):
                blocked = True
                break
        if not blocked and (best is None or m.size > best[0]):
            best = (m.size, m)
    return best


def brute_exist_ssnm(
    instance: Instance,
    notion: Notion,
    guard: SizeGuard = DEFAULT_GUARD,
    method: str = "auto",
) -> Matching | None:
    """Some noncrossing matching with no blocking pair at all, or None.

    method 'filter' enumerates every noncrossing matching and classifies it;
    'search' runs a pruned depth-first search over chains that gives the same
    answer but handles larger sparse instances; 'auto' picks by input size.
    """
    check_notion(instance, notion)
    if method == "auto":
        method = (
            "filter"
            if len(instance.acceptable_pairs()) <= guard.max_acceptable_pairs
            else "search"
        )
    if method == "filter":
        for m in enumerate_noncrossing_matchings(instance, guard):
            if classify(instance, notion, m) == "ssnm":
                return m
        return None
    if method == "search":
        return _search_ssnm(instance, notion, guard)
    raise ContractViolation(f"unknown method {method!r}")


def _search_ssnm(
    instance: Instance, notion: Notion, guard: SizeGuard
) -> Matching | None:
    """Depth-first search for a noncrossing matching with no blocking pair.

    Chains grow top to bottom, so once the frontier passes man i and woman j
    the partners of everyone above are final.  A blocking pair lying entirely
    in that settled region can never be repaired by later additions, and no
    later addition can introduce one there either, so each branch is checked
    region by region: every acceptable pair is inspected exactly once per
    root-to-leaf path, at the step where the frontier first passes it.
    """
    _check_noncrossing_guard(instance, guard)
    pairs = instance.acceptable_pairs()
    n = len(pairs)
    men_rank = instance.men_rank
    women_rank = instance.women_rank
    big = instance.n_men + instance.n_women + 2
    man_cur: dict[int, int] = {}
    woman_cur: dict[int, int] = {}
    on_chain: set[tuple[int, int]] = set()
    chain: list[tuple[int, int]] = []

    def region_blocked(lo_i: int, lo_j: int, hi_i: int, hi_j: int) -> bool:
        """Any blocking pair (s, t) with s < hi_i, t < hi_j, outside the part
        cleared earlier (s < lo_i and t < lo_j)?  Partners in this region are
        final, so a hit here is permanent."""
        for s, t in pairs:
            if s >= hi_i:
                break
            if t >= hi_j or (s < lo_i and t < lo_j) or (s, t) in on_chain:
                continue
            if _blocks_by_rank(
                notion,
                men_rank[s - 1][t],
                man_cur.get(s, _INF),
                women_rank[t - 1][s],
                woman_cur.get(t, _INF),
            ):
                return True
        return False

    def dfs(start: int, last_i: int, last_j: int) -> Matching | None:
        if not region_blocked(last_i, last_j, big, big):
            return Matching(instance, chain)
        for k in range(start, n):
            i, j = pairs[k]
            if i <= last_i or j <= last_j:
                continue
            if region_blocked(last_i, last_j, i, j):
                continue
            chain.append((i, j))
            on_chain.add((i, j))
            man_cur[i] = men_rank[i - 1][j]
            woman_cur[j] = women_rank[j - 1][i]
            found = dfs(k + 1, i, j)
            del man_cur[i]
            del woman_cur[j]
            on_chain.discard((i, j))
            chain.pop()
            if found is not None:
                return found
        return None

    return dfs(0, 0, 0)
