"""Existence of noncrossing matchings with no blocking pair at all.

The test is constructive: find any stable matching (crossings allowed), keep
its matched agents, and re-pair the k-th matched man with the k-th matched
woman counting from the top.  Because the set of matched agents is the same
in every stable matching for the notions handled here, the re-paired
candidate is the only noncrossing matching that could work; it answers the
question as soon as its pairs are acceptable and it is itself stable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .core import (
    ContractViolation,
    Instance,
    Matching,
    Notion,
    check_notion,
    classify,
)
from .oracle import DEFAULT_GUARD, SizeGuard, _guard_lifted, iter_stable_matchings

# exhaustive stable-matching fallback: refuse above these sizes unless told not to
FIND_STABLE_MAX_SIDE = 10
FIND_STABLE_MAX_PAIRS = 24


@dataclass(frozen=True)
class SsnmResult:
    """Outcome of the existence test.

    outcome 'found' carries the noncrossing stable matching; 'none' means
    stable matchings exist but the noncrossing candidate fails; outcome
    'no-stable-matching' means not even a crossing one exists.  `witness` is
    the stable matching the construction started from, when there is one.
    """

    outcome: Literal["found", "none", "no-stable-matching"]
    matching: Matching | None
    witness: Matching | None


def gale_shapley(instance: Instance) -> Matching:
    """Man-proposing deferred acceptance on strict lists.

    Deterministic: men propose in index order, each walking down his list.
    """
    if not instance.is_smi_kind:
        raise ContractViolation("gale_shapley requires strict lists (no ties)")
    next_try = [0] * (instance.n_men + 1)  # next list position man i proposes to
    held: dict[int, int] = {}  # woman -> man currently held
    free = list(range(instance.n_men, 0, -1))
    while free:
        i = free.pop()
        prefs = instance.men_prefs[i - 1]
        while next_try[i] < len(prefs):
            (j,) = prefs[next_try[i]]
            next_try[i] += 1
            cur = held.get(j)
            if cur is None:
                held[j] = i
                break
            if instance.women_rank[j - 1][i] < instance.women_rank[j - 1][cur]:
                held[j] = i
                free.append(cur)
                break
        # list exhausted: man stays single
    return Matching(instance, [(i, j) for j, i in held.items()])


def find_stable(
    instance: Instance,
    notion: Notion,
    *,
    allow_large: bool = False,
    guard: SizeGuard = DEFAULT_GUARD,
) -> Matching | None:
    """Some stable matching under `notion` (crossings allowed), or None.

    Strict lists use deferred acceptance directly.  For 'super' and 'strong'
    an exhaustive enumeration stands in; it is guarded to small inputs unless
    `allow_large` is set (a polynomial solver could be dropped in here).
    'weak' is rejected: the downstream construction is unsound for it.
    """
    check_notion(instance, notion)
    if notion == "weak":
        raise ContractViolation(
            "find_stable does not support 'weak': matched agents vary across "
            "weakly stable matchings, so the construction built on this would "
            "be unsound"
        )
    if notion == "smi-strict":
        return gale_shapley(instance)
    if allow_large:
        # caller accepts the cost; lift the enumeration guard as well
        guard = SizeGuard(10**9, 10**9, guard.max_noncrossing_pairs)
    elif not _guard_lifted():
        side = min(instance.n_men, instance.n_women)
        n_pairs = len(instance.acceptable_pairs())
        if side > FIND_STABLE_MAX_SIDE or n_pairs > FIND_STABLE_MAX_PAIRS:
            raise ContractViolation(
                f"instance too large for exhaustive finder ({side} agents on "
                f"the smaller side, {n_pairs} acceptable pairs; limit "
                f"{FIND_STABLE_MAX_SIDE}/{FIND_STABLE_MAX_PAIRS}); pass "
                "allow_large=True to force it"
            )
    return next(iter_stable_matchings(instance, notion, guard), None)


def exist_ssnm(
    instance: Instance,
    notion: Notion,
    *,
    allow_large: bool = False,
    guard: SizeGuard = DEFAULT_GUARD,
) -> SsnmResult:
    """Decide whether a noncrossing matching with no blocking pair exists.

    Supported notions: 'smi-strict', 'super', 'strong'.
    """
    check_notion(instance, notion)
    if notion == "weak":
        raise ContractViolation(
            "exist_ssnm does not support 'weak'; use max_wsnm for that notion"
        )
    witness = find_stable(instance, notion, allow_large=allow_large, guard=guard)
    if witness is None:
        return SsnmResult("no-stable-matching", None, None)
    men = sorted(i for i, _ in witness.pairs)
    women = sorted(j for _, j in witness.pairs)
    repaired = list(zip(men, women))
    if any(not instance.acceptable(i, j) for i, j in repaired):
        return SsnmResult("none", None, witness)
    candidate = Matching(instance, repaired)
    if classify(instance, notion, candidate) == "ssnm":
        return SsnmResult("found", candidate, witness)
    return SsnmResult("none", None, witness)


def rural_hospitals_check(
    instance: Instance, notion: Notion, guard: SizeGuard = DEFAULT_GUARD
) -> bool:
    """Whether every stable matching leaves the same agents matched.

    Checked by exhaustive enumeration; the construction above relies on this
    holding for 'smi-strict', 'super' and 'strong'.
    """
    check_notion(instance, notion)
    signature: tuple[frozenset[int], frozenset[int]] | None = None
    for m in iter_stable_matchings(instance, notion, guard):
        sig = (
            frozenset(i for i, _ in m.pairs),
            frozenset(j for _, j in m.pairs),
        )
        if signature is None:
            signature = sig
        elif sig != signature:
            return False
    return True
