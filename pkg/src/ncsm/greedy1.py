"""Linear-time existence test when every man's list has at most one entry.

With lists that short, a noncrossing matching has no blocking pair at all
exactly when (a) every pair matches a woman to one of her first choices and
(b) every woman with at least one first choice is matched.  That reduces the
problem to threading a monotone chain through the first-choice graph, which a
single top-to-bottom greedy pass does optimally: give each woman the
lowest-numbered first choice that sits below every man already used.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import ContractViolation, Instance, Matching


@dataclass(frozen=True)
class FirstChoiceGraph:
    """For each woman, the men in her top tie (sorted), when she lists anyone."""

    choices_by_woman: tuple[tuple[int, ...], ...]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (i, j)
            for j, men in enumerate(self.choices_by_woman, start=1)
            for i in men
        )

    def degree(self, j: int) -> int:
        return len(self.choices_by_woman[j - 1])


def _check_len1(instance: Instance) -> None:
    for i, ties in enumerate(instance.men_prefs, start=1):
        if len(ties) > 1 or (ties and len(ties[0]) > 1):
            raise ContractViolation(
                f"man {i} lists more than one woman; this solver requires "
                "every man's list to have at most one entry"
            )


def build_first_choice_graph(instance: Instance) -> FirstChoiceGraph:
    """Edges (m, w) where m is in w's top tie.  Mutual acceptability makes
    every such pair usable directly."""
    _check_len1(instance)
    return FirstChoiceGraph(
        tuple(ties[0] if ties else () for ties in instance.women_prefs)
    )


def weak_ssnm_len1(instance: Instance) -> Matching | None:
    """A noncrossing matching with no blocking pair, or None if none exists.

    Women are scanned top to bottom; ties are stored sorted, so the first
    first-choice below the last used man is the smallest eligible one.  Runs
    in time linear in the total length of the preference lists.
    """
    _check_len1(instance)
    pairs: list[tuple[int, int]] = []
    last_man = 0
    for j, ties in enumerate(instance.women_prefs, start=1):
        if not ties:
            continue
        pick = 0
        for i in ties[0]:
            if i > last_man:
                pick = i
                break
        if pick == 0:
            return None
        pairs.append((pick, j))
        last_man = pick
    return Matching(instance, pairs)


def weak_ssnm_len1_women(instance: Instance) -> Matching | None:
    """Mirror case: every woman's list has at most one entry.  Solved by
    swapping the two lines, running the greedy, and swapping back."""
    flipped = weak_ssnm_len1(instance.transposed())
    if flipped is None:
        return None
    return Matching(instance, [(i, j) for j, i in flipped.pairs])
