"""Two-sided preference instances on a pair of vertical lines.

Men occupy one line and women the other, both numbered top to bottom from 1.
Preference lists are ordered sequences of ties; agents missing from a list are
unacceptable.  A matching drawn as straight segments between the lines is
noncrossing when no two segments intersect, which for pairs (i, j) and (x, y)
means (x - i) * (y - j) >= 0.

Four blocking notions are supported.  "smi-strict" is the classic strict-list
notion and is only defined on instances without ties; "super", "strong" and
"weak" generalise it to ties.  Being unmatched ranks strictly below every
acceptable partner under all notions.
"""
from __future__ import annotations

import math
from typing import Iterable, Literal, Sequence

Side = Literal["m", "w"]
Notion = Literal["smi-strict", "super", "strong", "weak"]

NOTIONS: tuple[Notion, ...] = ("smi-strict", "super", "strong", "weak")
TIE_NOTIONS: tuple[Notion, ...] = ("super", "strong", "weak")

_INF = math.inf


class ContractViolation(ValueError):
    """Raised when an operation is invoked outside its documented contract."""


def _normalize_prefs(
    prefs: Sequence[Iterable], side: str, n_other: int | None = None
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Turn user-supplied lists (ints or iterables of ints per tie) into
    canonical tuples of ties, each tie sorted ascending."""
    out = []
    for k, raw in enumerate(prefs, start=1):
        ties = []
        for entry in raw:
            if isinstance(entry, int):
                tie = (entry,)
            else:
                tie = tuple(sorted(entry))
            if not tie:
                raise ContractViolation(f"{side} {k} has an empty tie group")
            ties.append(tie)
        out.append(tuple(ties))
    return tuple(out)


def _rank_table(
    prefs: tuple[tuple[tuple[int, ...], ...], ...], side: str, n_other: int
) -> tuple[dict[int, int], ...]:
    """Map each listed partner to its tie position (0 = best).  Duplicates and
    out-of-range indices are rejected here, once, for the whole instance."""
    other = "woman" if side == "man" else "man"
    tables = []
    for k, ties in enumerate(prefs, start=1):
        rank: dict[int, int] = {}
        for pos, tie in enumerate(ties):
            for p in tie:
                if not 1 <= p <= n_other:
                    raise ContractViolation(
                        f"{side} {k} lists {other} {p}, outside 1..{n_other}"
                    )
                if p in rank:
                    raise ContractViolation(
                        f"{side} {k} lists {other} {p} more than once"
                    )
                rank[p] = pos
        tables.append(rank)
    return tuple(tables)


class Instance:
    """A two-sided preference instance with optional ties and incomplete lists.

    ``men_prefs[i-1]`` is man i's list as a tuple of ties; likewise for women.
    Acceptability must be mutual and is validated at construction.  Indices at
    every interface are 1-based; unmatched is represented by ``None``.
    """

    def __init__(self, men_prefs: Sequence[Iterable], women_prefs: Sequence[Iterable]):
        self.men_prefs = _normalize_prefs(men_prefs, "man")
        self.women_prefs = _normalize_prefs(women_prefs, "woman")
        self.n_men = len(self.men_prefs)
        self.n_women = len(self.women_prefs)
        self.men_rank = _rank_table(self.men_prefs, "man", self.n_women)
        self.women_rank = _rank_table(self.women_prefs, "woman", self.n_men)
        for i in range(1, self.n_men + 1):
            for j in self.men_rank[i - 1]:
                if i not in self.women_rank[j - 1]:
                    raise ContractViolation(
                        f"man {i} lists woman {j} but woman {j} does not list man {i}"
                    )
        for j in range(1, self.n_women + 1):
            for i in self.women_rank[j - 1]:
                if j not in self.men_rank[i - 1]:
                    raise ContractViolation(
                        f"woman {j} lists man {i} but man {i} does not list woman {j}"
                    )
        self._acceptable_pairs: tuple[tuple[int, int], ...] | None = None
        self._smi_kind: bool | None = None

    # -- accessors (1-based) --------------------------------------------

    def man_list(self, i: int) -> tuple[tuple[int, ...], ...]:
        return self.men_prefs[i - 1]

    def woman_list(self, j: int) -> tuple[tuple[int, ...], ...]:
        return self.women_prefs[j - 1]

    def man_rank_of(self, i: int, j: int) -> int | None:
        """Tie position of woman j in man i's list, or None if unacceptable."""
        return self.men_rank[i - 1].get(j)

    def woman_rank_of(self, j: int, i: int) -> int | None:
        return self.women_rank[j - 1].get(i)

    def acceptable(self, i: int, j: int) -> bool:
        return j in self.men_rank[i - 1]

    def acceptable_pairs(self) -> tuple[tuple[int, int], ...]:
        """All mutually acceptable (man, woman) pairs, sorted."""
        if self._acceptable_pairs is None:
            pairs = []
            for i, rank in enumerate(self.men_rank, start=1):
                for j in rank:
                    pairs.append((i, j))
            pairs.sort()
            self._acceptable_pairs = tuple(pairs)
        return self._acceptable_pairs

    @property
    def is_smi_kind(self) -> bool:
        """True when every tie on both sides has size one (strict lists)."""
        if self._smi_kind is None:
            self._smi_kind = all(
                len(tie) == 1 for prefs in (self.men_prefs, self.women_prefs)
                for ties in prefs for tie in ties
            )
        return self._smi_kind

    def transposed(self) -> "Instance":
        """The same instance with the roles of the two lines swapped."""
        return Instance(self.women_prefs, self.men_prefs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Instance)
            and self.men_prefs == other.men_prefs
            and self.women_prefs == other.women_prefs
        )

    def __repr__(self) -> str:
        return f"Instance(n_men={self.n_men}, n_women={self.n_women})"


class Matching:
    """A set of mutually acceptable (man, woman) pairs, no agent used twice.

    Pairs are kept sorted by man index.  Validation happens at construction
    against the owning instance.
    """

    def __init__(self, instance: Instance, pairs: Iterable[tuple[int, int]]):
        self.instance = instance
        pair_list = sorted(pairs)
        men_seen: dict[int, int] = {}
        women_seen: dict[int, int] = {}
        for i, j in pair_list:
            if instance.man_rank_of(i, j) is None:
                raise ContractViolation(f"pair (m{i}, w{j}) is not acceptable")
            if i in men_seen:
                raise ContractViolation(f"man {i} appears in two pairs")
            if j in women_seen:
                raise ContractViolation(f"woman {j} appears in two pairs")
            men_seen[i] = j
            women_seen[j] = i
        self.pairs: tuple[tuple[int, int], ...] = tuple(pair_list)
        self._man_partner = men_seen
        self._woman_partner = women_seen

    def partner_of_man(self, i: int) -> int | None:
        return self._man_partner.get(i)

    def partner_of_woman(self, j: int) -> int | None:
        return self._woman_partner.get(j)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def is_noncrossing(self) -> bool:
        # sorted by man index, so noncrossing iff woman indices increase too
        prev = 0
        for _, j in self.pairs:
            if j <= prev:
                return False
            prev = j
        return True

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self._man_partner.items()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __repr__(self) -> str:
        inner = ", ".join(f"(m{i}, w{j})" for i, j in self.pairs)
        return "Matching{" + inner + "}"


# -- preference comparison ----------------------------------------------


def check_notion(instance: Instance, notion: str) -> None:
    if notion not in NOTIONS:
        raise ContractViolation(f"unknown notion {notion!r}")
    if notion == "smi-strict" and not instance.is_smi_kind:
        raise ContractViolation(
            "notion 'smi-strict' requires strict lists; this instance has ties"
        )


def _rank_or_raise(instance: Instance, side: Side, viewer: int, who: int | None) -> float:
    """Rank of `who` in viewer's list; None (unmatched) ranks below everyone."""
    if who is None:
        return _INF
    if side == "m":
        r = instance.man_rank_of(viewer, who)
    else:
        r = instance.woman_rank_of(viewer, who)
    if r is None:
        raise ContractViolation(
            f"{'man' if side == 'm' else 'woman'} {viewer} is asked to rank "
            f"an unacceptable partner {who}"
        )
    return r


def compare(instance: Instance, side: Side, viewer: int, a: int | None, b: int | None) -> int:
    """Compare partners a and b from viewer's point of view.

    Returns +1 if viewer prefers a, 0 if indifferent, -1 if viewer prefers b.
    Either argument may be None, meaning "stay unmatched", which every agent
    ranks strictly below all acceptable partners.
    """
    ra = _rank_or_raise(instance, side, viewer, a)
    rb = _rank_or_raise(instance, side, viewer, b)
    if ra < rb:
        return 1
    if ra > rb:
        return -1
    return 0


def crosses(e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    """Whether the segments for two pairs cross strictly between the lines."""
    (i, j), (x, y) = e1, e2
    return (x - i) * (y - j) < 0


def _blocks_by_rank(notion: str, rm: float, rm_cur: float, rw: float, rw_cur: float) -> bool:
    """Blocking test from rank data: rm/rw rank the candidate in each agent's
    list, rm_cur/rw_cur rank the current partners (inf when unmatched)."""
    if notion == "super":
        return rm <= rm_cur and rw <= rw_cur
    if notion == "strong":
        return (rm <= rm_cur and rw < rw_cur) or (rm < rm_cur and rw <= rw_cur)
    # weak and smi-strict: both agents must strictly improve
    return rm < rm_cur and rw < rw_cur


def blocks(instance: Instance, notion: Notion, matching: Matching, candidate: tuple[int, int]) -> bool:
    """Whether `candidate` is a blocking pair of `matching` under `notion`.

    The candidate must be a mutually acceptable pair not already matched.
    """
    check_notion(instance, notion)
    i, j = candidate
    rm = instance.man_rank_of(i, j)
    if rm is None:
        raise ContractViolation(f"candidate (m{i}, w{j}) is not an acceptable pair")
    if matching.partner_of_man(i) == j:
        raise ContractViolation(f"candidate (m{i}, w{j}) is already in the matching")
    rw = instance.woman_rank_of(j, i)
    pm = matching.partner_of_man(i)
    pw = matching.partner_of_woman(j)
    rm_cur = _INF if pm is None else instance.man_rank_of(i, pm)
    rw_cur = _INF if pw is None else instance.woman_rank_of(j, pw)
    return _blocks_by_rank(notion, rm, rm_cur, rw, rw_cur)


def _partner_ranks(instance: Instance, matching: Matching) -> tuple[list[float], list[float]]:
    """Current-partner ranks per agent (index 0 unused), inf when unmatched."""
    men = [_INF] * (instance.n_men + 1)
    women = [_INF] * (instance.n_women + 1)
    for i, j in matching.pairs:
        men[i] = instance.man_rank_of(i, j)
        women[j] = instance.woman_rank_of(j, i)
    return men, women


def _chain_crosses(pairs: tuple[tuple[int, int], ...], i: int, j: int) -> bool:
    """Whether pair (i, j) crosses any pair of a matching's sorted pair list."""
    for x, y in pairs:
        if (x - i) * (y - j) < 0:
            return True
    return False


def noncrossing_blocking_pairs(
    instance: Instance, notion: Notion, matching: Matching
) -> set[tuple[int, int]]:
    """All blocking pairs of `matching` that cross none of its pairs."""
    check_notion(instance, notion)
    men_cur, women_cur = _partner_ranks(instance, matching)
    out: set[tuple[int, int]] = set()
    man_partner = matching._man_partner
    for i, j in instance.acceptable_pairs():
        if man_partner.get(i) == j:
            continue
        rm = instance.men_rank[i - 1][j]
        rw = instance.women_rank[j - 1][i]
        if _blocks_by_rank(notion, rm, men_cur[i], rw, women_cur[j]):
            if not _chain_crosses(matching.pairs, i, j):
                out.add((i, j))
    return out


def classify(instance: Instance, notion: Notion, matching: Matching) -> str:
    """Label a matching: 'not-noncrossing', 'unstable' (some noncrossing
    blocking pair), 'wsnm' (noncrossing, blocked only by crossing pairs) or
    'ssnm' (noncrossing with no blocking pair at all)."""
    check_notion(instance, notion)
    if not matching.is_noncrossing():
        return "not-noncrossing"
    men_cur, women_cur = _partner_ranks(instance, matching)
    man_partner = matching._man_partner
    any_block = False
    for i, j in instance.acceptable_pairs():
        if man_partner.get(i) == j:
            continue
        rm = instance.men_rank[i - 1][j]
        rw = instance.women_rank[j - 1][i]
        if _blocks_by_rank(notion, rm, men_cur[i], rw, women_cur[j]):
            if not _chain_crosses(matching.pairs, i, j):
                return "unstable"
            any_block = True
    return "wsnm" if any_block else "ssnm"
