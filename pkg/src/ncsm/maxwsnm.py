"""Maximum-cardinality noncrossing matchings free of noncrossing blocking pairs.

The solver augments the instance with a sentinel pair above row 1 and one
below the last row (each sentinel accepts only its opposite sentinel), then
fills a table over pairs: the best chain ending at an acceptable pair (i, j)
extends the best chain ending at some earlier pair (i', j') that does not
"conflict" with it.  Two chained pairs conflict when the final matching would
necessarily contain a noncrossing blocking pair between them, which decomposes
into four window conditions evaluated in O(1) from three precomputed tables:

  has_pair[i', i, j', j]    some acceptable pair inside the window
  best_woman[i, j', j]      man i's most preferred woman among rows j'..j
  best_man[j, i', i]        woman j's most preferred man among rows i'..i

best_woman/best_man fall back to NOBODY (-1), a stand-in ranked below every
listed partner, when the window holds nothing acceptable.  Chain sizes use 0
as the "impossible" tag; no arithmetic is ever done on the tag.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    ContractViolation,
    Instance,
    Matching,
    Notion,
    _blocks_by_rank,
    blocks,
    check_notion,
)
from .oracle import SizeGuardExceeded

NOBODY = -1  # window tables: nobody acceptable in the window
INF_RANK = 1 << 20  # rank stand-in for "unacceptable"; beyond any real rank

MAX_TABLE_SIDE = 180  # has_pair is (n+2)^4 bytes; 180 keeps it near 1 GiB
_VECTOR_MIN_SIDE = 16  # below this the plain Python dynamic program is faster
_PY_VIEW_MAX_SIDE = 44  # mirror tables into lists for scalar reads up to here


class AugmentedInstance:
    """An instance extended with sentinel rows 0 and n+1 on both lines.

    Augmented indices equal base indices; 0 and n_men+1 / n_women+1 are the
    sentinels, each listing only the other sentinel on the same end.  The
    augmented instance is materialised as a regular `Instance` whose agent k
    is augmented index k-1, available via `to_instance`.
    """

    def __init__(self, base: Instance):
        self.base = base
        self.n_men = base.n_men + 2  # augmented row counts, sentinels included
        self.n_women = base.n_women + 2
        self.top = (0, 0)
        self.bottom = (base.n_men + 1, base.n_women + 1)
        men = [[(1,)]]
        for ties in base.men_prefs:
            men.append([tuple(j + 1 for j in tie) for tie in ties])
        men.append([(self.n_women,)])
        women = [[(1,)]]
        for ties in base.women_prefs:
            women.append([tuple(i + 1 for i in tie) for tie in ties])
        women.append([(self.n_men,)])
        self._inner = Instance(men, women)

    def to_instance(self) -> Instance:
        """The augmented instance as a plain 1-based `Instance`."""
        return self._inner

    def acceptable(self, i: int, j: int) -> bool:
        return self._inner.acceptable(i + 1, j + 1)

    def man_rank(self, i: int, j: int) -> int | None:
        return self._inner.man_rank_of(i + 1, j + 1)

    def woman_rank(self, j: int, i: int) -> int | None:
        return self._inner.woman_rank_of(j + 1, i + 1)

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(acceptability, man ranks, woman ranks) as dense arrays; rank
        INF_RANK marks unacceptable entries."""
        nm, nw = self.n_men, self.n_women
        acc = np.zeros((nm, nw), dtype=bool)
        rank_m = np.full((nm, nw), INF_RANK, dtype=np.int32)
        rank_w = np.full((nw, nm), INF_RANK, dtype=np.int32)
        inner = self._inner
        for i in range(nm):
            for j1, r in inner.men_rank[i].items():
                acc[i, j1 - 1] = True
                rank_m[i, j1 - 1] = r
        for j in range(nw):
            for i1, r in inner.women_rank[j].items():
                rank_w[j, i1 - 1] = r
        return acc, rank_m, rank_w


def augment(instance: Instance) -> AugmentedInstance:
    return AugmentedInstance(instance)


@dataclass
class WindowTables:
    """Precomputed window data for the conflict test; see the module docstring."""

    aug: AugmentedInstance
    acc: np.ndarray  # bool (NM, NW)
    rank_m: np.ndarray  # int32 (NM, NW)
    rank_w: np.ndarray  # int32 (NW, NM)
    has_pair: np.ndarray  # uint8 (NM, NM, NW, NW), axes [i', i, j', j]
    best_woman_idx: np.ndarray  # int32 (NM, NW, NW), axes [i, lo, hi]; NOBODY for none
    best_woman_rank: np.ndarray  # int32, INF_RANK for NOBODY
    best_man_idx: np.ndarray  # int32 (NW, NM, NM), axes [j, lo, hi]
    best_man_rank: np.ndarray
    _py: tuple | None = field(default=None, repr=False)

    def _py_views(self) -> tuple | None:
        """Nested-list mirrors for fast scalar reads; None on large instances."""
        if self._py is None and max(self.aug.n_men, self.aug.n_women) <= _PY_VIEW_MAX_SIDE:
            self._py = (
                self.has_pair.tolist(),
                self.best_woman_rank.tolist(),
                self.best_man_rank.tolist(),
            )
        return self._py


def _window_min_table(rank: np.ndarray, width: int) -> tuple[np.ndarray, np.ndarray]:
    """For each agent row, the best (lowest) rank over every index window,
    ties to the smaller index.  Returns (index, rank) arrays [agent, lo, hi];
    windows with nothing acceptable (and empty windows lo > hi) give NOBODY."""
    rows, n = rank.shape
    assert n == width
    keys = rank.astype(np.int64) * n + np.arange(n, dtype=np.int64)[None, :]
    big = np.int64(INF_RANK) * n + n  # beyond every real or unacceptable key
    upper = np.triu(np.ones((n, n), dtype=bool))  # [lo, hi] valid when hi >= lo
    spread = np.where(upper[None, :, :], keys[:, None, :], big)
    best_key = np.minimum.accumulate(spread, axis=2)
    best_rank = np.minimum(best_key // n, INF_RANK).astype(np.int32)
    best_idx = (best_key % n).astype(np.int32)
    best_idx[best_rank >= INF_RANK] = NOBODY
    return best_idx, best_rank


def build_tables(aug: AugmentedInstance, *, max_table_side: int = MAX_TABLE_SIDE) -> WindowTables:
    """Fill the three window tables.  has_pair costs (n+2)^4 bytes, so sides
    beyond `max_table_side` are refused outright."""
    side = max(aug.base.n_men, aug.base.n_women)
    if side > max_table_side:
        raise SizeGuardExceeded(
            f"instance side {side} exceeds the table memory threshold "
            f"{max_table_side}: the window table alone would need "
            f"{(side + 2) ** 4 / 2**30:.1f} GiB"
        )
    acc, rank_m, rank_w = aug.matrices()
    nm, nw = aug.n_men, aug.n_women
    has_pair = np.zeros((nm, nm, nw, nw), dtype=np.uint8)
    for i in range(nm):
        for j in range(nw):
            dest = has_pair[: i + 1, i, : j + 1, j]
            if acc[i, j]:
                dest[:] = 1
            elif i and j:
                np.bitwise_or(
                    has_pair[: i + 1, i - 1, : j + 1, j],
                    has_pair[: i + 1, i, : j + 1, j - 1],
                    out=dest,
                )
            elif i:
                dest[:] = has_pair[: i + 1, i - 1, : j + 1, j]
            elif j:
                dest[:] = has_pair[: i + 1, i, : j + 1, j - 1]
            # i == j == 0 is the sentinel pair, always acceptable
    bw_idx, bw_rank = _window_min_table(rank_m, nw)
    bm_idx, bm_rank = _window_min_table(rank_w, nm)
    return WindowTables(
        aug=aug,
        acc=acc,
        rank_m=rank_m,
        rank_w=rank_w,
        has_pair=has_pair,
        best_woman_idx=bw_idx,
        best_woman_rank=bw_rank,
        best_man_idx=bm_idx,
        best_man_rank=bm_rank,
    )


def _validate_chain_pair(
    aug: AugmentedInstance, e_prev: tuple[int, int], e_next: tuple[int, int]
) -> None:
    (i2, j2), (i, j) = e_prev, e_next
    if not (0 <= i2 < i <= aug.bottom[0] and 0 <= j2 < j <= aug.bottom[1]):
        raise ContractViolation(
            f"chained pairs must strictly increase on both lines; got "
            f"{e_prev} before {e_next}"
        )
    for i0, j0 in (e_prev, e_next):
        if not aug.acceptable(i0, j0):
            raise ContractViolation(f"pair (m{i0}, w{j0}) is not acceptable")


def conflicting(
    tables: WindowTables, notion: Notion, e_prev: tuple[int, int], e_next: tuple[int, int]
) -> bool:
    """Whether two chained pairs force a noncrossing blocking pair between
    them, i.e. within the index window they span, under `notion`."""
    check_notion(tables.aug.base, notion)
    _validate_chain_pair(tables.aug, e_prev, e_next)
    return _conflicting_core(tables, notion, e_prev, e_next)


def _conflicting_core(
    tables: WindowTables, notion: Notion, e_prev: tuple[int, int], e_next: tuple[int, int]
) -> bool:
    (i2, j2), (i, j) = e_prev, e_next
    aug = tables.aug
    man_rank = aug.man_rank
    woman_rank = aug.woman_rank

    # condition A: one matched man and the other matched woman block each other
    rm_prev = man_rank(i2, j2)
    rm_next = man_rank(i, j)
    rw_prev = woman_rank(j2, i2)
    rw_next = woman_rank(j, i)
    r = man_rank(i2, j)
    if r is not None and _blocks_by_rank(notion, r, rm_prev, woman_rank(j, i2), rw_next):
        return True
    r = man_rank(i, j2)
    if r is not None and _blocks_by_rank(notion, r, rm_next, woman_rank(j2, i), rw_prev):
        return True

    lo_i, hi_i = i2 + 1, i - 1
    lo_j, hi_j = j2 + 1, j - 1
    pv = tables._py_views()
    if pv is not None:
        has_pair, bw_rank, bm_rank = pv
        inside = has_pair[lo_i][hi_i][lo_j][hi_j]
        a_next = bw_rank[i][lo_j][hi_j]
        a_prev = bw_rank[i2][lo_j][hi_j]
        b_next = bm_rank[j][lo_i][hi_i]
        b_prev = bm_rank[j2][lo_i][hi_i]
    else:
        inside = int(tables.has_pair[lo_i, hi_i, lo_j, hi_j])
        a_next = int(tables.best_woman_rank[i, lo_j, hi_j])
        a_prev = int(tables.best_woman_rank[i2, lo_j, hi_j])
        b_next = int(tables.best_man_rank[j, lo_i, hi_i])
        b_prev = int(tables.best_man_rank[j2, lo_i, hi_i])

    # condition B: two unmatched window agents form an acceptable pair
    if inside:
        return True

    # conditions C and D: a window agent tempts one of the four matched ones.
    # The window agent is unmatched, so it strictly gains; under notions where
    # a tie on the matched side still blocks, "prefers" relaxes to ranks <=.
    if notion in ("weak", "smi-strict"):
        return (
            a_next < rm_next or a_prev < rm_prev or b_next < rw_next or b_prev < rw_prev
        )
    return (
        a_next <= rm_next or a_prev <= rm_prev or b_next <= rw_next or b_prev <= rw_prev
    )


def conflicting_naive(
    aug: AugmentedInstance, notion: Notion, e_prev: tuple[int, int], e_next: tuple[int, int]
) -> bool:
    """Reference conflict test: materialise the two-pair matching and try
    every acceptable pair inside the spanned window as a blocking pair."""
    check_notion(aug.base, notion)
    _validate_chain_pair(aug, e_prev, e_next)
    (i2, j2), (i, j) = e_prev, e_next
    inner = aug.to_instance()
    two = Matching(inner, [(i2 + 1, j2 + 1), (i + 1, j + 1)])
    for s in range(i2, i + 1):
        for t in range(j2, j + 1):
            if (s, t) == e_prev or (s, t) == e_next:
                continue
            if not aug.acceptable(s, t):
                continue
            if blocks(inner, notion, two, (s + 1, t + 1)):
                return True
    return False


@dataclass
class DpState:
    """Filled solver state: chain sizes per pair (0 = impossible), the parent
    of each reachable pair, the recovered chain in augmented indices, and the
    window tables used."""

    sizes: np.ndarray
    parent: dict[tuple[int, int], tuple[int, int]]
    chain: tuple[tuple[int, int], ...]
    tables: WindowTables

    def size_at(self, i: int, j: int) -> int | None:
        v = int(self.sizes[i, j])
        return v if v > 0 else None


def _dp_scalar(tables: WindowTables, notion: Notion) -> tuple[np.ndarray, dict]:
    nm, nw = tables.aug.n_men, tables.aug.n_women
    acc = tables.acc.tolist()
    best_size = [[0] * nw for _ in range(nm)]
    best_size[0][0] = 1
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(1, nm):
        acc_row = acc[i]
        for j in range(1, nw):
            if not acc_row[j]:
                continue
            top = 0
            arg = None
            for i2 in range(i):
                row = best_size[i2]
                for j2 in range(j):
                    v = row[j2]
                    if v > top and not _conflicting_core(
                        tables, notion, (i2, j2), (i, j)
                    ):
                        top = v
                        arg = (i2, j2)
            if arg is not None:
                best_size[i][j] = top + 1
                parent[(i, j)] = arg
    return np.array(best_size, dtype=np.int64), parent


def _dp_vectorized(tables: WindowTables, notion: Notion) -> tuple[np.ndarray, dict]:
    nm, nw = tables.aug.n_men, tables.aug.n_women
    acc = tables.acc
    rank_m = tables.rank_m
    rank_w = tables.rank_w
    has_pair = tables.has_pair
    bw_rank = tables.best_woman_rank
    bm_rank = tables.best_man_rank
    strict = notion in ("weak", "smi-strict")
    sizes = np.zeros((nm, nw), dtype=np.int64)
    sizes[0, 0] = 1
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(1, nm):
        rm_i = rank_m[i]
        for j in range(1, nw):
            if not acc[i, j]:
                continue
            cand = sizes[:i, :j]
            ok = cand > 0
            if not ok.any():
                continue
            # condition A for (m_i2, w_j) and (m_i, w_j2)
            ra = rank_m[:i, j][:, None]
            rb = rank_m[:i, :j]
            wa = rank_w[j, :i][:, None]
            wb = int(rank_w[j, i])
            rc = rm_i[:j][None, :]
            rd = int(rm_i[j])
            wc = rank_w[:j, i][None, :]
            wd = rank_w[:j, :i].T
            if notion == "super":
                conflict = ((ra <= rb) & (wa <= wb)) | ((rc <= rd) & (wc <= wd))
            elif notion == "strong":
                conflict = (
                    ((ra <= rb) & (wa < wb))
                    | ((ra < rb) & (wa <= wb))
                    | ((rc <= rd) & (wc < wd))
                    | ((rc < rd) & (wc <= wd))
                )
            else:
                conflict = ((ra < rb) & (wa < wb)) | ((rc < rd) & (wc < wd))
            # condition B: acceptable pair strictly inside the window
            conflict |= has_pair[1 : i + 1, i - 1, 1 : j + 1, j - 1].astype(bool)
            # conditions C and D: best window woman / man temptations
            arow_next = bw_rank[i, 1 : j + 1, j - 1][None, :]
            arow_prev = bw_rank[:i, 1 : j + 1, j - 1]
            brow_next = bm_rank[j, 1 : i + 1, i - 1][:, None]
            brow_prev = bm_rank[:j, 1 : i + 1, i - 1].T
            if strict:
                conflict |= (
                    (arow_next < rd) | (arow_prev < rb) | (brow_next < wb) | (brow_prev < wd)
                )
            else:
                conflict |= (
                    (arow_next <= rd) | (arow_prev <= rb) | (brow_next <= wb) | (brow_prev <= wd)
                )
            ok &= ~conflict
            if not ok.any():
                continue
            masked = np.where(ok, cand, 0)
            flat = int(masked.argmax())
            v = int(masked.flat[flat])
            if v > 0:
                sizes[i, j] = v + 1
                parent[(i, j)] = (flat // j, flat % j)
    return sizes, parent


def max_wsnm_detailed(
    instance: Instance,
    notion: Notion,
    *,
    method: str = "auto",
    max_table_side: int = MAX_TABLE_SIDE,
) -> tuple[tuple[int, Matching] | None, DpState]:
    """Like `max_wsnm`, also returning the solver state for inspection."""
    check_notion(instance, notion)
    aug = augment(instance)
    tables = build_tables(aug, max_table_side=max_table_side)
    if method == "auto":
        method = (
            "vectorized" if max(instance.n_men, instance.n_women) >= _VECTOR_MIN_SIDE
            else "scalar"
        )
    if method == "scalar":
        sizes, parent = _dp_scalar(tables, notion)
    elif method == "vectorized":
        sizes, parent = _dp_vectorized(tables, notion)
    else:
        raise ContractViolation(f"unknown method {method!r}")
    goal = (aug.n_men - 1, aug.n_women - 1)
    if sizes[goal] == 0:
        return None, DpState(sizes, parent, (), tables)
    chain: list[tuple[int, int]] = []
    node: tuple[int, int] | None = goal
    while node is not None:
        chain.append(node)
        node = parent.get(node)
    chain.reverse()
    pairs = [(i, j) for i, j in chain if (i, j) != (0, 0) and (i, j) != goal]
    matching = Matching(instance, pairs)
    size = int(sizes[goal]) - 2
    assert size == len(pairs)
    return (size, matching), DpState(sizes, parent, tuple(chain), tables)


def max_wsnm(
    instance: Instance,
    notion: Notion,
    *,
    method: str = "auto",
    max_table_side: int = MAX_TABLE_SIDE,
) -> tuple[int, Matching] | None:
    """A maximum-cardinality noncrossing matching whose blocking pairs, if
    any, all cross it; None when no noncrossing matching achieves that
    (possible only under 'super' and 'strong')."""
    result, _ = max_wsnm_detailed(
        instance, notion, method=method, max_table_side=max_table_side
    )
    return result
