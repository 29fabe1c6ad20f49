"""Reduction from restricted 3SAT to existence of a weak-stable noncrossing
matching, with converters for both proof directions.

Accepted formulas are in Tovey form: every clause has 2 or 3 literals and
every variable occurs at most three times, at most twice positively and at
most twice negatively.  Each variable becomes a ten-agent gadget whose two
internally stable layouts encode true/false; each clause becomes a gadget
that can only be stabilised by leaving one z-woman single, and that z-woman
stays quiet only if the variable gadget of the corresponding literal sits in
the satisfying layout.  A separator pair between the two blocks keeps
variable agents from reaching clause agents without crossing it.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import ContractViolation, Instance, Matching

# variable-gadget row of each occurrence kind: p_{i,row} carries the link
ROW_FIRST_NEG = 1
ROW_FIRST_POS = 2
ROW_SECOND_NEG = 3
ROW_SECOND_POS = 4

Name = tuple
Pair = tuple[int, int]


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula with 1-based variables; a literal is +v or -v."""

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __init__(self, n_vars: int, clauses):
        object.__setattr__(self, "n_vars", int(n_vars))
        object.__setattr__(
            self, "clauses", tuple(tuple(int(lit) for lit in c) for c in clauses)
        )


def _lit_str(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"-x{-lit}"


def validate_tovey(cnf: CnfFormula) -> list[str]:
    """Every restriction the construction relies on; empty list when fine.
    Duplicate literals are rejected, not deduplicated, because occurrence
    counting is ambiguous otherwise.  A tautological clause is fine."""
    problems: list[str] = []
    if cnf.n_vars < 0:
        problems.append("variable count is negative")
    pos: Counter[int] = Counter()
    neg: Counter[int] = Counter()
    for j0, clause in enumerate(cnf.clauses):
        cj = j0 + 1
        if len(clause) not in (2, 3):
            problems.append(f"clause {cj} has {len(clause)} literals (need 2 or 3)")
        seen: set[int] = set()
        for lit in clause:
            if lit == 0:
                problems.append(f"clause {cj} contains literal 0")
                continue
            v = abs(lit)
            if v > cnf.n_vars:
                problems.append(
                    f"clause {cj} mentions x{v} but only {cnf.n_vars} variables are declared"
                )
                continue
            if lit in seen:
                problems.append(f"clause {cj} repeats literal {_lit_str(lit)}")
                continue
            seen.add(lit)
            (pos if lit > 0 else neg)[v] += 1
    for v in range(1, cnf.n_vars + 1):
        p, g = pos[v], neg[v]
        if p + g > 3:
            problems.append(f"x{v} occurs {p + g} times (max 3)")
        if p > 2:
            problems.append(f"x{v} occurs positively {p} times (max 2)")
        if g > 2:
            problems.append(f"x{v} occurs negatively {g} times (max 2)")
    return problems


def _label(name: Name) -> str:
    if len(name) == 1:
        return name[0]
    if len(name) == 2:
        return f"{name[0]}{name[1]}"
    return f"{name[0]}{name[1]},{name[2]}"


@dataclass(frozen=True)
class GadgetPlan:
    """Bookkeeping tying a formula to its gadget instance.

    Agent names are tuples: ("p", i, row), ("a", i, 1|2), ("q", i, row),
    ("s",), ("t",), ("y", j) or ("y", j, k), ("z", j, k), ("v", j, k), and
    ("dummy", d) for padding.  Clause index j refers to the builder's order
    (2-clauses first); clause_order[j-1] is the 0-based original position.
    """

    cnf: CnfFormula
    clause_order: tuple[int, ...]
    occurrence_row: dict[tuple[int, int], int]  # (clause j, literal k) -> p-row
    occurrence_at: dict[tuple[int, int], tuple[int, int]]  # (var, p-row) -> (j, k)
    men_names: tuple[Name, ...]
    women_names: tuple[Name, ...]
    man_at: dict[Name, int]
    woman_at: dict[Name, int]
    var_matchings: dict[int, tuple[tuple[Pair, ...], tuple[Pair, ...]]]
    clause_matchings: dict[int, tuple[tuple[Pair, ...], ...]]
    men_unpadded: int
    women_unpadded: int
    instance: Instance

    @property
    def man_labels(self) -> tuple[str, ...]:
        return tuple(_label(n) for n in self.men_names)

    @property
    def woman_labels(self) -> tuple[str, ...]:
        return tuple(_label(n) for n in self.women_names)

    def new_clause_index(self, original_j0: int) -> int:
        """Builder-order 1-based index of the clause at 0-based original
        position."""
        return self.clause_order.index(original_j0) + 1


def build_gadget_instance(cnf: CnfFormula) -> tuple[Instance, GadgetPlan]:
    """Construct the gadget instance for a Tovey-form formula.

    Raises ContractViolation listing every restriction the formula breaks.
    The instance has 6n+m2+7m3+1 men and 4n+2m2+9m3+1 women before dummy
    padding equalises the sides.
    """
    problems = validate_tovey(cnf)
    if problems:
        raise ContractViolation(
            "formula is outside the restricted form: " + "; ".join(problems)
        )
    n = cnf.n_vars
    two = [j for j, c in enumerate(cnf.clauses) if len(c) == 2]
    three = [j for j, c in enumerate(cnf.clauses) if len(c) == 3]
    clause_order = tuple(two + three)
    clauses = tuple(cnf.clauses[j] for j in clause_order)

    occurrence_row: dict[tuple[int, int], int] = {}
    occurrence_at: dict[tuple[int, int], tuple[int, int]] = {}
    pos_seen = Counter()
    neg_seen = Counter()
    for j1, clause in enumerate(clauses, start=1):
        for k1, lit in enumerate(clause, start=1):
            v = abs(lit)
            if lit > 0:
                pos_seen[v] += 1
                row = ROW_FIRST_POS if pos_seen[v] == 1 else ROW_SECOND_POS
            else:
                neg_seen[v] += 1
                row = ROW_FIRST_NEG if neg_seen[v] == 1 else ROW_SECOND_NEG
            occurrence_row[(j1, k1)] = row
            occurrence_at[(abs(lit), row)] = (j1, k1)

    men_names: list[Name] = []
    women_names: list[Name] = []
    for i in range(1, n + 1):
        men_names += [
            ("p", i, 1), ("p", i, 3), ("a", i, 1), ("a", i, 2), ("p", i, 2), ("p", i, 4),
        ]
        women_names += [("q", i, 1), ("q", i, 3), ("q", i, 2), ("q", i, 4)]
    men_names.append(("s",))
    women_names.append(("t",))
    for j1, clause in enumerate(clauses, start=1):
        if len(clause) == 2:
            men_names.append(("y", j1))
            women_names += [("z", j1, 1), ("z", j1, 2)]
        else:
            men_names += [("y", j1, k) for k in range(1, 8)]
            women_names += [
                ("v", j1, 1), ("v", j1, 2), ("v", j1, 3),
                ("z", j1, 1), ("z", j1, 2),
                ("v", j1, 4), ("v", j1, 5), ("v", j1, 6),
                ("z", j1, 3),
            ]
    men_unpadded = len(men_names)
    women_unpadded = len(women_names)
    while len(women_names) < len(men_names):
        women_names.append(("dummy", len(women_names) - women_unpadded + 1))
    while len(men_names) < len(women_names):
        men_names.append(("dummy", len(men_names) - men_unpadded + 1))

    man_at = {name: idx for idx, name in enumerate(men_names, start=1)}
    woman_at = {name: idx for idx, name in enumerate(women_names, start=1)}

    men_prefs: list[list[tuple[int, ...]]] = [[] for _ in men_names]
    women_prefs: list[list[tuple[int, ...]]] = [[] for _ in women_names]

    def man_list(name: Name, ties: list[tuple[Name, ...]]) -> None:
        men_prefs[man_at[name] - 1] = [tuple(woman_at[w] for w in tie) for tie in ties]

    def woman_list(name: Name, ties: list[tuple[Name, ...]]) -> None:
        women_prefs[woman_at[name] - 1] = [tuple(man_at[m] for m in tie) for tie in ties]

    for i in range(1, n + 1):
        for row in (1, 2, 3, 4):
            prefs: list[tuple[Name, ...]] = [(("q", i, row),)]
            hit = occurrence_at.get((i, row))
            if hit is not None:
                prefs.append((("z", hit[0], hit[1]),))
            man_list(("p", i, row), prefs)
        man_list(("a", i, 1), [(("q", i, 1), ("q", i, 2))])
        man_list(("a", i, 2), [(("q", i, 3), ("q", i, 4))])
        woman_list(("q", i, 1), [(("a", i, 1),), (("p", i, 1),)])
        woman_list(("q", i, 2), [(("a", i, 1),), (("p", i, 2),)])
        woman_list(("q", i, 3), [(("a", i, 2),), (("p", i, 3),)])
        woman_list(("q", i, 4), [(("a", i, 2),), (("p", i, 4),)])
    man_list(("s",), [(("t",),)])
    woman_list(("t",), [(("s",),)])
    for j1, clause in enumerate(clauses, start=1):
        if len(clause) == 2:
            man_list(("y", j1), [(("z", j1, 1), ("z", j1, 2))])
            partner_y = {1: ("y", j1), 2: ("y", j1)}
        else:
            man_list(("y", j1, 1), [(("v", j1, 1), ("v", j1, 3))])
            man_list(("y", j1, 2), [(("v", j1, 2), ("z", j1, 1))])
            man_list(("y", j1, 3), [(("v", j1, 3), ("v", j1, 4))])
            man_list(("y", j1, 4), [(("z", j1, 2), ("v", j1, 5))])
            man_list(("y", j1, 5), [(("v", j1, 4), ("v", j1, 6))])
            man_list(("y", j1, 6), [(("v", j1, 5), ("z", j1, 3))])
            man_list(("y", j1, 7), [(("v", j1, 6),)])
            woman_list(("v", j1, 1), [(("y", j1, 1),)])
            woman_list(("v", j1, 2), [(("y", j1, 2),)])
            woman_list(("v", j1, 3), [(("y", j1, 1),), (("y", j1, 3),)])
            woman_list(("v", j1, 4), [(("y", j1, 5),), (("y", j1, 3),)])
            woman_list(("v", j1, 5), [(("y", j1, 6),), (("y", j1, 4),)])
            woman_list(("v", j1, 6), [(("y", j1, 5),), (("y", j1, 7),)])
            partner_y = {1: ("y", j1, 2), 2: ("y", j1, 4), 3: ("y", j1, 6)}
        for k1, lit in enumerate(clause, start=1):
            p_name = ("p", abs(lit), occurrence_row[(j1, k1)])
            woman_list(("z", j1, k1), [(partner_y[k1],), (p_name,)])

    var_matchings: dict[int, tuple[tuple[Pair, ...], tuple[Pair, ...]]] = {}
    for i in range(1, n + 1):
        layout_false = (
            (man_at[("p", i, 1)], woman_at[("q", i, 1)]),
            (man_at[("a", i, 1)], woman_at[("q", i, 2)]),
            (man_at[("p", i, 3)], woman_at[("q", i, 3)]),
            (man_at[("a", i, 2)], woman_at[("q", i, 4)]),
        )
        layout_true = (
            (man_at[("a", i, 1)], woman_at[("q", i, 1)]),
            (man_at[("p", i, 2)], woman_at[("q", i, 2)]),
            (man_at[("a", i, 2)], woman_at[("q", i, 3)]),
            (man_at[("p", i, 4)], woman_at[("q", i, 4)]),
        )
        var_matchings[i] = (tuple(sorted(layout_false)), tuple(sorted(layout_true)))

    clause_matchings: dict[int, tuple[tuple[Pair, ...], ...]] = {}
    for j1, clause in enumerate(clauses, start=1):
        if len(clause) == 2:
            clause_matchings[j1] = (
                ((man_at[("y", j1)], woman_at[("z", j1, 2)]),),
                ((man_at[("y", j1)], woman_at[("z", j1, 1)]),),
            )
        else:
            by_name = [
                # z_{j,k} is the one z left single in the k-th layout
                ((1, ("v", j1, 1)), (2, ("v", j1, 2)), (3, ("v", j1, 3)),
                 (4, ("z", j1, 2)), (5, ("v", j1, 6)), (6, ("z", j1, 3))),
                ((1, ("v", j1, 3)), (2, ("z", j1, 1)), (3, ("v", j1, 4)),
                 (4, ("v", j1, 5)), (5, ("v", j1, 6)), (6, ("z", j1, 3))),
                ((1, ("v", j1, 3)), (2, ("z", j1, 1)), (4, ("z", j1, 2)),
                 (5, ("v", j1, 4)), (6, ("v", j1, 5)), (7, ("v", j1, 6))),
            ]
            clause_matchings[j1] = tuple(
                tuple(sorted((man_at[("y", j1, yk)], woman_at[w]) for yk, w in layout))
                for layout in by_name
            )

    instance = Instance(men_prefs, women_prefs)
    plan = GadgetPlan(
        cnf=cnf,
        clause_order=clause_order,
        occurrence_row=occurrence_row,
        occurrence_at=occurrence_at,
        men_names=tuple(men_names),
        women_names=tuple(women_names),
        man_at=man_at,
        woman_at=woman_at,
        var_matchings=var_matchings,
        clause_matchings=clause_matchings,
        men_unpadded=men_unpadded,
        women_unpadded=women_unpadded,
        instance=instance,
    )
    return instance, plan


def _normalize_assignment(n_vars: int, assignment) -> tuple[bool, ...]:
    if isinstance(assignment, Mapping):
        missing = [i for i in range(1, n_vars + 1) if i not in assignment]
        if missing:
            raise ContractViolation(f"assignment is missing x{missing[0]}")
        return tuple(bool(assignment[i]) for i in range(1, n_vars + 1))
    values = tuple(bool(v) for v in assignment)
    if len(values) != n_vars:
        raise ContractViolation(
            f"assignment has {len(values)} values for {n_vars} variables"
        )
    return values


def _satisfied_positions(clause: tuple[int, ...], assign: tuple[bool, ...]) -> list[int]:
    return [
        k for k, lit in enumerate(clause, start=1) if assign[abs(lit) - 1] == (lit > 0)
    ]


def matching_from_assignment(
    plan: GadgetPlan,
    assignment,
    clause_witness: Sequence[int | None] | None = None,
) -> Matching:
    """The canonical matching a satisfying assignment induces: per variable
    the matching of its layout, per clause the layout that leaves the
    witness literal's z-woman single, plus the separator pair.

    `clause_witness`, aligned with the formula's original clause order,
    pins which satisfied literal each clause uses; None entries (or no
    witness at all) pick the first satisfied literal.
    """
    assign = _normalize_assignment(plan.cnf.n_vars, assignment)
    if clause_witness is not None and len(clause_witness) != len(plan.cnf.clauses):
        raise ContractViolation(
            f"witness has {len(clause_witness)} entries for {len(plan.cnf.clauses)} clauses"
        )
    pairs: list[Pair] = [(plan.man_at[("s",)], plan.woman_at[("t",)])]
    for i, flag in enumerate(assign, start=1):
        pairs.extend(plan.var_matchings[i][1 if flag else 0])
    for j0, orig_j0 in enumerate(plan.clause_order):
        clause = plan.cnf.clauses[orig_j0]
        satisfied = _satisfied_positions(clause, assign)
        if not satisfied:
            raise ContractViolation(
                f"assignment leaves clause {orig_j0 + 1} unsatisfied"
            )
        k = clause_witness[orig_j0] if clause_witness is not None else None
        if k is None:
            k = satisfied[0]
        elif k not in satisfied:
            raise ContractViolation(
                f"witness literal {k} of clause {orig_j0 + 1} is not satisfied"
            )
        pairs.extend(plan.clause_matchings[j0 + 1][k - 1])
    return Matching(plan.instance, pairs)


def assignment_from_matching(plan: GadgetPlan, matching: Matching) -> tuple[bool, ...]:
    """Read the assignment off a weak-stable noncrossing matching of the
    gadget instance: each variable gadget must hold one of its two canonical
    layouts, and the assignment they spell must satisfy the formula."""
    have = set(matching.pairs)
    values: list[bool] = []
    for i in range(1, plan.cnf.n_vars + 1):
        layout_false, layout_true = plan.var_matchings[i]
        if all(p in have for p in layout_false):
            values.append(False)
        elif all(p in have for p in layout_true):
            values.append(True)
        else:
            raise ContractViolation(
                f"variable gadget {i} holds neither canonical layout"
            )
    assign = tuple(values)
    for j0, clause in enumerate(plan.cnf.clauses):
        if not _satisfied_positions(clause, assign):
            raise ContractViolation(
                f"extracted assignment leaves clause {j0 + 1} unsatisfied"
            )
    return assign
