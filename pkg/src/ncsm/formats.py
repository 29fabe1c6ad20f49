"""Text formats: the line-oriented instance document and DIMACS CNF.

Instance documents look like

    # optional comments
    men 2
    women 2
    m 1: 1
    m 2: 1 2
    w 1: (1 2)
    w 2: 2

Entries are opposite-side indices in preference order, most preferred first;
parentheses group a tie.  An absent agent line means an empty list.  The
serializer always writes every agent line, so parse(serialize(x)) == x and
serializing a parsed canonical document reproduces it byte for byte.
"""
from __future__ import annotations

from .core import Instance
from .reduction import CnfFormula


class FormatError(ValueError):
    """Malformed document; `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _parse_entries(body: str, line_no: int) -> list[tuple[int, ...]]:
    tokens = body.replace("(", " ( ").replace(")", " ) ").split()
    ties: list[tuple[int, ...]] = []
    group: list[int] | None = None
    for tok in tokens:
        if tok == "(":
            if group is not None:
                raise FormatError("nested '(' in preference list", line_no)
            group = []
        elif tok == ")":
            if group is None:
                raise FormatError("')' without '('", line_no)
            if not group:
                raise FormatError("empty tie '()'", line_no)
            ties.append(tuple(group))
            group = None
        else:
            try:
                idx = int(tok)
            except ValueError:
                raise FormatError(f"expected an index, got {tok!r}", line_no) from None
            if idx < 1:
                raise FormatError(f"indices are 1-based, got {idx}", line_no)
            if group is not None:
                group.append(idx)
            else:
                ties.append((idx,))
    if group is not None:
        raise FormatError("unclosed '('", line_no)
    return ties


def parse_instance(text: str) -> Instance:
    """Parse an instance document; FormatError carries the offending line."""
    n_men: int | None = None
    n_women: int | None = None
    men_lines: dict[int, tuple[list[tuple[int, ...]], int]] = {}
    women_lines: dict[int, tuple[list[tuple[int, ...]], int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, body = line.partition(":")
        parts = head.split()
        if not body and len(parts) == 2 and parts[0] in ("men", "women"):
            try:
                count = int(parts[1])
            except ValueError:
                raise FormatError(f"bad count {parts[1]!r}", line_no) from None
            if count < 0:
                raise FormatError("negative agent count", line_no)
            if parts[0] == "men":
                if n_men is not None:
                    raise FormatError("duplicate 'men' header", line_no)
                n_men = count
            else:
                if n_women is not None:
                    raise FormatError("duplicate 'women' header", line_no)
                n_women = count
            continue
        if len(parts) == 2 and parts[0] in ("m", "w"):
            if n_men is None or n_women is None:
                raise FormatError("agent line before 'men'/'women' headers", line_no)
            try:
                idx = int(parts[1])
            except ValueError:
                raise FormatError(f"bad agent index {parts[1]!r}", line_no) from None
            side_n = n_men if parts[0] == "m" else n_women
            if not 1 <= idx <= side_n:
                raise FormatError(
                    f"{parts[0]} {idx} is out of range 1..{side_n}", line_no
                )
            store = men_lines if parts[0] == "m" else women_lines
            if idx in store:
                raise FormatError(f"duplicate list for {parts[0]} {idx}", line_no)
            store[idx] = (_parse_entries(body, line_no), line_no)
            continue
        raise FormatError(f"cannot parse {line!r}", line_no)
    if n_men is None or n_women is None:
        raise FormatError("missing 'men <n>' / 'women <n>' headers")

    def collect(
        store: dict[int, tuple[list[tuple[int, ...]], int]], n: int, other_n: int, who: str
    ) -> list[list[tuple[int, ...]]]:
        prefs: list[list[tuple[int, ...]]] = []
        for idx in range(1, n + 1):
            ties, line_no = store.get(idx, ([], 0))
            seen: set[int] = set()
            for tie in ties:
                for p in tie:
                    if p > other_n:
                        raise FormatError(
                            f"{who} {idx} lists partner {p}, out of range 1..{other_n}",
                            line_no,
                        )
                    if p in seen:
                        raise FormatError(
                            f"{who} {idx} lists partner {p} twice", line_no
                        )
                    seen.add(p)
            prefs.append(ties)
        return prefs

    men_prefs = collect(men_lines, n_men, n_women, "m")
    women_prefs = collect(women_lines, n_women, n_men, "w")

    # mutuality is reported with the line that names the one-sided partner
    women_sets = [set(p for tie in ties for p in tie) for ties in women_prefs]
    men_sets = [set(p for tie in ties for p in tie) for ties in men_prefs]
    for i in range(1, n_men + 1):
        line_no = men_lines.get(i, (None, 0))[1]
        for tie in men_prefs[i - 1]:
            for j in tie:
                if i not in women_sets[j - 1]:
                    raise FormatError(
                        f"m {i} lists w {j} but w {j} does not list m {i} back",
                        line_no,
                    )
    for j in range(1, n_women + 1):
        line_no = women_lines.get(j, (None, 0))[1]
        for tie in women_prefs[j - 1]:
            for i in tie:
                if j not in men_sets[i - 1]:
                    raise FormatError(
                        f"w {j} lists m {i} but m {i} does not list w {j} back",
                        line_no,
                    )
    return Instance(men_prefs, women_prefs)


def _entries_str(ties) -> str:
    parts = []
    for tie in ties:
        if len(tie) == 1:
            parts.append(str(tie[0]))
        else:
            parts.append("(" + " ".join(str(p) for p in tie) + ")")
    return " ".join(parts)


def serialize_instance(instance: Instance) -> str:
    lines = [f"men {instance.n_men}", f"women {instance.n_women}"]
    for i in range(1, instance.n_men + 1):
        entries = _entries_str(instance.man_list(i))
        lines.append(f"m {i}: {entries}".rstrip())
    for j in range(1, instance.n_women + 1):
        entries = _entries_str(instance.woman_list(j))
        lines.append(f"w {j}: {entries}".rstrip())
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF.  Clause sizes are pinned to 2 or 3 here because
    nothing downstream accepts anything else."""
    n_vars: int | None = None
    n_clauses: int | None = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if n_vars is not None:
                raise FormatError("duplicate problem line", line_no)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad problem line {line!r}", line_no)
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"bad problem line {line!r}", line_no) from None
            if n_vars < 0 or n_clauses < 0:
                raise FormatError("negative counts in problem line", line_no)
            continue
        if n_vars is None:
            raise FormatError("clause data before the problem line", line_no)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"expected a literal, got {tok!r}", line_no) from None
            if lit == 0:
                if len(current) not in (2, 3):
                    raise FormatError(
                        f"clause {len(clauses) + 1} has {len(current)} literals "
                        "(need 2 or 3)",
                        line_no,
                    )
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > n_vars:
                    raise FormatError(
                        f"literal {lit} exceeds declared variable count {n_vars}",
                        line_no,
                    )
                current.append(lit)
    if current:
        raise FormatError("last clause is not terminated by 0")
    if n_vars is None:
        raise FormatError("missing problem line")
    if n_clauses is not None and len(clauses) != n_clauses:
        raise FormatError(
            f"problem line declares {n_clauses} clauses, found {len(clauses)}"
        )
    return CnfFormula(n_vars, clauses)


def serialize_dimacs(cnf: CnfFormula) -> str:
    lines = [f"p cnf {cnf.n_vars} {len(cnf.clauses)}"]
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


__all__ = [
    "FormatError",
    "parse_instance",
    "serialize_instance",
    "parse_dimacs",
    "serialize_dimacs",
]
