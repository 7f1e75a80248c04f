"""The alignment structure: rows of patterns, columns of matched occurrences.

Row 0 holds the input pattern when one is present; every other row
references a stored pattern (the same stored pattern may occupy several
rows).  Each column collects the (row, position) occurrences of one
symbol name; a column with two or more entries is a matched column.

Column order is a topological order of the constraints contributed by
the rows (each row's positions must appear left to right) plus the
merges; pairs of columns not ordered by any row are mutually free, and
``column_after_bits`` exposes exactly that partial order so that later
matching does not over-commit to one arbitrary interleaving.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .core import Origin, Pattern, Symbol
from .errors import NameConflict, OrderViolation, TwoNewRows, WrongOrigin


@dataclass(frozen=True)
class Column:
    """Occurrences of one symbol name, as (row index, position) pairs."""

    entries: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Provenance:
    """Which two structures were unified, and on which hits."""

    parent_a: int | None
    parent_b: int | None
    hits: tuple[tuple[int, int], ...]


@dataclass(eq=False)
class Alignment:
    """Rows and columns; immutable by convention once constructed.

    ``aid`` is assigned by the search (it doubles as the audit node id)
    and stays ``None`` for alignments built directly.
    """

    aid: int | None
    rows: tuple[Pattern, ...]
    columns: tuple[Column, ...]
    provenance: Provenance | None = None
    _after_bits: list[int] | None = field(default=None, repr=False)

    @property
    def has_new_row(self) -> bool:
        return any(r.origin is Origin.NEW for r in self.rows)

    def column_symbol(self, col: Column) -> Symbol:
        r, p = col.entries[0]
        return self.rows[r].symbols[p]

    def column_names(self) -> list[str]:
        return [self.column_symbol(c).name for c in self.columns]

    def structure_key(self):
        """Canonical key, insensitive to row order and free-column interleaving."""
        cols = sorted(
            tuple(sorted((self.rows[r].pid, p) for r, p in c.entries))
            for c in self.columns
        )
        return (tuple(sorted(p.pid for p in self.rows)), tuple(cols))


def leaf(pattern: Pattern, aid: int | None = None) -> Alignment:
    """Single-row alignment over one pattern, one column per symbol."""
    cols = tuple(Column(((0, i),)) for i in range(len(pattern.symbols)))
    return Alignment(aid, (pattern,), cols, None)


def from_pattern(new: Pattern, aid: int | None = None) -> Alignment:
    """Seed alignment holding only the input pattern."""
    if new.origin is not Origin.NEW:
        raise WrongOrigin("from_pattern requires an input pattern")
    return leaf(new, aid)


def flatten(a: Alignment) -> list[tuple[Symbol, int]]:
    """One symbol per column in column order, each with its source column index."""
    return [(a.column_symbol(c), i) for i, c in enumerate(a.columns)]


def unify(
    a: Alignment,
    b: Alignment,
    hits: tuple[tuple[int, int], ...] | list[tuple[int, int]],
    aid: int | None = None,
) -> Alignment:
    """Merge two alignments on a hit set into a child holding all rows of both.

    ``hits`` pairs column indices of ``a`` with column indices of ``b``
    and must be strictly increasing on the ``b`` side; on the ``a``
    side crossing pairs are tolerated only when the columns involved
    are mutually free, otherwise the forced cycle raises
    ``OrderViolation``.  ``b`` may not carry an input row (the
    input-bearing parent goes first), and both carrying one is an
    error.  Unmerged columns interleave deterministically with ``a``
    columns preferred when unordered.
    """
    if not hits:
        raise OrderViolation("unify requires at least one hit")
    if b.has_new_row:
        if a.has_new_row:
            raise TwoNewRows("both parents carry an input row")
        raise WrongOrigin("the input-bearing parent must be the first argument")

    hits = tuple(hits)
    prev_cb = -1
    for ca, cb in hits:
        if cb <= prev_cb:
            raise OrderViolation("hits must strictly increase on the second parent")
        prev_cb = cb
        if not 0 <= ca < len(a.columns) or not 0 <= cb < len(b.columns):
            raise OrderViolation("hit column index out of range")
        if a.column_symbol(a.columns[ca]).name != b.column_symbol(b.columns[cb]).name:
            raise NameConflict(
                f"cannot merge {a.column_symbol(a.columns[ca]).name!r} "
                f"with {b.column_symbol(b.columns[cb]).name!r}"
            )
    if len({ca for ca, _ in hits}) != len(hits):
        raise OrderViolation("hits may not reuse a column of the first parent")

    offset = len(a.rows)
    rows = a.rows + b.rows
    merge_of = dict(hits)

    entries: list[tuple[tuple[int, int], ...]] = []
    for ca, col in enumerate(a.columns):
        if ca in merge_of:
            extra = tuple((r + offset, p) for r, p in b.columns[merge_of[ca]].entries)
            entries.append(col.entries + extra)
        else:
            entries.append(col.entries)
    merged_cb = set(merge_of.values())
    b_col_to_child = {}
    for cb, col in enumerate(b.columns):
        if cb in merged_cb:
            continue
        b_col_to_child[cb] = len(entries)
        entries.append(tuple((r + offset, p) for r, p in col.entries))
    for ca, cb in hits:
        b_col_to_child[cb] = ca

    ordered = _topo_order(rows, entries)
    columns = tuple(Column(tuple(sorted(entries[i]))) for i in ordered)
    return Alignment(aid, rows, columns, Provenance(a.aid, b.aid, hits))


def _topo_order(rows: tuple[Pattern, ...], entries: list[tuple[tuple[int, int], ...]]) -> list[int]:
    # Constraint graph: consecutive positions of every row order their columns.
    n = len(entries)
    col_of: dict[tuple[int, int], int] = {}
    for i, ents in enumerate(entries):
        for rp in ents:
            col_of[rp] = i
    succs: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for r, row in enumerate(rows):
        prev = None
        for p in range(len(row.symbols)):
            i = col_of[(r, p)]
            if prev is not None and prev != i:
                succs[prev].append(i)
                indeg[i] += 1
            prev = i
    ready = [(min(entries[i]), i) for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        _, i = heapq.heappop(ready)
        order.append(i)
        for s in succs[i]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(ready, (min(entries[s]), s))
    if len(order) != n:
        raise OrderViolation("hits force a cycle in the column order")
    return order


def column_after_bits(a: Alignment) -> list[int]:
    """Per column, the bitmask of columns forced after it by some row.

    Cached on the alignment; columns are stored in topological order so
    a single reverse sweep closes the relation transitively.
    """
    if a._after_bits is not None:
        return a._after_bits
    n = len(a.columns)
    col_of: dict[tuple[int, int], int] = {}
    for i, col in enumerate(a.columns):
        for rp in col.entries:
            col_of[rp] = i
    succs: list[set[int]] = [set() for _ in range(n)]
    for r, row in enumerate(a.rows):
        prev = None
        for p in range(len(row.symbols)):
            i = col_of[(r, p)]
            if prev is not None and prev != i:
                succs[prev].add(i)
            prev = i
    bits = [0] * n
    for i in range(n - 1, -1, -1):
        m = 0
        for s in succs[i]:
            m |= (1 << s) | bits[s]
        bits[i] = m
    a._after_bits = bits
    return bits


def validate(a: Alignment) -> list[str]:
    """All invariant violations, empty when the alignment is well formed."""
    problems: list[str] = []
    if not a.rows:
        return ["EmptyAlignment: no rows"]
    for r, row in enumerate(a.rows):
        if row.origin is Origin.NEW and r != 0:
            problems.append(f"WrongOrigin: input row at index {r}")
    if sum(1 for row in a.rows if row.origin is Origin.NEW) > 1:
        problems.append("TwoNewRows: more than one input row")

    seen: dict[tuple[int, int], int] = {}
    last_pos = [-1] * len(a.rows)
    for ci, col in enumerate(a.columns):
        if not col.entries:
            problems.append(f"EmptyColumn: column {ci}")
            continue
        names = {a.rows[r].symbols[p].name for r, p in col.entries}
        if len(names) > 1:
            problems.append(f"NameConflict: column {ci} holds {sorted(names)}")
        for r, p in col.entries:
            if (r, p) in seen:
                problems.append(f"ProjectionGap: ({r},{p}) appears in columns {seen[(r, p)]} and {ci}")
            seen[(r, p)] = ci
            if p <= last_pos[r]:
                problems.append(f"ProjectionOrder: row {r} position {p} after {last_pos[r]}")
            last_pos[r] = p
    for r, row in enumerate(a.rows):
        missing = [p for p in range(len(row.symbols)) if (r, p) not in seen]
        if missing:
            problems.append(f"ProjectionGap: row {r} misses positions {missing}")
    return problems
