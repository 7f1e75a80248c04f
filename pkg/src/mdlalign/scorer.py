"""Compression evaluation of alignments, and alignment probabilities.

An alignment earns credit for every column where two or more symbol
occurrences were brought into register, provided the column involves
the input row or at least one contents occurrence of a stored row:
matching input material, filling a slot with a stored pattern's
identifier, or sharing an attribute between two stored patterns all
count, but a pile of nothing-but-identifier occurrences explains
nothing and stays charged as residue.  The net saving ranks alignments
and drives the search; the residue also prices the alignment's
absolute probability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .alignment import Alignment
from .core import CostTable, Origin, Symbol


@dataclass(frozen=True)
class Score:
    """Bit accounting for one alignment.

    ``b_n`` totals the cost of the matched columns that account for
    something (each counted once); ``b_e`` totals the identifier
    occurrences of stored rows left unexplained; ``cd = b_n - b_e`` is
    the net saving; ``p_abs = 2**-b_e`` prices shorter residues as more
    probable.
    """

    b_n: float
    b_e: float
    cd: float
    p_abs: float


ZERO_SCORE = Score(0.0, 0.0, 0.0, 1.0)


def encoding_of(a: Alignment) -> list[Symbol]:
    """The shorthand the alignment assigns to its input row.

    Reading columns left to right: every service symbol of a stored row
    that is not matched by another stored row contributes; input-row
    symbols never appear.  For a fully resolved alignment this is the
    most economical way to write the input in terms of the stored
    patterns (the menu fixture's input, for example, comes back
    verbatim as its own code).
    """
    out: list[Symbol] = []
    for col in a.columns:
        old = [(r, p) for r, p in col.entries if a.rows[r].origin is Origin.OLD]
        if len(old) == 1:
            r, p = old[0]
            if p in a.rows[r].id_positions:
                out.append(a.rows[r].symbols[p])
    return out


def grounded_rows(a: Alignment) -> list[bool]:
    """Which rows are connected to the input through their matches.

    The input row is grounded.  A stored row is grounded when any of
    its occurrences shares a column with the input row, or when one of
    its contents occurrences shares a column with an occurrence of a
    grounded row.  A row merely cited by a slot above it, with nothing
    of its own matched, stays ungrounded: it explains no input.
    """
    rows = a.rows
    grounded = [row.origin is Origin.NEW for row in rows]
    multi = [col.entries for col in a.columns if len(col.entries) >= 2]
    changed = True
    while changed:
        changed = False
        for ents in multi:
            if not any(grounded[r] for r, _ in ents):
                continue
            has_new = any(rows[r].origin is Origin.NEW for r, _ in ents)
            for r, p in ents:
                if not grounded[r] and (has_new or p not in rows[r].id_positions):
                    grounded[r] = True
                    changed = True
    return grounded


def compression_difference(a: Alignment, costs: CostTable) -> Score:
    """Score an alignment; depends only on column membership, not interleaving.

    A matched column is credited once when it binds at least two
    occurrences of grounded rows (or the input) and holds a citing
    occurrence: input material or a grounded row's contents.  Each
    citing occurrence explains at most one identifier occurrence (a
    slot cites one filler); identifiers beyond that capacity, and every
    identifier of an ungrounded row, are charged as residue.
    """
    grounded = grounded_rows(a)
    b_n = 0.0
    b_e = 0.0
    for col in a.columns:
        bits = costs.cost(a.column_symbol(col))
        citing = 0
        live_ids = 0
        dead_ids = 0
        for r, p in col.entries:
            row = a.rows[r]
            if row.origin is Origin.NEW:
                citing += 1
            elif p in row.id_positions:
                if grounded[r]:
                    live_ids += 1
                else:
                    dead_ids += 1
            elif grounded[r]:
                citing += 1
        if citing and citing + live_ids >= 2:
            b_n += bits
        surplus = dead_ids + max(0, live_ids - citing)
        if surplus:
            b_e += bits * surplus
    return Score(b_n, b_e, b_n - b_e, 2.0 ** (-b_e))


def coverage(a: Alignment) -> frozenset[int]:
    """Input-row positions sitting in matched columns."""
    cov = set()
    for col in a.columns:
        if len(col.entries) < 2:
            continue
        for r, p in col.entries:
            if a.rows[r].origin is Origin.NEW:
                cov.add(p)
    return frozenset(cov)


def relative_probabilities(
    alts: Sequence[Alignment], costs: CostTable
) -> dict[int, float]:
    """Normalize absolute probabilities within groups of equal input coverage.

    Alignments explaining the same input positions compete; each
    group's relative probabilities sum to one.
    """
    if not alts:
        raise ValueError("relative_probabilities requires at least one alignment")
    groups: dict[frozenset[int], list[Alignment]] = {}
    for a in alts:
        if a.aid is None:
            raise ValueError("alignments must carry ids for probability grouping")
        groups.setdefault(coverage(a), []).append(a)
    out: dict[int, float] = {}
    for members in groups.values():
        p_abs = {m.aid: compression_difference(m, costs).p_abs for m in members}
        z = sum(p_abs.values())
        for aid, p in p_abs.items():
            out[aid] = p / z
    return out
