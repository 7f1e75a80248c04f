"""Deterministic plain-text rendering of alignments, two styles.

Row form lays one pattern per text line with ``|`` connectors running
vertically through matched columns; column form lays one alignment
column per text line with ``-`` runs joining the patterns (one pattern
per text column) that share it.  The two carry the same information;
which reads better depends on the alignment's shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .alignment import Alignment
from .errors import WidthExceeded


class RenderStyle(Enum):
    ROW = "row"
    COLUMN = "column"


@dataclass(frozen=True)
class RenderOptions:
    style: RenderStyle = RenderStyle.ROW
    width: int = 160

    def __post_init__(self) -> None:
        if self.width < 20:
            raise ValueError("width must be at least 20")


def render(a: Alignment, opts: RenderOptions = RenderOptions()) -> str:
    if opts.style is RenderStyle.ROW:
        return render_row_form(a, opts.width)
    return render_column_form(a, opts.width)


def render_row_form(a: Alignment, width: int = 160) -> str:
    """One line per row, indices at both margins, ``|`` under matched symbols."""
    margin = len(str(len(a.rows) - 1))
    x: list[int] = []
    cursor = 0
    widths: list[int] = []
    for col in a.columns:
        w = len(a.column_symbol(col).name)
        x.append(cursor)
        widths.append(w)
        cursor += w + 1
    total = margin + 1 + max(cursor - 1, 0) + 1 + margin
    if total > width:
        raise WidthExceeded(f"row form needs {total} columns, page allows {width}")

    spans = []
    for col in a.columns:
        rows_here = [r for r, _ in col.entries]
        spans.append((min(rows_here), max(rows_here), len(col.entries) >= 2))

    body = margin + 1 + (cursor - 1 if cursor else 0)
    lines: list[str] = []
    for r in range(len(a.rows)):
        line = [" "] * body
        label = str(r).rjust(margin)
        line[:margin] = label
        for ci, col in enumerate(a.columns):
            here = next((p for rr, p in col.entries if rr == r), None)
            if here is not None:
                name = a.rows[r].symbols[here].name
                line[margin + 1 + x[ci] : margin + 1 + x[ci] + len(name)] = name
            else:
                lo, hi, matched = spans[ci]
                if matched and lo < r < hi:
                    line[margin + 1 + x[ci] + widths[ci] // 2] = "|"
        lines.append("".join(line).rstrip() + " " + label)
        if r + 1 < len(a.rows):
            conn = [" "] * body
            for ci in range(len(a.columns)):
                lo, hi, matched = spans[ci]
                if matched and lo <= r < hi:
                    conn[margin + 1 + x[ci] + widths[ci] // 2] = "|"
            lines.append("".join(conn).rstrip())
    return "\n".join(lines) + "\n"


def render_column_form(a: Alignment, width: int = 160) -> str:
    """One line per alignment column, ``-`` runs joining the sharing patterns."""
    gap = 3
    x: list[int] = []
    cursor = 0
    for r, row in enumerate(a.rows):
        w = max(len(s.name) for s in row.symbols)
        x.append(cursor)
        cursor += w + gap
    total = cursor - gap
    if total > width:
        raise WidthExceeded(f"column form needs {total} columns, page allows {width}")

    header = [" "] * total
    for r in range(len(a.rows)):
        label = str(r)
        header[x[r] : x[r] + len(label)] = label
    head = "".join(header).rstrip()

    lines = [head, ""]
    for col in a.columns:
        line = [" "] * total
        placed: list[tuple[int, int]] = []  # (start, end) of each symbol on the line
        for r, p in col.entries:
            name = a.rows[r].symbols[p].name
            line[x[r] : x[r] + len(name)] = name
            placed.append((x[r], x[r] + len(name)))
        placed.sort()
        for (_, prev_end), (nxt_start, _) in zip(placed, placed[1:]):
            for i in range(prev_end + 1, nxt_start - 1):
                line[i] = "-"
        lines.append("".join(line).rstrip())
    lines.append("")
    lines.append(head)
    return "\n".join(lines) + "\n"
