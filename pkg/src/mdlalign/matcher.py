"""Good full and partial matches between two symbol runs.

A match is a chain of name-equal (driver, target) pairs, strictly
increasing on the target side and order-consistent on the driver side.
Matches may skip freely over intervening symbols on both sides, which
is what lets a short run be recognised inside a longer one even when
its symbols are interwoven with other material.

The driver is either a plain sequence or the column layout of an
alignment.  In an alignment some column pairs are mutually unordered,
so order-consistency is expressed with per-token "must come after"
bitmasks and the same search serves both cases: for a sequence the mask
of token ``i`` is simply every index above ``i``.

The search is dynamic programming over the lattice of name-equal cells
with beam pruning: for each cell it keeps the ``beam`` best partial
chains, ranked by credit (the summed bit cost of matched symbols), then
by fewer gaps, then by pair order.  The single best chain is exact
because the top-ranked chain into each cell is never pruned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import CostTable, Symbol


@dataclass(frozen=True)
class HitSequence:
    """A chain of (driver index, target index) pairs and its matched-bit credit."""

    pairs: tuple[tuple[int, int], ...]
    credit: float


# A partial chain: (credit, gaps, pairs, member_bits, last_u, last_j).
_Path = tuple


def _rank(path: _Path):
    return (-path[0], path[1], path[2])


def sequence_after_bits(length: int) -> list[int]:
    """Order masks for a plain sequence: token i is followed by all i+1.."""
    full = (1 << length) - 1
    return [full ^ ((1 << (u + 1)) - 1) for u in range(length)]


def chain_matches(
    driver_names: Sequence[str],
    after_bits: Sequence[int],
    target: Sequence[Symbol],
    costs: CostTable,
    beam: int,
    max_results: int,
) -> list[HitSequence]:
    """k-best maximal chains of driver/target name matches.

    ``after_bits[u]`` is the bitmask of driver tokens that may only
    appear after token ``u``; a chain may append ``u`` only when none
    of its members is forced after ``u``.  Results are maximal (no cell
    can be inserted anywhere), mutually non-nested, and sorted by
    descending credit, then fewer gaps, then leftmost pairs.
    """
    if beam < 1 or max_results < 1:
        raise ValueError("beam and max_results must be positive")
    n = len(driver_names)
    if n == 0 or len(target) == 0:
        return []

    by_name: dict[str, list[int]] = {}
    for u, nm in enumerate(driver_names):
        by_name.setdefault(nm, []).append(u)
    cells = [by_name.get(sym.name, ()) for sym in target]

    pool: list[_Path] = []  # chains ending at target index < j, best first
    pending: list[_Path] = []  # chains ending at the current target index
    kept: list[_Path] = []

    for j, us in enumerate(cells):
        if pending:
            pool.extend(pending)
            pool.sort(key=_rank)
            pending = []
        if not us:
            continue
        sym_cost = costs.cost(target[j])
        for u in us:
            ubit = 1 << u
            forced_after_u = after_bits[u]
            cell_paths: list[_Path] = [(sym_cost, 0, ((u, j),), ubit, u, j)]
            taken = 0
            for credit, gaps, pairs, bits, lu, lj in pool:
                if bits & ubit or forced_after_u & bits:
                    continue
                cell_paths.append(
                    (
                        credit + sym_cost,
                        gaps + (j - lj - 1) + (u - lu - 1 if u > lu else 0),
                        pairs + ((u, j),),
                        bits | ubit,
                        u,
                        j,
                    )
                )
                taken += 1
                if taken >= beam:
                    break
            cell_paths.sort(key=_rank)
            del cell_paths[beam:]
            pending.extend(cell_paths)
            kept.extend(cell_paths)

    kept.sort(key=_rank)
    results: list[_Path] = []
    for path in kept:
        if len(results) >= max_results:
            break
        if not _is_maximal(path, cells, after_bits):
            continue
        pset = set(path[2])
        if any(pset <= set(acc[2]) for acc in results):
            continue
        results.append(path)
    return [HitSequence(p[2], p[0]) for p in results]


def _is_maximal(path: _Path, cells: Sequence[Sequence[int]], after_bits: Sequence[int]) -> bool:
    # Maximal: no name-equal cell can be inserted before, between, or
    # after the chain's pairs without breaking order-consistency.
    pairs = path[2]
    bits = path[3]
    used_js = {j for _, j in pairs}
    for j, us in enumerate(cells):
        if not us or j in used_js:
            continue
        before_bits = 0
        later_blocked = 0  # tokens that cannot precede some member after j
        for mu, mj in pairs:
            if mj < j:
                before_bits |= 1 << mu
            else:
                later_blocked |= after_bits[mu]
        for u in us:
            ubit = 1 << u
            if bits & ubit:
                continue
            if later_blocked & ubit:
                continue
            if after_bits[u] & before_bits:
                continue
            return False
    return True


def find_matches(
    driver: Sequence[Symbol],
    target: Sequence[Symbol],
    costs: CostTable,
    beam: int = 50,
    max_results: int = 8,
) -> list[HitSequence]:
    """Best full and partial matches between two plain symbol sequences.

    Returns up to ``max_results`` distinct maximal hit chains sorted by
    descending credit, ties broken by fewer gaps, then leftmost pairs.
    Either sequence being empty yields an empty list (not an error).
    """
    names = [s.name for s in driver]
    if not names:
        return []
    return chain_matches(names, sequence_after_bits(len(names)), target, costs, beam, max_results)
