"""Iterative alignment building: match, score, select the best, unify, repeat.

Cycle 0 pairs the input seed with every stored pattern and admits every
structurally novel child so the search can get off the ground even when
a lone pairing is not yet a net saving (deep part-whole structures only
pay off once their housing patterns arrive).  From cycle 1 onward a
child is admitted only when its net saving strictly exceeds its
alignment parent's, which both directs the search uphill and guarantees
termination together with the cycle cap.  The pool is pruned to the
beam after every cycle, and every candidate ever scored lands in the
audit trail with its fate.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .alignment import Alignment, column_after_bits, from_pattern, leaf, unify
from .audit import (
    FATE_PRUNED,
    FATE_RETAINED,
    KIND_ALIGNMENT,
    KIND_PATTERN,
    AuditTrail,
    rejected,
)
from .core import CostMode, CostTable, Grammar, Origin, Pattern, symbol_costs
from .errors import EmptyGrammar, TrailFull
from .matcher import chain_matches
from .scorer import ZERO_SCORE, Score, compression_difference


@dataclass(frozen=True)
class SearchConfig:
    """Heuristic knobs; all bounds strictly positive."""

    beam_width: int = 20
    max_cycles: int = 12
    matcher_beam: int = 50
    matches_per_pair: int = 8
    cost_mode: CostMode = CostMode.UNIFORM
    jobs: int = 1

    def __post_init__(self) -> None:
        for name in ("beam_width", "max_cycles", "matcher_beam", "matches_per_pair", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")


def _is_echo(a: Alignment, pattern: Pattern, ca: int, j: int) -> bool:
    # A hit that lands a pattern occurrence on a column already holding
    # the same pattern at the same position adds nothing; admitting it
    # would let duplicate rows shadow existing ones.
    return any(
        p == j and a.rows[r].pid == pattern.pid for r, p in a.columns[ca].entries
    )


def _is_dead(a: Alignment, pattern: Pattern, ca: int, j: int) -> bool:
    # An identifier of the incoming pattern must be cited by input
    # material or by a contents occurrence (a slot) to explain anything,
    # and every citing occurrence explains at most one identifier.
    # Hits into columns with no spare capacity are dead weight that
    # would tie with the clean structure and pollute it.
    if j not in pattern.id_positions:
        return False
    citing = 0
    ids = 0
    for r, p in a.columns[ca].entries:
        row = a.rows[r]
        if row.origin is Origin.NEW or p not in row.id_positions:
            citing += 1
        else:
            ids += 1
    return ids >= citing


def build_alignments(
    new: Pattern,
    grammar: Grammar,
    config: SearchConfig,
    trail: AuditTrail,
    costs: CostTable | None = None,
) -> list[Alignment]:
    """Build and rank alignments of ``new`` against the grammar.

    Returns the final pool sorted by descending net saving (ties: lower
    residue, then lower id).  The trail receives one leaf node per
    pattern up front and one node per scored candidate; fates are
    finalized before returning.  Scores of returned alignments can be
    recomputed with ``compression_difference`` or read off the trail.
    """
    if not grammar.patterns:
        raise EmptyGrammar("cannot search an empty grammar")
    if costs is None:
        costs = symbol_costs(grammar, config.cost_mode)

    seed_nid = trail.record(KIND_PATTERN, cycle=-1)
    seed = from_pattern(new, aid=seed_nid)
    leaf_nid: dict[int, int] = {}
    old_leaves: list[Alignment] = []
    for p in grammar.patterns:
        nid = trail.record(KIND_PATTERN, cycle=-1)
        leaf_nid[p.pid] = nid
        old_leaves.append(leaf(p, aid=nid))

    pool: list[tuple[Alignment, Score]] = [(seed, ZERO_SCORE)]
    scores: dict[int, Score] = {seed_nid: ZERO_SCORE}
    seen_structures = {seed.structure_key()}
    expanded: set[int] = set()

    try:
        for cycle in range(config.max_cycles):
            frontier = [(a, s) for a, s in pool if a.aid not in expanded]
            for a, _ in frontier:
                expanded.add(a.aid)
            admitted = _run_cycle(
                cycle, frontier, grammar, old_leaves, leaf_nid, config, costs,
                trail, scores, seen_structures,
            )
            if not admitted:
                break
            pool = _prune(pool + admitted, config.beam_width, scores)
    except TrailFull:
        pass  # the cap itself is recorded on the trail; finish with what we have

    retained = {a.aid for a, _ in pool}
    for node in trail.nodes:
        if node.kind == KIND_ALIGNMENT and node.fate == FATE_RETAINED and node.nid not in retained:
            node.fate = FATE_PRUNED
    if seed_nid not in retained:
        trail.nodes[seed_nid].fate = FATE_PRUNED
    return [a for a, _ in pool]


def _run_cycle(
    cycle: int,
    frontier: list[tuple[Alignment, Score]],
    grammar: Grammar,
    old_leaves: list[Alignment],
    leaf_nid: dict[int, int],
    config: SearchConfig,
    costs: CostTable,
    trail: AuditTrail,
    scores: dict[int, Score],
    seen_structures: set,
) -> list[tuple[Alignment, Score]]:
    tasks = [
        (a, a_score, pat, pat_leaf)
        for a, a_score in frontier
        for pat, pat_leaf in zip(grammar.patterns, old_leaves)
    ]

    def matches_for(task):
        a, _, pat, _ = task
        return chain_matches(
            a.column_names(), column_after_bits(a), pat.symbols, costs,
            config.matcher_beam, config.matches_per_pair,
        )

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool_exec:
            all_matches = list(pool_exec.map(matches_for, tasks))
    else:
        all_matches = [matches_for(t) for t in tasks]

    admitted: list[tuple[Alignment, Score]] = []
    for (a, a_score, pat, pat_leaf), hitseqs in zip(tasks, all_matches):
        for hs in hitseqs:
            pairs = tuple(
                (ca, j)
                for ca, j in hs.pairs
                if not _is_echo(a, pat, ca, j) and not _is_dead(a, pat, ca, j)
            )
            if not pairs:
                continue
            child = unify(a, pat_leaf, pairs)
            score = compression_difference(child, costs)
            parents = (a.aid, leaf_nid[pat.pid])
            key = child.structure_key()
            if key in seen_structures:
                trail.record(KIND_ALIGNMENT, parents, cycle, rejected("duplicate"), score, pairs)
                continue
            if cycle > 0 and score.cd <= a_score.cd:
                trail.record(
                    KIND_ALIGNMENT, parents, cycle, rejected("cd_not_improved"), score, pairs
                )
                continue
            nid = trail.record(KIND_ALIGNMENT, parents, cycle, FATE_RETAINED, score, pairs)
            child.aid = nid
            scores[nid] = score
            seen_structures.add(key)
            admitted.append((child, score))
    return admitted


def _prune(
    pool: list[tuple[Alignment, Score]], beam_width: int, scores: dict[int, Score]
) -> list[tuple[Alignment, Score]]:
    pool.sort(key=lambda item: (-item[1].cd, item[1].b_e, item[0].aid))
    return pool[:beam_width]
