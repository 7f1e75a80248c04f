"""Compression-guided multiple alignment of flat symbol patterns.

Knowledge lives in flat patterns of atomic symbols.  An input pattern
is aligned against a repository of stored patterns by heuristic search
guided by information compression; results carry bit-cost scores and
probabilities, every step of the search lands in a replayable audit
trail, and compression-based learning primitives (chunk discovery,
chunking with codes, run-length encoding, segmentation) share the same
cost machinery.
"""

from .alignment import Alignment, Column, Provenance, flatten, from_pattern, leaf, unify, validate
from .audit import AuditNode, AuditTrail
from .core import (
    CostMode,
    CostTable,
    Grammar,
    Origin,
    Pattern,
    Symbol,
    classify_id_symbols,
    new_pattern,
    old_pattern,
    parse_grammar,
    render_grammar,
    symbol_costs,
    symbols,
)
from .learn import (
    ChunkDictionary,
    Corpus,
    SegmentResult,
    chunk_candidates,
    corpus_from_symbols,
    corpus_from_text,
    decode_corpus,
    encode_corpus,
    run_length_decode,
    run_length_encode,
    segment,
    select_chunks,
)
from .matcher import HitSequence, find_matches
from .render import RenderOptions, RenderStyle, render
from .scorer import Score, compression_difference, coverage, encoding_of, relative_probabilities
from .search import SearchConfig, build_alignments

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AuditNode",
    "AuditTrail",
    "ChunkDictionary",
    "Column",
    "Corpus",
    "CostMode",
    "CostTable",
    "Grammar",
    "HitSequence",
    "Origin",
    "Pattern",
    "Provenance",
    "RenderOptions",
    "RenderStyle",
    "Score",
    "SearchConfig",
    "SegmentResult",
    "Symbol",
    "build_alignments",
    "chunk_candidates",
    "classify_id_symbols",
    "compression_difference",
    "corpus_from_symbols",
    "corpus_from_text",
    "coverage",
    "decode_corpus",
    "encode_corpus",
    "encoding_of",
    "find_matches",
    "flatten",
    "from_pattern",
    "leaf",
    "new_pattern",
    "old_pattern",
    "parse_grammar",
    "relative_probabilities",
    "render",
    "render_grammar",
    "run_length_decode",
    "run_length_encode",
    "segment",
    "select_chunks",
    "symbol_costs",
    "symbols",
    "unify",
    "validate",
]
