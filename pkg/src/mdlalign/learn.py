"""Compression-based learning primitives over symbol corpora.

Chunk discovery counts repeated subsequences and keeps the ones more
frequent than a unigram-product chance model predicts; the chance bar
falls as chunks get longer, so a very long chunk clears it with as few
as two occurrences while a two-symbol chunk needs many.  Selected
chunks move into a dictionary under fresh short codes, corpora are
rewritten code-for-chunk, and the segmenter iterates the whole loop —
one chunk per round, keeping each round only when the total bit count
(text plus dictionary) actually falls.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import CostTable, Symbol, frequency_costs


@dataclass(frozen=True)
class Corpus:
    """A body of symbols together with its empirical unigram model."""

    symbols: tuple[Symbol, ...]
    unigram: dict[Symbol, float]


def corpus_from_symbols(syms: Sequence[Symbol]) -> Corpus:
    syms = tuple(syms)
    if not syms:
        raise ValueError("corpus must contain at least one symbol")
    counts = Counter(syms)
    total = len(syms)
    return Corpus(syms, {s: c / total for s, c in counts.items()})


def corpus_from_text(text: str, tokens: str = "chars") -> Corpus:
    """Tokenize text per character (whitespace skipped) or per whitespace token."""
    if tokens == "chars":
        syms = [Symbol(ch) for ch in text if not ch.isspace() and ch != "|"]
    elif tokens == "words":
        syms = [Symbol(tok) for tok in text.split()]
    else:
        raise ValueError(f"unknown tokenization mode: {tokens!r}")
    return corpus_from_symbols(syms)


@dataclass(frozen=True)
class ChunkCandidate:
    chunk: tuple[Symbol, ...]
    observed: int
    expected: float


@dataclass(frozen=True)
class ChunkEntry:
    chunk: tuple[Symbol, ...]
    code: Symbol
    observed: int
    expected: float


@dataclass(frozen=True)
class ChunkDictionary:
    """Accepted chunks with their codes and frequency statistics."""

    entries: tuple[ChunkEntry, ...]

    def codes(self) -> set[Symbol]:
        return {e.code for e in self.entries}


def _nonoverlapping_count(seq: Sequence[Symbol], chunk: tuple[Symbol, ...]) -> int:
    k = len(chunk)
    count = 0
    i = 0
    n = len(seq)
    while i + k <= n:
        if tuple(seq[i : i + k]) == chunk:
            count += 1
            i += k
        else:
            i += 1
    return count


def chunk_candidates(corpus: Corpus, max_len: int) -> list[ChunkCandidate]:
    """Repeated subsequences of length 2..max_len, by compression potential.

    ``observed`` counts non-overlapping occurrences; ``expected`` is
    the unigram-product chance count for a window of that length.  Only
    candidates observed at least twice are returned, sorted by
    observed*length descending (ties: shorter first, then by name).
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    seq = corpus.symbols
    n = len(seq)
    out: list[ChunkCandidate] = []
    for k in range(2, min(max_len, n) + 1):
        grams: dict[tuple[Symbol, ...], int] = {}
        for i in range(n - k + 1):
            gram = seq[i : i + k]
            if gram not in grams:
                grams[gram] = 0
        for gram in grams:
            obs = _nonoverlapping_count(seq, gram)
            if obs >= 2:
                expected = float(n - k + 1)
                for s in gram:
                    expected *= corpus.unigram.get(s, 0.0)
                out.append(ChunkCandidate(gram, obs, expected))
    out.sort(key=lambda c: (-c.observed * len(c.chunk), len(c.chunk), tuple(s.name for s in c.chunk)))
    return out


def _fresh_codes(taken: set[str]):
    i = 1
    while True:
        name = f"w{i}"
        if name not in taken:
            taken.add(name)
            yield Symbol(name)
        i += 1


def select_chunks(
    candidates: Sequence[ChunkCandidate],
    corpus: Corpus,
    threshold_factor: float = 1.0,
) -> ChunkDictionary:
    """Greedily accept candidates no less frequent than chance allows.

    Acceptance requires ``observed >= max(2, threshold_factor * expected)``,
    with ``observed`` re-counted on the residual corpus after each
    acceptance so overlapping material is never claimed twice.  Codes
    are fresh symbols w1, w2, ... never colliding with the corpus
    alphabet.
    """
    if threshold_factor <= 0:
        raise ValueError("threshold_factor must be positive")
    residual: list[Symbol] = list(corpus.symbols)
    alphabet_names = {s.name for s in corpus.unigram}
    codes = _fresh_codes(set(alphabet_names))
    entries: list[ChunkEntry] = []
    for cand in candidates:
        obs = _nonoverlapping_count(residual, cand.chunk)
        if obs < 2 or obs < threshold_factor * cand.expected:
            continue
        code = next(codes)
        residual = _replace(residual, cand.chunk, code)
        entries.append(ChunkEntry(cand.chunk, code, obs, cand.expected))
    return ChunkDictionary(tuple(entries))


def _replace(seq: list[Symbol], chunk: tuple[Symbol, ...], code: Symbol) -> list[Symbol]:
    k = len(chunk)
    out: list[Symbol] = []
    i = 0
    n = len(seq)
    while i < n:
        if i + k <= n and tuple(seq[i : i + k]) == chunk:
            out.append(code)
            i += k
        else:
            out.append(seq[i])
            i += 1
    return out


@dataclass(frozen=True)
class EncodedCorpus:
    encoded: tuple[Symbol, ...]
    raw_bits: float
    encoded_bits: float


def _learning_costs(corpus: Corpus, dictionary: ChunkDictionary) -> CostTable:
    counts = Counter(corpus.symbols)
    alphabet = set(counts) | dictionary.codes()
    return frequency_costs(dict(counts), alphabet)


def encode_corpus(corpus: Corpus, dictionary: ChunkDictionary) -> EncodedCorpus:
    """Rewrite the corpus code-for-chunk and price both versions in bits.

    Replacement is left-to-right longest-match.  ``encoded_bits``
    includes the dictionary's own cost (every chunk body plus its
    code), so a chunk only pays off when its occurrences save more than
    the dictionary entry costs.
    """
    code_names = {e.code.name for e in dictionary.entries}
    overlap = {s.name for s in corpus.unigram} & code_names
    if overlap:
        raise ValueError(f"dictionary codes collide with the corpus alphabet: {sorted(overlap)}")
    by_len = sorted(dictionary.entries, key=lambda e: -len(e.chunk))
    out: list[Symbol] = []
    seq = corpus.symbols
    n = len(seq)
    i = 0
    while i < n:
        for entry in by_len:
            k = len(entry.chunk)
            if i + k <= n and seq[i : i + k] == entry.chunk:
                out.append(entry.code)
                i += k
                break
        else:
            out.append(seq[i])
            i += 1
    costs = _learning_costs(corpus, dictionary)
    raw_bits = sum(costs.cost(s) for s in seq)
    encoded_bits = sum(costs.cost(s) for s in out)
    for entry in dictionary.entries:
        encoded_bits += sum(costs.cost(s) for s in entry.chunk) + costs.cost(entry.code)
    return EncodedCorpus(tuple(out), raw_bits, encoded_bits)


def decode_corpus(encoded: Sequence[Symbol], dictionary: ChunkDictionary) -> tuple[Symbol, ...]:
    """Invert ``encode_corpus`` (codes may nest across segmentation rounds)."""
    expansion = {e.code: e.chunk for e in dictionary.entries}
    out: list[Symbol] = []
    stack = list(reversed(list(encoded)))
    while stack:
        s = stack.pop()
        chunk = expansion.get(s)
        if chunk is None:
            out.append(s)
        else:
            stack.extend(reversed(chunk))
    return tuple(out)


# ---------------------------------------------------------------------------
# Run-length encoding
# ---------------------------------------------------------------------------

def run_length_encode(seq: Sequence[Symbol]) -> list[tuple[tuple[Symbol, ...], int]]:
    """Greedy factorization into (unit, count) pairs, repeats first.

    At each position the unit with the longest repeated cover
    (count*len, counts of at least two, smaller units on ties) is
    taken; when nothing repeats the single symbol passes through with
    count one.  Concatenating count copies of every unit reproduces the
    input exactly.
    """
    seq = tuple(seq)
    out: list[tuple[tuple[Symbol, ...], int]] = []
    i = 0
    n = len(seq)
    while i < n:
        remaining = n - i
        best_unit = 1
        best_count = 1
        best_cover = 1
        for u in range(1, remaining // 2 + 1):
            unit = seq[i : i + u]
            count = 1
            while seq[i + count * u : i + (count + 1) * u] == unit:
                count += 1
            if count >= 2 and count * u > best_cover:
                best_unit, best_count, best_cover = u, count, count * u
        out.append((seq[i : i + best_unit], best_count))
        i += best_unit * best_count
    return out


def run_length_decode(pairs: Sequence[tuple[tuple[Symbol, ...], int]]) -> tuple[Symbol, ...]:
    out: list[Symbol] = []
    for unit, count in pairs:
        out.extend(unit * count)
    return tuple(out)


# ---------------------------------------------------------------------------
# Segmentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentResult:
    """Discovered boundaries (cuts between original positions) and lexicon."""

    boundaries: tuple[int, ...]
    lexicon: ChunkDictionary
    rounds_run: int
    raw_bits: float
    final_bits: float


def segment(corpus: Corpus, rounds: int, max_len: int = 8, threshold_factor: float = 1.0) -> SegmentResult:
    """Iterated one-chunk-per-round compression of an unsegmented corpus.

    Each round takes the best above-chance candidate, rewrites the
    corpus with its code, and keeps the round only if total bits (text
    plus dictionary) fell; otherwise the loop stops.  Boundaries are
    read off the final rewriting at the edges of every code span, and
    the lexicon reports each accepted chunk expanded back to original
    symbols.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    current = corpus
    all_entries: list[ChunkEntry] = []
    taken_names = {s.name for s in corpus.unigram}
    codes = _fresh_codes(set(taken_names))
    raw_bits = encode_corpus(corpus, ChunkDictionary(())).raw_bits
    total_bits = raw_bits
    rounds_run = 0

    for _ in range(rounds):
        candidates = chunk_candidates(current, max_len) if len(current.symbols) >= 2 else []
        picked = None
        for cand in candidates:
            if cand.observed >= max(2.0, threshold_factor * cand.expected):
                picked = cand
                break
        if picked is None:
            break
        code = next(codes)
        entry = ChunkEntry(picked.chunk, code, picked.observed, picked.expected)
        trial = encode_corpus(current, ChunkDictionary((entry,)))
        # Bits already spent on earlier dictionary entries carry over.
        spent = total_bits - _text_bits(current)
        new_total = spent + trial.encoded_bits
        if new_total >= total_bits:
            break
        all_entries.append(entry)
        total_bits = new_total
        current = corpus_from_symbols(trial.encoded)
        rounds_run += 1

    lexicon_entries = []
    partial = ChunkDictionary(tuple(all_entries))
    for e in all_entries:
        expanded = decode_corpus(e.chunk, partial)
        lexicon_entries.append(ChunkEntry(expanded, e.code, e.observed, e.expected))
    boundaries = _boundaries(current.symbols, partial)
    return SegmentResult(
        boundaries, ChunkDictionary(tuple(lexicon_entries)), rounds_run, raw_bits, total_bits
    )


def _text_bits(corpus: Corpus) -> float:
    return encode_corpus(corpus, ChunkDictionary(())).raw_bits


def _boundaries(final_symbols: Sequence[Symbol], dictionary: ChunkDictionary) -> tuple[int, ...]:
    expansion = {e.code: e.chunk for e in dictionary.entries}

    def span(sym: Symbol) -> int:
        chunk = expansion.get(sym)
        if chunk is None:
            return 1
        return sum(span(s) for s in chunk)

    cuts: set[int] = set()
    pos = 0
    total = sum(span(s) for s in final_symbols)
    for sym in final_symbols:
        width = span(sym)
        if sym in expansion:
            if pos > 0:
                cuts.add(pos)
            if pos + width < total:
                cuts.add(pos + width)
        pos += width
    return tuple(sorted(cuts))
