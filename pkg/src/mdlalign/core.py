"""Symbols, patterns, grammar files, and per-symbol bit costs."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import EmptyGrammar


class Origin(Enum):
    """Whether a pattern is incoming input or stored knowledge."""

    NEW = "new"
    OLD = "old"


class Symbol:
    """An atomic token, matchable only for equality of its name.

    Instances are interned: constructing the same name twice returns the
    same object, so default identity comparison coincides with name
    equality.  Names may not be empty, contain whitespace, or contain
    ``|`` (the grammar-file comment marker).
    """

    __slots__ = ("name", "iid")

    _interned: dict[str, "Symbol"] = {}

    def __new__(cls, name: str) -> "Symbol":
        sym = cls._interned.get(name)
        if sym is None:
            if not name or "|" in name or any(ch.isspace() for ch in name):
                raise ValueError(
                    f"symbol name must be non-empty with no whitespace and no '|': {name!r}"
                )
            sym = super().__new__(cls)
            sym.name = name
            sym.iid = len(cls._interned)
            cls._interned[name] = sym
        return sym

    def __repr__(self) -> str:
        return f"Symbol({self.name!r})"


def symbols(text: str) -> tuple[Symbol, ...]:
    """Tokenize whitespace-separated text into a symbol tuple."""
    return tuple(Symbol(tok) for tok in text.split())


@dataclass(frozen=True)
class Pattern:
    """An ordered run of symbols; the unit of all stored knowledge.

    ``id_positions`` marks the service symbols of a stored pattern (the
    identifiers used to reference it from elsewhere); input patterns
    have none.
    """

    pid: int
    symbols: tuple[Symbol, ...]
    origin: Origin
    id_positions: frozenset[int]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("pattern must contain at least one symbol")
        if self.origin is Origin.NEW and self.id_positions:
            raise ValueError("input patterns carry no id positions")
        if any(i < 0 or i >= len(self.symbols) for i in self.id_positions):
            raise ValueError("id position out of range")

    def text(self) -> str:
        return " ".join(s.name for s in self.symbols)


def _classify(names: tuple[str, ...]) -> frozenset[int]:
    # Leading symbol, the digit run after it, and a trailing "#<first>" closer.
    positions = {0}
    k = 1
    while k < len(names) and names[k].isdigit():
        positions.add(k)
        k += 1
    if len(names) > 1 and names[-1] == "#" + names[0]:
        positions.add(len(names) - 1)
    return frozenset(positions)


def classify_id_symbols(pattern: Pattern) -> frozenset[int]:
    """Indices of a stored pattern's service symbols; empty for input patterns.

    The rule is positional: index 0, the maximal run of all-digit
    symbols immediately after it, and the last index when its name is
    ``#`` prepended to the first symbol's name.
    """
    if pattern.origin is Origin.NEW:
        return frozenset()
    return _classify(tuple(s.name for s in pattern.symbols))


def _as_symbols(tokens: str | Iterable[Symbol | str]) -> tuple[Symbol, ...]:
    if isinstance(tokens, str):
        return symbols(tokens)
    return tuple(t if isinstance(t, Symbol) else Symbol(t) for t in tokens)


def new_pattern(tokens: str | Iterable[Symbol | str], pid: int = -1) -> Pattern:
    """Build an input pattern from text, names, or symbols."""
    return Pattern(pid, _as_symbols(tokens), Origin.NEW, frozenset())


def old_pattern(tokens: str | Iterable[Symbol | str], pid: int) -> Pattern:
    """Build a stored pattern, classifying its id positions."""
    syms = _as_symbols(tokens)
    return Pattern(pid, syms, Origin.OLD, _classify(tuple(s.name for s in syms)))


@dataclass(frozen=True)
class Grammar:
    """An ordered repository of stored patterns."""

    patterns: tuple[Pattern, ...]
    alphabet: frozenset[Symbol]
    source_text: str = field(compare=False, default="")

    def __post_init__(self) -> None:
        pids = [p.pid for p in self.patterns]
        if len(set(pids)) != len(pids):
            raise ValueError("pattern ids must be unique")


def parse_grammar(text: str) -> Grammar:
    """Parse grammar text: one pattern per line, ``|`` starts a comment.

    Tokens are separated by runs of spaces or tabs; blank lines (and
    lines that are all comment) are skipped.  Pattern ids follow file
    order.
    """
    patterns: list[Pattern] = []
    for line in text.splitlines():
        body = line.split("|", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        patterns.append(old_pattern(tokens, pid=len(patterns)))
    if not patterns:
        raise EmptyGrammar("grammar contains no patterns")
    alphabet = frozenset(s for p in patterns for s in p.symbols)
    return Grammar(tuple(patterns), alphabet, text)


def render_grammar(grammar: Grammar) -> str:
    """One pattern per line, comments dropped; reparses to an equal grammar."""
    return "\n".join(p.text() for p in grammar.patterns) + "\n"


# ---------------------------------------------------------------------------
# Bit costs
# ---------------------------------------------------------------------------

class CostMode(Enum):
    UNIFORM = "uniform"
    FREQUENCY = "frequency"


@dataclass(frozen=True)
class CostTable:
    """Deterministic per-symbol bit costs.

    ``default_bits`` prices symbols outside the governing alphabet
    (e.g. input-only symbols), so every lookup is finite and positive.
    """

    mode: CostMode
    cost_bits: dict[Symbol, float]
    default_bits: float

    def cost(self, symbol: Symbol) -> float:
        return self.cost_bits.get(symbol, self.default_bits)


def uniform_costs(alphabet: Iterable[Symbol]) -> CostTable:
    syms = sorted(set(alphabet), key=lambda s: s.name)
    if not syms:
        raise EmptyGrammar("cannot build a cost table over an empty alphabet")
    bits = max(1.0, math.log2(len(syms)))
    return CostTable(CostMode.UNIFORM, {s: bits for s in syms}, bits)


def frequency_costs(counts: dict[Symbol, int], alphabet: Iterable[Symbol]) -> CostTable:
    """Laplace-smoothed self-information costs over observed counts."""
    syms = sorted(set(alphabet), key=lambda s: s.name)
    if not syms:
        raise EmptyGrammar("cannot build a cost table over an empty alphabet")
    total = sum(counts.values())
    denom = total + len(syms)
    table: dict[Symbol, float] = {}
    for s in syms:
        bits = -math.log2((counts.get(s, 0) + 1) / denom)
        # Only a single-symbol alphabet can price its symbol at zero bits;
        # clamp so costs stay positive.
        table[s] = bits if bits > 0.0 else 1.0
    return CostTable(CostMode.FREQUENCY, table, -math.log2(1.0 / denom))


def symbol_costs(grammar: Grammar, mode: CostMode) -> CostTable:
    """Cost table over the grammar's alphabet; bit-identical for equal inputs."""
    if mode is CostMode.UNIFORM:
        return uniform_costs(grammar.alphabet)
    counts = Counter(s for p in grammar.patterns for s in p.symbols)
    return frequency_costs(counts, grammar.alphabet)
