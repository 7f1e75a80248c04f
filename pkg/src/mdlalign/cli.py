"""Command-line entry point wiring grammars, search, learning, and rendering.

Exit codes: 0 success, 1 usage error, 2 data error (missing or
malformed input files and the like).  Stdout carries human-readable
results; machine-readable artifacts go to the files named by flags, so
repeated identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .audit import AuditTrail
from .core import CostMode, new_pattern, parse_grammar
from .errors import EngineError
from .learn import (
    ChunkDictionary,
    chunk_candidates,
    corpus_from_text,
    encode_corpus,
    run_length_encode,
    segment,
    select_chunks,
)
from .render import RenderOptions, RenderStyle, render
from .scorer import compression_difference, encoding_of, relative_probabilities
from .search import SearchConfig, build_alignments
from .core import symbol_costs


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mdlalign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_search_flags(p: _Parser, fragments: bool) -> None:
        p.add_argument("--grammar", required=True, help="grammar file path")
        if fragments:
            p.add_argument("--fragments", required=True,
                           help="file of input fragments, one per line, concatenated in order")
        else:
            p.add_argument("--new", required=True, help="input pattern, whitespace-separated symbols")
        p.add_argument("--beam", type=int, default=20, help="alignments retained per cycle")
        p.add_argument("--cycles", type=int, default=12, help="maximum search cycles")
        p.add_argument("--cost", choices=["uniform", "freq"], default="uniform")
        p.add_argument("--top", type=int, default=3, help="how many ranked alignments to print")
        p.add_argument("--render", choices=["row", "column"], default=None)
        p.add_argument("--width", type=int, default=160, help="page width for rendering")
        p.add_argument("--audit-json", default=None, help="write the audit trail as JSON here")
        p.add_argument("--audit-dot", default=None, help="write the audit trail as DOT here")
        p.add_argument("--jobs", type=int, default=1, help="worker threads within a cycle")

    add_search_flags(sub.add_parser("align", help="align an input pattern against a grammar"), False)
    add_search_flags(sub.add_parser("classify", help="align multi-fragment input against a grammar"), True)

    rnd = sub.add_parser("render", help="align, then print only the rendered best alignment")
    add_search_flags(rnd, False)
    rnd.add_argument("--style", choices=["row", "column"], default="row")

    def add_corpus_flags(p: _Parser) -> None:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--text", help="corpus text given inline")
        src.add_argument("--input", help="corpus text file")
        p.add_argument("--tokens", choices=["chars", "words"], default="chars")

    lrn = sub.add_parser("learn", help="discover chunks and encode the corpus with codes")
    add_corpus_flags(lrn)
    lrn.add_argument("--max-len", type=int, default=8)
    lrn.add_argument("--threshold", type=float, default=1.0)

    seg = sub.add_parser("segment", help="unsupervised segmentation by iterated compression")
    add_corpus_flags(seg)
    seg.add_argument("--rounds", type=int, default=8)
    seg.add_argument("--max-len", type=int, default=8)
    seg.add_argument("--threshold", type=float, default=1.0)

    rle = sub.add_parser("rle", help="run-length encode the corpus")
    add_corpus_flags(rle)

    aud = sub.add_parser("audit", help="print the ancestor trail of a node, bottom to top")
    aud.add_argument("--trail", required=True, help="audit trail JSON file")
    aud.add_argument("--node", required=True, type=int, help="target node id")
    return parser


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise EngineError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _corpus_text(args) -> str:
    return args.text if args.text is not None else _read_text(args.input)


def _format_unit(unit, tokens: str) -> str:
    joiner = "" if tokens == "chars" else " "
    return joiner.join(s.name for s in unit)


def _run_search(args, out, render_only: bool = False) -> int:
    grammar = parse_grammar(_read_text(args.grammar))
    if getattr(args, "fragments", None) is not None:
        tokens = " ".join(_read_text(args.fragments).split())
    else:
        tokens = args.new
    new = new_pattern(tokens)
    mode = CostMode.UNIFORM if args.cost == "uniform" else CostMode.FREQUENCY
    config = SearchConfig(
        beam_width=args.beam, max_cycles=args.cycles, cost_mode=mode, jobs=args.jobs
    )
    trail = AuditTrail()
    costs = symbol_costs(grammar, mode)
    ranked = build_alignments(new, grammar, config, trail, costs)
    p_rel = relative_probabilities(ranked, costs)

    style = getattr(args, "style", None) or args.render
    opts = RenderOptions(RenderStyle(style), args.width) if style else None

    if render_only:
        if ranked:
            out.write(render(ranked[0], opts or RenderOptions()))
    else:
        cycles_run = max((n.cycle for n in trail.nodes), default=-1) + 1
        scored = sum(1 for n in trail.nodes if n.kind == "alignment_node")
        out.write(
            f"{len(ranked)} alignments retained "
            f"(cost={args.cost}, cycles={cycles_run}, candidates={scored})\n"
        )
        for rank, a in enumerate(ranked[: args.top], start=1):
            score = compression_difference(a, costs)
            out.write(
                f"#{rank} id={a.aid} cd={score.cd:.6f} b_n={score.b_n:.6f} "
                f"b_e={score.b_e:.6f} p_abs={score.p_abs:.6g} p_rel={p_rel[a.aid]:.6g}\n"
            )
            for row in a.rows:
                role = "new" if row.origin.value == "new" else "old"
                out.write(f"    {role}: {row.text()}\n")
            code = " ".join(s.name for s in encoding_of(a))
            out.write(f"    encoding: {code}\n")
            if opts is not None:
                out.write(render(a, opts))
    if args.audit_json:
        Path(args.audit_json).write_text(trail.export_json(), encoding="utf-8")
    if args.audit_dot:
        Path(args.audit_dot).write_text(trail.export_dot(), encoding="utf-8")
    return 0


def _run_learn(args, out) -> int:
    corpus = corpus_from_text(_corpus_text(args), args.tokens)
    cands = chunk_candidates(corpus, args.max_len) if len(corpus.symbols) >= 2 else []
    chosen = select_chunks(cands, corpus, args.threshold)
    enc = encode_corpus(corpus, chosen)
    out.write(f"corpus: {len(corpus.symbols)} symbols, alphabet {len(corpus.unigram)}\n")
    out.write(f"chunks selected: {len(chosen.entries)}\n")
    for e in chosen.entries:
        out.write(
            f"  {e.code.name} = {_format_unit(e.chunk, args.tokens)} "
            f"(observed {e.observed}, expected {e.expected:.4f})\n"
        )
    out.write(f"raw bits: {enc.raw_bits:.3f}\n")
    out.write(f"encoded bits: {enc.encoded_bits:.3f}\n")
    return 0


def _run_segment(args, out) -> int:
    corpus = corpus_from_text(_corpus_text(args), args.tokens)
    result = segment(corpus, args.rounds, args.max_len, args.threshold)
    out.write(f"rounds run: {result.rounds_run}\n")
    out.write(f"bits: {result.raw_bits:.3f} -> {result.final_bits:.3f}\n")
    out.write(f"lexicon: {len(result.lexicon.entries)} chunks\n")
    for e in result.lexicon.entries:
        out.write(f"  {e.code.name} = {_format_unit(e.chunk, args.tokens)} (observed {e.observed})\n")
    out.write("boundaries: " + " ".join(str(b) for b in result.boundaries) + "\n")
    return 0


def _run_rle(args, out) -> int:
    corpus = corpus_from_text(_corpus_text(args), args.tokens)
    for unit, count in run_length_encode(corpus.symbols):
        out.write(f"{_format_unit(unit, args.tokens)} x{count}\n")
    return 0


def _run_audit(args, out) -> int:
    trail = AuditTrail.from_json(_read_text(args.trail))
    for node in trail.ancestor_trail(args.node):
        line = f"node {node.nid} {node.kind} cycle={node.cycle} fate={node.fate}"
        if node.score is not None:
            line += f" cd={node.score.cd:.6f} b_e={node.score.b_e:.6f}"
        if node.parents:
            line += f" parents={list(node.parents)}"
        out.write(line + "\n")
    return 0


def run(argv: list[str], out=None) -> int:
    """Dispatch a CLI invocation; returns the process exit code."""
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 1
    try:
        if args.command == "align" or args.command == "classify":
            return _run_search(args, out)
        if args.command == "render":
            return _run_search(args, out, render_only=True)
        if args.command == "learn":
            return _run_learn(args, out)
        if args.command == "segment":
            return _run_segment(args, out)
        if args.command == "rle":
            return _run_rle(args, out)
        if args.command == "audit":
            return _run_audit(args, out)
    except (EngineError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
