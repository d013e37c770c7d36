"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 I/O error.
"""
from __future__ import annotations

import argparse
import enum
import itertools
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import (
    Alphabet,
    Dfa,
    ForeignSymbolError,
    Nfa,
    add_start_self_loops,
    is_simple,
    subset_construction,
)
from .genstring import (
    Mode,
    build_levels,
    nfa_from_genstring,
    parse_generalized_string,
    read_motif_lines,
)
from .hamming import grid_states, mismatch_edges, nfa_from_hamming
from .minimize import minimize
from .search import (
    CompiledMotif,
    ScanStats,
    has_suffix_semantics,
    read_fasta,
    shortest_accepted_length,
    stream_search,
)
from .textio import TableFormatError, dump, load, to_dot

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2


class Kind(enum.Enum):
    GENSTRING = "genstring"
    GENSTRING_SET = "genstring-set"
    HAMMING = "hamming"


@dataclass(frozen=True)
class MotifSpec:
    kind: Kind
    patterns: tuple[str, ...]
    alphabet: Optional[Alphabet]
    mode: Mode = Mode.LITERAL
    d_max: Optional[int] = None
    suffix_loop: bool = False
    source: str = ""

    def __post_init__(self):
        if self.kind is Kind.HAMMING:
            if len(self.patterns) != 1:
                raise ValueError("a Hamming motif needs exactly one pattern")
            if self.d_max is None or self.d_max < 0:
                raise ValueError("a Hamming motif needs d_max >= 0")
        if self.mode is Mode.LITERAL and self.alphabet is None:
            raise ValueError("--alphabet is required in literal mode")


@dataclass(frozen=True)
class BuiltMotif:
    spec: MotifSpec
    nfa: Nfa
    motif_length: int
    level_sizes: tuple[int, ...]
    negated: dict

    @property
    def description(self) -> str:
        text = self.spec.source or ";".join(self.spec.patterns)
        if self.spec.kind is Kind.HAMMING:
            text += f" (hamming <= {self.spec.d_max})"
        return text


def build(spec: MotifSpec) -> BuiltMotif:
    negated: dict = {}
    if spec.kind is Kind.GENSTRING_SET:
        patterns = read_motif_lines(spec.patterns, spec.alphabet, spec.mode)
        built = build_levels(patterns)
        nfa, length, levels = built.nfa, len(built.patterns[0]), tuple(built.level_sizes)
    else:
        g = parse_generalized_string(spec.patterns[0], spec.alphabet, spec.mode)
        length = len(g)
        if spec.kind is Kind.HAMMING:
            nfa = nfa_from_hamming(g, spec.d_max)
            negated = mismatch_edges(g, spec.d_max)
            states = grid_states(g, spec.d_max)
            levels = tuple(sum(s.consumed == k for s in states) for k in range(length + 1))
        else:
            nfa = nfa_from_genstring(g)
            levels = (1,) * (length + 1)
    if spec.suffix_loop:
        nfa = add_start_self_loops(nfa)
    return BuiltMotif(spec, nfa, length, levels, negated)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_spec_args(p: argparse.ArgumentParser, automaton: bool) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern", help="single pattern, e.g. 'A[AB]B[AC]'")
    src.add_argument("--patterns-file", help="file with one equal-length pattern per line")
    if automaton:
        src.add_argument("--automaton", help="read a DFA/NFA table instead of building from a pattern")
    p.add_argument("--alphabet", help="symbols in rank order (literal mode), e.g. ABC")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.LITERAL.value)
    p.add_argument("--hamming", type=int, metavar="D_MAX", help="accept Hamming distance <= D_MAX")
    p.add_argument("--suffix-loop", action="store_true",
                   help="add start self-loops so strings with a matching suffix are accepted")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="motifdfa", description="Minimal DFAs for sequence motifs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="build NFA and DFA and write tables/DOT")
    _add_spec_args(p, automaton=False)
    p.add_argument("--out-nfa")
    p.add_argument("--out-dfa")
    p.add_argument("--out-dot", help="DOT rendering of the NFA")

    p = sub.add_parser("stats", help="print automaton sizes and the minimality check")
    _add_spec_args(p, automaton=True)
    p.add_argument("--figure", help="also write a size chart (png/pdf/svg)")

    p = sub.add_parser("search", help="report motif occurrences in text or FASTA")
    _add_spec_args(p, automaton=True)
    p.add_argument("--strict-symbols", action="store_true",
                   help="fail on symbols outside the alphabet instead of resetting")
    p.add_argument("input", nargs="?", default="-", help="text or FASTA file, '-' for stdin")

    p = sub.add_parser("export-dot", help="write a Graphviz rendering")
    _add_spec_args(p, automaton=True)
    p.add_argument("--dfa", action="store_true", help="render the determinized automaton")
    p.add_argument("--out-dot", help="output path (default stdout)")
    return parser


def spec_from_args(args: argparse.Namespace) -> MotifSpec:
    mode = Mode(args.mode)
    alphabet = Alphabet(args.alphabet) if args.alphabet and mode is Mode.LITERAL else None
    if args.patterns_file:
        with open(args.patterns_file, encoding="utf-8") as fh:
            lines = tuple(fh.read().splitlines())
        if args.hamming is not None:
            raise ValueError("--hamming takes a single --pattern, not a patterns file")
        return MotifSpec(Kind.GENSTRING_SET, lines, alphabet, mode, None, args.suffix_loop,
                         args.patterns_file)
    kind = Kind.HAMMING if args.hamming is not None else Kind.GENSTRING
    return MotifSpec(kind, (args.pattern,), alphabet, mode, args.hamming, args.suffix_loop)


def _load_automaton(path: str):
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_compile(args, out) -> int:
    built = build(spec_from_args(args))
    dfa = subset_construction(built.nfa)
    if args.out_nfa:
        _write(args.out_nfa, dump(built.nfa))
    if args.out_dfa:
        _write(args.out_dfa, dump(dfa))
    if args.out_dot:
        _write(args.out_dot, to_dot(built.nfa, "nfa", built.negated))
    print(f"nfa_states\t{built.nfa.n_states}", file=out)
    print(f"nfa_transitions\t{built.nfa.n_transitions}", file=out)
    print(f"dfa_states\t{dfa.n_states}", file=out)
    return EXIT_OK


def stats_rows(nfa: Optional[Nfa], dfa: Dfa, level_sizes=None, description="") -> list[tuple[str, str]]:
    minimal = minimize(dfa)
    rows = [("motif", description)]
    if nfa is not None:
        report = is_simple(nfa)
        rows += [
            ("nfa_states", str(nfa.n_states)),
            ("nfa_transitions", str(nfa.n_transitions)),
        ]
        if level_sizes:
            rows.append(("level_sizes", ",".join(map(str, level_sizes))))
        rows.append(("is_simple", str(report.simple).lower()))
        for reason in report.failures():
            rows.append(("simplicity_failure", reason))
    rows += [
        ("dfa_states", str(dfa.n_states)),
        ("minimal_states", str(minimal.n_states)),
        ("dfa_is_minimal", str(dfa.n_states == minimal.n_states).lower()),
    ]
    return rows


def cmd_stats(args, out) -> int:
    level_sizes = None
    if args.automaton:
        automaton = _load_automaton(args.automaton)
        description = args.automaton
        nfa = automaton if isinstance(automaton, Nfa) else None
        dfa = automaton if isinstance(automaton, Dfa) else subset_construction(automaton)
    else:
        built = build(spec_from_args(args))
        nfa, description, level_sizes = built.nfa, built.description, built.level_sizes
        dfa = subset_construction(nfa)
    rows = stats_rows(nfa, dfa, level_sizes, description)
    for key, value in rows:
        print(f"{key}\t{value}", file=out)
    if args.figure:
        from .report import plot_sizes

        values = dict(rows)
        plot_sizes(
            args.figure,
            description,
            level_sizes,
            nfa.n_states if nfa is not None else None,
            dfa.n_states,
            int(values["minimal_states"]),
        )
    return EXIT_OK


def _compiled_for_search(args) -> CompiledMotif:
    fold = Mode(args.mode) is Mode.IUPAC_DNA
    if args.automaton:
        automaton = _load_automaton(args.automaton)
        dfa = automaton if isinstance(automaton, Dfa) else subset_construction(automaton)
        if not has_suffix_semantics(dfa):
            raise ValueError(
                f"{args.automaton} does not accept every string ending in a match; "
                "recompile it with --suffix-loop"
            )
        length = shortest_accepted_length(dfa)
        if not length:
            raise ValueError(f"{args.automaton} accepts no non-empty string")
        return CompiledMotif(dfa, length, args.automaton, fold)
    spec = spec_from_args(args)
    if not spec.suffix_loop:
        raise ValueError("search needs --suffix-loop so that every occurrence ends in an accepting state")
    built = build(spec)
    return CompiledMotif(subset_construction(built.nfa), built.motif_length, built.description, fold)


def _sequences(path: str, fold: bool):
    fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
    try:
        lines = iter(fh)
        head = []
        for line in lines:
            head.append(line)
            if line.strip():
                break
        if head and head[-1].lstrip().startswith(">"):
            yield from read_fasta(itertools.chain(head, lines), fold)
        else:
            seq_id = "stdin" if path == "-" else path
            text = "".join(l.rstrip("\r\n") for l in head) + "".join(l.rstrip("\r\n") for l in lines)
            yield seq_id, text
    finally:
        if fh is not sys.stdin:
            fh.close()


def cmd_search(args, out) -> int:
    motif = _compiled_for_search(args)
    stats = ScanStats()
    for seq_id, seq in _sequences(args.input, motif.fold_case):
        for occ in stream_search(motif, seq, seq_id, args.strict_symbols, stats):
            print(f"{occ.sequence_id}\t{occ.start_pos}\t{occ.end_pos}", file=out)
    if stats.foreign:
        shown = ", ".join(f"{c!r} x{n}" for c, n in sorted(stats.foreign_symbols.items()))
        print(f"motifdfa: reset on {stats.foreign} foreign symbol(s): {shown}", file=sys.stderr)
    return EXIT_OK


def cmd_export_dot(args, out) -> int:
    if args.automaton:
        automaton = _load_automaton(args.automaton)
        negated = {}
        if args.dfa and isinstance(automaton, Nfa):
            automaton = subset_construction(automaton)
    else:
        built = build(spec_from_args(args))
        automaton, negated = built.nfa, built.negated
        if args.dfa:
            automaton, negated = subset_construction(automaton), {}
    text = to_dot(automaton, "dfa" if isinstance(automaton, Dfa) else "nfa", negated)
    if args.out_dot:
        _write(args.out_dot, text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {
    "compile": cmd_compile,
    "stats": cmd_stats,
    "search": cmd_search,
    "export-dot": cmd_export_dot,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (ForeignSymbolError, TableFormatError, ValueError) as exc:
        print(f"motifdfa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"motifdfa: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
