"""Plain-text automaton tables and Graphviz DOT export.

Table layout (UTF-8, LF line endings)::

    DFA v1                      | NFA v1
    alphabet:ABC                | alphabet:ABC
    states:3                    | states:5
    start:0                     | starts:0
    accepting:2                 | accepting:4
    1 2 2                       | 0,1 0 0
    ...                         | - 2 -

Row ``i`` lists the targets of state ``i`` in symbol-rank order: one integer
per symbol for a DFA, a comma-separated list or ``-`` for an NFA.
"""
from __future__ import annotations

from typing import Mapping, Optional

from .automata import Alphabet, Automaton, Dfa, Nfa


class TableFormatError(ValueError):
    pass


def _ints(values) -> str:
    return " ".join(str(v) for v in sorted(values))


def dump_dfa(dfa: Dfa) -> str:
    lines = [
        "DFA v1",
        f"alphabet:{dfa.alphabet}",
        f"states:{dfa.n_states}",
        f"start:{dfa.start}",
        f"accepting:{_ints(dfa.accepting)}",
    ]
    lines += [" ".join(map(str, row)) for row in dfa.delta]
    return "\n".join(lines) + "\n"


def dump_nfa(nfa: Nfa) -> str:
    lines = [
        "NFA v1",
        f"alphabet:{nfa.alphabet}",
        f"states:{nfa.n_states}",
        f"starts:{_ints(nfa.starts)}",
        f"accepting:{_ints(nfa.accepting)}",
    ]
    for row in nfa.delta:
        lines.append(" ".join(",".join(map(str, sorted(t))) if t else "-" for t in row))
    return "\n".join(lines) + "\n"


def dump(automaton: Automaton) -> str:
    return dump_dfa(automaton) if isinstance(automaton, Dfa) else dump_nfa(automaton)


def _field(line: str, key: str, lineno: int) -> str:
    prefix = key + ":"
    if not line.startswith(prefix):
        raise TableFormatError(f"line {lineno}: expected '{prefix}...', got {line!r}")
    return line[len(prefix):]


def _parse_ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(v) for v in text.split()]
    except ValueError:
        raise TableFormatError(f"line {lineno}: expected integers, got {text!r}") from None


def load(text: str) -> Automaton:
    """Parse a DFA or NFA table; the kind is taken from the first line."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 5:
        raise TableFormatError("truncated automaton table")
    kind = lines[0]
    if kind not in ("DFA v1", "NFA v1"):
        raise TableFormatError(f"line 1: unknown header {kind!r}")
    try:
        alphabet = Alphabet(_field(lines[1], "alphabet", 2))
    except ValueError as exc:
        raise TableFormatError(f"line 2: {exc}") from None
    n = _parse_ints(_field(lines[2], "states", 3), 3)
    if len(n) != 1:
        raise TableFormatError("line 3: expected a single state count")
    n_states = n[0]
    accepting = _parse_ints(_field(lines[4], "accepting", 5), 5)
    rows = lines[5:]
    if len(rows) != n_states:
        raise TableFormatError(f"expected {n_states} transition rows, found {len(rows)}")

    try:
        if kind == "DFA v1":
            start = _parse_ints(_field(lines[3], "start", 4), 4)
            if len(start) != 1:
                raise TableFormatError("line 4: expected a single start state")
            delta = []
            for i, row in enumerate(rows):
                entries = _parse_ints(row, i + 6)
                if len(entries) != len(alphabet):
                    raise TableFormatError(f"line {i + 6}: expected {len(alphabet)} entries")
                delta.append(tuple(entries))
            return Dfa(alphabet, n_states, tuple(delta), start[0], frozenset(accepting))

        starts = _parse_ints(_field(lines[3], "starts", 4), 4)
        delta = []
        for i, row in enumerate(rows):
            entries = row.split()
            if len(entries) != len(alphabet):
                raise TableFormatError(f"line {i + 6}: expected {len(alphabet)} entries")
            cells = []
            for e in entries:
                cells.append(frozenset() if e == "-" else frozenset(_parse_ints(e.replace(",", " "), i + 6)))
            delta.append(tuple(cells))
        return Nfa(alphabet, n_states, tuple(delta), frozenset(starts), frozenset(accepting))
    except TableFormatError:
        raise
    except ValueError as exc:
        raise TableFormatError(str(exc)) from None


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    automaton: Automaton,
    name: str = "automaton",
    negated: Optional[Mapping[tuple[int, int], str]] = None,
) -> str:
    """Render as a Graphviz digraph.

    Accepting states are double circles and every start state gets an arrow
    from an invisible point node. Parallel edges are merged into one edge
    labelled with the symbol list. ``negated`` maps an edge ``(p, q)`` to the
    symbols it excludes; such an edge is labelled ``not:<symbols>``.
    """
    negated = negated or {}
    symbols = automaton.alphabet.symbols
    if isinstance(automaton, Dfa):
        starts = [automaton.start]
        if automaton.subset_labels is not None:
            labels = ["{" + ",".join(map(str, sorted(s))) + "}" for s in automaton.subset_labels]
        else:
            labels = [str(q) for q in range(automaton.n_states)]
        edge_list = [(p, a, q) for p, row in enumerate(automaton.delta) for a, q in enumerate(row)]
    else:
        starts = sorted(automaton.starts)
        labels = [automaton.label(q) for q in range(automaton.n_states)]
        edge_list = list(automaton.edges())

    grouped: dict[tuple[int, int], list[int]] = {}
    for p, a, q in edge_list:
        grouped.setdefault((p, q), []).append(a)

    out = [f"digraph {_quote(name)} {{", "  rankdir=LR;", '  node [shape=circle];']
    for q in range(automaton.n_states):
        shape = "doublecircle" if q in automaton.accepting else "circle"
        out.append(f"  q{q} [label={_quote(labels[q])}, shape={shape}];")
    for q in starts:
        out.append(f"  start{q} [shape=point];")
        out.append(f"  start{q} -> q{q};")
    for (p, q), ranks in sorted(grouped.items()):
        if (p, q) in negated:
            label = "not:" + negated[(p, q)]
        else:
            label = ",".join(symbols[a] for a in sorted(ranks))
        out.append(f"  q{p} -> q{q} [label={_quote(label)}];")
    out.append("}")
    return "\n".join(out) + "\n"
