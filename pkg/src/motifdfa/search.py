"""Streaming motif search with a compiled DFA, plus a minimal FASTA reader."""
from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Iterator, NamedTuple, Optional, TextIO, Union

from .automata import Dfa, ForeignSymbolError


class Occurrence(NamedTuple):
    sequence_id: str
    end_pos: int
    length: int

    @property
    def start_pos(self) -> int:
        return self.end_pos - self.length + 1


@dataclass(frozen=True)
class CompiledMotif:
    dfa: Dfa
    motif_length: int
    description: str = ""
    fold_case: bool = False

    def __post_init__(self):
        if self.motif_length < 1:
            raise ValueError("motif length must be positive")


@dataclass
class ScanStats:
    characters: int = 0
    foreign: int = 0
    occurrences: int = 0
    foreign_symbols: dict = field(default_factory=dict)


def stream_search(
    motif: CompiledMotif,
    text: Iterable[str],
    sequence_id: str = "stdin",
    strict: bool = False,
    stats: Optional[ScanStats] = None,
) -> Iterator[Occurrence]:
    """Scan ``text`` one character at a time and yield every accepting position.

    A character outside the alphabet resets the scanner to the start state, so
    no occurrence spans it. With ``strict`` it raises ``ForeignSymbolError``.
    """
    dfa = motif.dfa
    rank = dfa.alphabet.rank
    delta = dfa.delta
    accepting = dfa.accepting
    start = state = dfa.start
    length = motif.motif_length
    fold = motif.fold_case
    if stats is None:
        stats = ScanStats()
    pos = 0
    for chunk in text:
        if fold:
            chunk = chunk.upper()
        for c in chunk:
            pos += 1
            a = rank.get(c)
            if a is None:
                if strict:
                    raise ForeignSymbolError(c, pos)
                stats.foreign += 1
                stats.foreign_symbols[c] = stats.foreign_symbols.get(c, 0) + 1
                state = start
                continue
            state = delta[state][a]
            if state in accepting:
                stats.occurrences += 1
                yield Occurrence(sequence_id, pos, length)
    stats.characters += pos


def read_fasta(
    stream: Union[BinaryIO, TextIO, Iterable[str], Iterable[bytes]], fold_case: bool = False
) -> Iterator[tuple[str, str]]:
    """Yield ``(id, sequence)`` records in file order.

    The id is the header up to the first whitespace. Sequence lines are joined
    with line breaks removed. Blank lines before the first header are allowed;
    anything else there is an error.
    """
    seq_id: Optional[str] = None
    parts: list[str] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.rstrip("\r\n")
        if line.startswith(">"):
            if seq_id is not None:
                yield seq_id, "".join(parts)
            header = line[1:].split()
            seq_id = header[0] if header else ""
            parts = []
        elif seq_id is None:
            if line.strip():
                raise ValueError(f"line {lineno}: sequence data before the first '>' header")
        else:
            chunk = line.strip()
            parts.append(chunk.upper() if fold_case else chunk)
    if seq_id is not None:
        yield seq_id, "".join(parts)


def read_fasta_text(text: str, fold_case: bool = False) -> list[tuple[str, str]]:
    return list(read_fasta(io.StringIO(text), fold_case))


def shortest_accepted_length(dfa: Dfa) -> Optional[int]:
    """Length of the shortest accepted string, or ``None`` for the empty language."""
    depth = {dfa.start: 0}
    queue = deque([dfa.start])
    while queue:
        q = queue.popleft()
        if q in dfa.accepting:
            return depth[q]
        for t in dfa.delta[q]:
            if t not in depth:
                depth[t] = depth[q] + 1
                queue.append(t)
    return None


def has_suffix_semantics(dfa: Dfa) -> bool:
    """True iff the language ``L`` satisfies ``L == Sigma* L``.

    Equivalently, the language of every reachable state contains the language
    of the start state. Checked by one product sweep from all ``(start, q)``.
    """
    reach = {dfa.start}
    queue = deque([dfa.start])
    while queue:
        for t in dfa.delta[queue.popleft()]:
            if t not in reach:
                reach.add(t)
                queue.append(t)
    seen = {(dfa.start, q) for q in reach}
    queue = deque(seen)
    while queue:
        p, q = queue.popleft()
        if p in dfa.accepting and q not in dfa.accepting:
            return False
        for np_, nq in zip(dfa.delta[p], dfa.delta[q]):
            if (np_, nq) not in seen:
                seen.add((np_, nq))
                queue.append((np_, nq))
    return True
