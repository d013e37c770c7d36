"""Generalized strings and their simple NFAs.

A generalized string is a sequence of non-empty symbol sets; a plain string
``s`` matches it when ``len(s) == len(g)`` and every ``s[i]`` lies in
``g[i]``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .automata import Alphabet, ForeignSymbolError, Nfa

DNA = Alphabet("ACGT")

IUPAC_CODES = {
    "A": "A",
    "C": "C",
    "G": "G",
    "T": "T",
    "R": "AG",
    "Y": "CT",
    "S": "CG",
    "W": "AT",
    "K": "GT",
    "M": "AC",
    "B": "CGT",
    "D": "AGT",
    "H": "ACT",
    "V": "ACG",
    "N": "ACGT",
}

MAX_SET_SIZE = 20


class Mode(enum.Enum):
    LITERAL = "literal"
    IUPAC_DNA = "iupac"


class PatternSyntaxError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        self.reason = message
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset} in {text!r}")


@dataclass(frozen=True)
class GeneralizedString:
    alphabet: Alphabet
    positions: tuple[frozenset[str], ...]

    def __post_init__(self):
        for i, pos in enumerate(self.positions):
            if not pos:
                raise ValueError(f"position {i + 1} is empty")
            foreign = pos - set(self.alphabet.symbols)
            if foreign:
                raise ValueError(f"position {i + 1} has symbols {sorted(foreign)} outside the alphabet")

    @classmethod
    def from_sets(cls, alphabet: Alphabet, sets: Iterable[Iterable[str]]) -> "GeneralizedString":
        return cls(alphabet, tuple(frozenset(s) for s in sets))

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, i: int) -> frozenset[str]:
        return self.positions[i]

    def sorted_position(self, i: int) -> str:
        rank = self.alphabet.rank
        return "".join(sorted(self.positions[i], key=rank.__getitem__))

    def __str__(self) -> str:
        parts = []
        for i in range(len(self)):
            syms = self.sorted_position(i)
            parts.append(syms if len(syms) == 1 else f"[{syms}]")
        return "".join(parts)

    def set_notation(self) -> str:
        """Render as ``{A}{A,B}...``."""
        return "".join("{" + ",".join(self.sorted_position(i)) + "}" for i in range(len(self)))


def parse_generalized_string(
    text: str, alphabet: Optional[Alphabet] = None, mode: Mode = Mode.LITERAL
) -> GeneralizedString:
    """Parse ``A[AB]B`` style patterns.

    In IUPAC mode the alphabet is always ACGT, input is upper-cased and
    degenerate codes (``R``, ``N``, ...) expand to their base sets, also
    inside brackets.
    """
    if mode is Mode.IUPAC_DNA:
        alphabet = DNA
        text = text.upper()
    elif alphabet is None:
        raise ValueError("LITERAL patterns need an explicit alphabet")
    if not text:
        raise PatternSyntaxError("empty pattern", text, 0)

    def expand(c: str, offset: int) -> frozenset[str]:
        if mode is Mode.IUPAC_DNA:
            if c not in IUPAC_CODES:
                raise PatternSyntaxError(f"unknown IUPAC code {c!r}", text, offset)
            return frozenset(IUPAC_CODES[c])
        if c not in alphabet:
            raise PatternSyntaxError(f"symbol {c!r} not in alphabet {str(alphabet)!r}", text, offset)
        return frozenset(c)

    positions = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "[":
            close = text.find("]", i + 1)
            if close < 0:
                raise PatternSyntaxError("unbalanced '['", text, i)
            group = text[i + 1 : close]
            if not group:
                raise PatternSyntaxError("empty bracket group", text, i)
            members: set[str] = set()
            seen: set[str] = set()
            for j, g in enumerate(group, start=i + 1):
                if g == "[":
                    raise PatternSyntaxError("nested '['", text, j)
                if g in seen:
                    raise PatternSyntaxError(f"duplicate symbol {g!r} in group", text, j)
                seen.add(g)
                members |= expand(g, j)
            positions.append(frozenset(members))
            i = close + 1
        elif c == "]":
            raise PatternSyntaxError("unbalanced ']'", text, i)
        else:
            positions.append(expand(c, i))
            i += 1
    return GeneralizedString(alphabet, tuple(positions))


def matches(s: str, g: GeneralizedString) -> bool:
    for i, c in enumerate(s):
        if c not in g.alphabet:
            raise ForeignSymbolError(c, i + 1)
    return len(s) == len(g) and all(c in pos for c, pos in zip(s, g.positions))


def nfa_from_genstring(g: GeneralizedString) -> Nfa:
    """Chain NFA ``0 -> 1 -> ... -> len(g)``; state ``i`` means ``i`` positions matched."""
    n = len(g)
    if n == 0:
        raise ValueError("cannot build an automaton from an empty generalized string")
    alphabet = g.alphabet
    delta = []
    for q in range(n + 1):
        if q < n:
            delta.append(tuple(
                frozenset([q + 1]) if sym in g[q] else frozenset() for sym in alphabet.symbols
            ))
        else:
            delta.append(tuple(frozenset() for _ in alphabet.symbols))
    return Nfa(
        alphabet,
        n + 1,
        tuple(delta),
        frozenset([0]),
        frozenset([n]),
        tuple(str(q) for q in range(n + 1)),
    )


@dataclass(frozen=True)
class LevelState:
    """Level-``level`` state: the last ``level`` symbols read match a prefix of every pattern in ``subset``."""

    subset: frozenset[int]
    level: int

    def label(self) -> str:
        return "({" + ",".join(map(str, sorted(self.subset))) + "}," + str(self.level) + ")"


class _Bottom:
    """Marker returned by :func:`parent` for top-level states."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = _Bottom()


def parent(
    q: LevelState, sym: str, patterns: Sequence[GeneralizedString]
) -> Union[LevelState, None, _Bottom]:
    """Parent of ``q`` under ``sym``: patterns of ``q`` whose position ``q.level`` admits ``sym``.

    Returns ``BOTTOM`` on level 0 and ``None`` when no pattern survives.
    """
    if q.level == 0:
        return BOTTOM
    k = q.level
    kept = frozenset(h for h in q.subset if sym in patterns[h][k - 1])
    if not kept:
        return None
    return LevelState(kept, k - 1)


def dedupe_patterns(patterns: Iterable[GeneralizedString]) -> list[GeneralizedString]:
    out: list[GeneralizedString] = []
    seen = set()
    for g in patterns:
        key = (g.alphabet, g.positions)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def _check_pattern_set(patterns: Sequence[GeneralizedString]) -> tuple[Alphabet, int]:
    if not patterns:
        raise ValueError("empty pattern set")
    if len(patterns) > MAX_SET_SIZE:
        raise ValueError(f"{len(patterns)} patterns exceed the limit of {MAX_SET_SIZE}")
    alphabet, length = patterns[0].alphabet, len(patterns[0])
    for i, g in enumerate(patterns):
        if g.alphabet != alphabet:
            raise ValueError(f"pattern {i} uses alphabet {g.alphabet}, expected {alphabet}")
        if len(g) != length:
            raise ValueError(f"pattern {i} has length {len(g)}, expected {length}")
    if length == 0:
        raise ValueError("cannot build an automaton from empty generalized strings")
    return alphabet, length


@dataclass(frozen=True)
class LevelConstruction:
    """Output of the level-wise builder together with its bookkeeping."""

    nfa: Nfa
    patterns: tuple[GeneralizedString, ...]
    levels: tuple[tuple[LevelState, ...], ...]
    iterations: int

    @property
    def level_sizes(self) -> list[int]:
        return [len(level) for level in self.levels]


def build_levels(patterns: Iterable[GeneralizedString]) -> LevelConstruction:
    """Top-down level construction for a set of equal-length generalized strings.

    Starting from the single accepting state (all patterns, level ``l``), each
    level ``k`` is generated from the parents of level ``k+1``. Start states
    are level 0; no self-loops are added. Duplicate patterns are dropped first,
    keeping the first occurrence. Subsets are interned as bitmasks.
    """
    pats = dedupe_patterns(patterns)
    alphabet, length = _check_pattern_set(pats)
    symbols = alphabet.symbols
    # column[k][a] = bitmask of patterns whose position k (0-based) admits symbol a
    column = [
        [sum(1 << h for h, g in enumerate(pats) if sym in g[k]) for sym in symbols]
        for k in range(length)
    ]

    levels: list[list[int]] = [[] for _ in range(length + 1)]
    levels[length] = [(1 << len(pats)) - 1]
    # edges[k] holds (index in level k, rank, index in level k+1)
    edges: list[list[tuple[int, int, int]]] = [[] for _ in range(length)]
    iterations = 0
    for k in range(length - 1, -1, -1):
        index: dict[int, int] = {}
        for child_i, child in enumerate(levels[k + 1]):
            for a in range(len(symbols)):
                iterations += 1
                h = child & column[k][a]
                if not h:
                    continue
                i = index.get(h)
                if i is None:
                    i = index[h] = len(levels[k])
                    levels[k].append(h)
                edges[k].append((i, a, child_i))

    offsets = [0]
    for level in levels:
        offsets.append(offsets[-1] + len(level))
    n = offsets[-1]
    rows = [[set() for _ in symbols] for _ in range(n)]
    for k in range(length):
        for i, a, j in edges[k]:
            rows[offsets[k] + i][a].add(offsets[k + 1] + j)

    def unpack(mask: int) -> frozenset[int]:
        return frozenset(h for h in range(len(pats)) if mask >> h & 1)

    level_states = tuple(
        tuple(LevelState(unpack(mask), k) for mask in level) for k, level in enumerate(levels)
    )
    nfa = Nfa(
        alphabet,
        n,
        tuple(tuple(frozenset(c) for c in row) for row in rows),
        frozenset(range(offsets[0], offsets[1])),
        frozenset([n - 1]),
        tuple(s.label() for level in level_states for s in level),
    )
    return LevelConstruction(nfa, tuple(pats), level_states, iterations)


def nfa_from_genstring_set(patterns: Iterable[GeneralizedString]) -> Nfa:
    return build_levels(patterns).nfa


def read_motif_lines(
    lines: Iterable[str], alphabet: Optional[Alphabet], mode: Mode
) -> list[GeneralizedString]:
    """Parse a motif-set file: one pattern per line, ``#`` comments and blank lines skipped."""
    patterns = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            patterns.append(parse_generalized_string(line, alphabet, mode))
        except PatternSyntaxError as exc:
            raise PatternSyntaxError(f"line {lineno}: {exc.reason}", exc.text, exc.offset) from None
    if not patterns:
        raise ValueError("motif file contains no patterns")
    lengths = {len(g) for g in patterns}
    if len(lengths) > 1:
        raise ValueError(f"motif file patterns have different lengths {sorted(lengths)}")
    return patterns
