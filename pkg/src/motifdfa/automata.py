"""Core automaton types: alphabets, NFAs with start sets, total DFAs.

States are plain integers ``0..n_states-1``. Transition tables are stored
row-major, one row per state and one column per symbol rank, so iteration
order (and hence every derived numbering) is deterministic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence, Union

MAX_ALPHABET = 64
MAX_ENUM_LEN = 12
MAX_ENUM_STRINGS = 2 ** 24


class ForeignSymbolError(ValueError):
    """A character outside the automaton's alphabet was read."""

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"symbol {char!r} at position {position} is not in the alphabet")


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    rank: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must not be empty")
        if len(symbols) > MAX_ALPHABET:
            raise ValueError(f"alphabet has {len(symbols)} symbols, limit is {MAX_ALPHABET}")
        for s in symbols:
            if len(s) != 1 or not s.isprintable() or s.isspace():
                raise ValueError(f"invalid alphabet symbol {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {''.join(symbols)!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "rank", {s: i for i, s in enumerate(symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.rank

    def __str__(self) -> str:
        return "".join(self.symbols)

    def encode(self, s: str) -> list[int]:
        """Map a string to symbol ranks, raising on the first foreign character."""
        rank = self.rank
        out = []
        for i, c in enumerate(s):
            r = rank.get(c)
            if r is None:
                raise ForeignSymbolError(c, i + 1)
            out.append(r)
        return out


@dataclass(frozen=True)
class Nfa:
    """NFA without epsilon moves. ``delta[q][a]`` is the successor set of ``q`` on rank ``a``."""

    alphabet: Alphabet
    n_states: int
    delta: tuple[tuple[frozenset[int], ...], ...]
    starts: frozenset[int]
    accepting: frozenset[int]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        n, k = self.n_states, len(self.alphabet)
        if len(self.delta) != n or any(len(row) != k for row in self.delta):
            raise ValueError(f"transition table must be {n} x {k}")
        for row in self.delta:
            for targets in row:
                if any(not 0 <= t < n for t in targets):
                    raise ValueError(f"transition target out of range in {sorted(targets)}")
        for name in ("starts", "accepting"):
            if any(not 0 <= q < n for q in getattr(self, name)):
                raise ValueError(f"{name} contains a state index >= {n}")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must have one entry per state")

    @classmethod
    def from_edges(
        cls,
        alphabet: Alphabet,
        n_states: int,
        edges: Iterable[tuple[int, str, int]],
        starts: Iterable[int],
        accepting: Iterable[int],
        labels: Optional[Sequence[str]] = None,
    ) -> "Nfa":
        """Build from ``(source, symbol, target)`` triples."""
        rows = [[set() for _ in alphabet.symbols] for _ in range(n_states)]
        for p, sym, q in edges:
            rows[p][alphabet.rank[sym]].add(q)
        return cls(
            alphabet,
            n_states,
            tuple(tuple(frozenset(c) for c in row) for row in rows),
            frozenset(starts),
            frozenset(accepting),
            tuple(labels) if labels is not None else None,
        )

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(source, rank, target)`` in table order."""
        for p, row in enumerate(self.delta):
            for a, targets in enumerate(row):
                for q in sorted(targets):
                    yield p, a, q

    @property
    def n_transitions(self) -> int:
        return sum(len(t) for row in self.delta for t in row)

    def step(self, states: Iterable[int], a: int) -> frozenset[int]:
        out: set[int] = set()
        for q in states:
            out |= self.delta[q][a]
        return frozenset(out)

    def label(self, q: int) -> str:
        return self.labels[q] if self.labels is not None else str(q)


@dataclass(frozen=True)
class Dfa:
    """Total DFA. ``delta[q][a]`` is the unique successor of ``q`` on rank ``a``."""

    alphabet: Alphabet
    n_states: int
    delta: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]
    subset_labels: Optional[tuple[frozenset[int], ...]] = None

    def __post_init__(self):
        n, k = self.n_states, len(self.alphabet)
        if n < 1:
            raise ValueError("a DFA needs at least one state")
        if len(self.delta) != n or any(len(row) != k for row in self.delta):
            raise ValueError(f"transition table must be total, {n} x {k}")
        if any(not 0 <= t < n for row in self.delta for t in row):
            raise ValueError("transition target out of range")
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError(f"accepting contains a state index >= {n}")
        if self.subset_labels is not None and len(self.subset_labels) != n:
            raise ValueError("subset_labels must have one entry per state")

    def run(self, s: str, state: Optional[int] = None) -> int:
        q = self.start if state is None else state
        for a in self.alphabet.encode(s):
            q = self.delta[q][a]
        return q


Automaton = Union[Nfa, Dfa]


def _successors(nfa: Nfa, q: int) -> set[int]:
    out: set[int] = set()
    for targets in nfa.delta[q]:
        out |= targets
    return out


def accessible_states(nfa: Nfa) -> set[int]:
    seen = set(nfa.starts)
    queue = deque(sorted(seen))
    while queue:
        for r in _successors(nfa, queue.popleft()):
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def coaccessible_states(nfa: Nfa) -> set[int]:
    """States whose language is non-empty, found by walking edges backwards from ``F``."""
    preds: list[set[int]] = [set() for _ in range(nfa.n_states)]
    for p, _, q in nfa.edges():
        preds[q].add(p)
    seen = set(nfa.accepting)
    queue = deque(sorted(seen))
    while queue:
        for p in preds[queue.popleft()]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def trim(nfa: Nfa) -> Nfa:
    """Restrict to useful states, keeping their relative order."""
    keep = sorted(accessible_states(nfa) & coaccessible_states(nfa))
    new = {old: i for i, old in enumerate(keep)}
    delta = tuple(
        tuple(frozenset(new[t] for t in targets if t in new) for targets in nfa.delta[old])
        for old in keep
    )
    labels = tuple(nfa.labels[old] for old in keep) if nfa.labels is not None else None
    return Nfa(
        nfa.alphabet,
        len(keep),
        delta,
        frozenset(new[q] for q in nfa.starts if q in new),
        frozenset(new[q] for q in nfa.accepting if q in new),
        labels,
    )


def is_trim(nfa: Nfa) -> bool:
    everything = set(range(nfa.n_states))
    return accessible_states(nfa) == everything and coaccessible_states(nfa) == everything


class Overlap(NamedTuple):
    """Two distinct states whose languages share ``witness``."""

    p: int
    q: int
    witness: str


def languages_disjointness_report(nfa: Nfa) -> Optional[Overlap]:
    """Check that the state languages of a trim NFA are pairwise disjoint.

    Returns ``None`` when they are. Otherwise returns the overlapping pair
    ``(p, q)`` with ``p < q`` that is smallest in lexicographic order, together
    with a shortest common string (ties broken by symbol rank).

    ``L(p) & L(q)`` is non-empty iff the pair ``(p, q)`` reaches ``F x F`` in
    the product graph, so a single backward sweep from ``F x F`` marks every
    overlapping pair at once.
    """
    assert is_trim(nfa), "languages_disjointness_report requires a trim NFA"
    n, k = nfa.n_states, len(nfa.alphabet)
    # pred[a][q] = states p with q in delta(p, a)
    pred = [[[] for _ in range(n)] for _ in range(k)]
    for p, a, q in nfa.edges():
        pred[a][q].append(p)

    overlapping = {(f, g) for f in nfa.accepting for g in nfa.accepting}
    queue = deque(sorted(overlapping))
    while queue:
        x, y = queue.popleft()
        for a in range(k):
            for px in pred[a][x]:
                for py in pred[a][y]:
                    pair = (px, py)
                    if pair not in overlapping:
                        overlapping.add(pair)
                        queue.append(pair)

    bad = sorted((p, q) for p, q in overlapping if p < q)
    if not bad:
        return None
    p, q = bad[0]
    return Overlap(p, q, _shortest_common_string(nfa, p, q))


def _shortest_common_string(nfa: Nfa, p: int, q: int) -> str:
    symbols = nfa.alphabet.symbols
    back: dict[tuple[int, int], Optional[tuple[tuple[int, int], int]]] = {(p, q): None}
    queue = deque([(p, q)])
    while queue:
        pair = queue.popleft()
        x, y = pair
        if x in nfa.accepting and y in nfa.accepting:
            out = []
            while back[pair] is not None:
                pair, a = back[pair]
                out.append(symbols[a])
            return "".join(reversed(out))
        for a in range(len(symbols)):
            for nx in sorted(nfa.delta[x][a]):
                for ny in sorted(nfa.delta[y][a]):
                    if (nx, ny) not in back:
                        back[(nx, ny)] = (pair, a)
                        queue.append((nx, ny))
    raise AssertionError(f"states {p} and {q} share no string")


@dataclass(frozen=True)
class SimplicityReport:
    accessible: bool
    coaccessible: bool
    overlap: Optional[Overlap]

    @property
    def disjoint(self) -> Optional[bool]:
        """``None`` when the check was skipped because the NFA is not trim."""
        if not (self.accessible and self.coaccessible):
            return None
        return self.overlap is None

    @property
    def simple(self) -> bool:
        return self.accessible and self.coaccessible and self.overlap is None

    def __bool__(self) -> bool:
        return self.simple

    def failures(self) -> list[str]:
        out = []
        if not self.accessible:
            out.append("not all states are accessible")
        if not self.coaccessible:
            out.append("some state languages are empty")
        if self.overlap is not None:
            p, q, s = self.overlap
            out.append(f"languages of states {p} and {q} share {s!r}")
        return out


def is_simple(nfa: Nfa) -> SimplicityReport:
    everything = set(range(nfa.n_states))
    acc = accessible_states(nfa) == everything
    coacc = coaccessible_states(nfa) == everything
    overlap = languages_disjointness_report(nfa) if acc and coacc else None
    return SimplicityReport(acc, coacc, overlap)


def add_start_self_loops(nfa: Nfa) -> Nfa:
    """Let every start state loop on every symbol, turning "matches" into "has a matching suffix"."""
    delta = tuple(
        tuple(t | {q} for t in row) if q in nfa.starts else row
        for q, row in enumerate(nfa.delta)
    )
    return Nfa(nfa.alphabet, nfa.n_states, delta, nfa.starts, nfa.accepting, nfa.labels)


def has_start_reentry(nfa: Nfa) -> bool:
    """True if some transition enters a start state from a different state."""
    return any(q in nfa.starts and p != q for p, _, q in nfa.edges())


def nfa_accepts(nfa: Nfa, s: str) -> bool:
    current = nfa.starts
    for a in nfa.alphabet.encode(s):
        current = nfa.step(current, a)
        if not current:
            return False
    return not current.isdisjoint(nfa.accepting)


def dfa_accepts(dfa: Dfa, s: str) -> bool:
    return dfa.run(s) in dfa.accepting


def subset_construction(nfa: Nfa) -> Dfa:
    """Determinize, generating only subsets reachable from the start set.

    States are numbered in breadth-first discovery order with symbols taken in
    rank order; the start subset is state 0. The empty subset becomes an
    explicit dead state when reached.
    """
    if not nfa.starts:
        raise ValueError("NFA has no start states")
    k = len(nfa.alphabet)
    index: dict[frozenset[int], int] = {nfa.starts: 0}
    subsets = [nfa.starts]
    rows: list[tuple[int, ...]] = []
    i = 0
    while i < len(subsets):
        current = subsets[i]
        row = []
        for a in range(k):
            target = nfa.step(current, a)
            j = index.get(target)
            if j is None:
                j = index[target] = len(subsets)
                subsets.append(target)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(j for j, s in enumerate(subsets) if not s.isdisjoint(nfa.accepting))
    return Dfa(nfa.alphabet, len(subsets), tuple(rows), 0, accepting, tuple(subsets))


def enumerate_language(
    automaton: Automaton, max_len: int, start: Optional[int] = None
) -> set[str]:
    """All accepted strings of length at most ``max_len``, by exhaustive generation.

    ``start`` selects a single state to read from; by default the automaton's
    own start (set) is used.
    """
    k = len(automaton.alphabet)
    if max_len < 0 or max_len > MAX_ENUM_LEN or k ** max_len > MAX_ENUM_STRINGS:
        raise ValueError(
            f"refusing to enumerate {k}^{max_len} strings "
            f"(max_len <= {MAX_ENUM_LEN}, at most {MAX_ENUM_STRINGS} strings)"
        )
    symbols = automaton.alphabet.symbols
    out: set[str] = set()

    if isinstance(automaton, Dfa):
        dfa = automaton
        stack: list = [("", dfa.start if start is None else start)]
        while stack:
            prefix, q = stack.pop()
            if q in dfa.accepting:
                out.add(prefix)
            if len(prefix) < max_len:
                row = dfa.delta[q]
                stack.extend((prefix + symbols[a], row[a]) for a in range(k))
        return out

    nfa = automaton
    init = nfa.starts if start is None else frozenset([start])
    stack = [("", init)]
    while stack:
        prefix, states = stack.pop()
        if not states.isdisjoint(nfa.accepting):
            out.add(prefix)
        if len(prefix) < max_len:
            for a in range(k):
                nxt = nfa.step(states, a)
                if nxt:
                    stack.append((prefix + symbols[a], nxt))
    return out
