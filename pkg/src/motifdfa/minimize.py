"""DFA minimization, language equivalence and isomorphism.

These routines never look at how a DFA was produced, so they serve as an
independent check on the subset construction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .automata import Dfa


@dataclass(frozen=True)
class StatePartition:
    block_of: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        for b, members in enumerate(self.blocks):
            if not members:
                raise ValueError(f"block {b} is empty")
            for q in members:
                if self.block_of[q] != b:
                    raise ValueError(f"state {q} is in block {b} but block_of says {self.block_of[q]}")
        if sum(len(m) for m in self.blocks) != len(self.block_of):
            raise ValueError("blocks do not partition the states")

    def __len__(self) -> int:
        return len(self.blocks)


def reachable_states(dfa: Dfa) -> list[int]:
    """States reachable from the start, in BFS order (symbols by rank)."""
    seen = {dfa.start}
    order = [dfa.start]
    i = 0
    while i < len(order):
        for t in dfa.delta[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def coarsest_partition(dfa: Dfa) -> StatePartition:
    """Hopcroft's partition refinement over all states of ``dfa``.

    The result groups together exactly the pairs of language-equivalent
    states. Block ids are assigned by the smallest member state.
    """
    n, k = dfa.n_states, len(dfa.alphabet)
    inverse = [[[] for _ in range(n)] for _ in range(k)]
    for p in range(n):
        for a, q in enumerate(dfa.delta[p]):
            inverse[a][q].append(p)

    accepting = set(dfa.accepting)
    rejecting = set(range(n)) - accepting
    blocks: list[set[int]] = [b for b in (accepting, rejecting) if b]
    block_of = [0] * n
    for b, members in enumerate(blocks):
        for q in members:
            block_of[q] = b

    # splitters are (block id, symbol); seeding with the smaller initial block suffices
    pending: set[tuple[int, int]] = set()
    if len(blocks) == 2:
        smaller = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        pending = {(smaller, a) for a in range(k)}
    work = deque(sorted(pending))

    while work:
        splitter = work.popleft()
        pending.discard(splitter)
        b, a = splitter
        predecessors: set[int] = set()
        for q in blocks[b]:
            predecessors.update(inverse[a][q])
        touched: dict[int, set[int]] = {}
        for p in predecessors:
            touched.setdefault(block_of[p], set()).add(p)
        for c in sorted(touched):
            inside = touched[c]
            if len(inside) == len(blocks[c]):
                continue
            outside = blocks[c] - inside
            blocks[c] = inside
            new = len(blocks)
            blocks.append(outside)
            for q in outside:
                block_of[q] = new
            for sym in range(k):
                if (c, sym) in pending:
                    pending.add((new, sym))
                    work.append((new, sym))
                else:
                    keep = c if len(inside) <= len(outside) else new
                    pending.add((keep, sym))
                    work.append((keep, sym))

    ordered = sorted(blocks, key=min)
    renumber = {min(members): i for i, members in enumerate(ordered)}
    final_block_of = [renumber[min(blocks[block_of[q]])] for q in range(n)]
    return StatePartition(tuple(final_block_of), tuple(frozenset(m) for m in ordered))


def _restrict_to_reachable(dfa: Dfa) -> Dfa:
    order = reachable_states(dfa)
    if len(order) == dfa.n_states and order == list(range(dfa.n_states)):
        return dfa
    new = {old: i for i, old in enumerate(order)}
    return Dfa(
        dfa.alphabet,
        len(order),
        tuple(tuple(new[t] for t in dfa.delta[old]) for old in order),
        0,
        frozenset(new[q] for q in dfa.accepting if q in new),
    )


def minimize(dfa: Dfa) -> Dfa:
    """Return the minimal total DFA for the language of ``dfa``, states in BFS order."""
    reach = _restrict_to_reachable(dfa)
    part = coarsest_partition(reach)
    block_of = part.block_of
    quotient_start = block_of[reach.start]
    rep = [min(members) for members in part.blocks]

    # BFS over blocks from the start block fixes the output numbering
    order = [quotient_start]
    new = {quotient_start: 0}
    i = 0
    while i < len(order):
        for t in reach.delta[rep[order[i]]]:
            bt = block_of[t]
            if bt not in new:
                new[bt] = len(order)
                order.append(bt)
        i += 1
    rows = tuple(tuple(new[block_of[t]] for t in reach.delta[rep[b]]) for b in order)
    accepting = frozenset(new[b] for b in order if rep[b] in reach.accepting)
    return Dfa(dfa.alphabet, len(order), rows, 0, accepting)


def is_minimal(dfa: Dfa) -> bool:
    if len(reachable_states(dfa)) != dfa.n_states:
        return False
    return len(coarsest_partition(dfa)) == dfa.n_states


class Equivalence(NamedTuple):
    equivalent: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.equivalent


def _check_alphabets(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise ValueError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")


def equivalent(a: Dfa, b: Dfa) -> Equivalence:
    """Hopcroft-Karp language equivalence with union-find.

    On failure the witness is a shortest string accepted by exactly one of
    the two automata, ties broken by symbol rank.
    """
    _check_alphabets(a, b)
    k = len(a.alphabet)
    # states of b are offset by a.n_states in the shared union-find
    parent = list(range(a.n_states + b.n_states))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    off = a.n_states
    parent[find(b.start + off)] = find(a.start)
    queue = deque([(a.start, b.start)])
    while queue:
        p, q = queue.popleft()
        if (p in a.accepting) != (q in b.accepting):
            return Equivalence(False, _shortest_distinguishing(a, b))
        for sym in range(k):
            np_, nq = a.delta[p][sym], b.delta[q][sym]
            rp, rq = find(np_), find(nq + off)
            if rp != rq:
                parent[rq] = rp
                queue.append((np_, nq))
    return Equivalence(True)


def _shortest_distinguishing(a: Dfa, b: Dfa) -> str:
    symbols = a.alphabet.symbols
    start = (a.start, b.start)
    back: dict[tuple[int, int], Optional[tuple[tuple[int, int], int]]] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in a.accepting) != (q in b.accepting):
            out = []
            while back[pair] is not None:
                pair, sym = back[pair]
                out.append(symbols[sym])
            return "".join(reversed(out))
        for sym in range(len(symbols)):
            nxt = (a.delta[p][sym], b.delta[q][sym])
            if nxt not in back:
                back[nxt] = (pair, sym)
                queue.append(nxt)
    raise AssertionError("automata are equivalent")


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """True iff a bijection of states maps start, acceptance and transitions of ``a`` onto ``b``.

    Both automata should be accessible; unreachable states can never be paired.
    """
    _check_alphabets(a, b)
    if a.n_states != b.n_states:
        return False
    fwd = {a.start: b.start}
    bwd = {b.start: a.start}
    queue = deque([a.start])
    while queue:
        p = queue.popleft()
        q = fwd[p]
        if (p in a.accepting) != (q in b.accepting):
            return False
        for np_, nq in zip(a.delta[p], b.delta[q]):
            seen_p, seen_q = fwd.get(np_), bwd.get(nq)
            if seen_p is None and seen_q is None:
                fwd[np_] = nq
                bwd[nq] = np_
                queue.append(np_)
            elif seen_p != nq or seen_q != np_:
                return False
    return len(fwd) == a.n_states
