"""Grid NFA for a generalized consensus string and its Hamming neighborhood."""
from __future__ import annotations

from typing import NamedTuple

from .automata import ForeignSymbolError, Nfa
from .genstring import GeneralizedString


class GridState(NamedTuple):
    """``errors_left`` mismatches must still occur in the ``len(g) - consumed`` symbols to come."""

    errors_left: int
    consumed: int

    def label(self) -> str:
        return f"({self.errors_left},{self.consumed})"


def hamming_distance(s: str, g: GeneralizedString) -> int:
    if len(s) != len(g):
        raise ValueError(f"length mismatch: string has {len(s)}, pattern has {len(g)}")
    for i, c in enumerate(s):
        if c not in g.alphabet:
            raise ForeignSymbolError(c, i + 1)
    return sum(c not in pos for c, pos in zip(s, g.positions))


def grid_states(g: GeneralizedString, d_max: int, prune: bool = True) -> list[GridState]:
    """Grid states ordered by ``consumed`` then ``errors_left``.

    Without pruning this is every ``(e, k)`` with ``e <= d_max`` and
    ``e <= len(g) - k``. A position whose set is the whole alphabet can never
    be a mismatch, so with pruning ``e`` is further capped by the number of
    such mismatchable positions after ``k``. The pruned grid is exactly the
    trim part of the unpruned one.
    """
    n = len(g)
    budget = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        if prune:
            budget[k] = budget[k + 1] + (len(g[k]) < len(g.alphabet))
        else:
            budget[k] = n - k
    return [GridState(e, k) for k in range(n + 1) for e in range(min(d_max, budget[k]) + 1)]


def grid_size(length: int, d_max: int) -> int:
    """State count of the unpruned grid."""
    return sum(min(d_max, length - k) + 1 for k in range(length + 1))


def nfa_from_hamming(g: GeneralizedString, d_max: int, prune: bool = True) -> Nfa:
    """NFA accepting exactly the strings of length ``len(g)`` within Hamming distance ``d_max`` of ``g``.

    A match at position ``k+1`` moves ``(e, k)`` to ``(e, k+1)``; a mismatch
    spends one error and moves to ``(e-1, k+1)``. Targets outside the grid are
    dropped, so a mismatch with no errors left is a dead end. See
    :func:`grid_states` for ``prune``; only the pruned grid is guaranteed to
    be simple when ``g`` has full-alphabet positions.
    """
    n = len(g)
    if n == 0:
        raise ValueError("cannot build an automaton from an empty generalized string")
    if d_max < 0:
        raise ValueError(f"d_max must be non-negative, got {d_max}")
    states = grid_states(g, d_max, prune)
    index = {s: i for i, s in enumerate(states)}

    def z(e: int, k: int) -> frozenset[int]:
        i = index.get((e, k))
        return frozenset() if i is None else frozenset([i])

    delta = []
    for e, k in states:
        if k == n:
            delta.append(tuple(frozenset() for _ in g.alphabet.symbols))
            continue
        delta.append(tuple(
            z(e, k + 1) if sym in g[k] else z(e - 1, k + 1) for sym in g.alphabet.symbols
        ))
    return Nfa(
        g.alphabet,
        len(states),
        tuple(delta),
        frozenset(i for i, s in enumerate(states) if s.consumed == 0),
        frozenset([index[(0, n)]]),
        tuple(s.label() for s in states),
    )


def mismatch_edges(g: GeneralizedString, d_max: int, prune: bool = True) -> dict[tuple[int, int], str]:
    """Map each mismatch edge ``(p, q)`` of ``nfa_from_hamming(g, d_max, prune)`` to the symbols it excludes.

    Used by DOT export to draw ``not:A`` instead of listing the complement.
    """
    states = grid_states(g, d_max, prune)
    index = {s: i for i, s in enumerate(states)}
    out = {}
    for i, (e, k) in enumerate(states):
        j = index.get((e - 1, k + 1))
        if j is not None and len(g[k]) < len(g.alphabet):
            out[(i, j)] = g.sorted_position(k)
    return out
