"""Size report figure for the ``stats`` command."""
from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402


def plot_sizes(
    path: str,
    title: str,
    level_sizes: Optional[Sequence[int]],
    nfa_states: Optional[int],
    dfa_states: int,
    minimal_states: int,
) -> None:
    """Write a two-panel PNG/PDF/SVG: NFA states per level, and NFA/DFA/minimal counts."""
    panels = 2 if level_sizes else 1
    fig, axes = plt.subplots(1, panels, figsize=(4.5 * panels, 3.2), squeeze=False)
    axes = axes[0]

    if level_sizes:
        ax = axes[0]
        ax.bar(range(len(level_sizes)), level_sizes, color="#4c72b0")
        ax.set_xlabel("level (symbols consumed)")
        ax.set_ylabel("NFA states")
        ax.set_xticks(range(len(level_sizes)))
        for x, y in enumerate(level_sizes):
            ax.annotate(str(y), (x, y), ha="center", va="bottom", fontsize=8)

    ax = axes[-1]
    names = ["subset DFA", "minimal DFA"]
    values = [dfa_states, minimal_states]
    if nfa_states is not None:
        names.insert(0, "NFA")
        values.insert(0, nfa_states)
    colors = ["#8172b2", "#55a868", "#c44e52"][-len(values):]
    ax.bar(names, values, color=colors)
    ax.set_ylabel("states")
    for x, y in enumerate(values):
        ax.annotate(str(y), (x, y), ha="center", va="bottom", fontsize=8)

    for a in axes:
        a.yaxis.set_major_locator(MaxNLocator(integer=True))
        a.spines["top"].set_visible(False)
        a.spines["right"].set_visible(False)
    fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
