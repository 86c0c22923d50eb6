"""Comparable-vertex elimination and color reinsertion.

Two nonadjacent vertices u, v with N(u) subseteq N(v) have the same chromatic
behavior: u can be deleted and later recolored with v's color. Iterating this
to a fixed point yields a core with the same chromatic number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ReinsertionConflict
from .graph import Graph, bits, induced_subgraph


@dataclass(frozen=True)
class ReductionTrace:
    n_original: int
    steps: tuple[tuple[int, int], ...]  # (removed, dominator) original ids, removal order
    core_vertices: tuple[int, ...]      # core index -> original id


def find_comparable_pair(g: Graph) -> tuple[int, int] | None:
    """Nonadjacent (u, v) with N(u) subseteq N(v), smallest u then smallest v."""
    for u in range(g.n):
        ru = g.rows[u]
        for v in range(g.n):
            if v == u or (ru >> v) & 1:
                continue
            if ru & ~g.rows[v] == 0:
                return u, v
    return None


def reduce_to_core(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Delete dominated vertices until no comparable pair remains."""
    current = g
    to_orig = tuple(range(g.n))
    steps: list[tuple[int, int]] = []
    while True:
        pair = find_comparable_pair(current)
        if pair is None:
            break
        u, v = pair
        steps.append((to_orig[u], to_orig[v]))
        keep = [w for w in range(current.n) if w != u]
        current, local = induced_subgraph(current, keep)
        to_orig = tuple(to_orig[w] for w in local)
    return current, ReductionTrace(g.n, tuple(steps), to_orig)


def reinsert_colors(g: Graph, core_coloring, trace: ReductionTrace):
    """Extend a proper coloring of the core to the original graph.

    Removals are replayed in reverse; each vertex takes its dominator's color,
    which is proper because the dominator's neighborhood covered its own at
    removal time. Raises ReinsertionConflict if the trace is corrupt.
    """
    from .coloring import Coloring  # local import to keep module layers acyclic

    if g.n != trace.n_original:
        raise ReinsertionConflict(
            f"trace is for n={trace.n_original}, graph has n={g.n}"
        )
    assigned: dict[int, int] = {
        orig: core_coloring.colors[ci] for ci, orig in enumerate(trace.core_vertices)
    }
    for removed, dominator in reversed(trace.steps):
        if dominator not in assigned:
            raise ReinsertionConflict(
                f"dominator {dominator} uncolored when reinserting {removed}"
            )
        color = assigned[dominator]
        for w in bits(g.rows[removed]):
            if assigned.get(w) == color:
                raise ReinsertionConflict(
                    f"vertex {removed} would clash with neighbor {w} on color {color}"
                )
        assigned[removed] = color
    colors = tuple(assigned[v] for v in range(g.n))
    return Coloring(colors, core_coloring.k)
