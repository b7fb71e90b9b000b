"""Best-first insertion search over freely reduced words.

One move inserts a relator variant (a cyclic rotation of a relator or its
inverse) at some position and freely reduces; every move costs 1 and the
goal is the empty word.  With heuristic parameters this is A* with a
consistent heuristic, without them plain uniform-cost search; either way
the first settlement of the goal is optimal within the length-cap regime.

The loop itself is deliberately plain Python -- all the per-node work
(insert, reduce, heuristic) happens in the selected backend, so the
compiled and pure variants share one set of search semantics.

Frontier layout: edge costs are 1 and the heuristic is consistent, so
f-values surface in nondecreasing order and the frontier can be an array
of buckets indexed by f instead of a heap.  Within one f-bucket states
are popped smallest h first (equivalently deepest first); consistency
makes any within-bucket order exact, and diving pays off when the
heuristic is sharp.  Ties beyond that are FIFO, so runs are deterministic.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .backend import ops


class SearchOutcome:
    """Raw result of one search run, before any certificate dressing."""

    __slots__ = ("cost", "path", "lower_bound", "nodes", "pushes",
                 "regime_empty", "stop_reason")

    def __init__(self, cost: Optional[int], path: Optional[List[Tuple[int, int]]],
                 lower_bound: Optional[int], nodes: int, pushes: int,
                 regime_empty: bool, stop_reason: str):
        self.cost = cost
        self.path = path            # [(pos, variant_index), ...] start -> empty
        self.lower_bound = lower_bound
        self.nodes = nodes
        self.pushes = pushes
        self.regime_empty = regime_empty
        self.stop_reason = stop_reason


def greedy_probe(start: bytes, variants: Sequence[bytes], *, len_cap: int,
                 node_budget: int, hparams) -> Optional[List[Tuple[int, int]]]:
    """Depth-first hunt for an expression of area exactly h(start).

    The admissible heuristic bounds the true area from below with no
    length-cap caveat (any expression is a move sequence, each move shifts
    h by at most 1, and h vanishes at the goal) -- so an expression whose
    area equals h(start) is unconditionally optimal.  This probe searches
    only the f = h(start) shell (children with g + h > h(start) are
    pruned), ordered by (h, length), and gives up after node_budget
    expansions; the caller falls back to the full search.
    """
    h0 = ops.heuristic(start, hparams)
    if h0 <= 0:
        return None
    visited = {start}
    path: List[Tuple[int, int]] = []
    budget = [node_budget]

    def dive(state: bytes, g: int) -> bool:
        if budget[0] <= 0:
            return False
        budget[0] -= 1
        children = ops.expand(state, variants, len_cap, hparams)
        ranked = sorted(range(len(children)),
                        key=lambda k: (children[k][3], len(children[k][0]), k))
        for k in ranked:
            child, pos, vidx, hc = children[k]
            if g + 1 + hc > h0 or child in visited:
                continue
            path.append((pos, vidx))
            if child == b"":
                return True
            visited.add(child)
            if dive(child, g + 1):
                return True
            path.pop()
        return False

    if dive(start, 0):
        return path
    return None


def run_search(start: bytes, variants: Sequence[bytes], *, len_cap: int,
               node_cap: int, push_cap: int, hparams,
               stop_at_bound: Optional[int] = None) -> SearchOutcome:
    """Search from `start` to the empty word; see module docstring.

    stop_at_bound halts as soon as the cheapest unsettled f reaches the
    bound: every cheaper state is settled by then, so the optimum is at
    least that f and the caller only wanted the inequality.
    """
    h0 = ops.heuristic(start, hparams)
    buckets: Dict[int, Dict[int, List[Tuple[bytes, int]]]] = {h0: {h0: [(start, 0)]}}
    cursor: Dict[Tuple[int, int], int] = {}
    remaining: Dict[int, int] = {h0: 1}
    minh: Dict[int, int] = {h0: h0}
    seen: Dict[bytes, int] = {start: 0}
    meta: Dict[bytes, Tuple[bytes, int, int]] = {}
    settled = set()
    fmax = h0
    f = h0
    nodes = pushes = 0

    while True:
        if remaining.get(f, 0) == 0:
            f += 1
            if f > fmax:
                return SearchOutcome(None, None, None, nodes, pushes,
                                     True, "frontier exhausted")
            continue
        hrow = buckets[f]
        h = minh[f]
        while True:
            row = hrow.get(h)
            i = cursor.get((f, h), 0)
            if row is not None and i < len(row):
                break
            h += 1
            minh[f] = h
        cursor[(f, h)] = i + 1
        remaining[f] -= 1
        state, g = row[i]
        if state in settled or seen.get(state) != g:
            continue
        if stop_at_bound is not None and f >= stop_at_bound:
            return SearchOutcome(None, None, f, nodes, pushes, False,
                                 "reached requested bound")
        settled.add(state)
        nodes += 1
        if state == b"":
            path: List[Tuple[int, int]] = []
            cur = state
            while cur != start:
                parent, pos, vidx = meta[cur]
                path.append((pos, vidx))
                cur = parent
            path.reverse()
            return SearchOutcome(g, path, None, nodes, pushes, False, "goal")
        if nodes >= node_cap:
            return SearchOutcome(None, None, f, nodes, pushes, False,
                                 "node cap")
        for child, pos, vidx, hc in ops.expand(state, variants, len_cap, hparams):
            gc = g + 1
            old = seen.get(child)
            if old is not None and old <= gc:
                continue
            seen[child] = gc
            meta[child] = (state, pos, vidx)
            fc = gc + hc
            frow = buckets.setdefault(fc, {})
            frow.setdefault(hc, []).append((child, gc))
            remaining[fc] = remaining.get(fc, 0) + 1
            if hc < minh.get(fc, hc + 1):
                minh[fc] = hc
            if fc > fmax:
                fmax = fc
            pushes += 1
            if pushes >= push_cap:
                return SearchOutcome(None, None, f, nodes, pushes, False,
                                     "push cap")
