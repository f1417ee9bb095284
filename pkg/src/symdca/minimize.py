"""Accessibility, indistinguishability partitions and minimization."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .core import Fsa, Word, _check_state


@dataclass(frozen=True)
class Partition:
    block_of: Tuple[int, ...]
    num_blocks: int

    def blocks(self):
        out = [[] for _ in range(self.num_blocks)]
        for q, b in enumerate(self.block_of):
            out[b].append(q)
        return out

    def same_block(self, q, q2):
        return self.block_of[q] == self.block_of[q2]


def _canonical(labels) -> Partition:
    # number blocks by their smallest member
    ids = {}
    block_of = []
    for lab in labels:
        if lab not in ids:
            ids[lab] = len(ids)
        block_of.append(ids[lab])
    return Partition(tuple(block_of), len(ids))


@dataclass(frozen=True)
class AccessMap:
    """Shortest (then lexicographically least) access word for each reachable state."""

    words: Dict[int, Word]
    accessible: Tuple[bool, ...]
    order: Tuple[int, ...]  # reachable states in BFS discovery order

    def word(self, q) -> Word:
        return self.words[q]

    @property
    def all_accessible(self):
        return all(self.accessible)


def accessible_states(fsa: Fsa) -> AccessMap:
    # FIFO queue + symbols in index order yields shortlex-least words
    words = {fsa.initial: ()}
    order = [fsa.initial]
    queue = deque([fsa.initial])
    while queue:
        q = queue.popleft()
        for sigma, row in enumerate(fsa.transitions):
            nxt = row[q]
            if nxt not in words:
                words[nxt] = words[q] + (sigma,)
                order.append(nxt)
                queue.append(nxt)
    flags = tuple(q in words for q in range(fsa.num_states))
    return AccessMap(words, flags, tuple(order))


def refine_partition(fsa: Fsa) -> Partition:
    """Coarsest output-respecting, transition-closed partition (Moore refinement).

    Two states share a block exactly when no word distinguishes them.  Runs
    over all states, reachable or not.
    """
    part = _canonical(fsa.output_map)
    while True:
        sigs = [
            (part.block_of[q],) + tuple(part.block_of[row[q]] for row in fsa.transitions)
            for q in range(fsa.num_states)
        ]
        new = _canonical(sigs)
        if new.num_blocks == part.num_blocks:
            return new
        part = new


def hopcroft_partition(fsa: Fsa) -> Partition:
    """Worklist refinement in the style of Hopcroft; same result as :func:`refine_partition`."""
    n = fsa.num_states
    preimage = [[[] for _ in range(n)] for _ in fsa.transitions]
    for sigma, row in enumerate(fsa.transitions):
        for q, t in enumerate(row):
            preimage[sigma][t].append(q)

    blocks = [set(b) for b in _canonical(fsa.output_map).blocks()]
    block_of = [0] * n
    for i, b in enumerate(blocks):
        for q in b:
            block_of[q] = i
    k = len(fsa.transitions)
    work = deque()
    in_work = set()
    # all but the largest initial block are enough splitters
    if len(blocks) > 1:
        largest = max(range(len(blocks)), key=lambda i: len(blocks[i]))
        for i in range(len(blocks)):
            if i != largest:
                for sigma in range(k):
                    work.append((i, sigma))
                    in_work.add((i, sigma))

    while work:
        splitter, sigma = work.popleft()
        in_work.discard((splitter, sigma))
        pre = set()
        for t in blocks[splitter]:
            pre.update(preimage[sigma][t])
        touched = {block_of[q] for q in pre}
        for b in sorted(touched):
            inside = blocks[b] & pre
            outside = blocks[b] - pre
            if not inside or not outside:
                continue
            blocks[b] = inside
            blocks.append(outside)
            new = len(blocks) - 1
            for q in outside:
                block_of[q] = new
            for s in range(k):
                if (b, s) in in_work:
                    work.append((new, s))
                    in_work.add((new, s))
                else:
                    smaller = b if len(inside) <= len(outside) else new
                    work.append((smaller, s))
                    in_work.add((smaller, s))
    return _canonical(block_of)


def distinguishing_word(fsa: Fsa, q: int, q2: int) -> Optional[Word]:
    """Shortest word ``w`` with different outputs from ``q`` and ``q2``, or None."""
    _check_state(fsa, q)
    _check_state(fsa, q2)
    beta = fsa.output_map
    start = (q, q2)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        a, b = pair
        if beta[a] != beta[b]:
            return seen[pair]
        for sigma, row in enumerate(fsa.transitions):
            nxt = (row[a], row[b])
            if nxt not in seen:
                seen[nxt] = seen[pair] + (sigma,)
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class MinimizationResult:
    minimized: Fsa
    state_map: Tuple[Optional[int], ...]  # None for removed (inaccessible) states
    access: AccessMap


def minimize(fsa: Fsa) -> MinimizationResult:
    """Drop inaccessible states, merge indistinguishable ones, relabel in BFS order.

    The output alphabet is kept unchanged even if some outputs become
    unused, so the result can be compared with the original directly.
    """
    access = accessible_states(fsa)
    reach = sorted(access.words)
    local = {q: i for i, q in enumerate(reach)}
    sub = Fsa(
        fsa.alphabet,
        len(reach),
        local[fsa.initial],
        [[local[row[q]] for q in reach] for row in fsa.transitions],
        fsa.outputs,
        [fsa.output_map[q] for q in reach],
    )
    part = refine_partition(sub)

    # canonical numbering: BFS over blocks from the initial block
    block_rep = {}
    for q in reach:
        block_rep.setdefault(part.block_of[local[q]], q)
    new_index = {}
    start = part.block_of[local[fsa.initial]]
    new_index[start] = 0
    queue = deque([start])
    while queue:
        b = queue.popleft()
        q = block_rep[b]
        for row in fsa.transitions:
            nb = part.block_of[local[row[q]]]
            if nb not in new_index:
                new_index[nb] = len(new_index)
                queue.append(nb)

    m = len(new_index)
    reps = [None] * m
    for b, i in new_index.items():
        reps[i] = block_rep[b]
    minimized = Fsa(
        fsa.alphabet,
        m,
        0,
        [[new_index[part.block_of[local[row[reps[i]]]]] for i in range(m)] for row in fsa.transitions],
        fsa.outputs,
        [fsa.output_map[reps[i]] for i in range(m)],
        state_names=[fsa.state_names[reps[i]] for i in range(m)],
        name=fsa.name,
    )
    state_map = tuple(
        new_index[part.block_of[local[q]]] if q in local else None for q in range(fsa.num_states)
    )
    return MinimizationResult(minimized, state_map, accessible_states(minimized))


def is_minimal(fsa: Fsa) -> bool:
    if not accessible_states(fsa).all_accessible:
        return False
    return refine_partition(fsa).num_blocks == fsa.num_states
