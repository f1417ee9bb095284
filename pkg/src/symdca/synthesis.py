"""Divide-and-conquer automata and the two ways of building them from an Fsa.

A divide-and-conquer automaton maps every input symbol to a state with
``alpha``, merges adjacent states pairwise with ``combine`` in any order, and
reads the output of the single remaining state.

* :func:`synthesize_symmetric_dca` needs a symmetric machine and produces a
  table automaton on the minimized state set: ``alpha[s] = f_s(q0)`` and
  ``combine[q][p] = f_{rep[p]}(q)`` where ``rep[p]`` is a fixed word reaching
  ``p`` from the initial state.
* :func:`synthesize_composition_dca` works for any machine; its states are
  whole transition tables, combined by composition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Tuple

from .core import Alphabet, Fsa, TransitionFn, Word, compose, run_word
from .errors import InvalidArgument, NotAccessibleError, NotSymmetricError, ResourceLimitError
from .minimize import MinimizationResult, accessible_states, minimize
from .symmetry import symmetry_counterexample, transitions_commute


@dataclass(frozen=True)
class Dca:
    """Table-backed divide-and-conquer automaton."""

    alphabet: Alphabet
    num_states: int
    alpha: Tuple[int, ...]
    combine: Tuple[Tuple[int, ...], ...]
    outputs: Tuple[str, ...]
    output_map: Tuple[int, ...]
    state_names: Tuple[str, ...] = field(default=None)
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(self.alphabet))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "combine", tuple(tuple(r) for r in self.combine))
        object.__setattr__(self, "outputs", tuple(str(o) for o in self.outputs))
        object.__setattr__(self, "output_map", tuple(self.output_map))
        names = self.state_names
        if names is None:
            names = [str(i) for i in range(self.num_states)]
        object.__setattr__(self, "state_names", tuple(str(s) for s in names))

    # evaluation protocol shared with FunctionalDca
    def alpha_of(self, sigma: int) -> int:
        return self.alpha[sigma]

    def combine_states(self, x: int, y: int) -> int:
        return self.combine[x][y]

    def output_of(self, x: int) -> int:
        return self.output_map[x]

    @staticmethod
    def cell_width(x) -> int:
        return 1

    def with_entry(self, q: int, p: int, value: int) -> "Dca":
        """Copy with a single combine entry replaced."""
        rows = [list(r) for r in self.combine]
        rows[q][p] = value
        return Dca(self.alphabet, self.num_states, self.alpha, rows, self.outputs,
                   self.output_map, self.state_names, self.name)


def validate_dca(dca: Dca) -> list:
    problems = []
    n = dca.num_states
    if not isinstance(n, int) or n < 1:
        return [f"num_states must be a positive integer, got {n!r}"]
    if len(dca.alpha) != len(dca.alphabet):
        problems.append(f"alpha has {len(dca.alpha)} entries for {len(dca.alphabet)} symbols")
    for sigma, q in enumerate(dca.alpha):
        if not isinstance(q, int) or not 0 <= q < n:
            problems.append(f"alpha of symbol {sigma} is invalid state {q!r}")
    if len(dca.combine) != n:
        problems.append(f"combine has {len(dca.combine)} rows, expected {n}")
    for q, row in enumerate(dca.combine):
        if len(row) != n:
            problems.append(f"combine row {q} has length {len(row)}, expected {n}")
        for p, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                problems.append(f"combine[{q}][{p}] is invalid state {v!r}")
    if len(dca.output_map) != n:
        problems.append(f"output_map has length {len(dca.output_map)}, expected {n}")
    for q, out in enumerate(dca.output_map):
        if not isinstance(out, int) or not 0 <= out < len(dca.outputs):
            problems.append(f"state {q} maps to invalid output index {out!r}")
    if len(dca.state_names) != n or len(set(dca.state_names)) != n:
        problems.append("state names must be unique, one per state")
    return problems


class FunctionalDca:
    """Computed automaton whose states are transition tables of ``fsa``.

    ``combine(g, h)`` is ``h ∘ g`` (left part read first).  Tables are interned
    so equal values are the same object, which lets products be memoized by
    identity.
    """

    def __init__(self, fsa: Fsa):
        self.fsa = fsa
        self.alphabet = fsa.alphabet
        self.outputs = fsa.outputs
        self._interned = {}
        self._products = {}
        self._alpha = [self.intern(row) for row in fsa.transitions]

    @property
    def num_states(self):
        """Number of distinct tables created so far (not the size of the full closure)."""
        return len(self._interned)

    def intern(self, fn: TransitionFn) -> TransitionFn:
        return self._interned.setdefault(fn, fn)

    def alpha_of(self, sigma: int) -> TransitionFn:
        return self._alpha[sigma]

    def combine_states(self, g: TransitionFn, h: TransitionFn) -> TransitionFn:
        key = (id(g), id(h))
        out = self._products.get(key)
        if out is None:
            g = self.intern(g)
            h = self.intern(h)
            key = (id(g), id(h))
            out = self._products.get(key)
            if out is None:
                out = self._products[key] = self.intern(compose(h, g))
        return out

    def output_of(self, g: TransitionFn) -> int:
        return self.fsa.output_map[g[self.fsa.initial]]

    @staticmethod
    def cell_width(g) -> int:
        return len(g)


@dataclass(frozen=True)
class RepresentativeTable:
    rep: Tuple[Word, ...]


def representative_strings(fsa: Fsa) -> RepresentativeTable:
    access = accessible_states(fsa)
    for q, ok in enumerate(access.accessible):
        if not ok:
            raise NotAccessibleError(fsa.state_names[q])
    return RepresentativeTable(tuple(access.words[q] for q in range(fsa.num_states)))


@dataclass(frozen=True)
class SymmetricSynthesis:
    dca: Dca
    minimization: MinimizationResult
    representatives: RepresentativeTable


def synthesize_symmetric_dca(fsa: Fsa) -> SymmetricSynthesis:
    """Build a table automaton no larger than ``fsa`` computing the same function.

    Raises :class:`NotSymmetricError` with a permutation witness when ``fsa``
    is order sensitive.
    """
    res = minimize(fsa)
    m = res.minimized
    v = transitions_commute(m)
    if v is not None:
        raise NotSymmetricError(symmetry_counterexample(m, v, res.access))
    reps = representative_strings(m)
    q0 = m.initial
    alpha = [row[q0] for row in m.transitions]
    combine = [[run_word(m, q, reps.rep[p]) for p in range(m.num_states)] for q in range(m.num_states)]
    dca = Dca(m.alphabet, m.num_states, alpha, combine, m.outputs, m.output_map,
              state_names=m.state_names, name=fsa.name)
    return SymmetricSynthesis(dca, res, reps)


def synthesize_composition_dca(fsa: Fsa) -> FunctionalDca:
    return FunctionalDca(fsa)


def _closure(generators, combine, cap):
    # BFS over right-multiplication by generators; returns values in discovery order
    index = {}
    order = []
    for g in generators:
        if g not in index:
            index[g] = len(order)
            order.append(g)
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = combine(x, g)
            if y not in index:
                if len(order) >= cap:
                    raise ResourceLimitError(
                        f"closure exceeds cap of {cap} elements", partial=len(order)
                    )
                index[y] = len(order)
                order.append(y)
                queue.append(y)
    return order, index


def materialize_reachable(fdca: FunctionalDca, cap: int = 100_000) -> Dca:
    """Tabulate the closure of the symbol tables under composition.

    Closing under right-multiplication by generators suffices because every
    product of generators is reached that way; the result is then closed
    under arbitrary pairwise combination.
    """
    fsa = fdca.fsa
    gens = [fdca.alpha_of(s) for s in range(len(fsa.alphabet))]
    order, index = _closure(gens, fdca.combine_states, cap)
    combine = [[index[fdca.combine_states(x, y)] for y in order] for x in order]
    names = ["[" + ",".join(fsa.state_names[i] for i in g) + "]" for g in order]
    return Dca(
        fsa.alphabet,
        len(order),
        [index[g] for g in gens],
        combine,
        fsa.outputs,
        [fdca.output_of(g) for g in order],
        state_names=names,
        name=fsa.name,
    )


def check_compatible(fsa: Fsa, dca) -> None:
    if tuple(fsa.alphabet.symbols) != tuple(dca.alphabet.symbols):
        raise InvalidArgument(
            f"alphabet mismatch: {list(fsa.alphabet.symbols)} vs {list(dca.alphabet.symbols)}"
        )
    if tuple(fsa.outputs) != tuple(dca.outputs):
        raise InvalidArgument(f"output set mismatch: {list(fsa.outputs)} vs {list(dca.outputs)}")
