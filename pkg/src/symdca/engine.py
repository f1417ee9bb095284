"""Evaluating divide-and-conquer automata under arbitrary split orders.

Every function here accepts either a table :class:`~symdca.synthesis.Dca` or a
:class:`~symdca.synthesis.FunctionalDca`; both expose ``alpha_of``,
``combine_states``, ``output_of`` and ``cell_width``.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import FrozenSet, Optional, Tuple

from .core import Fsa, Word, eval_fsa
from .errors import EmptyInputError, ResourceLimitError
from .synthesis import check_compatible

STRATEGY_KINDS = ("fold", "tree", "random")


@dataclass(frozen=True)
class SplitStrategy:
    kind: str = "tree"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown split strategy {self.kind!r}; expected one of {STRATEGY_KINDS}")

    @classmethod
    def fold(cls):
        return cls("fold")

    @classmethod
    def tree(cls):
        return cls("tree")

    @classmethod
    def random(cls, seed=0):
        return cls("random", seed)

    def label(self):
        return f"random({self.seed})" if self.kind == "random" else self.kind

    def splitter(self, rng=None):
        """Function ``(i, j) -> m`` choosing where to split ``w[i:j]``."""
        if self.kind == "fold":
            return lambda i, j: j - 1
        if self.kind == "tree":
            return lambda i, j: (i + j) // 2
        rnd = (rng or random.Random(self.seed)).random
        return lambda i, j: i + 1 + int(rnd() * (j - i - 1))


@dataclass
class EvalTrace:
    output: int
    state: object
    combines: int = 0
    peak_values: int = 0
    cells_per_value: int = 0
    peak_cells: int = 0


def _reduce(dca, w, split):
    """Post-order reduction of ``w`` along the split tree chosen by ``split``.

    Returns the final state and a trace of how many intermediate values were
    live at once (a value is live from its creation until it is combined).
    """
    n = len(w)
    if n == 0:
        raise EmptyInputError("divide-and-conquer automata are evaluated on nonempty words only")
    trace = EvalTrace(0, None)
    held = []
    cells = 0
    stack = [(0, n, False)]
    while stack:
        i, j, expanded = stack.pop()
        if j - i == 1:
            x = dca.alpha_of(w[i])
            held.append(x)
            width = dca.cell_width(x)
            cells += width
            trace.cells_per_value = max(trace.cells_per_value, width)
        elif not expanded:
            m = split(i, j)
            stack.append((i, j, True))
            stack.append((m, j, False))
            stack.append((i, m, False))
            continue
        else:
            right = held.pop()
            left = held.pop()
            x = dca.combine_states(left, right)
            trace.combines += 1
            cells += dca.cell_width(x) - dca.cell_width(left) - dca.cell_width(right)
            held.append(x)
        trace.peak_values = max(trace.peak_values, len(held))
        trace.peak_cells = max(trace.peak_cells, cells)
    trace.state = held[0]
    trace.output = dca.output_of(held[0])
    return trace


def _state(dca, w, kind, split):
    # untraced reduction; visits splits in the same pre-order as _reduce
    n = len(w)
    if n == 0:
        raise EmptyInputError("divide-and-conquer automata are evaluated on nonempty words only")
    alpha = dca.alpha_of
    combine = dca.combine_states
    if kind == "fold":
        x = alpha(w[0])
        for k in range(1, n):
            x = combine(x, alpha(w[k]))
        return x
    if n > 512:
        return _reduce(dca, w, split).state
    leaves = [alpha(s) for s in w]
    if kind == "tree":
        def rec(i, j):
            if j - i == 1:
                return leaves[i]
            m = (i + j) // 2
            return combine(rec(i, m), rec(m, j))
    else:
        def rec(i, j):
            if j - i == 1:
                return leaves[i]
            m = split(i, j)
            return combine(rec(i, m), rec(m, j))
    return rec(0, n)


def eval_dca_traced(dca, w, strategy: SplitStrategy = SplitStrategy()) -> EvalTrace:
    """Evaluate and record how many intermediate values (and cells) were live at once."""
    return _reduce(dca, tuple(w), strategy.splitter())


def eval_dca(dca, w, strategy: SplitStrategy = SplitStrategy()) -> int:
    """Output index of ``dca`` on the nonempty word ``w`` under one split order.

    An automaton that is not well defined may answer differently under
    different strategies; use :func:`check_well_defined` to detect that.
    """
    return dca.output_of(final_state(dca, w, strategy))


def final_state(dca, w, strategy: SplitStrategy = SplitStrategy()):
    return _state(dca, tuple(w), strategy.kind, strategy.splitter())


def aggregate_neighborhood(dca, symbols) -> int:
    """Combine an unordered bag of neighbour symbols with a balanced tree."""
    w = tuple(sorted(symbols))
    if not w:
        raise EmptyInputError("empty neighbourhood")
    return eval_dca(dca, w, SplitStrategy.tree())


def parallel_reduce(dca, w, workers: int = 4, chunks: Optional[int] = None):
    """Fold contiguous chunks concurrently, then join chunk results pairwise.

    The final state equals that of any sequential split order whenever the
    combiner is associative.
    """
    w = tuple(w)
    if not w:
        raise EmptyInputError("divide-and-conquer automata are evaluated on nonempty words only")
    chunks = max(1, min(chunks or workers, len(w)))
    size, extra = divmod(len(w), chunks)
    bounds = []
    start = 0
    for c in range(chunks):
        end = start + size + (1 if c < extra else 0)
        bounds.append((start, end))
        start = end

    def fold(bound):
        return final_state(dca, w[bound[0]:bound[1]], SplitStrategy.fold())

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(fold, bounds))
    while len(parts) > 1:
        nxt = [dca.combine_states(parts[k], parts[k + 1]) for k in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


# -- exact chi sets -------------------------------------------------------

@dataclass(frozen=True)
class ChiSet:
    word: Word
    states: FrozenSet


class _ChiTable:
    """Memo of chi sets keyed by word, with one derivation kept per state."""

    def __init__(self, dca, node_budget):
        self.dca = dca
        self.budget = node_budget
        self.used = 0
        self.memo = {}

    def get(self, w):
        memo = self.memo
        if w in memo:
            return memo[w]
        dca = self.dca
        n = len(w)
        for length in range(1, n + 1):
            for i in range(n - length + 1):
                sub = w[i:i + length]
                if sub in memo:
                    continue
                if length == 1:
                    memo[sub] = {dca.alpha_of(sub[0]): None}
                    continue
                derivs = {}
                for k in range(1, length):
                    lefts = memo[sub[:k]]
                    rights = memo[sub[k:]]
                    self.used += len(lefts) * len(rights)
                    if self.used > self.budget:
                        raise ResourceLimitError(
                            f"chi enumeration exceeded node budget {self.budget}", partial=self.used
                        )
                    for x in lefts:
                        for y in rights:
                            z = dca.combine_states(x, y)
                            if z not in derivs:
                                derivs[z] = (k, x, y)
                memo[sub] = derivs
        return memo[w]

    def tree(self, w, state):
        """A split tree of ``w`` (nested pairs, symbol indices at leaves) reaching ``state``."""
        if len(w) == 1:
            return w[0]
        k, x, y = self.memo[w][state]
        return (self.tree(w[:k], x), self.tree(w[k:], y))


def chi_enumerate(dca, w, node_budget: int = 10_000_000) -> ChiSet:
    """Every final state reachable on ``w`` over all binary contiguous split trees."""
    w = tuple(w)
    if not w:
        raise EmptyInputError("chi is defined on nonempty words only")
    table = _ChiTable(dca, node_budget)
    return ChiSet(w, frozenset(table.get(w)))


def eval_tree(dca, tree):
    if isinstance(tree, tuple):
        return dca.combine_states(eval_tree(dca, tree[0]), eval_tree(dca, tree[1]))
    return dca.alpha_of(tree)


def tree_leaves(tree) -> Word:
    if isinstance(tree, tuple):
        return tree_leaves(tree[0]) + tree_leaves(tree[1])
    return (tree,)


def format_tree(tree, alphabet) -> str:
    if isinstance(tree, tuple):
        return "(" + format_tree(tree[0], alphabet) + " " + format_tree(tree[1], alphabet) + ")"
    return alphabet.symbols[tree]


@dataclass(frozen=True)
class SplitWitness:
    """Two split trees of the same word whose final states have different outputs."""

    word: Word
    out1: int
    out2: int
    tree1: object
    tree2: object

    def verify(self, dca) -> bool:
        return (
            tree_leaves(self.tree1) == self.word
            and tree_leaves(self.tree2) == self.word
            and dca.output_of(eval_tree(dca, self.tree1)) == self.out1
            and dca.output_of(eval_tree(dca, self.tree2)) == self.out2
            and self.out1 != self.out2
        )

    def describe(self, dca) -> dict:
        return {
            "word": dca.alphabet.decode(self.word),
            "split1": format_tree(self.tree1, dca.alphabet),
            "output1": dca.outputs[self.out1],
            "split2": format_tree(self.tree2, dca.alphabet),
            "output2": dca.outputs[self.out2],
        }


def check_well_defined(dca, max_len: int = 6, node_budget: int = 50_000_000) -> Optional[SplitWitness]:
    """None if every word up to ``max_len`` has a single output over all split trees.

    Words are scanned in length-then-lexicographic order and the first
    violation is returned.
    """
    table = _ChiTable(dca, node_budget)
    k = len(dca.alphabet)
    for n in range(1, max_len + 1):
        for w in product(range(k), repeat=n):
            derivs = table.get(w)
            first = {}
            for state in derivs:
                out = dca.output_of(state)
                if out not in first:
                    first[out] = state
                    if len(first) == 2:
                        (o1, s1), (o2, s2) = first.items()
                        return SplitWitness(w, o1, o2, table.tree(w, s1), table.tree(w, s2))
    return None


# -- equivalence harness -------------------------------------------------

@dataclass(frozen=True)
class EquivalenceConfig:
    exhaustive_max_len: Optional[int] = None  # None: largest length <= 8 within word_budget
    num_random_trials: int = 10_000
    random_max_len: int = 64
    seed: int = 0
    word_budget: int = 100_000

    def exhaustive_len(self, k):
        if self.exhaustive_max_len is not None:
            return self.exhaustive_max_len
        length = 1
        while length < 8 and k ** (length + 1) <= self.word_budget:
            length += 1
        return length


@dataclass
class EquivalenceReport:
    exhaustive_max_len: int
    num_random_trials: int
    random_max_len: int
    seed: int
    strategies: Tuple[str, ...]
    words_checked: int = 0
    verdict: str = "pass"
    first_failure: Optional[dict] = field(default=None)

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        return {
            "exhaustive_max_len": self.exhaustive_max_len,
            "num_random_trials": self.num_random_trials,
            "random_max_len": self.random_max_len,
            "seed": self.seed,
            "strategies": list(self.strategies),
            "words_checked": self.words_checked,
            "verdict": self.verdict,
            "first_failure": self.first_failure,
        }


def verify_equivalence(fsa: Fsa, dca, config: EquivalenceConfig = EquivalenceConfig()) -> EquivalenceReport:
    """Compare the sequential and divide-and-conquer outputs word by word.

    All words up to the exhaustive length are tried under left fold, balanced
    tree and three seeded random split streams; then random words under the
    same strategy set.  Stops at the first mismatch.
    """
    check_compatible(fsa, dca)
    k = len(fsa.alphabet)
    exhaustive = config.exhaustive_len(k)
    strategies = [SplitStrategy.fold(), SplitStrategy.tree()] + [
        SplitStrategy.random(config.seed + i) for i in range(3)
    ]
    splitters = [(s.label(), s.kind, s.splitter()) for s in strategies]
    report = EquivalenceReport(
        exhaustive, config.num_random_trials, config.random_max_len, config.seed,
        tuple(label for label, _, _ in splitters),
    )

    table = fsa.transitions
    beta = fsa.output_map
    output_of = dca.output_of

    def check(w):
        q = fsa.initial
        for sigma in w:
            q = table[sigma][q]
        expected = beta[q]
        for label, kind, split in splitters:
            got = output_of(_state(dca, w, kind, split))
            if got != expected:
                report.verdict = "fail"
                report.first_failure = {
                    "word": fsa.alphabet.decode(w),
                    "strategy": label,
                    "fsa_output": fsa.outputs[expected],
                    "dca_output": fsa.outputs[got],
                }
                return False
        report.words_checked += 1
        return True

    for n in range(1, exhaustive + 1):
        for w in product(range(k), repeat=n):
            if not check(w):
                return report
    rng = random.Random(config.seed)
    for _ in range(config.num_random_trials):
        n = rng.randint(1, config.random_max_len)
        w = tuple(rng.randrange(k) for _ in range(n))
        if not check(w):
            return report
    return report
