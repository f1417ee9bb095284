"""Deterministic multi-output automata and transition-function tables.

States, symbols and outputs are dense 0-based indices. Names only matter
when reading or writing documents, so they are carried along but never used
by the table operations.

A transition function is a plain tuple of ints: ``fn[q]`` is the image of
state ``q``.  A word is a tuple of symbol indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

from .errors import EmptyInputError, InvalidArgument

TransitionFn = Tuple[int, ...]
Word = Tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))
        if not self.symbols:
            raise InvalidArgument("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidArgument(f"duplicate symbol names in {self.symbols}")

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise InvalidArgument(f"unknown symbol {name!r}") from None

    def encode(self, word) -> Word:
        """Turn a word given by names into a tuple of symbol indices.

        A plain string is split per character when every symbol name is a
        single character, otherwise on whitespace and commas.  Sequences of
        ints are checked and passed through.
        """
        if isinstance(word, str):
            if all(len(s) == 1 for s in self.symbols) and not any(ch in word for ch in " ,"):
                parts = list(word)
            else:
                parts = word.replace(",", " ").split()
            return tuple(self.index(p) for p in parts)
        out = []
        for item in word:
            if isinstance(item, str):
                out.append(self.index(item))
            else:
                out.append(_check_symbol(int(item), len(self.symbols)))
        return tuple(out)

    def decode(self, word: Sequence[int]) -> str:
        names = [self.symbols[i] for i in word]
        if all(len(s) == 1 for s in self.symbols):
            return "".join(names)
        return " ".join(names)


def _check_symbol(sigma: int, size: int) -> int:
    if not 0 <= sigma < size:
        raise InvalidArgument(f"symbol index {sigma} out of range [0, {size})")
    return sigma


def _default_names(n):
    return tuple(str(i) for i in range(n))


@dataclass(frozen=True)
class Fsa:
    """Sequential automaton ``(alphabet, Q, initial, transitions, outputs, output_map)``.

    ``transitions[sigma][q]`` is the successor of ``q`` on symbol ``sigma`` and
    ``output_map[q]`` indexes into ``outputs``.  Construction only normalises
    containers; call :func:`validate` (or :meth:`check`) for the invariants.
    """

    alphabet: Alphabet
    num_states: int
    initial: int
    transitions: Tuple[TransitionFn, ...]
    outputs: Tuple[str, ...]
    output_map: Tuple[int, ...]
    state_names: Tuple[str, ...] = field(default=None)
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(self.alphabet))
        object.__setattr__(self, "transitions", tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "outputs", tuple(str(o) for o in self.outputs))
        object.__setattr__(self, "output_map", tuple(self.output_map))
        if self.state_names is None:
            object.__setattr__(self, "state_names", _default_names(self.num_states))
        else:
            object.__setattr__(self, "state_names", tuple(str(s) for s in self.state_names))

    def check(self) -> "Fsa":
        problems = validate(self)
        if problems:
            raise InvalidArgument("; ".join(problems))
        return self

    def word(self, text) -> Word:
        return self.alphabet.encode(text)

    def output_name(self, out: int) -> str:
        return self.outputs[out]

    def __call__(self, word) -> str:
        """Output name for ``word``; convenience wrapper over :func:`eval_fsa`."""
        return self.outputs[eval_fsa(self, self.word(word))]


def identity(n: int) -> TransitionFn:
    return tuple(range(n))


def _check_state(fsa: Fsa, q: int) -> int:
    if not 0 <= q < fsa.num_states:
        raise InvalidArgument(f"state index {q} out of range [0, {fsa.num_states})")
    return q


def step(fsa: Fsa, q: int, sigma: int) -> int:
    _check_state(fsa, q)
    _check_symbol(sigma, len(fsa.alphabet))
    return fsa.transitions[sigma][q]


def run_word(fsa: Fsa, q: int, w: Iterable[int]) -> int:
    """Return ``f_w(q)``; the empty word leaves ``q`` unchanged."""
    _check_state(fsa, q)
    table = fsa.transitions
    k = len(table)
    for sigma in w:
        _check_symbol(sigma, k)
        q = table[sigma][q]
    return q


def eval_fsa(fsa: Fsa, w: Sequence[int]) -> int:
    """Output index of the machine on the nonempty word ``w``."""
    if len(w) == 0:
        raise EmptyInputError("automata are evaluated on nonempty words only")
    return fsa.output_map[run_word(fsa, fsa.initial, w)]


def compose(g: TransitionFn, h: TransitionFn) -> TransitionFn:
    """Return ``g ∘ h``, i.e. ``x -> g[h[x]]``: ``h`` is applied first.

    For a word ``w = w1 ... wk`` the table of ``f_w`` is
    ``compose(f_wk, compose(..., f_w1))``, so the later symbol goes on the left.
    """
    if len(g) != len(h):
        raise InvalidArgument(f"cannot compose tables of lengths {len(g)} and {len(h)}")
    return tuple(g[x] for x in h)


def word_function(fsa: Fsa, w: Iterable[int]) -> TransitionFn:
    fn = identity(fsa.num_states)
    k = len(fsa.alphabet)
    for sigma in w:
        _check_symbol(sigma, k)
        fn = compose(fsa.transitions[sigma], fn)
    return fn


def validate(fsa: Fsa) -> list:
    """Human-readable list of violated invariants; empty when ``fsa`` is well formed."""
    problems = []
    n = fsa.num_states
    if not isinstance(n, int) or n < 1:
        return [f"num_states must be a positive integer, got {n!r}"]
    if not 0 <= fsa.initial < n:
        problems.append(f"initial state {fsa.initial} out of range [0, {n})")
    if len(fsa.transitions) != len(fsa.alphabet):
        problems.append(
            f"expected {len(fsa.alphabet)} transition functions, got {len(fsa.transitions)}"
        )
    for sigma, row in enumerate(fsa.transitions):
        sym = fsa.alphabet.symbols[sigma] if sigma < len(fsa.alphabet) else sigma
        if len(row) != n:
            problems.append(f"transition function of symbol {sym!r} has length {len(row)}, expected {n}")
        for q, target in enumerate(row):
            if not isinstance(target, int) or not 0 <= target < n:
                problems.append(f"transition of symbol {sym!r} from state {q} goes to invalid state {target!r}")
    if len(fsa.output_map) != n:
        problems.append(f"output_map has length {len(fsa.output_map)}, expected {n}")
    for q, out in enumerate(fsa.output_map):
        if not isinstance(out, int) or not 0 <= out < len(fsa.outputs):
            problems.append(f"state {q} maps to invalid output index {out!r}")
    if not fsa.outputs:
        problems.append("output set is empty")
    elif len(set(fsa.outputs)) != len(fsa.outputs):
        problems.append("duplicate output names")
    if len(fsa.state_names) != n:
        problems.append(f"{len(fsa.state_names)} state names for {n} states")
    elif len(set(fsa.state_names)) != n:
        problems.append("duplicate state names")
    return problems
