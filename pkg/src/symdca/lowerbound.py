"""A family of n-state machines that force any divide-and-conquer version to n**n states.

The per-symbol transitions are three generators of the full transformation
semigroup on ``n`` points (an n-cycle, a transposition and a rank ``n-1``
collapse), so every function ``g: Q -> Q`` is ``f_w`` for some word ``w[g]``.
With the identity as output map, the machine's output after ``w[h] w[g]`` is
``g(h(0))``.  A candidate automaton with fewer than ``n**n`` states must give
two different functions overlapping chi sets, and prefixing a suitable
``w[h]`` exposes it; :func:`pigeonhole_demo` builds that certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .core import Fsa, TransitionFn, Word, compose, eval_fsa, identity
from .engine import _ChiTable
from .errors import InternalInconsistencyError, ResourceLimitError
from .synthesis import check_compatible

HARD_ALPHABET = ("a", "b", "c")


def denes_generators(n: int) -> Tuple[TransitionFn, TransitionFn, TransitionFn]:
    if n < 1:
        raise ValueError("n must be positive")
    cycle = tuple((i + 1) % n for i in range(n))
    swap = list(identity(n))
    collapse = list(identity(n))
    if n >= 2:
        swap[0], swap[1] = 1, 0
        collapse[0] = 1
    return cycle, tuple(swap), tuple(collapse)


@dataclass(frozen=True)
class SemigroupAtlas:
    """Shortest nonempty generator word for every function in the closure.

    Words are shortlex-least with generator index as the tie-break; the
    identity gets its shortest nonempty word.
    """

    words: Dict[TransitionFn, Word]
    order: Tuple[TransitionFn, ...]

    def __len__(self):
        return len(self.order)

    def __contains__(self, fn):
        return fn in self.words

    def word(self, fn) -> Word:
        return self.words[fn]


def semigroup_closure(gens, cap: int = 1_000_000) -> SemigroupAtlas:
    gens = [tuple(g) for g in gens]
    words = {}
    order = []
    queue = deque()
    for i, g in enumerate(gens):
        if g not in words:
            words[g] = (i,)
            order.append(g)
            queue.append(g)
    while queue:
        f = queue.popleft()
        for i, g in enumerate(gens):
            h = compose(g, f)
            if h not in words:
                if len(order) >= cap:
                    raise ResourceLimitError(f"closure exceeds cap of {cap} elements", partial=len(order))
                words[h] = words[f] + (i,)
                order.append(h)
                queue.append(h)
    return SemigroupAtlas(words, tuple(order))


def build_hard_fsa(n: int) -> Fsa:
    names = [str(i) for i in range(n)]
    return Fsa(
        HARD_ALPHABET,
        n,
        0,
        denes_generators(n),
        names,
        list(range(n)),
        state_names=names,
        name=f"denes-{n}",
    )


def separating_extension(fsa: Fsa, atlas: SemigroupAtlas, g1, g2) -> Optional[TransitionFn]:
    """First ``h`` in atlas order with different outputs on ``w[h]w[g1]`` and ``w[h]w[g2]``."""
    for h in atlas.order:
        prefix = atlas.words[h]
        if eval_fsa(fsa, prefix + atlas.words[g1]) != eval_fsa(fsa, prefix + atlas.words[g2]):
            return h
    return None


@dataclass(frozen=True)
class Certificate:
    """Two inputs the hard machine separates but the candidate cannot."""

    g1: TransitionFn
    g2: TransitionFn
    q_hat: int
    h: TransitionFn
    prefix_word: Word  # w[h]
    g_words: Tuple[Word, Word]  # w[g1], w[g2]
    words: Tuple[Word, Word]  # w[h]w[g1], w[h]w[g2]
    fsa_outputs: Tuple[int, int]
    shared_state: object  # in chi(w[g1]) and chi(w[g2])
    prefix_state: object  # any member of chi(w[h])
    joint_state: object  # combine(prefix_state, shared_state), in both chi sets below
    candidate_outputs: Tuple[frozenset, frozenset]

    @property
    def candidate_wrong(self):
        """True when the candidate's (set of) outputs misses the right answer on some word."""
        return any(
            self.candidate_outputs[i] != frozenset({self.fsa_outputs[i]}) for i in (0, 1)
        )


@dataclass(frozen=True)
class LowerBoundVerdict:
    n: int
    candidate_states: int
    collision: bool
    certificate: Optional[Certificate] = None

    @property
    def verdict(self):
        return "certificate" if self.collision else "no collision found"


def pigeonhole_demo(n: int, candidate, atlas: Optional[SemigroupAtlas] = None,
                    node_budget: int = 50_000_000) -> LowerBoundVerdict:
    fsa = build_hard_fsa(n)
    check_compatible(fsa, candidate)
    atlas = atlas or semigroup_closure(denes_generators(n))
    chi = _ChiTable(candidate, node_budget)

    owner = {}
    collision = None
    for g in atlas.order:
        states = chi.get(atlas.words[g])
        for q in states:
            if q in owner:
                collision = (owner[q], g, q)
                break
            owner[q] = g
        if collision:
            break
    if collision is None:
        return LowerBoundVerdict(n, candidate.num_states, False)

    g1, g2, shared = collision
    q_hat = next(q for q in range(n) if g1[q] != g2[q])
    h = next(f for f in atlas.order if f[fsa.initial] == q_hat)
    prefix = atlas.words[h]
    words = (prefix + atlas.words[g1], prefix + atlas.words[g2])
    fsa_outputs = (eval_fsa(fsa, words[0]), eval_fsa(fsa, words[1]))
    prefix_state = next(iter(chi.get(prefix)))
    joint = candidate.combine_states(prefix_state, shared)
    outs = []
    for w in words:
        states = chi.get(w)
        if joint not in states:
            raise InternalInconsistencyError("combined state missing from chi of the joined word")
        outs.append(frozenset(candidate.output_of(q) for q in states))
    cert = Certificate(
        g1, g2, q_hat, h, prefix, (atlas.words[g1], atlas.words[g2]), words,
        fsa_outputs, shared, prefix_state, joint, tuple(outs),
    )
    return LowerBoundVerdict(n, candidate.num_states, True, cert)


def verify_certificate(n: int, candidate, cert: Certificate, node_budget: int = 50_000_000) -> bool:
    """Recheck a certificate from scratch against the machine and candidate."""
    fsa = build_hard_fsa(n)
    chi = _ChiTable(candidate, node_budget)
    w1, w2 = cert.words
    if w1 != cert.prefix_word + cert.g_words[0] or w2 != cert.prefix_word + cert.g_words[1]:
        return False
    if cert.shared_state not in chi.get(cert.g_words[0]) or cert.shared_state not in chi.get(cert.g_words[1]):
        return False
    if cert.prefix_state not in chi.get(cert.prefix_word):
        return False
    if eval_fsa(fsa, w1) == eval_fsa(fsa, w2):
        return False
    if eval_fsa(fsa, w1) != cert.g1[cert.q_hat] or eval_fsa(fsa, w2) != cert.g2[cert.q_hat]:
        return False
    joint = candidate.combine_states(cert.prefix_state, cert.shared_state)
    if joint != cert.joint_state:
        return False
    if joint not in chi.get(w1) or joint not in chi.get(w2):
        return False
    # a shared reachable state means the candidate cannot be right on both words
    return cert.candidate_wrong
