"""Symmetry (order-insensitivity) of automata, with explicit counterexamples.

On an accessible, distinguishable machine, symmetry is the same thing as the
per-symbol transition functions commuting.  A non-commuting pair at some state
``q`` is turned into two permuted words with different outputs by prefixing the
access word of ``q`` and appending a word that separates the two results.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import Fsa, Word, eval_fsa
from .errors import InternalInconsistencyError, ResourceLimitError
from .minimize import AccessMap, distinguishing_word, minimize


@dataclass(frozen=True)
class CommutativityViolation:
    sigma1: int
    sigma2: int
    q: int
    q1: int  # reached by reading sigma1 then sigma2
    q2: int  # reached by reading sigma2 then sigma1


@dataclass(frozen=True)
class SymmetryCounterexample:
    w: Word
    w_perm: Word
    out_w: int
    out_perm: int

    def verify(self, fsa: Fsa) -> bool:
        return (
            Counter(self.w) == Counter(self.w_perm)
            and eval_fsa(fsa, self.w) == self.out_w
            and eval_fsa(fsa, self.w_perm) == self.out_perm
            and self.out_w != self.out_perm
        )

    def describe(self, fsa: Fsa) -> dict:
        return {
            "word": fsa.alphabet.decode(self.w),
            "permuted_word": fsa.alphabet.decode(self.w_perm),
            "output": fsa.outputs[self.out_w],
            "permuted_output": fsa.outputs[self.out_perm],
        }


def transitions_commute(fsa: Fsa) -> Optional[CommutativityViolation]:
    """First non-commuting ``(sigma1, sigma2, q)`` in lexicographic order, or None."""
    t = fsa.transitions
    k = len(t)
    for s1 in range(k):
        f1 = t[s1]
        for s2 in range(s1 + 1, k):
            f2 = t[s2]
            for q in range(fsa.num_states):
                q1 = f2[f1[q]]
                q2 = f1[f2[q]]
                if q1 != q2:
                    return CommutativityViolation(s1, s2, q, q1, q2)
    return None


def symmetry_counterexample(
    fsa_min: Fsa, v: CommutativityViolation, access: AccessMap
) -> SymmetryCounterexample:
    """Extend a commutativity violation on a minimal machine to permuted words."""
    prefix = access.words[v.q]
    suffix = distinguishing_word(fsa_min, v.q1, v.q2)
    if suffix is None:
        raise InternalInconsistencyError(
            f"states {v.q1} and {v.q2} are indistinguishable; machine is not minimal"
        )
    w = prefix + (v.sigma1, v.sigma2) + suffix
    w_perm = prefix + (v.sigma2, v.sigma1) + suffix
    cex = SymmetryCounterexample(w, w_perm, eval_fsa(fsa_min, w), eval_fsa(fsa_min, w_perm))
    if not cex.verify(fsa_min):
        raise InternalInconsistencyError(f"constructed counterexample does not verify: {cex}")
    return cex


def find_symmetry_counterexample(fsa: Fsa, minimization=None) -> Optional[SymmetryCounterexample]:
    """None when ``fsa`` is symmetric; otherwise a witness valid on ``fsa`` itself."""
    res = minimization or minimize(fsa)
    v = transitions_commute(res.minimized)
    if v is None:
        return None
    cex = symmetry_counterexample(res.minimized, v, res.access)
    # minimization preserves the computed function, so the words carry over
    if not cex.verify(fsa):
        raise InternalInconsistencyError("counterexample does not transfer to the original machine")
    return cex


def is_symmetric(fsa: Fsa) -> bool:
    return find_symmetry_counterexample(fsa) is None


def brute_force_counterexample(fsa: Fsa, max_len: int = 6, limit: int = 2_000_000):
    """Search all words up to ``max_len`` for two permutations with different outputs."""
    k = len(fsa.alphabet)
    total = sum(k**n for n in range(1, max_len + 1))
    if total > limit:
        raise ResourceLimitError(f"{total} words exceed the enumeration limit {limit}", partial=0)
    for n in range(1, max_len + 1):
        seen = {}
        for w in product(range(k), repeat=n):
            sig = tuple(Counter(w)[s] for s in range(k))
            out = eval_fsa(fsa, w)
            if sig not in seen:
                seen[sig] = (w, out)
            elif seen[sig][1] != out:
                first, first_out = seen[sig]
                return SymmetryCounterexample(first, w, first_out, out)
    return None


def brute_force_symmetric(fsa: Fsa, max_len: int = 6) -> bool:
    """Definition-level check: equal symbol multisets give equal outputs up to ``max_len``."""
    return brute_force_counterexample(fsa, max_len) is None
