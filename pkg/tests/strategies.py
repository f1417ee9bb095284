"""Hypothesis strategies for random automata."""

from itertools import product

from hypothesis import strategies as st

from symdca.core import Fsa


@st.composite
def fsas(draw, max_states=5, max_symbols=3, max_outputs=3):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, max_symbols))
    m = draw(st.integers(1, max_outputs))
    rows = [draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)) for _ in range(k)]
    beta = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    initial = draw(st.integers(0, n - 1))
    return Fsa("abc"[:k], n, initial, rows, [f"o{i}" for i in range(m)], beta).check()


@st.composite
def symmetric_fsas(draw, max_states=6, max_symbols=3):
    """Products of cyclic and saturating counters with a random output map.

    Each symbol adds a fixed amount to every counter, so all transitions
    commute and the machine is symmetric by construction.
    """
    k = draw(st.integers(1, max_symbols))
    kinds = draw(st.lists(st.tuples(st.sampled_from(["mod", "sat"]), st.integers(2, 3)),
                          min_size=1, max_size=2))
    sizes = [size for _, size in kinds]
    states = list(product(*[range(s) for s in sizes]))
    if len(states) > max_states:
        kinds, sizes = kinds[:1], sizes[:1]
        states = list(product(range(sizes[0])))
    incs = [[draw(st.integers(0, s - 1)) for s in sizes] for _ in range(k)]

    def bump(q, inc):
        out = []
        for (kind, size), x, d in zip(kinds, q, inc):
            out.append((x + d) % size if kind == "mod" else min(x + d, size - 1))
        return tuple(out)

    index = {q: i for i, q in enumerate(states)}
    rows = [[index[bump(q, incs[s])] for q in states] for s in range(k)]
    m = draw(st.integers(1, 3))
    beta = draw(st.lists(st.integers(0, m - 1), min_size=len(states), max_size=len(states)))
    return Fsa("abc"[:k], len(states), 0, rows, [f"o{i}" for i in range(m)], beta).check()
