"""Small named automata used by the test-suite, the acceptance run and the CLI docs."""

from dataclasses import replace

from .core import Fsa
from .synthesis import Dca, synthesize_symmetric_dca


def from_rules(name, symbols, states, initial, delta, beta) -> Fsa:
    """Build an Fsa from python callables ``delta(state, symbol)`` and ``beta(state)``.

    ``states`` may be any hashables; they are numbered in the given order and
    named with ``str``.  Outputs are numbered in order of first appearance.
    """
    states = list(states)
    index = {s: i for i, s in enumerate(states)}
    outputs = []
    output_map = []
    for s in states:
        o = str(beta(s))
        if o not in outputs:
            outputs.append(o)
        output_map.append(outputs.index(o))
    transitions = [[index[delta(s, a)] for s in states] for a in symbols]
    names = [_name(s) for s in states]
    return Fsa(symbols, len(states), index[initial], transitions, outputs, output_map,
               state_names=names, name=name).check()


def _name(s):
    if isinstance(s, tuple):
        return "".join(str(x) for x in s)
    return str(s)


def mod_counter(m=3):
    """Counts a's modulo m; b is ignored.  Output is the count."""
    return from_rules(f"mod{m}", "ab", range(m), 0,
                      lambda q, s: (q + 1) % m if s == "a" else q, lambda q: q)


def mod3_low_high():
    return from_rules("mod3-lowhigh", "ab", range(3), 0,
                      lambda q, s: (q + 1) % 3 if s == "a" else q,
                      lambda q: "high" if q == 2 else "low")


def saturating_adder(cap=2):
    return from_rules(f"sat{cap}", "ab", range(cap + 1), 0,
                      lambda q, s: min(q + 1, cap) if s == "a" else q,
                      lambda q: f"{q}+" if q == cap else q)


def threshold(need_a=2, need_b=1):
    """Accept once at least ``need_a`` a's and ``need_b`` b's have been read."""
    states = [(i, j) for i in range(need_a + 1) for j in range(need_b + 1)]

    def delta(q, s):
        i, j = q
        return (min(i + 1, need_a), j) if s == "a" else (i, min(j + 1, need_b))

    return from_rules(f"threshold-a{need_a}-b{need_b}", "ab", states, (0, 0), delta,
                      lambda q: "accept" if q == (need_a, need_b) else "reject")


def parity_and_cap():
    """Three symbols: parity of a's, b's saturating at 2, c ignored."""
    states = [(i, j) for i in range(2) for j in range(3)]

    def delta(q, s):
        i, j = q
        if s == "a":
            return (1 - i, j)
        if s == "b":
            return (i, min(j + 1, 2))
        return q

    return from_rules("parity-cap", "abc", states, (0, 0), delta,
                      lambda q: "yes" if q[0] == 1 and q[1] >= 1 else "no")


def weighted_parity():
    """Sum of weights a=1, b=2, c=3 kept mod 4 but only its parity is output (not minimal)."""
    weight = {"a": 1, "b": 2, "c": 3}
    return from_rules("weighted-parity", "abc", range(4), 0,
                      lambda q, s: (q + weight[s]) % 4, lambda q: "odd" if q % 2 else "even")


def unary_mod(m=4):
    return from_rules(f"unary-mod{m}", "a", range(m), 0, lambda q, s: (q + 1) % m,
                      lambda q: "yes" if q == 0 else "no")


def unary_saturating(cap=3):
    return from_rules(f"unary-sat{cap}", "a", range(cap + 1), 0, lambda q, s: min(q + 1, cap),
                      lambda q: q)


def split_mod3():
    """Mod-3 counter with state 1 split into twins 1 and 1' that b toggles between.

    The transitions do not commute (from 0, "ab" ends in 1' but "ba" in 1),
    yet the twins are indistinguishable, so the machine is symmetric.
    """
    states = [0, 1, "1'", 2]
    nxt_a = {0: 1, 1: 2, "1'": 2, 2: 0}
    nxt_b = {0: 0, 1: "1'", "1'": 1, 2: 2}
    return from_rules("split-mod3", "ab", states, 0,
                      lambda q, s: nxt_a[q] if s == "a" else nxt_b[q],
                      lambda q: 1 if q in (1, "1'") else q)


def mod3_with_junk():
    """Mod-3 counter plus an unreachable state on which a and b fail to commute."""
    states = [0, 1, 2, "j"]
    nxt_a = {0: 1, 1: 2, 2: 0, "j": 0}
    nxt_b = {0: 0, 1: 1, 2: 2, "j": 1}
    return from_rules("mod3-junk", "ab", states, 0,
                      lambda q, s: nxt_a[q] if s == "a" else nxt_b[q],
                      lambda q: 0 if q == "j" else q)


def ab_detector():
    """Accepts words containing "ab" as a substring (order sensitive)."""
    table = {("s0", "a"): "s1", ("s0", "b"): "s0", ("s1", "a"): "s1", ("s1", "b"): "acc",
             ("acc", "a"): "acc", ("acc", "b"): "acc"}
    return from_rules("ab-detector", "ab", ["s0", "s1", "acc"], "s0",
                      lambda q, s: table[(q, s)], lambda q: "accept" if q == "acc" else "reject")


def first_symbol():
    """Remembers the first symbol read."""
    return from_rules("first-symbol", "ab", ["start", "A", "B"], "start",
                      lambda q, s: ("A" if s == "a" else "B") if q == "start" else q,
                      lambda q: q)


def last_symbol():
    return from_rules("last-symbol", "abc", ["none", "a", "b", "c"], "none",
                      lambda q, s: s, lambda q: q)


def symmetric_fixtures():
    return [
        mod_counter(3),
        mod3_low_high(),
        saturating_adder(2),
        threshold(2, 1),
        parity_and_cap(),
        weighted_parity(),
        unary_mod(4),
        unary_saturating(3),
        split_mod3(),
        mod3_with_junk(),
        mod_counter(5),
    ]


def nonsymmetric_fixtures():
    from .lowerbound import build_hard_fsa

    return [ab_detector(), first_symbol(), last_symbol(), build_hard_fsa(2), build_hard_fsa(3)]


def all_fixtures():
    return symmetric_fixtures() + nonsymmetric_fixtures()


def perturbed_mod3_dca() -> Dca:
    """Synthesized mod-3 automaton with combine[0][1] changed from 1 to 2.

    On "baa" the split (b)(aa) ends in state 2 but (ba)(a) ends in state 0.
    """
    dca = synthesize_symmetric_dca(mod_counter(3)).dca
    return replace(dca.with_entry(0, 1, 2), name="mod3-perturbed")
