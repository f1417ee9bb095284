"""JSON documents for automata.

One format covers both kinds, tagged by ``kind``.  Everything at the file
boundary is referred to by name::

    {
      "alphabet": ["a", "b"],
      "initial": "0",
      "kind": "fsa",
      "name": "mod3",
      "output_map": ["0", "1", "2"],
      "outputs": ["0", "1", "2"],
      "states": ["0", "1", "2"],
      "transitions": {"a": ["1", "2", "0"], "b": ["0", "1", "2"]}
    }

``transitions[sym][i]`` is the successor of ``states[i]`` and ``output_map[i]``
its output.  A ``"dca"`` document has ``alpha`` (symbol -> state) and
``combine`` (row per left state, column per right state) instead of
``initial`` and ``transitions``.

Serialization is canonical: sorted keys, two-space indent, trailing newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .core import Fsa, validate
from .errors import AutomatonError
from .synthesis import Dca, validate_dca

KINDS = ("fsa", "dca")


class DocumentError(AutomatonError, ValueError):
    def __init__(self, message, line=None, column=None, diagnostics=None):
        self.line = line
        self.column = column
        self.diagnostics = diagnostics or []
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass
class AutomatonDocument:
    kind: str
    name: str
    alphabet: List[str]
    states: List[str]
    outputs: List[str]
    output_map: List[str]
    initial: Optional[str] = None
    transitions: Optional[Dict[str, List[str]]] = None
    alpha: Optional[Dict[str, str]] = None
    combine: Optional[List[List[str]]] = field(default=None)

    def to_dict(self):
        d = {
            "kind": self.kind,
            "name": self.name,
            "alphabet": list(self.alphabet),
            "states": list(self.states),
            "outputs": list(self.outputs),
            "output_map": list(self.output_map),
        }
        if self.kind == "fsa":
            d["initial"] = self.initial
            d["transitions"] = {k: list(v) for k, v in self.transitions.items()}
        else:
            d["alpha"] = dict(self.alpha)
            d["combine"] = [list(r) for r in self.combine]
        return d

    def to_automaton(self):
        state_ix = _index(self.states, "state")
        out_ix = _index(self.outputs, "output")
        problems = []

        def lookup(table, name, where):
            if name not in table:
                problems.append(f"{where}: unknown name {name!r}")
                return -1
            return table[name]

        if len(self.output_map) != len(self.states):
            problems.append(f"output_map has {len(self.output_map)} entries for {len(self.states)} states")
        output_map = [lookup(out_ix, o, f"output_map[{i}]") for i, o in enumerate(self.output_map)]
        missing = [s for s in self.alphabet if s not in (self.transitions or self.alpha or {})]
        extra = [s for s in (self.transitions or self.alpha or {}) if s not in self.alphabet]
        if missing:
            problems.append(f"no entry for symbols {missing}")
        if extra:
            problems.append(f"entries for unknown symbols {extra}")
        if problems:
            raise DocumentError("; ".join(problems), diagnostics=problems)

        if self.kind == "fsa":
            initial = lookup(state_ix, self.initial, "initial")
            rows = [
                [lookup(state_ix, t, f"transitions[{sym!r}][{i}]") for i, t in enumerate(self.transitions[sym])]
                for sym in self.alphabet
            ]
            if problems:
                raise DocumentError("; ".join(problems), diagnostics=problems)
            auto = Fsa(self.alphabet, len(self.states), initial, rows, self.outputs, output_map,
                       state_names=self.states, name=self.name)
            problems = validate(auto)
        else:
            alpha = [lookup(state_ix, self.alpha[sym], f"alpha[{sym!r}]") for sym in self.alphabet]
            combine = [
                [lookup(state_ix, t, f"combine[{i}][{j}]") for j, t in enumerate(row)]
                for i, row in enumerate(self.combine)
            ]
            if problems:
                raise DocumentError("; ".join(problems), diagnostics=problems)
            auto = Dca(self.alphabet, len(self.states), alpha, combine, self.outputs, output_map,
                       state_names=self.states, name=self.name)
            problems = validate_dca(auto)
        if problems:
            raise DocumentError("; ".join(problems), diagnostics=problems)
        return auto


def _index(names, what):
    table = {}
    for i, n in enumerate(names):
        if n in table:
            raise DocumentError(f"duplicate {what} name {n!r}")
        table[n] = i
    return table


_REQUIRED = {
    "fsa": ("kind", "name", "alphabet", "states", "outputs", "output_map", "initial", "transitions"),
    "dca": ("kind", "name", "alphabet", "states", "outputs", "output_map", "alpha", "combine"),
}


def _expect(cond, message):
    if not cond:
        raise DocumentError(message)


def _str_list(value, key):
    _expect(isinstance(value, list) and all(isinstance(x, str) for x in value),
            f"{key!r} must be a list of strings")
    return list(value)


def parse_document(text: str) -> AutomatonDocument:
    """Parse and fully validate a document; errors name the offending row or position."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    _expect(isinstance(raw, dict), "document must be a JSON object")
    kind = raw.get("kind")
    _expect(kind in KINDS, f"'kind' must be one of {KINDS}, got {kind!r}")
    missing = [k for k in _REQUIRED[kind] if k not in raw]
    _expect(not missing, f"missing fields {missing}")
    unknown = sorted(set(raw) - set(_REQUIRED[kind]))
    _expect(not unknown, f"unexpected fields {unknown} for kind {kind!r}")
    _expect(isinstance(raw["name"], str), "'name' must be a string")

    doc = AutomatonDocument(
        kind=kind,
        name=raw["name"],
        alphabet=_str_list(raw["alphabet"], "alphabet"),
        states=_str_list(raw["states"], "states"),
        outputs=_str_list(raw["outputs"], "outputs"),
        output_map=_str_list(raw["output_map"], "output_map"),
    )
    if kind == "fsa":
        _expect(isinstance(raw["initial"], str), "'initial' must be a state name")
        _expect(isinstance(raw["transitions"], dict), "'transitions' must map symbols to state lists")
        doc.initial = raw["initial"]
        doc.transitions = {k: _str_list(v, f"transitions[{k!r}]") for k, v in raw["transitions"].items()}
    else:
        alpha = raw["alpha"]
        _expect(isinstance(alpha, dict) and all(isinstance(v, str) for v in alpha.values()),
                "'alpha' must map symbols to state names")
        _expect(isinstance(raw["combine"], list), "'combine' must be a list of rows")
        doc.alpha = dict(alpha)
        doc.combine = [_str_list(r, f"combine[{i}]") for i, r in enumerate(raw["combine"])]
    doc.to_automaton()
    return doc


def serialize_document(doc: AutomatonDocument) -> str:
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def document_from(auto) -> AutomatonDocument:
    names = list(auto.state_names)
    common = dict(
        name=auto.name,
        alphabet=list(auto.alphabet.symbols),
        states=names,
        outputs=list(auto.outputs),
        output_map=[auto.outputs[o] for o in auto.output_map],
    )
    if isinstance(auto, Fsa):
        return AutomatonDocument(
            kind="fsa",
            initial=names[auto.initial],
            transitions={sym: [names[t] for t in row] for sym, row in zip(auto.alphabet.symbols, auto.transitions)},
            **common,
        )
    return AutomatonDocument(
        kind="dca",
        alpha={sym: names[q] for sym, q in zip(auto.alphabet.symbols, auto.alpha)},
        combine=[[names[t] for t in row] for row in auto.combine],
        **common,
    )


def loads(text: str):
    return parse_document(text).to_automaton()


def dumps(auto) -> str:
    return serialize_document(document_from(auto))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(auto, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(auto))
