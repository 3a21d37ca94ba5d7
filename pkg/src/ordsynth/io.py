"""JSON formats for automata, words and plants, plus a compact word syntax.

Automaton JSON::

    {"actions": [...], "states": [...], "initial": [...], "final": [...],
     "steps": [{"from": q, "label": [actions], "to": q2}, ...],
     "limits": [{"from": [states], "to": q}, ...],
     "level": {state: int}}            # optional

Word JSON: ``{"letter": [...]}``, ``{"any": true}``, ``{"concat": [...]}``,
``{"omega": term}``.  The compact syntax writes letters as ``{a,b}`` (``{}``
is the empty letter), the wildcard as ``*``, and ``(concat t1 t2 ...)`` /
``(omega t)`` for the constructors.

Plant JSON: ``{"automaton": <automaton>, "observable": [...],
"controllable": [...], "level": k}``.
"""
from __future__ import annotations

import json
import re
from typing import Any

from .automaton import (
    ANY,
    AnySym,
    AutomatonError,
    Concat,
    OmegaPower,
    OrdinalAutomaton,
    Sym,
    Word,
    letter_key,
)


class FormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    return obj[key]


def _str_list(value, where: str) -> list:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise FormatError(f"{where}: expected a list of strings")
    return value


def automaton_from_json(data: Any, where: str = "automaton") -> OrdinalAutomaton:
    actions = _str_list(_require(data, "actions", where), f"{where}.actions")
    states = _str_list(_require(data, "states", where), f"{where}.states")
    initial = _str_list(_require(data, "initial", where), f"{where}.initial")
    final = _str_list(_require(data, "final", where), f"{where}.final")
    steps = []
    for i, s in enumerate(data.get("steps", [])):
        w = f"{where}.steps[{i}]"
        src = _require(s, "from", w)
        dst = _require(s, "to", w)
        label = _str_list(_require(s, "label", w), f"{w}.label")
        if not isinstance(src, str) or not isinstance(dst, str):
            raise FormatError(f"{w}: 'from' and 'to' must be state names")
        steps.append((src, frozenset(label), dst))
    limits = []
    for i, lim in enumerate(data.get("limits", [])):
        w = f"{where}.limits[{i}]"
        src = _str_list(_require(lim, "from", w), f"{w}.from")
        dst = _require(lim, "to", w)
        if not isinstance(dst, str):
            raise FormatError(f"{w}.to: expected a state name")
        limits.append((frozenset(src), dst))
    level = data.get("level")
    if level is not None:
        if not isinstance(level, dict) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in level.values()
        ):
            raise FormatError(f"{where}.level: expected a map from states to integers")
    try:
        return OrdinalAutomaton(
            actions=frozenset(actions),
            states=frozenset(states),
            step=frozenset(steps),
            limits=frozenset(limits),
            initial=frozenset(initial),
            final=frozenset(final),
            level=dict(level) if level is not None else None,
        )
    except AutomatonError as exc:
        raise FormatError(f"{where}: {exc}") from None


def automaton_to_json(A: OrdinalAutomaton) -> dict:
    out = {
        "actions": sorted(A.actions),
        "states": sorted(A.states, key=str),
        "initial": sorted(A.initial, key=str),
        "final": sorted(A.final, key=str),
        "steps": [
            {"from": q, "label": sorted(a), "to": q2}
            for q, a, q2 in sorted(A.step, key=lambda t: (str(t[0]), letter_key(t[1]), str(t[2])))
        ],
        "limits": [
            {"from": sorted(P, key=str), "to": q}
            for P, q in sorted(A.all_limits, key=lambda t: (sorted(map(str, t[0])), str(t[1])))
        ],
    }
    if A.level is not None:
        out["level"] = {q: A.level[q] for q in sorted(A.level, key=str)}
    return out


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None


def load_automaton(path: str) -> OrdinalAutomaton:
    return automaton_from_json(load_json(path), where=path)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# words

def word_from_json(data: Any, where: str = "word") -> Word:
    if not isinstance(data, dict) or len(data) != 1:
        raise FormatError(f"{where}: expected an object with exactly one of letter/any/concat/omega")
    (key, value), = data.items()
    if key == "letter":
        return Sym(frozenset(_str_list(value, f"{where}.letter")))
    if key == "any":
        if value is not True:
            raise FormatError(f"{where}.any: expected true")
        return ANY
    if key == "concat":
        if not isinstance(value, list) or not value:
            raise FormatError(f"{where}.concat: expected a non-empty list")
        return Concat(tuple(word_from_json(v, f"{where}.concat[{i}]") for i, v in enumerate(value)))
    if key == "omega":
        return OmegaPower(word_from_json(value, f"{where}.omega"))
    raise FormatError(f"{where}: unknown word constructor {key!r}")


def word_to_json(w: Word) -> dict:
    if isinstance(w, Sym):
        return {"letter": sorted(w.letter)}
    if isinstance(w, AnySym):
        return {"any": True}
    if isinstance(w, Concat):
        return {"concat": [word_to_json(x) for x in w.items]}
    return {"omega": word_to_json(w.body)}


_TOKEN = re.compile(r"\s*(\(|\)|\{[^}]*\}|\*|[A-Za-z_][\w-]*)")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormatError(f"word syntax error at offset {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_word(text: str) -> Word:
    """Parse the compact syntax, e.g. ``(omega (concat (omega {a}) {b}))``."""
    toks = _tokens(text)
    if not toks:
        raise FormatError("empty word")
    w, i = _parse_word(toks, 0)
    if i != len(toks):
        raise FormatError(f"trailing input in word: {' '.join(toks[i:])}")
    return w


def _parse_word(toks: list[str], i: int):
    if i >= len(toks):
        raise FormatError("unexpected end of word")
    tok = toks[i]
    if tok == "*":
        return ANY, i + 1
    if tok.startswith("{"):
        inner = tok[1:-1].strip()
        acts = [a.strip() for a in inner.split(",")] if inner else []
        if any(not a for a in acts):
            raise FormatError(f"bad letter {tok}")
        return Sym(frozenset(acts)), i + 1
    if tok != "(":
        raise FormatError(f"unexpected token {tok!r} in word")
    if i + 1 >= len(toks):
        raise FormatError("unexpected end of word")
    head = toks[i + 1]
    i += 2
    items = []
    while i < len(toks) and toks[i] != ")":
        item, i = _parse_word(toks, i)
        items.append(item)
    if i >= len(toks):
        raise FormatError("missing ')' in word")
    i += 1
    if head == "omega":
        if len(items) != 1:
            raise FormatError("omega takes exactly one argument")
        return OmegaPower(items[0]), i
    if head == "concat":
        if not items:
            raise FormatError("concat needs at least one argument")
        return Concat(tuple(items)), i
    raise FormatError(f"unknown word constructor {head!r}")


def format_word(w: Word) -> str:
    if isinstance(w, Sym):
        return "{" + ",".join(sorted(w.letter)) + "}"
    if isinstance(w, AnySym):
        return "*"
    if isinstance(w, Concat):
        return "(concat " + " ".join(format_word(x) for x in w.items) + ")"
    return "(omega " + format_word(w.body) + ")"


def load_word(arg: str) -> Word:
    """Inline compact syntax, inline JSON, or a path to a JSON file."""
    s = arg.strip()
    if s.startswith("(") or s.startswith("{") and not s.startswith('{"') or s == "*":
        return parse_word(s)
    if s.startswith("{"):
        try:
            return word_from_json(json.loads(s))
        except json.JSONDecodeError as exc:
            raise FormatError(f"word JSON: {exc.msg}") from None
    return word_from_json(load_json(s), where=s)


# ---------------------------------------------------------------------------
# plants

def plant_from_json(data: Any, where: str = "plant"):
    from .synthesis import PlantSpec, SpecError
    from .winning import ActionPartition, PartitionError

    A = automaton_from_json(_require(data, "automaton", where), f"{where}.automaton")
    observable = _str_list(_require(data, "observable", where), f"{where}.observable")
    controllable = _str_list(_require(data, "controllable", where), f"{where}.controllable")
    level = _require(data, "level", where)
    if not isinstance(level, int) or isinstance(level, bool):
        raise FormatError(f"{where}.level: expected an integer")
    actions = data.get("actions", sorted(A.actions))
    actions = _str_list(actions, f"{where}.actions")
    try:
        parts = ActionPartition(frozenset(actions), frozenset(observable), frozenset(controllable))
        return PlantSpec(A, parts, level)
    except (PartitionError, SpecError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def plant_to_json(spec) -> dict:
    out = {
        "automaton": automaton_to_json(spec.plant),
        "observable": sorted(spec.parts.observable),
        "controllable": sorted(spec.parts.controllable),
        "level": spec.level,
    }
    if spec.parts.actions != spec.plant.actions:
        out["actions"] = sorted(spec.parts.actions)
    return out


def load_plant(path: str):
    return plant_from_json(load_json(path), where=path)
