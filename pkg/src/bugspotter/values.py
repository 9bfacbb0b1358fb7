"""Typed values and their canonical text forms.

Function inputs and outputs cross a process boundary as text, so every
value type gets exactly one rendering and judging compares renderings
byte for byte. Floats use the shortest decimal form that round-trips
(Python ``repr``); the generated C driver reproduces the same format.
"""

from __future__ import annotations

import json
from enum import Enum
from typing import Any, Sequence


class ValueType(str, Enum):
    INTEGER = "integer"
    FLOAT = "float"
    STRING = "string"
    LIST_OF_INTEGERS = "list-of-integers"
    LIST_OF_FLOATS = "list-of-floats"
    BOOLEAN = "boolean"

    @property
    def is_list(self) -> bool:
        return self in (ValueType.LIST_OF_INTEGERS, ValueType.LIST_OF_FLOATS)


def coerce_value(raw: Any, kind: ValueType) -> Any:
    """Check a JSON-level value against `kind` and return its typed form.

    Ints are accepted where floats are declared (3 -> 3.0); everything
    else is strict, in particular bool never passes as integer.
    """
    if kind is ValueType.INTEGER:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ValueError(f"expected integer, got {raw!r}")
        return raw
    if kind is ValueType.FLOAT:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ValueError(f"expected float, got {raw!r}")
        return float(raw)
    if kind is ValueType.STRING:
        if not isinstance(raw, str):
            raise ValueError(f"expected string, got {raw!r}")
        return raw
    if kind is ValueType.BOOLEAN:
        if not isinstance(raw, bool):
            raise ValueError(f"expected boolean, got {raw!r}")
        return raw
    if kind is ValueType.LIST_OF_INTEGERS:
        if not isinstance(raw, list):
            raise ValueError(f"expected list of integers, got {raw!r}")
        return [coerce_value(item, ValueType.INTEGER) for item in raw]
    if kind is ValueType.LIST_OF_FLOATS:
        if not isinstance(raw, list):
            raise ValueError(f"expected list of floats, got {raw!r}")
        return [coerce_value(item, ValueType.FLOAT) for item in raw]
    raise ValueError(f"unknown value type {kind!r}")


def render_value(value: Any, kind: ValueType) -> str:
    """Canonical text for a typed value."""
    if kind is ValueType.INTEGER:
        return str(value)
    if kind is ValueType.FLOAT:
        return repr(float(value))
    if kind is ValueType.STRING:
        return json.dumps(value, ensure_ascii=False)
    if kind is ValueType.BOOLEAN:
        return "true" if value else "false"
    if kind is ValueType.LIST_OF_INTEGERS:
        return "[" + ", ".join(str(v) for v in value) + "]"
    if kind is ValueType.LIST_OF_FLOATS:
        return "[" + ", ".join(repr(float(v)) for v in value) + "]"
    raise ValueError(f"unknown value type {kind!r}")


def render_input_lines(values: Sequence[Any], kinds: Sequence[ValueType]) -> str:
    """Canonical input text: one argument per line, in signature order."""
    if len(values) != len(kinds):
        raise ValueError(f"arity mismatch: {len(values)} values for {len(kinds)} parameters")
    return "\n".join(render_value(v, k) for v, k in zip(values, kinds))


def parse_rendered(text: str, kind: ValueType) -> Any:
    """Inverse of render_value for a single canonical line.

    Canonical renderings are a JSON subset except booleans, which JSON
    shares anyway, so one json.loads plus a type check suffices.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not a canonical {kind.value} rendering: {text!r}") from exc
    return coerce_value(raw, kind)
