"""Hand-rolled lexers for C and Python plus token-level edit distance.

Tokens are the lexical atoms (identifiers, keywords, literals, operators,
punctuation); whitespace and comments never appear in the stream, so the
distance between two programs ignores cosmetic edits. Both codes have
already compiled by the time they are diffed, but the lexers still fail
soft-free: only a structurally unlexable construct raises LexError.
"""

from __future__ import annotations

from .errors import LexError
from .problems import Language

# Longest-match operator tables, pre-sorted by length.
_PY_OPERATORS = sorted(
    [
        "**=", "//=", ">>=", "<<=", "...", "!=", ">=", "<=", "==", "->", ":=",
        "+=", "-=", "*=", "/=", "%=", "@=", "&=", "|=", "^=", "**", "//",
        ">>", "<<", "+", "-", "*", "/", "%", "@", "<", ">", "&", "|", "^",
        "~", "=", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";",
    ],
    key=len,
    reverse=True,
)

_C_OPERATORS = sorted(
    [
        ">>=", "<<=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==",
        "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=",
        "+", "-", "*", "/", "%", "<", ">", "&", "|", "^", "~", "!", "=",
        "?", ":", ";", ",", ".", "(", ")", "[", "]", "{", "}", "#",
    ],
    key=len,
    reverse=True,
)

_PY_STRING_PREFIXES = {
    "r", "b", "u", "f", "rb", "br", "rf", "fr",
    "R", "B", "U", "F", "Rb", "bR", "Rf", "fR",
    "rB", "Br", "rF", "Fr", "RB", "BR", "RF", "FR",
}


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ch.isalpha()


def _is_ident_part(ch: str) -> bool:
    return ch == "_" or ch.isalnum()


def _scan_number(text: str, i: int) -> int:
    """Consume a numeric literal starting at i; returns the end index.

    Deliberately permissive: digits, hex/bin/oct markers, decimal points,
    exponents with signs, underscores, and type suffixes are swallowed in
    one token. Good enough for diffing; not a validator.
    """
    n = len(text)
    j = i
    if text[j] == "." :
        j += 1
    if j < n and text[j] in "0123456789":
        while j < n and (text[j].isalnum() or text[j] in "._"):
            if text[j] in "eEpP" and j + 1 < n and text[j + 1] in "+-":
                j += 2
                continue
            j += 1
        return j
    return i


def _scan_py_string(text: str, i: int) -> int:
    n = len(text)
    quote = text[i]
    if text[i : i + 3] in ('"""', "'''"):
        closer = text[i : i + 3]
        j = i + 3
        while j < n:
            if text[j] == "\\":
                j += 2
                continue
            if text[j : j + 3] == closer:
                return j + 3
            j += 1
        raise LexError(f"unterminated triple-quoted string at index {i}")
    j = i + 1
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == quote:
            return j + 1
        if ch == "\n":
            break
        j += 1
    raise LexError(f"unterminated string at index {i}")


def _scan_c_string(text: str, i: int) -> int:
    n = len(text)
    quote = text[i]
    j = i + 1
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == quote:
            return j + 1
        if ch == "\n":
            break
        j += 1
    raise LexError(f"unterminated {'char' if quote == chr(39) else 'string'} literal at index {i}")


def _match_operator(text: str, i: int, table: list[str]) -> str | None:
    for op in table:
        if text.startswith(op, i):
            return op
    return None


def tokenize_python(code: str) -> list[str]:
    tokens: list[str] = []
    i, n = 0, len(code)
    while i < n:
        ch = code[i]
        if ch in " \t\r\n\f\v":
            i += 1
            continue
        if ch == "\\" and i + 1 < n and code[i + 1] == "\n":
            i += 2
            continue
        if ch == "#":
            while i < n and code[i] != "\n":
                i += 1
            continue
        if ch in "\"'":
            end = _scan_py_string(code, i)
            tokens.append(code[i:end])
            i = end
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_part(code[j]):
                j += 1
            word = code[i:j]
            if word in _PY_STRING_PREFIXES and j < n and code[j] in "\"'":
                end = _scan_py_string(code, j)
                tokens.append(code[i:end])
                i = end
            else:
                tokens.append(word)
                i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and code[i + 1].isdigit()):
            end = _scan_number(code, i)
            if end > i:
                tokens.append(code[i:end])
                i = end
                continue
        op = _match_operator(code, i, _PY_OPERATORS)
        if op:
            tokens.append(op)
            i += len(op)
            continue
        raise LexError(f"unlexable character {ch!r} at index {i}")
    return tokens


def tokenize_c(code: str) -> list[str]:
    tokens: list[str] = []
    i, n = 0, len(code)
    while i < n:
        ch = code[i]
        if ch in " \t\r\n\f\v":
            i += 1
            continue
        if ch == "\\" and i + 1 < n and code[i + 1] == "\n":
            i += 2
            continue
        if code.startswith("//", i):
            while i < n and code[i] != "\n":
                i += 1
            continue
        if code.startswith("/*", i):
            end = code.find("*/", i + 2)
            if end < 0:
                raise LexError(f"unterminated block comment at index {i}")
            i = end + 2
            continue
        if ch in "\"'":
            end = _scan_c_string(code, i)
            tokens.append(code[i:end])
            i = end
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_part(code[j]):
                j += 1
            tokens.append(code[i:j])
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and code[i + 1].isdigit()):
            end = _scan_number(code, i)
            if end > i:
                tokens.append(code[i:end])
                i = end
                continue
        op = _match_operator(code, i, _C_OPERATORS)
        if op:
            tokens.append(op)
            i += len(op)
            continue
        raise LexError(f"unlexable character {ch!r} at index {i}")
    return tokens


def tokenize(code: str, language: Language) -> list[str]:
    if language is Language.PYTHON:
        return tokenize_python(code)
    return tokenize_c(code)


def levenshtein(a, b) -> int:
    """Classic three-operation edit distance over two sequences."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        current = [i]
        for j, y in enumerate(b, start=1):
            cost = 0 if x == y else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[len(b)]
