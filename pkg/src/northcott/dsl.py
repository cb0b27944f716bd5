"""Text grammar for monomials, ideals, ideal tuples, polynomials and matrices.

Monomials are products of variable powers separated by ``*``, whitespace or
nothing at all (``x^2y``, ``x^2 * y``).  Variables are ``x, y, z`` when the
ambient dimension is at most three and ``x1 .. xd`` otherwise.  An ideal is a
comma-separated list of monomials (``1`` is the unit ideal) and a direct sum of
ideals separates the summands with ``|``.  Polynomials carry signed integer or
rational coefficients: ``2x^2y - 3y^3``, ``1/2 x y``, ``0``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from .staircase import MonomialIdeal, Ring, ideal

if TYPE_CHECKING:
    from .reesmod import GeneratorMatrix, RingElement


class DSLError(ValueError):
    """Parse error carrying a 1-based line and column."""

    def __init__(self, message: str, text: str = "", pos: int = 0, line: int = 1):
        self.message = message
        self.text = text
        self.line = line
        self.column = pos + 1
        super().__init__(f"line {line}, column {self.column}: {message}" + (f" in {text!r}" if text else ""))


_FACTOR = re.compile(r"\s*([a-z])(\d*)\s*(?:\^\s*(\d+))?")


def _var_index(ring: Ring, letter: str, digits: str, text: str, pos: int) -> int:
    if ring.dim <= 3:
        names = "xyz"[: ring.dim]
        if digits or letter not in names:
            raise DSLError(f"unknown variable {letter + digits!r} (expected one of {', '.join(names)})", text, pos)
        return names.index(letter)
    if letter != "x" or not digits:
        raise DSLError(f"unknown variable {letter + digits!r} (expected x1..x{ring.dim})", text, pos)
    j = int(digits)
    if not 1 <= j <= ring.dim:
        raise DSLError(f"variable index {j} outside 1..{ring.dim}", text, pos)
    return j - 1


def _parse_monomial_at(ring: Ring, text: str, start: int, end: int) -> list[int]:
    """Exponent vector of the variable product text[start:end]."""
    exps = [0] * ring.dim
    pos = start
    seen = False
    while pos < end:
        while pos < end and text[pos] in " \t*":
            pos += 1
        if pos >= end:
            break
        m = _FACTOR.match(text, pos, end)
        if not m or m.end() == pos:
            raise DSLError(f"unexpected character {text[pos]!r}", text, pos)
        j = _var_index(ring, m.group(1), m.group(2), text, m.start(1))
        exps[j] += int(m.group(3)) if m.group(3) else 1
        seen = True
        pos = m.end()
    if not seen:
        raise DSLError("empty monomial", text, start)
    return exps


def parse_monomial(text: str, ring: Ring) -> tuple[int, ...]:
    s = text.strip()
    if s == "1":
        return (0,) * ring.dim
    return tuple(_parse_monomial_at(ring, text, 0, len(text)))


def _split_positions(text: str, sep: str) -> list[tuple[int, int]]:
    spans, start = [], 0
    for i, ch in enumerate(text):
        if ch == sep:
            spans.append((start, i))
            start = i + 1
    spans.append((start, len(text)))
    return spans


def parse_monomial_list(text: str, ring: Ring) -> list[tuple[int, ...]]:
    out = []
    for a, b in _split_positions(text, ","):
        piece = text[a:b]
        if not piece.strip():
            raise DSLError("empty generator", text, a)
        if piece.strip() == "1":
            out.append((0,) * ring.dim)
        else:
            out.append(tuple(_parse_monomial_at(ring, text, a, b)))
    return out


def parse_ring(dim: int, relations: str | None = None) -> Ring:
    if not relations or not relations.strip():
        return Ring(dim)
    return Ring(dim, tuple(parse_monomial_list(relations, Ring(dim))))


def parse_ideal(text: str, ring: Ring) -> MonomialIdeal:
    return ideal(ring, parse_monomial_list(text, ring))


def parse_ideal_tuple(text: str, ring: Ring) -> list[MonomialIdeal]:
    parts = []
    for a, b in _split_positions(text, "|"):
        piece = text[a:b]
        if not piece.strip():
            raise DSLError("empty summand", text, a)
        try:
            parts.append(parse_ideal(piece, ring))
        except DSLError as err:
            raise DSLError(err.message, text, a + err.column - 1) from None
    return parts


_TERM_SPLIT = re.compile(r"[+-]")


def parse_polynomial(text: str, ring: Ring) -> "RingElement":
    from .reesmod import RingElement

    s = text
    terms: dict[tuple[int, ...], Fraction] = {}
    if not s.strip():
        raise DSLError("empty polynomial", text, 0)
    # cut into signed terms; exponents are unsigned, so every +/- starts a term
    cuts = [0] + [m.start() for m in _TERM_SPLIT.finditer(s) if m.start() > 0] + [len(s)]
    for a, b in zip(cuts, cuts[1:]):
        piece = s[a:b]
        if not piece.strip():
            if a == 0:
                continue
            raise DSLError("empty term", text, a)
        pos = a
        sign = 1
        while pos < b and s[pos] in " \t":
            pos += 1
        if pos < b and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        m = re.compile(r"\s*(\d+(?:/\d+)?)?").match(s, pos, b)
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        pos = m.end()
        rest = s[pos:b]
        if rest.strip() in ("", "*"):
            if not m.group(1):
                raise DSLError("term without coefficient or variables", text, a)
            exps = (0,) * ring.dim
        else:
            while pos < b and s[pos] in " \t*":
                pos += 1
            exps = tuple(_parse_monomial_at(ring, s, pos, b))
        terms[exps] = terms.get(exps, Fraction(0)) + sign * coeff
    return RingElement.from_terms(terms)


def _parse_bracket_matrix(text: str) -> list[list[str]]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise DSLError("matrix must look like [[a,b],[c,d]]", text, 0)
    inner = s[1:-1].strip()
    rows = re.findall(r"\[([^\[\]]*)\]", inner)
    leftover = re.sub(r"\[[^\[\]]*\]", "", inner).replace(",", "").strip()
    if not rows or leftover:
        raise DSLError("malformed matrix rows", text, 0)
    return [[e.strip() for e in row.split(",")] for row in rows]


def parse_matrix(source: str, ring: Ring, p: int | None = None) -> "GeneratorMatrix":
    """Matrix from ``[[..],[..]]`` text, a JSON document, or a path to either.

    The JSON document has the shape ``{"rank": r, "entries": [[poly, ...], ...]}``.
    """
    from .reesmod import GeneratorMatrix

    text = source
    path = Path(source)
    if not source.lstrip().startswith(("[", "{")) and path.is_file():
        text = path.read_text()
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise DSLError(err.msg, "", err.colno - 1, err.lineno) from None
        rows = doc.get("entries")
        if not isinstance(rows, list) or not rows:
            raise DSLError("matrix document needs a non-empty 'entries' list")
        if "rank" in doc and doc["rank"] != len(rows):
            raise DSLError(f"'rank' is {doc['rank']} but 'entries' has {len(rows)} rows")
        rows = [[str(e) for e in row] for row in rows]
    else:
        rows = _parse_bracket_matrix(stripped)
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DSLError(f"row {i + 1} has {len(row)} entries, expected {width}", line=i + 1)
    entries = []
    for i, row in enumerate(rows):
        parsed = []
        for e in row:
            try:
                parsed.append(parse_polynomial(e, ring))
            except DSLError as err:
                raise DSLError(err.message, e, err.column - 1, i + 1) from None
        entries.append(parsed)
    return GeneratorMatrix.from_rows(ring, entries, p=p)


def format_monomial(e, ring: Ring) -> str:
    names = ring.variable_names()
    parts = []
    for name, v in zip(names, e):
        if v == 1:
            parts.append(name)
        elif v > 1:
            parts.append(f"{name}^{v}")
    sep = "" if ring.dim <= 3 else "*"
    return sep.join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "0"
    return ",".join(format_monomial(g, I.ring) for g in I.gens)


def format_tuple(ideals) -> str:
    return " | ".join(format_ideal(I) for I in ideals)
