"""Group-file parsing and serialisation.

A group file is a JSON object:

    {"p": 2, "k": 2, "defining_poly": [1, 1, 1],
     "vars": ["X"],
     "generators": [[["1", "t*X + 1"], ["0", "1"]], ...]}

defining_poly lists the coefficients of the extension's monic irreducible
polynomial, low degree first, and may be omitted (also for k = 1), in which
case a deterministic smallest-lexicographic choice is made.  Matrix entries
are expressions over the declared variables plus `t` (the extension
generator, only when k > 1) with operators + - * / ^, integer literals
reduced mod p, parentheses, the usual precedence (^ above unary minus above
* / above + -), left associativity, and ^ right-associative with nonnegative
integer exponents.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from . import gf
from .funcfield import FuncField
from .linalg import Mat


class GroupFileError(ValueError):
    """Malformed group file (structure, field data, or matrix contents)."""


class ParseError(GroupFileError):
    """Expression syntax error with position information."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"[0-9]+|[A-Za-z_][A-Za-z0-9_]*|[-+*/^()]")


def _tokenize(text):
    tokens = []
    line = 1
    col = 1
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch.isspace():
            col += 1
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        tok = m.group()
        if tok[0].isdigit():
            kind = "num"
        elif tok[0].isalpha() or tok[0] == "_":
            kind = "ident"
        else:
            kind = "op"
        tokens.append((kind, tok, line, col))
        col += len(tok)
        pos = m.end()
    return tokens


class _ExprParser:
    def __init__(self, field, text):
        self.field = field
        self.tokens = _tokenize(text)
        self.idx = 0
        self.end_pos = (1, len(text) + 1)
        if self.tokens:
            last = self.tokens[-1]
            self.end_pos = (last[2], last[3] + len(last[1]))

    def _peek(self):
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of expression", *self.end_pos)
        self.idx += 1
        return tok

    def parse(self):
        value = self._sum()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])
        return value

    def _sum(self):
        left = self._product()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return left
            self._next()
            right = self._product()
            left = left + right if tok[1] == "+" else left - right

    def _product(self):
        left = self._unary()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "*/":
                return left
            self._next()
            right = self._unary()
            if tok[1] == "*":
                left = left * right
            else:
                try:
                    left = left / right
                except ZeroDivisionError:
                    raise ParseError("division by zero", tok[2], tok[3]) from None

    def _unary(self):
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            self._next()
            return -self._unary()
        return self._power()

    def _power(self):
        base = self._primary()
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self._next()
            return base ** self._exponent()
        return base

    def _exponent(self):
        tok = self._next()
        if tok[0] == "op" and tok[1] == "(":
            val = self._exponent()
            closing = self._next()
            if closing[1] != ")":
                raise ParseError("expected ')'", closing[2], closing[3])
        elif tok[0] == "num":
            val = int(tok[1])
        else:
            raise ParseError(
                "exponent must be a nonnegative integer", tok[2], tok[3]
            )
        nxt = self._peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
            self._next()
            val = val ** self._exponent()
        return val

    def _primary(self):
        tok = self._next()
        kind, value, line, col = tok
        if kind == "num":
            return self.field.constant(int(value))
        if kind == "ident":
            if value in self.field.names:
                return self.field.var(self.field.names.index(value))
            if value == "t":
                if self.field.ctx.k == 1:
                    raise ParseError(
                        "t is only available over an extension field", line, col
                    )
                return self.field.constant(self.field.ctx.gen())
            raise ParseError(f"unknown identifier {value!r}", line, col)
        if kind == "op" and value == "(":
            inner = self._sum()
            closing = self._next()
            if closing[1] != ")":
                raise ParseError("expected ')'", closing[2], closing[3])
            return inner
        raise ParseError(f"unexpected token {value!r}", line, col)


def parse_entry(field, text):
    """One matrix entry: an expression string over the declared variables."""
    return _ExprParser(field, text).parse()


@dataclass
class ParsedGroup:
    ctx: gf.FieldCtx
    field: FuncField
    generators: list

    @property
    def degree(self):
        return self.generators[0].rows


def parse_group_file(text):
    """Parse a group file into a field context and invertible generators."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise GroupFileError("group file must be a JSON object")

    p = data.get("p")
    if not isinstance(p, int):
        raise GroupFileError("'p' must be an integer prime")
    k = data.get("k", 1)
    if not isinstance(k, int) or k < 1:
        raise GroupFileError("'k' must be a positive integer")
    poly = data.get("defining_poly")
    if poly is not None:
        if k == 1:
            raise GroupFileError("'defining_poly' is not allowed when k = 1")
        if not isinstance(poly, list) or not all(isinstance(c, int) for c in poly):
            raise GroupFileError("'defining_poly' must be a list of integers")
        poly = tuple(poly)
    try:
        ctx = gf.FieldCtx.extension(p, k, poly)
    except ValueError as exc:
        raise GroupFileError(str(exc)) from None

    names = data.get("vars")
    if (
        not isinstance(names, list)
        or not names
        or not all(isinstance(v, str) and v.isidentifier() for v in names)
    ):
        raise GroupFileError("'vars' must be a nonempty list of identifiers")
    if len(set(names)) != len(names) or "t" in names:
        raise GroupFileError("variable names must be distinct and different from 't'")
    field = FuncField(ctx, names)

    grids = data.get("generators")
    if not isinstance(grids, list) or not grids:
        raise GroupFileError("'generators' must be a nonempty list of matrices")
    generators = []
    n = None
    for gi, grid in enumerate(grids):
        if not isinstance(grid, list) or not grid:
            raise GroupFileError(f"generator {gi}: must be a nonempty grid")
        if n is None:
            n = len(grid)
        if len(grid) != n or any(
            not isinstance(row, list) or len(row) != n for row in grid
        ):
            raise GroupFileError(f"generator {gi}: expected an {n}x{n} grid")
        rows = []
        for ri, row in enumerate(grid):
            out = []
            for ci, cell in enumerate(row):
                if not isinstance(cell, str):
                    raise GroupFileError(
                        f"generator {gi}, entry ({ri},{ci}): must be a string"
                    )
                try:
                    out.append(parse_entry(field, cell))
                except ParseError as exc:
                    raise ParseError(
                        f"generator {gi}, entry ({ri},{ci}): {exc.args[0]}",
                        exc.line,
                        exc.col,
                    ) from None
            rows.append(tuple(out))
        M = Mat(field, tuple(rows), cols=n)
        try:
            M.inverse()
        except ValueError:
            raise GroupFileError(f"generator {gi} is singular") from None
        generators.append(M)
    return ParsedGroup(ctx, field, generators)


def serialize_group(pg):
    """Canonical JSON text for a parsed group; reparses to equal matrices."""
    data = {"p": pg.ctx.p, "k": pg.ctx.k}
    if pg.ctx.k > 1:
        data["defining_poly"] = list(pg.ctx.defining_poly)
    data["vars"] = list(pg.field.names)
    data["generators"] = [
        [[str(entry) for entry in row] for row in M.entries] for M in pg.generators
    ]
    return json.dumps(data, indent=2) + "\n"
